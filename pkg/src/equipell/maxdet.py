"""Damped-Newton interior solver for the log-det moment program.

Minimizes -sum_g log det M_{t-t_g}(g . phi) over moment vectors with phi_0
fixed to 1.  The normalization is handled by variable elimination, so the
unknowns are the moments phi_alpha for alpha != 0 up to degree 2t.  Each
block is an affine matrix function M_g(phi) = sum_alpha phi_alpha A_{g,alpha},
giving the classical expressions

    gradient   g_a  = -sum_g tr(M_g^{-1} A_{g,a})
    Hessian    H_ab =  sum_g tr(M_g^{-1} A_{g,a} M_g^{-1} A_{g,b})

and a self-concordant objective on which damped Newton with backtracking is
globally convergent.  The Newton decrement drives termination; one final step
is taken after the threshold is met, which squares the remaining error.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_solve, solve_triangular

from . import measures
from .momkit import (
    GeneratorSet,
    MomentMatrix,
    MomentSequence,
    extension_distance,
)
from .mvpoly import Poly, monomial_basis

ARMIJO = 0.01
MIN_STEP = 1e-12
TIKHONOV = 1e-12


class SolveError(RuntimeError):
    pass


@dataclass(frozen=True)
class Block:
    """One affine matrix block: generator, its monomial basis, and the
    coefficient matrices keyed by moment index (the zero index included)."""

    generator: Poly
    basis: tuple
    coeffs: dict


@dataclass(frozen=True)
class Instance:
    genset: GeneratorSet
    t: int
    var_alphas: tuple
    blocks: tuple

    @property
    def n_vars(self) -> int:
        return len(self.var_alphas)

    def block_matrices(self, x: np.ndarray) -> list:
        zero = (0,) * self.genset.n
        out = []
        lookup = dict(zip(self.var_alphas, x))
        lookup[zero] = 1.0
        for block in self.blocks:
            size = len(block.basis)
            m = np.zeros((size, size))
            for alpha, a in block.coeffs.items():
                m += lookup[alpha] * a
            out.append(m)
        return out

    def sequence(self, x: np.ndarray) -> MomentSequence:
        zero = (0,) * self.genset.n
        values = {zero: 1.0}
        values.update({a: float(v) for a, v in zip(self.var_alphas, x)})
        return MomentSequence(self.genset.n, 2 * self.t, values)

    def vector(self, phi: MomentSequence) -> np.ndarray:
        return np.array([float(phi.value(a)) for a in self.var_alphas])


def assemble_instance(genset: GeneratorSet, t: int) -> Instance:
    """Build the per-generator coefficient matrices for order t."""
    active = genset.active(t)
    if not active:
        raise SolveError(f"no generator admissible at order t={t}")
    var_alphas = tuple(a for a in monomial_basis(genset.n, 2 * t) if sum(a) > 0)
    blocks = []
    for g in active:
        basis = monomial_basis(genset.n, t - g.half_degree)
        size = len(basis)
        coeffs: dict = {}
        for i, a in enumerate(basis):
            for j, b in enumerate(basis):
                for gamma, c in g.terms.items():
                    alpha = tuple(x + y + z for x, y, z in zip(a, b, gamma))
                    mat = coeffs.get(alpha)
                    if mat is None:
                        mat = coeffs.setdefault(alpha, np.zeros((size, size)))
                    mat[i, j] += float(c)
        blocks.append(Block(generator=g, basis=basis, coeffs=coeffs))
    return Instance(genset=genset, t=t, var_alphas=var_alphas, blocks=tuple(blocks))


def _try_cholesky(m: np.ndarray):
    try:
        return np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        return None


def _objective(instance: Instance, x: np.ndarray):
    """(objective, list of Cholesky factors) or (None, None) if infeasible."""
    factors = []
    total = 0.0
    for m in instance.block_matrices(x):
        lower = _try_cholesky(m)
        if lower is None:
            return None, None
        factors.append(lower)
        total -= 2.0 * float(np.sum(np.log(np.diag(lower))))
    return total, factors


def _derivatives(instance: Instance, factors: list):
    k = instance.n_vars
    index = {a: i for i, a in enumerate(instance.var_alphas)}
    grad = np.zeros(k)
    hess = np.zeros((k, k))
    for block, lower in zip(instance.blocks, factors):
        eye = np.eye(lower.shape[0])
        inv_l = solve_triangular(lower, eye, lower=True)
        inv_m = inv_l.T @ inv_l
        support = [a for a in block.coeffs if sum(a) > 0]
        ka = {a: block.coeffs[a] for a in support}
        for a in support:
            grad[index[a]] -= float(np.sum(inv_m * ka[a]))
        # tr(M^-1 A_a M^-1 A_b) accumulated over the block's support.
        sandwich = {a: inv_m @ ka[a] @ inv_m for a in support}
        for a in support:
            wa = sandwich[a]
            ia = index[a]
            for b in support:
                ib = index[b]
                if ib < ia:
                    continue
                v = float(np.sum(wa * ka[b]))
                hess[ia, ib] += v
                if ib != ia:
                    hess[ib, ia] += v
    return grad, hess


@dataclass
class SolveReport:
    set_name: str
    t: int
    rho: float
    rho_dual: float
    phi: MomentSequence
    q_matrices: dict
    stationarity_residual_max: float
    constant: int
    iterations: int
    backtracks: int
    wall_time: float
    converged: bool
    tol: float
    trace: list = field(default_factory=list)

    def to_jsonable(self, include_trace: bool = False) -> dict:
        basis = monomial_basis(self.phi.n, 2 * self.t)
        out = {
            "set": self.set_name,
            "t": self.t,
            "rho": self.rho,
            "rho_dual": self.rho_dual,
            "duality_gap": abs(self.rho - self.rho_dual),
            "c_t": self.constant,
            "moments": {
                " ".join(map(str, a)): float(self.phi.value(a)) for a in basis
            },
            "q_blocks": {k: m.to_jsonable() for k, m in self.q_matrices.items()},
            "stationarity_residual_max": self.stationarity_residual_max,
            "iterations": self.iterations,
            "backtracks": self.backtracks,
            "wall_time_s": self.wall_time,
            "converged": self.converged,
            "tol": self.tol,
        }
        if include_trace:
            out["trace"] = self.trace
        return out


def _dual_residual_poly(instance: Instance, q_list: list) -> Poly:
    """sum_g g * v^T Q_g v minus the block-size constant, as a polynomial."""
    n = instance.genset.n
    out = Poly.zero(n, exact=False)
    for block, q in zip(instance.blocks, q_list):
        coeffs: dict = {}
        for alpha, a in block.coeffs.items():
            coeffs[alpha] = coeffs.get(alpha, 0.0) + float(np.sum(q * a))
        out = out + Poly(n, coeffs, exact=False)
    return out - float(instance.genset.pell_constant(instance.t))


def solve_primal(
    instance: Instance,
    start: MomentSequence,
    tol: float = 1e-10,
    max_iter: int = 200,
) -> SolveReport:
    """Damped Newton from a strictly feasible start."""
    begin = time.perf_counter()
    x = instance.vector(start.to_float())
    value, factors = _objective(instance, x)
    if value is None:
        raise SolveError("infeasible start: a block is not positive definite")

    trace = []
    total_backtracks = 0
    converged = False
    iterations = 0
    for iterations in range(1, max_iter + 1):
        grad, hess = _derivatives(instance, factors)
        shift = 0.0
        lower_h = _try_cholesky(hess)
        while lower_h is None:
            shift = TIKHONOV if shift == 0.0 else shift * 100.0
            if shift > 1.0:
                raise SolveError("Hessian numerically singular")
            lower_h = _try_cholesky(hess + shift * np.eye(len(grad)))
        direction = cho_solve((lower_h, True), -grad)
        decrement_sq = float(-grad @ direction)
        if decrement_sq < 0.0:
            decrement_sq = 0.0

        step = 1.0
        backtracks = 0
        slope = float(grad @ direction)
        # Deep in the quadratic phase the predicted decrease drops below the
        # objective's floating-point resolution; requiring Armijo descent
        # there truncates the polishing step, so only feasibility is checked.
        resolvable = ARMIJO * abs(slope) > 64.0 * np.finfo(float).eps * max(1.0, abs(value))
        while True:
            candidate = x + step * direction
            cand_value, cand_factors = _objective(instance, candidate)
            if cand_value is not None and (
                not resolvable or cand_value <= value + ARMIJO * step * slope
            ):
                break
            step *= 0.5
            backtracks += 1
            if step < MIN_STEP:
                raise SolveError(
                    f"line search failed at iteration {iterations} "
                    f"(decrement^2 = {decrement_sq:.3e})"
                )
        x, value, factors = candidate, cand_value, cand_factors
        total_backtracks += backtracks
        trace.append(
            {
                "iter": iterations,
                "objective": value,
                "decrement_sq": decrement_sq,
                "step": step,
                "backtracks": backtracks,
            }
        )
        if 0.5 * decrement_sq <= tol:
            converged = True
            break
    if not converged:
        raise SolveError(f"max iterations ({max_iter}) exceeded")

    q_list = []
    rho_dual = 0.0
    for lower in factors:
        inv_l = solve_triangular(lower, np.eye(lower.shape[0]), lower=True)
        q = inv_l.T @ inv_l
        q_list.append(q)
        rho_dual += 2.0 * float(np.sum(np.log(np.diag(inv_l))))
    residual = _dual_residual_poly(instance, q_list)
    phi = instance.sequence(x)
    return SolveReport(
        set_name=instance.genset.name,
        t=instance.t,
        rho=value,
        rho_dual=rho_dual,
        phi=phi,
        q_matrices={
            poly_key(block.generator): MomentMatrix(block.basis, q)
            for block, q in zip(instance.blocks, q_list)
        },
        stationarity_residual_max=float(residual.max_coeff()),
        constant=instance.genset.pell_constant(instance.t),
        iterations=iterations,
        backtracks=total_backtracks,
        wall_time=time.perf_counter() - begin,
        converged=converged,
        tol=tol,
        trace=trace,
    )


def poly_key(g: Poly) -> str:
    return repr(g)


@dataclass(frozen=True)
class DualCertificate:
    constant: int
    residual_max: float
    duality_gap: float
    q_matrices: dict

    def to_jsonable(self) -> dict:
        return {
            "c_t": self.constant,
            "residual_max": self.residual_max,
            "duality_gap": self.duality_gap,
            "q_blocks": {k: m.to_jsonable() for k, m in self.q_matrices.items()},
        }


def dual_certificate(report: SolveReport) -> DualCertificate:
    """Package the dual optimum and its partition-of-unity residual."""
    if not report.converged:
        raise SolveError("dual certificate requires a converged report")
    return DualCertificate(
        constant=report.constant,
        residual_max=report.stationarity_residual_max,
        duality_gap=abs(report.rho - report.rho_dual),
        q_matrices=report.q_matrices,
    )


def feasible_start(
    genset: GeneratorSet,
    t: int,
    samples: int = 200_000,
    seed: int = 0,
) -> MomentSequence:
    """Uniform-measure start, retried with a larger budget if a block is
    near-singular (possible only when too few points were accepted)."""
    budget = samples
    for attempt in range(3):
        phi = measures.uniform_start_moments(genset, t, samples=budget, seed=seed + attempt)
        instance = assemble_instance(genset, t)
        value, _ = _objective(instance, instance.vector(phi))
        if value is not None:
            return phi
        budget *= 4
    raise SolveError("could not produce a strictly feasible start")


@dataclass(frozen=True)
class SweepRow:
    t: int
    rho: float
    iterations: int


@dataclass(frozen=True)
class SweepTable:
    set_name: str
    rows: tuple
    distances: tuple  # (t, t + 1, max-norm distance, verdict)
    aborted_at: int | None = None

    def to_jsonable(self) -> dict:
        return {
            "set": self.set_name,
            "orders": [
                {"t": r.t, "rho": r.rho, "iterations": r.iterations}
                for r in self.rows
            ],
            "extensions": [
                {
                    "t_low": lo,
                    "t_high": hi,
                    "distance": d,
                    "verdict": v,
                }
                for lo, hi, d, v in self.distances
            ],
            "aborted_at": self.aborted_at,
        }


def extension_sweep(
    genset: GeneratorSet,
    t_from: int,
    t_to: int,
    tol: float = 1e-10,
    verdict_tol: float = 1e-4,
    samples: int = 200_000,
    seed: int = 0,
    max_iter: int = 200,
) -> SweepTable:
    """Solve consecutive orders and compare each optimum with the next.

    A small max-norm distance indicates the higher-order optimum extends the
    lower one (the finite-convergence signature); distances above verdict_tol
    are flagged as non-extensions.
    """
    if t_from > t_to:
        raise ValueError(f"t_from {t_from} exceeds t_to {t_to}")
    rows = []
    reports = []
    aborted_at = None
    for t in range(t_from, t_to + 1):
        try:
            start = feasible_start(genset, t, samples=samples, seed=seed)
            report = solve_primal(
                assemble_instance(genset, t), start, tol=tol, max_iter=max_iter
            )
        except (SolveError, measures.SamplingError):
            aborted_at = t
            break
        rows.append(SweepRow(t=t, rho=report.rho, iterations=report.iterations))
        reports.append(report)
    distances = []
    for low, high in zip(reports, reports[1:]):
        d = extension_distance(low.phi, high.phi)
        verdict = "extension" if d <= verdict_tol else "not-an-extension"
        distances.append((low.t, high.t, d, verdict))
    return SweepTable(
        set_name=genset.name,
        rows=tuple(rows),
        distances=tuple(distances),
        aborted_at=aborted_at,
    )


def gradient_fd_check(instance: Instance, phi: MomentSequence, h: float = 1e-5) -> float:
    """Largest relative error of analytic gradient and Hessian-vector products
    against central finite differences at phi."""
    if not 1e-7 <= h <= 1e-4:
        raise ValueError(f"step h={h} outside [1e-7, 1e-4]")
    x = instance.vector(phi.to_float())
    value, factors = _objective(instance, x)
    if value is None:
        raise SolveError("finite-difference check requires a strictly feasible point")
    grad, hess = _derivatives(instance, factors)

    def f_at(y):
        v, _ = _objective(instance, y)
        if v is None:
            raise SolveError("finite-difference step left the feasible region")
        return v

    def grad_at(y):
        v, fac = _objective(instance, y)
        if v is None:
            raise SolveError("finite-difference step left the feasible region")
        return _derivatives(instance, fac)[0]

    scale = float(np.max(np.abs(grad))) or 1.0
    worst = 0.0
    for k in range(instance.n_vars):
        e = np.zeros(instance.n_vars)
        e[k] = h
        fd = (f_at(x + e) - f_at(x - e)) / (2.0 * h)
        worst = max(worst, abs(fd - grad[k]) / scale)
    hscale = float(np.max(np.abs(hess))) or 1.0
    for k in range(instance.n_vars):
        e = np.zeros(instance.n_vars)
        e[k] = h
        fd_col = (grad_at(x + e) - grad_at(x - e)) / (2.0 * h)
        worst = max(worst, float(np.max(np.abs(fd_col - hess[:, k]))) / hscale)
    return worst
