"""Closed-form moments, the quadrature oracle, and rejection-sampled starts."""

from fractions import Fraction
from math import cos, pi

import numpy as np
import pytest

import equipell as eq
from equipell.measures import (
    QuadratureOrderError,
    SamplingError,
    ball2d_moment,
    interval_moment,
    named_model,
    quadrature_moment,
    simplex2d_moment,
    uniform_start_moments,
)
from equipell.momkit import GeneratorSet
from equipell.mvpoly import Poly, monomial_basis


def gauss_chebyshev_mean(f, nodes=200):
    """Independent arcsine-measure integrator: plain first-kind node average."""
    xs = [cos((2 * k - 1) * pi / (2 * nodes)) for k in range(1, nodes + 1)]
    return sum(f(x) for x in xs) / nodes


def test_interval_even_moments_match_quadrature_oracle():
    # Frozen closed forms, cross-checked against the 200-node oracle.
    assert interval_moment(4) == Fraction(3, 8)
    assert interval_moment(6) == Fraction(5, 16)
    assert abs(gauss_chebyshev_mean(lambda x: x**4) - 3 / 8) < 1e-12
    assert abs(gauss_chebyshev_mean(lambda x: x**6) - 5 / 16) < 1e-12


def test_interval_odd_moments_vanish():
    assert interval_moment(1) == 0
    assert interval_moment(7) == 0


def test_ball_moments_match_printed_matrix():
    assert ball2d_moment(2, 0) == Fraction(1, 3)
    assert ball2d_moment(4, 0) == Fraction(1, 5)
    assert ball2d_moment(2, 2) == Fraction(1, 15)
    assert ball2d_moment(1, 0) == 0
    assert ball2d_moment(3, 1) == 0


def test_simplex_moments_match_printed_matrix():
    assert simplex2d_moment(1, 1) == Fraction(1, 15)
    assert simplex2d_moment(2, 2) == Fraction(1, 105)
    assert simplex2d_moment(1, 0) == Fraction(1, 3)
    assert simplex2d_moment(2, 0) == Fraction(1, 5)
    assert simplex2d_moment(3, 0) == Fraction(1, 7)


def test_box_moments_factor():
    box = named_model("box2d")
    itv = named_model("interval")
    for a in range(5):
        for b in range(5):
            assert box.moment((a, b)) == itv.moment((a,)) * itv.moment((b,))


def test_normalization():
    for key in ("interval", "box2d", "ball2d", "simplex2d"):
        model = named_model(key)
        assert model.moment((0,) * model.n) == 1


@pytest.mark.parametrize("key,region", [
    ("interval", "interval"),
    ("box2d", "box"),
    ("ball2d", "ball2d"),
    ("simplex2d", "simplex2d"),
])
def test_closed_forms_agree_with_quadrature_to_degree_8(key, region):
    model = named_model(key)
    for alpha in monomial_basis(model.n, 8):
        closed = float(model.moment(alpha))
        quad = quadrature_moment(None, region, alpha, level=12)
        assert abs(closed - quad) <= 1e-10, (alpha, closed, quad)


def test_quadrature_normalization():
    for region, alpha in (("interval", (0,)), ("box", (0, 0)),
                          ("ball2d", (0, 0)), ("simplex2d", (0, 0))):
        assert abs(quadrature_moment(None, region, alpha, 10) - 1.0) < 1e-13


def test_quadrature_with_polynomial_weight():
    # integral of x^2 * (1 - x^2) d(arcsine) = 1/2 - 3/8.
    x = Poly.variable(1, 0)
    val = quadrature_moment(1 - x**2, "interval", (2,), 20)
    assert abs(val - (0.5 - 0.375)) < 1e-13


def test_quadrature_level_too_low_is_loud():
    with pytest.raises(QuadratureOrderError, match="insufficient order"):
        quadrature_moment(None, "interval", (8,), 6)
    x = Poly.variable(1, 0)
    with pytest.raises(QuadratureOrderError):
        quadrature_moment(x**4, "interval", (4,), 8)


def test_gaussian_moments_by_wick_pairing():
    sigma = np.array([[2.0, 0.5], [0.5, 1.0]])
    model = eq.MeasureModel("gaussian", 2, sigma=sigma)
    assert model.moment((0, 0)) == 1.0
    assert model.moment((1, 0)) == 0.0
    assert abs(model.moment((1, 1)) - 0.5) < 1e-14
    assert abs(model.moment((2, 0)) - 2.0) < 1e-14
    # E[x^2 y^2] = Sxx Syy + 2 Sxy^2 for a centered Gaussian.
    assert abs(model.moment((2, 2)) - (2.0 * 1.0 + 2 * 0.5**2)) < 1e-14


def test_uniform_start_interval():
    genset = eq.builtin_set("interval")
    phi = uniform_start_moments(genset, 1)
    assert phi.value((0,)) == 1.0
    assert abs(phi.value((1,))) < 2e-2
    assert abs(phi.value((2,)) - 1 / 3) < 2e-2


def test_uniform_start_ball_second_moments():
    genset = eq.builtin_set("ball2d")
    phi = uniform_start_moments(genset, 1)
    assert abs(phi.value((2, 0)) - 0.25) < 2e-2
    assert abs(phi.value((0, 2)) - 0.25) < 2e-2


def test_uniform_start_reproducible():
    genset = eq.builtin_set("ball2d")
    a = uniform_start_moments(genset, 1, seed=3)
    b = uniform_start_moments(genset, 1, seed=3)
    assert a.values == b.values


def test_uniform_start_empty_interior_errors():
    x = Poly.variable(1, 0)
    empty = GeneratorSet(n=1, generators=(-1 - x**2,), radius=Fraction(1), name="empty")
    with pytest.raises(SamplingError, match="sample budget"):
        uniform_start_moments(empty, 1)


def test_unknown_model_key():
    with pytest.raises(ValueError, match="unknown model"):
        named_model("circle")
