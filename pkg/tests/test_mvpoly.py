"""Polynomial core: ordering, arithmetic, Chebyshev recurrence, literals."""

import random
from fractions import Fraction
from math import comb

import pytest

from equipell.mvpoly import (
    Poly,
    basis_size,
    chebyshev,
    monomial_basis,
    poly_from_literal,
    poly_to_literal,
)


def test_basis_n2_t1_order():
    assert monomial_basis(2, 1) == ((0, 0), (1, 0), (0, 1))


def test_basis_n2_t2_size():
    assert len(monomial_basis(2, 2)) == 6


def test_basis_n3_t2_size():
    # comb(3 + 2, 3) = 10
    assert len(monomial_basis(3, 2)) == 10


@pytest.mark.parametrize("n,t", [(1, 5), (2, 4), (3, 3), (4, 2)])
def test_basis_size_and_prefix(n, t):
    basis = monomial_basis(n, t)
    assert len(basis) == comb(n + t, n) == basis_size(n, t)
    assert basis[: basis_size(n, t - 1)] == monomial_basis(n, t - 1)
    assert basis[0] == (0,) * n


def test_basis_graded_then_lex():
    basis = monomial_basis(2, 2)
    assert basis == ((0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


def _random_poly(rng, n, deg, exact=True):
    terms = {}
    for alpha in monomial_basis(n, deg):
        if rng.random() < 0.5:
            terms[alpha] = Fraction(rng.randint(-4, 4), rng.randint(1, 5))
    return Poly(n, terms, exact=exact)


def test_ring_axioms_exact():
    rng = random.Random(11)
    for _ in range(25):
        a = _random_poly(rng, 2, 3)
        b = _random_poly(rng, 2, 3)
        c = _random_poly(rng, 2, 3)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a


def test_mul_difference_of_squares():
    x = Poly.variable(1, 0)
    assert (1 - x**2) * (1 + x**2) == 1 - x**4


def test_eval_exact():
    x = Poly.variable(1, 0)
    p = 2 * x**2 - 1
    assert p.evaluate((1,)) == 1
    assert p.evaluate((Fraction(1, 2),)) == Fraction(-1, 2)


def test_binomial_square():
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    assert (x + y) ** 2 == x**2 + 2 * x * y + y**2


def test_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension"):
        Poly.variable(1, 0) + Poly.variable(2, 0)


def test_backend_mismatch():
    exact = Poly.variable(1, 0)
    inexact = exact.to_float()
    with pytest.raises(ValueError, match="backend"):
        exact + inexact
    with pytest.raises(ValueError, match="backend"):
        exact * inexact


def test_float_coefficient_rejected_on_exact_backend():
    with pytest.raises(ValueError, match="exact"):
        Poly(1, {(1,): 0.5}, exact=True)


def test_zero_terms_pruned():
    x = Poly.variable(1, 0)
    assert (x - x).terms == {}
    assert (x - x).is_zero()


def test_chebyshev_small():
    x = Poly.variable(1, 0)
    assert chebyshev("first", 0) == 1
    assert chebyshev("first", 2) == 2 * x**2 - 1
    assert chebyshev("second", 2) == 4 * x**2 - 1


@pytest.mark.parametrize("n", [1, 2, 3, 7, 12])
def test_chebyshev_degree_leading_and_value(n):
    t_n = chebyshev("first", n)
    assert t_n.degree == n
    assert t_n.coefficient((n,)) == 2 ** (n - 1)
    assert t_n.evaluate((1,)) == 1


def test_chebyshev_rejects_bad_args():
    with pytest.raises(ValueError):
        chebyshev("first", -1)
    with pytest.raises(ValueError):
        chebyshev("third", 2)


def test_literal_round_trip():
    x, y = Poly.variable(2, 0), Poly.variable(2, 1)
    p = Fraction(3, 8) * x**2 * y - 2 * y + Fraction(1, 3)
    items = poly_to_literal(p)
    assert poly_from_literal(2, items) == p


def test_literal_parses_decimals_and_fractions_exactly():
    items = [
        {"exponents": [2], "coeff": "0.375"},
        {"exponents": [0], "coeff": "1/3"},
    ]
    p = poly_from_literal(1, items)
    assert p.coefficient((2,)) == Fraction(3, 8)
    assert p.coefficient((0,)) == Fraction(1, 3)
