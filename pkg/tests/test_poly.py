from __future__ import annotations

import itertools
from math import inf

import numpy as np
import pytest

from wrmcodes.codes import PointEnsemble
from wrmcodes.ff import field_create
from wrmcodes.poly import (GRLEX, LEX, MonomialOrder, MultiPoly, derivative_orders, evaluate_grid, format_poly,
                           from_univariate_coeffs, hasse_derivative, hasse_derivative_by_expansion, multiplicity,
                           multiplicity_at_least, parse_poly, substitute_z, translate, z_roots_univariate)


def random_poly(rng, F, nvars, maxdeg, nterms):
    terms = {}
    for _ in range(nterms):
        e = tuple(int(x) for x in rng.integers(0, maxdeg + 1, nvars))
        terms[e] = int(rng.integers(1, F.order))
    return MultiPoly(F, nvars, terms)


def test_leading_monomial_orders():
    F = field_create(2, 3)
    P = parse_poly("x1 + x2", F, 2)
    assert P.leading_monomial(LEX) == (1, 0)
    assert P.leading_monomial(MonomialOrder("lex", (1, 0))) == (0, 1)
    G = parse_poly("x1*x2^2 + x1^3", F, 2)
    assert G.leading_monomial(GRLEX) == (3, 0)


def test_leading_monomial_of_zero_raises():
    F = field_create(2, 1)
    with pytest.raises(ValueError):
        MultiPoly(F, 2).leading_monomial()


def test_no_explicit_zero_coefficients():
    F = field_create(2, 2)
    P = MultiPoly(F, 2, {(1, 0): 0, (0, 1): 3})
    assert P.support() == [(0, 1)]
    assert (P - P).is_zero()


def test_evaluate_grid_examples():
    F = field_create(2, 1)
    ens = PointEnsemble.standard(F, (2, 2))
    assert evaluate_grid(parse_poly("x1*x2", F, 2), ens).tolist() == [0, 0, 0, 1]
    G = field_create(2, 3)
    ens = PointEnsemble.standard(G, (4, 3))
    assert evaluate_grid(MultiPoly.constant(G, 2, 5), ens).tolist() == [5] * 12
    V = MultiPoly.constant(G, 2, 1)
    for a in ens.sets[0]:
        V = V * (MultiPoly.variable(G, 2, 0) - MultiPoly.constant(G, 2, a))
    assert not evaluate_grid(V, ens).any()


def test_evaluate_points_matches_scalar():
    F = field_create(3, 2)
    rng = np.random.default_rng(0)
    P = random_poly(rng, F, 3, 5, 8)
    pts = rng.integers(0, F.order, (20, 3))
    assert P.evaluate_points(pts).tolist() == [P.evaluate(p) for p in pts.tolist()]


def test_hasse_derivative_examples():
    F3 = field_create(3, 1)
    F2 = field_create(2, 1)
    assert hasse_derivative(parse_poly("x1^2", F3, 1), (1,)) == parse_poly("2*x1", F3, 1)
    assert hasse_derivative(parse_poly("x1^2", F2, 1), (1,)).is_zero()
    F5 = field_create(5, 1)
    P = parse_poly("x1^2*x2", F5, 2)
    assert hasse_derivative(P, (1, 1)) == parse_poly("2*x1", F5, 2)
    assert hasse_derivative(P, (0, 0)) == P


@pytest.mark.parametrize("nvars", [1, 2, 3])
def test_hasse_formula_matches_expansion(nvars):
    F = field_create(2, 3)
    rng = np.random.default_rng(nvars)
    for _ in range(1000 // 3):
        P = random_poly(rng, F, nvars, 6, 5)
        k = tuple(int(x) for x in rng.integers(0, 4, nvars))
        assert hasse_derivative(P, k) == hasse_derivative_by_expansion(P, k)


def test_multiplicity_examples():
    F = field_create(5, 1)
    assert multiplicity(parse_poly("x1^2*x2", F, 2), (0, 0)) == 3
    assert multiplicity(MultiPoly.constant(F, 2, 3), (2, 4)) == 0
    one = MultiPoly.constant(F, 2, 1)
    x1, x2 = MultiPoly.variable(F, 2, 0), MultiPoly.variable(F, 2, 1)
    P = (x1 - one) ** 2 + (x2 - one) ** 2
    assert multiplicity(P, (1, 1)) == 2
    assert multiplicity(MultiPoly(F, 2), (0, 0)) == inf


def test_multiplicity_is_additive():
    F = field_create(2, 2)
    rng = np.random.default_rng(7)
    for _ in range(200):
        P = random_poly(rng, F, 2, 3, 3)
        Q = random_poly(rng, F, 2, 3, 3)
        a = tuple(int(x) for x in rng.integers(0, 4, 2))
        # bias towards zeros at a
        P = P - MultiPoly.constant(F, 2, P.evaluate(a))
        if P.is_zero() or Q.is_zero():
            continue
        assert multiplicity(P * Q, a) == multiplicity(P, a) + multiplicity(Q, a)


def test_derivative_lowers_multiplicity_by_at_most_order():
    F = field_create(3, 1)
    rng = np.random.default_rng(8)
    for _ in range(200):
        a = tuple(int(x) for x in rng.integers(0, 3, 2))
        L = MultiPoly.variable(F, 2, 0) - MultiPoly.constant(F, 2, a[0])
        P = L ** int(rng.integers(0, 4)) * random_poly(rng, F, 2, 3, 4)
        if P.is_zero():
            continue
        k = tuple(int(x) for x in rng.integers(0, 3, 2))
        D = hasse_derivative(P, k)
        assert multiplicity(D, a) >= multiplicity(P, a) - sum(k)


def test_translate_roundtrip():
    F = field_create(2, 4)
    rng = np.random.default_rng(9)
    P = random_poly(rng, F, 2, 4, 6)
    a = (3, 11)
    back = tuple(F.neg(x) for x in a)
    assert translate(translate(P, a), back) == P
    assert translate(P, a).evaluate((0, 0)) == P.evaluate(a)


def test_multiplicity_mask_matches_pointwise():
    F = field_create(2, 2)
    rng = np.random.default_rng(10)
    pts = np.array(list(itertools.product(range(4), repeat=2)))
    for _ in range(30):
        x1 = MultiPoly.variable(F, 2, 0)
        P = (x1 - MultiPoly.constant(F, 2, 1)) ** 2 * random_poly(rng, F, 2, 2, 3)
        mask = multiplicity_at_least(P, 2, pts)
        assert mask.tolist() == [multiplicity(P, tuple(p)) >= 2 for p in pts.tolist()]


def test_derivative_orders_count():
    from math import comb
    for m in range(1, 5):
        for r in range(1, 10):
            assert len(derivative_orders(m, r)) == comb(m + r - 1, m)


# --- root finding ----------------------------------------------------------

def test_roots_single():
    F = field_create(2, 3)
    Q = parse_poly("x2 + x1^3", F, 2)
    roots = z_roots_univariate(Q, 4)
    assert [r.terms for r in roots] == [{(3,): 1}]


def test_roots_two_lines_gf5():
    F = field_create(5, 1)
    # (Z - X)(Z - 2X) = Z^2 - 3XZ + 2X^2
    Q = parse_poly("x2^2 + 2*x1*x2 + 2*x1^2", F, 2)
    roots = z_roots_univariate(Q, 2)
    assert sorted(tuple(sorted(r.terms.items())) for r in roots) == [(((1,), 1),), (((1,), 2),)]


def test_roots_repeated_factor():
    F = field_create(2, 1)
    roots = z_roots_univariate(parse_poly("x2^2 + 1", F, 2), 1)
    assert [r.terms for r in roots] == [{(0,): 1}]


def test_roots_complete_against_enumeration():
    F = field_create(2, 2)
    rng = np.random.default_rng(11)
    k = 3
    all_f = [from_univariate_coeffs(F, c) for c in itertools.product(range(4), repeat=k)]
    Z = MultiPoly.variable(F, 2, 1)
    for _ in range(15):
        Q = MultiPoly.constant(F, 2, 1)
        for _ in range(int(rng.integers(1, 4))):
            f = from_univariate_coeffs(F, rng.integers(0, 4, k).tolist())
            fz = MultiPoly(F, 2, {(e[0], 0): c for e, c in f.terms.items()})
            Q = Q * (Z - fz)
        Q = Q * random_poly(rng, F, 2, 2, 2)
        if Q.is_zero():
            continue
        got = {tuple(sorted(r.terms.items())) for r in z_roots_univariate(Q, k)}
        want = {tuple(sorted(f.terms.items())) for f in all_f if substitute_z(Q, f).is_zero()}
        assert got == want


def test_parse_format_roundtrip():
    F = field_create(2, 4)
    P = parse_poly("3*x1^2*x2 + 5 + x2^4", F, 2)
    assert parse_poly(format_poly(P), F, 2) == P
    with pytest.raises(ValueError):
        parse_poly("17*x1", F, 2)
