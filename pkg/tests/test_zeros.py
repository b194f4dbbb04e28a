from __future__ import annotations

import itertools
from fractions import Fraction
from math import prod

import numpy as np
import pytest

from wrmcodes.codes import PointEnsemble, make_monomial_set
from wrmcodes.ff import field_create
from wrmcodes.poly import GRLEX, LEX, MonomialOrder, MultiPoly, parse_poly
from wrmcodes.zeros import (BoundKind, DCache, border, bound_table, bound_value, closed_case, d_closed_two_var,
                            d_function, d_function_enum, delta_contains, delta_set, mean_improvement, pw_bound,
                            sz_mult_bound, truncate, vanishing_witness, zero_count_oracle)


# --- Delta and border ------------------------------------------------------

def test_delta_examples():
    assert not delta_contains((2, 2), 2, (2, 2))
    assert delta_contains((0, 0, 0), 1, (2, 3, 4))
    assert delta_contains((63, 7), 1, (64, 8))


def test_delta_set_size_for_r1_is_the_box():
    assert len(delta_set(1, (4, 3))) == 12
    # r = 2 on 2x2: box 4x4 minus the four exponents with both floors 1
    assert len(delta_set(2, (2, 2))) == 12


def test_border_examples():
    tri = [(a, b) for a in range(4) for b in range(4) if a + b <= 3]
    assert border(tri) == [(0, 3), (1, 2), (2, 1), (3, 0)]
    M = make_monomial_set("wrm", {"u": 15, "w": (1, 8)}, (64, 8))
    assert border(M) == [(7, 1), (15, 0)]
    assert border([(0, 0)]) == [(0, 0)]


# --- Schwartz-Zippel and Pellikaan-Wu --------------------------------------

def test_sz_examples():
    assert sz_mult_bound((1, 1), 2, (2, 2)) == 2
    for r in (1, 2, 3):
        assert sz_mult_bound((15, 0), r, (64, 8)) == Fraction(120, r)
        assert sz_mult_bound((7, 1), r, (64, 8)) == Fraction(120, r)
    assert sz_mult_bound(3, 1, (5, 5, 5)) == 75
    with pytest.raises(ValueError):
        sz_mult_bound((1, 1), 0, (2, 2))


def test_pw_examples():
    assert pw_bound(0, 3, 4, 2) == 0
    with pytest.raises(ValueError):
        pw_bound(8, 2, 4, 2)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_pw_at_least_sz(m):
    for q in range(2, 6):
        for r in range(1, 4):
            for u in range(r * q):
                assert pw_bound(u, r, q, m) >= Fraction(u * q ** (m - 1), r)


# --- D ---------------------------------------------------------------------

def test_d_examples():
    assert d_function((1, 1), 2, (2, 2)) == 1
    assert d_function((2, 1), 2, (2, 2)) == 3
    assert d_function((5,), 1, (7,)) == 5
    assert d_function((9,), 1, (7,)) == 7


def test_d_matches_enumeration():
    rng = np.random.default_rng(0)
    for _ in range(150):
        m = int(rng.integers(1, 4))
        r = int(rng.integers(1, 5))
        s = tuple(int(x) for x in rng.integers(1, 5, m))
        i = tuple(int(x) for x in (rng.integers(0, r * np.array(s))))
        assert d_function(i, r, s, cache=DCache()) == d_function_enum(i, r, s)


def test_d_cache_consistent():
    cache = DCache()
    first = [d_function(e, 3, (5, 4), cache=cache) for e in delta_set(3, (5, 4)).tolist()]
    assert len(cache) > 0
    again = [d_function(e, 3, (5, 4), cache=cache) for e in delta_set(3, (5, 4)).tolist()]
    fresh = [d_function(e, 3, (5, 4), cache=DCache()) for e in delta_set(3, (5, 4)).tolist()]
    assert first == again == fresh


@pytest.mark.parametrize("sizes", [(4, 3), (3, 3, 2)])
def test_d_r1_is_footprint(sizes):
    n = prod(sizes)
    for e in itertools.product(*[range(s) for s in sizes]):
        assert d_function(e, 1, sizes) == n - prod(s - a for s, a in zip(sizes, e))


def test_d_monotone():
    s = (6, 4)
    for r in (1, 2, 3):
        T, _ = bound_table("D", r, s)
        assert np.all(np.diff(T, axis=0) >= 0)
        assert np.all(np.diff(T, axis=1) >= 0)
        T2, _ = bound_table("D", r + 1, s)
        # more multiplicity means fewer zeros
        assert np.all(T2[: r * 6, : r * 4] <= T)


def test_d_at_most_sz_and_n():
    for sizes in [(5, 3), (3, 3, 3)]:
        n = prod(sizes)
        for r in (1, 2, 3):
            for e in delta_set(r, sizes).tolist():
                d = d_function(e, r, sizes)
                assert d <= min(sz_mult_bound(e, r, sizes), n)


def test_outside_delta_gives_n():
    assert bound_value("D", (2, 2), 2, (2, 2)) == 4
    assert bound_value("SZ", (2, 2), 2, (2, 2)) == 4


# --- closed forms ----------------------------------------------------------

def test_closed_form_last_strip_example():
    assert closed_case(2, 1, 2, 2, 2) == ("last", 0)
    assert d_closed_two_var(2, 1, 2, 2, 2) == 3 == d_function((2, 1), 2, (2, 2))


def test_closed_form_degenerate_axis():
    # with i2 = 0 the estimate collapses to the one-axis value s2 i1 / r
    for r in (2, 3, 4):
        for i1 in range(0, (r - 1) * 8, 3):
            assert d_closed_two_var(i1, 0, r, 8, 8) == Fraction(8 * i1, r)


def test_closed_form_outside_delta_raises():
    with pytest.raises(ValueError):
        d_closed_two_var(2, 2, 2, 2, 2)


@pytest.mark.parametrize("sizes", [(8, 8), (64, 8), (12, 5)])
@pytest.mark.parametrize("order", [None, (1, 0)])
def test_chain_d_c_sz(sizes, order):
    n = prod(sizes)
    for r in range(1, 5):
        D, sd = bound_table(BoundKind("D", order), r, sizes)
        C, sc = bound_table(BoundKind("C", order), r, sizes)
        S, ss = bound_table(BoundKind("SZ", order), r, sizes)
        # cross-multiply the scaled integer tables
        assert np.all(D * sc <= C * sd)
        assert np.all(C * ss <= np.minimum(S, n * ss) * sc)


def test_closed_table_matches_scalar():
    for r in (1, 2, 3):
        T, scale = bound_table("C", r, (6, 4))
        for e in delta_set(r, (6, 4)).tolist():
            assert Fraction(int(T[tuple(e)]), scale) == d_closed_two_var(*e, r, 6, 4)


# --- the restricted recursion ----------------------------------------------

def test_d2_below_d():
    for r in (2, 3, 4):
        D, _ = bound_table("D", r, (8, 4))
        D2, _ = bound_table("D2", r, (8, 4))
        assert np.all(D2 <= D)
        if r == 2:
            assert np.array_equal(D, D2)


def test_d2_is_not_a_bound():
    # X1 X2^2 has multiplicity 3 at the origin of the 2x2 grid
    F4 = field_create(2, 2)
    ens = PointEnsemble.standard(F4, (2, 2))
    P = parse_poly("x1*x2^2", F4, 2)
    assert zero_count_oracle(P, 3, ens) == 1
    assert d_function((1, 2), 3, (2, 2)) == 1
    assert d_function((1, 2), 3, (2, 2), variant="D2") == 0
    for s in (3, 4):
        assert d_function((1, 2), 3, (s, s)) == 1
        assert d_function((1, 2), 3, (s, s), variant="D2") == 0


def test_d2_swapped_fails_on_table_grid():
    # X1^2 X2 on the 64x8 grid, bound evaluated with the axes swapped
    F = field_create(2, 6)
    ens = PointEnsemble.standard(F, (64, 8))
    P = parse_poly("x1^2*x2", F, 2)
    assert zero_count_oracle(P, 3, ens) == 1
    assert bound_value(BoundKind("D2", (1, 0)), (2, 1), 3, (64, 8)) == 0
    assert bound_value(BoundKind("D", (1, 0)), (2, 1), 3, (64, 8)) == 1


# --- witnesses and oracle --------------------------------------------------

@pytest.mark.parametrize("i,r", [((2, 2), 2), ((3, 2), 2), ((4, 0), 2), ((2, 5), 3)])
def test_vanishing_witness(i, r):
    F = field_create(2, 2)
    ens = PointEnsemble.standard(F, (2, 2))
    W = vanishing_witness(i, r, ens)
    assert W.leading_monomial(LEX) == i
    assert W.leading_monomial(GRLEX) == i
    assert W.leading_monomial(MonomialOrder("lex", (1, 0))) == i
    assert zero_count_oracle(W, r, ens) == ens.n


def test_vanishing_witness_refuses_delta():
    ens = PointEnsemble.standard(field_create(2, 2), (2, 2))
    with pytest.raises(ValueError):
        vanishing_witness((1, 1), 2, ens)


def test_oracle_r1_counts_zeros():
    from wrmcodes.poly import evaluate_grid
    F = field_create(2, 3)
    ens = PointEnsemble.standard(F, (8, 8))
    rng = np.random.default_rng(3)
    for _ in range(20):
        P = MultiPoly(F, 2, {tuple(int(x) for x in rng.integers(0, 4, 2)): int(rng.integers(1, 8)) for _ in range(4)})
        assert zero_count_oracle(P, 1, ens) == ens.n - np.count_nonzero(evaluate_grid(P, ens))


def _random_structured(rng, F, sizes, ens_sets):
    """Product of random lines, shifted axis factors and a random cofactor."""
    m = len(sizes)
    X = [MultiPoly.variable(F, m, j) for j in range(m)]
    P = MultiPoly.constant(F, m, 1)
    for _ in range(int(rng.integers(1, 6))):
        j = int(rng.integers(0, m))
        L = X[j] - MultiPoly.constant(F, m, int(rng.choice(ens_sets[j])))
        if rng.random() < 0.3:
            L = L + MultiPoly.constant(F, m, int(rng.integers(1, F.order))) * X[1 - j]
        P = P * L
    if rng.random() < 0.5:
        P = P * MultiPoly(F, m, {tuple(int(x) for x in rng.integers(0, 2, m)): int(rng.integers(1, F.order))})
    return P


@pytest.mark.parametrize("order", [(0, 1), (1, 0)])
def test_oracle_never_exceeds_d(order):
    # the bound for a permuted variable order pairs with the matching lex order
    F = field_create(2, 3)
    sizes = (8, 3)
    ens = PointEnsemble.standard(F, sizes)
    lex = MonomialOrder("lex", order)
    kinds = [BoundKind("D", order), BoundKind("C", order), BoundKind("SZ")]
    rng = np.random.default_rng(4)
    for _ in range(300):
        P = _random_structured(rng, F, sizes, ens.sets)
        r = int(rng.integers(1, 4))
        count = zero_count_oracle(P, r, ens)
        lm = P.leading_monomial(lex)
        for kind in kinds:
            assert count <= bound_value(kind, lm, r, sizes)


def test_oracle_guard():
    F = field_create(2, 7)
    ens = PointEnsemble.standard(F, (128, 64))
    with pytest.raises(ValueError):
        zero_count_oracle(MultiPoly.constant(F, 2, 1), 1, ens)


# --- mean improvement ------------------------------------------------------

@pytest.mark.parametrize("m,r,q,want", [(2, 2, 2, "0.363"), (2, 2, 4, "0.191"), (3, 2, 8, "0.114"),
                                        (2, 3, 3, "0.286")])
def test_mean_improvement_cells(m, r, q, want):
    assert truncate(mean_improvement(m, r, q)) == want


def test_mean_improvement_first_cell_exact():
    # the q = 2, r = 2 cell is exactly 4/11
    assert mean_improvement(2, 2, 2) == Fraction(4, 11)


def test_truncate_not_round():
    assert truncate(Fraction(19999, 100000)) == "0.199"
