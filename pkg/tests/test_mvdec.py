from __future__ import annotations

from math import comb

import numpy as np
import pytest

from wrmcodes.codes import CodeSpec, PointEnsemble, encode, make_monomial_set
from wrmcodes.ff import field_create
from wrmcodes.mvdec import (NoCapability, b_set, capability, conditions_per_point, decode_mv, factor_step,
                            interpolate_mv, make_plan, max_errors, radius_estimate)
from wrmcodes.poly import MultiPoly, derivative_orders, multiplicity, substitute_z
from wrmcodes.zeros import BoundKind, delta_contains

T2 = (64, 8)


def wrm(u, w, sizes):
    return make_monomial_set("wrm", {"u": u, "w": w}, sizes)


def small_code(u):
    F = field_create(2, 4)
    ens = PointEnsemble.standard(F, (8, 4))
    return CodeSpec(wrm(u, (1, 2), (8, 4)), ens)


def corrupt(rng, word, weight, q):
    out = np.array(word, dtype=np.int64)
    pos = rng.choice(len(out), weight, replace=False)
    out[pos] = (out[pos] + rng.integers(1, q, weight)) % q
    return out


# --- B sets and capability -------------------------------------------------

def test_b_set_example():
    M = wrm(15, (1, 8), T2)
    assert len(b_set(1, 103, 2, M, T2, "SZ")) == 528


def test_b_sum_includes_index_zero():
    # the threshold is n N(2, 2) = 2048 conditions
    M = wrm(15, (1, 8), T2)
    assert 512 * conditions_per_point(2, 2) == 2048

    def total(E):
        out, i = 0, 0
        while True:
            b = b_set(i, E, 2, M, T2, "SZ")
            if not b:
                return out
            out += len(b)
            i += 1

    assert total(103) == 2073
    assert total(104) == 2019


def test_b_set_boundary():
    M = wrm(15, (1, 8), T2)
    assert b_set(0, 511, 2, M, T2, "SZ") == [(0, 0)]
    assert b_set(40, 0, 2, M, T2, "SZ") == []


def test_b_set_monotone():
    M = wrm(3, (1, 2), (8, 4))
    for bound in ("SZ", BoundKind("D", (1, 0))):
        for E in range(0, 12, 3):
            for i in range(4):
                here = set(b_set(i, E, 2, M, (8, 4), bound))
                assert set(b_set(i, E + 1, 2, M, (8, 4), bound)) <= here
                assert set(b_set(i + 1, E, 2, M, (8, 4), bound)) <= here


@pytest.mark.parametrize("bound,want", [("SZ", 103), ("C", 131)])
def test_capability_table_cells(bound, want):
    M = wrm(15, (1, 8), T2)
    assert max_errors(M, T2, 2, BoundKind(bound, (1, 0))) == want


def test_capability_d_swapped():
    M = wrm(15, (1, 8), T2)
    assert max_errors(M, T2, 2, BoundKind("D", (1, 0))) == 135


def test_capability_mcj_column():
    I = make_monomial_set("mcj", {"delta": 392}, T2)
    assert max_errors(I, T2, 2, "SZ") == 95


def test_bound_dominance_transfers():
    for u in (3, 7, 16):
        M = wrm(u, (1, 8), T2)
        for r in (2, 3):
            s = max_errors(M, T2, r, "SZ")
            c = max_errors(M, T2, r, BoundKind("C", (1, 0)))
            d = max_errors(M, T2, r, BoundKind("D", (1, 0)))
            assert d >= c >= s


def test_no_capability():
    M = wrm(9, (1, 2), (8, 4))
    with pytest.raises(NoCapability, match="115"):
        max_errors(M, (8, 4), 2, "D")


def test_plan_invariants():
    for u, bound in [(3, "SZ"), (3, BoundKind("D", (1, 0))), (5, "D")]:
        M = wrm(u, (1, 2), (8, 4))
        E, plan = capability(M, (8, 4), 2, bound)
        assert plan.n_unknowns - plan.n_conditions == 1
        assert plan.n_conditions == 32 * 4
        for B in plan.sets:
            assert all(delta_contains(K, 2, (8, 4)) for K in B)
        with pytest.raises(NoCapability):
            make_plan(M, (8, 4), 2, E + 1, bound)


def test_conditions_count_matches_hasse_indices():
    for m in range(1, 5):
        for r in range(1, 10):
            assert conditions_per_point(m, r) == comb(m + r, m + 1)
            assert len(derivative_orders(m + 1, r)) == conditions_per_point(m, r)


# --- interpolation and factor step -----------------------------------------

def test_interpolation_certificate():
    code = small_code(3)
    rng = np.random.default_rng(0)
    rec = rng.integers(0, 16, code.n)
    plan = make_plan(code.monomials, (8, 4), 2, 3, "SZ")
    Q = interpolate_mv(code.ensemble, rec, plan)
    assert not Q.is_zero()
    for P, y in zip(code.ensemble.points().tolist(), rec.tolist()):
        assert multiplicity(Q, tuple(P) + (y,)) >= 2


def random_in(rng, F, M):
    return MultiPoly(F, 2, {e: int(rng.integers(0, F.order)) for e in M})


def lift(P, nvars):
    return MultiPoly(P.ctx, nvars, {e + (0,) * (nvars - P.nvars): c for e, c in P.terms.items()})


def test_factor_step_simple():
    F = field_create(2, 4)
    M = wrm(5, (1, 2), (8, 4))
    f = random_in(np.random.default_rng(1), F, M)
    Z = MultiPoly.variable(F, 3, 2)
    Q = (Z - lift(f, 3)) * Z
    out = factor_step(Q, M)
    assert f in out
    assert MultiPoly(F, 2) in out


def test_factor_step_with_random_cofactor():
    F = field_create(2, 4)
    M = wrm(5, (1, 2), (8, 4))
    rng = np.random.default_rng(2)
    Z = MultiPoly.variable(F, 3, 2)
    for _ in range(100):
        f = random_in(rng, F, M)
        R = MultiPoly(F, 3, {tuple(int(x) for x in rng.integers(0, 3, 3)): int(rng.integers(1, 16))
                             for _ in range(3)})
        Q = (Z - lift(f, 3)) * R
        out = factor_step(Q, M)
        assert f in out
        for g in out:
            assert substitute_z(Q, g).is_zero()


def test_factor_step_no_linear_factor():
    F = field_create(2, 4)
    M = wrm(5, (1, 2), (8, 4))
    Z = MultiPoly.variable(F, 3, 2)
    X1 = MultiPoly.variable(F, 3, 0)
    assert factor_step(Z * Z + X1, M) == []


# --- full decoder ----------------------------------------------------------

def test_decode_zero_errors():
    code = small_code(3)
    c = encode(code, np.arange(code.k) % 16)
    rep = decode_mv(c, code, 2, "SZ")
    assert rep.contains(c)


@pytest.mark.parametrize("u,bound,E", [(3, "D", 6), (3, "SZ", 3), (5, "D", 3)])
def test_decode_at_capability(u, bound, E):
    code = small_code(u)
    assert max_errors(code.monomials, (8, 4), 2, bound) == E
    rng = np.random.default_rng(u)
    for _ in range(5):
        c = encode(code, rng.integers(0, 16, code.k))
        rec = corrupt(rng, c, E, 16)
        rep = decode_mv(rec, code, 2, bound)
        assert rep.contains(c)
        assert all(d <= E for d in rep.distances(rec))
        assert rep.params["unknowns"] - rep.params["conditions"] == 1


def test_decode_rejects_wrong_length():
    code = small_code(3)
    with pytest.raises(ValueError):
        decode_mv(np.zeros(5, dtype=np.int64), code, 2)


def test_radius_estimate():
    assert radius_estimate(64, 8, 3) == pytest.approx(327.4, abs=0.05)
    assert radius_estimate(64, 8, 7) == pytest.approx(267.14, abs=0.01)
    assert radius_estimate(64, 8, 64) == 0
