from __future__ import annotations

import itertools

import numpy as np
import pytest

from wrmcodes.codes import CodeSpec, PointEnsemble, contains, encode, make_monomial_set
from wrmcodes.ff import field_create
from wrmcodes.poly import multiplicity
from wrmcodes.rsdec import (RSCode, _count_monomials, gs_capability_ultimate, gs_decode_rs, gs_interpolate,
                            gs_parameters, gs_radius_ceiling, hamming, joyner_code, joyner_decode,
                            subfield_subcode_decode)


def corrupt(rng, word, weight, q):
    out = np.array(word, dtype=np.int64)
    pos = rng.choice(len(out), weight, replace=False)
    out[pos] = (out[pos] + rng.integers(1, q, weight)) % q
    return out


# --- parameters ------------------------------------------------------------

def test_parameters_49_25():
    gp = gs_parameters(49, 25, 1)
    assert gp.L == 36
    assert gp.E_max == 12
    assert _count_monomials(36, 24) == 50


@pytest.mark.parametrize("n,k,want", [(512, 193, 198), (512, 257, 149), (512, 449, 33),
                                      (4096, 1281, 1806), (4096, 3841, 130)])
def test_ultimate_capability(n, k, want):
    assert gs_capability_ultimate(n, k) == want


def test_ultimate_degenerate():
    assert gs_capability_ultimate(10, 11) == 0
    assert gs_capability_ultimate(10, 1) == 9


def test_ceiling_differs_by_at_most_one():
    assert gs_radius_ceiling(512, 257) == 150
    assert gs_capability_ultimate(512, 257) == 149
    for n, k in [(512, 193), (512, 449), (4096, 1281), (4096, 3841), (49, 25)]:
        assert abs(gs_radius_ceiling(n, k) - gs_capability_ultimate(n, k)) <= 1


@pytest.mark.parametrize("n,k", [(49, 25), (7, 2), (64, 10), (100, 40)])
def test_parameter_invariants(n, k):
    prev = -1
    for r in range(1, 9):
        gp = gs_parameters(n, k, r)
        need = n * r * (r + 1) // 2
        assert _count_monomials(gp.L, k - 1) > need
        assert _count_monomials(gp.L - 1, k - 1) <= need
        assert r * gp.A_min > gp.L
        assert gp.E_max == n - gp.A_min
        assert len(gp.monomials) == need + 1
        assert gp.E_max >= prev
        assert gp.E_max <= gs_capability_ultimate(n, k)
        prev = gp.E_max


def test_parameters_reach_ultimate():
    caps = [gs_parameters(49, 25, r).E_max for r in (1, 2, 3, 6, 10)]
    assert caps == [12, 12, 13, 13, 14]
    assert gs_capability_ultimate(49, 25) == 14


def test_parameters_reject_bad_input():
    with pytest.raises(ValueError):
        gs_parameters(5, 6, 1)
    with pytest.raises(ValueError):
        gs_parameters(5, 2, 0)


# --- RS decoding -----------------------------------------------------------

def test_rs_code_rejects_repeated_points():
    with pytest.raises(ValueError):
        RSCode(field_create(2, 3), (1, 2, 2), 1)


def test_zero_errors():
    F = field_create(2, 4)
    code = RSCode(F, tuple(range(15)), 5)
    c = code.encode([3, 0, 7, 1, 9])
    rep = gs_decode_rs(c, code, 2)
    assert rep.contains(c)
    assert all(d <= rep.radius for d in rep.distances(c))


def test_interpolation_certificate():
    F = field_create(2, 3)
    code = RSCode(F, tuple(range(1, 8)), 2)
    rng = np.random.default_rng(0)
    for r in (1, 2, 3):
        gp = gs_parameters(7, 2, r)
        y = rng.integers(0, 8, 7)
        Q = gs_interpolate(F, code.points, y, gp)
        assert not Q.is_zero()
        assert max(a + (code.k - 1) * b for a, b in Q.support()) <= gp.L
        for x, v in zip(code.points, y.tolist()):
            assert multiplicity(Q, (x, v)) >= r


@pytest.mark.parametrize("n,k", [(7, 2), (8, 3)])
def test_list_matches_exhaustive(n, k):
    F = field_create(2, 3)
    pts = tuple(range(8))[8 - n:]
    code = RSCode(F, pts, k)
    allwords = [tuple(code.encode(c).tolist()) for c in itertools.product(range(8), repeat=k)]
    rng = np.random.default_rng(n * 10 + k)
    for r in (1, 2, 3):
        E = gs_parameters(n, k, r).E_max
        for _ in range(25):
            sent = allwords[int(rng.integers(len(allwords)))]
            rec = corrupt(rng, sent, int(rng.integers(0, E + 2)), 8)
            rep = gs_decode_rs(rec, code, r)
            want = sorted(w for w in allwords if hamming(w, rec) <= E)
            assert sorted(rep.words) == want


def test_rs_49_25_corrects_12():
    F = field_create(2, 6)
    code = RSCode(F, tuple(range(1, 50)), 25)
    rng = np.random.default_rng(1)
    for _ in range(3):
        c = code.encode(rng.integers(0, 64, 25))
        rep = gs_decode_rs(corrupt(rng, c, 12, 64), code, 1)
        assert rep.contains(c)


# --- subfield subcodes -----------------------------------------------------

def rm_gf4():
    F = field_create(2, 2)
    ens = PointEnsemble.standard(F, (4, 4))
    return CodeSpec(make_monomial_set("qary_rm", {"u": 1}, (4, 4)), ens)


def test_subfield_rm_corrects_one_error():
    code = rm_gf4()
    rng = np.random.default_rng(2)
    for _ in range(5):
        c = encode(code, rng.integers(0, 4, code.k))
        rec = corrupt(rng, c, 1, 4)
        rep = subfield_subcode_decode(rec, code, 1)
        assert rep.refused is None
        assert rep.contains(c)
        assert all(contains(code, w) for w in rep.words)


def test_subfield_error_free_word_is_listed():
    code = rm_gf4()
    c = encode(code, [1, 2, 3])
    assert subfield_subcode_decode(c, code, 2).contains(c)


def test_subfield_refuses_table_code():
    F = field_create(2, 6)
    ens = PointEnsemble.standard(F, (64, 8))
    code = CodeSpec(make_monomial_set("wrm", {"u": 15, "w": (1, 8)}, (64, 8)), ens)
    rep = subfield_subcode_decode(np.zeros(512, dtype=np.int64), code, 1)
    assert rep.refused is not None
    assert rep.words == []
    assert rep.params["ultimate"] == 0


# --- Joyner ----------------------------------------------------------------

def test_joyner_code_parameters():
    code = joyner_code()
    assert code.n == 49
    assert code.k == 11


def test_joyner_zero_errors():
    code = joyner_code()
    c = encode(code, np.arange(11) % 8)
    rep = joyner_decode(c, 1, code=code)
    assert rep.words == [tuple(c.tolist())]


def test_joyner_round_trip_every_constant():
    code = joyner_code()
    const = list(code.monomials).index((0, 0))
    rng = np.random.default_rng(3)
    for f00 in range(8):
        msg = rng.integers(0, 8, code.k)
        msg[const] = f00
        c = encode(code, msg)
        rec = corrupt(rng, c, int(rng.integers(0, 13)), 8)
        rep = joyner_decode(rec, 1, 12, code=code)
        assert rep.contains(c)
        assert all(d <= 12 for d in rep.distances(rec))


def test_joyner_rejects_wrong_length():
    with pytest.raises(ValueError):
        joyner_decode(np.zeros(48, dtype=np.int64))
