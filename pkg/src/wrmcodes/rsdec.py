"""Guruswami-Sudan list decoding of Reed-Solomon codes, subfield-subcode
decoding of E(M, S) through a Reed-Solomon code over GF(q^m), and the
Joyner [49, 11, 28] code over GF(8).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt
from typing import Sequence

import numpy as np

from .ff import FieldCtx, coordinate_polynomials, embedding, field_create, nullspace_vector, power_basis, solve_linear
from .poly import MultiPoly, binom_table, z_roots_univariate


def hamming(a, b) -> int:
    return int(np.count_nonzero(np.asarray(a) != np.asarray(b)))


@dataclass
class DecodeReport:
    words: list
    radius: int
    params: dict = field(default_factory=dict)
    polys: list = field(default_factory=list)
    refused: str | None = None

    def distances(self, received) -> list[int]:
        return [hamming(w, received) for w in self.words]

    def contains(self, word) -> bool:
        w = tuple(int(x) for x in word)
        return w in set(self.words)

    def to_dict(self, received=None) -> dict:
        d = {"params": self.params, "radius": self.radius, "list_size": len(self.words),
             "words": [list(w) for w in self.words]}
        if received is not None:
            d["distances"] = self.distances(received)
        if self.refused:
            d["refused"] = self.refused
        return d


@dataclass(frozen=True)
class GSParams:
    n: int
    k: int
    r: int
    L: int
    A_min: int
    E_max: int
    t_z: int
    monomials: tuple

    @property
    def n_conditions(self) -> int:
        return self.n * self.r * (self.r + 1) // 2


def _count_monomials(L: int, w: int) -> int:
    # #{(a, b) : a + w b <= L}
    if w == 0:
        raise ValueError("infinite")
    return sum(L - w * b + 1 for b in range(L // w + 1))


def gs_parameters(n: int, k: int, r: int) -> GSParams:
    """Exact parameters for multiplicity r.

    L is the least weighted degree with more than n r (r+1) / 2 monomials
    a + (k-1) b <= L; the decoder then guarantees agreement r A > L with
    A_min = floor(L / r) + 1 and corrects E_max = n - A_min errors.
    """
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    if r < 1:
        raise ValueError("multiplicity must be positive")
    need = n * r * (r + 1) // 2
    w = k - 1
    if w == 0:
        mons = tuple((0, b) for b in range(need + 1))
        return GSParams(n, k, r, 0, 1, n - 1, need, mons)
    L = 0
    lo, hi = 0, 1
    while _count_monomials(hi, w) <= need:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if _count_monomials(mid, w) > need:
            hi = mid
        else:
            lo = mid + 1
    L = lo
    mons = sorted(((a, b) for b in range(L // w + 1) for a in range(L - w * b + 1)),
                  key=lambda ab: (ab[0] + w * ab[1], ab[1]))
    mons = tuple(mons[: need + 1])
    A_min = L // r + 1
    t_z = max(b for _, b in mons)
    return GSParams(n, k, r, L, A_min, n - A_min, t_z, mons)


def gs_capability_ultimate(n: int, k: int) -> int:
    """Largest E with (n - E)^2 > n (k - 1): the r -> infinity limit."""
    if k - 1 >= n:
        return 0
    return max(0, n - 1 - isqrt(n * (k - 1)))


def gs_radius_ceiling(n: int, k: int) -> int:
    """ceil(n (1 - sqrt(k / n))), the textbook radius; differs from the
    exact agreement count by at most one."""
    return n - isqrt(n * k)


@dataclass
class RSCode:
    ctx: FieldCtx
    points: tuple
    k: int

    def __post_init__(self):
        self.points = tuple(int(x) for x in self.points)
        if len(set(self.points)) != len(self.points):
            raise ValueError("evaluation points must be distinct")
        if not 1 <= self.k <= len(self.points):
            raise ValueError("need 1 <= k <= n")

    @property
    def n(self) -> int:
        return len(self.points)

    def encode(self, coeffs: Sequence[int]) -> np.ndarray:
        f = MultiPoly(self.ctx, 1, {(i,): c for i, c in enumerate(coeffs)})
        return f.evaluate_points(np.array(self.points)[:, None])


def gs_interpolate(ctx: FieldCtx, xs, ys, gp: GSParams) -> MultiPoly:
    """Q(X, Z) with multiplicity r at every (x_i, y_i), support gp.monomials."""
    xs = np.asarray(xs, dtype=np.int64)
    ys = np.asarray(ys, dtype=np.int64)
    mons = np.array(gp.monomials, dtype=np.int64)
    a, b = mons[:, 0], mons[:, 1]
    orders = [(al, be) for s in range(gp.r) for al in range(s + 1) for be in [s - al]]
    nmax = int(max(a.max(), b.max()))
    BT = binom_table(nmax, ctx.p)
    rows = []
    for al, be in orders:
        ca = np.where(a >= al, BT[a, min(al, nmax)], 0)
        cb = np.where(b >= be, BT[b, min(be, nmax)], 0)
        coef = (ca * cb) % ctx.p
        ea = np.maximum(a - al, 0)
        eb = np.maximum(b - be, 0)
        px = ctx.vpow(xs[:, None], ea[None, :])
        py = ctx.vpow(ys[:, None], eb[None, :])
        rows.append(ctx.vmul(ctx.vmul(px, py), coef[None, :]))
    A = np.concatenate(rows, axis=0)
    v = nullspace_vector(ctx, A)
    if v is None:
        raise RuntimeError("interpolation system has only the zero solution")
    return MultiPoly(ctx, 2, {tuple(mn): int(c) for mn, c in zip(gp.monomials, v) if c})


def gs_decode_rs(received, code: RSCode, r: int, radius: int | None = None) -> DecodeReport:
    """All codewords within ``radius`` (default E_max) found by GS."""
    gp = gs_parameters(code.n, code.k, r)
    E = gp.E_max if radius is None else radius
    rec = np.asarray(received, dtype=np.int64)
    Q = gs_interpolate(code.ctx, code.points, rec, gp)
    pts = np.array(code.points, dtype=np.int64)[:, None]
    words, polys = [], []
    for f in z_roots_univariate(Q, code.k):
        c = f.evaluate_points(pts)
        if hamming(c, rec) <= E:
            words.append(tuple(int(x) for x in c))
            polys.append(f)
    rep = DecodeReport(words, E, {"n": code.n, "k": code.k, "r": r, "L": gp.L,
                                  "A_min": gp.A_min, "E_max": gp.E_max})
    rep.polys = polys
    return rep


# ---------------------------------------------------------------------------
# subfield subcodes

def subfield_setup(ensemble, basis: Sequence[int] | None = None):
    """Extension field, basis and phi-images of the grid points."""
    small = ensemble.ctx
    m = ensemble.m
    big = field_create(small.p, small.k * m)
    if basis is None:
        basis = power_basis(small, big)
    emb = embedding(small, big)
    pts = ensemble.points()
    images = np.zeros(len(pts), dtype=np.int64)
    for j in range(m):
        images = big.vadd(images, big.vmul(emb[pts[:, j]], basis[j]))
    if len(set(images.tolist())) != len(images):
        raise ValueError("phi is not injective on the grid; basis is dependent")
    return big, tuple(basis), emb, images


def _restrict_word(word, emb: np.ndarray):
    inv = {int(z): a for a, z in enumerate(emb.tolist())}
    out = []
    for z in word:
        a = inv.get(int(z))
        if a is None:
            return None
        out.append(a)
    return np.array(out, dtype=np.int64)


def subfield_subcode_decode(received, code, r: int, basis: Sequence[int] | None = None,
                            radius: int | None = None) -> DecodeReport:
    """Decode E(M, S) over GF(q) as a subcode of an RS code over GF(q^m).

    The RS code has dimension k = t q^{m-1} + 1 with t the largest total
    degree in M.  Refuses when the limiting GS radius of that RS code is 0.
    """
    ens = code.ensemble
    small = ens.ctx
    q = small.order
    m = ens.m
    t = max(sum(e) for e in code.monomials)
    n = ens.n
    k = t * q ** (m - 1) + 1
    ult = gs_capability_ultimate(n, k) if k <= n else 0
    params = {"n": n, "k_rs": k, "t": t, "r": r, "ultimate": ult}
    if ult <= 0:
        return DecodeReport([], 0, params, refused=(
            f"the Reed-Solomon supercode [n={n}, k={k}] has list decoding radius {ult}; "
            "nothing can be decoded this way"))
    big, basis, emb, images = subfield_setup(ens, basis)
    gp = gs_parameters(n, k, r)
    E = gp.E_max if radius is None else radius
    params.update({"L": gp.L, "E_max": gp.E_max})
    rec = np.asarray(received, dtype=np.int64)
    rs = RSCode(big, tuple(images.tolist()), k)
    inner = gs_decode_rs(emb[rec], rs, r, radius=max(E, 0))
    words = []
    for w in inner.words:
        c = _restrict_word(w, emb)
        if c is None or hamming(c, rec) > E:
            continue
        if solve_linear(small, code.matrix.T, c) is None:
            continue
        words.append(tuple(int(x) for x in c))
    return DecodeReport(sorted(set(words)), E, params)


# ---------------------------------------------------------------------------
# the Joyner code

def joyner_code():
    """E(M, (F_8^*)^2) with M = {1} u {X^i Y^j : i, j >= 1, i + j <= 5}."""
    from .codes import CodeSpec, PointEnsemble, make_monomial_set
    F8 = field_create(2, 3)
    ens = PointEnsemble.multiplicative(F8, 2)
    M = make_monomial_set("joyner", {}, ens)
    return CodeSpec(M, ens)


def joyner_decode(received, r: int = 1, E: int | None = None, code=None) -> DecodeReport:
    """List decode the Joyner code.

    For each guess F00 of the constant coefficient the word
    (received - F00) / (x_i y_i) lies near the code on {i + j <= 3}, which
    sits inside a [49, 25] RS code over GF(64).  Candidates are mapped back
    and kept when they are Joyner codewords within distance E.
    """
    if code is None:
        code = joyner_code()
    ens = code.ensemble
    F8 = ens.ctx
    rec = np.asarray(received, dtype=np.int64)
    if rec.shape != (49,):
        raise ValueError("the Joyner code has length 49")
    pts = ens.points()
    xy = F8.vmul(pts[:, 0], pts[:, 1])
    big, basis, emb, images = subfield_setup(ens)
    k = 3 * 8 + 1
    gp = gs_parameters(49, k, r)
    if E is None:
        E = gp.E_max
    rs = RSCode(big, tuple(images.tolist()), k)
    G = code.matrix
    found = set()
    for f00 in range(F8.order):
        shifted = F8.vsub(rec, np.full(49, f00))
        divided = F8.vmul(shifted, F8.vinv(xy))
        inner = gs_decode_rs(emb[divided], rs, r, radius=max(E, gp.E_max))
        for w in inner.words:
            c2 = _restrict_word(w, emb)
            if c2 is None:
                continue
            c = F8.vadd(F8.vmul(c2, xy), np.full(49, f00))
            if hamming(c, rec) > E:
                continue
            if solve_linear(F8, G.T, c) is None:
                continue
            found.add(tuple(int(x) for x in c))
    return DecodeReport(sorted(found), E, {"n": 49, "k_rs": k, "r": r, "L": gp.L,
                                           "E_max": gp.E_max})
