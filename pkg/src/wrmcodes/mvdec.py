"""Guruswami-Sudan style list decoding of affine variety codes E(M, S).

The interpolation polynomial is Q(X, Z) = sum_i Q_i(X) Z^i with the
support of Q_i drawn from a set B(i).  B(i) collects the exponents K in
Delta for which every border monomial N of M keeps K N^i below the
zero-count threshold:

    B(i, E, r) = { K : max_N bound(K N^i) < n - E }

with ``bound`` equal to n outside Delta.  The decoding capability at
multiplicity r is the largest E with sum_i |B(i, E, r)| > n N(m, r),
N(m, r) = C(m + r, m + 1) being the number of linear conditions per
point.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb, prod
from typing import Sequence

import numpy as np

from .codes import CodeSpec, MonomialSet, PointEnsemble, contains
from .ff import FieldCtx, nullspace_vector
from .poly import MultiPoly, binom_table, derivative_orders, substitute_z, z_roots_univariate
from .rsdec import DecodeReport, hamming
from .zeros import BoundKind, DCache, bound_table, border, delta_set


class NoCapability(ValueError):
    """No error count E >= 0 satisfies the counting condition."""


class FactorBudgetExceeded(RuntimeError):
    pass


def conditions_per_point(m: int, r: int) -> int:
    return comb(m + r, m + 1)


@dataclass
class BSetPlan:
    r: int
    E: int
    bound: BoundKind
    sets: list  # sets[i] is a list of exponent tuples, the last one truncated
    n: int
    m: int

    @property
    def t(self) -> int:
        return len(self.sets) - 1

    @property
    def n_unknowns(self) -> int:
        return sum(len(b) for b in self.sets)

    @property
    def n_conditions(self) -> int:
        return self.n * conditions_per_point(self.m, self.r)


class _Evaluator:
    """Scaled bound values max_N bound(K N^i) for all K in Delta."""

    def __init__(self, M, sizes, r, bound: BoundKind, cache=None):
        self.sizes = tuple(sizes)
        self.m = len(self.sizes)
        self.r = r
        self.n = prod(self.sizes)
        self.bound = bound
        self.border = np.array(border(M), dtype=np.int64)
        self.table, self.scale = bound_table(bound, r, self.sizes, cache)
        self.shape = np.array(self.table.shape, dtype=np.int64)
        self.flat = self.table.reshape(-1)
        self.K = delta_set(r, self.sizes)
        self.cap = self.n * self.scale
        # past this index some border power leaves Delta, so every value is n
        stops = []
        for N in self.border:
            if not N.any():
                continue
            stops.append(min((r * s + e - 1) // e for s, e in zip(self.sizes, N) if e))
        self.i_stop = min(stops) if stops else None

    def values(self, i: int) -> np.ndarray:
        out = np.zeros(len(self.K), dtype=np.int64)
        strides = np.concatenate([np.cumprod(self.shape[::-1])[:-1][::-1], [1]])
        for N in self.border:
            idx = self.K + i * N
            inbox = np.all(idx < self.shape, axis=1)
            flat = np.where(inbox, idx @ strides, 0)
            v = np.where(inbox, self.flat[flat], self.cap)
            np.maximum(out, v, out=out)
        return out

    def indices(self, limit: int):
        i = 0
        while True:
            if self.i_stop is not None and i >= self.i_stop:
                return
            if i > limit:
                return
            yield i
            i += 1


def b_set(i: int, E: int, r: int, M, sizes: Sequence[int], bound: BoundKind | str = "SZ") -> list[tuple]:
    """B(i, E, r) as a sorted list of exponents."""
    if isinstance(bound, str):
        bound = BoundKind(bound)
    ev = _Evaluator(M, sizes, r, bound)
    v = ev.values(i)
    keep = v < (ev.n - E) * ev.scale
    return sorted(map(tuple, ev.K[keep].tolist()))


def max_errors(M, sizes: Sequence[int], r: int, bound: BoundKind | str = "SZ",
               cache: DCache | None = None) -> int:
    """Largest E with sum_i |B(i, E, r)| > n N(m, r).

    Every pair (i, K) contributes its scaled bound value v; the count for
    E is #{v < (n - E) scale}, so the answer follows from the
    (n N + 1)-th smallest value.
    """
    if isinstance(bound, str):
        bound = BoundKind(bound)
    ev = _Evaluator(M, sizes, r, bound, cache)
    need = ev.n * conditions_per_point(ev.m, r) + 1
    vals = []
    count = 0
    for i in ev.indices(need):
        v = ev.values(i)
        v = v[v < ev.cap]
        if v.size == 0 and ev.i_stop is None:
            break
        vals.append(v)
        count += v.size
    if count < need:
        raise NoCapability(f"only {count} admissible monomials, {need} needed")
    allv = np.concatenate(vals)
    vstar = int(np.partition(allv, need - 1)[need - 1])
    return ev.n - 1 - vstar // ev.scale


def make_plan(M, sizes: Sequence[int], r: int, E: int, bound: BoundKind | str = "SZ") -> BSetPlan:
    """B(0..t) for error count E, with the last set cut to the graded-lex
    smallest elements so that exactly n N(m, r) + 1 unknowns remain."""
    if isinstance(bound, str):
        bound = BoundKind(bound)
    ev = _Evaluator(M, sizes, r, bound)
    if not 0 <= E < ev.n:
        raise ValueError("E must satisfy 0 <= E < n")
    need = ev.n * conditions_per_point(ev.m, r) + 1
    sets = []
    total = 0
    thr = (ev.n - E) * ev.scale
    for i in ev.indices(need):
        v = ev.values(i)
        B = sorted(map(tuple, ev.K[v < thr].tolist()), key=lambda e: (sum(e), e))
        if total + len(B) >= need:
            sets.append(B[: need - total])
            return BSetPlan(r, E, bound, sets, ev.n, ev.m)
        if not B and ev.i_stop is None:
            break
        sets.append(B)
        total += len(B)
    raise NoCapability(f"E = {E} is beyond the capability at r = {r}")


def capability(M, sizes: Sequence[int], r: int, bound: BoundKind | str = "SZ") -> tuple[int, BSetPlan]:
    """(E_max, plan at E_max)."""
    E = max_errors(M, sizes, r, bound)
    return E, make_plan(M, sizes, r, E, bound)


def radius_estimate(s1: int, s2: int, u) -> float:
    """Asymptotic fraction of errors s1 s2 (1 - (u / s1)^(1/3)) for the
    largest multiplicities."""
    return s1 * s2 * (1 - (float(u) / s1) ** (1.0 / 3.0))


# ---------------------------------------------------------------------------
# interpolation

def interpolation_matrix(ctx: FieldCtx, points: np.ndarray, received: np.ndarray, plan: BSetPlan):
    """Rows: one per point and derivative order (k, k_z) with |k| + k_z < r.
    Columns: the monomials X^K Z^i of the plan."""
    pts = np.asarray(points, dtype=np.int64)
    rec = np.asarray(received, dtype=np.int64)
    m = pts.shape[1]
    cols = [(K, i) for i, B in enumerate(plan.sets) for K in B]
    E = np.array([K + (i,) for K, i in cols], dtype=np.int64)  # exponents in (X, Z)
    orders = np.array(derivative_orders(m + 1, plan.r), dtype=np.int64)
    nmax = int(E.max()) if E.size else 0
    BT = binom_table(nmax, ctx.p)
    allpts = np.concatenate([pts, rec[:, None]], axis=1)  # n x (m+1)
    n = len(pts)
    rows = np.ones((n, len(orders), len(cols)), dtype=np.int64)
    for v in range(m + 1):
        e = E[:, v][None, :]          # 1 x C
        k = orders[:, v][:, None]     # O x 1
        coef = np.where(e >= k, BT[e, np.minimum(k, nmax)], 0)
        exps = np.maximum(e - k, 0)  # O x C
        base = allpts[:, v][:, None, None]
        pw = ctx.vpow(base, exps[None, :, :])
        term = ctx.vmul(pw, (coef % ctx.p)[None, :, :])
        rows = ctx.vmul(rows, term)
    return rows.reshape(n * len(orders), len(cols)), cols


def interpolate_mv(ensemble: PointEnsemble, received, plan: BSetPlan) -> MultiPoly:
    """Nonzero Q(X, Z) with multiplicity r at every (P_j, received_j)."""
    ctx = ensemble.ctx
    A, cols = interpolation_matrix(ctx, ensemble.points(), received, plan)
    v = nullspace_vector(ctx, A)
    if v is None:
        raise RuntimeError("interpolation system has only the zero solution")
    terms = {K + (i,): int(c) for (K, i), c in zip(cols, v) if c}
    return MultiPoly(ctx, ensemble.m + 1, terms)


# ---------------------------------------------------------------------------
# factor step

def _lagrange(ctx: FieldCtx, xs: Sequence[int], ys: Sequence[MultiPoly], var: int, nvars: int) -> MultiPoly:
    """Interpolate polynomials ys (in variables other than ``var``) at
    values xs of variable ``var``."""
    X = MultiPoly.variable(ctx, nvars, var)
    out = MultiPoly(ctx, nvars)
    for a, (xa, ya) in enumerate(zip(xs, ys)):
        L = MultiPoly.constant(ctx, nvars, 1)
        den = 1
        for b, xb in enumerate(xs):
            if b != a:
                L = L * (X - MultiPoly.constant(ctx, nvars, xb))
                den = ctx.mul(den, ctx.sub(xa, xb))
        out = out + (ya * L).scale(ctx.inv(den))
    return out


def _embed_vars(F: MultiPoly, nvars: int) -> MultiPoly:
    """Pad a polynomial in the first k variables with trailing zeros."""
    k = F.nvars
    out = MultiPoly(F.ctx, nvars)
    out.terms = {e + (0,) * (nvars - k): c for e, c in F.terms.items()}
    return out


def _roots(Q: MultiPoly, caps: Sequence[int], ctx: FieldCtx, budget: list) -> list[MultiPoly]:
    """All F in the variables of Q except the last with deg_{X_j} F < caps[j]
    and Q(X, F) = 0.  Specialises the last X variable and recombines."""
    m = Q.nvars - 1
    if m == 1:
        return [f for f in z_roots_univariate(Q, caps[0])]
    dm = caps[-1]
    # specialise X_m at dm distinct values where Q stays nonzero
    values, lists = [], []
    for a in range(ctx.order):
        Qa = Q.substitute(m - 1, a)
        Qa = Qa.drop_var(m - 1)
        if Qa.is_zero():
            continue
        values.append(a)
        lists.append(_roots(Qa, caps[:-1], ctx, budget))
        if len(values) == dm:
            break
    if len(values) < dm:
        raise RuntimeError("not enough specialisation points")
    combos = prod(len(L) for L in lists)
    budget[0] -= combos
    if budget[0] < 0:
        raise FactorBudgetExceeded("too many specialisation combinations")
    out = []
    for choice in itertools.product(*lists):
        ys = [_embed_vars(f, m) for f in choice]
        F = _lagrange(ctx, values, ys, m - 1, m)
        if substitute_z(Q, F).is_zero():
            out.append(F)
    return out


def factor_step(Q: MultiPoly, M: MonomialSet, budget: int = 10_000) -> list[MultiPoly]:
    """Polynomials F with support in M and Q(X, F(X)) = 0."""
    m = Q.nvars - 1
    caps = [max(e[j] for e in M) + 1 for j in range(m)]
    b = [budget]
    out = []
    for F in _roots(Q, caps, Q.ctx, b):
        if all(e in M for e in F.terms):
            out.append(F)
    out.sort(key=lambda F: sorted(F.terms.items()))
    return out


# ---------------------------------------------------------------------------
# full decoder

def decode_mv(received, code: CodeSpec, r: int, bound: BoundKind | str = "SZ",
              E: int | None = None, budget: int = 10_000) -> DecodeReport:
    """List of codewords of E(M, S) within distance E of ``received``.

    E defaults to the capability for multiplicity r.
    """
    if isinstance(bound, str):
        bound = BoundKind(bound)
    ens = code.ensemble
    M = code.monomials
    rec = np.asarray(received, dtype=np.int64)
    if rec.shape != (ens.n,):
        raise ValueError("received word has the wrong length")
    if E is None:
        E = max_errors(M, ens.sizes, r, bound)
    plan = make_plan(M, ens.sizes, r, E, bound)
    Q = interpolate_mv(ens, rec, plan)
    cands = factor_step(Q, M, budget)
    words, msgs = [], []
    pts = ens.points()
    for F in cands:
        c = F.evaluate_points(pts)
        if hamming(c, rec) <= E:
            words.append(tuple(int(x) for x in c))
            msgs.append(F)
    report = DecodeReport(words=words, radius=E, params={
        "r": r, "E": E, "bound": bound.tag, "order": list(bound.perm(ens.m)),
        "t": plan.t, "unknowns": plan.n_unknowns, "conditions": plan.n_conditions})
    report.polys = msgs
    return report
