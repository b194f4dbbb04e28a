"""Counting zeros of multiplicity at least r on a product grid.

Bounds provided:

* ``SZ``: the Schwartz-Zippel type bound (sum_j i_j prod_{l != j} s_l) / r,
* ``C``: the two-variable closed-form estimates (four cases, see
  :func:`closed_case`),
* ``D``: the recursive function D(i, r, s) maximised over A(i_m, r, s_m).

The recursion for D is evaluated as a two-constraint unbounded knapsack
over the last variable; ``d_function_enum`` is the literal enumeration
and serves as its oracle.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor, lcm, prod
from typing import Sequence

import numpy as np

from .codes import MonomialSet, PointEnsemble
from .poly import MultiPoly, multiplicity_at_least

BOUND_KINDS = ("SZ", "C", "D", "D2")


@dataclass(frozen=True)
class BoundKind:
    """A zero-count bound plus the variable order it is evaluated in.

    ``order`` is a permutation: the bound for exponent i is evaluated as
    bound(i[order], r, s[order]).  ``D2`` is the restricted recursion
    described in :func:`d_function`.
    """

    tag: str = "SZ"
    order: tuple | None = None

    def __post_init__(self):
        if self.tag not in BOUND_KINDS:
            raise ValueError(f"unknown bound {self.tag!r}")

    def perm(self, m: int) -> tuple:
        return tuple(range(m)) if self.order is None else tuple(self.order)


# ---------------------------------------------------------------------------
# Delta and border

def delta_contains(i: Sequence[int], r: int, s: Sequence[int]) -> bool:
    return sum(a // b for a, b in zip(i, s)) < r


def delta_set(r: int, s: Sequence[int]) -> np.ndarray:
    """All exponents of Delta(r, s), lexicographic."""
    box = np.array(list(itertools.product(*[range(r * x) for x in s])), dtype=np.int64)
    keep = (box // np.array(s)).sum(axis=1) < r
    return box[keep]


def delta_mask(r: int, s: Sequence[int]) -> np.ndarray:
    """Boolean array over the box prod [0, r s_j) marking Delta(r, s)."""
    grids = np.meshgrid(*[np.arange(r * x) // x for x in s], indexing="ij")
    return sum(grids) < r


def border(M) -> list[tuple]:
    """Elements of M that divide no other element of M."""
    monos = list(M.monomials if isinstance(M, MonomialSet) else M)
    arr = np.array(monos, dtype=np.int64)
    out = []
    for idx, e in enumerate(monos):
        ge = np.all(arr >= arr[idx], axis=1)
        ge[idx] = False
        # a strictly larger multiple exists unless every ge row equals e
        if not np.any(ge & np.any(arr != arr[idx], axis=1)):
            out.append(tuple(e))
    return sorted(set(out))


# ---------------------------------------------------------------------------
# Schwartz-Zippel and Pellikaan-Wu

def sz_mult_bound(i, r: int, s: Sequence[int]) -> Fraction:
    """(i_1 s_2...s_m + ... + s_1...s_{m-1} i_m) / r.

    ``i`` may also be a total degree u, read as u |S|^{m-1} / r on a cube
    of side s[0] (the uniform version).
    """
    if r < 1:
        raise ValueError("r must be positive")
    n = prod(s)
    if isinstance(i, (int, np.integer)):
        return Fraction(int(i) * n // s[0], r)
    return Fraction(sum(a * (n // b) for a, b in zip(i, s)), r)


def sz_zero_count(i, r, s) -> Fraction:
    return min(sz_mult_bound(i, r, s), Fraction(prod(s)))


def pw_bound(u: int, r: int, q: int, m: int) -> Fraction:
    """Pellikaan-Wu bound on zeros of multiplicity >= r in F_q^m for total
    degree u < r q."""
    if u >= r * q:
        raise ValueError("requires u < r q")
    w = u // q
    num = (comb(m + r - 1, m) * q ** m + (u - q * w) * comb(m + r - w - 2, m - 1) * q ** (m - 1)
           - comb(m + r - w - 1, m) * q ** m)
    return Fraction(num, comb(m + r - 1, r - 1))


# ---------------------------------------------------------------------------
# the recursive D

@dataclass
class DCache:
    """Memo of D vectors keyed by (prefix, r, sizes, variant)."""

    table: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.table)


_GLOBAL_CACHE = DCache()


def _d_prefix(prefix: tuple, r: int, sizes: tuple, variant: str, cache: DCache) -> int:
    """D(prefix, r, sizes) for a non-empty prefix; r = 0 means every point."""
    if r <= 0:
        return prod(sizes)
    vec = _d_last(prefix[:-1], r, sizes, variant, cache)
    return int(vec[min(prefix[-1], len(vec) - 1)])


def _d_last(prefix: tuple, r: int, sizes: tuple, variant: str, cache: DCache) -> np.ndarray:
    """Vector of D(prefix, i_m, r, sizes) for i_m = 0..r s_m."""
    key = (prefix, r, sizes, variant)
    hit = cache.table.get(key)
    if hit is not None:
        return hit
    sm = sizes[-1]
    W = r * sm
    if len(sizes) == 1:
        vec = np.minimum(np.arange(W + 1, dtype=np.int64) // r, sm)
        cache.table[key] = vec
        return vec
    head = sizes[:-1]
    base = _d_prefix(prefix, r, head, variant, cache)
    full = prod(head)
    gains = []
    for j in range(1, r + 1):
        if j == r:
            val = full
        elif variant == "D2":
            val = _d_prefix(prefix, r - 1, head, variant, cache)
        else:
            val = _d_prefix(prefix, r - j, head, variant, cache)
        gains.append(val - base)
    # best[w] = max sum_j u_j g_j with sum_j u_j <= rounds, sum_j j u_j <= w
    best = np.zeros(W + 1, dtype=np.int64)
    for _ in range(sm):
        nb = best.copy()
        for j, g in enumerate(gains, start=1):
            if g > 0 and j <= W:
                np.maximum(nb[j:], best[:-j] + g, out=nb[j:])
        if np.array_equal(nb, best):
            break
        best = nb
    vec = sm * base + best
    cache.table[key] = vec
    return vec


def d_function(i: Sequence[int], r: int, s: Sequence[int], cache: DCache | None = None,
               variant: str = "D") -> int:
    """The recursive zero-count bound D(i_1..i_m, r, s_1..s_m).

    ``variant="D2"`` gives every partial multiplicity term u_j with
    0 < j < r the coefficient D(..., r-1, ...) instead of D(..., r-j, ...).
    That restriction is not a valid bound for r >= 3 (see the tests) and
    exists only to regenerate published tables that were computed with it.
    """
    if r < 1:
        raise ValueError("r must be positive")
    if len(i) != len(s):
        raise ValueError("exponent and size vectors differ in length")
    if variant not in ("D", "D2"):
        raise ValueError(f"unknown variant {variant!r}")
    cache = _GLOBAL_CACHE if cache is None else cache
    i = tuple(int(x) for x in i)
    s = tuple(int(x) for x in s)
    if len(s) == 1:
        return min(i[0] // r, s[0])
    vec = _d_last(i[:-1], r, s, variant, cache)
    return int(vec[min(i[-1], len(vec) - 1)])


def d_function_enum(i: Sequence[int], r: int, s: Sequence[int]) -> int:
    """Literal evaluation of D by enumerating A(i_m, r, s_m).  Slow."""
    i, s = tuple(i), tuple(s)
    if r <= 0:
        return prod(s)
    if len(s) == 1:
        return min(i[0] // r, s[0])
    sub = [d_function_enum(i[:-1], r - j, s[:-1]) for j in range(r)] + [prod(s[:-1])]
    best = 0
    sm, im = s[-1], i[-1]

    def rec(j, left_count, left_weight, acc):
        nonlocal best
        if j > r:
            best = max(best, acc + left_count * sub[0])
            return
        top = min(left_count, left_weight // j)
        for u in range(top + 1):
            rec(j + 1, left_count - u, left_weight - j * u, acc + u * sub[j])

    rec(1, sm, im, 0)
    return best


# ---------------------------------------------------------------------------
# closed forms for two variables

def closed_case(i1: int, i2: int, r: int, s1: int, s2: int) -> tuple[str, int]:
    """Which closed form applies, and its k.

    ``last`` covers the strip floor(i1/s1) = r - 1; otherwise k = r - 1 -
    floor(i1/s1) and the case is ``upper_short``/``upper_long`` when
    i1 (r + 1) >= (r - k) r s1 (split at i2 = k s2), else ``lower``.
    """
    if not delta_contains((i1, i2), r, (s1, s2)):
        raise ValueError("monomial outside Delta")
    f = i1 // s1
    if f == r - 1:
        return "last", 0
    k = r - 1 - f
    if i1 * (r + 1) >= (r - k) * r * s1:
        return ("upper_short" if i2 < k * s2 else "upper_long"), k
    return "lower", k


def d_closed_two_var(i1: int, i2: int, r: int, s1: int, s2: int) -> Fraction:
    """Closed-form upper estimate of D(i1, i2, r, s1, s2) on Delta."""
    case, k = closed_case(i1, i2, r, s1, s2)
    F = Fraction
    if case == "last":
        a = i1 // r
        return F(s2 * a + i2 * (s1 - a))
    if case == "upper_short":
        return F(s2 * i1, r) + F(i2, r) * F(i1, r - k)
    if case == "upper_long":
        return (F(s2 * i1, r) + ((k + 1) * s2 - i2) * (F(i1, r - k) - F(i1, r))
                + (i2 - k * s2) * (s1 - F(i1, r)))
    return F(s2 * i1, r) + F(i2, k + 1) * (s1 - F(i1, r))


# ---------------------------------------------------------------------------
# whole tables in scaled integers

def bound_scale(tag: str, r: int) -> int:
    if tag == "SZ":
        return r
    if tag == "C":
        return r * lcm(*range(1, r + 1))
    return 1


def _closed_table(r: int, s1: int, s2: int) -> np.ndarray:
    L = bound_scale("C", r)
    i1 = np.arange(r * s1, dtype=np.int64)[:, None]
    i2 = np.arange(r * s2, dtype=np.int64)[None, :]
    f = i1 // s1
    k = np.clip(r - 1 - f, 1, max(r - 1, 1))
    rk = np.maximum(r - k, 1)  # r = 1 only uses the last case
    c1 = s2 * i1 * (L // r) + i2 * i1 * (L // (r * rk))
    c2 = (s2 * i1 * (L // r) + ((k + 1) * s2 - i2) * (i1 * (L // rk) - i1 * (L // r))
          + (i2 - k * s2) * (s1 * L - i1 * (L // r)))
    c3 = s2 * i1 * (L // r) + i2 * (r * s1 - i1) * (L // (r * (k + 1)))
    a = i1 // r
    c4 = (s2 * a + i2 * (s1 - a)) * L
    upper = i1 * (r + 1) >= rk * r * s1
    out = np.where(upper, np.where(i2 < k * s2, c1, c2), c3)
    out = np.where(f == r - 1, c4, out)
    return np.broadcast_to(out, (r * s1, r * s2)).copy()


def _d_table(r: int, sizes: tuple, variant: str, cache: DCache) -> np.ndarray:
    shape = tuple(r * x for x in sizes)
    out = np.zeros(shape, dtype=np.int64)
    if len(sizes) == 1:
        out[:] = np.minimum(np.arange(shape[0]) // r, sizes[0])
        return out
    head = sizes[:-1]
    for prefix in itertools.product(*[range(r * x) for x in head]):
        if sum(a // b for a, b in zip(prefix, head)) >= r:
            continue
        vec = _d_last(prefix, r, sizes, variant, cache)
        out[prefix] = vec[: shape[-1]]
    return out


def bound_table(kind: BoundKind | str, r: int, sizes: Sequence[int], cache: DCache | None = None):
    """Scaled integer table of the bound over the box prod [0, r s_j).

    Returns ``(table, scale)``: the zero count is ``table / scale``.
    Entries outside Delta hold ``n * scale``.  Indices are natural
    exponent order even when the bound is evaluated in a permuted order.
    """
    if isinstance(kind, str):
        kind = BoundKind(kind)
    sizes = tuple(int(x) for x in sizes)
    m = len(sizes)
    perm = kind.perm(m)
    ps = tuple(sizes[p] for p in perm)
    n = prod(sizes)
    scale = bound_scale(kind.tag, r)
    cache = _GLOBAL_CACHE if cache is None else cache
    if kind.tag == "SZ":
        grids = np.meshgrid(*[np.arange(r * x, dtype=np.int64) * (n // x) for x in ps], indexing="ij")
        T = np.minimum(sum(grids), n * scale)
    elif kind.tag == "C":
        if m != 2:
            raise ValueError("closed forms exist for two variables only")
        T = _closed_table(r, *ps)
    else:
        T = _d_table(r, ps, kind.tag, cache)
    T = np.where(delta_mask(r, ps), T, n * scale)
    inv = np.argsort(perm)
    return np.ascontiguousarray(np.transpose(T, axes=inv)), scale


def bound_value(kind: BoundKind | str, i: Sequence[int], r: int, sizes: Sequence[int]) -> Fraction:
    """Zero-count bound for one exponent; n outside Delta."""
    if isinstance(kind, str):
        kind = BoundKind(kind)
    sizes = tuple(sizes)
    n = prod(sizes)
    perm = kind.perm(len(sizes))
    pi = tuple(i[p] for p in perm)
    ps = tuple(sizes[p] for p in perm)
    if not delta_contains(pi, r, ps):
        return Fraction(n)
    if kind.tag == "SZ":
        return sz_zero_count(pi, r, ps)
    if kind.tag == "C":
        return d_closed_two_var(*pi, r, *ps)
    return Fraction(d_function(pi, r, ps, variant=kind.tag))


# ---------------------------------------------------------------------------
# witnesses, statistics, oracle

def vanishing_witness(i: Sequence[int], r: int, ensemble: PointEnsemble) -> MultiPoly:
    """Polynomial with leading monomial X^i vanishing with multiplicity >= r
    on the whole grid, for i outside Delta(r, s)."""
    s = ensemble.sizes
    if delta_contains(i, r, s):
        raise ValueError("exponent lies in Delta; no such witness exists")
    c = []
    left = r
    for a, b in zip(i, s):
        t = min(a // b, left)
        c.append(t)
        left -= t
    ctx, m = ensemble.ctx, ensemble.m
    F = MultiPoly.constant(ctx, m, 1)
    for j in range(m):
        xj = MultiPoly.variable(ctx, m, j)
        V = MultiPoly.constant(ctx, m, 1)
        for a in ensemble.sets[j]:
            V = V * (xj - MultiPoly.constant(ctx, m, a))
        F = F * V ** c[j]
    rest = tuple(a - cj * b for a, cj, b in zip(i, c, s))
    return F * MultiPoly.monomial(ctx, rest)


def mean_improvement(m: int, r: int, q: int, floored: bool = True, cache: DCache | None = None) -> Fraction:
    """Mean over Delta(r, q..q) of (SZ - D) / SZ with SZ = min(sum_i q^{m-1} / r, q^m).

    With ``floored`` the SZ value is rounded down to an integer count and
    monomials whose count is 0 are skipped; otherwise only the zero
    exponent is skipped.
    """
    sizes = (q,) * m
    T, _ = bound_table(BoundKind("D"), r, sizes, cache)
    mask = delta_mask(r, sizes)
    grids = np.meshgrid(*[np.arange(r * q, dtype=np.int64) for _ in range(m)], indexing="ij")
    total = sum(grids)
    n = q ** m
    num = total * q ** (m - 1)
    if floored:
        sz_num = np.minimum(num // r, n)
        sz_den = 1
    else:
        sz_num = np.minimum(num, n * r)
        sz_den = r
    keep = mask & (sz_num > 0)
    a = sz_num[keep].tolist()
    d = T[keep].tolist()
    acc = Fraction(0)
    for x, y in zip(a, d):
        sz = Fraction(x, sz_den)
        acc += (sz - y) / sz
    return acc / len(a)


def improvement_rows(m: int, r: int, q: int, floored: bool = True):
    """Per-monomial (exponent, SZ, D, improvement) rows of the mean."""
    sizes = (q,) * m
    T, _ = bound_table(BoundKind("D"), r, sizes)
    rows = []
    for e in delta_set(r, sizes).tolist():
        x = sum(e) * q ** (m - 1)
        sz = Fraction(min(x // r, q ** m)) if floored else min(Fraction(x, r), Fraction(q ** m))
        if sz == 0:
            continue
        d = int(T[tuple(e)])
        rows.append((tuple(e), sz, d, (sz - d) / sz))
    return rows


def truncate(x: Fraction, digits: int = 3) -> str:
    scaled = floor(x * 10 ** digits)
    return f"{scaled / 10 ** digits:.{digits}f}"


ORACLE_LIMIT = 1 << 12


def zero_count_oracle(F: MultiPoly, r: int, ensemble: PointEnsemble) -> int:
    """Number of grid points where F has multiplicity at least r."""
    if ensemble.n > ORACLE_LIMIT:
        raise ValueError("grid too large for the oracle")
    return int(np.count_nonzero(multiplicity_at_least(F, r, ensemble.points())))
