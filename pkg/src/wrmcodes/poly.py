"""Sparse multivariate polynomials over a :class:`FieldCtx`.

A polynomial is a dict mapping exponent tuples to nonzero coefficients.
Besides ring arithmetic this module provides monomial orders, grid
evaluation, Hasse derivatives, multiplicities and a Roth-Ruckenstein
root finder for polynomials in ``F[X][Z]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import comb, inf
from typing import Iterable, Sequence

import numpy as np

from .ff import FieldCtx

Monomial = tuple


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is ``"lex"`` or ``"grlex"``.  ``priority`` lists variable
    indices from most to least significant; the default ``(0, 1, ...)``
    gives X_m < ... < X_1."""

    kind: str = "lex"
    priority: tuple | None = None

    def key(self, mono: Sequence[int]):
        pr = self.priority if self.priority is not None else range(len(mono))
        lexpart = tuple(mono[i] for i in pr)
        if self.kind == "lex":
            return lexpart
        if self.kind == "grlex":
            return (sum(mono),) + lexpart
        raise ValueError(f"unknown order {self.kind!r}")


LEX = MonomialOrder("lex")
GRLEX = MonomialOrder("grlex")


def divides(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Sequence[int], b: Sequence[int]) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


class MultiPoly:
    __slots__ = ("ctx", "nvars", "terms")

    def __init__(self, ctx: FieldCtx, nvars: int, terms: dict | None = None):
        self.ctx = ctx
        self.nvars = nvars
        t = {}
        if terms:
            for e, c in terms.items():
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ValueError(f"exponent {e} has wrong length")
                if min(e, default=0) < 0:
                    raise ValueError("negative exponent")
                c = int(c)
                if c:
                    t[e] = c
        self.terms = t

    # construction --------------------------------------------------------
    @classmethod
    def zero(cls, ctx, nvars):
        return cls(ctx, nvars)

    @classmethod
    def constant(cls, ctx, nvars, c):
        return cls(ctx, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, ctx, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(ctx, nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, ctx, exps, c=1):
        return cls(ctx, len(exps), {tuple(exps): c})

    def _new(self, terms):
        out = MultiPoly.__new__(MultiPoly)
        out.ctx = self.ctx
        out.nvars = self.nvars
        out.terms = {e: c for e, c in terms.items() if c}
        return out

    # arithmetic ------------------------------------------------------------
    def __add__(self, other: MultiPoly) -> MultiPoly:
        add = self.ctx.add
        t = dict(self.terms)
        for e, c in other.terms.items():
            t[e] = add(t.get(e, 0), c)
        return self._new(t)

    def __neg__(self) -> MultiPoly:
        neg = self.ctx.neg
        return self._new({e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        add, mul = self.ctx.add, self.ctx.mul
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = add(t.get(e, 0), mul(c1, c2))
        return self._new(t)

    def __pow__(self, n: int) -> MultiPoly:
        result = MultiPoly.constant(self.ctx, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> MultiPoly:
        mul = self.ctx.mul
        return self._new({e: mul(v, c) for e, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)})"

    # inspection ------------------------------------------------------------
    def support(self) -> list[tuple]:
        return sorted(self.terms)

    def coeff(self, e) -> int:
        return self.terms.get(tuple(e), 0)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def leading_monomial(self, order: MonomialOrder = LEX) -> tuple:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order.key)

    # evaluation ------------------------------------------------------------
    def evaluate(self, point: Sequence[int]) -> int:
        ctx = self.ctx
        acc = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = ctx.mul(v, ctx.pow(x, k))
            acc = ctx.add(acc, v)
        return acc

    def evaluate_points(self, points) -> np.ndarray:
        """Evaluate at every row of the integer array ``points``."""
        ctx = self.ctx
        pts = np.asarray(points, dtype=np.int64).reshape(-1, self.nvars)
        acc = np.zeros(len(pts), dtype=np.int64)
        for e, c in self.terms.items():
            v = np.full(len(pts), c, dtype=np.int64)
            for j, k in enumerate(e):
                if k:
                    v = ctx.vmul(v, ctx.vpow(pts[:, j], k))
            acc = ctx.vadd(acc, v)
        return acc

    def substitute(self, var: int, value: int) -> MultiPoly:
        """Set variable ``var`` to a field constant; the variable is kept
        (with exponent 0) so the number of variables is unchanged."""
        ctx = self.ctx
        t: dict = {}
        for e, c in self.terms.items():
            v = ctx.mul(c, ctx.pow(value, e[var]))
            ne = e[:var] + (0,) + e[var + 1:]
            t[ne] = ctx.add(t.get(ne, 0), v)
        return self._new(t)

    def drop_var(self, var: int) -> MultiPoly:
        if any(e[var] for e in self.terms):
            raise ValueError("variable still occurs")
        out = MultiPoly(self.ctx, self.nvars - 1)
        out.terms = {e[:var] + e[var + 1:]: c for e, c in self.terms.items()}
        return out


def evaluate_grid(F: MultiPoly, ensemble) -> np.ndarray:
    """Values of ``F`` at all points of a product ensemble, row-major with
    the last coordinate varying fastest."""
    return F.evaluate_points(ensemble.points())


def _binom_mod(n: int, k: int, p: int) -> int:
    # Lucas' theorem keeps the numbers small
    r = 1
    while n or k:
        a, b = n % p, k % p
        if b > a:
            return 0
        r = r * comb(a, b) % p
        n //= p
        k //= p
    return r


def binom_table(nmax: int, p: int) -> np.ndarray:
    """``T[n, k] = C(n, k) mod p`` for ``0 <= k, n <= nmax``."""
    T = np.zeros((nmax + 1, nmax + 1), dtype=np.int64)
    T[:, 0] = 1
    for n in range(1, nmax + 1):
        T[n, 1:n + 1] = (T[n - 1, 1:n + 1] + T[n - 1, 0:n]) % p
    return T


def hasse_derivative(F: MultiPoly, k: Sequence[int]) -> MultiPoly:
    """Hasse derivative of order ``k`` via the binomial coefficient formula."""
    ctx = F.ctx
    k = tuple(k)
    t: dict = {}
    for e, c in F.terms.items():
        if all(a >= b for a, b in zip(e, k)):
            coef = 1
            for a, b in zip(e, k):
                coef = coef * _binom_mod(a, b, ctx.p) % ctx.p
            if coef:
                ne = tuple(a - b for a, b in zip(e, k))
                t[ne] = ctx.add(t.get(ne, 0), ctx.mul_int(c, coef))
    return F._new(t)


def hasse_derivative_by_expansion(F: MultiPoly, k: Sequence[int]) -> MultiPoly:
    """Hasse derivative read off from F(X + Y) = sum_k F^(k)(X) Y^k.

    Slow; the expansion is done symbolically in 2m variables.
    """
    ctx, m = F.ctx, F.nvars
    big = MultiPoly(ctx, 2 * m)
    shifted = []
    for j in range(m):
        xj = MultiPoly.variable(ctx, 2 * m, j)
        yj = MultiPoly.variable(ctx, 2 * m, m + j)
        shifted.append(xj + yj)
    for e, c in F.terms.items():
        term = MultiPoly.constant(ctx, 2 * m, c)
        for j, a in enumerate(e):
            if a:
                term = term * shifted[j] ** a
        big = big + term
    k = tuple(k)
    t = {e[:m]: c for e, c in big.terms.items() if e[m:] == k}
    return F._new(t)


def translate(F: MultiPoly, a: Sequence[int]) -> MultiPoly:
    """F(X + a)."""
    ctx = F.ctx
    t: dict = {}
    for e, c in F.terms.items():
        # expand prod_j (X_j + a_j)^{e_j}
        parts = [{(): c}]
        for j, ej in enumerate(e):
            new = {}
            for prefix, v in parts[-1].items():
                for l in range(ej + 1):
                    b = _binom_mod(ej, l, ctx.p)
                    if not b:
                        continue
                    w = ctx.mul(v, ctx.mul_int(ctx.pow(a[j], ej - l), b))
                    if w:
                        key = prefix + (l,)
                        new[key] = ctx.add(new.get(key, 0), w)
            parts.append(new)
        for ex, v in parts[-1].items():
            t[ex] = ctx.add(t.get(ex, 0), v)
    return F._new(t)


def multiplicity(F: MultiPoly, a: Sequence[int]) -> float:
    """Multiplicity of ``F`` at ``a``; ``inf`` for the zero polynomial."""
    if F.is_zero():
        return inf
    G = translate(F, a)
    return min(sum(e) for e in G.terms)


def derivative_orders(m: int, r: int) -> list[tuple]:
    """All k in N^m with |k| < r, graded then lexicographic."""
    out = []

    def rec(prefix, left):
        if len(prefix) == m:
            out.append(tuple(prefix))
            return
        for v in range(left + 1):
            rec(prefix + [v], left - v)

    if r > 0:
        rec([], r - 1)
    out.sort(key=lambda k: (sum(k), k))
    return out


def multiplicity_at_least(F: MultiPoly, r: int, points) -> np.ndarray:
    """Boolean mask: multiplicity of F at each point is at least ``r``."""
    pts = np.asarray(points, dtype=np.int64).reshape(-1, F.nvars)
    mask = np.ones(len(pts), dtype=bool)
    if F.is_zero():
        return mask
    for k in derivative_orders(F.nvars, r):
        D = hasse_derivative(F, k)
        if D.is_zero():
            continue
        mask &= D.evaluate_points(pts) == 0
        if not mask.any():
            break
    return mask


# ---------------------------------------------------------------------------
# roots in Z of Q(X, Z), Roth-Ruckenstein

def _univariate_roots(ctx: FieldCtx, coeffs: dict) -> list[int]:
    """Roots of sum_b coeffs[b] Z^b by exhaustive evaluation."""
    zs = np.arange(ctx.order, dtype=np.int64)
    acc = np.zeros(ctx.order, dtype=np.int64)
    for b, c in coeffs.items():
        acc = ctx.vadd(acc, ctx.vmul(np.full(ctx.order, c), ctx.vpow(zs, b)))
    return [int(z) for z in np.nonzero(acc == 0)[0]]


def _rr_shift(ctx: FieldCtx, Q: dict, gamma: int) -> dict:
    # Q(X, X Z + gamma)
    t: dict = {}
    for (a, b), c in Q.items():
        for j in range(b + 1):
            binom = _binom_mod(b, j, ctx.p)
            if not binom:
                continue
            v = ctx.mul(c, ctx.mul_int(ctx.pow(gamma, b - j), binom))
            if v:
                key = (a + j, j)
                t[key] = ctx.add(t.get(key, 0), v)
    return {e: c for e, c in t.items() if c}


def _strip_x(Q: dict) -> dict:
    h = min(a for a, _ in Q)
    if h == 0:
        return Q
    return {(a - h, b): c for (a, b), c in Q.items()}


def z_roots_univariate(Q: MultiPoly, k: int) -> list[MultiPoly]:
    """All f in F[X] with deg f < k and Q(X, f(X)) = 0.

    ``Q`` has two variables (X, Z).  The candidates of the Roth-Ruckenstein
    recursion are verified by substitution.
    """
    if Q.nvars != 2:
        raise ValueError("expected a polynomial in (X, Z)")
    if Q.is_zero():
        raise ValueError("zero polynomial has every f as a root")
    ctx = Q.ctx
    found: list[list[int]] = []

    def rec(Qd: dict, prefix: list[int]):
        Qd = _strip_x(Qd)
        lowest = {b: c for (a, b), c in Qd.items() if a == 0}
        for gamma in _univariate_roots(ctx, lowest):
            coeffs = prefix + [gamma]
            if len(coeffs) == k:
                found.append(coeffs)
            else:
                rec(_rr_shift(ctx, Qd, gamma), coeffs)

    if k <= 0:
        return []
    rec(dict(Q.terms), [])
    out = []
    seen = set()
    for coeffs in found:
        f = MultiPoly(ctx, 1, {(i,): c for i, c in enumerate(coeffs)})
        key = tuple(coeffs)
        if key in seen:
            continue
        seen.add(key)
        if substitute_z(Q, f).is_zero():
            out.append(f)
    out.sort(key=lambda f: tuple(f.coeff((i,)) for i in range(k)))
    return out


def substitute_z(Q: MultiPoly, F: MultiPoly) -> MultiPoly:
    """Q(X, F(X)) where Z is the last variable of Q and F is in the rest."""
    m = Q.nvars - 1
    if F.nvars != m:
        raise ValueError("F must use the non-Z variables of Q")
    ctx = Q.ctx
    by_b: dict[int, dict] = {}
    for e, c in Q.terms.items():
        by_b.setdefault(e[-1], {})[e[:-1]] = c
    result = MultiPoly(ctx, m)
    if not by_b:
        return result
    # Horner in Z
    for b in range(max(by_b), -1, -1):
        result = result * F + MultiPoly(ctx, m, by_b.get(b, {}))
    return result


# ---------------------------------------------------------------------------
# text format "c*x1^a*x2^b + ..."

_TERM = re.compile(r"^\s*(\d+)?\s*((?:\*?\s*x\d+(?:\^\d+)?\s*)*)$")


def parse_poly(text: str, ctx: FieldCtx, nvars: int) -> MultiPoly:
    """Parse ``"3*x1^2*x2 + 5"``; coefficients are field element codes."""
    terms: dict = {}
    text = text.strip()
    if text in ("", "0"):
        return MultiPoly(ctx, nvars)
    for chunk in text.split("+"):
        chunk = chunk.strip()
        m = _TERM.match(chunk)
        if not m or not chunk:
            raise ValueError(f"cannot parse term {chunk!r}")
        c = int(m.group(1)) if m.group(1) else 1
        if c >= ctx.order:
            raise ValueError(f"coefficient {c} is not a field element")
        e = [0] * nvars
        for var, pw in re.findall(r"x(\d+)(?:\^(\d+))?", m.group(2)):
            j = int(var) - 1
            if not 0 <= j < nvars:
                raise ValueError(f"variable x{var} out of range")
            e[j] += int(pw) if pw else 1
        e = tuple(e)
        terms[e] = ctx.add(terms.get(e, 0), c)
    return MultiPoly(ctx, nvars, terms)


def format_poly(F: MultiPoly, order: MonomialOrder = GRLEX) -> str:
    if F.is_zero():
        return "0"
    parts = []
    for e in sorted(F.terms, key=order.key, reverse=True):
        c = F.terms[e]
        factors = [f"x{j + 1}" + (f"^{a}" if a > 1 else "") for j, a in enumerate(e) if a]
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        else:
            parts.append("*".join([str(c)] + factors))
    return " + ".join(parts)


def from_univariate_coeffs(ctx: FieldCtx, coeffs: Iterable[int]) -> MultiPoly:
    return MultiPoly(ctx, 1, {(i,): c for i, c in enumerate(coeffs)})
