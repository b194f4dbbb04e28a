"""Finite fields GF(p^k) with log/antilog tables, subfield embeddings,
the phi map onto an extension field, and linear algebra over the field.

Elements are plain Python ints in ``range(p**k)``.  The integer ``a``
encodes the polynomial whose coefficients are the base-``p`` digits of
``a`` (lowest digit = constant term), so ``0`` and ``1`` are the usual
zero and one and the prime subfield is ``range(p)``.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

import numpy as np

MAX_ORDER = 1 << 16


class FieldError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# small helpers on polynomials over GF(p), stored low-degree first

def _digits(a: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        out.append(a % p)
        a //= p
    return out


def _undigits(ds: Sequence[int], p: int) -> int:
    a = 0
    for d in reversed(ds):
        a = a * p + d
    return a


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        c = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - df
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_mod(prod, f, p)


def _is_irreducible(f: list[int], p: int) -> bool:
    k = len(f) - 1
    if k == 1:
        return True
    if f[0] == 0:
        return False
    # trial division by every monic polynomial of degree 1..k//2
    for deg in range(1, k // 2 + 1):
        for low in range(p ** deg):
            g = _digits(low, p, deg) + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _poly_pow(g: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = [1]
    base = g
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return result


def _is_primitive(g: list[int], f: list[int], p: int) -> bool:
    order = p ** (len(f) - 1) - 1
    if order == 1:
        return _poly_mod(g, f, p) == [1]
    for r in _prime_factors(order):
        if _poly_pow(g, order // r, f, p) == [1]:
            return False
    return bool(_poly_mod(g, f, p))


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Least monic primitive polynomial of degree ``k`` over GF(p).

    Candidates ``x^k + c_{k-1} x^{k-1} + ... + c_0`` are scanned in
    increasing order of the integer with base-``p`` digits ``c_0..c_{k-1}``.
    Returned as a coefficient tuple, constant term first.
    """
    if k == 1:
        return (0, 1) if p == 2 else (_prime_root_neg(p), 1)
    for low in range(p ** k):
        f = _digits(low, p, k) + [1]
        if f[0] == 0:
            continue
        if _is_irreducible(f, p) and _is_primitive([0, 1], f, p):
            return tuple(f)
    raise FieldError(f"no primitive polynomial of degree {k} over GF({p})")


def _prime_root_neg(p: int) -> int:
    # for k = 1 the "polynomial" x - g makes x act as the primitive root g
    g = _smallest_primitive_root(p)
    return (-g) % p


def _smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    fs = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fs):
            return g
    raise FieldError("no primitive root")  # pragma: no cover


class FieldCtx:
    """GF(p^k) with exp/log tables.

    ``exp`` has length ``2*(Q-1)`` so sums of two logs index it directly.
    ``log[0]`` holds a sentinel and must be masked by callers.
    """

    def __init__(self, p: int, k: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if k < 1:
            raise FieldError("extension degree must be positive")
        if p ** k > MAX_ORDER:
            raise FieldError(f"GF({p}^{k}) exceeds the table limit {MAX_ORDER}")
        self.p = p
        self.k = k
        self.order = q = p ** k
        if modulus is None:
            modulus = default_modulus(p, k)
        f = [int(c) % p for c in modulus]
        while f and f[-1] == 0:
            f.pop()
        if len(f) - 1 != k:
            raise FieldError("modulus degree does not match k")
        if f[-1] != 1:
            inv = pow(f[-1], p - 2, p)
            f = [(c * inv) % p for c in f]
        if not _is_irreducible(f, p):
            raise FieldError(f"modulus {f} is reducible over GF({p})")
        self.modulus = tuple(f)

        if k == 1:
            gen = _smallest_primitive_root(p)
            exp = [1]
            for _ in range(q - 2):
                exp.append(exp[-1] * gen % p)
        else:
            g_poly = [0, 1]
            if not _is_primitive(g_poly, f, p):
                g_poly = None
                for c in range(2, q):
                    cand = _digits(c, p, k)
                    while cand and cand[-1] == 0:
                        cand.pop()
                    if _is_primitive(cand, f, p):
                        g_poly = cand
                        break
            cur = [1]
            exp = []
            for _ in range(q - 1):
                exp.append(_undigits(cur + [0] * (k - len(cur)), p))
                cur = _poly_mulmod(cur, g_poly, f, p)
            gen = exp[1] if q > 2 else 1
        self.generator = gen
        exp_arr = np.array(exp + exp, dtype=np.int64)
        log_arr = np.zeros(q, dtype=np.int64)
        log_arr[0] = -(1 << 40)  # poisons any lookup that forgets to mask zero
        for i, e in enumerate(exp):
            log_arr[e] = i
        if len(set(exp)) != q - 1:
            raise FieldError("generator is not primitive")  # pragma: no cover
        self.exp = exp_arr
        self.log = log_arr
        self._exp_list = exp + exp
        self._log_list = log_arr.tolist()

        if p == 2:
            self._add_tab = None
            self._neg = np.arange(q, dtype=np.int64)
        else:
            digits = np.array([_digits(a, p, k) for a in range(q)], dtype=np.int64)
            weights = p ** np.arange(k, dtype=np.int64)
            self._neg = ((-digits) % p) @ weights
            if q * q <= 1 << 22:
                self._add_tab = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
            else:
                self._add_tab = None
            self._digits = digits
            self._weights = weights
        self._neg_list = self._neg.tolist()
        self._mul_tab = None
        if q * q <= 1 << 16:
            a = np.arange(q, dtype=np.int64)
            s = self.log[a][:, None] + self.log[a][None, :]
            tab = self.exp[np.where((a[:, None] == 0) | (a[None, :] == 0), 0, s)]
            tab[0, :] = 0
            tab[:, 0] = 0
            self._mul_tab = tab

    # --- scalar arithmetic --------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        if self._add_tab is not None:
            return int(self._add_tab[a, b])
        return int(self.vadd(np.array([a]), np.array([b]))[0])

    def neg(self, a: int) -> int:
        return self._neg_list[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self._neg_list[b])

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_list[self._log_list[a] + self._log_list[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self._exp_list[(self.order - 1 - self._log_list[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 0
        return self._exp_list[(self._log_list[a] * e) % (self.order - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer ``n`` in the prime subfield."""
        return n % self.p

    def mul_int(self, a: int, n: int) -> int:
        return self.mul(a, n % self.p)

    def elements(self) -> range:
        return range(self.order)

    # --- vectorised arithmetic ----------------------------------------------
    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.k == 1:
            return (a + b) % self.p
        if self._add_tab is not None:
            return self._add_tab[a, b]
        da = self._digits[a]
        db = self._digits[b]
        return ((da + db) % self.p) @ self._weights

    def vneg(self, a):
        return self._neg[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._mul_tab is not None:
            return self._mul_tab[a, b]
        la = self.log[a]
        lb = self.log[b]
        zero = (a == 0) | (b == 0)
        idx = np.where(zero, 0, la + lb)
        return np.where(zero, 0, self.exp[idx])

    def vpow(self, a, e):
        a = np.asarray(a, dtype=np.int64)
        e = np.asarray(e, dtype=np.int64)
        la = self.log[a]
        res = self.exp[np.where(a == 0, 0, (la * e) % (self.order - 1))]
        res = np.where(a == 0, np.where(e == 0, 1, 0), res)
        return res

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)]

    def vsum(self, a, axis=0):
        """Field sum along ``axis``."""
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor.reduce(a, axis=axis)
        if self.k == 1:
            return a.sum(axis=axis) % self.p
        d = self._digits[a]
        return (d.sum(axis=axis) % self.p) @ self._weights

    def matmul(self, A, B):
        """Matrix product over the field."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        prod = self.vmul(A[:, :, None], B[None, :, :])
        return self.vsum(prod, axis=1)

    def is_in_subfield(self, a: int, q: int) -> bool:
        return self.pow(a, q) == a

    def __repr__(self):
        return f"FieldCtx(GF({self.p}^{self.k}), modulus={self.modulus})"


@lru_cache(maxsize=None)
def _cached_field(p: int, k: int, modulus: tuple | None) -> FieldCtx:
    return FieldCtx(p, k, modulus)


def field_create(p: int, k: int = 1, modulus: Sequence[int] | None = None) -> FieldCtx:
    """Return the (cached) field GF(p^k)."""
    return _cached_field(p, k, None if modulus is None else tuple(int(c) for c in modulus))


# ---------------------------------------------------------------------------
# subfields and the phi map

@lru_cache(maxsize=None)
def _embedding_table(source: FieldCtx, target: FieldCtx) -> tuple[int, ...]:
    if source.p != target.p or target.k % source.k:
        raise FieldError("source is not a subfield of target")
    q, Q = source.order, target.order
    if source.k == target.k and source.modulus == target.modulus:
        return tuple(range(q))
    # the image of the source generator must be a root of the source
    # modulus, and among such roots we take the smallest power of the
    # target generator lifted to the subfield
    step = (Q - 1) // (q - 1)
    mod = source.modulus

    if source.k == 1:
        return tuple(a % target.p for a in range(q))

    def eval_mod(z: int) -> int:
        acc = 0
        for c in reversed(mod):
            acc = target.add(target.mul(acc, z), c)
        return acc

    # send x to the root of the source modulus with the smallest exponent
    gx = None
    for j in range(q - 1):
        z = target.pow(target.generator, step * j)
        if eval_mod(z) == 0:
            gx = z
            break
    if gx is None:
        raise FieldError("could not embed subfield")  # pragma: no cover
    # image of an element sum c_i x^i is sum c_i gx^i
    table = []
    for a in range(q):
        ds = _digits(a, source.p, source.k)
        acc = 0
        for i, c in enumerate(ds):
            if c:
                acc = target.add(acc, target.mul(c, target.pow(gx, i)))
        table.append(acc)
    if len(set(table)) != q:
        raise FieldError("embedding is not injective")  # pragma: no cover
    return tuple(table)


def embedding(source: FieldCtx, target: FieldCtx) -> np.ndarray:
    """Lookup array mapping source elements to their images in ``target``."""
    return np.array(_embedding_table(source, target), dtype=np.int64)


def embed(a: int, source: FieldCtx, target: FieldCtx) -> int:
    return _embedding_table(source, target)[a]


def restrict(z: int, source: FieldCtx, target: FieldCtx) -> int | None:
    """Inverse of :func:`embed`; ``None`` when ``z`` lies outside the subfield."""
    inv = _restriction_dict(source, target)
    return inv.get(z)


@lru_cache(maxsize=None)
def _restriction_dict(source: FieldCtx, target: FieldCtx) -> dict:
    return {z: a for a, z in enumerate(_embedding_table(source, target))}


def power_basis(source: FieldCtx, target: FieldCtx) -> tuple[int, ...]:
    """The default basis (1, b, ..., b^{m-1}) of ``target`` over ``source``,
    with b the generator of ``target``."""
    m = target.k // source.k
    return tuple(target.pow(target.generator, i) for i in range(m))


def phi(point: Sequence[int], basis: Sequence[int], source: FieldCtx, target: FieldCtx) -> int:
    """Map a point of GF(q)^m to GF(q^m) as sum a_j * b_j."""
    if len(point) != len(basis):
        raise FieldError("point and basis lengths differ")
    acc = 0
    for a, b in zip(point, basis):
        acc = target.add(acc, target.mul(embed(a, source, target), b))
    return acc


def moore_matrix(basis: Sequence[int], q: int, target: FieldCtx) -> np.ndarray:
    m = len(basis)
    out = np.zeros((m, m), dtype=np.int64)
    for v in range(m):
        for j, b in enumerate(basis):
            out[v, j] = target.pow(b, q ** v)
    return out


def coordinate_polynomials(basis: Sequence[int], source: FieldCtx, target: FieldCtx):
    """Linearized polynomials F_1..F_m with F_i(phi(a)) = a_i.

    Returned as a list of dicts ``{exponent: coefficient}`` over ``target``;
    each exponent is a power ``q^v``.
    """
    q = source.order
    A = moore_matrix(basis, q, target)
    if rank(target, A) < len(basis):
        raise FieldError("basis elements are linearly dependent")
    Ainv = inverse(target, A)
    m = len(basis)
    # A a = (z, z^q, ...)  so  a_i = sum_v Ainv[i, v] z^{q^v}
    return [{q ** v: int(Ainv[i, v]) for v in range(m) if Ainv[i, v]} for i in range(m)]


def eval_linearized(poly: dict, z: int, target: FieldCtx) -> int:
    acc = 0
    for e, c in poly.items():
        acc = target.add(acc, target.mul(c, target.pow(z, e)))
    return acc


# ---------------------------------------------------------------------------
# linear algebra

def row_reduce(ctx: FieldCtx, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = np.array(A, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = ctx.vmul(M[r], ctx.inv(int(M[r, c])))
        col = M[:, c].copy()
        col[r] = 0
        others = np.nonzero(col)[0]
        if others.size:
            # the pivot row is zero left of column c
            M[others, c:] = ctx.vsub(M[others, c:], ctx.vmul(col[others, None], M[r, c:][None, :]))
        pivots.append(c)
        r += 1
    return M, pivots


def rank(ctx: FieldCtx, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(row_reduce(ctx, A)[1])


def nullspace(ctx: FieldCtx, A) -> np.ndarray:
    """Basis of the right kernel, one vector per row."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = row_reduce(ctx, A)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = ctx.neg(int(R[i, f]))
    return basis


def nullspace_vector(ctx: FieldCtx, A) -> np.ndarray | None:
    """A deterministic nonzero kernel vector: the first free column is set to 1."""
    N = nullspace(ctx, A)
    if N.shape[0] == 0:
        return None
    return N[0]


def solve_linear(ctx: FieldCtx, A, b) -> np.ndarray | None:
    """One solution x of A x = b, or None when inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    aug = np.hstack([A, b])
    R, piv = row_reduce(ctx, aug)
    cols = A.shape[1]
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = R[i, cols]
    return x


def solve(ctx: FieldCtx, A, mode: str = "nullspace"):
    """Dispatch: ``mode`` is ``"nullspace"`` (one kernel vector of A),
    ``"rank"`` or ``"kernel"`` (full kernel basis)."""
    if mode == "nullspace":
        return nullspace_vector(ctx, A)
    if mode == "rank":
        return rank(ctx, A)
    if mode == "kernel":
        return nullspace(ctx, A)
    raise ValueError(f"unknown mode {mode!r}")


def inverse(ctx: FieldCtx, A) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix is not square")
    R, piv = row_reduce(ctx, np.hstack([A, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise FieldError("matrix is singular")
    return R[:, n:]
