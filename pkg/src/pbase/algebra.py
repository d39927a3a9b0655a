"""Exact arithmetic over small finite fields, polynomials and square matrices.

Field elements are plain integers: the element c_0 + c_1 t + ... + c_{f-1} t^{f-1}
of F_q = F_l[t]/(modulus) is encoded as sum(c_i * l**i).  Every field carries
precomputed addition/multiplication tables, so all arithmetic below is table
lookups (vectorized through numpy where it matters).

Polynomials are immutable coefficient tuples, low degree first, with no
trailing zeros.  Matrices are immutable tuples of rows.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

DEFAULT_FIELD_BOUND = 81


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of n, ascending."""
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


# ---------------------------------------------------------------------------
# prime-field polynomials (used only to build extension fields)


def _prime_poly_mulmod(a, b, mod, l):
    res = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                res[i + j] = (res[i + j] + x * y) % l
    f = len(mod) - 1
    for k in range(len(res) - 1, f - 1, -1):
        c = res[k]
        if c:
            for j in range(f + 1):
                res[k - f + j] = (res[k - f + j] - c * mod[j]) % l
    res = res[:f] + [0] * (f - len(res[:f]))
    return res


def _prime_poly_has_factor(poly, l):
    """Trial division of a monic prime-field polynomial by monic polys of degree <= deg/2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(l), repeat=d):
            div = list(low) + [1]
            r = list(poly)
            for k in range(len(r) - 1, d - 1, -1):
                c = r[k]
                if c:
                    for j in range(d + 1):
                        r[k - d + j] = (r[k - d + j] - c * div[j]) % l
            if not any(r[:d]):
                return True
    return False


def _smallest_irreducible(l: int, f: int) -> tuple[int, ...]:
    # ascending integer encoding sum(c_i * l**i)
    for high in itertools.product(range(l), repeat=f):
        low = high[::-1]
        poly = list(low) + [1]
        if f > 1 and low[0] == 0:
            continue
        if not _prime_poly_has_factor(poly, l):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")


@functools.lru_cache(maxsize=None)
def _tables(l: int, f: int, modulus: tuple[int, ...]):
    q = l**f
    digits = np.array([[(x // l**i) % l for i in range(f)] for x in range(q)], dtype=np.int64)
    weights = l ** np.arange(f, dtype=np.int64)
    add = ((digits[:, None, :] + digits[None, :, :]) % l) @ weights
    neg = ((-digits) % l) @ weights
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            c = _prime_poly_mulmod(list(digits[a]), list(digits[b]), list(modulus), l) if f > 1 \
                else [(a * b) % l]
            v = sum(int(ci) * l**i for i, ci in enumerate(c))
            mul[a, b] = mul[b, a] = v
    inv = np.zeros(q, dtype=np.int64)
    for a in range(1, q):
        inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
    for t in (add, neg, mul, inv):
        t.setflags(write=False)
    return add, neg, mul, inv


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q, q = characteristic**degree."""

    characteristic: int
    degree: int
    modulus: tuple[int, ...]

    @property
    def order(self) -> int:
        return self.characteristic**self.degree

    @property
    def add(self) -> np.ndarray:
        return _tables(self.characteristic, self.degree, self.modulus)[0]

    @property
    def neg(self) -> np.ndarray:
        return _tables(self.characteristic, self.degree, self.modulus)[1]

    @property
    def mul(self) -> np.ndarray:
        return _tables(self.characteristic, self.degree, self.modulus)[2]

    @property
    def inv(self) -> np.ndarray:
        return _tables(self.characteristic, self.degree, self.modulus)[3]

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def power(self, a: int, k: int) -> int:
        r = 1
        for _ in range(k):
            r = int(self.mul[r, a])
        return r

    def element_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        k, r = 1, a
        while r != 1:
            r = int(self.mul[r, a])
            k += 1
        return k

    @functools.cached_property
    def primitive_element(self) -> int:
        for a in range(1, self.order):
            if self.element_order(a) == self.order - 1:
                return a
        raise AssertionError("field without primitive element")

    def coefficients(self, a: int) -> tuple[int, ...]:
        """Residue vector of an encoded element in the modulus basis."""
        l = self.characteristic
        return tuple((a // l**i) % l for i in range(self.degree))

    def __repr__(self) -> str:
        return f"F{self.order}"


def field_make(characteristic: int, degree: int = 1, bound: int = DEFAULT_FIELD_BOUND) -> FieldSpec:
    if not is_prime(characteristic):
        raise ValueError(f"{characteristic} is not prime")
    if degree < 1:
        raise ValueError("degree must be positive")
    if characteristic**degree > bound:
        raise ValueError(f"field order {characteristic}**{degree} exceeds bound {bound}")
    if degree == 1:
        modulus = (0, 1)
    else:
        modulus = _smallest_irreducible(characteristic, degree)
    return FieldSpec(characteristic, degree, modulus)


def field_of_order(q: int, bound: int = DEFAULT_FIELD_BOUND) -> FieldSpec:
    ps = prime_factors(q)
    if len(ps) != 1:
        raise ValueError(f"{q} is not a prime power")
    l = ps[0]
    f = 0
    while q > 1:
        q //= l
        f += 1
    return field_make(l, f, bound)


# ---------------------------------------------------------------------------
# polynomials


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if len(nz) else c[:0]


@dataclass(frozen=True)
class Polynomial:
    field: FieldSpec
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs)
        while c and c[-1] == 0:
            c = c[:-1]
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_array(cls, field, arr) -> "Polynomial":
        return cls(field, tuple(int(x) for x in _trim(np.asarray(arr))))

    @classmethod
    def x_power_minus_one(cls, field, n: int) -> "Polynomial":
        c = [0] * (n + 1)
        c[0] = int(field.neg[1])
        c[n] = 1
        return cls(field, tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        il = int(self.field.inv[self.lead])
        return Polynomial.from_array(self.field, self.field.mul[il, self.array()])

    def sort_key(self):
        """Degree, then integer encoding sum(c_i * q**i)."""
        return (self.degree, self.coeffs[::-1])

    def substitute_power(self, k: int) -> "Polynomial":
        """Return self(X**k)."""
        c = [0] * (k * self.degree + 1) if self.coeffs else []
        for i, a in enumerate(self.coeffs):
            c[i * k] = a
        return Polynomial(self.field, tuple(c))

    def __call__(self, x: int) -> int:
        r = 0
        for a in reversed(self.coeffs):
            r = int(self.field.add[self.field.mul[r, x], a])
        return r

    def __add__(self, other):
        _same_field(self, other)
        a, b = self.array(), other.array()
        n = max(len(a), len(b))
        a = np.pad(a, (0, n - len(a)))
        b = np.pad(b, (0, n - len(b)))
        return Polynomial.from_array(self.field, self.field.add[a, b])

    def __neg__(self):
        return Polynomial.from_array(self.field, self.field.neg[self.array()])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return poly_mul(self, other)

    def __mod__(self, other):
        return poly_mod(self, other)

    def __floordiv__(self, other):
        return poly_divmod(self, other)[0]

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms)


def _same_field(a: Polynomial, b: Polynomial):
    if a.field != b.field:
        raise ValueError(f"mixed fields {a.field!r} and {b.field!r}")


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    _same_field(a, b)
    F = a.field
    if a.is_zero() or b.is_zero():
        return Polynomial(F, ())
    # loop over the sparser factor, vectorize over the other
    if np.count_nonzero(a.coeffs) > np.count_nonzero(b.coeffs):
        a, b = b, a
    av, bv = a.array(), b.array()
    res = np.zeros(len(av) + len(bv) - 1, dtype=np.int64)
    lb = len(bv)
    for i in np.nonzero(av)[0]:
        res[i : i + lb] = F.add[res[i : i + lb], F.mul[av[i], bv]]
    return Polynomial.from_array(F, res)


def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    _same_field(a, b)
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    F = a.field
    r = a.array().copy()
    db = b.degree
    if a.degree < db:
        return Polynomial(F, ()), a
    bv = b.array()
    nb = F.neg[bv]
    il = int(F.inv[b.lead])
    quo = np.zeros(a.degree - db + 1, dtype=np.int64)
    for k in range(a.degree - db, -1, -1):
        c = r[k + db]
        if c:
            c = F.mul[c, il]
            quo[k] = c
            r[k : k + db + 1] = F.add[r[k : k + db + 1], F.mul[c, nb]]
    return Polynomial.from_array(F, quo), Polynomial.from_array(F, r[:db])


def poly_mod(a: Polynomial, b: Polynomial) -> Polynomial:
    return poly_divmod(a, b)[1]


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; gcd(a, 0) = monic(a)."""
    _same_field(a, b)
    while not b.is_zero():
        a, b = b, poly_mod(a, b)
    return a.monic()


def poly_powmod(a: Polynomial, k: int, m: Polynomial) -> Polynomial:
    result = Polynomial(a.field, (1,))
    base = poly_mod(a, m)
    while k:
        if k & 1:
            result = poly_mod(result * base, m)
        base = poly_mod(base * base, m)
        k >>= 1
    return result


def monic_polynomials(field: FieldSpec, degree: int) -> Iterable[Polynomial]:
    """All monic polynomials of a given degree, by ascending integer encoding."""
    for high in itertools.product(range(field.order), repeat=degree):
        yield Polynomial(field, high[::-1] + (1,))


def is_irreducible(a: Polynomial) -> bool:
    if a.degree < 1:
        raise ValueError("irreducibility is undefined for constants")
    for d in range(1, a.degree // 2 + 1):
        for g in monic_polynomials(a.field, d):
            if poly_mod(a, g).is_zero():
                return False
    return True


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class Matrix:
    field: FieldSpec
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        if any(len(r) != len(rows) for r in rows):
            raise ValueError("matrix must be square")
        q = self.field.order
        if any(not 0 <= x < q for r in rows for x in r):
            raise ValueError(f"entries must be field encodings in [0, {q})")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_array(cls, field, arr) -> "Matrix":
        return cls(field, tuple(map(tuple, np.asarray(arr).tolist())))

    @classmethod
    def identity(cls, field, n: int) -> "Matrix":
        return cls.from_array(field, np.eye(n, dtype=np.int64))

    @classmethod
    def scalar(cls, field, n: int, c: int) -> "Matrix":
        return cls.from_array(field, np.eye(n, dtype=np.int64) * c)

    @property
    def n(self) -> int:
        return len(self.rows)

    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.n, self.n)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValueError("mixed fields")
        return Matrix.from_array(self.field, matmul(self.field, self.array(), other.array()))

    __mul__ = __matmul__

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix.from_array(self.field, self.field.add[self.array(), other.array()])

    def scale(self, c: int) -> "Matrix":
        return Matrix.from_array(self.field, self.field.mul[c, self.array()])

    def __pow__(self, k: int) -> "Matrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = Matrix.identity(self.field, self.n)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.array(), np.eye(self.n, dtype=np.int64)))

    def determinant(self) -> int:
        return determinant(self.field, self.array())

    def inverse(self) -> "Matrix":
        return Matrix.from_array(self.field, inverse(self.field, self.array()))

    def sort_key(self):
        return tuple(x for r in self.rows for x in r)

    def __str__(self):
        return ";".join(",".join(str(x) for x in r) for r in self.rows)


def matmul(F: FieldSpec, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Product of (..., n, n) stacks over F via table lookups."""
    prods = F.mul[A[..., :, :, None], B[..., None, :, :]]  # (..., i, k, j)
    out = prods[..., 0, :]
    for k in range(1, prods.shape[-2]):
        out = F.add[out, prods[..., k, :]]
    return out


def _row_reduce(F: FieldSpec, M: np.ndarray):
    """Gaussian elimination; returns (echelon form, pivot columns, determinant factor)."""
    M = M.copy()
    rows, cols = M.shape
    pivots = []
    det = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
            det = int(F.neg[det])
        lead = int(M[r, c])
        det = int(F.mul[det, lead])
        M[r] = F.mul[int(F.inv[lead]), M[r]]
        for rr in range(rows):
            if rr != r and M[rr, c]:
                M[rr] = F.add[M[rr], F.mul[int(F.neg[M[rr, c]]), M[r]]]
        pivots.append(c)
        r += 1
    return M, pivots, det


def determinant(F: FieldSpec, A: np.ndarray) -> int:
    _, pivots, det = _row_reduce(F, A)
    return det if len(pivots) == A.shape[0] else 0


def inverse(F: FieldSpec, A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    aug = np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1)
    R, pivots, _ = _row_reduce(F, aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return R[:, n:]


def block_diagonal(field: FieldSpec, blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.n for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    i = 0
    for b in blocks:
        out[i : i + b.n, i : i + b.n] = b.array()
        i += b.n
    return Matrix.from_array(field, out)


def companion_matrix(a: Polynomial) -> Matrix:
    """Companion matrix: ones on the subdiagonal, last column = -coefficients."""
    if a.degree < 1 or a.lead != 1:
        raise ValueError("companion matrix needs a monic polynomial of degree >= 1")
    if a.coeffs[0] == 0:
        raise ValueError("zero constant term gives a singular companion matrix")
    F, n = a.field, a.degree
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(1, n):
        M[i, i - 1] = 1
    M[:, n - 1] = F.neg[np.array(a.coeffs[:n])]
    return Matrix.from_array(F, M)


def jordan_block(field: FieldSpec, n: int, eigenvalue: int = 1) -> Matrix:
    M = np.eye(n, dtype=np.int64) * eigenvalue
    for i in range(n - 1):
        M[i, i + 1] = 1
    return Matrix.from_array(field, M)


def minimal_polynomial(A: Matrix) -> Polynomial:
    """First linear dependence among I, A, A^2, ... found by exact elimination."""
    F, n = A.field, A.n
    powers = [np.eye(n, dtype=np.int64).ravel()]
    P = np.eye(n, dtype=np.int64)
    Aa = A.array()
    for k in range(1, n + 1):
        P = matmul(F, P, Aa)
        powers.append(P.ravel())
        # columns = vec(A^0..A^k); solve for the dependence with coefficient 1 on A^k
        system = np.stack(powers, axis=1)
        R, pivots, _ = _row_reduce(F, system)
        if k not in pivots:
            coeffs = [0] * (k + 1)
            coeffs[k] = 1
            for row, c in enumerate(pivots):
                coeffs[c] = int(F.neg[R[row, k]])
            return Polynomial(F, tuple(coeffs))
    raise AssertionError("Cayley-Hamilton violated")


def characteristic_polynomial(A: Matrix) -> Polynomial:
    """det(X I - A) by cofactor expansion over F[X]; desk scale only."""
    F, n = A.field, A.n
    X = Polynomial(F, (0, 1))
    M = [[(X if i == j else Polynomial(F, ())) - Polynomial(F, (A.rows[i][j],)) for j in range(n)]
         for i in range(n)]
    return _poly_det(M)


def _poly_det(M):
    n = len(M)
    if n == 1:
        return M[0][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        term = M[0][j] * _poly_det(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def evaluate_at_matrix(g: Polynomial, A: Matrix) -> Matrix:
    F, n = A.field, A.n
    Aa = A.array()
    R = np.zeros((n, n), dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(g.coeffs):
        R = F.add[matmul(F, R, Aa), F.mul[c, eye]]
    return Matrix.from_array(F, R)


def matrix_order(A: Matrix, cap: int = 10**6) -> int:
    if A.determinant() == 0:
        raise ValueError("singular matrix has no order")
    F = A.field
    Aa = A.array()
    eye = np.eye(A.n, dtype=np.int64)
    P = Aa
    for k in range(1, cap + 1):
        if np.array_equal(P, eye):
            return k
        P = matmul(F, P, Aa)
    raise RuntimeError(f"matrix order exceeds cap {cap}")
