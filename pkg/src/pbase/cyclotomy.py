"""Structured factorization of X^(p^n) - 1 over F_q.

The roots of X^(p^n) - 1 are the powers zeta^j of a primitive p^n-th root of
unity, and Frobenius acts on the exponents j by multiplication with q.  Orbits
of exponents of small additive order give the level-0 blocks (irreducible, of
degree e); for level i >= 1 the orbits on exponents of additive order
p^(s+i) are grouped into unions of exactly e*p^i exponents.

Every level-i union turns out to be the full preimage of one level-0 orbit
under j -> j*p^i, so its polynomial is the level-0 block evaluated at
X^(p^i).  This keeps all splitting-field arithmetic inside F_q(zeta_{p^s}), a
field of degree e <= p-1 over F_q, no matter how large n is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import NamedTuple

from .algebra import FieldSpec, Polynomial, field_of_order, is_prime, monic_polynomials, poly_gcd, poly_mod

DEFAULT_ROOT_BOUND = 10**4


def ord_mod(a: int, m: int) -> int:
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if math.gcd(a, m) != 1:
        raise ValueError(f"{a} is not a unit modulo {m}")
    a %= m
    t, x = 1, a
    while x != 1:
        x = (x * a) % m
        t += 1
    return t


def p_valuation(m: int, p: int) -> int:
    if m < 1:
        raise ValueError("valuation needs a positive integer")
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v


def euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


@dataclass(frozen=True)
class Factor:
    level: int
    index: int
    poly: Polynomial
    exponents: tuple[int, ...]  # root set {zeta^j : j in exponents}, zeta of order p^n


@dataclass(frozen=True)
class FactorSystem:
    p: int
    field: FieldSpec
    n: int
    e: int
    s: int
    gamma: tuple[Factor, ...] = dc_field(repr=False)

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def top_level(self) -> int:
        return max(0, self.n - self.s)

    def level(self, i: int) -> list[Factor]:
        return [g for g in self.gamma if g.level == i]

    def lex_sorted(self, i: int) -> list[Polynomial]:
        return sorted((g.poly for g in self.level(i)), key=Polynomial.sort_key)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "n": self.n,
            "e": self.e,
            "s": self.s,
            "gamma": [{"i": g.level, "k": g.index, "coeffs": list(g.poly.coeffs)} for g in self.gamma],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FactorSystem":
        """Rebuild from the JSON form; exponent sets are not serialized."""
        F = field_of_order(d["q"])
        gamma = tuple(Factor(g["i"], g["k"], Polynomial(F, tuple(g["coeffs"])), ()) for g in d["gamma"])
        return cls(d["p"], F, d["n"], d["e"], d["s"], gamma)


def frobenius_orbits(q: int, modulus: int) -> list[tuple[int, ...]]:
    """Orbits of j -> q*j on Z/modulus, each sorted, ordered by minimal member."""
    seen = [False] * modulus
    orbits = []
    for j in range(modulus):
        if seen[j]:
            continue
        orb = []
        k = j
        while not seen[k]:
            seen[k] = True
            orb.append(k)
            k = (k * q) % modulus
        orbits.append(tuple(sorted(orb)))
    return orbits


class _Extension:
    """F_q[Y]/(m) for a monic m; elements are Polynomials of degree < deg m."""

    def __init__(self, m: Polynomial):
        self.m = m
        self.F = m.field

    def mul(self, a: Polynomial, b: Polynomial) -> Polynomial:
        return poly_mod(a * b, self.m)

    def power(self, a: Polynomial, k: int) -> Polynomial:
        r = Polynomial(self.F, (1,))
        base = a
        while k:
            if k & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            k >>= 1
        return r


def primitive_root_polynomial(F: FieldSpec, p: int, k: int, degree: int) -> Polynomial:
    """Least monic divisor of X^(p^k) - 1 of the given degree whose roots all have order p^k.

    Such a divisor is automatically irreducible once degree equals the orbit
    length of q on (Z/p^k)^x.
    """
    full = Polynomial.x_power_minus_one(F, p**k)
    sub = Polynomial.x_power_minus_one(F, p ** (k - 1))
    for g in monic_polynomials(F, degree):
        if poly_mod(full, g).is_zero() and poly_gcd(g, sub).degree == 0:
            return g
    raise AssertionError(f"no primitive {p}^{k}-th root polynomial of degree {degree}")


def _expand_roots(ext: _Extension, zeta: Polynomial, exps) -> Polynomial:
    """prod (X - zeta^t) with coefficients pulled back to F_q."""
    F = ext.F
    one = Polynomial(F, (1,))
    zero = Polynomial(F, ())
    coeffs = [one]  # coefficients in the extension, low degree first
    for t in exps:
        root = ext.power(zeta, t)
        nroot = -root
        new = [zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] + ext.mul(c, nroot)
        coeffs = new
    out = []
    for c in coeffs:
        if c.degree > 0:
            raise AssertionError("root set is not Frobenius-stable")
        out.append(c.coeffs[0] if c.coeffs else 0)
    return Polynomial(F, tuple(out))


def cyclo_factor(p: int, field: FieldSpec, n: int, bound: int = DEFAULT_ROOT_BOUND) -> FactorSystem:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = field.order
    if q % p == 0:
        raise ValueError(f"p={p} divides q={q}")
    if n < 1:
        raise ValueError("n must be positive")
    N = p**n
    if N > bound:
        raise ValueError(f"p^n = {N} exceeds bound {bound}")
    e = ord_mod(q, p)
    s = p_valuation(q**e - 1, p)
    s0 = min(s, n)

    orbits = frobenius_orbits(q, N)
    step = p ** (n - s0)

    # level 0: nontrivial orbits among multiples of p^(n-s0); roots in F_q(zeta_{p^s0})
    m = primitive_root_polynomial(field, p, s0, e)
    ext = _Extension(m)
    zeta = poly_mod(Polynomial(field, (0, 1)), m)
    level0 = [o for o in orbits if o[0] != 0 and o[0] % step == 0]
    gamma = []
    by_orbit = {}
    for k, orb in enumerate(level0, start=1):
        poly = _expand_roots(ext, zeta, [j // step for j in orb])
        gamma.append(Factor(0, k, poly, orb))
        by_orbit[frozenset(orb)] = poly

    # levels i >= 1 (only when n > s)
    for i in range(1, n - s + 1):
        size = e * p**i
        val = n - s - i
        lvl = [o for o in orbits if o[0] != 0 and p_valuation(o[0], p) == val]
        unions, cur = [], []
        for orb in lvl:
            cur.extend(orb)
            if len(cur) == size:
                unions.append(tuple(sorted(cur)))
                cur = []
            elif len(cur) > size:
                raise AssertionError("orbit union overshoots its block size")
        if cur:
            raise AssertionError("leftover orbits at level %d" % i)
        for k, U in enumerate(unions, start=1):
            image = frozenset((j * p**i) % N for j in U)
            base = by_orbit.get(image)
            if base is None:
                raise AssertionError("level union is not a full preimage of a level-0 orbit")
            gamma.append(Factor(i, k, base.substitute_power(p**i), U))

    return FactorSystem(p, field, n, e, s, tuple(gamma))


class Verdict(NamedTuple):
    ok: bool
    reason: str | None = None

    def __bool__(self):
        return self.ok


def verify_factor_system(fs: FactorSystem) -> Verdict:
    """Re-check every structural claim of the factor system by exact arithmetic."""
    p, q, n, e, s = fs.p, fs.q, fs.n, fs.e, fs.s
    F = fs.field
    if q % p == 0 or (p - 1) % e or pow(q, e, p) != 1 or any(pow(q, t, p) == 1 for t in range(1, e)):
        return Verdict(False, "order")
    if (q**e - 1) % p**s or (q**e - 1) % p ** (s + 1) == 0:
        return Verdict(False, "valuation")
    s0 = min(s, n)
    expected = {0: (p**s0 - 1) // e}
    for i in range(1, n - s + 1):
        expected[i] = euler_phi(p**s) // e
    counts = {}
    for g in fs.gamma:
        counts[g.level] = counts.get(g.level, 0) + 1
        if g.poly.degree != e * p**g.level:
            return Verdict(False, "degree")
        if g.poly.lead != 1:
            return Verdict(False, "monic")
    if {k: v for k, v in expected.items() if v} != counts:
        return Verdict(False, "level-count")
    x_minus_1 = Polynomial(F, (int(F.neg[1]), 1))
    polys = [g.poly for g in fs.gamma]
    for a in polys:
        if poly_gcd(a, x_minus_1).degree != 0:
            return Verdict(False, "coprime")
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if poly_gcd(polys[i], polys[j]).degree != 0:
                return Verdict(False, "coprime")
    prod = x_minus_1
    for a in polys:
        prod = prod * a
    if prod != Polynomial.x_power_minus_one(F, p**n):
        return Verdict(False, "product")
    return Verdict(True)
