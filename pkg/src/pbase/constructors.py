"""Explicit p-base recipes for symmetric, alternating and linear groups.

Symmetric and alternating groups use disjoint cycles laid out according to
the p-adic digits of n.  GL(n, q) and SL(n, q) use block-diagonal matrices
of companion matrices of the blocks of X^(p^k) - 1 from ``cyclotomy``;
PSL(n, q) gets the image of the SL recipe.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import FieldSpec, Matrix, Polynomial, block_diagonal, companion_matrix, jordan_block
from .cyclotomy import cyclo_factor, ord_mod, p_valuation
from .groups import (Coset, Group, Perm, Subgroup, center, centralizer, closure, enumerate_group, is_p_nilpotent,
                     p_elements, sylow)


@dataclass(frozen=True)
class PAdicExpansion:
    n: int
    p: int
    digits: tuple[int, ...]  # a_0, a_1, ...

    def __post_init__(self):
        if any(not 0 <= a < self.p for a in self.digits):
            raise ValueError("digit out of range")
        if sum(a * self.p**i for i, a in enumerate(self.digits)) != self.n:
            raise ValueError("digits do not reconstruct n")

    def digit(self, i: int) -> int:
        return self.digits[i] if i < len(self.digits) else 0


def padic_expansion(n: int, p: int) -> PAdicExpansion:
    digits = []
    m = n
    while m:
        digits.append(m % p)
        m //= p
    return PAdicExpansion(n, p, tuple(digits))


def _dedupe(elements, identity):
    out = []
    for x in elements:
        if x != identity and x not in out:
            out.append(x)
    return out


# ---------------------------------------------------------------------------
# symmetric and alternating groups


def cycle_layout(n: int, p: int) -> list[tuple[int, int, tuple[int, ...]]]:
    """The cycles x_ij as (i, j, points), i >= 1 only; fixed points sit after them."""
    exp = padic_expansion(n, p)
    out = []
    nxt = 0
    for i in range(1, len(exp.digits)):
        for j in range(1, exp.digits[i] + 1):
            L = p**i
            out.append((i, j, tuple(range(nxt, nxt + L))))
            nxt += L
    return out


def _cycles_perm(n: int, cycles) -> Perm:
    img = list(range(n))
    for c in cycles:
        for k, pt in enumerate(c):
            img[pt] = c[(k + 1) % len(c)]
    return Perm(tuple(img))


def symmetric_cycle_generators(n: int, p: int) -> list[Perm]:
    """The individual cycles x_ij; they generate C_{S_n}({x, y})."""
    return [_cycles_perm(n, [pts]) for _, _, pts in cycle_layout(n, p)]


def symmetric_base(n: int, p: int) -> list[Perm]:
    if n < 1:
        raise ValueError("n must be positive")
    layout = cycle_layout(n, p)
    x = _cycles_perm(n, [pts for _, _, pts in layout])
    y = Perm.identity(n)
    for _, j, pts in layout:
        y = y * (_cycles_perm(n, [pts]) ** j)
    return _dedupe([x, y], Perm.identity(n))


def alternating_base(n: int, p: int) -> list[Perm]:
    if n < 1:
        raise ValueError("n must be positive")
    if p > 2:
        return symmetric_base(n, p)
    exp = padic_expansion(n, 2)
    layout = cycle_layout(n, 2)
    ident = Perm.identity(n)
    if sum(exp.digits[1:]) % 2 == 0:
        return _dedupe([_cycles_perm(n, [pts for _, _, pts in layout])], ident)
    m = min(i for i in range(1, len(exp.digits)) if exp.digits[i] == 1)
    cycles = []
    for i, j, pts in layout:
        if i == m and j == 1:
            half = len(pts) // 2
            cycles += [pts[:half], pts[half:]]
        else:
            cycles.append(pts)
    x = _cycles_perm(n, [c for c in cycles if len(c) > 1])
    G = enumerate_group(f"A:{n}")
    xi = G.index(x)
    Cx = centralizer(G, [xi])
    twos = p_elements(G, 2, include_identity=True)
    for yi in twos[Cx.mask[twos]]:
        C = Subgroup(G, Cx.elements[G.centralizer_mask(int(yi))[Cx.elements]])
        if is_p_nilpotent(C, 2):
            return _dedupe([x, G.element(yi)], ident)
    raise AssertionError("no 2-element completes the alternating base")


# ---------------------------------------------------------------------------
# linear groups


@dataclass(frozen=True)
class GLPlan:
    p: int
    q: int
    n: int
    e: int
    s: int
    a0: int
    digits: tuple[int, ...]  # a_1 .. a_{r+1}
    blocks: tuple[tuple[int, Polynomial, int], ...]  # (level i, gamma_{i,1}, copies a_{i+1})

    def __post_init__(self):
        if not self.a0 < self.e:
            raise ValueError("a0 must be below e")
        if any(not 0 <= a < self.p for a in self.digits):
            raise ValueError("digit out of range")
        if self.e * sum(a * self.p**i for i, a in enumerate(self.digits)) + self.a0 != self.n:
            raise ValueError("plan does not cover the dimension")


def gl_plan(n: int, field: FieldSpec, p: int) -> GLPlan:
    q = field.order
    if q % p == 0:
        raise ValueError("no plan in the defining characteristic")
    e = ord_mod(q, p)
    s = p_valuation(q**e - 1, p)
    a0 = n % e
    digits = padic_expansion((n - a0) // e, p).digits
    blocks = []
    if digits:
        fs = cyclo_factor(p, field, s + len(digits) - 1)
        for i, a in enumerate(digits):
            if a:
                blocks.append((i, fs.lex_sorted(i)[0], a))
    return GLPlan(p, q, n, e, s, a0, digits, tuple(blocks))


def gl_base(n: int, field: FieldSpec, p: int) -> list[Matrix]:
    q = field.order
    ident = Matrix.identity(field, n)
    if q % p == 0:
        return _dedupe([jordan_block(field, n)], ident)
    if ord_mod(q, p) > n:
        return []
    plan = gl_plan(n, field, p)
    xs = [Matrix.identity(field, plan.a0)] if plan.a0 else []
    ys = list(xs)
    for _, poly, copies in plan.blocks:
        M = companion_matrix(poly)
        xs += [M] * copies
        ys += [M**k for k in range(1, copies + 1)]
    return _dedupe([block_diagonal(field, xs), block_diagonal(field, ys)], ident)


def _x_power_factors(field: FieldSpec, p: int, i: int) -> list[Polynomial]:
    """Pairwise coprime blocks of X^(p^i) - 1, sorted by degree then encoding."""
    one = Polynomial(field, (int(field.neg[1]), 1))
    polys = [one]
    if i:
        polys += [g.poly for g in cyclo_factor(p, field, i).gamma]
    return sorted(polys, key=Polynomial.sort_key)


def sl_base(n: int, field: FieldSpec, p: int) -> list[Matrix]:
    q = field.order
    F = field
    if q % p == 0 or (q - 1) % p:
        base = gl_base(n, field, p)
        if any(m.determinant() != 1 for m in base):
            raise AssertionError("GL recipe left SL")
        return base
    s = p_valuation(q - 1, p)
    digits = padic_expansion(n, p).digits
    fs = cyclo_factor(p, field, s + len(digits) - 1)
    i0 = min(i for i, a in enumerate(digits) if a)
    blocks: list[Matrix] = []
    designated = None
    for i, a in enumerate(digits):
        level = fs.lex_sorted(i)
        for k in range(a):
            if i == i0 and k == 0:
                for f in _x_power_factors(field, p, i):
                    if f.degree == 1:
                        designated = len(blocks)
                    blocks.append(companion_matrix(f))
            else:
                blocks.append(companion_matrix(level[k]))
    rest = 1
    for b, M in enumerate(blocks):
        if b != designated:
            rest = int(F.mul[rest, M.determinant()])
    value = int(F.inv[rest])
    blocks[designated] = Matrix(F, ((value,),))
    x = block_diagonal(F, blocks)
    ident = Matrix.identity(F, n)

    # coordinates of 1x1 blocks
    coord, scalars = 0, {}
    for b, M in enumerate(blocks):
        if M.n == 1:
            scalars[b] = (coord, M.rows[0][0])
        coord += M.n
    a, val = scalars[designated]
    twin = [c for b, (c, v) in scalars.items() if b != designated and v == val]
    if not twin:
        return _dedupe([x], ident)
    i, j = sorted((a, twin[0]))
    Y = np.eye(n, dtype=np.int64)
    if p == 2:
        Y[i, i] = Y[j, j] = 0
        Y[i, j] = int(F.neg[1])
        Y[j, i] = 1
    else:
        c = int(F.neg[fs.lex_sorted(0)[0].coeffs[0]])  # M_{0,1} is the 1x1 block [c]
        Y[i, i] = c
        Y[j, j] = int(F.inv[c])
    y = Matrix.from_array(F, Y)
    return _dedupe([x, y], ident)


def project_base(delta, G: Group, N: Subgroup, label: str | None = None) -> list:
    """Images of delta in G/N as canonical coset representatives."""
    if N.parent is not G:
        raise ValueError("N is not a subgroup of G")
    if not center(G).mask[N.elements].all():
        raise ValueError("N is not central")
    if N.order == 1:
        return list(delta)
    label = label or f"quot:{G.descriptor}:center"
    out = []
    for x in delta:
        i = G.index(x)
        rep = int(G.mul_many(N.elements, i).min())
        if rep in N:
            continue
        c = Coset(G.element(rep), label)
        if c not in out:
            out.append(c)
    return out


def psl_base(n: int, field: FieldSpec, p: int) -> list:
    q = field.order
    G = enumerate_group(f"SL:{n}:{q}")
    return project_base(sl_base(n, field, p), G, center(G), label=f"PSL:{n}:{q}")


# ---------------------------------------------------------------------------
# self-centralizing normal subgroups of a Sylow subgroup


def local_table(H: Subgroup) -> np.ndarray:
    """Multiplication table of H in local indices (positions in H.elements)."""
    G = H.parent
    rows = G.perms[H.elements]
    T = np.empty((H.order, H.order), dtype=np.int64)
    for j, h in enumerate(H.elements):
        T[:, j] = np.searchsorted(H.elements, G.lookup(rows[:, G.perms[h]]))
    return T


def _local_closure(T: np.ndarray, e: int, gens) -> np.ndarray:
    mask = np.zeros(len(T), dtype=bool)
    mask[e] = True
    frontier = np.array([e])
    gens = list(gens)
    while len(frontier) and gens:
        cand = np.unique(T[np.ix_(frontier, gens)])
        cand = cand[~mask[cand]]
        mask[cand] = True
        frontier = cand
    return mask


def self_centralizing_base(G: Group, p: int, max_gens: int = 3) -> list | None:
    P = sylow(G, p)
    if P.order == 1:
        return []
    T = local_table(P)
    e = int(np.searchsorted(P.elements, G.identity))
    inv = np.argmax(T == e, axis=1)
    pgens = [int(np.searchsorted(P.elements, g)) for g in P.gens]
    commute = T == T.T

    def good(gens, mask):
        # normal in P and C_P(Q) <= Q
        for h in pgens:
            for g in gens:
                if not mask[T[T[inv[h], g], h]]:
                    return False
        cent = np.all(commute[:, list(gens)], axis=1)
        return not (cent & ~mask).any()

    seen = set()
    level = [((), _local_closure(T, e, []))]
    for _ in range(max_gens):
        nxt = []
        for gens, mask in level:
            start = gens[-1] + 1 if gens else 0
            for g in range(start, len(T)):
                if mask[g]:
                    continue
                new = gens + (g,)
                m = _local_closure(T, e, new)
                key = m.tobytes()
                if key in seen:
                    continue
                seen.add(key)
                if good(new, m):
                    return [G.element(P.elements[i]) for i in new]
                nxt.append((new, m))
        level = nxt
    return None
