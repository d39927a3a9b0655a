"""Finite group engine over fully enumerated element tables.

Every group, whatever its element encoding (permutation, matrix over F_q, or
coset of a central subgroup), is held internally as a faithful permutation
action: one row of point images per element, rows kept in the canonical
element order.  Products are row compositions, membership is a binary search
on integer keys built from the images of a base, and scans (centralizers,
element orders, normalizers) are vectorized over the whole table.

Composition convention: ``(g*h)[i] = g[h[i]]`` (h acts first), which matches
matrix multiplication for matrices acting on column vectors.
"""

from __future__ import annotations

import functools
import itertools
import math
import os
import re
import threading
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence, Union

import numpy as np

from .algebra import FieldSpec, Matrix, determinant, field_of_order, is_prime, matmul, prime_factors

DEFAULT_CAP = 2_000_000


class BudgetExceeded(RuntimeError):
    """An enumeration or search exceeded its configured budget."""


def default_cap() -> int:
    env = os.environ.get("PBASE_BUDGET")
    return int(env) if env else DEFAULT_CAP


def p_part(n: int, p: int) -> int:
    if n < 1:
        raise ValueError("p-part needs a positive integer")
    r = 1
    while n % p == 0:
        n //= p
        r *= p
    return r


def is_p_power(n: int, p: int) -> bool:
    return p_part(n, p) == n


# ---------------------------------------------------------------------------
# element encodings


@dataclass(frozen=True, order=True)
class Perm:
    """Permutation of {0..d-1}; printed 1-based in cycle notation."""

    images: tuple[int, ...]

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> "Perm":
        cycles = [[int(x) for x in c.replace(",", " ").split()] for c in re.findall(r"\(([^()]*)\)", text)]
        if re.sub(r"\([^()]*\)", "", text).strip():
            raise ValueError(f"bad cycle notation {text!r}")
        pts = [x for c in cycles for x in c]
        top = max(pts, default=0)
        degree = top if degree is None else degree
        if top > degree or any(x < 1 for x in pts):
            raise ValueError(f"cycle point out of range 1..{degree}")
        img = list(range(degree))
        # product of cycles, rightmost acting first
        for c in reversed(cycles):
            if len(set(c)) != len(c):
                raise ValueError(f"repeated point in cycle {c}")
            step = {c[k] - 1: c[(k + 1) % len(c)] - 1 for k in range(len(c))}
            img = [step.get(x, x) for x in img]
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        return Perm(tuple(self.images[i] for i in other.images))

    def __pow__(self, k: int) -> "Perm":
        r = Perm.identity(self.degree)
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            r = r * base
        return r

    def inverse(self) -> "Perm":
        inv = [0] * self.degree
        for i, x in enumerate(self.images):
            inv[x] = i
        return Perm(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            c, j = [], i
            while j not in seen:
                seen.add(j)
                c.append(j)
                j = self.images[j]
            out.append(tuple(c))
        return out

    def order(self) -> int:
        return math.lcm(*[len(c) for c in self.cycles()]) if self.cycles() else 1

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __str__(self) -> str:
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in cs)


@dataclass(frozen=True)
class Coset:
    """Coset rN stored by its canonical (minimal) representative r."""

    rep: Union[Matrix, Perm]
    modulus: str

    def __str__(self) -> str:
        return str(self.rep)


Element = Union[Perm, Matrix, Coset]


def parse_matrix(text: str, field: FieldSpec, n: int | None = None) -> Matrix:
    rows = [[int(x) for x in r.split(",")] for r in text.strip().split(";")]
    m = Matrix(field, tuple(map(tuple, rows)))
    if n is not None and m.n != n:
        raise ValueError(f"expected a {n}x{n} matrix")
    return m


# ---------------------------------------------------------------------------
# descriptors


@dataclass(frozen=True)
class Descriptor:
    kind: str  # perm | mat | quot
    text: str
    degree: int = 0
    perm_gens: tuple[Perm, ...] = ()
    field: FieldSpec | None = None
    dim: int = 0
    mat_gens: tuple[Matrix, ...] = ()
    inner: "Descriptor | None" = None
    predicted_order: int | None = None


def _gl_order(n, q):
    return math.prod(q**n - q**i for i in range(n))


def _perm_desc(text, degree, gens, order=None):
    return Descriptor("perm", text, degree=degree, perm_gens=tuple(gens), predicted_order=order)


def parse_descriptor(text: str) -> Descriptor:
    """Parse the group mini-language (S:n, A:n, D:2m, C:n, GL/SL/PSL:n:q, perm, mat, quot)."""
    text = text.strip()
    try:
        return _parse_descriptor(text)
    except (ValueError, IndexError) as exc:
        raise ValueError(f"bad group descriptor {text!r}: {exc}") from None


def _parse_descriptor(text: str) -> Descriptor:
    if text.startswith("quot:"):
        if not text.endswith(":center"):
            raise ValueError("only quot:<desc>:center is supported")
        inner = parse_descriptor(text[len("quot:") : -len(":center")])
        return Descriptor("quot", text, inner=inner)
    head, _, rest = text.partition(":")
    if head in ("S", "A", "C"):
        n = int(rest)
        if n < 1:
            raise ValueError("degree must be positive")
        if head == "S":
            gens = [] if n < 2 else [Perm.from_cycles("(1 2)", n), Perm.from_cycles("(" + " ".join(map(str, range(1, n + 1))) + ")", n)]
            return _perm_desc(text, n, gens, math.factorial(n))
        if head == "A":
            gens = [Perm.from_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)]
            return _perm_desc(text, n, gens, max(1, math.factorial(n) // 2))
        gens = [Perm.from_cycles("(" + " ".join(map(str, range(1, n + 1))) + ")", n)] if n > 1 else []
        return _perm_desc(text, n, gens, n)
    if head == "D":
        order = int(rest)
        if order < 4 or order % 2:
            raise ValueError("dihedral order must be even and >= 4")
        m = order // 2
        if m == 2:
            gens = [Perm.from_cycles("(1 2)(3 4)", 4), Perm.from_cycles("(1 3)(2 4)", 4)]
            return _perm_desc(text, 4, gens, 4)
        rot = Perm(tuple((i + 1) % m for i in range(m)))
        ref = Perm(tuple((-i) % m for i in range(m)))
        return _perm_desc(text, m, [rot, ref], order)
    if head in ("GL", "SL", "PSL"):
        n_s, q_s = rest.split(":")
        n, q = int(n_s), int(q_s)
        if head == "PSL":
            return Descriptor("quot", text, inner=parse_descriptor(f"SL:{n}:{q}"))
        F = field_of_order(q)
        if n < 1:
            raise ValueError("dimension must be positive")
        gens = []
        # transvections I + c E_ij, c running over an F_l-basis of F_q
        for i, j in itertools.permutations(range(n), 2):
            for b in range(F.degree):
                M = np.eye(n, dtype=np.int64)
                M[i, j] = F.characteristic**b
                gens.append(Matrix.from_array(F, M))
        order = _gl_order(n, q)
        if head == "GL":
            if q > 2:
                M = np.eye(n, dtype=np.int64)
                M[0, 0] = F.primitive_element
                gens.append(Matrix.from_array(F, M))
        else:
            order //= q - 1
        return Descriptor("mat", text, field=F, dim=n, mat_gens=tuple(gens), predicted_order=order)
    if head == "perm":
        d_s, _, body = rest.partition(":")
        d = int(d_s)
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError("generators must be bracketed")
        items = [x for x in body[1:-1].split(";") if x.strip()]
        return _perm_desc(text, d, [Perm.from_cycles(x, d) for x in items])
    if head == "mat":
        n_s, q_s, body = rest.split(":", 2)
        n, q = int(n_s), int(q_s)
        F = field_of_order(q)
        body = body.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError("generators must be bracketed")
        mats = [parse_matrix(x, F, n) for x in body[1:-1].split("|") if x.strip()]
        for m in mats:
            if m.determinant() == 0:
                raise ValueError("non-invertible matrix generator")
        return Descriptor("mat", text, field=F, dim=n, mat_gens=tuple(mats))
    raise ValueError(f"unknown group kind {head!r}")


# ---------------------------------------------------------------------------
# the group table


def _compose_rows(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Row-wise A[r] * B[r], i.e. out[r, i] = A[r, B[r, i]]."""
    return np.take_along_axis(A, B.astype(np.intp), axis=1)


def _bfs_closure(gens: np.ndarray, identity: np.ndarray, cap: int) -> np.ndarray:
    seen = {identity.tobytes()}
    rows = [identity]
    frontier = identity[None, :]
    while len(frontier):
        fresh = []
        for g in gens:
            for row in frontier[:, g]:
                b = row.tobytes()
                if b not in seen:
                    seen.add(b)
                    fresh.append(row)
        if len(seen) > cap:
            raise BudgetExceeded(f"group order exceeds enumeration cap {cap}")
        rows.extend(fresh)
        frontier = np.array(fresh, dtype=identity.dtype).reshape(-1, len(identity))
    return np.array(rows, dtype=identity.dtype)


def _point_dtype(d: int):
    if d <= 256:
        return np.uint8
    if d <= 65536:
        return np.uint16
    raise ValueError(f"action degree {d} too large")


class Group:
    """A finite group with its whole element table in canonical order.

    Elements are addressed by integer index; ``element(i)`` gives the encoded
    element and ``index(x)`` maps back.  Instances are immutable after
    construction; lazily computed tables are idempotent, so concurrent readers
    are safe.
    """

    def __init__(self, descriptor: str, kind: str, perms: np.ndarray, *, gens=(), field=None, dim=0,
                 matrices=None, parent=None, proj=None, reps=None, modulus_label=""):
        self.descriptor = descriptor
        self.kind = kind
        self.perms = perms
        self.perms.setflags(write=False)
        self.gens = tuple(int(g) for g in gens)
        self.field = field
        self.dim = dim
        self.matrices = matrices
        self.parent = parent
        self.proj = proj
        self.reps = reps
        self.modulus_label = modulus_label
        self._build_lookup()

    def __repr__(self):
        return f"<Group {self.descriptor} order={self.order}>"

    @property
    def order(self) -> int:
        return len(self.perms)

    @property
    def degree(self) -> int:
        return self.perms.shape[1]

    def _build_lookup(self):
        N, d = self.perms.shape
        keys = np.zeros(N, dtype=np.int64)
        base = []
        distinct = 1
        limit = 2**62
        for pt in range(d):
            if distinct == N:
                break
            if d ** (len(base) + 1) >= limit:
                raise ValueError("no compact base for this action")
            trial = keys * d + self.perms[:, pt]
            c = len(np.unique(trial))
            if c > distinct:
                keys, distinct = trial, c
                base.append(pt)
        if distinct != N:
            raise AssertionError("element table has repeated rows")
        self._base = np.array(base, dtype=np.intp)
        self._radix = d ** np.arange(len(base) - 1, -1, -1, dtype=np.int64)
        self._key_order = np.argsort(keys, kind="stable")
        self._sorted_keys = keys[self._key_order]

    def lookup(self, rows: np.ndarray, strict: bool = True) -> np.ndarray:
        """Indices of permutation rows; -1 (or an error) for rows not in the group."""
        rows = np.atleast_2d(rows)
        if len(self._base):
            keys = rows[:, self._base].astype(np.int64) @ self._radix
        else:
            keys = np.zeros(len(rows), dtype=np.int64)
        pos = np.searchsorted(self._sorted_keys, keys)
        pos = np.minimum(pos, len(self._sorted_keys) - 1)
        idx = self._key_order[pos]
        ok = (self._sorted_keys[pos] == keys) & np.all(self.perms[idx] == rows, axis=1)
        if strict and not ok.all():
            raise ValueError("element not in group")
        return np.where(ok, idx, -1)

    @functools.cached_property
    def identity(self) -> int:
        return int(self.lookup(np.arange(self.degree, dtype=self.perms.dtype)[None, :])[0])

    @functools.cached_property
    def inverses(self) -> np.ndarray:
        inv = self.lookup(np.argsort(self.perms, axis=1).astype(self.perms.dtype))
        inv.setflags(write=False)
        return inv

    @functools.cached_property
    def orders(self) -> np.ndarray:
        """Order of every element."""
        N = self.order
        out = np.zeros(N, dtype=np.int64)
        ident = np.arange(self.degree, dtype=self.perms.dtype)
        cur = self.perms
        live = np.arange(N)
        k = 1
        while len(live):
            done = np.all(cur == ident, axis=1)
            out[live[done]] = k
            live = live[~done]
            cur = _compose_rows(self.perms[live], cur[~done])
            k += 1
        out.setflags(write=False)
        return out

    def mul(self, i: int, j: int) -> int:
        return int(self.lookup(self.perms[i][self.perms[j]][None, :])[0])

    def mul_many(self, left: np.ndarray, right: int) -> np.ndarray:
        """Indices of left[k] * right for every k."""
        return self.lookup(self.perms[left][:, self.perms[right]])

    def conj_all(self, h: int) -> np.ndarray:
        """Indices of g*h*g^-1 for every g in the group (in table order)."""
        ginv = self.perms[self.inverses]
        return self.lookup(_compose_rows(self.perms, self.perms[h][ginv]))

    def commute(self, i: int, j: int) -> bool:
        a, b = self.perms[i], self.perms[j]
        return bool(np.array_equal(a[b], b[a]))

    def centralizer_mask(self, i: int) -> np.ndarray:
        x = self.perms[i]
        return np.all(self.perms[:, x] == x[self.perms], axis=1)

    # -- encodings ---------------------------------------------------------

    def element(self, i: int) -> Element:
        i = int(i)
        if self.kind == "perm":
            return Perm(tuple(int(x) for x in self.perms[i]))
        if self.kind == "mat":
            return Matrix.from_array(self.field, self.matrices[i])
        return Coset(self.parent.element(self.reps[i]), self.modulus_label)

    def index(self, x) -> int:
        if isinstance(x, (int, np.integer)):
            if not 0 <= x < self.order:
                raise ValueError("index out of range")
            return int(x)
        if self.kind == "quot":
            rep = x.rep if isinstance(x, Coset) else x
            return int(self.proj[self.parent.index(rep)])
        if self.kind == "perm":
            if not isinstance(x, Perm):
                raise ValueError("expected a permutation")
            if x.degree != self.degree:
                raise ValueError(f"permutation degree {x.degree} != {self.degree}")
            return int(self.lookup(np.array(x.images, dtype=self.perms.dtype)[None, :])[0])
        if not isinstance(x, Matrix) or x.field != self.field or x.n != self.dim:
            raise ValueError("expected a matrix over the group's field")
        return int(self.lookup(_matrix_action(self.field, x.array()[None], self._vectors())[0][None, :])[0])

    def parse_element(self, text: str) -> Element:
        """Parse one element in CLI syntax: cycles for permutations, rows otherwise."""
        if self.kind == "perm":
            return Perm.from_cycles(text, self.degree)
        base = self if self.kind == "mat" else self.parent
        if base.kind == "perm":
            return Perm.from_cycles(text, base.degree)
        return parse_matrix(text, base.field, base.dim)

    def encode(self, i: int) -> str:
        return str(self.element(i))

    def _vectors(self) -> np.ndarray:
        return _all_vectors(self.field.order, self.dim)


@functools.lru_cache(maxsize=None)
def _all_vectors(q: int, n: int) -> np.ndarray:
    idx = np.arange(q**n)
    return np.stack([(idx // q**k) % q for k in range(n)], axis=1).astype(np.int64)


def _matrix_action(F: FieldSpec, mats: np.ndarray, V: np.ndarray) -> np.ndarray:
    """Permutation of vector indices induced by each matrix (v -> M v)."""
    q = F.order
    n = V.shape[1]
    weights = q ** np.arange(n, dtype=np.int64)
    out = np.zeros((len(mats), len(V)), dtype=np.int64)
    for m, M in enumerate(mats):
        W = np.zeros_like(V)
        for i in range(n):
            acc = F.mul[M[i, 0], V[:, 0]]
            for j in range(1, n):
                acc = F.add[acc, F.mul[M[i, j], V[:, j]]]
            W[:, i] = acc
        out[m] = W @ weights
    return out.astype(_point_dtype(len(V)))


# ---------------------------------------------------------------------------
# construction

_cache: dict = {}
_cache_lock = threading.Lock()
_key_locks: dict = {}


def enumerate_group(descriptor: str | Descriptor, cap: int | None = None) -> Group:
    """Enumerate a group from its descriptor (cached, single flight per descriptor)."""
    desc = parse_descriptor(descriptor) if isinstance(descriptor, str) else descriptor
    cap = default_cap() if cap is None else cap
    with _cache_lock:
        hit = _cache.get(desc.text)
        if hit is not None:
            if hit.order > cap:
                raise BudgetExceeded(f"order {hit.order} exceeds cap {cap}")
            return hit
        lock = _key_locks.setdefault(desc.text, threading.Lock())
    with lock:
        hit = _cache.get(desc.text)
        if hit is None:
            hit = _build(desc, cap)
            with _cache_lock:
                _cache[desc.text] = hit
    if hit.order > cap:
        raise BudgetExceeded(f"order {hit.order} exceeds cap {cap}")
    return hit


def _build(desc: Descriptor, cap: int) -> Group:
    if desc.predicted_order is not None and desc.predicted_order > cap:
        raise BudgetExceeded(f"predicted order {desc.predicted_order} exceeds cap {cap}")
    if desc.kind == "perm":
        dt = _point_dtype(max(desc.degree, 1))
        ident = np.arange(desc.degree, dtype=dt)
        gens = np.array([g.images for g in desc.perm_gens], dtype=dt).reshape(-1, desc.degree)
        rows = _bfs_closure(gens, ident, cap)
        order = np.lexsort(rows.T[::-1]) if desc.degree else np.arange(len(rows))
        rows = np.ascontiguousarray(rows[order])
        G = Group(desc.text, "perm", rows)
        G.gens = tuple(int(i) for i in G.lookup(gens)) if len(gens) else ()
        return G
    if desc.kind == "mat":
        F, n = desc.field, desc.dim
        V = _all_vectors(F.order, n)
        gen_arrays = np.array([m.array() for m in desc.mat_gens], dtype=np.int64).reshape(-1, n, n)
        gens = _matrix_action(F, gen_arrays, V)
        ident = np.arange(len(V), dtype=gens.dtype)
        rows = _bfs_closure(gens, ident, cap)
        # column j of the matrix = image of basis vector e_j (vector index q^j)
        mats = np.stack([V[rows[:, F.order**j].astype(np.intp)] for j in range(n)], axis=2)
        flat = mats.reshape(len(mats), -1)
        order = np.lexsort(flat.T[::-1])
        G = Group(desc.text, "mat", np.ascontiguousarray(rows[order]), field=F, dim=n,
                  matrices=np.ascontiguousarray(mats[order]))
        G.gens = tuple(int(i) for i in G.lookup(gens)) if len(gens) else ()
        return G
    inner = enumerate_group(desc.inner, cap)
    return central_quotient(inner, center(inner), descriptor=desc.text)


# ---------------------------------------------------------------------------
# subgroups


class Subgroup:
    """A subset of a parent group's table that is closed under the group law."""

    def __init__(self, parent: Group, elements, gens=None):
        self.parent = parent
        els = np.unique(np.asarray(elements, dtype=np.int64))
        self.elements = els
        self.elements.setflags(write=False)
        self._gens = None if gens is None else tuple(int(g) for g in gens)
        if parent.order % len(els):
            raise AssertionError("Lagrange violated: subgroup order does not divide group order")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"<Subgroup of {self.parent.descriptor} order={self.order}>"

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent is self.parent and \
            np.array_equal(other.elements, self.elements)

    def __hash__(self):
        return hash((id(self.parent), self.elements.tobytes()))

    @functools.cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[self.elements] = True
        m.setflags(write=False)
        return m

    def __contains__(self, i) -> bool:
        return bool(self.mask[int(i)])

    @property
    def gens(self) -> tuple[int, ...]:
        if self._gens is None:
            self._gens = _greedy_generators(self.parent, self.elements)
        return self._gens

    def is_abelian(self) -> bool:
        g = self.gens
        return all(self.parent.commute(a, b) for a, b in itertools.combinations(g, 2))

    def elements_encoded(self) -> list[Element]:
        return [self.parent.element(i) for i in self.elements]


GroupLike = Union[Group, Subgroup]


def _as_subgroup(H: GroupLike) -> Subgroup:
    if isinstance(H, Subgroup):
        return H
    return Subgroup(H, np.arange(H.order), gens=H.gens)


def closure(G: Group, gens: Iterable[int], within: np.ndarray | None = None) -> np.ndarray | None:
    """Sorted indices of <gens>; None if it escapes the boolean mask `within`."""
    gens = [int(g) for g in gens]
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    frontier = np.array([G.identity])
    gp = [G.perms[g] for g in gens]
    while len(frontier):
        rows = G.perms[frontier]
        cand = np.unique(np.concatenate([G.lookup(rows[:, g]) for g in gp])) if gp else np.array([], int)
        cand = cand[~mask[cand]]
        if within is not None and not within[cand].all():
            return None
        mask[cand] = True
        frontier = cand
    return np.nonzero(mask)[0]


def subgroup_generated(G: Group, gens: Iterable) -> Subgroup:
    idx = [G.index(x) for x in gens]
    return Subgroup(G, closure(G, idx), gens=idx)


def _greedy_generators(G: Group, elements: np.ndarray) -> tuple[int, ...]:
    gens: list[int] = []
    cur = np.zeros(G.order, dtype=bool)
    cur[G.identity] = True
    # largest orders first keeps the generating set short
    order = np.argsort(-G.orders[elements], kind="stable")
    for x in elements[order]:
        if not cur[x]:
            gens.append(int(x))
            cur[:] = False
            cur[closure(G, gens)] = True
            if cur.sum() == len(elements):
                break
    return tuple(gens)


# ---------------------------------------------------------------------------
# standard subgroups


def centralizer(G: Group, delta: Sequence = ()) -> Subgroup:
    mask = np.ones(G.order, dtype=bool)
    for x in delta:
        mask &= G.centralizer_mask(G.index(x))
    return Subgroup(G, np.nonzero(mask)[0])


def center(G: GroupLike) -> Subgroup:
    H = _as_subgroup(G)
    P = H.parent
    mask = H.mask.copy()
    for g in H.gens:
        mask &= P.centralizer_mask(g)
    return Subgroup(P, np.nonzero(mask)[0])


def _normalizer_mask(G: Group, H: Subgroup) -> np.ndarray:
    mask = np.ones(G.order, dtype=bool)
    for h in H.gens:
        mask &= H.mask[G.conj_all(h)]
    return mask


def normalizer(G: Group, H: Subgroup) -> Subgroup:
    if H.parent is not G:
        raise ValueError("H is not a subgroup of G")
    return Subgroup(G, np.nonzero(_normalizer_mask(G, H))[0])


def p_elements(G: Group, p: int, include_identity: bool = False) -> np.ndarray:
    o = G.orders
    good = np.array([k > 0 and is_p_power(k, p) for k in range(int(o.max()) + 1)])
    mask = good[o]
    if not include_identity:
        mask[G.identity] = False
    return np.nonzero(mask)[0]


def sylow(G: Group, p: int) -> Subgroup:
    """Deterministic Sylow p-subgroup by ascent through normalizers."""
    target = p_part(G.order, p)
    pe = p_elements(G, p)
    if target == 1 or not len(pe):
        return Subgroup(G, [G.identity], gens=())
    gens = [int(pe[0])]
    P = Subgroup(G, closure(G, gens), gens=gens)
    while P.order < target:
        N = _normalizer_mask(G, P)
        cand = pe[N[pe] & ~P.mask[pe]]
        if not len(cand):
            raise AssertionError("Sylow ascent stalled")
        gens.append(int(cand[0]))
        P = Subgroup(G, closure(G, gens), gens=gens)
    assert P.order == target
    return P


@dataclass(frozen=True)
class PNilpotencyWitness:
    verdict: bool
    p_part: int
    p_prime_part: int
    complement: Subgroup | None = None

    def __bool__(self):
        return self.verdict


def is_p_nilpotent(H: GroupLike, p: int) -> PNilpotencyWitness:
    """Normal p-complement test: the p'-elements must form a subgroup."""
    H = _as_subgroup(H)
    G = H.parent
    n = H.order
    pp = p_part(n, p)
    els = H.elements
    K = els[G.orders[els] % p != 0]
    if len(K) != n // pp:
        return PNilpotencyWitness(False, pp, n // pp)
    kmask = np.zeros(G.order, dtype=bool)
    kmask[K] = True
    gens: list[int] = []
    cur = np.zeros(G.order, dtype=bool)
    cur[G.identity] = True
    for k in K:
        if cur[k]:
            continue
        gens.append(int(k))
        sub = closure(G, gens, within=kmask)
        if sub is None:
            return PNilpotencyWitness(False, pp, n // pp)
        cur[sub] = True
    return PNilpotencyWitness(True, pp, n // pp, Subgroup(G, K, gens=gens))


def commutator(G: Group, a: int, b: int) -> int:
    inv = G.inverses
    return G.mul(G.mul(int(inv[a]), int(inv[b])), G.mul(a, b))


def normal_closure(H: GroupLike, seeds: Iterable[int]) -> Subgroup:
    """Smallest subgroup of G containing `seeds` and normalized by H."""
    H = _as_subgroup(H)
    G = H.parent
    gens = [int(s) for s in seeds if int(s) != G.identity]
    cur = closure(G, gens)
    mask = np.zeros(G.order, dtype=bool)
    mask[cur] = True
    inv = G.inverses
    changed = True
    while changed:
        changed = False
        for d in list(gens):
            for h in H.gens:
                c = G.mul(G.mul(int(inv[h]), d), h)
                if not mask[c]:
                    gens.append(c)
                    mask[:] = False
                    mask[closure(G, gens)] = True
                    changed = True
    return Subgroup(G, np.nonzero(mask)[0], gens=gens)


def derived_subgroup(H: GroupLike) -> Subgroup:
    """[H, H] as the normal closure of commutators of generators."""
    H = _as_subgroup(H)
    G = H.parent
    comms = {commutator(G, a, b) for a, b in itertools.combinations(H.gens, 2)}
    return normal_closure(H, sorted(comms))


def is_solvable(G: GroupLike) -> bool:
    H = _as_subgroup(G)
    while H.order > 1:
        D = derived_subgroup(H)
        if D.order == H.order:
            return False
        H = D
    return True


def lower_central_series(P: GroupLike) -> list[Subgroup]:
    P = _as_subgroup(P)
    G = P.parent
    series = [P]
    cur = P
    while cur.order > 1:
        comms = {commutator(G, a, b) for a in cur.gens for b in P.gens}
        nxt = normal_closure(P, sorted(comms))
        if nxt.order == cur.order:
            break  # not nilpotent
        series.append(nxt)
        cur = nxt
    return series


def nilpotency_class(P: GroupLike) -> int:
    series = lower_central_series(P)
    if series[-1].order != 1:
        raise ValueError("group is not nilpotent")
    return len(series) - 1


# ---------------------------------------------------------------------------
# central quotients


def central_quotient(G: Group, N: Subgroup, descriptor: str | None = None) -> Group:
    """G/N for N inside Z(G); cosets are stored by their minimal representative."""
    if N.parent is not G:
        raise ValueError("N is not a subgroup of G")
    if N.order == 1:
        return G
    Z = center(G)
    if not Z.mask[N.elements].all():
        raise ValueError("N is not central")
    label = descriptor or f"quot:{G.descriptor}:center"
    coset_of = np.stack([G.mul_many(np.arange(G.order), int(n)) for n in N.elements], axis=1)
    rep_of = coset_of.min(axis=1)
    reps = np.unique(rep_of)
    proj = np.searchsorted(reps, rep_of)
    # try the action on N-orbits of points; fall back to the regular action on cosets
    orbit_id = np.full(G.degree, -1)
    pts = G.perms[N.elements]  # (|N|, d)
    for pt in range(G.degree):
        if orbit_id[pt] < 0:
            orbit_id[pts[:, pt]] = pt
    labels, orbit_id = np.unique(orbit_id, return_inverse=True)
    first = np.array([np.nonzero(orbit_id == k)[0][0] for k in range(len(labels))])
    action = orbit_id[G.perms[reps][:, first]]
    if len(np.unique(action, axis=0)) != len(reps):
        action = np.stack([proj[G.mul_many(reps, int(r))] for r in reps], axis=1)
    action = np.ascontiguousarray(action.astype(_point_dtype(action.shape[1])))
    Q = Group(label, "quot", action, field=G.field, dim=G.dim, parent=G, proj=proj, reps=reps,
              modulus_label=label)
    Q.gens = tuple(sorted({int(proj[g]) for g in G.gens} - {Q.identity}))
    return Q


# ---------------------------------------------------------------------------
# p-base certificates


@dataclass(frozen=True)
class BaseCertificate:
    descriptor: str
    p: int
    delta: tuple
    sylow_order: int
    centralizer_order: int
    witness: PNilpotencyWitness = dc_field(repr=False)
    commutative: bool
    delta_in_sylow: bool

    @property
    def size(self) -> int:
        return len(self.delta)

    @property
    def verdict(self) -> bool:
        """True iff delta is a p-base."""
        return self.delta_in_sylow and self.witness.verdict

    def __bool__(self):
        return self.verdict

    def to_dict(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "p": self.p,
            "delta": [str(x) for x in self.delta],
            "sylow_order": self.sylow_order,
            "centralizer_order": self.centralizer_order,
            "p_nilpotent": self.witness.verdict,
            "complement_order": self.witness.complement.order if self.witness.complement is not None else None,
            "commutative": self.commutative,
            "delta_in_sylow": self.delta_in_sylow,
            "verdict": self.verdict,
        }


def verify_p_base(G: Group, p: int, delta: Sequence) -> BaseCertificate:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    idx = [G.index(x) for x in delta]
    for i in idx:
        if not is_p_power(int(G.orders[i]), p):
            raise ValueError(f"{G.encode(i)} is not a {p}-element")
    D = closure(G, idx)
    C = Subgroup(G, np.nonzero(_joint_centralizer_mask(G, idx))[0])
    return BaseCertificate(
        descriptor=G.descriptor,
        p=p,
        delta=tuple(G.element(i) for i in idx),
        sylow_order=p_part(G.order, p),
        centralizer_order=C.order,
        witness=is_p_nilpotent(C, p),
        commutative=all(G.commute(a, b) for a, b in itertools.combinations(idx, 2)),
        delta_in_sylow=is_p_power(len(D), p),
    )


def _joint_centralizer_mask(G: Group, idx) -> np.ndarray:
    mask = np.ones(G.order, dtype=bool)
    for i in idx:
        mask &= G.centralizer_mask(i)
    return mask


def order_primes(G: Group) -> list[int]:
    return prime_factors(G.order)
