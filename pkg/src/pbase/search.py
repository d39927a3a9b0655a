"""Exhaustive minimal p-base search and the bound-checking harness."""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

import numpy as np

from .constructors import _local_closure, local_table
from .groups import (BudgetExceeded, Group, Subgroup, enumerate_group, is_p_nilpotent, is_solvable, nilpotency_class,
                     order_primes, sylow)

DEFAULT_SYLOW_BUDGET = 1024


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    descriptor: str
    order: int
    primes: tuple[int, ...] = ()

    def __post_init__(self):
        if not self.primes:
            ps, n, d = [], self.order, 2
            while d * d <= n:
                if n % d == 0:
                    ps.append(d)
                    while n % d == 0:
                        n //= d
                d += 1
            if n > 1:
                ps.append(n)
            object.__setattr__(self, "primes", tuple(ps))


@dataclass
class SizeCounter:
    enumerated: int = 0
    distinct: int = 0
    cache_hits: int = 0


@dataclass
class SearchReport:
    group: str
    p: int
    size: int | None
    witness: list | None
    commutative_witness: list | None
    solvable: bool
    abelian_sylow: bool
    nilpotency_class: int
    sylow_order: int
    counters: dict[int, SizeCounter] = dc_field(default_factory=dict)

    @property
    def commutative(self) -> bool:
        """A pairwise-commuting base of the minimal size exists."""
        return self.commutative_witness is not None and len(self.commutative_witness) == self.size

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "p": self.p,
            "size": self.size,
            "witness": None if self.witness is None else [str(x) for x in self.witness],
            "commutative": self.commutative,
            "commutative_witness": None if self.commutative_witness is None
            else [str(x) for x in self.commutative_witness],
            "solvable": self.solvable,
            "abelian_sylow": self.abelian_sylow,
            "nilpotency_class": self.nilpotency_class,
            "sylow_order": self.sylow_order,
            "counters": {str(k): vars(v) for k, v in sorted(self.counters.items())},
        }


def minimal_p_base(G: Group, p: int, max_size: int = 3, budget: int = DEFAULT_SYLOW_BUDGET,
                   name: str | None = None) -> SearchReport:
    """Smallest p-base inside a fixed Sylow subgroup, by exhaustion of all smaller sizes.

    Also records the smallest pairwise-commuting p-base up to ``max_size``.
    Candidate sets generating the same subgroup share one evaluation.
    """
    P = sylow(G, p)
    if P.order > budget:
        raise BudgetExceeded(f"Sylow {p}-subgroup of order {P.order} exceeds search budget {budget}")
    T = local_table(P)
    e = int(np.searchsorted(P.elements, G.identity))
    commute = T == T.T
    candidates = [i for i in range(P.order) if i != e]
    cent_cache: dict[int, np.ndarray] = {}
    verdicts: dict[bytes, bool] = {}

    def cmask(i):
        m = cent_cache.get(i)
        if m is None:
            m = cent_cache[i] = G.centralizer_mask(int(P.elements[i]))
        return m

    def evaluate(combo) -> bool:
        key = _local_closure(T, e, combo).tobytes()
        if key in verdicts:
            counter.cache_hits += 1
            return verdicts[key]
        counter.distinct += 1
        mask = np.ones(G.order, dtype=bool)
        for i in combo:
            mask &= cmask(i)
        ok = is_p_nilpotent(Subgroup(G, np.nonzero(mask)[0]), p).verdict
        verdicts[key] = ok
        return ok

    first = first_comm = None
    counters = {}
    for k in range(max_size + 1):
        counter = counters[k] = SizeCounter()
        for combo in itertools.combinations(candidates, k):
            counter.enumerated += 1
            if not evaluate(combo):
                continue
            commuting = all(commute[a, b] for a, b in itertools.combinations(combo, 2))
            if first is None:
                first = combo
            if commuting:
                first_comm = combo
                break
        if first_comm is not None:
            break
    as_elements = lambda c: None if c is None else [G.element(P.elements[i]) for i in c]
    return SearchReport(
        group=name or G.descriptor,
        p=p,
        size=None if first is None else len(first),
        witness=as_elements(first),
        commutative_witness=as_elements(first_comm),
        solvable=is_solvable(G),
        abelian_sylow=P.is_abelian(),
        nilpotency_class=nilpotency_class(P),
        sylow_order=P.order,
        counters=counters,
    )


def catalog() -> list[CatalogEntry]:
    out = []
    for n in range(2, 9):
        out.append(CatalogEntry(f"S{n}", f"S:{n}", math.factorial(n)))
    for n in range(3, 10):
        out.append(CatalogEntry(f"A{n}", f"A:{n}", math.factorial(n) // 2))
    for m in range(2, 13):
        out.append(CatalogEntry(f"D{2 * m}", f"D:{2 * m}", 2 * m))
    gl = lambda n, q: math.prod(q**n - q**i for i in range(n))
    for n, q in [(2, 2), (2, 3), (2, 5), (2, 7), (3, 2), (3, 3), (4, 2)]:
        out.append(CatalogEntry(f"GL({n},{q})", f"GL:{n}:{q}", gl(n, q)))
    for q in (3, 5, 7):
        out.append(CatalogEntry(f"SL(2,{q})", f"SL:2:{q}", gl(2, q) // (q - 1)))
    for q in (3, 5, 7, 9):
        out.append(CatalogEntry(f"PSL(2,{q})", f"PSL:2:{q}", gl(2, q) // (q - 1) // math.gcd(2, q - 1)))
    out += [
        CatalogEntry("C2xS3", "perm:5:[(1 2);(3 4 5);(3 4)]", 12),
        CatalogEntry("C3xS3", "perm:6:[(1 2 3);(4 5 6);(4 5)]", 18),
        CatalogEntry("C5xS3", "perm:8:[(1 2 3 4 5);(6 7 8);(6 7)]", 30),
        CatalogEntry("C7xS3", "perm:10:[(1 2 3 4 5 6 7);(8 9 10);(8 9)]", 42),
        CatalogEntry("S3xS3", "perm:6:[(1 2 3);(1 2);(4 5 6);(4 5)]", 36),
        CatalogEntry("C2xA4", "perm:6:[(1 2);(3 4 5);(3 4)(5 6)]", 24),
        CatalogEntry("C3xA4", "perm:7:[(1 2 3);(4 5 6);(4 5)(6 7)]", 36),
        CatalogEntry("C3:C4", "perm:7:[(1 2 3);(2 3)(4 5 6 7)]", 12),
    ]
    return out


def load_catalog(path: str) -> list[CatalogEntry]:
    """Entries from a JSON list of {name, descriptor, order[, primes]}."""
    with open(path) as fh:
        data = json.load(fh)
    return [CatalogEntry(d["name"], d["descriptor"], int(d["order"]), tuple(d.get("primes", ()))) for d in data]


@dataclass
class HarnessResult:
    reports: list[SearchReport]
    violations: list[dict]

    def to_dict(self) -> dict:
        return {"reports": [r.to_dict() for r in self.reports], "violations": self.violations}


def check_bounds(r: SearchReport) -> list[dict]:
    """Bound violations for one search report (empty when all bounds hold)."""
    out = []

    def bad(rule, detail):
        out.append({"group": r.group, "p": r.p, "rule": rule, "detail": detail})

    size = r.size
    comm = None if r.commutative_witness is None else len(r.commutative_witness)
    if size is None or size > 2 or comm is None or comm > 2:
        bad("conjecture", f"minimal size {size}, smallest commuting base {comm}")
    if r.solvable:
        limit = 2 if r.p >= 5 else 3
        if size is None or size > limit:
            bad("solvable", f"size {size} > {limit}")
    if r.abelian_sylow and (size is None or size > 2):
        bad("abelian", f"size {size} > 2")
    if size is None or size > 2 * r.nilpotency_class:
        bad("class", f"size {size} > 2*{r.nilpotency_class}")
    return out


def run_harness(entries: Iterable[CatalogEntry] | None = None, max_size: int = 3, workers: int = 1,
                budget: int = DEFAULT_SYLOW_BUDGET, progress=None) -> HarnessResult:
    entries = list(catalog() if entries is None else entries)

    def row(entry: CatalogEntry):
        G = enumerate_group(entry.descriptor)
        found = []
        if G.order != entry.order:
            return [], [{"group": entry.name, "p": None, "rule": "order",
                         "detail": f"enumerated {G.order}, expected {entry.order}"}]
        for p in entry.primes:
            rep = minimal_p_base(G, p, max_size=max_size, budget=budget, name=entry.name)
            found.append(rep)
            if progress:
                progress(rep)
        return found, [v for r in found for v in check_bounds(r)]

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(row, entries))
    else:
        rows = [row(e) for e in entries]
    reports = [r for rs, _ in rows for r in rs]
    violations = [v for _, vs in rows for v in vs]
    return HarnessResult(reports, violations)
