import itertools
import math
import threading

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from pbase.algebra import Matrix, Polynomial, companion_matrix, field_of_order
from pbase.groups import (BudgetExceeded, Coset, Perm, Subgroup, center, central_quotient, centralizer, closure,
                          derived_subgroup, enumerate_group, is_p_nilpotent, is_solvable, lower_central_series,
                          nilpotency_class, normalizer, p_elements, p_part, parse_descriptor, subgroup_generated,
                          sylow, verify_p_base)

from oracles import brute_centralizer, brute_p_nilpotent

PERM_DESCRIPTORS = ["S:3", "S:4", "S:5", "A:4", "A:5", "A:6", "D:8", "D:10", "D:4", "C:6",
                    "perm:6:[(1 2 3);(4 5 6);(4 5)]", "perm:7:[(1 2 3);(2 3)(4 5 6 7)]"]


def sympy_group(G):
    return PermutationGroup([Permutation(list(map(int, G.perms[g]))) for g in G.gens] or [Permutation(G.degree - 1)])


# --- elements and descriptors -------------------------------------------------


def test_perm_basics():
    x = Perm.from_cycles("(1 2 3)(4 5)", 6)
    assert str(x) == "(1 2 3)(4 5)"
    assert x.order() == 6
    assert not x.is_even()
    assert str(x * x.inverse()) == "()"
    assert x**6 == Perm.identity(6)
    # (g*h)(i) = g(h(i))
    g, h = Perm.from_cycles("(1 2)", 3), Perm.from_cycles("(2 3)", 3)
    assert (g * h).images == tuple(g.images[h.images[i]] for i in range(3))
    with pytest.raises(ValueError):
        Perm.from_cycles("(1 1)", 3)
    with pytest.raises(ValueError):
        Perm.from_cycles("(1 9)", 3)


@pytest.mark.parametrize("text", ["S:0", "X:3", "GL:2", "D:7", "perm:3:(1 2)", "quot:S:4:foo", "mat:2:3:[1,1;1,1]",
                                  "GL:2:6"])
def test_bad_descriptors(text):
    with pytest.raises(ValueError):
        parse_descriptor(text)


@pytest.mark.parametrize("desc,order", [("S:4", 24), ("GL:2:3", 48), ("PSL:2:3", 12), ("SL:2:5", 120), ("GL:2:4", 180),
                                        ("A:1", 1), ("S:1", 1), ("D:24", 24), ("D:4", 4), ("C:7", 7),
                                        ("mat:2:3:[0,2;1,0]", 4), ("quot:GL:2:3:center", 24), ("GL:3:2", 168)])
def test_orders(desc, order):
    assert enumerate_group(desc).order == order


@pytest.mark.parametrize("desc", PERM_DESCRIPTORS)
def test_enumeration_matches_sympy(desc):
    G = enumerate_group(desc)
    H = sympy_group(G)
    assert H.order() == G.order
    assert H.is_solvable == is_solvable(G)
    for g in G.perms[:: max(1, G.order // 20)]:
        assert H.contains(Permutation(list(map(int, g))))


@pytest.mark.parametrize("desc", ["S:5", "GL:2:3", "PSL:2:5", "SL:2:3"])
def test_canonical_order_and_lookup(desc):
    G = enumerate_group(desc)
    if G.kind == "perm":
        keys = [tuple(r) for r in G.perms.tolist()]
    elif G.kind == "mat":
        keys = [tuple(m.ravel()) for m in G.matrices.tolist() for m in [np.array(m)]]
    else:
        keys = list(G.reps)
    assert keys == sorted(keys)
    assert G.identity == G.index(G.element(G.identity))
    for i in range(0, G.order, 7):
        assert G.index(G.element(i)) == i
        assert G.mul(i, int(G.inverses[i])) == G.identity


def test_matrix_group_multiplication_matches_matrices():
    G = enumerate_group("GL:2:3")
    for i, j in [(3, 17), (40, 5), (11, 11)]:
        A, B = G.element(i), G.element(j)
        assert G.element(G.mul(i, j)) == A @ B


def test_parse_element_syntax():
    G = enumerate_group("GL:2:3")
    assert G.parse_element("0,2;1,0") == Matrix(field_of_order(3), ((0, 2), (1, 0)))
    Q = enumerate_group("PSL:2:3")
    c = Q.element(Q.index(Q.parse_element("0,2;1,0")))
    assert isinstance(c, Coset) and str(c) == "0,1;2,0"


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_group("S:7", cap=100)
    with pytest.raises(BudgetExceeded):
        enumerate_group("perm:9:[(1 2 3 4 5 6 7 8 9);(1 2)]", cap=1000)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("PBASE_BUDGET", "50")
    with pytest.raises(BudgetExceeded):
        enumerate_group("S:5")


def test_concurrent_enumeration_is_single_flight():
    out = []
    threads = [threading.Thread(target=lambda: out.append(enumerate_group("perm:8:[(1 2 3 4 5 6 7 8);(1 2)(5 6)]")))
               for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len({id(g) for g in out}) == 1


# --- subgroups ------------------------------------------------------------------


def test_centralizer_examples():
    S3 = enumerate_group("S:3")
    C = centralizer(S3, [Perm.from_cycles("(1 2 3)", 3)])
    assert C.order == 3
    assert centralizer(S3, []).order == 6
    G = enumerate_group("GL:2:3")
    C = centralizer(G, [companion_matrix(Polynomial(field_of_order(3), (1, 0, 1)))])
    assert C.order == 8 and C.is_abelian()
    assert max(int(G.orders[c]) for c in C.elements) == 8


def test_center_and_normalizer():
    assert center(enumerate_group("S:3")).order == 1
    SL = enumerate_group("SL:2:3")
    Z = center(SL)
    assert Z.order == 2
    assert {str(SL.element(z)) for z in Z.elements} == {"1,0;0,1", "2,0;0,2"}
    G = enumerate_group("S:4")
    full = Subgroup(G, np.arange(G.order))
    assert normalizer(G, full).order == 24


@pytest.mark.parametrize("desc", ["S:4", "A:5", "D:12", "GL:2:3", "PSL:2:7"])
def test_centralizer_against_brute_force(desc):
    G = enumerate_group(desc)
    rng = np.random.default_rng(1)
    for _ in range(5):
        delta = [int(x) for x in rng.choice(G.order, size=2)]
        assert set(centralizer(G, delta).elements.tolist()) == brute_centralizer(G, delta)


def test_sylow_examples():
    S4 = enumerate_group("S:4")
    P = sylow(S4, 2)
    assert P.order == 8 and not P.is_abelian()
    assert sylow(S4, 5).order == 1
    P7 = sylow(enumerate_group("GL:3:2"), 7)
    assert P7.order == 7 and P7.is_abelian()


@pytest.mark.parametrize("desc", ["S:5", "A:6", "GL:2:5", "SL:2:7", "PSL:2:9", "D:24", "GL:3:2"])
def test_sylow_properties(desc):
    G = enumerate_group(desc)
    for p in (2, 3, 5, 7):
        P = sylow(G, p)
        assert P.order == p_part(G.order, p)
        assert all(p_part(int(G.orders[x]), p) == int(G.orders[x]) for x in P.elements)
        assert G.order % P.order == 0
        assert sylow(G, p) == P  # deterministic


def test_is_p_nilpotent_examples():
    S3 = enumerate_group("S:3")
    w = is_p_nilpotent(S3, 2)
    assert w and w.complement.order == 3
    assert not is_p_nilpotent(S3, 3)
    D8 = enumerate_group("D:8")
    w = is_p_nilpotent(D8, 2)
    assert w and w.complement.order == 1
    assert not is_p_nilpotent(enumerate_group("SL:2:3"), 2)


@pytest.mark.parametrize("desc", ["S:3", "S:4", "A:4", "A:5", "D:12", "D:20", "GL:2:3", "SL:2:3", "PSL:2:7",
                                  "perm:7:[(1 2 3);(2 3)(4 5 6 7)]", "perm:6:[(1 2);(3 4 5);(3 4)(5 6)]"])
def test_p_nilpotency_against_oracle(desc):
    G = enumerate_group(desc)
    for p in (2, 3, 5, 7):
        if G.order % p == 0:
            assert bool(is_p_nilpotent(G, p)) == brute_p_nilpotent(G, p)


def test_derived_and_solvable_examples():
    S3 = enumerate_group("S:3")
    D = derived_subgroup(S3)
    assert D.order == 3 and all(S3.element(x).is_even() for x in D.elements)
    assert is_solvable(enumerate_group("S:4"))
    assert not is_solvable(enumerate_group("A:5"))
    assert is_solvable(enumerate_group("GL:2:3"))
    assert not is_solvable(enumerate_group("SL:2:5"))


@pytest.mark.parametrize("desc,p", [("S:4", 2), ("S:6", 2), ("A:8", 2), ("S:6", 3), ("D:16", 2), ("GL:2:3", 2)])
def test_nilpotency_class_against_sympy(desc, p):
    G = enumerate_group(desc)
    P = sylow(G, p)
    gens = [Permutation(list(map(int, G.perms[g]))) for g in P.gens]
    H = PermutationGroup(gens)
    series = H.lower_central_series()
    want = len(series) - 1 if series[-1].order() == 1 else None
    assert nilpotency_class(P) == want
    assert [s.order for s in lower_central_series(P)] == [s.order() for s in series]


def test_central_quotients():
    SL = enumerate_group("SL:2:3")
    Q = central_quotient(SL, center(SL))
    assert Q.order == 12
    assert not is_p_nilpotent(Q, 2)
    assert math.lcm(*[int(o) for o in Q.orders]) == 6  # exponent of A_4
    assert sorted(int(o) for o in Q.orders).count(2) == 3
    assert central_quotient(SL, Subgroup(SL, [SL.identity])) is SL
    assert enumerate_group("PSL:2:5").order == 60
    with pytest.raises(ValueError):
        S3 = enumerate_group("S:3")
        central_quotient(S3, Subgroup(S3, closure(S3, [S3.index(Perm.from_cycles("(1 2 3)", 3))])))


def test_verify_p_base_examples():
    S4 = enumerate_group("S:4")
    cert = verify_p_base(S4, 2, [Perm.from_cycles("(1 2 3 4)", 4)])
    assert cert.verdict and cert.centralizer_order == 4 and cert.witness
    A4 = enumerate_group("A:4")
    assert not verify_p_base(A4, 2, []).verdict
    with pytest.raises(ValueError):
        verify_p_base(S4, 2, [Perm.from_cycles("(1 2 3)", 4)])
    with pytest.raises(ValueError):
        verify_p_base(S4, 4, [])


@pytest.mark.parametrize("desc", ["S:4", "S:5", "A:6", "GL:2:3", "SL:2:5", "PSL:2:7", "D:24"])
def test_generating_set_of_sylow_is_a_base(desc):
    G = enumerate_group(desc)
    for p in (2, 3, 5):
        P = sylow(G, p)
        cert = verify_p_base(G, p, list(P.gens))
        assert cert.verdict
        # the full element set is also a generating set
        assert verify_p_base(G, p, P.elements.tolist()).verdict


def test_noncommuting_pair_outside_any_sylow():
    S3 = enumerate_group("S:3")
    cert = verify_p_base(S3, 2, [Perm.from_cycles("(1 2)", 3), Perm.from_cycles("(1 3)", 3)])
    assert not cert.delta_in_sylow and not cert.verdict and not cert.commutative


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["S:4", "A:5", "GL:2:3", "S:6"]), st.integers(0, 10**6), st.integers(0, 10**6))
def test_conjugation_stability(desc, a, g):
    G = enumerate_group(desc)
    P = sylow(G, 2)
    x = int(P.elements[a % P.order])
    g = g % G.order
    ginv = int(G.inverses[g])
    y = G.mul(G.mul(ginv, x), g)
    assert verify_p_base(G, 2, [x]).verdict == verify_p_base(G, 2, [y]).verdict
    assert centralizer(G, [x]).order == centralizer(G, [y]).order


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["S:5", "GL:2:3", "PSL:2:7", "D:20"]), st.lists(st.integers(0, 10**6), min_size=1, max_size=3))
def test_generated_subgroups_obey_lagrange(desc, picks):
    G = enumerate_group(desc)
    H = subgroup_generated(G, [p % G.order for p in picks])
    assert G.order % H.order == 0
    prods = {G.mul(int(a), int(b)) for a, b in itertools.product(H.elements[:10], H.elements[:10])}
    assert prods <= set(H.elements.tolist())


def test_p_elements():
    S4 = enumerate_group("S:4")
    assert len(p_elements(S4, 2, include_identity=True)) == 16
    assert len(p_elements(S4, 3)) == 8
