import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pbase.algebra import Matrix, Polynomial, companion_matrix, field_of_order, jordan_block
from pbase.constructors import (PAdicExpansion, alternating_base, cycle_layout, gl_base, gl_plan, local_table,
                                padic_expansion, project_base, psl_base, self_centralizing_base, sl_base,
                                symmetric_base, symmetric_cycle_generators)
from pbase.cyclotomy import cyclo_factor
from pbase.groups import (Perm, Subgroup, center, centralizer, closure, enumerate_group, nilpotency_class, sylow,
                          verify_p_base)


def cyc(text, n):
    return Perm.from_cycles(text, n)


def test_padic_examples():
    assert padic_expansion(6, 3).digits == (0, 2)
    assert padic_expansion(9, 2).digits == (1, 0, 0, 1)
    with pytest.raises(ValueError):
        PAdicExpansion(5, 2, (1, 1))
    with pytest.raises(ValueError):
        PAdicExpansion(5, 2, (3, 1))


@given(st.integers(1, 10**6), st.sampled_from([2, 3, 5, 7, 11]))
def test_padic_reconstructs(n, p):
    e = padic_expansion(n, p)
    assert sum(a * p**i for i, a in enumerate(e.digits)) == n
    assert e.digits[-1] != 0


def test_symmetric_examples():
    assert symmetric_base(4, 2) == [cyc("(1 2 3 4)", 4)]
    assert symmetric_base(6, 3) == [cyc("(1 2 3)(4 5 6)", 6), cyc("(1 2 3)(4 6 5)", 6)]
    assert symmetric_base(2, 3) == []
    C = centralizer(enumerate_group("S:6"), symmetric_base(6, 3))
    assert C.order == 9
    assert verify_p_base(enumerate_group("S:4"), 2, symmetric_base(4, 2)).centralizer_order == 4
    assert verify_p_base(enumerate_group("S:2"), 3, []).verdict


def test_alternating_examples():
    assert alternating_base(5, 2) == [cyc("(1 2)(3 4)", 5)]
    assert alternating_base(7, 3) == symmetric_base(7, 3)
    assert alternating_base(6, 2) == [cyc("(1 2)(3 4 5 6)", 6)]
    assert centralizer(enumerate_group("A:6"), alternating_base(6, 2)).order == 4
    assert centralizer(enumerate_group("A:5"), alternating_base(5, 2)).order == 4
    assert alternating_base(3, 2) == []


def test_cycle_layout():
    # n = 11 = 2 + 0*3 + 1*9 with p = 3: a 9-cycle on points 0..8, points 9, 10 fixed
    assert cycle_layout(11, 3) == [(2, 1, tuple(range(9)))]
    assert cycle_layout(7, 2) == [(1, 1, (0, 1)), (2, 1, (2, 3, 4, 5))]


def fixed_point_symmetric_group(G, n, p):
    """Sym of the points left fixed by the cycle layout."""
    used = {pt for _, _, pts in cycle_layout(n, p) for pt in pts}
    free = [pt for pt in range(n) if pt not in used]
    gens = []
    for a, b in zip(free, free[1:]):
        img = list(range(n))
        img[a], img[b] = b, a
        gens.append(G.index(Perm(tuple(img))))
    return gens, len(free)


@pytest.mark.parametrize("n", range(1, 8))
@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_symmetric_centralizer_structure(n, p):
    G = enumerate_group(f"S:{n}")
    delta = symmetric_base(n, p)
    C = set(centralizer(G, delta).elements.tolist())
    cycles = [G.index(c) for c in symmetric_cycle_generators(n, p)]
    sym, a0 = fixed_point_symmetric_group(G, n, p)
    assert a0 == padic_expansion(n, p).digit(0)
    # C(delta) = <x_ij> x Sym(fixed points); the second factor is a p'-group since a0 < p
    assert C == set(closure(G, cycles + sym).tolist())
    assert (C == set(closure(G, cycles).tolist())) == (a0 <= 1)
    exp = padic_expansion(n, p)
    x = delta[0] if delta else Perm.identity(n)
    want = math.prod((p**i) ** a * math.factorial(a) for i, a in enumerate(exp.digits))
    assert centralizer(G, [x]).order == want


def test_gl_examples():
    F2, F3 = field_of_order(2), field_of_order(3)
    assert gl_base(2, F2, 2) == [Matrix(F2, ((1, 1), (0, 1)))]
    assert centralizer(enumerate_group("GL:2:2"), gl_base(2, F2, 2)).order == 2
    d = gl_base(2, F3, 2)
    assert d == [companion_matrix(Polynomial(F3, (1, 0, 1)))]
    C = centralizer(enumerate_group("GL:2:3"), d)
    assert C.order == 8 and C.is_abelian()
    d = gl_base(3, F2, 7)
    g01 = cyclo_factor(7, F2, 1).lex_sorted(0)[0]
    assert d == [companion_matrix(g01)] and g01.coeffs == (1, 1, 0, 1)
    assert centralizer(enumerate_group("GL:3:2"), d).order == 7


def test_gl_plan_invariants():
    plan = gl_plan(5, field_of_order(2), 3)  # e = 2: n = 1 + 2*2
    assert (plan.e, plan.a0, plan.digits) == (2, 1, (2,))
    with pytest.raises(ValueError):
        gl_plan(2, field_of_order(2), 2)
    assert gl_base(2, field_of_order(2), 7) == []  # e = 3 > n


def test_sl_examples():
    F3, F2 = field_of_order(3), field_of_order(2)
    d = sl_base(2, F3, 2)
    assert d == [Matrix.scalar(F3, 2, 2), Matrix(F3, ((0, 2), (1, 0)))]
    SL = enumerate_group("SL:2:3")
    C = centralizer(SL, d)
    assert C.order == 4 and C.is_abelian()
    d = sl_base(2, F3, 3)
    assert d == [Matrix(F3, ((1, 1), (0, 1)))]
    C = centralizer(SL, d)
    assert C.order == 6 and C.is_abelian()
    assert sl_base(3, F2, 2) == gl_base(3, F2, 2)
    assert all(m.determinant() == 1 for m in sl_base(3, F2, 2))


def test_psl_examples():
    F3, F5, F2 = field_of_order(3), field_of_order(5), field_of_order(2)
    d = psl_base(2, F3, 2)
    assert [str(x) for x in d] == ["0,1;2,0"]
    Q = enumerate_group("PSL:2:3")
    assert verify_p_base(Q, 2, d).verdict
    assert int(Q.orders[Q.index(d[0])]) == 2
    d = psl_base(2, F5, 5)
    assert len(d) == 1 and str(d[0]) == str(jordan_block(F5, 2))
    assert verify_p_base(enumerate_group("PSL:2:5"), 5, d).centralizer_order == 5
    for p in (2, 3):
        assert [str(x) for x in psl_base(2, F2, p)] == [str(x) for x in sl_base(2, F2, p)]


def test_project_base():
    SL = enumerate_group("SL:2:3")
    Z = center(SL)
    F3 = field_of_order(3)
    y = Matrix(F3, ((0, 2), (1, 0)))
    out = project_base([Matrix.scalar(F3, 2, 2), y], SL, Z)
    assert len(out) == 1 and str(out[0]) == "0,1;2,0"
    triv = Subgroup(SL, [SL.identity])
    assert project_base([y], SL, triv) == [y]
    assert project_base([], SL, Z) == []
    S3 = enumerate_group("S:3")
    with pytest.raises(ValueError):
        project_base([], S3, Subgroup(S3, closure(S3, [S3.index(cyc("(1 2 3)", 3))])))


def test_self_centralizing_examples():
    S4 = enumerate_group("S:4")
    d = self_centralizing_base(S4, 2)
    assert d is not None and verify_p_base(S4, 2, d).verdict
    # a cyclic normal subgroup of order 4 comes before P itself; P also qualifies but needs two generators
    assert len(d) == 1 and S4.element(S4.index(d[0])).order() == 4
    P = sylow(S4, 2)
    elems = [int(g) for g in P.elements]
    assert not any(closure(S4, [g]).size == 8 for g in elems)
    assert any(closure(S4, [g, h]).size == 8 for g, h in itertools.combinations(elems, 2))
    assert verify_p_base(S4, 2, list(P.gens)).verdict
    C7 = enumerate_group("C:7")
    assert len(self_centralizing_base(C7, 7)) == 1
    A5 = enumerate_group("A:5")
    d = self_centralizing_base(A5, 5)
    assert len(d) == 1 and d[0].order() == 5
    assert self_centralizing_base(A5, 7) == []


@pytest.mark.parametrize("desc", ["S:6", "A:7", "GL:2:5", "SL:2:7", "D:16", "PSL:2:9"])
def test_self_centralizing_normal_subgroup(desc):
    G = enumerate_group(desc)
    for p in (2, 3):
        d = self_centralizing_base(G, p)
        P = sylow(G, p)
        if d is None:
            continue
        Q = set(closure(G, [G.index(x) for x in d]).tolist())
        assert Q <= set(P.elements.tolist())
        for h in P.elements:
            h = int(h)
            hi = int(G.inverses[h])
            assert {G.mul(G.mul(hi, x), h) for x in Q} == Q
        cent = {int(x) for x in P.elements if all(G.commute(int(x), y) for y in Q)}
        assert cent <= Q
        assert verify_p_base(G, p, d).verdict


def test_local_table_matches_group_law():
    G = enumerate_group("S:5")
    P = sylow(G, 2)
    T = local_table(P)
    for a, b in itertools.product(range(P.order), repeat=2):
        assert P.elements[T[a, b]] == G.mul(int(P.elements[a]), int(P.elements[b]))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 8), st.sampled_from([2, 3, 5, 7]))
def test_symmetric_base_shape(n, p):
    d = symmetric_base(n, p)
    assert len(d) <= 2
    for x in d:
        assert x.degree == n
        assert x.order() & (x.order() - 1) == 0 if p == 2 else x.order() % p == 0 or x.order() == 1
    for a, b in itertools.combinations(d, 2):
        assert a * b == b * a
