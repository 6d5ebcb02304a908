import random

import pytest
from hypothesis import given, settings, strategies as st

from orbtorsion.abelian import (AbelianGroup, GroupHomomorphism, character_classes, direct_sum,
                                free_abelian, group_from_presentation, quotient_by,
                                quotient_by_power, smith_normal_form)

matrices = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                           min_size=m, max_size=m)))


def _mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
            for i in range(len(A))]


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_smith_normal_form(M):
    U, D, V = smith_normal_form(M)
    assert _mul(_mul(U, M), V) == D
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    assert all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_presentation_invariant_factors():
    G, p = group_from_presentation(3, [[2, 0, 0], [0, 3, 0]])
    assert (G.free_rank, G.invariant_factors) == (1, (6,))
    assert p.is_surjective()
    for g in G.gens():
        assert p(p.lift(g)) == g


def test_invalid_groups():
    with pytest.raises(ValueError):
        AbelianGroup(0, (2, 3))
    with pytest.raises(ValueError):
        AbelianGroup(0, (1,))
    with pytest.raises(ValueError):
        AbelianGroup(-1)


def test_elements_and_order():
    G = AbelianGroup(0, (2, 4))
    assert G.is_finite() and G.order() == 8
    assert len(set(g.coords for g in G.elements())) == 8
    assert not free_abelian(1).is_finite()
    with pytest.raises(ValueError):
        list(free_abelian(1).elements())


def test_element_arithmetic():
    G = AbelianGroup(1, (3,))
    t, m = G.gens()
    assert (m ** 3).is_identity()
    assert (t * m) * (t * m).inverse() == G.identity()
    assert m.order() == 3 and t.order() == 0


def test_quotients():
    G = free_abelian(2)
    x = G.gen(0) * G.gen(1) ** 2
    Q, q = quotient_by_power(G, x, 3)
    assert (Q.free_rank, Q.invariant_factors) == (1, (3,))
    assert (q(x) ** 3).is_identity() and not q(x).is_identity()
    assert q.kernel_order() == 0
    Q2, q2 = quotient_by(G, [G.gen(0)])
    assert Q2.free_rank == 1 and q2(G.gen(0)).is_identity()


def test_kernel_order_and_isomorphism():
    G = AbelianGroup(1, (6,))
    Q, q = quotient_by(G, [G.gen(1) ** 3])
    assert q.kernel_order() == 2
    Q3, q3 = quotient_by(G, [])
    assert q3.is_isomorphism()


def test_homomorphism_checks_orders():
    G = AbelianGroup(0, (3,))
    with pytest.raises(ValueError):
        GroupHomomorphism(G, free_abelian(1), [[1]])


def test_direct_sum():
    S = direct_sum(AbelianGroup(0, (2,)), AbelianGroup(1, (3,)))
    assert (S.free_rank, S.invariant_factors) == (1, (6,))


@pytest.mark.parametrize("factors, expected", [((), 1), ((2,), 2), ((3,), 2), ((6,), 4),
                                               ((2, 2), 4), ((5,), 2)])
def test_character_classes_count(factors, expected):
    G = AbelianGroup(0, factors)
    classes = character_classes(G)
    assert len(classes) == expected
    assert sum(c.size for c in classes) == G.order()
    assert classes[0].is_trivial


def test_random_element_in_group():
    G = AbelianGroup(2, (4,))
    rng = random.Random(0)
    for _ in range(20):
        g = G.random_element(rng, 2)
        assert 0 <= g.coords[2] < 4 and all(abs(c) <= 2 for c in g.coords[:2])
