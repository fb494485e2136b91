from itertools import permutations

from hypothesis import given, settings, strategies as st

from hilfor.errors import MalformedInputError
from hilfor.order import Poset, bits, brute_canonical_form, find_order_isomorphism, mask_of, order_isomorphisms

import pytest


def chain(n):
    return Poset.from_covers(n, [(i, i + 1) for i in range(n - 1)])


@st.composite
def posets(draw, max_n=5):
    """Random posets: a random relation on a random linear order, transitively closed."""
    n = draw(st.integers(1, max_n))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=8))
    return Poset.from_covers(n, [(a, b) for a, b in edges if a < b])


def test_bits_and_mask_round_trip():
    assert bits(0b10110) == [1, 2, 4]
    assert mask_of([1, 2, 4]) == 0b10110
    assert bits(0) == []


def test_chain_structure():
    P = chain(3)
    assert P.covers == [(0, 1), (1, 2)]
    assert P.is_chain() and P.is_forest() and P.is_root_system()
    assert P.minimal() == 0b001 and P.maximal() == 0b100
    assert P.up[1] == 0b110 and P.down[1] == 0b011


def test_from_covers_rejects_cycles():
    with pytest.raises(MalformedInputError):
        Poset.from_covers(2, [(0, 1), (1, 0)])
    with pytest.raises(MalformedInputError):
        Poset.from_covers(2, [(0, 2)])


def test_vee_is_forest_not_root_system():
    V = Poset.from_covers(3, [(0, 1), (0, 2)])  # one root, two leaves
    assert V.is_forest() and not V.is_root_system()
    assert V.dual().is_root_system()


def test_upsets_of_antichain_are_all_subsets():
    A = Poset.from_covers(3, [])
    assert len(A.upsets()) == 8
    assert len(chain(4).upsets()) == 5


@settings(max_examples=60, deadline=None)
@given(posets())
def test_upsets_match_brute_force(P):
    brute = [m for m in range(1 << P.n) if P.is_upset(m)]
    assert sorted(P.upsets()) == brute
    assert sorted(P.downsets()) == [m for m in range(1 << P.n) if P.is_downset(m)]


@settings(max_examples=40, deadline=None)
@given(posets(), st.randoms(use_true_random=False))
def test_isomorphism_search_agrees_with_canonical_form(P, rnd):
    perm = list(range(P.n))
    rnd.shuffle(perm)
    Q = P.relabel(perm)
    f = find_order_isomorphism(P, Q)
    assert f is not None
    assert all(P.leq[a][b] == Q.leq[f[a]][f[b]] for a in range(P.n) for b in range(P.n))
    assert brute_canonical_form(P) == brute_canonical_form(Q)


def test_isomorphism_count_is_automorphism_count():
    V = Poset.from_covers(3, [(0, 1), (0, 2)])
    assert len(list(order_isomorphisms(V, V))) == 2
    A = Poset.from_covers(3, [])
    assert len(list(order_isomorphisms(A, A))) == len(list(permutations(range(3))))
    assert find_order_isomorphism(V, chain(3)) is None
