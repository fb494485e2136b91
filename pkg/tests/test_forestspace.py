from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from hilfor import bench
from hilfor.catalog import alg2, alg3, godel_chain, lambda5
from hilfor.errors import DomainError
from hilfor.forestspace import (
    ForestMap,
    HForest,
    algebra_of,
    dual_of_hom,
    dual_space,
    enumerate_forest_maps,
    epsilon_map,
    hforest_full,
    hforest_isomorphism,
    hom_of_map,
    identity_map,
    is_hbase,
    is_hbase_closure_form,
    is_hfor_morphism,
    phi_hom,
    principal_base,
    validate_forest_space,
)
from hilfor.hilcore import enumerate_homs, find_isomorphism, is_homomorphism
from hilfor.order import Poset, bits


def literal_clause_form(P, fam):
    fam = set(fam)
    if not all(P.is_upset(B) for B in fam) or not all(P.up[x] in fam for x in range(P.n)):
        return False
    for B in fam:
        mins = [x for x in bits(B) if P.down[x] & B == 1 << x]
        for r in range(len(mins) + 1):
            for M in combinations(mins, r):
                if P.upset(sum(1 << x for x in M)) not in fam:
                    return False
    return True


def literal_closure_form(P, fam):
    fam = set(fam)
    if not all(P.is_upset(B) for B in fam) or not all(P.up[x] in fam for x in range(P.n)):
        return False
    return all(P.upset(B1 & ~B2) in fam for B1 in fam for B2 in fam)


SMALL_FORESTS = [P for n in range(1, 4) for P in bench.enumerate_forests(n)]


@pytest.mark.parametrize("P", SMALL_FORESTS, ids=lambda P: f"n{P.n}c{len(P.covers)}")
def test_hbase_forms_agree_with_literal_oracles_on_every_family(P):
    ups = P.upsets()
    agree = 0
    for sel in range(1 << len(ups)):
        fam = [U for k, U in enumerate(ups) if sel >> k & 1]
        a = literal_clause_form(P, fam)
        assert is_hbase(P, fam) == a
        assert is_hbase_closure_form(P, fam) == literal_closure_form(P, fam) == a
        agree += a
    assert agree > 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([P for P in bench.enumerate_forests(4)]), st.data())
def test_hbase_forms_agree_on_random_families_of_four_node_forests(P, data):
    ups = P.upsets()
    fam = data.draw(st.sets(st.sampled_from(ups)))
    fam |= set(principal_base(P))
    assert is_hbase(P, fam) == is_hbase_closure_form(P, fam) == literal_clause_form(P, fam)


def test_dual_of_three_is_two_chain():
    X = dual_space(alg3())
    chain = Poset.from_covers(2, [(0, 1)])
    assert hforest_isomorphism(X, HForest.make(chain, [0, 0b10, 0b11])) is not None
    assert validate_forest_space(X).valid


def test_dual_needs_bounded_prelinear():
    with pytest.raises(DomainError):
        dual_space(lambda5())
    with pytest.raises(DomainError):
        dual_space(alg3().without_zero())


def test_full_base_gives_godel_chain():
    chain = Poset.from_covers(2, [(0, 1)])
    A = algebra_of(hforest_full(chain))
    assert A.n == 3 and find_isomorphism(A, godel_chain(3)) is not None


def test_invalid_base_is_reported():
    V = Poset.from_covers(3, [(0, 1), (0, 2)])
    no_empty = HForest.make(V, [V.full, V.up[1], V.up[2]])
    rep = validate_forest_space(no_empty)
    assert not rep.valid and rep.failure[0] == "minimal-subsets"
    assert validate_forest_space(HForest.make(V, [0, V.full, V.up[1], V.up[2]])).valid
    chain = Poset.from_covers(2, [(0, 1)])
    assert not validate_forest_space(HForest.make(chain, [0, chain.full])).valid


def test_phi_and_epsilon_are_isomorphisms(bph8):
    for H in bph8[:60]:
        f = phi_hom(H)
        assert is_homomorphism(f, H, f.dst, bounded=True) and len(set(f.map)) == H.n
        X = dual_space(H)
        eps = epsilon_map(X)
        assert sorted(eps) == list(range(X.n))


def test_dual_of_hom_round_trip():
    algs = bench.enumerate_bph_algebras(4)
    for H in algs:
        for K in algs:
            XH, XK = dual_space(H), dual_space(K)
            maps = {m.map for m in enumerate_forest_maps(XK, XH)}
            homs = enumerate_homs(H, K, bounded=True)
            assert len(maps) == len(homs)
            for f in homs:
                m = dual_of_hom(f)
                assert is_hfor_morphism(m) and m.map in maps
                back = hom_of_map(m)
                # hom_of_map lands in the algebras of the duals; transport back through phi
                assert phi_hom(H).then(back).map == f.then(phi_hom(K)).map


def test_identity_and_non_morphisms():
    X = dual_space(alg3())
    assert is_hfor_morphism(identity_map(X))
    # collapsing the chain onto its root is order preserving but not open
    assert not is_hfor_morphism(ForestMap(X, X, (0, 0)))
    # open maps have downward closed images, so a point lands on the leaf
    point = dual_space(alg2())
    leaf = next(x for x in range(X.n) if X.poset.down[x] == 1 << x)
    assert [m.map for m in enumerate_forest_maps(point, X)] == [(leaf,)]
