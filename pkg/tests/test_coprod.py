import pytest

from hilfor import bench
from hilfor.catalog import alg2, alg3, boolean4, godel_chain, lambda5, trivial, vee3
from hilfor.coprod import (
    check_generation,
    coproduct_bounded,
    coproduct_unbounded,
    free_algebra_oracle,
    hom_zero_extension,
    inclusion_hom,
    mediator_bounded,
    mediator_unbounded,
    zero_extension,
)
from hilfor.errors import DomainError, ResourceLimitError
from hilfor.hilcore import enumerate_homs, find_isomorphism, is_homomorphism, is_prelinear, validate_algebra

BPH3 = bench.enumerate_bph_algebras(3)
TARGETS = bench.enumerate_bph_algebras(4)


def compose(f, g):
    return tuple(g.map[x] for x in f.map)


@pytest.mark.parametrize("i", range(len(BPH3)))
def test_bounded_mediators_exist_and_are_unique(i):
    H = BPH3[i]
    for G in BPH3:
        C = coproduct_bounded(H, G)
        assert check_generation(C)
        for K in TARGETS:
            all_homs = enumerate_homs(C.result, K, bounded=True)
            for f in enumerate_homs(H, K, bounded=True):
                for g in enumerate_homs(G, K, bounded=True):
                    m = mediator_bounded(C, f, g)
                    assert is_homomorphism(m, C.result, K, bounded=True)
                    assert compose(C.injL, m) == f.map and compose(C.injR, m) == g.map
                    same = [h for h in all_homs if compose(C.injL, h) == f.map and compose(C.injR, h) == g.map]
                    assert [h.map for h in same] == [m.map]


def test_unbounded_mediators():
    U = [A for A in bench.hilbert_algebras_upto(3) if is_prelinear(A)]
    K = [A for A in bench.hilbert_algebras_upto(3) if is_prelinear(A)]
    chain3 = godel_chain(3, bounded=False)
    for H in U:
        for G in U:
            if find_isomorphism(H, chain3) and find_isomorphism(G, chain3):
                # 16435 elements: certified lazily by the bench, too big for tables
                with pytest.raises(ResourceLimitError):
                    coproduct_unbounded(H, G)
                continue
            C = coproduct_unbounded(H, G)
            assert C.result.zero is None and check_generation(C)
            for T in K:
                for f in enumerate_homs(H, T):
                    for g in enumerate_homs(G, T):
                        m = mediator_unbounded(C, f, g)
                        assert is_homomorphism(m, C.result, T.without_zero())
                        assert compose(C.injL, m) == f.map and compose(C.injR, m) == g.map


def test_two_is_initial_for_bounded_coproducts():
    for H in bench.enumerate_bph_algebras(5):
        assert find_isomorphism(coproduct_bounded(H, alg2()).result, H) is not None


def test_trivial_is_initial_for_unbounded_coproducts():
    one = trivial(bounded=False)
    for H in (vee3(), alg3().without_zero(), boolean4().without_zero()):
        assert find_isomorphism(coproduct_unbounded(H, one).result, H) is not None


def test_coproduct_is_symmetric():
    for H in BPH3 + [boolean4()]:
        for G in BPH3:
            assert find_isomorphism(coproduct_bounded(H, G).result, coproduct_bounded(G, H).result) is not None


def test_known_sizes():
    assert coproduct_bounded(alg3(), alg3()).result.n == 15
    assert coproduct_unbounded(vee3(), alg2().without_zero()).result.n > vee3().n
    assert coproduct_bounded(boolean4(), boolean4()).result.n == 16


def test_bounded_free_on_two_generators_matches_oracle():
    F1 = free_algebra_oracle(1, bounded=True)
    F2 = free_algebra_oracle(2, bounded=True)
    assert F2.n == 134
    assert find_isomorphism(coproduct_bounded(F1, F1).result, F2) is not None
    assert free_algebra_oracle(1).n == 2


def test_oracle_domain():
    with pytest.raises(DomainError):
        free_algebra_oracle(0)
    with pytest.raises(DomainError):
        free_algebra_oracle(4)


def test_domain_errors():
    with pytest.raises(DomainError):
        coproduct_bounded(lambda5(), alg2())
    with pytest.raises(DomainError):
        coproduct_bounded(vee3(), alg2())
    with pytest.raises(DomainError):
        coproduct_unbounded(lambda5(), vee3())
    C = coproduct_bounded(alg3(), alg3())
    f = enumerate_homs(alg3(), alg3(), bounded=True)[0]
    g = enumerate_homs(alg3(), alg2(), bounded=True)[0]
    with pytest.raises(DomainError):
        mediator_bounded(C, f, g)


def test_large_coproduct_hits_the_table_cap():
    c4 = godel_chain(4)
    with pytest.raises(ResourceLimitError):
        coproduct_bounded(c4, c4)


def test_zero_extension():
    for H in (vee3(), alg3().without_zero(), trivial(bounded=False)):
        H0 = zero_extension(H)
        assert validate_algebra(H0.imp, H0.one, H0.zero).valid
        assert H0.zero == H.n and is_prelinear(H0) == is_prelinear(H)
        assert is_homomorphism(inclusion_hom(H), H, H0)
    # a label already called 0 is not reused
    named = zero_extension(godel_chain(3, bounded=False))
    assert named.name(named.zero) == "0'"
    for f in enumerate_homs(vee3(), alg3().without_zero()):
        f0 = hom_zero_extension(f)
        assert is_homomorphism(f0, f0.src, f0.dst, bounded=True)
