import pytest
from hypothesis import given, settings, strategies as st

from hilfor import bench
from hilfor.catalog import alg3, boolean4, godel_chain, lambda5
from hilfor.errors import MalformedInputError, ResourceLimitError
from hilfor.filters import (
    enumerate_filters,
    generated_filter,
    is_filter,
    is_irreducible,
    is_irreducible_by_intersection,
    is_order_ideal,
    nested_implication_filter,
    phi,
    phi_mask,
    separating_irreducible,
    spectrum,
)
from hilfor.hilcore import natural_order

SMALL = bench.hilbert_algebras_upto(5) + [lambda5(), boolean4()]


def test_filters_of_three_chain():
    H = alg3()
    got = [sorted(H.names(F.members)) for F in enumerate_filters(H)]
    assert got == [["1"], ["1", "m"], ["0", "1", "m"]]


def test_lambda5_spectrum_is_not_a_root_system():
    L = lambda5()
    spec = spectrum(L)
    assert [sorted(P.names()) for P in spec.points] == [["pqr"], ["p", "pq", "pqr"], ["pq", "pqr", "q"]]
    assert not spec.poset.is_root_system()


def test_spectrum_of_chain_is_a_chain():
    H = godel_chain(5)
    spec = spectrum(H)
    assert len(spec) == 4 and spec.poset.is_chain()


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_generated_filter_agrees_with_nested_implications(H, data):
    X = data.draw(st.sets(st.integers(0, H.n - 1), max_size=3))
    F = generated_filter(H, X)
    assert F.members == nested_implication_filter(H, X).members
    assert is_filter(H, F.members) and set(X) <= F.members


def test_irreducibility_criteria_agree():
    for H in SMALL:
        fs = enumerate_filters(H)
        for F in fs:
            assert is_irreducible(H, F) == is_irreducible_by_intersection(H, F, fs)


def test_spectrum_matches_full_filter_scan():
    for H in SMALL:
        scan = sorted(F.mask for F in enumerate_filters(H) if is_irreducible_by_intersection(H, F))
        assert sorted(P.mask for P in spectrum(H).points) == scan


def test_separation():
    H = boolean4()
    le = natural_order(H).leq
    for a in range(H.n):
        for b in range(H.n):
            if le[a][b]:
                continue
            F = generated_filter(H, [a])
            I = [c for c in range(H.n) if le[c][b]]
            assert is_order_ideal(H, I)
            P = separating_irreducible(H, F, I)
            assert a in P and b not in P
    with pytest.raises(MalformedInputError):
        separating_irreducible(H, [H.one], [H.one])


def test_phi_reflects_order():
    for H in SMALL:
        le = natural_order(H).leq
        spec = spectrum(H)
        for a in range(H.n):
            for b in range(H.n):
                sub = phi_mask(H, a, spec) & ~phi_mask(H, b, spec) == 0
                assert sub == le[a][b]
        assert len(phi(H, H.one, spec)) == len(spec)


def test_filter_cap():
    big = godel_chain(20)
    with pytest.raises(ResourceLimitError):
        enumerate_filters(big)
    assert len(enumerate_filters(big, cap=20)) == 20
    assert len(spectrum(big)) == 19
