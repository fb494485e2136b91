"""Acceptance suite: one test per criterion, each reported as PASS/FAIL in the summary."""

import time

import pytest

from hilfor import bench
from hilfor.catalog import alg2, lambda5
from hilfor.coprod import coproduct_bounded, coproduct_unbounded, free_algebra_oracle
from hilfor.filters import spectrum
from hilfor.forestspace import (
    algebra_of,
    dual_space,
    enumerate_forest_maps,
    enumerate_forest_relations,
    hforest_isomorphism,
    is_chfor_morphism,
    is_hfor_morphism,
    map_of_relation,
    relation_of_map,
)
from hilfor.freeext import (
    envelope,
    enumerate_heyting_homs,
    eta_map,
    factor_through_envelope,
    godel_envelope,
    godel_violation,
    semilattice_closure,
    union_of_intersections,
)
from hilfor.hilcore import (
    derived_law_violation,
    enumerate_homs,
    find_isomorphism,
    is_prelinear,
    make_algebra,
    natural_order,
    quotient,
    validate_algebra,
)
from hilfor.worked import run_example_suite

crit = pytest.mark.criterion


def pairwise_join_prelinear(A):
    """(a->b) v (b->a) = 1 read as: 1 is the only common upper bound of a->b and b->a."""
    le = natural_order(A).leq
    for a in range(A.n):
        for b in range(A.n):
            x, y = A.imp[a][b], A.imp[b][a]
            if any(le[x][c] and le[y][c] for c in range(A.n) if c != A.one):
                return False
    return True


@crit(1, "axiom and derived-law suite on every algebra <= 8 elements, < 10 s")
def test_c1_law_suite(hilbert_upto8):
    t = time.perf_counter()
    corpus = hilbert_upto8 + [lambda5()]
    bad = []
    for A in corpus:
        if not validate_algebra(A.imp, A.one, A.zero).valid or derived_law_violation(A) is not None:
            bad.append(A)
    elapsed = time.perf_counter() - t
    assert len(hilbert_upto8) == 4712
    assert not bad
    assert elapsed < 10, elapsed


@crit(2, "prelinearity equivalences, LAMBDA5 as the negative case")
def test_c2_prelinearity_equivalences(hilbert_upto8):
    L = lambda5()
    assert not is_prelinear(L)
    discrepancies = []
    negatives = 0
    for A in hilbert_upto8 + [L]:
        p = is_prelinear(A)
        spec = spectrum(A)
        root = spec.poset.is_root_system()
        chains = all(natural_order(quotient(A, P)).is_chain() for P in spec.points)
        pairwise = pairwise_join_prelinear(A)
        negatives += not p
        if len({p, root, chains, pairwise}) != 1:
            discrepancies.append((A, p, root, chains, pairwise))
    assert not discrepancies
    assert negatives == 4031  # 4030 in the corpus plus LAMBDA5 again


@crit(3, "duality round trips for bounded prelinear H <= 8 and h-forests <= 5 nodes, < 60 s")
def test_c3_duality_round_trip(bph8, hforests5):
    t = time.perf_counter()
    assert len(bph8) == 256 and len(hforests5) == 418
    for H in bph8:
        assert find_isomorphism(algebra_of(dual_space(H)), H) is not None
    for FS in hforests5:
        assert hforest_isomorphism(dual_space(algebra_of(FS)), FS) is not None
    assert time.perf_counter() - t < 60


@crit(4, "hFor maps and ChFor relations correspond bijectively for h-forests <= 4 nodes")
def test_c4_map_relation_bijection(hforests4):
    total = 0
    for X in hforests4:
        for Y in hforests4:
            maps = enumerate_forest_maps(X, Y)
            rels = enumerate_forest_relations(X, Y)
            assert len(maps) == len(rels)
            rel_set = {R.rel for R in rels}
            for m in maps:
                assert is_hfor_morphism(m)
                R = relation_of_map(m)
                assert is_chfor_morphism(R) and R.rel in rel_set
                assert map_of_relation(R).map == m.map
            for R in rels:
                assert relation_of_map(map_of_relation(R)).rel == R.rel
            total += len(maps)
    assert total == 18492


@pytest.mark.slow
@crit(5, "product universal property for all factor pairs <= 4 nodes, cone_cap 4, < 5 min")
def test_c5_product_universal(hforests4):
    t = time.perf_counter()
    checked = 0
    for X in hforests4:
        for Y in hforests4:
            cert = bench.certify_product_universal(X, Y, 4, cones=hforests4)
            assert cert.ok, (X, Y, cert.detail)
            checked += cert.checked
    assert checked == 9258534
    assert time.perf_counter() - t < 300


@crit(6, "Example 1: 2 (+) 2 is 2")
def test_c6_example_one():
    C = coproduct_bounded(alg2(), alg2())
    assert C.result.n == 2
    assert find_isomorphism(C.result, alg2()) is not None


@crit(7, "Example 2 structure")
def test_c7_example_two():
    report = run_example_suite()
    failing = [c.line() for c in report.checks if not c.ok]
    assert not failing
    names = {c.name for c in report.checks}
    for needed in ("dual of 3 is the 2-chain", "figure's shape", "generated by a and b",
                   "13 figure elements are distinct", "figure order relations",
                   "minus its bottom", "closure oracle"):
        assert any(needed in n for n in names), needed
    assert any("bounded=15 unbounded=14" in line for line in report.log)


@pytest.mark.slow
@crit(8, "coproduct universal property: bounded H,G <= 4 into K <= 6; unbounded H,G <= 3 into K <= 5; < 10 min")
def test_c8_coproduct_universal():
    t = time.perf_counter()
    B = bench.enumerate_bph_algebras(4)
    T = bench.enumerate_bph_algebras(6)
    checked = 0
    for H in B:
        for G in B:
            cert = bench.certify_coproduct_universal(H, G, targets=T, bounded=True)
            assert cert.ok, (H, G, cert.detail)
            checked += cert.checked
    U = [A for A in bench.hilbert_algebras_upto(3) if is_prelinear(A)]
    TU = [A for A in bench.hilbert_algebras_upto(5) if is_prelinear(A)]
    for H in U:
        for G in U:
            cert = bench.certify_coproduct_universal(H, G, targets=TU, bounded=False)
            assert cert.ok, (H, G, cert.detail)
            checked += cert.checked
    # sum of |Hom(H,K)| * |Hom(G,K)| over ordered pairs: 16254 bounded + 12821 unbounded
    assert checked == 29075
    assert time.perf_counter() - t < 600


def _figure_free_godel():
    """The six-element lattice 0 < p, ~p; p < ~~p, p v ~p; ~p < p v ~p; ~~p, p v ~p < 1, with Heyting ->."""
    names = ["0", "p", "~p", "~~p", "pv~p", "1"]
    covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (3, 5), (4, 5)]
    le = [[a == b for b in range(6)] for a in range(6)]
    for a, b in covers:
        le[a][b] = True
    for k in range(6):
        for a in range(6):
            for b in range(6):
                le[a][b] = le[a][b] or (le[a][k] and le[k][b])

    def meet(a, b):
        lower = [c for c in range(6) if le[c][a] and le[c][b]]
        return next(c for c in lower if all(le[d][c] for d in lower))

    imp = [[max((c for c in range(6) if le[meet(c, a)][b]), key=lambda c: sum(le[d][c] for d in range(6)))
            for b in range(6)] for a in range(6)]
    return make_algebra(imp, 5, 0, names)


@crit(9, "free-algebra cross-oracle")
def test_c9_free_oracle():
    F1 = free_algebra_oracle(1, bounded=True)
    assert F1.n == 6
    assert find_isomorphism(F1, _figure_free_godel()) is not None
    two = alg2().without_zero()
    F2 = free_algebra_oracle(2)
    assert find_isomorphism(F2, coproduct_unbounded(two, two).result) is not None


@crit(10, "envelope suite for bounded prelinear H <= 8 with Goedel targets <= 6")
def test_c10_envelope(bph8):
    targets = bench.godel_algebras(6)
    assert len(targets) == 10
    factored = 0
    for H in bph8:
        E, psi = godel_envelope(H)
        assert godel_violation(E) is None and is_prelinear(E.algebra)
        assert len(set(psi.map)) == H.n
        env = envelope(H)
        full = env.downsets[E.algebra.one]
        for i, terms in enumerate(union_of_intersections(H)):
            U = 0
            for term in terms:
                M = full
                for a in term:
                    M &= env.downsets[psi.map[a]]
                U |= M
            assert U == env.downsets[i]
        closure = semilattice_closure(H)
        joins = set(closure)
        grow = True
        while grow:
            new = {E.join[a][b] for a in joins for b in joins} - joins
            joins |= new
            grow = bool(new)
        assert joins == set(range(E.n))
        eta = eta_map(H)
        sE, sH = spectrum(E.algebra), spectrum(H)
        assert sorted(eta) == list(range(len(sH)))
        for i in range(len(sE)):
            for j in range(len(sE)):
                assert sE.order[i][j] == sH.order[eta[i]][eta[j]]
        for G in targets:
            for f in enumerate_homs(H, G.algebra, bounded=True):
                h = factor_through_envelope(G, f)
                fixed = [(psi.map[a], f.map[a]) for a in range(H.n)]
                homs = enumerate_heyting_homs(E, G, fixed=fixed)
                assert len(homs) == 1 and homs[0].map == h.map
                assert all(h.map[psi.map[a]] == f.map[a] for a in range(H.n))
                factored += 1
    assert factored == 20160
