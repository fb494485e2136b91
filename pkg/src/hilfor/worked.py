"""The two worked coproduct examples, reproduced as structural checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .catalog import alg2, alg3
from .coprod import check_generation, coproduct_bounded, coproduct_unbounded, free_algebra_oracle
from .forestspace import HForest, difference_closure, dual_space, hbase_closure, hforest_isomorphism, principal_base
from .hilcore import find_isomorphism, generated_subalgebra, natural_order
from .order import Poset, mask_of

# figure counts for the second example, kept for the report only
FIGURE_BOUNDED = 13
FIGURE_UNBOUNDED = 12


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self):
        tail = f" ({self.detail})" if self.detail else ""
        return f"{self.name}: {'PASS' if self.ok else 'FAIL'}{tail}"


@dataclass
class ExampleReport:
    checks: list = field(default_factory=list)
    log: list = field(default_factory=list)

    @property
    def ok(self):
        return all(c.ok for c in self.checks)

    def add(self, name, ok, detail=""):
        self.checks.append(Check(name, bool(ok), detail))

    def lines(self):
        return [c.line() for c in self.checks] + self.log


def figure_terms(C, a, b):
    """The thirteen labelled elements of the figure, computed in the coproduct C."""
    i = C.imp
    c = i[i[a][b]][b]
    d = i[i[b][a]][a]
    return {
        "1": C.one,
        "0": C.zero,
        "a": a,
        "b": b,
        "a->b": i[a][b],
        "b->a": i[b][a],
        "(a->b)->a": i[i[a][b]][a],
        "(b->a)->b": i[i[b][a]][b],
        "(a->b)->b": c,
        "(b->a)->a": d,
        "d->c": i[d][c],
        "c->d": i[c][d],
        "(b->a)->((a->b)->a)": i[i[b][a]][i[i[a][b]][a]],
    }


# (lower, upper) pairs read off the figure, with c = (a->b)->b and d = (b->a)->a
FIGURE_ORDER = [
    ("d->c", "1"),
    ("(b->a)->((a->b)->a)", "1"),
    ("c->d", "1"),
    ("b->a", "d->c"),
    ("(a->b)->b", "d->c"),
    ("(a->b)->b", "(b->a)->((a->b)->a)"),
    ("(b->a)->a", "(b->a)->((a->b)->a)"),
    ("(b->a)->a", "c->d"),
    ("a->b", "c->d"),
    ("(a->b)->a", "b->a"),
    ("(a->b)->a", "(a->b)->b"),
    ("(b->a)->b", "(b->a)->a"),
    ("(b->a)->b", "a->b"),
    ("a", "(a->b)->a"),
    ("a", "(b->a)->a"),
    ("b", "(b->a)->b"),
    ("b", "(a->b)->b"),
    ("0", "a"),
    ("0", "b"),
]


def _is_figure_tree(P):
    """One minimal node with three upper covers, two of which have exactly one cover each."""
    if P.n != 6:
        return False
    mins = [x for x in range(P.n) if P.down[x].bit_count() == 1]
    if len(mins) != 1:
        return False
    ups = {x: [b for a, b in P.covers if a == x] for x in range(P.n)}
    kids = ups[mins[0]]
    if len(kids) != 3:
        return False
    grand = sorted(len(ups[k]) for k in kids)
    return grand == [0, 1, 1] and all(not ups[g] for k in kids for g in ups[k])


def closure_oracle(space):
    """Smallest h-base on the product forest holding the projection preimages, by saturation."""
    prod = space.product
    P = prod.order
    fam = set(principal_base(P)) | {0, P.full}
    for proj, factor in ((prod.proj1, space.X), (prod.proj2, space.Y)):
        for V in factor.base:
            fam.add(mask_of(i for i, v in enumerate(proj) if V >> v & 1))
    fam = frozenset(fam)
    while True:
        nxt = frozenset(difference_closure(P, hbase_closure(P, fam)))
        if nxt == fam:
            return fam
        fam = nxt


def example_one(report):
    C = coproduct_bounded(alg2(), alg2())
    X = dual_space(alg2())
    report.add("Example 1: dual of 2 is a point", X.n == 1)
    report.add("Example 1: product forest is a point", C.provenance.product.n == 1)
    report.add("Example 1: 2 (+) 2 = 2 up to iso", find_isomorphism(C.result, alg2()) is not None)
    return C


def example_two(report):
    H = alg3()
    X = dual_space(H)
    chain = Poset.from_covers(2, [(0, 1)])
    expected = HForest.make(chain, [0, 0b10, 0b11])
    report.add("Example 2: dual of 3 is the 2-chain", hforest_isomorphism(X, expected) is not None)

    C = coproduct_bounded(H, H)
    space = C.provenance
    report.add("Example 2: product forest has the figure's shape",
               _is_figure_tree(space.product.order), f"{space.product.n} nodes")

    A = C.result
    m = H.index("m")
    a, b = C.injL.map[m], C.injR.map[m]
    gen = generated_subalgebra(A, [a, b], bounded=True)
    report.add("Example 2: bounded coproduct generated by a and b", len(gen) == A.n and check_generation(C))

    terms = figure_terms(A, a, b)
    distinct = len(set(terms.values())) == len(terms)
    report.add("Example 2: the 13 figure elements are distinct", distinct, f"{len(set(terms.values()))} values")
    le = natural_order(A).leq
    bad = [(lo, hi) for lo, hi in FIGURE_ORDER if not le[terms[lo]][terms[hi]]]
    report.add("Example 2: figure order relations hold", not bad, f"violations {bad}" if bad else "")

    two = alg2().without_zero()
    U = coproduct_unbounded(two, two)
    base, emb = U.provenance
    same_base = find_isomorphism(base.result, A) is not None
    minus_bottom = set(emb) == set(range(A.n)) - {base.result.zero}
    report.add("Example 2: unbounded coproduct is the bounded one minus its bottom",
               same_base and minus_bottom and U.result.n == A.n - 1)

    F2 = free_algebra_oracle(2)
    report.add("Example 2: unbounded coproduct is free on two generators",
               find_isomorphism(F2, U.result) is not None, f"oracle size {F2.n}")

    oracle = closure_oracle(space)
    report.add("Example 2: base tensor equals the closure oracle", oracle == space.forest.base_set,
               f"{len(space.forest.base)} sets, oracle {len(oracle)}")
    added = space.added
    report.log.append(f"Example 2: base tensor has {len(space.forest.base)} sets; closure audit added {len(added)}")
    report.log.append(f"Example 2: computed sizes bounded={A.n} unbounded={U.result.n}; "
                      f"figure shows {FIGURE_BOUNDED} and {FIGURE_UNBOUNDED}")
    extra = sorted(set(range(A.n)) - set(terms.values()))
    if extra:
        report.log.append("Example 2: elements beyond the figure: " + ", ".join(A.name(x) for x in extra))
    return C, U


def run_example_suite():
    report = ExampleReport()
    example_one(report)
    example_two(report)
    return report
