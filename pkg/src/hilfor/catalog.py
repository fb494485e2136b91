"""Small named algebras used by tests, examples and the CLI."""

from .hilcore import Algebra
from .order import Poset, bits, set_key


def trivial(bounded=True):
    """The one-element algebra (0 = 1 when bounded)."""
    return Algebra(1, ((0,),), 0, 0 if bounded else None, ("1",), trusted=True)


def godel_chain(k, bounded=True, labels=None):
    """Implication reduct of the k-element Goedel chain 0 < ... < k-1."""
    imp = tuple(tuple(k - 1 if x <= y else y for y in range(k)) for x in range(k))
    if labels is None:
        if k == 2:
            labels = ("0", "1")
        elif k == 3:
            labels = ("0", "m", "1")
        else:
            labels = tuple(["0"] + [f"c{i}" for i in range(1, k - 1)] + ["1"])
    return Algebra(k, imp, k - 1, 0 if bounded else None, tuple(labels), trusted=True)


def alg2():
    return godel_chain(2)


def alg3():
    return godel_chain(3)


def upset_heyting(P, labels=None):
    """Heyting implication reduct of the upsets of P: U->V = {x : [x) & U <= V}."""
    ups = sorted(P.upsets(), key=set_key)
    pos = {u: i for i, u in enumerate(ups)}
    imp = []
    for U in ups:
        row = []
        for V in ups:
            W = 0
            for x in range(P.n):
                if P.up[x] & U & ~V == 0:
                    W |= 1 << x
            row.append(pos[W])
        imp.append(tuple(row))
    if labels is None:
        labels = tuple("{" + ",".join(str(x) for x in bits(u)) + "}" for u in ups)
    return Algebra(len(ups), tuple(imp), pos[P.full], pos[0], tuple(labels), trusted=True)


def lambda5():
    """Upsets of r < p, r < q: the smallest non-prelinear Heyting algebra."""
    P = Poset.from_covers(3, [(2, 0), (2, 1)])  # 0 = p, 1 = q, 2 = r
    names = {0: "e", 0b001: "p", 0b010: "q", 0b011: "pq", 0b111: "pqr"}
    ups = sorted(P.upsets(), key=set_key)
    return upset_heyting(P, labels=tuple(names[u] for u in ups))


def boolean4():
    """Implication reduct of the four-element Boolean algebra."""
    P = Poset.from_covers(2, [])
    return upset_heyting(P, labels=("0", "a", "b", "1"))


def vee3():
    """Three-element prelinear algebra {a, b, 1} with a->b = b and b->a = a (no zero)."""
    imp = ((2, 1, 2), (0, 2, 2), (0, 1, 2))
    return Algebra(3, imp, 2, None, ("a", "b", "1"), trusted=True)
