"""Finite Hilbert algebras given by implication tables.

Elements are the indices ``0..n-1``; ``imp[a][b]`` is the index of ``a -> b``.
Labels only matter for printing and parsing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product

from . import config
from .errors import AxiomError, DomainError, MalformedInputError, NotASemilatticeError, ResourceLimitError
from .order import Poset, bits, mask_of


@dataclass(frozen=True)
class Algebra:
    n: int
    imp: tuple
    one: int
    zero: int | None = None
    labels: tuple | None = None
    trusted: bool = field(default=False, compare=False, repr=False)

    @property
    def bounded(self):
        return self.zero is not None

    def name(self, a):
        return self.labels[a] if self.labels else f"e{a}"

    def names(self, elems):
        return [self.name(a) for a in sorted(elems)]

    def index(self, label):
        if self.labels is None:
            raise KeyError(label)
        return self._label_index[label]

    @cached_property
    def _label_index(self):
        return {lab: i for i, lab in enumerate(self.labels)}

    def i(self, a, b):
        return self.imp[a][b]

    def leq(self, a, b):
        return self.imp[a][b] == self.one

    def with_zero(self, zero):
        return Algebra(self.n, self.imp, self.one, zero, self.labels, trusted=self.trusted)

    def without_zero(self):
        return Algebra(self.n, self.imp, self.one, None, self.labels, trusted=self.trusted)

    def relabel(self, labels):
        return Algebra(self.n, self.imp, self.one, self.zero, tuple(labels), trusted=self.trusted)


def make_algebra(table, one, zero=None, labels=None):
    """Build an Algebra from a hand-written table, raising on any axiom failure."""
    report = validate_algebra(table, one, zero)
    if not report.valid:
        raise AxiomError(report.message(), report)
    n = len(table)
    return Algebra(n, tuple(tuple(row) for row in table), one, zero,
                   tuple(labels) if labels is not None else None, trusted=True)


@dataclass
class ValidationReport:
    valid: bool
    checked: list
    failure: tuple | None = None  # (axiom, witness)

    def message(self):
        if self.valid:
            return "valid"
        axiom, witness = self.failure
        return f"axiom {axiom} fails at {witness}"


AXIOMS = ("a", "b", "c", "zero")


def validate_algebra(table, one, zero=None):
    n = len(table)
    if n == 0:
        raise MalformedInputError("empty table")
    for r, row in enumerate(table):
        if len(row) != n:
            raise MalformedInputError(f"row {r} has {len(row)} entries, expected {n}")
        for c, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise MalformedInputError(f"entry ({r}, {c}) = {v!r} out of range")
    for name, v in (("one", one), ("zero", zero)):
        if v is not None and not (isinstance(v, int) and 0 <= v < n):
            raise MalformedInputError(f"{name} index {v!r} out of range")
    imp = table
    checked = ["a", "b", "c"] + (["zero"] if zero is not None else [])
    for a in range(n):
        for b in range(n):
            if imp[a][imp[b][a]] != one:
                return ValidationReport(False, checked, ("a", (a, b)))
    for a in range(n):
        for b in range(n):
            ab = imp[a][b]
            for c in range(n):
                lhs = imp[a][imp[b][c]]
                rhs = imp[ab][imp[a][c]]
                if imp[lhs][rhs] != one:
                    return ValidationReport(False, checked, ("b", (a, b, c)))
    for a in range(n):
        for b in range(a + 1, n):
            if imp[a][b] == one and imp[b][a] == one:
                return ValidationReport(False, checked, ("c", (a, b)))
    if zero is not None:
        for a in range(n):
            if imp[zero][a] != one:
                return ValidationReport(False, checked, ("zero", (a,)))
    return ValidationReport(True, checked)


@lru_cache(maxsize=8192)
def _checked(H):
    return validate_algebra(H.imp, H.one, H.zero)


def require_valid(H):
    if H.trusted:
        return
    report = _checked(H)
    if not report.valid:
        raise AxiomError(report.message(), report)


@lru_cache(maxsize=8192)
def natural_order(H):
    require_valid(H)
    n = H.n
    return Poset(n, tuple(tuple(H.imp[a][b] == H.one for b in range(n)) for a in range(n)))


def derived_law_violation(H):
    """First instance where one of the standard derived Hilbert identities fails, else None."""
    imp, one, n = H.imp, H.one, H.n
    le = natural_order(H).leq
    for a in range(n):
        if imp[a][a] != one:
            return ("a->a=1", (a,))
        if imp[one][a] != a:
            return ("1->a=a", (a,))
    for a, b, c in product(range(n), repeat=3):
        abc = imp[a][imp[b][c]]
        if abc != imp[b][imp[a][c]]:
            return ("exchange", (a, b, c))
        if abc != imp[imp[a][b]][imp[a][c]]:
            return ("self-distributivity", (a, b, c))
        if le[a][b]:
            if not le[imp[c][a]][imp[c][b]]:
                return ("c->a<=c->b", (a, b, c))
            if not le[imp[b][c]][imp[a][c]]:
                return ("b->c<=a->c", (a, b, c))
    return None


def l_term(H, a, b, c):
    """((a->b)->c) -> (((b->a)->c) -> c)."""
    i = H.imp
    return i[i[i[a][b]][c]][i[i[i[b][a]][c]][c]]


def check_prelinear(H):
    """None when every l(a,b,c) is 1, otherwise the first falsifying triple."""
    require_valid(H)
    n = H.n
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if l_term(H, a, b, c) != H.one:
                    return (a, b, c)
    return None


def is_prelinear(H):
    return check_prelinear(H) is None


def join(H, a, b):
    """Least upper bound of a and b in the natural order, or None."""
    le = natural_order(H).leq
    ubs = [c for c in range(H.n) if le[a][c] and le[b][c]]
    for c in ubs:
        if all(le[c][d] for d in ubs):
            return c
    return None


def meet(H, a, b):
    le = natural_order(H).leq
    lbs = [c for c in range(H.n) if le[c][a] and le[c][b]]
    for c in lbs:
        if all(le[d][c] for d in lbs):
            return c
    return None


def meet_table(H):
    n = H.n
    rows = []
    for a in range(n):
        row = []
        for b in range(n):
            m = meet(H, a, b)
            if m is None:
                raise NotASemilatticeError(f"{H.name(a)} and {H.name(b)} have no meet")
            row.append(m)
        rows.append(tuple(row))
    return tuple(rows)


def godel_join_formula(H, a, b):
    """((a->b)->b) meet ((b->a)->a); equals the join in a prelinear meet-semilattice."""
    i = H.imp
    x = i[i[a][b]][b]
    y = i[i[b][a]][a]
    m = meet(H, x, y)
    if m is None:
        raise NotASemilatticeError(f"{H.name(x)} and {H.name(y)} have no meet")
    return m


def _closure(n, ops, seed):
    """Least superset of ``seed`` (bitmask) closed under the binary tables in ``ops``."""
    S = seed
    frontier = bits(S)
    members = list(frontier)
    while frontier:
        new = []
        for x in frontier:
            for y in members:
                for t in ops:
                    for z in (t[x][y], t[y][x]):
                        if not S >> z & 1:
                            S |= 1 << z
                            new.append(z)
            # pairs among the frontier are covered because members already contains it
        members.extend(new)
        frontier = new
    return S


def generated_subalgebra(H, S, bounded=False):
    """Least subset containing S and 1 (and 0 if ``bounded``) closed under ->."""
    require_valid(H)
    seed = mask_of(S) | 1 << H.one
    if bounded:
        if H.zero is None:
            raise DomainError("bounded closure requested for an algebra without zero")
        seed |= 1 << H.zero
    return frozenset(bits(_closure(H.n, [H.imp], seed)))


def generating_set(n, ops, base, order=None):
    """Greedy generating set: scan elements, keep those outside the current closure."""
    cur = _closure(n, ops, base) if base else 0
    gens = []
    for x in order if order is not None else range(n):
        if not cur >> x & 1:
            gens.append(x)
            cur = _closure(n, ops, cur | 1 << x)
    return gens


def subalgebra(H, S):
    """Restrict H to a ->-closed subset S. Returns (algebra, embedding) with sorted indices."""
    elems = sorted(S)
    pos = {a: k for k, a in enumerate(elems)}
    try:
        imp = tuple(tuple(pos[H.imp[a][b]] for b in elems) for a in elems)
    except KeyError:
        raise DomainError("subset is not closed under implication") from None
    if H.one not in pos:
        raise DomainError("subset does not contain 1")
    zero = pos.get(H.zero) if H.zero is not None else None
    labels = tuple(H.name(a) for a in elems) if H.labels else None
    return Algebra(len(elems), imp, pos[H.one], zero, labels, trusted=True), tuple(elems)


def theta_classes(H, F):
    members = set(F)
    classes = []
    seen = set()
    for a in range(H.n):
        if a in seen:
            continue
        cls = [b for b in range(H.n) if H.imp[a][b] in members and H.imp[b][a] in members]
        seen.update(cls)
        classes.append(tuple(cls))
    return classes


def _require_filter(H, F):
    members = set(F)
    if H.one not in members:
        raise MalformedInputError("not a filter: 1 missing")
    for a in members:
        for b in range(H.n):
            if H.imp[a][b] in members and b not in members:
                raise MalformedInputError(f"not a filter: not closed under modus ponens at ({a}, {b})")


def quotient_hom(H, F):
    """Class map H -> H/F; classes are ordered by their least member."""
    require_valid(H)
    F = getattr(F, "members", F)
    _require_filter(H, F)
    classes = theta_classes(H, F)
    cls_of = [0] * H.n
    for k, cls in enumerate(classes):
        for a in cls:
            cls_of[a] = k
    imp = tuple(tuple(cls_of[H.imp[c[0]][d[0]]] for d in classes) for c in classes)
    labels = None
    if H.labels:
        labels = tuple("/".join(H.name(a) for a in c) if len(c) > 1 else H.name(c[0]) for c in classes)
    zero = cls_of[H.zero] if H.zero is not None else None
    Q = Algebra(len(classes), imp, cls_of[H.one], zero, labels, trusted=True)
    return Hom(H, Q, tuple(cls_of))


def quotient(H, F):
    return quotient_hom(H, F).dst


@dataclass(frozen=True)
class Hom:
    src: Algebra
    dst: Algebra
    map: tuple

    def __call__(self, a):
        return self.map[a]

    def image(self):
        return frozenset(self.map)

    def then(self, g):
        """g after self."""
        return Hom(self.src, g.dst, tuple(g.map[x] for x in self.map))


def compose(g, f):
    """g o f."""
    return f.then(g)


def identity_hom(H):
    return Hom(H, H, tuple(range(H.n)))


def is_homomorphism(f, H, K, bounded=False):
    f = getattr(f, "map", f)
    if len(f) != H.n or any(not 0 <= v < K.n for v in f):
        return False
    if f[H.one] != K.one:
        return False
    if bounded:
        if H.zero is None or K.zero is None or f[H.zero] != K.zero:
            return False
    for a in range(H.n):
        for b in range(H.n):
            if f[H.imp[a][b]] != K.imp[f[a]][f[b]]:
                return False
    return True


def hom_search(n_src, n_dst, ops, constants, gens, candidates=None, injective=False, fixed=None, cap=None):
    """Yield every map src -> dst preserving the binary ``ops`` and ``constants``.

    ``ops`` is a list of (src_table, dst_table); ``constants`` and ``fixed`` are
    (src, dst) pairs; ``gens`` together with the constants must generate the source.
    Assignments are propagated through the operations so the search only branches on
    generators.
    """
    limit = config.cap("homs", cap)
    f = [-1] * n_src
    used = [0] * n_dst
    dom = []
    visited = 0

    def assign(x, v):
        stack = [(x, v)]
        while stack:
            x, v = stack.pop()
            fx = f[x]
            if fx >= 0:
                if fx != v:
                    return False
                continue
            if injective and used[v]:
                return False
            if candidates is not None and v not in candidates[x]:
                return False
            f[x] = v
            used[v] += 1
            dom.append(x)
            for y in dom:
                fy = f[y]
                for ts, td in ops:
                    stack.append((ts[x][y], td[v][fy]))
                    stack.append((ts[y][x], td[fy][v]))
        return True

    def undo(mark):
        while len(dom) > mark:
            x = dom.pop()
            used[f[x]] -= 1
            f[x] = -1

    for s, d in list(constants) + list(fixed or ()):
        if not assign(s, d):
            return
    order = [g for g in gens if f[g] < 0]

    def rec(k):
        nonlocal visited
        visited += 1
        if visited > limit:
            raise ResourceLimitError(f"hom search exceeded {limit} nodes")
        if k == len(order):
            if len(dom) != n_src:
                raise AssertionError("generators do not generate the source")
            yield tuple(f)
            return
        g = order[k]
        if f[g] >= 0:
            yield from rec(k + 1)
            return
        for v in range(n_dst):
            mark = len(dom)
            if assign(g, v):
                yield from rec(k + 1)
            undo(mark)

    yield from rec(0)


def _constants(H, K, bounded):
    consts = [(H.one, K.one)]
    if bounded:
        if H.zero is None or K.zero is None:
            raise DomainError("bounded homs need a zero on both sides")
        consts.append((H.zero, K.zero))
    return consts


@lru_cache(maxsize=4096)
def _gens(H, bounded):
    base = 1 << H.one
    if bounded:
        base |= 1 << H.zero
    return tuple(generating_set(H.n, [H.imp], base))


def iter_homs(H, K, bounded=False, fixed=None, cap=None):
    require_valid(H)
    require_valid(K)
    for m in hom_search(H.n, K.n, [(H.imp, K.imp)], _constants(H, K, bounded), _gens(H, bounded),
                        fixed=fixed, cap=cap):
        yield Hom(H, K, m)


def enumerate_homs(H, K, bounded=False, fixed=None, cap=None):
    """All homomorphisms H -> K (preserving 0 as well when ``bounded``)."""
    return list(iter_homs(H, K, bounded, fixed, cap))


def _signature(H):
    P = natural_order(H)
    return [(P.down[x].bit_count(), P.up[x].bit_count(),
             sum(1 for y in range(H.n) if H.imp[x][y] == y)) for x in range(H.n)]


def algebra_invariant(H):
    return (H.n, tuple(sorted(_signature(H))))


def find_isomorphism(H, K):
    """A bijective homomorphism H -> K, or None."""
    if H.n != K.n:
        return None
    require_valid(H)
    require_valid(K)
    sh, sk = _signature(H), _signature(K)
    if sorted(sh) != sorted(sk):
        return None
    candidates = [frozenset(b for b in range(K.n) if sk[b] == sh[a]) for a in range(H.n)]
    gens = generating_set(H.n, [H.imp], 1 << H.one,
                          order=sorted(range(H.n), key=lambda x: len(candidates[x])))
    for m in hom_search(H.n, K.n, [(H.imp, K.imp)], [(H.one, K.one)], gens,
                        candidates=candidates, injective=True):
        return Hom(H, K, m)
    return None


def is_isomorphic(H, K):
    return find_isomorphism(H, K) is not None


def inverse_hom(f):
    inv = [0] * len(f.map)
    for a, b in enumerate(f.map):
        inv[b] = a
    return Hom(f.dst, f.src, tuple(inv))
