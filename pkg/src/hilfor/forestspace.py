"""Finite forests with h-bases and their duality with bounded prelinear Hilbert algebras.

Conventions: the forest order on the spectrum is *reverse* inclusion of filters, so
maximal filters are the roots.  Base sets are upsets of the forest order; algebra
elements are their complements (downsets).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .errors import AxiomError, DomainError, MalformedInputError
from .filters import phi_mask, spectrum
from .hilcore import Algebra, Hom, require_valid
from .order import Poset, bits, find_order_isomorphism, order_isomorphisms, set_key


def subsets_of(mask):
    """All sub-bitmasks of ``mask``, including 0 and ``mask``."""
    out = [0]
    for b in bits(mask):
        out += [s | 1 << b for s in out]
    return out


def normalize_family(family):
    return tuple(sorted(set(family), key=set_key))


@dataclass(frozen=True)
class HForest:
    poset: Poset
    base: tuple  # upset bitmasks, sorted by (size, mask)
    labels: tuple | None = None

    @classmethod
    def make(cls, poset, base, labels=None):
        return cls(poset, normalize_family(base), tuple(labels) if labels is not None else None)

    @property
    def n(self):
        return self.poset.n

    @cached_property
    def base_set(self):
        return frozenset(self.base)

    def name(self, x):
        return self.labels[x] if self.labels else f"n{x}"

    def set_names(self, mask):
        return "{" + ",".join(self.name(x) for x in bits(mask)) + "}"

    def with_base(self, base):
        return HForest.make(self.poset, base, self.labels)


def full_base(P):
    return normalize_family(P.upsets())


def hforest_full(P, labels=None):
    """A forest with every upset in its base."""
    return HForest.make(P, P.upsets(), labels)


def principal_base(P):
    """The least h-base containing the carrier: principal upsets, the carrier and their generated sets."""
    return hbase_closure(P, [P.up[x] for x in range(P.n)] + [0, P.full])


def hbase_closure(P, family):
    """Close a family of upsets under the [M) clause (M a set of minimals of a member)."""
    fam = set(family)
    stack = list(fam)
    while stack:
        B = stack.pop()
        for M in subsets_of(P.minimal(B)):
            U = P.upset(M)
            if U not in fam:
                fam.add(U)
                stack.append(U)
    return normalize_family(fam)


def difference_closure(P, family):
    """Close a family under (B1, B2) -> [B1 minus B2)."""
    fam = set(family)
    changed = True
    while changed:
        changed = False
        cur = list(fam)
        for B1 in cur:
            for B2 in cur:
                U = P.upset(B1 & ~B2)
                if U not in fam:
                    fam.add(U)
                    changed = True
    return normalize_family(fam)


def hbase_violation(P, family):
    """Clause form: every [x) is present, and [M) for M a subset of the minimals of a member."""
    fam = set(family)
    for B in fam:
        if not P.is_upset(B):
            return ("upset", B)
    for x in range(P.n):
        if P.up[x] not in fam:
            return ("principal", x)
    for B in sorted(fam, key=set_key):
        for M in subsets_of(P.minimal(B)):
            if P.upset(M) not in fam:
                return ("minimal-subsets", (B, M))
    return None


def difference_violation(P, family):
    """Closure form: every [x) is present, and [B1 minus B2) for all members."""
    fam = set(family)
    for B in fam:
        if not P.is_upset(B):
            return ("upset", B)
    for x in range(P.n):
        if P.up[x] not in fam:
            return ("principal", x)
    ordered = sorted(fam, key=set_key)
    for B1 in ordered:
        # B1 minus B2 has its minimal points among those of B1, so both give the same upset
        mins = P.minimal(B1)
        for M in {mins & ~B2 for B2 in ordered}:
            U = P.upset(M)
            if U not in fam:
                B2 = next(B for B in ordered if mins & ~B == M)
                return ("difference", (B1, B2))
    return None


def is_hbase(P, family):
    return hbase_violation(P, family) is None


def is_hbase_closure_form(P, family):
    return difference_violation(P, family) is None


@dataclass
class ForestReport:
    valid: bool
    failure: tuple | None = None

    def message(self):
        return "valid" if self.valid else f"{self.failure[0]} fails at {self.failure[1]}"


def validate_forest_space(FS):
    P = FS.poset
    problem = P.order_violation()
    if problem:
        return ForestReport(False, ("order", problem))
    for x in range(P.n):
        if not P.is_chain_mask(P.down[x]):
            return ForestReport(False, ("forest", x))
    if P.full not in FS.base_set:
        return ForestReport(False, ("carrier", P.full))
    bad = hbase_violation(P, FS.base)
    if bad:
        return ForestReport(False, bad)
    bad = difference_violation(P, FS.base)
    if bad:
        return ForestReport(False, bad)
    return ForestReport(True)


@lru_cache(maxsize=4096)
def _forest_report(FS):
    return validate_forest_space(FS)


def require_valid_forest(FS):
    report = _forest_report(FS)
    if not report.valid:
        raise AxiomError(f"invalid forest space: {report.message()}", report)


# -- objects ---------------------------------------------------------------------


def _dual_poset(spec):
    m = len(spec.points)
    return Poset(m, tuple(tuple(spec.order[j][i] for j in range(m)) for i in range(m)))


def dual_space(H, cap=None):
    """Spectrum of a bounded prelinear H, ordered by reverse inclusion, with base {phi(a)^c}."""
    require_valid(H)
    if H.zero is None:
        raise DomainError("dual_space needs a bounded algebra")
    spec = spectrum(H, cap)
    P = _dual_poset(spec)
    if not P.is_forest():
        raise DomainError("spectrum is not a root system, so the algebra is not prelinear")
    base = [P.full & ~phi_mask(H, a, spec) for a in range(H.n)]
    return HForest.make(P, base, tuple(f"P{k}" for k in range(P.n)))


@lru_cache(maxsize=2048)
def _algebra_of(FS):
    P = FS.poset
    elems = sorted((P.full & ~B for B in FS.base), key=set_key)
    pos = {U: i for i, U in enumerate(elems)}
    imp = []
    for U in elems:
        row = []
        for V in elems:
            W = P.full & ~P.upset(U & ~V)
            if W not in pos:
                raise MalformedInputError("base not closed: implication leaves the universe")
            row.append(pos[W])
        imp.append(tuple(row))
    labels = tuple(FS.set_names(U) for U in elems)
    return Algebra(len(elems), tuple(imp), pos[P.full], pos[0], labels, trusted=True), tuple(elems)


def algebra_of(FS, check=True):
    """Bounded prelinear algebra of downsets whose complements lie in the base."""
    if check:
        require_valid_forest(FS)
    return _algebra_of(FS)[0]


def algebra_elements(FS):
    """Downset bitmask of every element of ``algebra_of(FS)``, by index."""
    return _algebra_of(FS)[1]


def element_index(FS):
    return {U: i for i, U in enumerate(algebra_elements(FS))}


def phi_hom(H, cap=None):
    """The isomorphism a -> phi(a) from H onto algebra_of(dual_space(H))."""
    X = dual_space(H, cap)
    A = algebra_of(X)
    idx = element_index(X)
    spec = spectrum(H, cap)
    return Hom(H, A, tuple(idx[phi_mask(H, a, spec)] for a in range(H.n)))


def epsilon_map(FS, cap=None):
    """Node x -> the irreducible filter {U : x in U} of algebra_of(FS), as a point index."""
    A = algebra_of(FS)
    elems = algebra_elements(FS)
    spec = spectrum(A, cap)
    out = []
    for x in range(FS.n):
        members = frozenset(i for i, U in enumerate(elems) if U >> x & 1)
        out.append(spec.index(members))
    return tuple(out)


def is_hforest_isomorphism(A, B, f):
    P, Q = A.poset, B.poset
    if P.n != Q.n or sorted(f) != list(range(P.n)):
        return False
    if any(P.leq[a][b] != Q.leq[f[a]][f[b]] for a in range(P.n) for b in range(P.n)):
        return False
    image = {sum(1 << f[x] for x in bits(U)) for U in A.base}
    return image == B.base_set


def hforest_isomorphism(A, B):
    """Order isomorphism carrying the base of A onto the base of B, or None."""
    if A.n != B.n or len(A.base) != len(B.base):
        return None
    for f in order_isomorphisms(A.poset, B.poset):
        image = {sum(1 << f[x] for x in bits(U)) for U in A.base}
        if image == B.base_set:
            return f
    return None


# -- morphisms -------------------------------------------------------------------


@dataclass(frozen=True)
class ForestMap:
    src: HForest
    dst: HForest
    map: tuple

    def __call__(self, x):
        return self.map[x]

    def preimage(self, mask):
        out = 0
        for x, y in enumerate(self.map):
            if mask >> y & 1:
                out |= 1 << x
        return out

    def then(self, g):
        return ForestMap(self.src, g.dst, tuple(g.map[y] for y in self.map))


@dataclass(frozen=True)
class ForestRelation:
    src: HForest
    dst: HForest
    rel: tuple  # rel[x] is the bitmask of R(x)

    def matrix(self):
        return tuple(tuple(bool(r >> y & 1) for y in range(self.dst.n)) for r in self.rel)

    def preimage(self, mask):
        """R^{-1}(U) = {x : R(x) meets U}."""
        out = 0
        for x, r in enumerate(self.rel):
            if r & mask:
                out |= 1 << x
        return out


def is_order_preserving(P, Q, f):
    return all(Q.leq[f[a]][f[b]] for a in range(P.n) for b in range(P.n) if P.leq[a][b])


def is_open(P, Q, f):
    """f((x]) = (f(x)] for every x."""
    for x in range(P.n):
        img = 0
        for z in bits(P.down[x]):
            img |= 1 << f[z]
        if img != Q.down[f[x]]:
            return False
    return True


def is_hfor_morphism(m):
    P, Q = m.src.poset, m.dst.poset
    f = m.map
    if len(f) != P.n or any(not 0 <= y < Q.n for y in f):
        return False
    if not is_order_preserving(P, Q, f) or not is_open(P, Q, f):
        return False
    return all(m.preimage(U) in m.src.base_set for U in m.dst.base)


def is_chfor_morphism(R):
    P, Q = R.src.poset, R.dst.poset
    rows = R.rel
    if len(rows) != P.n:
        return False
    for x in range(P.n):
        r = rows[x]
        if not r or not Q.is_downset(r):
            return False
    for x in range(P.n):
        for y in bits(rows[x]):
            if not any(rows[z] == Q.down[y] for z in bits(P.down[x])):
                return False
    return all(R.preimage(U) in R.src.base_set for U in R.dst.base)


def identity_map(FS):
    return ForestMap(FS, FS, tuple(range(FS.n)))


def relation_of_map(m):
    """(x, y) in R iff y <= f(x)."""
    Q = m.dst.poset
    return ForestRelation(m.src, m.dst, tuple(Q.down[y] for y in m.map))


def map_of_relation(R):
    """f(x) = max R(x); the maximum must exist."""
    Q = R.dst.poset
    out = []
    for x, r in enumerate(R.rel):
        tops = [y for y in bits(r) if Q.down[y] & r == r]
        if len(tops) != 1:
            raise DomainError(f"R({R.src.name(x)}) has no maximum")
        out.append(tops[0])
    return ForestMap(R.src, R.dst, tuple(out))


def open_order_maps(P, Q):
    """Yield every order-preserving open map P -> Q as a tuple."""
    order = P.linear_extension()
    f = [-1] * P.n

    def rec(k):
        if k == P.n:
            yield tuple(f)
            return
        x = order[k]
        below = [z for z in bits(P.down[x]) if z != x]
        for y in range(Q.n):
            if any(not Q.leq[f[z]][y] for z in below):
                continue
            img = 1 << y
            for z in below:
                img |= 1 << f[z]
            if img != Q.down[y]:
                continue
            f[x] = y
            yield from rec(k + 1)
            f[x] = -1

    yield from rec(0)


def enumerate_forest_maps(X, Y):
    """All hFor morphisms X -> Y (open order maps pulling base sets back into the base)."""
    out = []
    for f in open_order_maps(X.poset, Y.poset):
        m = ForestMap(X, Y, f)
        if all(m.preimage(U) in X.base_set for U in Y.base):
            out.append(m)
    return out


def enumerate_forest_relations(X, Y):
    """All ChFor morphisms X -> Y, searched independently of the map enumeration."""
    P, Q = X.poset, Y.poset
    downs = [D for D in Q.downsets() if D]
    order = P.linear_extension()
    rows = [0] * P.n
    out = []

    def rec(k):
        if k == P.n:
            R = ForestRelation(X, Y, tuple(rows))
            if all(R.preimage(U) in X.base_set for U in Y.base):
                out.append(R)
            return
        x = order[k]
        earlier = {rows[z] for z in bits(P.down[x]) if z != x}
        for D in downs:
            if all(Q.down[y] in earlier or Q.down[y] == D for y in bits(D)):
                rows[x] = D
                rec(k + 1)
        rows[x] = 0

    rec(0)
    return out


def dual_of_hom(f, cap=None):
    """Forest map dual(K) -> dual(H), P -> f^{-1}(P), for a bounded hom f: H -> K."""
    H, K = f.src, f.dst
    XH, XK = dual_space(H, cap), dual_space(K, cap)
    sH, sK = spectrum(H, cap), spectrum(K, cap)
    out = []
    for P in sK.points:
        pre = frozenset(a for a in range(H.n) if f.map[a] in P.members)
        out.append(sH.index(pre))
    return ForestMap(XK, XH, tuple(out))


def hom_of_map(m):
    """Hom algebra_of(m.dst) -> algebra_of(m.src), U -> m^{-1}(U)."""
    X, Y = m.dst, m.src
    A, B = algebra_of(X), algebra_of(Y)
    idx = element_index(Y)
    out = []
    for U in algebra_elements(X):
        W = m.preimage(U)
        if W not in idx:
            raise DomainError("map does not pull base sets back into the base")
        out.append(idx[W])
    return Hom(A, B, tuple(out))


def find_forest_order_isomorphism(P, Q):
    return find_order_isomorphism(P, Q)
