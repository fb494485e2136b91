"""Enumeration of small objects up to isomorphism and exhaustive certification harnesses."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product

from . import config
from .coprod import (
    coproduct_bounded,
    coproduct_unbounded,
    hom_zero_extension,
    mediator_bounded,
    mediator_unbounded,
    zero_extension,
)
from .errors import DomainError, ResourceLimitError
from .forestspace import (
    HForest,
    algebra_of,
    difference_closure,
    difference_violation,
    dual_of_hom,
    dual_space,
    enumerate_forest_maps,
    hbase_closure,
    hbase_violation,
    is_open,
    is_order_preserving,
    open_order_maps,
    principal_base,
)
from .filters import phi_mask, spectrum
from .freeext import as_godel, godel_violation
from .hilcore import Algebra, Hom, algebra_invariant, enumerate_homs, find_isomorphism, is_prelinear, validate_algebra
from .order import Poset, bits, order_isomorphisms, set_key
from .tensor import mediator_map, product_space


@dataclass
class EnumerationReport:
    size: int
    count: int
    representatives: list
    seconds: float

    def summary(self):
        return f"size={self.size} count={self.count} seconds={self.seconds:.3f}"


# -- forests ---------------------------------------------------------------------


@lru_cache(maxsize=None)
def _tree_codes(m):
    """Canonical codes of rooted trees with m nodes: '(' + children codes sorted + ')'."""
    return tuple(sorted("(" + "".join(f) + ")" for f in _forest_codes(m - 1)))


@lru_cache(maxsize=None)
def _forest_codes(n):
    """Forests with n nodes as nondecreasing tuples of tree codes."""
    out = []

    def rec(left, max_code, acc):
        if left == 0:
            out.append(tuple(acc))
            return
        for size in range(1, left + 1):
            for code in _tree_codes(size):
                if max_code is not None and (len(code), code) > max_code:
                    continue
                acc.append(code)
                rec(left - size, (len(code), code), acc)
                acc.pop()

    rec(n, None, [])
    return tuple(out)


def _poset_of_code(codes):
    """Roots are minimal; a node lies below every node of its subtree."""
    parent = []

    def build(code, i, par):
        # code[i] == '('
        me = len(parent)
        parent.append(par)
        i += 1
        while code[i] == "(":
            i = build(code, i, me)
        return i + 1

    for code in codes:
        build(code, 0, -1)
    n = len(parent)
    leq = [[False] * n for _ in range(n)]
    for b in range(n):
        a = b
        while a != -1:
            leq[a][b] = True
            a = parent[a]
    return Poset(n, tuple(tuple(r) for r in leq))


def enumerate_forests(n, cap=None):
    """All forests with n nodes up to isomorphism (roots are the minimal elements)."""
    limit = config.cap("forests", cap)
    if n > limit:
        raise ResourceLimitError(f"forest enumeration capped at {limit} nodes")
    return [_poset_of_code(c) for c in _forest_codes(n)]


# -- h-bases ---------------------------------------------------------------------


def _close(P, fam):
    fam = frozenset(fam)
    while True:
        nxt = frozenset(difference_closure(P, hbase_closure(P, fam)))
        if nxt == fam:
            return fam
        fam = nxt


def enumerate_hbases(P, max_size=None, cap=None):
    """Every h-base (with the carrier) on the forest P, optionally of at most ``max_size`` sets."""
    limit = config.cap("hbase_forest", cap)
    if P.n > limit and max_size is None:
        raise ResourceLimitError(f"h-base enumeration capped at {limit} nodes")
    ups = P.upsets()
    start = _close(P, principal_base(P))
    if max_size is not None and len(start) > max_size:
        return []
    seen = {start}
    queue = [start]
    while queue:
        nxt = []
        for fam in queue:
            for U in ups:
                if U in fam:
                    continue
                g = _close(P, fam | {U})
                if g in seen or (max_size is not None and len(g) > max_size):
                    continue
                seen.add(g)
                nxt.append(g)
        queue = nxt
    out = []
    for fam in seen:
        fam = tuple(sorted(fam, key=set_key))
        if hbase_violation(P, fam) is None and difference_violation(P, fam) is None:
            out.append(fam)
    return sorted(out, key=lambda f: (len(f), f))


def _family_canon(P, fam, autos):
    best = None
    for f in autos:
        img = tuple(sorted((sum(1 << f[x] for x in bits(U)) for U in fam), key=set_key))
        if best is None or img < best:
            best = img
    return best


def enumerate_hforests(max_n, max_base=None, min_n=1, cap=None):
    """(forest, h-base) pairs up to isomorphism for min_n <= nodes <= max_n."""
    out = []
    for n in range(min_n, max_n + 1):
        for P in enumerate_forests(n, cap=max(n, config.cap("forests", cap))):
            autos = list(order_isomorphisms(P, P))
            seen = set()
            for fam in enumerate_hbases(P, max_base, cap=max(n, config.cap("hbase_forest", cap))):
                key = _family_canon(P, fam, autos)
                if key in seen:
                    continue
                seen.add(key)
                out.append(HForest.make(P, fam))
    return out


# -- algebras --------------------------------------------------------------------


def dedupe_algebras(algs):
    reps = []
    buckets = defaultdict(list)
    for A in algs:
        key = algebra_invariant(A)
        if any(find_isomorphism(B, A) is not None for B in buckets[key]):
            continue
        buckets[key].append(A)
        reps.append(A)
    return reps


@lru_cache(maxsize=None)
def _bph(n):
    algs = []
    for FS in enumerate_hforests(max(n - 1, 0), max_base=n, min_n=0, cap=max(n, 7)):
        algs.append(algebra_of(FS))
    return tuple(sorted(dedupe_algebras(algs), key=lambda A: (A.n, A.imp)))


def enumerate_bph_algebras(n, cap=None):
    """Bounded prelinear Hilbert algebras with at most n elements, up to isomorphism."""
    limit = config.cap("bph", cap)
    if n > limit:
        raise ResourceLimitError(f"bounded prelinear enumeration capped at {limit} elements")
    return list(_bph(n))


def godel_algebras(n):
    """Goedel algebras with at most n elements, as GodelAlgebra values."""
    out = []
    for A in enumerate_bph_algebras(n):
        try:
            G = as_godel(A)
        except DomainError:
            continue
        if godel_violation(G) is None:
            out.append(G)
    return out


# -- Hilbert model finder --------------------------------------------------------


@lru_cache(maxsize=None)
def _posets(m):
    """Posets on m points up to isomorphism, grown by adding a maximal point over a downset."""
    if m == 0:
        return (Poset(0, ()),)
    out = {}
    for P in _posets(m - 1):
        for D in P.downsets():
            leq = [list(r) + [bool(D >> a & 1)] for a, r in enumerate(P.leq)]
            leq.append([False] * m)
            leq[m - 1][m - 1] = True
            Q = Poset(m, tuple(tuple(r) for r in leq))
            key = _poset_canon(Q)
            out.setdefault(key, Q)
    return tuple(out[k] for k in sorted(out))


def _poset_canon(P):
    """Least up-mask tuple over relabellings that sort points by (down size, up size)."""
    sig = [(P.down[x].bit_count(), P.up[x].bit_count()) for x in range(P.n)]
    classes = defaultdict(list)
    for x in range(P.n):
        classes[sig[x]].append(x)
    keys = sorted(classes)
    best = None
    for choice in product(*(permutations(classes[k]) for k in keys)):
        order = [x for grp in choice for x in grp]
        perm = [0] * P.n
        for i, x in enumerate(order):
            perm[x] = i
        key = P.relabel(perm).up
        if best is None or key < best:
            best = key
    return best


def _with_top(P):
    n = P.n + 1
    leq = [list(r) + [True] for r in P.leq] + [[False] * P.n + [True]]
    return Poset(n, tuple(tuple(r) for r in leq))


def _fill_tables(Q):
    n, top = Q.n, Q.n - 1
    le = Q.leq
    imp = [[top if le[a][b] else -1 for b in range(n)] for a in range(n)]
    holes = [(a, b) for a in range(n) for b in range(n) if not le[a][b]]
    cands = {(a, b): [c for c in range(n) if le[b][c] and c != top and not le[a][c]] for a, b in holes}

    def consistent(a, b, v):
        # monotone in the second argument, antitone in the first
        for c in range(n):
            w = imp[a][c]
            if w >= 0:
                if le[b][c] and not le[v][w]:
                    return False
                if le[c][b] and not le[w][v]:
                    return False
            w = imp[c][b]
            if w >= 0:
                if le[a][c] and not le[w][v]:
                    return False
                if le[c][a] and not le[v][w]:
                    return False
        w = imp[a][v]
        if w >= 0 and w != v:
            return False
        return True

    def rec(k):
        if k == len(holes):
            yield tuple(tuple(r) for r in imp)
            return
        a, b = holes[k]
        for v in cands[(a, b)]:
            if consistent(a, b, v):
                imp[a][b] = v
                yield from rec(k + 1)
                imp[a][b] = -1

    yield from rec(0)


@lru_cache(maxsize=None)
def _hilbert(n):
    out = []
    for P in _posets(n - 1):
        Q = _with_top(P)
        found = []
        for table in _fill_tables(Q):
            if validate_algebra(table, n - 1).valid:
                found.append(Algebra(n, table, n - 1, trusted=True))
        out.extend(dedupe_algebras(found))
    return tuple(out)


def enumerate_hilbert_algebras(n, cap=None):
    """All Hilbert algebras with exactly n elements up to isomorphism (model finder)."""
    limit = config.cap("hilbert", cap)
    if n > limit:
        raise ResourceLimitError(f"Hilbert model finder capped at {limit} elements")
    if n < 1:
        return []
    return list(_hilbert(n))


def hilbert_algebras_upto(n, cap=None):
    return [A for k in range(1, n + 1) for A in enumerate_hilbert_algebras(k, cap)]


def with_bottom(A):
    """A with its least element designated as zero, or None when there is none."""
    for z in range(A.n):
        if all(A.imp[z][b] == A.one for b in range(A.n)):
            return A.with_zero(z)
    return None


# -- certification ---------------------------------------------------------------


@dataclass
class Certificate:
    ok: bool
    checked: int = 0
    counterexample: object = None
    detail: str = ""
    stats: dict = field(default_factory=dict)


@dataclass
class ProductCandidate:
    """A forest with a base (explicit or implicit) and two maps, offered as a product."""

    poset: Poset
    base: object  # supports ``in`` and ``traces(mask)``
    proj1: tuple
    proj2: tuple
    X: HForest
    Y: HForest


class ExplicitBase:
    def __init__(self, family):
        self.family = frozenset(family)

    def __contains__(self, U):
        return U in self.family

    def traces(self, mask):
        return {U & mask for U in self.family}


def _preimage(f, mask):
    out = 0
    for x, y in enumerate(f):
        if mask >> y & 1:
            out |= 1 << x
    return out


def _hfor_maps_into(F, cand, trace_cache):
    """hFor morphisms F -> candidate; base sets are only seen through their traces on the image."""
    out = []
    for f in open_order_maps(F.poset, cand.poset):
        img = 0
        for y in f:
            img |= 1 << y
        tr = trace_cache.get(img)
        if tr is None:
            tr = trace_cache[img] = cand.base.traces(img)
        if all(_preimage(f, t) in F.base_set for t in tr):
            out.append(f)
    return out


@lru_cache(maxsize=None)
def _morphisms(F, X):
    return tuple(enumerate_forest_maps(F, X))


def certify_product_universal(X, Y, cone_cap, product=None, cones=None):
    """Every hFor cone (Z -> X, Z -> Y) with |Z| <= cone_cap has exactly one mediator.

    ``product`` may replace the computed candidate, which is how the negative control
    feeds in a corrupted base.
    """
    space = product_space(X, Y)
    if product is None:
        cand = ProductCandidate(space.product.order, space.base, space.product.proj1, space.product.proj2, X, Y)
    else:
        cand = product
    for proj, factor in ((cand.proj1, X), (cand.proj2, Y)):
        for V in factor.base:
            if _preimage(proj, V) not in cand.base:
                return Certificate(False, 0, ("projection", factor, V), "projection is not an hFor morphism")
    if cones is None:
        cones = enumerate_hforests(cone_cap)
    checked = 0
    traces = {}
    for F in cones:
        if F.n > cone_cap:
            continue
        alphas = _morphisms(F, X)
        betas = _morphisms(F, Y)
        if not alphas or not betas:
            continue
        groups = defaultdict(list)
        for f in _hfor_maps_into(F, cand, traces):
            key = (tuple(cand.proj1[y] for y in f), tuple(cand.proj2[y] for y in f))
            groups[key].append(f)
        for a in alphas:
            for b in betas:
                checked += 1
                found = groups.get((a.map, b.map), [])
                if len(found) != 1:
                    return Certificate(False, checked, (F, a, b, len(found)),
                                       f"cone has {len(found)} mediators")
                if product is None:
                    if mediator_map(F.poset, a.map, b.map, space.product) != found[0]:
                        return Certificate(False, checked, (F, a, b), "constructed mediator differs")
    return Certificate(True, checked)


def corrupted_product(X, Y):
    """The product forest with every upset in its base: projections still work, mediators may not."""
    space = product_space(X, Y)
    P = space.product.order
    return ProductCandidate(P, ExplicitBase(P.upsets()), space.product.proj1, space.product.proj2, X, Y)


def _check_cocone(C, K, homs_h, homs_g, bounded, construct):
    """Hom search from the coproduct into K, grouped by its restrictions to the injections."""
    groups = defaultdict(list)
    for m in enumerate_homs(C.result, K, bounded=bounded):
        key = (tuple(m.map[x] for x in C.injL.map), tuple(m.map[x] for x in C.injR.map))
        groups[key].append(m)
    checked = 0
    for f in homs_h:
        for g in homs_g:
            checked += 1
            found = groups.get((f.map, g.map), [])
            if len(found) != 1:
                return checked, (K, f, g, len(found)), f"cocone has {len(found)} mediators"
            if construct is not None:
                m = construct(f, g)
                if m.map != found[0].map:
                    return checked, (K, f, g), "constructed mediator differs"
    return checked, None, ""


def _upset_tables(P):
    """Byte-indexed tables so that the upset of a mask costs one lookup per 8 points."""
    tabs = []
    for lo in range(0, P.n, 8):
        t = [0] * 256
        for v in range(1, 256):
            low = v & -v
            i = lo + low.bit_length() - 1
            t[v] = t[v ^ low] | (P.up[i] if i < P.n else 0)
        tabs.append((lo, t))
    return tabs


class LazyCoproduct:
    """H (+) G kept as downset masks over the product forest, for sizes where a table is out of reach."""

    def __init__(self, H, G, limit=None):
        X, Y = dual_space(H), dual_space(G)
        self.H, self.G = H, G
        self.space = product_space(X, Y)
        prod = self.space.product
        P = prod.order
        self.poset = P
        self.elements = frozenset(P.full & ~B for B in self.space.base.materialize(limit))
        sh, sg = spectrum(H), spectrum(G)
        self.injL = tuple(_preimage(prod.proj1, phi_mask(H, a, sh)) for a in range(H.n))
        self.injR = tuple(_preimage(prod.proj2, phi_mask(G, a, sg)) for a in range(G.n))
        self._tabs = _upset_tables(P)

    def imp(self, U, V):
        D = U & ~V
        W = 0
        for lo, t in self._tabs:
            W |= t[(D >> lo) & 255]
        return self.poset.full & ~W

    def closure(self, seed, size=None):
        """Close ``seed`` under implication, stopping early once ``size`` elements are reached."""
        S = set(seed)
        frontier = list(S)
        while frontier and len(S) != size:
            nxt = []
            for a in frontier:
                for b in list(S):
                    for c in (self.imp(a, b), self.imp(b, a)):
                        if c not in S:
                            S.add(c)
                            nxt.append(c)
                if len(S) == size:
                    break
            frontier = nxt
        return frozenset(S)


def _check_lazy_mediator(L, universe, XK, phiK, mu, bottom):
    """Why the preimage map U -> phiK^{-1}(mu^{-1}(U)) is a hom on ``universe``, or None if it is.

    mu^{-1} commutes with complements and intersections; if it also commutes with
    upset generation at every point, it commutes with U -> V = [U - V)^c.
    """
    P, Q = L.poset, XK.poset
    if not (is_order_preserving(Q, P, mu) and is_open(Q, P, mu)):
        return "dual mediator is not an open order map"
    for y in range(P.n):
        if _preimage(mu, P.up[y]) != Q.upset(_preimage(mu, 1 << y)):
            return f"preimage does not commute with upsets at {y}"
    img = 0
    for y in mu:
        img |= 1 << y
    for t in {U & img for U in universe}:
        k = phiK.get(_preimage(mu, t))
        if k is None:
            return "preimage of an element is not in the image of K"
        if k == bottom:
            return "an element is sent to the adjoined bottom"
    return None


def certify_coproduct_lazy(H, G, targets, bounded=True, limit=None):
    """Coproduct certification without an implication table.

    Uniqueness comes from generation by the injections, checked by closure; existence
    from the dual mediator, whose preimage map is checked to be a well-defined hom that
    restricts to the cocone. The dual mediator is also checked to be the only hFor
    morphism over the cocone.
    """
    if bounded:
        Hb, Gb = H, G
    else:
        H, G = H.without_zero(), G.without_zero()
        Hb, Gb = zero_extension(H), zero_extension(G)
    L = LazyCoproduct(Hb, Gb, limit)
    P = L.poset
    if bounded:
        universe = L.closure(set(L.injL) | set(L.injR) | {0, P.full}, len(L.elements))
        if universe != L.elements:
            return Certificate(False, 0, ("generation", len(universe)), "injections do not generate the coproduct")
    else:
        # x -> y contains y, so the closure of non-empty downsets never reaches the bottom
        universe = L.closure(set(L.injL[:H.n]) | set(L.injR[:G.n]), len(L.elements) - 1)
    prod = L.space.product
    cand = ProductCandidate(P, L.space.base, prod.proj1, prod.proj2, L.space.X, L.space.Y)
    traces = {}
    checked = 0
    for K in targets:
        Kb = K if bounded else zero_extension(K.without_zero())
        XK = dual_space(Kb)
        sK = spectrum(Kb)
        phiK = {phi_mask(Kb, k, sK): k for k in range(Kb.n)}
        bottom = None if bounded else Kb.zero
        src_h, src_g = (Hb, Gb) if bounded else (H, G)
        homs_h = enumerate_homs(src_h, Kb if bounded else K.without_zero(), bounded=bounded)
        homs_g = enumerate_homs(src_g, Kb if bounded else K.without_zero(), bounded=bounded)
        if not homs_h or not homs_g:
            continue
        groups = defaultdict(list)
        for m in _hfor_maps_into(XK, cand, traces):
            groups[(tuple(prod.proj1[y] for y in m), tuple(prod.proj2[y] for y in m))].append(m)
        for f in homs_h:
            f0 = f if bounded else hom_zero_extension(f)
            alpha = dual_of_hom(Hom(Hb, Kb, f0.map)).map
            for g in homs_g:
                g0 = g if bounded else hom_zero_extension(g)
                beta = dual_of_hom(Hom(Gb, Kb, g0.map)).map
                checked += 1
                mu = mediator_map(XK.poset, alpha, beta, prod)
                found = groups.get((alpha, beta), [])
                if found != [mu]:
                    return Certificate(False, checked, (K, f, g, len(found)),
                                       f"cocone has {len(found)} dual mediators")
                why = _check_lazy_mediator(L, universe, XK, phiK, mu, bottom)
                if why is not None:
                    return Certificate(False, checked, (K, f, g), why)
                for inj, h in ((L.injL, f), (L.injR, g)):
                    for a, v in enumerate(h.map):
                        if phiK.get(_preimage(mu, inj[a])) != v:
                            return Certificate(False, checked, (K, f, g), "mediator does not extend the cocone")
    return Certificate(True, checked, stats={"method": "lazy", "size": len(universe)})


def _coproduct_size_bound(H, G, bounded):
    if not bounded:
        H, G = zero_extension(H.without_zero()), zero_extension(G.without_zero())
    space = product_space(dual_space(H), dual_space(G))
    return space.base.size_bound()


def certify_coproduct_universal(H, G, target_cap=None, bounded=True, data=None, targets=None):
    """Exhaustive factorization check of every cocone into every target algebra.

    Coproducts too large for an implication table go through ``certify_coproduct_lazy``.
    """
    if targets is None:
        if bounded:
            targets = enumerate_bph_algebras(target_cap)
        else:
            targets = [A for A in hilbert_algebras_upto(target_cap) if is_prelinear(A)]
    if data is None:
        if _coproduct_size_bound(H, G, bounded) > config.cap("certify_table"):
            return certify_coproduct_lazy(H, G, targets, bounded)
        data = coproduct_bounded(H, G) if bounded else coproduct_unbounded(H, G)
    Hs, Gs = data.injL.src, data.injR.src
    checked = 0
    for K in targets:
        if not bounded:
            K = K.without_zero()
        homs_h = enumerate_homs(Hs, K, bounded=bounded)
        homs_g = enumerate_homs(Gs, K, bounded=bounded)
        if bounded:
            construct = (lambda f, g: mediator_bounded(data, f, g)) if data.provenance is not None else None
        else:
            construct = (lambda f, g: mediator_unbounded(data, f, g)) if data.provenance is not None else None
        n, bad, detail = _check_cocone(data, K, homs_h, homs_g, bounded, construct)
        checked += n
        if bad is not None:
            return Certificate(False, checked, bad, detail)
    return Certificate(True, checked, stats={"method": "table", "size": data.result.n})


def corrupted_coproduct(H, G, bounded=True):
    """Coproduct data whose left injection is replaced by some other hom into the result."""
    data = coproduct_bounded(H, G) if bounded else coproduct_unbounded(H, G)
    for f in enumerate_homs(data.injL.src, data.result, bounded=bounded):
        if f.map != data.injL.map:
            return type(data)(data.result, f, data.injR, None)
    raise DomainError("no alternative injection exists for this pair")
