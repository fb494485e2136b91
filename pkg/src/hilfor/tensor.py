"""Products of finite forests (open maps) and of forests with h-bases."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property

from . import config
from .errors import DomainError, InternalInconsistencyError, MalformedInputError, ResourceLimitError
from .forestspace import (
    ForestMap,
    HForest,
    difference_violation,
    hbase_violation,
    is_open,
    is_order_preserving,
    normalize_family,
    require_valid_forest,
    subsets_of,
)
from .order import Poset, bits, mask_of, set_key

log = logging.getLogger(__name__)


def chains_from_minimals(P):
    """Every strictly increasing chain of P whose first element is minimal, as sorted tuples."""
    out = []

    def rec(chain):
        out.append(tuple(chain))
        last = chain[-1]
        for y in range(P.n):
            if P.lt(last, y):
                chain.append(y)
                rec(chain)
                chain.pop()

    for x in bits(P.minimal()):
        rec([x])
    return sorted(out, key=lambda c: (len(c), c))


def u_successions(F):
    if not F.is_forest():
        raise MalformedInputError("u-successions need a forest")
    return chains_from_minimals(F)


def product_poset(S, T):
    """S x T with the componentwise order; the pair (s, t) has index s * |T| + t."""
    n = S.n * T.n
    leq = tuple(
        tuple(S.leq[a // T.n][b // T.n] and T.leq[a % T.n][b % T.n] for b in range(n))
        for a in range(n)
    )
    return Poset(n, leq)


def prefix_poset(carrier):
    n = len(carrier)
    return Poset(n, tuple(
        tuple(len(p) <= len(q) and q[:len(p)] == p for q in carrier) for p in carrier
    ))


@dataclass(frozen=True)
class ProductForest:
    S: Poset
    T: Poset
    carrier: tuple  # u-successions: tuples of (s, t) pairs in increasing order
    order: Poset
    proj1: tuple
    proj2: tuple

    @cached_property
    def index(self):
        return {p: i for i, p in enumerate(self.carrier)}

    @property
    def n(self):
        return len(self.carrier)


def _upper_covers(P):
    ups = [[] for _ in range(P.n)]
    for a, b in P.covers:
        ups[a].append(b)
    return ups


def forest_product(S, T):
    """u-successions of S x T whose coordinate projections are full principal downsets.

    Each step moves every coordinate by at most one cover (and at least one moves),
    which is exactly the projection condition for a chain.
    """
    if not S.is_forest() or not T.is_forest():
        raise MalformedInputError("forest_product needs forests")
    upS, upT = _upper_covers(S), _upper_covers(T)
    out = []

    def rec(chain):
        out.append(tuple(chain))
        s, t = chain[-1]
        for s2 in [s] + upS[s]:
            for t2 in [t] + upT[t]:
                if (s2, t2) != (s, t):
                    chain.append((s2, t2))
                    rec(chain)
                    chain.pop()

    for s0 in bits(S.minimal()):
        for t0 in bits(T.minimal()):
            rec([(s0, t0)])
    carrier = tuple(sorted(out, key=lambda c: (len(c), c)))
    return ProductForest(
        S, T, carrier, prefix_poset(carrier),
        tuple(p[-1][0] for p in carrier),
        tuple(p[-1][1] for p in carrier),
    )


def mediator_map(F, alpha, beta, prod):
    """h(f) = {(alpha(g), beta(g)) : g <= f}, as node indices of ``prod``."""
    out = []
    for f in range(F.n):
        chain = tuple(sorted({(alpha[g], beta[g]) for g in bits(F.down[f])},
                             key=lambda st: (prod.S.down[st[0]].bit_count() + prod.T.down[st[1]].bit_count(), st)))
        if chain not in prod.index:
            raise DomainError("cone maps are not open order maps into the factors")
        out.append(prod.index[chain])
    return tuple(out)


@dataclass(frozen=True)
class ImplicitBase:
    """The family {[u)} plus [T) for T inside some generator (a set of minimal elements).

    Product bases can be far too large to list, so membership and traces are
    computed from the generators.
    """

    poset: Poset
    gens: tuple  # antichain masks, none contained in another

    def __contains__(self, U):
        P = self.poset
        if not P.is_upset(U):
            return False
        if U in self._principal:
            return True
        mins = P.minimal(U)
        return any(mins & ~M == 0 for M in self.gens)

    @cached_property
    def _principal(self):
        return frozenset(self.poset.up)

    def size_bound(self):
        return self.poset.n + sum(1 << M.bit_count() for M in self.gens)

    def traces(self, mask):
        """{U & mask : U in the family}."""
        P = self.poset
        out = {P.up[u] & mask for u in range(P.n)}
        for M in self.gens:
            parts = {P.up[t] & mask for t in bits(M)}
            acc = {0}
            for d in parts:
                acc |= {a | d for a in acc}
            out |= acc
        return out

    def materialize(self, limit=None):
        limit = config.cap("minimal_set", limit)
        widest = max((M.bit_count() for M in self.gens), default=0)
        if widest > limit:
            raise ResourceLimitError(f"minimal set of size {widest} exceeds cap {limit}")
        P = self.poset
        fam = set(P.up)
        for M in self.gens:
            for T in subsets_of(M):
                fam.add(P.upset(T))
        return normalize_family(fam)


def base_generators(X, Y, prod):
    """Minimal-element sets of the projection preimages of base sets, pruned to maximal ones."""
    P = prod.order
    found = set()
    for proj, factor in ((prod.proj1, X), (prod.proj2, Y)):
        for V in factor.base:
            pre = mask_of(i for i, v in enumerate(proj) if V >> v & 1)
            found.add(P.minimal(pre))
    keep = [M for M in found if not any(M != N and M & ~N == 0 for N in found)]
    return tuple(sorted(keep, key=set_key))


def implicit_base(X, Y, prod):
    return ImplicitBase(prod.order, base_generators(X, Y, prod))


def base_tensor_family(X, Y, prod, limit=None):
    """Sets [u), and [T) for T inside the minimals of a projection preimage of a base set."""
    return implicit_base(X, Y, prod).materialize(limit)


def saturate_base(P, family):
    """Close under both h-base clause forms; returns (family, added sets in order)."""
    fam = set(family)
    added = []
    changed = True
    while changed:
        changed = False
        for B in sorted(fam):
            for M in subsets_of(P.minimal(B)):
                U = P.upset(M)
                if U not in fam:
                    fam.add(U)
                    added.append(U)
                    changed = True
        cur = sorted(fam)
        for B1 in cur:
            for B2 in cur:
                U = P.upset(B1 & ~B2)
                if U not in fam:
                    fam.add(U)
                    added.append(U)
                    changed = True
    for U in added:
        log.info("closure added base set %s", bits(U))
    return normalize_family(fam), added


def _labels(X, Y, prod):
    return tuple("/".join(f"{X.name(s)}.{Y.name(t)}" for s, t in p) for p in prod.carrier)


def base_tensor(X, Y, prod=None, close_base=False, limit=None):
    """Base family on the product forest; audited against both h-base characterisations."""
    if prod is None:
        prod = forest_product(X.poset, Y.poset)
    fam = base_tensor_family(X, Y, prod, limit)
    P = prod.order
    bad = hbase_violation(P, fam) or difference_violation(P, fam)
    added = []
    if bad:
        if not close_base:
            raise InternalInconsistencyError(f"base tensor is not an h-base: {bad}")
        fam, added = saturate_base(P, fam)
    return fam, added


class ProductSpace:
    """Product in hFor: forest product, base tensor and both projections.

    The explicit base (and with it the HForest) is built on first use.
    """

    def __init__(self, X, Y, product, close_base=False):
        self.X, self.Y = X, Y
        self.product = product
        self.close_base = close_base
        self.base = implicit_base(X, Y, product)

    @cached_property
    def _explicit(self):
        fam, added = base_tensor(self.X, self.Y, self.product, self.close_base)
        return HForest.make(self.product.order, fam, _labels(self.X, self.Y, self.product)), added

    @property
    def forest(self):
        return self._explicit[0]

    @property
    def added(self):
        return self._explicit[1]

    @property
    def proj1(self):
        return ForestMap(self.forest, self.X, self.product.proj1)

    @property
    def proj2(self):
        return ForestMap(self.forest, self.Y, self.product.proj2)

    def __iter__(self):
        return iter((self.forest, self.proj1, self.proj2))


def product_space(X, Y, close_base=False):
    require_valid_forest(X)
    require_valid_forest(Y)
    return ProductSpace(X, Y, forest_product(X.poset, Y.poset), close_base)


def check_cone(alpha, beta):
    F = alpha.src
    if beta.src != F:
        raise DomainError("cone maps must share a source")
    for m in (alpha, beta):
        if not (is_order_preserving(F.poset, m.dst.poset, m.map) and is_open(F.poset, m.dst.poset, m.map)):
            raise DomainError("cone maps must be open order maps")


def mediator(alpha, beta, space):
    """The map F -> X (x) Y commuting with both projections, for hFor cones (alpha, beta)."""
    check_cone(alpha, beta)
    h = mediator_map(alpha.src.poset, alpha.map, beta.map, space.product)
    return ForestMap(alpha.src, space.forest, h)
