"""Implicative filters, irreducible filters and the spectrum X(H)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from . import config
from .errors import InternalInconsistencyError, MalformedInputError, ResourceLimitError
from .hilcore import natural_order, require_valid
from .order import Poset, bits, mask_of, set_key


@dataclass(frozen=True)
class Filter:
    algebra: object
    members: frozenset

    @cached_property
    def mask(self):
        return mask_of(self.members)

    def __contains__(self, a):
        return a in self.members

    def __len__(self):
        return len(self.members)

    @property
    def proper(self):
        return len(self.members) < self.algebra.n

    def names(self):
        return self.algebra.names(self.members)


@dataclass(frozen=True)
class Spectrum:
    points: tuple
    order: tuple  # order[i][j]: points[i] is a subset of points[j]

    @cached_property
    def poset(self):
        return Poset(len(self.points), self.order)

    def index(self, members):
        members = frozenset(members)
        for k, p in enumerate(self.points):
            if p.members == members:
                return k
        raise KeyError(members)

    def __len__(self):
        return len(self.points)


def _members(F):
    return F.members if isinstance(F, Filter) else frozenset(F)


def is_filter(H, S):
    members = set(S)
    if H.one not in members:
        return False
    for a in members:
        row = H.imp[a]
        for b in range(H.n):
            if row[b] in members and b not in members:
                return False
    return True


def _mp_closure_mask(H, seed):
    F = seed | 1 << H.one
    changed = True
    while changed:
        changed = False
        for a in bits(F):
            row = H.imp[a]
            for b in range(H.n):
                if not F >> b & 1 and F >> row[b] & 1:
                    F |= 1 << b
                    changed = True
    return F


def generated_filter(H, X):
    """Least filter containing X, by modus-ponens saturation of X and 1."""
    require_valid(H)
    return Filter(H, frozenset(bits(_mp_closure_mask(H, mask_of(X)))))


def nested_implication_filter(H, X):
    """Elements x with a1->(a2->...(an->x)) = 1 for some a_i in X; {1} for empty X."""
    X = list(X)
    if not X:
        return Filter(H, frozenset([H.one]))
    out = set()
    for x in range(H.n):
        seen = set()
        frontier = [x]
        hit = False
        while frontier and not hit:
            nxt = []
            for y in frontier:
                for a in X:
                    z = H.imp[a][y]
                    if z == H.one:
                        hit = True
                        break
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
                if hit:
                    break
            frontier = nxt
        if hit:
            out.add(x)
    return Filter(H, frozenset(out))


@lru_cache(maxsize=1024)
def _filter_masks(H):
    P = natural_order(H)
    out = []
    for u in P.upsets():
        if u and _mp_closure_mask(H, u) == u:
            out.append(u)
    return tuple(sorted(out, key=set_key))


def enumerate_filters(H, cap=None):
    """All implicative filters, sorted by (size, bitmask)."""
    require_valid(H)
    limit = config.cap("filters", cap)
    if H.n > limit:
        raise ResourceLimitError(f"filter enumeration capped at {limit} elements (algebra has {H.n})")
    return [Filter(H, frozenset(bits(m))) for m in _filter_masks(H)]


def is_irreducible(H, F):
    """Proper, and any two elements outside F have a common upper bound outside F."""
    members = _members(F)
    if len(members) >= H.n:
        return False
    le = natural_order(H).leq
    outside = [a for a in range(H.n) if a not in members]
    for i, a in enumerate(outside):
        for b in outside[i:]:
            if not any(le[a][c] and le[b][c] for c in outside):
                return False
    return True


def is_irreducible_by_intersection(H, F, filters=None):
    """Proper, and not the intersection of two strictly larger filters."""
    m = mask_of(getattr(F, "members", F))
    if m == (1 << H.n) - 1:
        return False
    if filters is None:
        masks = _filter_masks(H)
    else:
        masks = [f.mask for f in filters]
    bigger = [g for g in masks if g & m == m and g != m]
    for i, g1 in enumerate(bigger):
        for g2 in bigger[i:]:
            if g1 & g2 == m:
                return False
    return True


def _is_filter_mask(H, F):
    if not F >> H.one & 1:
        return False
    outside = [b for b in range(H.n) if not F >> b & 1]
    for a in bits(F):
        row = H.imp[a]
        for b in outside:
            if F >> row[b] & 1:
                return False
    return True


@lru_cache(maxsize=1024)
def _spectrum(H):
    # an irreducible filter has an up-directed complement, which in a finite
    # algebra is a principal downset; so only the sets {x : x not <= c} qualify
    P = natural_order(H)
    full = (1 << H.n) - 1
    masks = set()
    for c in range(H.n):
        if c != H.one:
            F = full & ~P.down[c]
            if _is_filter_mask(H, F):
                masks.add(F)
    masks = sorted(masks, key=set_key)
    points = tuple(Filter(H, frozenset(bits(m))) for m in masks)
    order = tuple(tuple(a & b == a for b in masks) for a in masks)
    return Spectrum(points, order)


def spectrum(H, cap=None):
    """Irreducible filters ordered by inclusion, in (size, bitmask) order."""
    require_valid(H)
    limit = config.cap("spectrum", cap)
    if H.n > limit:
        raise ResourceLimitError(f"spectrum capped at {limit} elements (algebra has {H.n})")
    return _spectrum(H)


def is_order_ideal(H, I):
    I = set(I)
    if not I:
        return False
    le = natural_order(H).leq
    for a in I:
        for b in range(H.n):
            if le[b][a] and b not in I:
                return False
    for a in I:
        for b in I:
            if not any(le[a][c] and le[b][c] for c in I):
                return False
    return True


def separating_irreducible(H, F, I, cap=None):
    """Irreducible P with F <= P and P disjoint from I; points are scanned by size, so P is inclusion-minimal."""
    F = _members(F)
    I = frozenset(I)
    if not is_filter(H, F):
        raise MalformedInputError("F is not a filter")
    if not is_order_ideal(H, I):
        raise MalformedInputError("I is not a nonempty order ideal")
    if F & I:
        raise MalformedInputError("F and I are not disjoint")
    fm, im = mask_of(F), mask_of(I)
    for P in spectrum(H, cap).points:
        if P.mask & fm == fm and not P.mask & im:
            return P
    raise InternalInconsistencyError("no separating irreducible filter found")


def phi(H, a, spec=None):
    """Indices of the spectrum points containing a."""
    if spec is None:
        spec = spectrum(H)
    return frozenset(k for k, P in enumerate(spec.points) if a in P.members)


def phi_mask(H, a, spec=None):
    return mask_of(phi(H, a, spec))
