"""Finite posets on dense indices, with subsets encoded as int bitmasks."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import permutations

from .errors import MalformedInputError


def bits(mask):
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(items):
    m = 0
    for i in items:
        m |= 1 << i
    return m


def popcount(mask):
    return mask.bit_count()


def set_key(mask):
    """Sort key for subsets: size first, then the bitmask itself."""
    return (mask.bit_count(), mask)


@dataclass(frozen=True)
class Poset:
    n: int
    leq: tuple  # leq[a][b] is True iff a <= b

    @classmethod
    def from_relation(cls, n, leq):
        leq = tuple(tuple(bool(x) for x in row) for row in leq)
        if len(leq) != n or any(len(row) != n for row in leq):
            raise MalformedInputError("order matrix must be n x n")
        p = cls(n, leq)
        problem = p.order_violation()
        if problem:
            raise MalformedInputError(problem)
        return p

    @classmethod
    def from_covers(cls, n, covers):
        """Reflexive-transitive closure of ``(lower, upper)`` cover pairs."""
        up = [1 << i for i in range(n)]
        for a, b in covers:
            if not (0 <= a < n and 0 <= b < n):
                raise MalformedInputError(f"cover ({a}, {b}) out of range")
            up[a] |= 1 << b
        changed = True
        while changed:
            changed = False
            for a in range(n):
                acc = up[a]
                for b in bits(up[a]):
                    acc |= up[b]
                if acc != up[a]:
                    up[a] = acc
                    changed = True
        leq = tuple(tuple(bool(up[a] >> b & 1) for b in range(n)) for a in range(n))
        p = cls(n, leq)
        problem = p.order_violation()
        if problem:
            raise MalformedInputError(problem)
        return p

    @classmethod
    def from_up_masks(cls, up):
        n = len(up)
        return cls(n, tuple(tuple(bool(up[a] >> b & 1) for b in range(n)) for a in range(n)))

    def order_violation(self):
        n, leq = self.n, self.leq
        for a in range(n):
            if not leq[a][a]:
                return f"not reflexive at {a}"
        for a in range(n):
            for b in range(a + 1, n):
                if leq[a][b] and leq[b][a]:
                    return f"not antisymmetric at ({a}, {b})"
        for a in range(n):
            for b in range(n):
                if leq[a][b]:
                    for c in range(n):
                        if leq[b][c] and not leq[a][c]:
                            return f"not transitive at ({a}, {b}, {c})"
        return None

    @cached_property
    def up(self):
        """up[x] is the bitmask of the principal upset [x)."""
        return tuple(mask_of(b for b in range(self.n) if self.leq[a][b]) for a in range(self.n))

    @cached_property
    def down(self):
        """down[x] is the bitmask of the principal downset (x]."""
        return tuple(mask_of(b for b in range(self.n) if self.leq[b][a]) for a in range(self.n))

    @property
    def full(self):
        return (1 << self.n) - 1

    def upset(self, mask):
        out = 0
        for x in bits(mask):
            out |= self.up[x]
        return out

    def downset(self, mask):
        out = 0
        for x in bits(mask):
            out |= self.down[x]
        return out

    def is_upset(self, mask):
        return self.upset(mask) == mask

    def is_downset(self, mask):
        return self.downset(mask) == mask

    def minimal(self, mask=None):
        """Bitmask of the minimal elements of ``mask`` (default: the whole poset)."""
        if mask is None:
            mask = self.full
        out = 0
        for x in bits(mask):
            if self.down[x] & mask == 1 << x:
                out |= 1 << x
        return out

    def maximal(self, mask=None):
        if mask is None:
            mask = self.full
        out = 0
        for x in bits(mask):
            if self.up[x] & mask == 1 << x:
                out |= 1 << x
        return out

    def lt(self, a, b):
        return a != b and self.leq[a][b]

    @cached_property
    def covers(self):
        """Sorted list of pairs (a, b) with b covering a."""
        out = []
        for a in range(self.n):
            for b in range(self.n):
                if self.lt(a, b) and not any(
                    self.lt(a, c) and self.lt(c, b) for c in range(self.n)
                ):
                    out.append((a, b))
        return out

    def is_chain_mask(self, mask):
        xs = bits(mask)
        return all(self.leq[a][b] or self.leq[b][a] for i, a in enumerate(xs) for b in xs[i + 1:])

    def is_forest(self):
        return all(self.is_chain_mask(self.down[x]) for x in range(self.n))

    def is_root_system(self):
        return all(self.is_chain_mask(self.up[x]) for x in range(self.n))

    def is_chain(self):
        return self.is_chain_mask(self.full)

    def dual(self):
        return Poset(self.n, tuple(tuple(self.leq[b][a] for b in range(self.n)) for a in range(self.n)))

    def height(self, x):
        """Number of elements strictly below ``x``; in a forest, the depth of ``x``."""
        return self.down[x].bit_count() - 1

    def linear_extension(self):
        return sorted(range(self.n), key=lambda x: (self.down[x].bit_count(), x))

    def downsets(self):
        """All downsets as sorted bitmasks."""
        return sorted((self.full & ~u for u in self.upsets()), key=set_key)

    def upsets(self):
        """All upsets, enumerated through the antichain of their minimal elements."""
        n = self.n
        out = []

        def extend(start, antichain, forbidden):
            out.append(self.upset(antichain))
            for x in range(start, n):
                if not forbidden >> x & 1:
                    extend(x + 1, antichain | 1 << x, forbidden | self.up[x] | self.down[x])

        extend(0, 0, 0)
        return sorted(out, key=set_key)

    def relabel(self, perm):
        """Poset with element ``i`` renamed ``perm[i]``."""
        n = self.n
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        return Poset(n, tuple(tuple(self.leq[inv[a]][inv[b]] for b in range(n)) for a in range(n)))


def order_isomorphisms(p, q, limit=None):
    """Yield bijections ``f`` (as tuples) with ``p.leq[a][b] == q.leq[f[a]][f[b]]``."""
    if p.n != q.n:
        return
    n = p.n
    sig_p = [(p.down[x].bit_count(), p.up[x].bit_count()) for x in range(n)]
    sig_q = [(q.down[x].bit_count(), q.up[x].bit_count()) for x in range(n)]
    if sorted(sig_p) != sorted(sig_q):
        return
    order = p.linear_extension()
    f = [-1] * n
    used = [False] * n
    found = 0

    def rec(k):
        nonlocal found
        if limit is not None and found >= limit:
            return
        if k == n:
            found += 1
            yield tuple(f)
            return
        a = order[k]
        for b in range(n):
            if used[b] or sig_q[b] != sig_p[a]:
                continue
            ok = True
            for c in order[:k]:
                if p.leq[a][c] != q.leq[b][f[c]] or p.leq[c][a] != q.leq[f[c]][b]:
                    ok = False
                    break
            if ok:
                f[a] = b
                used[b] = True
                yield from rec(k + 1)
                used[b] = False
                f[a] = -1

    yield from rec(0)


def find_order_isomorphism(p, q):
    return next(order_isomorphisms(p, q), None)


def brute_canonical_form(p):
    """Lexicographically least up-mask tuple over all relabellings (small n only)."""
    best = None
    for perm in permutations(range(p.n)):
        key = p.relabel(perm).up
        if best is None or key < best:
            best = key
    return best
