"""Coproducts of finite prelinear algebras, bounded (through dual products) and unbounded."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import config
from .errors import DomainError, InternalInconsistencyError, ResourceLimitError
from .forestspace import algebra_of, dual_of_hom, dual_space, hom_of_map, phi_hom
from .hilcore import Algebra, Hom, generated_subalgebra, inverse_hom, is_prelinear, require_valid, subalgebra
from .tensor import mediator, product_space


@dataclass(frozen=True)
class CoproductData:
    result: Algebra
    injL: Hom
    injR: Hom
    provenance: object  # ProductSpace when bounded; (bounded data, embedding) when unbounded

    @property
    def bounded(self):
        return self.result.zero is not None


def _require_bpl(H):
    require_valid(H)
    if H.zero is None:
        raise DomainError("bounded coproducts need algebras with a zero")
    if not is_prelinear(H):
        raise DomainError("coproducts need prelinear algebras")


def check_generation(C):
    """True when the injection images (and 0 in the bounded case) generate the result."""
    seed = C.injL.image() | C.injR.image()
    return len(generated_subalgebra(C.result, seed, bounded=C.bounded)) == C.result.n


def coproduct_bounded(H, G, close_base=False, cap=None):
    """H (+) G as the algebra of the product of the dual h-forests."""
    _require_bpl(H)
    _require_bpl(G)
    space = product_space(dual_space(H, cap), dual_space(G, cap), close_base)
    size = len(space.base.materialize())
    if size > config.cap("coproduct"):
        raise ResourceLimitError(f"coproduct has {size} elements, above the table cap {config.cap('coproduct')}")
    C = algebra_of(space.forest)
    injL = phi_hom(H, cap).then(hom_of_map(space.proj1))
    injR = phi_hom(G, cap).then(hom_of_map(space.proj2))
    data = CoproductData(C, injL, injR, space)
    if not check_generation(data):
        raise InternalInconsistencyError("coproduct is not generated by the injections")
    return data


def mediator_bounded(C, f, g, cap=None):
    """The hom m: C -> K with m o injL = f and m o injR = g."""
    K = f.dst
    if g.dst != K:
        raise DomainError("cocone homs must share a target")
    _require_bpl(K)
    h = mediator(dual_of_hom(f, cap), dual_of_hom(g, cap), C.provenance)
    return hom_of_map(h).then(inverse_hom(phi_hom(K, cap)))


def zero_extension(H):
    """H with a fresh bottom appended at index n: 0->x = 1 and x->0 = 0 for x in H."""
    require_valid(H)
    n = H.n
    # x -> 0 = 0 for x in H; 0 -> anything = 1
    imp = tuple(tuple(H.imp[a]) + (n,) for a in range(n)) + (tuple([H.one] * (n + 1)),)
    labels = None
    if H.labels:
        zero_name = "0"
        while zero_name in H.labels:
            zero_name += "'"
        labels = tuple(H.labels) + (zero_name,)
    return Algebra(n + 1, imp, H.one, n, labels, trusted=H.trusted)


def inclusion_hom(H):
    """i_H: H -> H0."""
    return Hom(H, zero_extension(H), tuple(range(H.n)))


def hom_zero_extension(f):
    """f0: H0 -> K0 sending the new bottom to the new bottom."""
    return Hom(zero_extension(f.src), zero_extension(f.dst), tuple(f.map) + (f.dst.n,))


def coproduct_unbounded(H, G, close_base=False, cap=None):
    """H * G: the subalgebra of H0 (+) G0 generated by the images of H and G."""
    for A in (H, G):
        require_valid(A)
        if not is_prelinear(A):
            raise DomainError("coproducts need prelinear algebras")
    H, G = H.without_zero(), G.without_zero()
    base = coproduct_bounded(zero_extension(H), zero_extension(G), close_base, cap)
    kH = inclusion_hom(H).then(base.injL)
    kG = inclusion_hom(G).then(base.injR)
    S = generated_subalgebra(base.result, kH.image() | kG.image())
    A, emb = subalgebra(base.result, S)
    A = A.without_zero()
    pos = {e: i for i, e in enumerate(emb)}
    injL = Hom(H, A, tuple(pos[x] for x in kH.map))
    injR = Hom(G, A, tuple(pos[x] for x in kG.map))
    return CoproductData(A, injL, injR, (base, emb))


def mediator_unbounded(C, f, g, cap=None):
    """Restriction of the bounded mediator of the zero-extended cocone."""
    base, emb = C.provenance
    K = f.dst.without_zero()
    f = Hom(f.src.without_zero(), K, f.map)
    g = Hom(g.src.without_zero(), K, g.map)
    m0 = mediator_bounded(base, hom_zero_extension(f), hom_zero_extension(g), cap)
    out = tuple(m0.map[e] for e in emb)
    if K.n in out:
        raise InternalInconsistencyError("mediator reaches the adjoined bottom")
    return Hom(C.result, K, out)


def _chain_imp(c):
    top = c - 1
    return [[top if x <= y else y for y in range(c)] for x in range(c)]


def _free_closure(k, c, bounded, limit):
    coords = list(product(range(c), repeat=k))
    imp = _chain_imp(c)
    names = "pqr"
    one = tuple(c - 1 for _ in coords)
    elems = {one: "1"}
    order = [one]
    for i in range(k):
        t = tuple(a[i] for a in coords)
        if t not in elems:
            elems[t] = names[i]
            order.append(t)
    if bounded:
        z = tuple(0 for _ in coords)
        if z not in elems:
            elems[z] = "0"
            order.append(z)
    frontier = list(order)
    while frontier:
        new = []
        for x in frontier:
            for y in list(order):
                for a, b in ((x, y), (y, x)):
                    t = tuple(imp[u][v] for u, v in zip(a, b))
                    if t not in elems:
                        elems[t] = f"{_wrap(elems[a])}->{_wrap(elems[b])}"
                        order.append(t)
                        new.append(t)
                        if len(order) > limit:
                            raise ResourceLimitError(f"free algebra exceeds {limit} elements")
        frontier = new
    pos = {t: i for i, t in enumerate(order)}
    table = tuple(
        tuple(pos[tuple(imp[u][v] for u, v in zip(a, b))] for b in order) for a in order
    )
    zero = pos[tuple(0 for _ in coords)] if bounded else None
    labels = tuple(elems[t] for t in order)
    return Algebra(len(order), table, 0, zero, labels, trusted=True)


def _wrap(term):
    return f"({term})" if "->" in term else term


def free_algebra_oracle(k, chain_cap=6, bounded=False, cap=None):
    """Free prelinear (bounded: Goedel implication) algebra on k generators, via chain products.

    The subalgebra generated by the projection tuples in a power of the c-element chain
    is computed for c = 2, 3, ...; the first c whose size repeats at c + 1 is returned.
    """
    if not 1 <= k <= 3:
        raise DomainError("generator count must be 1, 2 or 3")
    limit = config.cap("oracle_elements", cap)
    prev = None
    for c in range(2, chain_cap + 1):
        A = _free_closure(k, c, bounded, limit)
        if prev is not None and prev.n == A.n:
            return prev
        prev = A
    raise ResourceLimitError(f"free algebra size did not stabilise by chain length {chain_cap}")
