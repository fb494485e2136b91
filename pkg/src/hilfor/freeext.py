"""The free Goedel (prelinear Heyting) envelope of a finite bounded prelinear Hilbert algebra."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, InternalInconsistencyError, NotASemilatticeError
from .filters import phi_mask, spectrum
from .forestspace import algebra_elements, algebra_of, dual_of_hom, dual_space, element_index, hforest_full
from .hilcore import Algebra, Hom, generating_set, hom_search, is_prelinear, join, meet, natural_order, require_valid
from .order import bits


@dataclass(frozen=True)
class GodelAlgebra:
    algebra: Algebra
    meet: tuple
    join: tuple

    @property
    def n(self):
        return self.algebra.n


def as_godel(A):
    """Attach meet and join tables computed from the natural order."""
    require_valid(A)
    n = A.n
    mt, jt = [], []
    for a in range(n):
        mrow, jrow = [], []
        for b in range(n):
            m, j = meet(A, a, b), join(A, a, b)
            if m is None or j is None:
                raise NotASemilatticeError(f"{A.name(a)}, {A.name(b)} lack a meet or join")
            mrow.append(m)
            jrow.append(j)
        mt.append(tuple(mrow))
        jt.append(tuple(jrow))
    return GodelAlgebra(A, tuple(mt), tuple(jt))


def godel_violation(G):
    """First failure of the lattice, residuation or prelinearity laws, else None."""
    A = G.algebra
    n, one, imp = A.n, A.one, A.imp
    le = natural_order(A).leq
    if A.zero is None:
        return ("bounded", None)
    for a in range(n):
        for b in range(n):
            m, j = G.meet[a][b], G.join[a][b]
            if not (le[m][a] and le[m][b] and le[a][j] and le[b][j]):
                return ("bounds", (a, b))
            for c in range(n):
                if le[c][a] and le[c][b] and not le[c][m]:
                    return ("meet", (a, b, c))
                if le[a][c] and le[b][c] and not le[j][c]:
                    return ("join", (a, b, c))
                if le[m][c] != le[a][imp[b][c]]:
                    return ("residuation", (a, b, c))
            if G.join[imp[a][b]][imp[b][a]] != one:
                return ("prelinearity", (a, b))
    return None


@dataclass(frozen=True)
class Envelope:
    godel: GodelAlgebra
    psi: Hom
    downsets: tuple  # downset bitmask over the dual forest for each element


@lru_cache(maxsize=1024)
def _envelope(H, cap):
    X = dual_space(H, cap)
    full = hforest_full(X.poset, X.labels)
    E = algebra_of(full, check=False)
    elems = algebra_elements(full)
    idx = element_index(full)
    meet_t = tuple(tuple(idx[U & V] for V in elems) for U in elems)
    join_t = tuple(tuple(idx[U | V] for V in elems) for U in elems)
    spec = spectrum(H, cap)
    psi = Hom(H, E, tuple(idx[phi_mask(H, a, spec)] for a in range(H.n)))
    return Envelope(GodelAlgebra(E, meet_t, join_t), psi, elems)


def godel_envelope(H, cap=None):
    """(H*, psi): all downsets of the dual forest, with psi(a) = phi(a)."""
    require_valid(H)
    if H.zero is None:
        raise DomainError("the envelope needs a bounded algebra")
    if not is_prelinear(H):
        raise DomainError("the envelope needs a prelinear algebra")
    env = _envelope(H, cap)
    return env.godel, env.psi


def envelope(H, cap=None):
    godel_envelope(H, cap)
    return _envelope(H, cap)


def semilattice_closure(H, cap=None):
    """Envelope elements reachable from psi(H) by finite intersections."""
    env = envelope(H, cap)
    G = env.godel
    S = set(env.psi.map)
    frontier = list(S)
    while frontier:
        nxt = []
        for a in frontier:
            for b in list(S):
                c = G.meet[a][b]
                if c not in S:
                    S.add(c)
                    nxt.append(c)
        frontier = nxt
    return frozenset(S)


def union_of_intersections(H, cap=None):
    """For each envelope element U, a list of lists of a in H with U = union_i meet_j phi(a_ij)."""
    env = envelope(H, cap)
    X = dual_space(H, cap)
    spec = spectrum(H, cap)
    phis = [phi_mask(H, a, spec) for a in range(H.n)]
    out = []
    for U in env.downsets:
        terms = []
        for x in bits(X.poset.maximal(U)):
            terms.append([a for a in range(H.n) if phis[a] >> x & 1])
        out.append(terms)
    return out


def star_hom(f, cap=None):
    """Heyting hom H* -> G* extending f: U -> preimage of U under the dual forest map."""
    H, G = f.src, f.dst
    eh, eg = envelope(H, cap), envelope(G, cap)
    m = dual_of_hom(f, cap)
    idx = {U: i for i, U in enumerate(eg.downsets)}
    return Hom(eh.godel.algebra, eg.godel.algebra, tuple(idx[m.preimage(U)] for U in eh.downsets))


def factor_through_envelope(G, f, cap=None):
    """The Heyting hom h: H* -> G with h o psi = f, built as phi_G^{-1} o f*."""
    H = f.src
    if f.dst != G.algebra:
        raise DomainError("f must land in the implication reduct of G")
    star = star_hom(f, cap)
    psi_g = envelope(G.algebra, cap).psi
    inv = {}
    for a, U in enumerate(psi_g.map):
        inv[U] = a
    out = []
    for U in star.map:
        if U not in inv:
            raise InternalInconsistencyError("phi_G is not onto the envelope of a Goedel algebra")
        out.append(inv[U])
    return Hom(envelope(H, cap).godel.algebra, G.algebra, tuple(out))


def iter_heyting_homs(E, G, fixed=None):
    """Maps preserving ->, meet, join, 0 and 1 between Goedel algebras."""
    A, B = E.algebra, G.algebra
    ops = [(A.imp, B.imp), (E.meet, G.meet), (E.join, G.join)]
    consts = [(A.one, B.one), (A.zero, B.zero)]
    gens = generating_set(A.n, [A.imp, E.meet, E.join], 1 << A.one | 1 << A.zero)
    for m in hom_search(A.n, B.n, ops, consts, gens, fixed=fixed):
        yield Hom(A, B, m)


def enumerate_heyting_homs(E, G, fixed=None):
    return list(iter_heyting_homs(E, G, fixed))


def eta_map(H, cap=None):
    """Spectrum of H* -> spectrum of H, P -> psi^{-1}(P)."""
    env = envelope(H, cap)
    sE = spectrum(env.godel.algebra, cap)
    sH = spectrum(H, cap)
    out = []
    for P in sE.points:
        pre = frozenset(a for a in range(H.n) if env.psi.map[a] in P.members)
        out.append(sH.index(pre))
    return tuple(out)
