"""Semicommutative and hypersolvable Γ-groups.

A Γ-group is semicommutative when it is generated by Γ-stable commutative
subgroups A_1..A_m with A_i normalizing A_j for i ≤ j. The decider uses the
recursive form: H is semicommutative iff it is commutative or H = ⟨A, K⟩
with A a Γ-stable commutative normal subgroup and K a proper Γ-stable
semicommutative subgroup. Dropping the last A of a shortest tower gives a
proper K, so both forms agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import gamma_scheme as gs
from . import group_core as gc
from . import heights as ht
from .errors import NotSemicommutative, NotTame, TrivialGroup, ValidationError, check_bound, enumeration_bound
from .gamma_scheme import GammaGroup
from .group_core import FiniteGroup, GroupHom, Subgroup

DECIDER_BOUND = 64


@dataclass(frozen=True)
class SemicommutativeWitness:
    tower: tuple            # Subgroups A_1..A_m

    def as_lists(self):
        return [list(A.members) for A in self.tower]


@dataclass(frozen=True)
class Decomposition:
    A: Subgroup
    K: Subgroup
    witness: SemicommutativeWitness     # tower for K

    def report(self) -> dict:
        return {"A": list(self.A.members), "K": list(self.K.members),
                "K_tower": self.witness.as_lists()}


@dataclass(frozen=True)
class HypersolvableChain:
    chain: tuple            # Subgroups 1 = G_0 < ... < G_k = G
    orders: tuple           # r_i = |G_i / G_{i-1}|

    def as_lists(self):
        return [list(H.members) for H in self.chain]


class _Lattice:
    """Γ-stable subgroups of GG with the memo tables the deciders share."""

    def __init__(self, GG: GammaGroup, bound: Optional[int]):
        check_bound(GG.G.order, "group", enumeration_bound(DECIDER_BOUND) if bound is None else bound)
        self.GG = GG
        self.G = GG.G
        self.stable = gs.gamma_stable_subgroups(GG)
        self.commutative = [H for H in self.stable if self.G.is_abelian(H.members)]
        self.memo: dict[frozenset, Optional[tuple]] = {}

    def inside(self, H: Subgroup, pool):
        return [S for S in pool if S.as_set <= H.as_set]

    def normal_in(self, A: Subgroup, H: Subgroup) -> bool:
        G, s = self.G, A.as_set
        return all(G.conj(h, a) in s for h in H.members for a in A.members)

    def generates(self, A: Subgroup, K: Subgroup, H: Subgroup) -> bool:
        return len(gc.closure(self.G, A.members + K.members)) == H.order

    def tower(self, H: Subgroup) -> Optional[tuple]:
        key = H.as_set
        if key in self.memo:
            return self.memo[key]
        if self.G.is_abelian(H.members):
            self.memo[key] = (H,)
            return self.memo[key]
        result = None
        for A, K in self.splittings(H):
            sub = self.tower(K)
            if sub is not None:
                result = sub + (A,)
                break
        self.memo[key] = result
        return result

    def splittings(self, H: Subgroup):
        """Candidate (A, K) for H, larger A and K first."""
        As = [A for A in reversed(self.inside(H, self.commutative))
              if A.order > 1 and self.normal_in(A, H)]
        Ks = [K for K in reversed(self.inside(H, self.stable)) if K.order < H.order]
        for A in As:
            for K in Ks:
                if self.generates(A, K, H):
                    yield A, K


def is_semicommutative(GG: GammaGroup, bound: Optional[int] = None) -> Optional[SemicommutativeWitness]:
    """A witness tower, or None when none exists (the search is exhaustive)."""
    lat = _Lattice(GG, bound)
    t = lat.tower(gc.whole(GG.G))
    return None if t is None else SemicommutativeWitness(t)


def check_witness(GG: GammaGroup, w: SemicommutativeWitness) -> bool:
    G = GG.G
    gens = [g for A in w.tower for g in A.members]
    if len(gc.closure(G, gens)) != G.order:
        return False
    for A in w.tower:
        if not G.is_abelian(A.members) or not gs.is_stable(GG, A):
            return False
    for i, Ai in enumerate(w.tower):
        for Aj in w.tower[i:]:
            if not Ai.as_set <= gc.normalizer_of(G, Aj).as_set:
                return False
    return True


def decompositions(GG: GammaGroup, bound: Optional[int] = None) -> list[Decomposition]:
    """All (A, K): A Γ-stable commutative normal, K proper Γ-stable semicommutative, ⟨A, K⟩ = G.

    For commutative G only the degenerate (G, 1) is returned.
    """
    G = GG.G
    if G.order == 1:
        raise TrivialGroup("decompositions of the trivial group")
    lat = _Lattice(GG, bound)
    top = gc.whole(G)
    if G.is_abelian():
        one = gc.trivial_subgroup(G)
        return [Decomposition(top, one, SemicommutativeWitness((one,)))]
    if lat.tower(top) is None:
        raise NotSemicommutative("group is not semicommutative")
    out = []
    for A, K in lat.splittings(top):
        t = lat.tower(K)
        if t is not None:
            out.append(Decomposition(A, K, SemicommutativeWitness(t)))
    return out


# iterated semidirect products and quotients ----------------------------------------

@dataclass(frozen=True, eq=False)
class TowerStep:
    a: GammaGroup                   # A_{i-1}
    previous: GammaGroup            # G_{i-1}
    semidirect: gs.GammaSemidirect  # A_{i-1} ⋊ G_{i-1}
    kernel: Subgroup                # N_{i-1}
    group: GammaGroup               # G_i
    embedding: GroupHom             # G_i -> G, injective and Γ-equivariant


@dataclass(frozen=True, eq=False)
class Tower:
    steps: tuple
    top_isomorphism: GroupHom

    @property
    def groups(self):
        return [s.group for s in self.steps]


def _gamma_equivariant(src: GammaGroup, dst: GammaGroup, f) -> bool:
    return all(f[src.act[y][g]] == dst.act[y][f[g]] for y in src.gamma for g in src.G)


def build_tower(GG: GammaGroup, bound: Optional[int] = None) -> Tower:
    """Realize GG as G_k with G_i = (A_{i-1} ⋊ G_{i-1}) / N_{i-1}, from a witness tower."""
    w = is_semicommutative(GG, bound)
    if w is None:
        raise NotSemicommutative("group is not semicommutative")
    G = GG.G
    prev = gs.make_gamma_group(gc.trivial_group(), GG.gamma, chi=GG.chi, chi_modulus=GG.chi_modulus)
    prev_embed = GroupHom(prev.G, G, (0,))
    steps = []
    for A in w.tower:
        a_gg, a_inc = gs.restrict(GG, A)
        # conjugation of the current group on A, read through prev_embed
        pos = {g: i for i, g in enumerate(A.members)}
        phi = [tuple(pos[G.conj(prev_embed(h), a)] for a in A.members) for h in prev.G]
        gsd = gs.gamma_semidirect(a_gg, prev, phi)
        nA = A.order
        mult = [G.mul(A.members[x % nA], prev_embed(x // nA)) for x in gsd.product.G]
        mult_hom = GroupHom(gsd.product.G, G, mult).check()
        N = mult_hom.kernel()
        quotient, proj = gs.gamma_quotient(gsd.product, N)
        emb = GroupHom(quotient.G, G, [mult[r] for r in quotient.G.labels]).check()
        if not emb.is_injective or not _gamma_equivariant(quotient, GG, emb.map):
            raise ValidationError("tower step does not embed Γ-equivariantly")
        steps.append(TowerStep(a_gg, prev, gsd, N, quotient, emb))
        prev, prev_embed = quotient, emb
    if not prev_embed.is_surjective:
        raise ValidationError("tower does not reach G")
    return Tower(tuple(steps), prev_embed)


def gamma_isomorphic(X: GammaGroup, Y: GammaGroup) -> Optional[GroupHom]:
    """An isomorphism of the underlying groups commuting with the Γ-actions."""
    if not gs.same_gamma(X, Y):
        return None
    return gc.find_isomorphism(X.G, Y.G, accept=lambda f: _gamma_equivariant(X, Y, f))


# hypersolvability ----------------------------------------------------------------

def is_hypersolvable(GG: GammaGroup, bound: Optional[int] = None) -> Optional[HypersolvableChain]:
    """Chain of Γ-stable subgroups, each normal in the next with cyclic quotient, or None."""
    check_bound(GG.G.order, "group", enumeration_bound(DECIDER_BOUND) if bound is None else bound)
    G = GG.G
    stable = gs.gamma_stable_subgroups(GG)
    memo: dict[frozenset, Optional[tuple]] = {}

    def cyclic_quotient(N: Subgroup, H: Subgroup) -> bool:
        r = H.order // N.order
        for h in H.members:
            k, x = 1, h
            while x not in N:
                x = G.mul(x, h)
                k += 1
            if k == r:
                return True
        return False

    def chain(H: Subgroup):
        key = H.as_set
        if key in memo:
            return memo[key]
        if H.order == 1:
            memo[key] = (H,)
            return memo[key]
        result = None
        for N in sorted((S for S in stable if S.as_set < key), key=lambda S: (-S.order, S.members)):
            if not all(G.conj(h, n) in N for h in H.members for n in N.members):
                continue
            if not cyclic_quotient(N, H):
                continue
            sub = chain(N)
            if sub is not None:
                result = sub + (H,)
                break
        memo[key] = result
        return result

    c = chain(gc.whole(G))
    if c is None:
        return None
    return HypersolvableChain(c, tuple(c[i].order // c[i - 1].order for i in range(1, len(c))))


# lower-bound exponent ---------------------------------------------------------------

def pullback_exponent(GG: GammaGroup, c: ht.CountingFunction, A: Subgroup) -> Fraction:
    """a(ι*c) for the inclusion ι of the Γ-stable subgroup A."""
    sub, inc = gs.restrict(GG, A)
    return ht.invariants_of(ht.pullback_counting(inc, sub, GG, c)).a


def lower_bound_exponent(GG: GammaGroup, c: ht.CountingFunction,
                         decomposition: Optional[Decomposition] = None,
                         bound: Optional[int] = None) -> tuple[Fraction, Decomposition]:
    """Exponent a(ι*c) of the lower bound C·B^a on connected torsors.

    Commutative G gives a(c) itself. Otherwise the value is maximized over all
    decompositions unless one is passed explicitly.
    """
    if not GG.tame:
        raise NotTame("lower bound requires a tame group scheme")
    if not c.star.same_as(gs.g_star(GG)):
        raise ValidationError("counting function lives on a different G*")
    if decomposition is not None:
        return pullback_exponent(GG, c, decomposition.A), decomposition
    decs = decompositions(GG, bound)
    if GG.G.is_abelian():
        return ht.invariants_of(c).a, decs[0]
    best = None
    for d in decs:
        a = pullback_exponent(GG, c, d.A)
        if best is None or a > best[0]:
            best = (a, d)
    return best
