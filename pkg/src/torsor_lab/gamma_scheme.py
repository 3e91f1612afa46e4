"""Finite étale group schemes modeled as finite groups with a Γ-action.

A :class:`GammaGroup` is a finite group ``G`` together with a finite group
``gamma`` (a finite quotient of the absolute Galois group through which the
action factors), an action ``act`` of ``gamma`` by automorphisms of ``G`` and
a cyclotomic character ``chi`` recording how ``gamma`` acts on the roots of
unity: ``γ(ζ) = ζ^chi(γ)``.

Homomorphisms ``μ_e -> G`` are identified with their value ``g`` on a fixed
generator ``ζ``. Transporting ``f`` by ``γ`` gives ``γ∘f∘γ⁻¹``, which sends
``ζ`` to ``act(γ)(g)^(chi(γ)⁻¹ mod e)``; this is the action used on ``G*``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import group_core as gc
from .errors import (
    ActNotHom,
    ChiNotHom,
    ChiNotUnit,
    GammaMismatch,
    NotACocycle,
    NotEquivariant,
    NotInjective,
    NotNormal,
    NotStable,
    PhiNotEquivariant,
    TrivialKernelViolated,
    ValidationError,
)
from .group_core import FiniteGroup, GroupHom, Subgroup


@dataclass(frozen=True, eq=False)
class GammaGroup:
    """G with an action of the finite group ``gamma``.

    ``act[γ]`` is the automorphism of G by which γ acts, as a permutation of
    G's elements. ``chi[γ]`` is a unit modulo ``chi_modulus``, a multiple of
    the exponent of G; only its residue mod the exponent matters for G*, the
    larger modulus lets subquotients and extensions share one character.
    """

    G: FiniteGroup
    gamma: FiniteGroup
    act: tuple
    chi: tuple
    chi_modulus: int
    tame: bool = True
    name: Optional[str] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def exponent(self) -> int:
        return self.G.exponent

    @property
    def is_constant(self) -> bool:
        ident = tuple(range(self.G.order))
        return all(p == ident for p in self.act)

    def apply(self, gamma: int, g: int) -> int:
        return self.act[gamma][g]

    def chi_mod_exponent(self, gamma: int) -> int:
        return self.chi[gamma] % self.exponent

    def kernel_of_action(self) -> Subgroup:
        ident = tuple(range(self.G.order))
        return Subgroup(self.gamma, (y for y in self.gamma if self.act[y] == ident))

    def __repr__(self):
        tag = self.name or self.G.name or "G"
        return f"<GammaGroup {tag} |G|={self.G.order} |Γ|={self.gamma.order}>"


def _units_mod(e: int, x: int) -> bool:
    return math.gcd(x, e) == 1


def make_gamma_group(G: FiniteGroup, gamma: FiniteGroup, act=None, chi=None,
                     chi_modulus: Optional[int] = None, tame: bool = True,
                     name: Optional[str] = None) -> GammaGroup:
    """Validate and assemble a GammaGroup.

    ``act`` defaults to the trivial action, ``chi`` to the trivial character.
    ``act`` may also be a GroupHom into :func:`group_core.automorphisms_of`.
    """
    n, m = G.order, gamma.order
    ident = tuple(range(n))
    if act is None:
        act = [ident] * m
    elif isinstance(act, GroupHom):
        act = [act.target.labels[act.map[y]] for y in gamma]
    act = tuple(tuple(p) for p in act)
    if len(act) != m:
        raise ActNotHom(f"action has {len(act)} entries but Γ has order {m}")
    for y, p in enumerate(act):
        if not gc.is_automorphism(G, p):
            raise ActNotHom(f"act({y}) is not an automorphism of G")
    for y1 in gamma:
        for y2 in gamma:
            if act[gamma.table[y1][y2]] != gc.perm_mul(act[y1], act[y2]):
                raise ActNotHom(f"act({y1}*{y2}) != act({y1})∘act({y2})")
    e = G.exponent
    modulus = e if chi_modulus is None else int(chi_modulus)
    if modulus <= 0 or modulus % e:
        raise ChiNotUnit(f"chi modulus {modulus} is not a positive multiple of the exponent {e}")
    if chi is None:
        chi = [1] * m
    chi = tuple(int(c) % modulus for c in chi)
    if len(chi) != m:
        raise ChiNotHom(f"chi has {len(chi)} entries but Γ has order {m}")
    for y, c in enumerate(chi):
        if not _units_mod(modulus, c):
            raise ChiNotUnit(f"chi({y}) = {c} is not a unit mod {modulus}")
    if chi[0] != 1 % modulus:
        raise ChiNotHom("chi(1) != 1")
    for y1 in gamma:
        for y2 in gamma:
            if chi[gamma.table[y1][y2]] != (chi[y1] * chi[y2]) % modulus:
                raise ChiNotHom(f"chi({y1}*{y2}) != chi({y1})chi({y2})")
    return GammaGroup(G, gamma, act, chi, modulus, tame=tame, name=name)


def constant(G: FiniteGroup, gamma: Optional[FiniteGroup] = None, chi=None,
             chi_modulus=None, name=None) -> GammaGroup:
    return make_gamma_group(G, gamma if gamma is not None else gc.trivial_group(),
                            chi=chi, chi_modulus=chi_modulus, name=name)


def extend_from_generators(gamma: FiniteGroup, gens: Sequence[int], images: Sequence,
                           mul, identity):
    """Extend values on generators of Γ multiplicatively: f(x·s) = f(x)·f(s)."""
    f = [None] * gamma.order
    f[0] = identity
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for s, im in zip(gens, images):
                y = gamma.table[x][s]
                v = mul(f[x], im)
                if f[y] is None:
                    f[y] = v
                    nxt.append(y)
                elif f[y] != v:
                    raise ActNotHom(f"generator images are inconsistent at Γ element {y}")
        frontier = nxt
    if any(v is None for v in f):
        raise ActNotHom("Γ generators do not generate Γ")
    return f


# G* ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PointedGammaSet:
    """Conjugacy classes of G with the induced Γ-action; point 0 is the basepoint."""

    points: tuple           # point index -> sorted tuple of group elements
    action: tuple           # action[γ][p]
    class_of: tuple         # group element -> point index
    gamma: FiniteGroup
    basepoint: int = 0

    def __len__(self):
        return len(self.points)

    def act(self, gamma: int, p: int) -> int:
        return self.action[gamma][p]

    def orbits(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for p in range(len(self.points)):
            if p in seen:
                continue
            orb = sorted({row[p] for row in self.action})
            seen.update(orb)
            out.append(tuple(orb))
        return out

    def orbit_of(self, p: int) -> tuple[int, ...]:
        return tuple(sorted({row[p] for row in self.action}))

    def same_as(self, other: "PointedGammaSet") -> bool:
        return (self.points == other.points and self.action == other.action
                and self.basepoint == other.basepoint)


def g_star(GG: GammaGroup) -> PointedGammaSet:
    """The pointed Γ-set G*: γ·[g] = [act(γ)(g)^(chi(γ)⁻¹ mod e)]."""
    cached = GG._cache.get("g_star")
    if cached is not None:
        return cached
    G = GG.G
    e = G.exponent
    classes = G.conjugacy_classes()
    cidx = G.class_index()
    action = []
    for y in GG.gamma:
        k = pow(GG.chi[y] % e, -1, e) if e > 1 else 1
        p = GG.act[y]
        action.append(tuple(cidx[G.power(p[cls[0]], k)] for cls in classes))
    star = PointedGammaSet(points=classes, action=tuple(action), class_of=cidx, gamma=GG.gamma)
    GG._cache["g_star"] = star
    return star


def same_gamma(a: GammaGroup, b: GammaGroup) -> bool:
    return a.gamma.same_table(b.gamma)


def star_map(iota: GroupHom, sub: GammaGroup, big: GammaGroup) -> tuple[int, ...]:
    """The pointed Γ-map sub* -> big* induced by a Γ-equivariant immersion."""
    if not same_gamma(sub, big):
        raise GammaMismatch("immersion between Γ-groups over different Γ")
    if not iota.source.same_table(sub.G) or not iota.target.same_table(big.G):
        raise ValidationError("immersion does not connect the given groups")
    iota.check()
    if not iota.is_injective:
        raise NotInjective("immersion is not injective")
    for y in sub.gamma:
        for g in sub.G:
            if iota(sub.act[y][g]) != big.act[y][iota(g)]:
                raise NotEquivariant(f"iota(γ·g) != γ·iota(g) for γ={y}, g={g}")
    e_sub = sub.exponent
    for y in sub.gamma:
        if (sub.chi[y] - big.chi[y]) % e_sub:
            raise NotEquivariant(f"chi mismatch at γ={y} modulo {e_sub}")
    s_sub, s_big = g_star(sub), g_star(big)
    out = tuple(s_big.class_of[iota(cls[0])] for cls in s_sub.points)
    for p, q in enumerate(out):
        if (q == s_big.basepoint) != (p == s_sub.basepoint):
            raise TrivialKernelViolated(f"point {p} maps to the basepoint")
    for y in sub.gamma:
        for p in range(len(out)):
            if out[s_sub.action[y][p]] != s_big.action[y][out[p]]:
                raise NotEquivariant(f"star map not Γ-equivariant at γ={y}, point {p}")
    return out


# subgroups, quotients and twists -----------------------------------------------

def is_stable(GG: GammaGroup, H) -> bool:
    members = H.members if isinstance(H, Subgroup) else tuple(H)
    s = set(members)
    return all(GG.act[y][h] in s for y in GG.gamma for h in members)


def gamma_stable_subgroups(GG: GammaGroup, bound=None) -> list[Subgroup]:
    return [H for H in gc.subgroups_of(GG.G, bound) if is_stable(GG, H)]


def restrict(GG: GammaGroup, H) -> tuple[GammaGroup, GroupHom]:
    """The Γ-stable subgroup H as a Γ-group, with its inclusion into G."""
    if not isinstance(H, Subgroup):
        H = gc.make_subgroup(GG.G, H)
    if not is_stable(GG, H):
        raise NotStable(f"{H} is not Γ-stable")
    S, inc = gc.induced_subgroup(GG.G, H)
    pos = {g: i for i, g in enumerate(H.members)}
    act = [tuple(pos[p[h]] for h in H.members) for p in GG.act]
    sub = GammaGroup(S, GG.gamma, tuple(act), GG.chi, GG.chi_modulus, tame=GG.tame)
    return sub, inc


def gamma_quotient(GG: GammaGroup, N) -> tuple[GammaGroup, GroupHom]:
    if not isinstance(N, Subgroup):
        N = gc.make_subgroup(GG.G, N)
    if not is_stable(GG, N):
        raise NotStable(f"{N} is not Γ-stable")
    if not gc.is_normal(GG.G, N):
        raise NotNormal(f"{N} is not normal")
    Q, proj = gc.quotient_by(GG.G, N)
    act = [tuple(proj(p[r]) for r in Q.labels) for p in GG.act]
    return GammaGroup(Q, GG.gamma, tuple(act), GG.chi, GG.chi_modulus, tame=GG.tame), proj


def cocycle_values(GG: GammaGroup, sigma) -> tuple[int, ...]:
    """Values of ``sigma`` (a Cocycle or a sequence indexed by Γ), checked against GG."""
    values = tuple(getattr(sigma, "values", sigma))
    G, gamma = GG.G, GG.gamma
    if len(values) != gamma.order or any(not 0 <= v < G.order for v in values):
        raise NotACocycle("cocycle values do not match Γ and G")
    if values[0] != 0:
        raise NotACocycle("cocycle is not trivial at the identity of Γ")
    t = G.table
    for y1 in gamma:
        p = GG.act[y1]
        for y2 in gamma:
            if values[gamma.table[y1][y2]] != t[values[y1]][p[values[y2]]]:
                raise NotACocycle(f"cocycle identity fails for ({y1}, {y2})")
    return values


def twist(GG: GammaGroup, sigma) -> GammaGroup:
    """Twist by a cocycle: γ·g = σ(γ)·act(γ)(g)·σ(γ)⁻¹."""
    values = cocycle_values(GG, sigma)
    G = GG.G
    act = []
    for y in GG.gamma:
        s, p = values[y], GG.act[y]
        act.append(tuple(G.conj(s, p[g]) for g in G))
    name = f"twist({GG.name})" if GG.name else None
    return GammaGroup(G, GG.gamma, tuple(act), GG.chi, GG.chi_modulus, tame=GG.tame, name=name)


def inverse_twist_values(sigma_values: Sequence[int], G: FiniteGroup) -> tuple[int, ...]:
    """γ ↦ σ(γ)⁻¹, a cocycle for the twisted group whose twist undoes σ."""
    return tuple(G.inv(v) for v in sigma_values)


def same_action(a: GammaGroup, b: GammaGroup) -> bool:
    return (a.G.same_table(b.G) and same_gamma(a, b) and a.act == b.act
            and all((x - y) % a.exponent == 0 for x, y in zip(a.chi, b.chi)))


# semidirect products -------------------------------------------------------------

def _common_chi(A: GammaGroup, K: GammaGroup):
    """Combine two characters by CRT; None if they disagree."""
    m1, m2 = A.chi_modulus, K.chi_modulus
    g = math.gcd(m1, m2)
    M = m1 * m2 // g
    out = []
    for c1, c2 in zip(A.chi, K.chi):
        if (c1 - c2) % g:
            return None, M
        x = next(v for v in range(c1, M, m1) if (v - c2) % m2 == 0)
        out.append(x)
    return tuple(out), M


@dataclass(frozen=True, eq=False)
class GammaSemidirect:
    product: GammaGroup
    sd: gc.SemidirectProduct
    a: GammaGroup
    k: GammaGroup


def gamma_semidirect(A: GammaGroup, K: GammaGroup, phi, chi=None, chi_modulus=None) -> GammaSemidirect:
    """A ⋊_φ K with coordinatewise Γ-action γ·(a,k) = (γ(a), γ(k)).

    φ must satisfy φ(γ·k) = act_A(γ)∘φ(k)∘act_A(γ)⁻¹. The character of the
    product is the CRT combination of the two characters; when its modulus is
    not a multiple of the new exponent, pass ``chi``/``chi_modulus``.
    """
    if not same_gamma(A, K):
        raise GammaMismatch("A and K carry different Γ")
    phi = gc.action_table(phi, A.G, K.G)
    for y in A.gamma:
        ay = A.act[y]
        ay_inv = gc.perm_inv(ay)
        for k in K.G:
            lhs = phi[K.act[y][k]]
            rhs = gc.perm_mul(gc.perm_mul(ay, phi[k]), ay_inv)
            if lhs != rhs:
                raise PhiNotEquivariant(f"phi(γ·k) != γ∘phi(k)∘γ⁻¹ for γ={y}, k={k}")
    sd = gc.semidirect(A.G, K.G, phi)
    nA = A.G.order
    act = []
    for y in A.gamma:
        pa, pk = A.act[y], K.act[y]
        act.append(tuple(pa[x % nA] + nA * pk[x // nA] for x in sd.group))
    if chi is None:
        chi, modulus = _common_chi(A, K)
        if chi is None:
            raise GammaMismatch("characters of A and K disagree")
        if modulus % sd.group.exponent:
            if all(c % modulus == 1 % modulus for c in chi):
                modulus = math.lcm(modulus, sd.group.exponent)
            else:
                raise GammaMismatch(
                    f"character known mod {modulus} only; exponent {sd.group.exponent} needs an explicit chi")
    else:
        modulus = chi_modulus if chi_modulus is not None else sd.group.exponent
    product = make_gamma_group(sd.group, A.gamma, act, chi, modulus, tame=A.tame and K.tame)
    return GammaSemidirect(product=product, sd=sd, a=A, k=K)
