"""Cocycles, H¹ as a pointed set, torsors as Γ-sets and local place models."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import group_core as gc
from . import gamma_scheme as gs
from .errors import (
    BoundExceeded,
    GammaMismatch,
    InsufficientPlaces,
    InvalidPlace,
    NotACocycle,
    NotASubgroup,
    NotNormal,
    NotStable,
    PlaceNotInGamma,
    SigmaNotFromK,
    ValidationError,
)
from .gamma_scheme import GammaGroup, GammaSemidirect
from .group_core import FiniteGroup, GroupHom, Subgroup

DEFAULT_SEARCH_LIMIT = 10 ** 6


@dataclass(frozen=True, eq=False)
class Cocycle:
    """A crossed homomorphism x: Γ -> G, x(γ₁γ₂) = x(γ₁)·γ₁(x(γ₂))."""

    host: GammaGroup
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", gs.cocycle_values(self.host, self.values))

    def __call__(self, gamma: int) -> int:
        return self.values[gamma]

    def __eq__(self, other):
        return isinstance(other, Cocycle) and self.values == other.values and \
            gs.same_action(self.host, other.host)

    def __hash__(self):
        return hash(self.values)

    @property
    def is_trivial(self) -> bool:
        return all(v == 0 for v in self.values)

    def __repr__(self):
        return f"Cocycle{self.values}"


def trivial_cocycle(GG: GammaGroup) -> Cocycle:
    return Cocycle(GG, (0,) * GG.gamma.order)


def enumerate_cocycles(GG: GammaGroup, limit: int = DEFAULT_SEARCH_LIMIT) -> list[Cocycle]:
    """All crossed homomorphisms, sorted by their value tuples.

    A crossed homomorphism is fixed by its values on generators of Γ; each
    assignment is extended along x(γs) = x(γ)·γ(x(s)) and kept when consistent.
    """
    cached = GG._cache.get("cocycles")
    if cached is not None:
        return list(cached)
    G, gamma = GG.G, GG.gamma
    gens = gc.generating_set(gamma)
    space = G.order ** len(gens)
    if space > limit:
        raise BoundExceeded(f"cocycle search space {space} exceeds {limit}")
    t, act = G.table, GG.act
    found = []
    for images in itertools.product(range(G.order), repeat=len(gens)):
        x = [None] * gamma.order
        x[0] = 0
        frontier = [0]
        ok = True
        while frontier and ok:
            nxt = []
            for y in frontier:
                p = act[y]
                for s, im in zip(gens, images):
                    z = gamma.table[y][s]
                    v = t[x[y]][p[im]]
                    if x[z] is None:
                        x[z] = v
                        nxt.append(z)
                    elif x[z] != v:
                        ok = False
                        break
                if not ok:
                    break
            frontier = nxt
        if ok:
            found.append(Cocycle(GG, tuple(x)))  # constructor revalidates the identity
    found.sort(key=lambda c: c.values)
    GG._cache["cocycles"] = tuple(found)
    return found


def coboundary_action(GG: GammaGroup, g: int, values: Sequence[int]) -> tuple[int, ...]:
    """γ ↦ g⁻¹·x(γ)·γ(g)."""
    G = GG.G
    gi = G.inv(g)
    return tuple(G.table[G.table[gi][v]][GG.act[y][g]] for y, v in enumerate(values))


@dataclass(frozen=True, eq=False)
class H1:
    host: GammaGroup
    cocycles: tuple
    classes: tuple          # tuples of cocycle indices; classes[0] holds the trivial cocycle
    class_of: tuple
    basepoint: int = 0

    def __len__(self):
        return len(self.classes)

    def representative(self, i: int) -> Cocycle:
        """Lexicographically least cocycle of class i."""
        return self.cocycles[self.classes[i][0]]

    def class_of_cocycle(self, x: Cocycle) -> int:
        return self.class_of[self._index()[x.values]]

    def _index(self):
        idx = self.host._cache.get("cocycle_index")
        if idx is None:
            idx = {c.values: i for i, c in enumerate(self.cocycles)}
            self.host._cache["cocycle_index"] = idx
        return idx


def h1_classes(GG: GammaGroup, limit: int = DEFAULT_SEARCH_LIMIT) -> H1:
    cached = GG._cache.get("h1")
    if cached is not None:
        return cached
    cocycles = enumerate_cocycles(GG, limit)
    index = {c.values: i for i, c in enumerate(cocycles)}
    class_of = [-1] * len(cocycles)
    classes = []
    for i, c in enumerate(cocycles):
        if class_of[i] >= 0:
            continue
        members = sorted({index[coboundary_action(GG, g, c.values)] for g in GG.G})
        for j in members:
            class_of[j] = len(classes)
        classes.append(tuple(members))
    out = H1(GG, tuple(cocycles), tuple(classes), tuple(class_of))
    GG._cache["h1"] = out
    return out


def coboundaries(GG: GammaGroup) -> set[tuple[int, ...]]:
    return {coboundary_action(GG, g, (0,) * GG.gamma.order) for g in GG.G}


# Γ-sets --------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GammaSet:
    """A finite Γ-set: ``action[γ][p]`` is the image of point p under γ."""

    gamma: FiniteGroup
    action: tuple

    def __len__(self):
        return len(self.action[0]) if self.action else 0

    def orbits(self) -> list[tuple[int, ...]]:
        n = len(self)
        seen = [False] * n
        out = []
        for p in range(n):
            if seen[p]:
                continue
            orb = sorted({row[p] for row in self.action})
            for q in orb:
                seen[q] = True
            out.append(tuple(orb))
        return out

    @property
    def is_transitive(self) -> bool:
        return len(self) > 0 and len({row[0] for row in self.action}) == len(self)

    def check(self) -> "GammaSet":
        ident = tuple(range(len(self)))
        if self.action[0] != ident:
            raise ValidationError("identity of Γ does not act trivially")
        for y1 in self.gamma:
            for y2 in self.gamma:
                row = self.action[self.gamma.table[y1][y2]]
                if row != gc.perm_mul(self.action[y1], self.action[y2]):
                    raise ValidationError(f"not an action at ({y1}, {y2})")
        return self

    def stabilizer(self, p: int) -> frozenset:
        return frozenset(y for y in self.gamma if self.action[y][p] == p)


def gamma_set_isomorphism(X: GammaSet, Y: GammaSet) -> Optional[dict]:
    """A Γ-equivariant bijection X -> Y, or None.

    Backtracks over orbits of X, trying each point of each unused Y-orbit of
    equal size as the image of the orbit's basepoint.
    """
    if not X.gamma.same_table(Y.gamma):
        raise GammaMismatch("Γ-sets over different Γ")
    if len(X) != len(Y):
        return None
    ox, oy = X.orbits(), Y.orbits()
    if sorted(map(len, ox)) != sorted(map(len, oy)):
        return None
    used = [False] * len(oy)
    mapping: dict[int, int] = {}

    def extend(x0, y0):
        local = {}
        for y in X.gamma:
            a, b = X.action[y][x0], Y.action[y][y0]
            if local.setdefault(a, b) != b:
                return None
        if len(set(local.values())) != len(local):
            return None
        return local

    def search(i):
        if i == len(ox):
            return True
        x0 = ox[i][0]
        for j, orb in enumerate(oy):
            if used[j] or len(orb) != len(ox[i]):
                continue
            for y0 in orb:
                local = extend(x0, y0)
                if local is None:
                    continue
                used[j] = True
                mapping.update(local)
                if search(i + 1):
                    return True
                used[j] = False
                for k in local:
                    del mapping[k]
        return False

    return dict(mapping) if search(0) else None


def torsor_set(x: Cocycle) -> GammaSet:
    """Geometric points of the torsor of x: γ·h = x(γ)·γ(h)."""
    GG = x.host
    t = GG.G.table
    action = tuple(tuple(t[x.values[y]][GG.act[y][h]] for h in GG.G) for y in GG.gamma)
    return GammaSet(GG.gamma, action)


def is_connected(x: Cocycle) -> bool:
    return torsor_set(x).is_transitive


def fiber_product(X: GammaSet, Y: GammaSet) -> GammaSet:
    """Pairs (p, q) with index p·|Y| + q and diagonal action."""
    if not X.gamma.same_table(Y.gamma):
        raise GammaMismatch("fiber product of Γ-sets over different Γ")
    m = len(Y)
    action = tuple(tuple(rx[p] * m + ry[q] for p in range(len(X)) for q in range(m))
                   for rx, ry in zip(X.action, Y.action))
    return GammaSet(X.gamma, action)


def trivially_acting_subgroups(GG: GammaGroup) -> list[Subgroup]:
    ker = GG.kernel_of_action().as_set
    return [D for D in gc.subgroups_of(GG.gamma) if D.as_set <= ker]


def constant_images_generate(x: Cocycle) -> bool:
    """Whether the images x(D), over subgroups D of Γ acting trivially on G, generate G."""
    images = set()
    for D in trivially_acting_subgroups(x.host):
        images.update(x.values[d] for d in D.members)
    return len(gc.closure(x.host.G, images)) == x.host.G.order


# twisting bijection -----------------------------------------------------------

def lambda_sigma(sigma: Cocycle, x: Cocycle) -> Cocycle:
    """f ↦ f·σ, from cocycles of the σ-twist back to cocycles of the original."""
    GG = sigma.host
    twisted = gs.twist(GG, sigma)
    if not gs.same_action(x.host, twisted):
        raise NotACocycle("x is not a cocycle over the σ-twisted group")
    t = GG.G.table
    return Cocycle(GG, tuple(t[a][b] for a, b in zip(x.values, sigma.values)))


def lambda_sigma_on_classes(sigma: Cocycle) -> tuple[int, ...]:
    """Induced map H¹(twist) -> H¹(original) on class indices; raises unless bijective."""
    GG = sigma.host
    twisted = gs.twist(GG, sigma)
    h_tw, h_or = h1_classes(twisted), h1_classes(GG)
    out = []
    for i in range(len(h_tw)):
        images = {h_or.class_of_cocycle(lambda_sigma(sigma, h_tw.cocycles[j]))
                  for j in h_tw.classes[i]}
        if len(images) != 1:
            raise ValidationError("Λ_σ does not respect cohomology classes")
        out.append(images.pop())
    if sorted(out) != list(range(len(h_or))):
        raise ValidationError("λ_σ is not a bijection on H¹")
    return tuple(out)


# quotients ----------------------------------------------------------------------

def quotient_cocycle(x: Cocycle, N) -> tuple[Cocycle, GroupHom]:
    """Compose x with G -> G/N for a Γ-stable normal N."""
    GG = x.host
    if not isinstance(N, Subgroup):
        N = gc.make_subgroup(GG.G, N)
    if not gs.is_stable(GG, N):
        raise NotStable(f"{N} is not Γ-stable")
    if not gc.is_normal(GG.G, N):
        raise NotNormal(f"{N} is not normal")
    Q, proj = gs.gamma_quotient(GG, N)
    return Cocycle(Q, tuple(proj(v) for v in x.values)), proj


def quotient_gamma_set(T: GammaSet, G: FiniteGroup, N) -> GammaSet:
    """Orbits of right N-translation on a torsor's points, numbered by least element."""
    cs = gc.cosets(G, N)
    which = {}
    for i, c in enumerate(cs):
        for g in c:
            which[g] = i
    action = tuple(tuple(which[row[c[0]]] for c in cs) for row in T.action)
    return GammaSet(T.gamma, action)


def push_forward(x: Cocycle, hom: GroupHom, target: GammaGroup) -> Cocycle:
    """hom∘x; the constructor rejects non-equivariant homs that break the cocycle identity."""
    if not gs.same_gamma(x.host, target):
        raise GammaMismatch("push-forward to a Γ-group over a different Γ")
    for y in target.gamma:
        for g in x.host.G:
            if hom(x.host.act[y][g]) != target.act[y][hom(g)]:
                raise gs.NotEquivariant(f"hom is not Γ-equivariant at γ={y}, g={g}")
    return Cocycle(target, tuple(hom(v) for v in x.values))


# semidirect products and the map u_σ^φ ------------------------------------------

def sigma_from_theta(gsd: GammaSemidirect, theta: Cocycle) -> Cocycle:
    """γ ↦ (1, θ(γ))."""
    if not gs.same_action(theta.host, gsd.k):
        raise NotACocycle("θ is not a cocycle of K")
    nA = gsd.a.G.order
    return Cocycle(gsd.product, tuple(nA * k for k in theta.values))


def twisted_kernel(gsd: GammaSemidirect, theta: Cocycle) -> GammaGroup:
    """σA: the A-part of the σ-twisted product, γ·a = φ(θ(γ))(γ(a))."""
    sigma = sigma_from_theta(gsd, theta)
    tw = gs.twist(gsd.product, sigma)
    sub, _ = gs.restrict(tw, gsd.sd.a_subgroup)
    return sub


def u_sigma_phi(gsd: GammaSemidirect, theta: Cocycle, x: Cocycle,
                sigma: Optional[Cocycle] = None) -> Cocycle:
    """γ ↦ (x(γ), θ(γ)) over A ⋊_φ K, for x a cocycle of the twisted kernel."""
    expected = sigma_from_theta(gsd, theta)
    if sigma is not None and sigma.values != expected.values:
        raise SigmaNotFromK("σ is not the image of θ under k ↦ (1, k)")
    if not gs.same_action(x.host, twisted_kernel(gsd, theta)):
        raise NotACocycle("x is not a cocycle of the σ-twisted kernel")
    nA = gsd.a.G.order
    return Cocycle(gsd.product, tuple(a + nA * k for a, k in zip(x.values, theta.values)))


@dataclass(frozen=True, eq=False)
class DecompositionMap:
    """A ⋊ K -> G, (a, k) ↦ a·k, for A normal and K a subgroup of G with ⟨A, K⟩ = G."""
    gsd: GammaSemidirect
    mult: GroupHom
    target: GammaGroup

    @property
    def kernel(self) -> Subgroup:
        return self.mult.kernel()


def decomposition_map(GG: GammaGroup, A, K) -> DecompositionMap:
    G = GG.G
    A = A if isinstance(A, Subgroup) else gc.make_subgroup(G, A)
    K = K if isinstance(K, Subgroup) else gc.make_subgroup(G, K)
    if not gc.is_normal(G, A):
        raise NotNormal(f"{A} is not normal")
    a_gg, _ = gs.restrict(GG, A)
    k_gg, _ = gs.restrict(GG, K)
    phi = gc.conjugation_action(G, A, K)
    gsd = gs.gamma_semidirect(a_gg, k_gg, phi)
    nA = A.order
    mult = [G.mul(A.members[x % nA], K.members[x // nA]) for x in gsd.product.G]
    hom = GroupHom(gsd.product.G, G, mult).check()
    if not hom.is_surjective:
        raise ValidationError("A and K do not generate G")
    return DecompositionMap(gsd, hom, GG)


# places -------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PlaceModel:
    """A finite model of a place: decomposition D ≥ inertia I ∋ τ, Frobenius frob ∈ D."""

    label: str
    q: int
    decomposition: Subgroup
    inertia: Subgroup
    tame_generator: int
    frobenius: int


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def make_place(gamma: FiniteGroup, label: str, q: int, decomposition: Iterable[int],
               inertia: Iterable[int], tame_generator: int, frobenius: int) -> PlaceModel:
    D, I = list(decomposition), list(inertia)
    for name, members in (("decomposition", D), ("inertia", I)):
        if any(not (isinstance(g, int) and 0 <= g < gamma.order) for g in members) \
                or not gc.is_subgroup(gamma, members):
            raise PlaceNotInGamma(f"{name} group {members} of place {label} is not a subgroup of Γ")
    D, I = Subgroup(gamma, D), Subgroup(gamma, I)
    if not I <= D:
        raise InvalidPlace(f"inertia of {label} is not inside its decomposition group")
    if any(gamma.conj(d, i) not in I for d in D for i in I):
        raise InvalidPlace(f"inertia of {label} is not normal in its decomposition group")
    if tame_generator not in I:
        raise InvalidPlace(f"tame generator {tame_generator} of {label} is not in inertia")
    if gc.closure(gamma, [tame_generator]) != I.as_set:
        raise InvalidPlace(f"tame generator of {label} does not generate inertia")
    if frobenius not in D:
        raise InvalidPlace(f"Frobenius of {label} is not in its decomposition group")
    if gc.closure(gamma, list(I.members) + [frobenius]) != D.as_set:
        raise InvalidPlace(f"D/I of {label} is not generated by the Frobenius")
    if not _is_prime_power(int(q)):
        raise InvalidPlace(f"q = {q} of {label} is not a prime power")
    return PlaceModel(label, int(q), D, I, tame_generator, frobenius)


def _check_place(GG: GammaGroup, v: PlaceModel):
    if v.decomposition.members[-1] >= GG.gamma.order or not gc.is_subgroup(GG.gamma, v.decomposition.members):
        raise PlaceNotInGamma(f"place {v.label} does not live in this Γ")


def is_unramified(x: Cocycle, v: PlaceModel) -> bool:
    _check_place(x.host, v)
    return all(x.values[i] == 0 for i in v.inertia.members)


def psi_v(x: Cocycle, v: PlaceModel) -> int:
    """Point of G* hit by the image of the tame inertia generator."""
    _check_place(x.host, v)
    return gs.g_star(x.host).class_of[x.values[v.tame_generator]]


def local_class_key(x: Cocycle, v: PlaceModel) -> tuple[int, ...]:
    """Canonical label of the restriction of x to D_v: least value tuple over local coboundaries."""
    _check_place(x.host, v)
    GG = x.host
    G = GG.G
    D = v.decomposition.members
    best = None
    for g in G:
        gi = G.inv(g)
        key = tuple(G.table[G.table[gi][x.values[d]]][GG.act[d][g]] for d in D)
        if best is None or key < best:
            best = key
    return best


@dataclass(frozen=True, eq=False)
class ForcingConditions:
    places: tuple
    targets: dict           # place label -> required value of x at the Frobenius
    excluded: frozenset

    def satisfied_by(self, x: Cocycle) -> bool:
        return all(is_unramified(x, v) and x.values[v.frobenius] == self.targets[v.label]
                   for v in self.places)


def acts_trivially(GG: GammaGroup, D: Subgroup) -> bool:
    ident = tuple(range(GG.G.order))
    return all(GG.act[d] == ident for d in D.members)


def forcing_conditions(GG: GammaGroup, available: Sequence[PlaceModel],
                       excluded: Iterable[str] = ()) -> ForcingConditions:
    """One place per nontrivial g: constant over D_v, unramified, Frobenius ↦ g.

    A cocycle meeting every condition has x(D_{v_g}) = ⟨g⟩, so these images
    generate G and the torsor is connected.
    """
    excluded = frozenset(excluded)
    G = GG.G
    used = set()
    chosen, targets = [], {}
    for g in range(1, G.order):
        pick = None
        for v in available:
            _check_place(GG, v)
            if v.label in excluded or v.label in used:
                continue
            if not acts_trivially(GG, v.decomposition):
                continue
            if (v.decomposition.order // v.inertia.order) % G.element_order(g):
                continue
            pick = v
            break
        if pick is None:
            raise InsufficientPlaces(f"no usable place for element {g}")
        used.add(pick.label)
        chosen.append(pick)
        targets[pick.label] = g
    return ForcingConditions(tuple(chosen), targets, excluded)


def degree_one_density(Gal: FiniteGroup, H) -> Fraction:
    """|⋃ gHg⁻¹| / |Gal|."""
    if not isinstance(H, Subgroup):
        H = gc.make_subgroup(Gal, H)
    elif not gc.is_subgroup(Gal, H.members):
        raise NotASubgroup(f"{H} is not a subgroup")
    union = {Gal.conj(g, h) for g in Gal for h in H.members}
    return Fraction(len(union), Gal.order)
