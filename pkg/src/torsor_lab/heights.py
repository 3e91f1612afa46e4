"""Counting functions on G*, the invariants a and b, and heights from local data."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from . import cohomology as co
from . import gamma_scheme as gs
from . import group_core as gc
from .errors import (
    MissingOverride,
    NotFaithful,
    NotGammaInvariant,
    RamifiedOutsideList,
    TrivialGroup,
    ValidationError,
)
from .gamma_scheme import GammaGroup, PointedGammaSet
from .group_core import GroupHom


@dataclass(frozen=True, eq=False)
class CountingFunction:
    star: PointedGammaSet
    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != len(self.star):
            raise ValidationError(f"{len(vals)} values for {len(self.star)} points of G*")
        for p, v in enumerate(vals):
            if p == self.star.basepoint:
                if v != 0:
                    raise ValidationError("counting function is nonzero at the basepoint")
            elif v <= 0:
                raise ValidationError(f"counting function vanishes off the basepoint (point {p})")
        for row in self.star.action:
            for p, v in enumerate(vals):
                if vals[row[p]] != v:
                    raise NotGammaInvariant(f"value at point {p} is not Γ-invariant")

    def __call__(self, point: int) -> Fraction:
        return self.values[point]

    def of_element(self, g: int) -> Fraction:
        return self.values[self.star.class_of[g]]


@dataclass(frozen=True)
class Invariants:
    a: Fraction
    b_points: int
    b_orbits: int
    minimizing_points: tuple

    def report(self) -> dict:
        return {"a": str(self.a), "b_points": self.b_points, "b_orbits": self.b_orbits,
                "minimizing_classes": list(self.minimizing_points)}


def counting_function(GG: GammaGroup, values: Sequence) -> CountingFunction:
    return CountingFunction(gs.g_star(GG), tuple(values))


def index_function(GG: GammaGroup, perms: Sequence[Sequence[int]]) -> CountingFunction:
    """c(g) = n − #orbits of ⟨g⟩ on n points, for a faithful permutation representation.

    ``perms[g]`` is the permutation by which element g acts.
    """
    G = GG.G
    perms = [tuple(p) for p in perms]
    if len(perms) != G.order:
        raise NotFaithful(f"{len(perms)} permutations for a group of order {G.order}")
    n = len(perms[0])
    for a in G:
        for b in G:
            if perms[G.table[a][b]] != gc.perm_mul(perms[a], perms[b]):
                raise NotFaithful(f"representation is not a homomorphism at ({a}, {b})")
    if len(set(perms)) != G.order:
        raise NotFaithful("representation has a nontrivial kernel")
    star = gs.g_star(GG)
    values = [Fraction(n - len(gc.perm_cycles(perms[cls[0]]))) for cls in star.points]
    return CountingFunction(star, tuple(values))


def malle_index_function(GG: GammaGroup, embedding=None) -> CountingFunction:
    """Index counting function of a permutation embedding.

    ``embedding`` is a GroupHom into a permutation group, a per-element list of
    permutations, or None to use G's own permutation labels.
    """
    G = GG.G
    if embedding is None:
        if not G.is_permutation_group():
            raise NotFaithful("group carries no permutation representation; pass an embedding")
        perms = G.labels
    elif isinstance(embedding, GroupHom):
        if not embedding.target.is_permutation_group():
            raise NotFaithful("embedding target is not a permutation group")
        perms = [embedding.target.labels[embedding.map[g]] for g in G]
    else:
        perms = embedding
    return index_function(GG, perms)


def regular_index_function(GG: GammaGroup) -> CountingFunction:
    """Index function of the regular representation: c(g) = |G| − |G|/ord(g)."""
    G = GG.G
    perms = [tuple(G.table[g][h] for h in G) for g in G]
    return index_function(GG, perms)


def invariants_of(c: CountingFunction) -> Invariants:
    star = c.star
    nonbase = [p for p in range(len(star)) if p != star.basepoint]
    if not nonbase:
        raise TrivialGroup("G* has no point besides the basepoint")
    m = min(c.values[p] for p in nonbase)
    pts = tuple(p for p in nonbase if c.values[p] == m)
    orbits = {star.orbit_of(p) for p in pts}
    return Invariants(a=1 / m, b_points=len(pts), b_orbits=len(orbits), minimizing_points=pts)


def pullback_counting(iota: GroupHom, sub: GammaGroup, big: GammaGroup,
                      c: CountingFunction) -> CountingFunction:
    """ι*c = c ∘ (sub* -> big*)."""
    m = gs.star_map(iota, sub, big)
    return CountingFunction(gs.g_star(sub), tuple(c.values[q] for q in m))


def transport_to_twist(c: CountingFunction, twisted: GammaGroup) -> CountingFunction:
    """Carry c across the identification (σG)* = G*."""
    star = gs.g_star(twisted)
    if not star.same_as(c.star):
        raise ValidationError("twisted G* differs from the original G*")
    return CountingFunction(star, c.values)


# heights ------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HeightSpec:
    """Height data: counting function c, bad places Σ and their local values.

    ``overrides`` maps ``(place label, local class key)`` to c_v. A Σ-place
    class without an override gets ``default_override``; None makes that an
    error.
    """

    c: CountingFunction
    sigma: frozenset = frozenset()
    overrides: Mapping = field(default_factory=dict)
    default_override: Optional[Fraction] = Fraction(0)

    def local_exponent(self, x: co.Cocycle, v: co.PlaceModel) -> Fraction:
        if v.label in self.sigma:
            key = (v.label, co.local_class_key(x, v))
            if key in self.overrides:
                return Fraction(self.overrides[key])
            if self.default_override is None:
                raise MissingOverride(f"no local value at Σ-place {v.label} for class {key[1]}")
            return Fraction(self.default_override)
        return self.c(co.psi_v(x, v))


def height_exponents(spec: HeightSpec, x: co.Cocycle, places: Sequence[co.PlaceModel],
                     ramified_at: Iterable[str] = ()) -> dict[str, Fraction]:
    labels = {v.label for v in places}
    missing = sorted(set(ramified_at) - labels)
    if missing:
        raise RamifiedOutsideList(f"x is ramified at places outside the list: {missing}")
    return {v.label: spec.local_exponent(x, v) for v in places}


def evaluate_height(spec: HeightSpec, x, places: Sequence[co.PlaceModel],
                    ramified_at: Iterable[str] = ()) -> Fraction:
    """∏_v q_v^{c_v(x)} as an exact rational.

    ``x`` is a Cocycle or an ``(H1, class index)`` pair, evaluated on the
    class's least representative. Exponents must be integers for the value to
    be rational; use :func:`log_height` otherwise.
    """
    x = _as_cocycle(x)
    exps = height_exponents(spec, x, places, ramified_at)
    out = Fraction(1)
    for v in places:
        e = exps[v.label]
        if e.denominator != 1:
            raise ValidationError(f"non-integral exponent {e} at {v.label}; use log_height")
        out *= Fraction(v.q) ** int(e)
    return out


def log_height(spec: HeightSpec, x, places: Sequence[co.PlaceModel],
               ramified_at: Iterable[str] = ()) -> float:
    x = _as_cocycle(x)
    exps = height_exponents(spec, x, places, ramified_at)
    return sum(float(exps[v.label]) * math.log(v.q) for v in places)


def _as_cocycle(x) -> co.Cocycle:
    if isinstance(x, co.Cocycle):
        return x
    h1, idx = x
    return h1.representative(idx)
