"""Small Γ-groups used by the exhaustive checks and the built-in CLI models."""

from __future__ import annotations

import functools
from typing import Iterator

from . import gamma_scheme as gs
from . import group_core as gc
from .errors import ValidationError


@functools.lru_cache(maxsize=None)
def small_groups(max_order: int = 8) -> tuple:
    """(name, group) for every group of order ≤ 8, plus S4, A4 and A5 above that."""
    groups = [
        ("C1", gc.cyclic(1)), ("C2", gc.cyclic(2)), ("C3", gc.cyclic(3)),
        ("C4", gc.cyclic(4)), ("V4", gc.klein_four()), ("C5", gc.cyclic(5)),
        ("C6", gc.cyclic(6)), ("S3", gc.symmetric(3)), ("C7", gc.cyclic(7)),
        ("C8", gc.cyclic(8)), ("C2xC4", gc.direct_product(gc.cyclic(2), gc.cyclic(4))),
        ("C2^3", gc.direct_product(gc.klein_four(), gc.cyclic(2), name="C2^3")),
        ("D8", gc.dihedral(4)), ("Q8", gc.quaternion()),
        ("A4", gc.alternating(4)), ("S4", gc.symmetric(4)), ("A5", gc.alternating(5)),
    ]
    return tuple((n, G) for n, G in groups if G.order <= max_order)


@functools.lru_cache(maxsize=None)
def galois_groups(max_order: int = 4) -> tuple:
    gs_ = [("C1", gc.cyclic(1)), ("C2", gc.cyclic(2)), ("C3", gc.cyclic(3)),
           ("C4", gc.cyclic(4)), ("V4", gc.klein_four())]
    return tuple((n, G) for n, G in gs_ if G.order <= max_order)


def sign_characters(gamma: gc.FiniteGroup, e: int) -> list[tuple]:
    """The trivial character and, when −1 ≢ 1 mod e, one character Γ -> {±1}."""
    out = [tuple([1] * gamma.order)]
    if e > 2:
        signs = [f for f in gc.homomorphisms(gamma, gc.cyclic(2)) if any(f)]
        if signs:
            out.append(tuple(e - 1 if s else 1 for s in signs[0]))
    return out


def gamma_models(max_group: int = 8, max_gamma: int = 4, both_chi: bool = True) -> Iterator[gs.GammaGroup]:
    """Every action Γ -> Aut(G) for the catalog G and Γ, with each sign character."""
    for gname, G in small_groups(max_group):
        aut = gc.automorphisms_of(G)
        for hname, gamma in galois_groups(max_gamma):
            for f in gc.homomorphisms(gamma, aut):
                act = [aut.labels[f[y]] for y in gamma]
                chis = sign_characters(gamma, G.exponent) if both_chi else [None]
                for chi in chis:
                    yield gs.make_gamma_group(G, gamma, act, chi, name=f"{gname}/{hname}")


def semidirect_triples(max_product: int = 24) -> Iterator[tuple]:
    """Γ-semidirect products A ⋊ K for every Γ-equivariant φ with |A|·|K| ≤ max_product."""
    a_parts = [("C2", gc.cyclic(2)), ("C3", gc.cyclic(3)), ("C4", gc.cyclic(4)), ("V4", gc.klein_four())]
    k_parts = [("C1", gc.cyclic(1)), ("C2", gc.cyclic(2)), ("C3", gc.cyclic(3)),
               ("V4", gc.klein_four()), ("S3", gc.symmetric(3))]
    gammas = galois_groups(4)
    for _, gamma in gammas:
        for an, A in a_parts:
            autA = gc.automorphisms_of(A)
            a_models = [gs.make_gamma_group(A, gamma, [autA.labels[f[y]] for y in gamma])
                        for f in gc.homomorphisms(gamma, autA)]
            for kn, K in k_parts:
                if A.order * K.order > max_product:
                    continue
                autK = gc.automorphisms_of(K)
                k_models = [gs.make_gamma_group(K, gamma, [autK.labels[f[y]] for y in gamma])
                            for f in gc.homomorphisms(gamma, autK)]
                phis = [tuple(autA.labels[v] for v in f) for f in gc.homomorphisms(K, autA)]
                for a_gg in a_models:
                    for k_gg in k_models:
                        for phi in phis:
                            try:
                                yield gs.gamma_semidirect(a_gg, k_gg, phi)
                            except gs.PhiNotEquivariant:
                                continue


def a4_family() -> list[tuple[gc.Subgroup, gs.GammaGroup]]:
    """A4 with Γ = P ≤ S4 acting by conjugation, for every subgroup P of S4."""
    A4, S4 = gc.alternating(4), gc.symmetric(4)
    out = []
    for P in gc.subgroups_of(S4):
        gamma, inc = gc.induced_subgroup(S4, P)
        act = []
        for y in gamma:
            p = S4.labels[inc(y)]
            pinv = gc.perm_inv(p)
            act.append(tuple(A4.index_of(gc.perm_mul(gc.perm_mul(p, a), pinv)) for a in A4.labels))
        out.append((P, gs.make_gamma_group(A4, gamma, act, name=f"A4/P{P.order}")))
    return out


def builtin_model(name: str):
    from .model_io import Model
    from . import cohomology as co
    key = name.strip()
    if key in ("C1", "trivial"):
        return Model(gs.constant(gc.cyclic(1)), name="C1")
    if key == "C2":
        return Model(gs.constant(gc.cyclic(2)), name="C2")
    if key == "S3":
        return Model(gs.constant(gc.symmetric(3)), name="S3")
    if key == "A4":
        return Model(gs.constant(gc.alternating(4)), name="A4")
    if key == "A5":
        return Model(gs.constant(gc.alternating(5)), name="A5")
    if key == "mu3":
        C3, C2 = gc.cyclic(3), gc.cyclic(2)
        gg = gs.make_gamma_group(C3, C2, [(0, 1, 2), (0, 2, 1)], [1, 2], name="mu3")
        return Model(gg, [co.make_place(C2, "split", 7, [0], [0], 0, 0)], name="mu3")
    if key == "C2_over_C2":
        C2 = gc.cyclic(2)
        gg = gs.constant(C2, C2, name="C2_over_C2")
        places = [co.make_place(C2, "inert", 3, [0, 1], [0], 0, 1),
                  co.make_place(C2, "ramified", 5, [0, 1], [0, 1], 1, 1)]
        return Model(gg, places, name="C2_over_C2")
    raise ValidationError(f"unknown built-in model {name!r}")
