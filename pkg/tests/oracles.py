"""Independent brute-force oracles used to cross-check the library.

These work directly on multiplication tables and plain Python sets and do
not call into the package beyond reading ``G.table``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def subsets_closed(table):
    """All subsets containing 0 that are closed under the table (finite => subgroups)."""
    n = len(table)
    out = []
    rest = list(range(1, n))
    for r in range(n):
        for combo in itertools.combinations(rest, r):
            s = {0, *combo}
            if all(table[a][b] in s for a in s for b in s):
                out.append(frozenset(s))
    return out


def conj_classes(table):
    n = len(table)
    inv = [next(h for h in range(n) if table[g][h] == 0) for g in range(n)]
    seen, out = set(), []
    for g in range(n):
        if g in seen:
            continue
        cls = frozenset(table[table[h][g]][inv[h]] for h in range(n))
        seen |= cls
        out.append(cls)
    return out


def all_maps_cocycles(table, act, gamma_table):
    """Every function Γ -> G satisfying x(ab) = x(a)·a(x(b)); exhaustive over |G|^|Γ| maps."""
    n, m = len(table), len(gamma_table)
    out = []
    for vals in itertools.product(range(n), repeat=m):
        if all(vals[gamma_table[a][b]] == table[vals[a]][act[a][vals[b]]]
               for a in range(m) for b in range(m)):
            out.append(vals)
    return out


def coboundary_orbits(table, act, cocycles):
    """Orbits of g: x ↦ (γ ↦ g⁻¹ x(γ) γ(g)) by union-find."""
    n = len(table)
    inv = [next(h for h in range(n) if table[g][h] == 0) for g in range(n)]
    index = {c: i for i, c in enumerate(cocycles)}
    parent = list(range(len(cocycles)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, x in enumerate(cocycles):
        for g in range(n):
            y = tuple(table[table[inv[g]][v]][act[a][g]] for a, v in enumerate(x))
            parent[find(i)] = find(index[y])
    groups = {}
    for i in range(len(cocycles)):
        groups.setdefault(find(i), []).append(i)
    return sorted(len(v) for v in groups.values())


def conjugate_union_density(table, H):
    """|∪_g gHg⁻¹| / |G| by direct enumeration."""
    n = len(table)
    inv = [next(h for h in range(n) if table[g][h] == 0) for g in range(n)]
    union = {table[table[g][h]][inv[g]] for g in range(n) for h in H}
    return Fraction(len(union), n)


def is_iso_table(t1, t2):
    """Brute-force isomorphism test by permutations fixing 0 (orders ≤ 8)."""
    n = len(t1)
    if n != len(t2):
        return False
    for perm in itertools.permutations(range(1, n)):
        f = (0,) + perm
        if all(f[t1[a][b]] == t2[f[a]][f[b]] for a in range(n) for b in range(n)):
            return True
    return False
