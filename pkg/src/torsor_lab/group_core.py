"""Finite groups as dense multiplication tables.

Elements are the integers ``0..n-1`` with ``0`` the identity. Permutations are
0-based tuples ``p`` with ``p[i]`` the image of ``i``; they compose as
functions, ``(p*q)[i] = p[q[i]]``.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    NoIdentity,
    NoInverse,
    NonAssociative,
    NotAHomomorphism,
    NotASubgroup,
    NotClosed,
    NotIntoAut,
    NotNormal,
    ValidationError,
    check_bound,
)

Perm = tuple


def perm_mul(p: Perm, q: Perm) -> Perm:
    return tuple(p[i] for i in q)


def perm_inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def perm_cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = set()
    cycles = []
    for start in range(len(p)):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        j = p[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        cycles.append(tuple(cyc))
    return cycles


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse 1-based cycle notation such as ``"(1,2)(3,4)"`` or ``"(123)"``.

    Points inside a cycle are separated by commas or whitespace; a cycle with
    no separator is read digit by digit (only unambiguous when degree < 10).
    """
    text = text.strip()
    image = list(range(degree))
    if text in ("", "()", "1", "e", "id"):
        return tuple(image)
    if _CYCLE.sub("", text).strip():
        raise ValidationError(f"malformed cycle string {text!r}")
    for body in _CYCLE.findall(text):
        body = body.strip()
        if not body:
            continue
        if re.search(r"[,\s]", body):
            pts = [int(t) for t in re.split(r"[,\s]+", body) if t]
        else:
            if degree >= 10 and len(body) > 1:
                raise ValidationError(f"ambiguous cycle {body!r} for degree {degree}; use separators")
            pts = [int(ch) for ch in body]
        if len(set(pts)) != len(pts):
            raise ValidationError(f"repeated point in cycle ({body})")
        for a in pts:
            if not 1 <= a <= degree:
                raise ValidationError(f"point {a} outside 1..{degree}")
        # cycles compose right to left, like permutations
        step = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            step[a - 1] = b - 1
        image = list(perm_mul(tuple(image), tuple(step)))
    return tuple(image)


def format_cycles(p: Perm) -> str:
    cyc = [c for c in perm_cycles(p) if len(c) > 1]
    if not cyc:
        return "()"
    return "".join("(" + ",".join(str(i + 1) for i in c) + ")" for c in cyc)


class FiniteGroup:
    """A finite group given by its multiplication table.

    Construct through :func:`build_group` (validating) or the named
    constructors; the bare constructor trusts its input.
    """

    __slots__ = ("table", "inverses", "labels", "name", "_cache")

    def __init__(self, table, labels=None, name=None):
        self.table = tuple(tuple(row) for row in table)
        n = len(self.table)
        inv = [0] * n
        for g in range(n):
            row = self.table[g]
            for h in range(n):
                if row[h] == 0:
                    inv[g] = h
                    break
        self.inverses = tuple(inv)
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        self._cache = {}

    identity = 0

    def __len__(self):
        return len(self.table)

    @property
    def order(self) -> int:
        return len(self.table)

    def __iter__(self):
        return iter(range(len(self.table)))

    def __repr__(self):
        tag = self.name or "group"
        return f"<FiniteGroup {tag} of order {self.order}>"

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    def inv(self, g: int) -> int:
        return self.inverses[g]

    def product(self, *elems: int) -> int:
        out = 0
        for g in elems:
            out = self.table[out][g]
        return out

    def conj(self, g: int, h: int) -> int:
        """g h g^-1"""
        return self.table[self.table[g][h]][self.inverses[g]]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverses[g], -k
        out, base = 0, g
        while k:
            if k & 1:
                out = self.table[out][base]
            base = self.table[base][base]
            k >>= 1
        return out

    def element_order(self, g: int) -> int:
        orders = self._cache.get("orders")
        if orders is None:
            orders = []
            for x in range(self.order):
                k, y = 1, x
                while y != 0:
                    y = self.table[y][x]
                    k += 1
                orders.append(k)
            orders = tuple(orders)
            self._cache["orders"] = orders
        return orders[g]

    @property
    def exponent(self) -> int:
        return math.lcm(*(self.element_order(g) for g in self)) if self.order else 1

    def is_abelian(self, members: Optional[Iterable[int]] = None) -> bool:
        els = list(self) if members is None else list(members)
        t = self.table
        return all(t[a][b] == t[b][a] for a, b in itertools.combinations(els, 2))

    def index_of(self, label) -> int:
        lookup = self._cache.get("label_index")
        if lookup is None:
            if self.labels is None:
                raise ValidationError("group has no element labels")
            lookup = {lab: i for i, lab in enumerate(self.labels)}
            self._cache["label_index"] = lookup
        return lookup[label]

    def same_table(self, other: "FiniteGroup") -> bool:
        return self is other or self.table == other.table

    @property
    def degree(self) -> Optional[int]:
        """Number of points when the labels are permutations, else None."""
        return self._cache.get("degree")

    def is_permutation_group(self) -> bool:
        return self.degree is not None

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        """Classes as sorted tuples, ordered by least element (identity first)."""
        classes = self._cache.get("classes")
        if classes is None:
            seen = set()
            out = []
            for g in self:
                if g in seen:
                    continue
                cls = sorted({self.conj(h, g) for h in self})
                seen.update(cls)
                out.append(tuple(cls))
            classes = tuple(out)
            self._cache["classes"] = classes
        return classes

    def class_index(self) -> tuple[int, ...]:
        idx = self._cache.get("class_index")
        if idx is None:
            arr = [0] * self.order
            for i, cls in enumerate(self.conjugacy_classes()):
                for g in cls:
                    arr[g] = i
            idx = tuple(arr)
            self._cache["class_index"] = idx
        return idx


def _check_table(table) -> list[list[int]]:
    rows = [list(r) for r in table]
    n = len(rows)
    if n == 0:
        raise NotClosed("empty multiplication table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotClosed(f"row {i} has length {len(row)}, expected {n}")
        for j, v in enumerate(row):
            if not isinstance(v, int) or not 0 <= v < n:
                raise NotClosed(f"product ({i},{j}) = {v!r} is not an element")
    return rows


def _check_associative(rows, sample_above=64, samples=20000):
    n = len(rows)
    if n <= sample_above:
        triples = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(0)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
    for a, b, c in triples:
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise NonAssociative(f"(a*b)*c != a*(b*c) for triple ({a},{b},{c})")


def group_from_table(table, name=None) -> FiniteGroup:
    """Validate a multiplication table and renumber so the identity is 0.

    Non-identity elements keep their relative input order; ``labels`` records
    the original index of each element.
    """
    rows = _check_table(table)
    n = len(rows)
    ident = None
    for e in range(n):
        if all(rows[e][g] == g and rows[g][e] == g for g in range(n)):
            ident = e
            break
    if ident is None:
        raise NoIdentity("no two-sided identity element in table")
    for g in range(n):
        if not any(rows[g][h] == ident and rows[h][g] == ident for h in range(n)):
            raise NoInverse(f"element {g} has no two-sided inverse")
    _check_associative(rows)
    order = [ident] + [g for g in range(n) if g != ident]
    pos = {g: i for i, g in enumerate(order)}
    new = [[pos[rows[a][b]] for b in order] for a in order]
    return FiniteGroup(new, labels=order, name=name)


def group_from_permutations(generators: Sequence[Perm], degree: Optional[int] = None,
                            name=None, bound=None) -> FiniteGroup:
    """Close permutation generators breadth-first (right multiplication, input order)."""
    gens = [tuple(g) for g in generators]
    if degree is None:
        degree = len(gens[0]) if gens else 0
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise NotClosed(f"{g} is not a permutation of {degree} points")
    ident = tuple(range(degree))
    elements = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for s in gens:
            h = perm_mul(g, s)
            if h not in index:
                index[h] = len(elements)
                elements.append(h)
                check_bound(len(elements), "permutation group closure", bound)
                queue.append(h)
    table = [[index[perm_mul(a, b)] for b in elements] for a in elements]
    G = FiniteGroup(table, labels=elements, name=name)
    G._cache["degree"] = degree
    return G


def build_group(spec=None, *, table=None, generators=None, degree=None, name=None) -> FiniteGroup:
    """Build a group from a JSON-like spec, a table or permutation generators.

    ``spec`` may hold ``"table"`` or ``"permutation_generators"`` (cycle
    strings, 1-based) with ``"degree"``.
    """
    if spec is not None:
        name = spec.get("name", name)
        if "table" in spec:
            table = spec["table"]
        elif "permutation_generators" in spec:
            if "degree" not in spec:
                raise ValidationError("permutation_generators requires degree")
            degree = int(spec["degree"])
            generators = [parse_cycles(s, degree) if isinstance(s, str) else tuple(x - 1 for x in s)
                          for s in spec["permutation_generators"]]
        else:
            raise ValidationError("group spec needs 'table' or 'permutation_generators'")
    if table is not None:
        return group_from_table(table, name=name)
    if generators is not None:
        return group_from_permutations(generators, degree, name=name)
    raise ValidationError("nothing to build a group from")


# named groups ---------------------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)],
                       labels=range(n), name=f"C{n}")


def trivial_group() -> FiniteGroup:
    return cyclic(1)


def _cycle_perm(degree, *cycles):
    return parse_cycles("".join("(" + ",".join(map(str, c)) + ")" for c in cycles), degree)


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return group_from_permutations([(0,)], 1, name="S1")
    gens = [_cycle_perm(n, (1, 2))]
    if n > 2:
        gens.append(_cycle_perm(n, tuple(range(1, n + 1))))
    return group_from_permutations(gens, n, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return group_from_permutations([tuple(range(n))], n, name=f"A{n}")
    gens = [_cycle_perm(n, (1, 2, k)) for k in range(3, n + 1)]
    return group_from_permutations(gens, n, name=f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of an n-gon, order 2n, as permutations of the vertices."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return group_from_permutations([rot, ref], n, name=f"D{2 * n}")


def klein_four() -> FiniteGroup:
    return group_from_permutations([_cycle_perm(4, (1, 2), (3, 4)), _cycle_perm(4, (1, 3), (2, 4))],
                                   4, name="V4")


def quaternion() -> FiniteGroup:
    # regular permutation representation on {±1, ±i, ±j, ±k}
    return group_from_permutations([_cycle_perm(8, (1, 2, 3, 4), (5, 6, 7, 8)),
                                    _cycle_perm(8, (1, 5, 3, 7), (2, 8, 4, 6))], 8, name="Q8")


def direct_product(G: FiniteGroup, H: FiniteGroup, name=None) -> FiniteGroup:
    m = H.order
    table = [[G.table[a // m][b // m] * m + H.table[a % m][b % m]
              for b in range(G.order * m)] for a in range(G.order * m)]
    labels = [(g, h) for g in range(G.order) for h in range(m)]
    return FiniteGroup(table, labels=labels, name=name or f"{G.name}x{H.name}")


# homomorphisms and subgroups ---------------------------------------------

@dataclass(frozen=True, eq=False)
class GroupHom:
    source: FiniteGroup
    target: FiniteGroup
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))

    def __call__(self, g: int) -> int:
        return self.map[g]

    def check(self) -> "GroupHom":
        if len(self.map) != self.source.order:
            raise NotAHomomorphism("map length differs from source order")
        if any(not 0 <= v < self.target.order for v in self.map):
            raise NotAHomomorphism("map leaves the target group")
        if self.map[0] != 0:
            raise NotAHomomorphism("identity not sent to identity")
        s, t, f = self.source.table, self.target.table, self.map
        for a in self.source:
            for b in self.source:
                if f[s[a][b]] != t[f[a]][f[b]]:
                    raise NotAHomomorphism(f"f({a}*{b}) != f({a})*f({b})")
        return self

    @property
    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.order

    def kernel(self) -> "Subgroup":
        return Subgroup(self.source, tuple(g for g in self.source if self.map[g] == 0))

    def image(self) -> "Subgroup":
        return Subgroup(self.target, tuple(sorted(set(self.map))))

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self ∘ other"""
        return GroupHom(other.source, self.target, tuple(self.map[v] for v in other.map))


class Subgroup:
    """A subgroup recorded by its sorted member tuple.

    Equality and hashing use the members only, so subgroups of the same parent
    can be deduplicated in sets.
    """

    __slots__ = ("parent", "members", "_set")

    def __init__(self, parent: FiniteGroup, members: Iterable[int]):
        self.parent = parent
        self.members = tuple(sorted(set(members)))
        self._set = frozenset(self.members)

    def __len__(self):
        return len(self.members)

    @property
    def order(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self._set

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self._set == other._set

    def __hash__(self):
        return hash(self._set)

    def __le__(self, other):
        return self._set <= other._set

    def __lt__(self, other):
        return self._set < other._set

    def __repr__(self):
        return f"Subgroup{self.members}"

    @property
    def as_set(self) -> frozenset:
        return self._set

    def sort_key(self):
        return (len(self.members), self.members)


def is_subgroup(G: FiniteGroup, members: Iterable[int]) -> bool:
    s = set(members)
    if 0 not in s:
        return False
    t = G.table
    return all(t[a][b] in s for a in s for b in s) and all(G.inverses[a] in s for a in s)


def make_subgroup(G: FiniteGroup, members: Iterable[int]) -> Subgroup:
    members = list(members)
    if any(not (isinstance(g, int) and 0 <= g < G.order) for g in members):
        raise NotASubgroup(f"members {members} are not all elements of the group")
    if not is_subgroup(G, members):
        raise NotASubgroup(f"{sorted(set(members))} is not closed under the group law")
    return Subgroup(G, members)


def closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset:
    """Members of the subgroup generated by ``gens``."""
    gens = [g for g in dict.fromkeys(gens) if g != 0]
    seen = {0}
    queue = deque([0])
    t = G.table
    while queue:
        x = queue.popleft()
        row = t[x]
        for g in gens:
            y = row[g]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def generated_subgroup(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(G, closure(G, gens))


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, range(G.order))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (0,))


def generating_set(G: FiniteGroup, members: Optional[Iterable[int]] = None) -> tuple[int, ...]:
    """A small generating set, chosen greedily by decreasing element order."""
    els = list(G) if members is None else sorted(members)
    target = len(els)
    gens: list[int] = []
    current = frozenset({0})
    for g in sorted(els, key=lambda x: (-G.element_order(x), x)):
        if len(current) == target:
            break
        if g not in current:
            gens.append(g)
            current = closure(G, gens)
    return tuple(gens)


def subgroups_of(G: FiniteGroup, bound: Optional[int] = None) -> list[Subgroup]:
    """Every subgroup once, sorted by (order, members).

    Cyclic extension: starting from the trivial subgroup, adjoin a generator
    of each cyclic subgroup not already contained, and dedupe by member set.
    """
    check_bound(G.order, "group", bound)
    cached = G._cache.get("subgroups")
    if cached is not None:
        return list(cached)
    cyclic_gens = {}
    for g in G:
        cyclic_gens.setdefault(closure(G, [g]), g)
    reps = sorted(cyclic_gens.values())
    found: dict[frozenset, tuple[int, ...]] = {frozenset({0}): ()}
    queue = deque([frozenset({0})])
    while queue:
        H = queue.popleft()
        gens = found[H]
        for g in reps:
            if g in H:
                continue
            new_gens = gens + (g,)
            K = closure(G, new_gens)
            if K not in found:
                found[K] = new_gens
                queue.append(K)
    out = sorted((Subgroup(G, H) for H in found), key=Subgroup.sort_key)
    G._cache["subgroups"] = tuple(out)
    return out


def _as_subgroup(G: FiniteGroup, H) -> Subgroup:
    if isinstance(H, Subgroup):
        if H.members and H.members[-1] >= G.order:
            raise NotASubgroup(f"{H} does not live in {G}")
        if not is_subgroup(G, H.members):
            raise NotASubgroup(f"{H} is not a subgroup")
        return H
    return make_subgroup(G, H)


def normalizer_of(G: FiniteGroup, H) -> Subgroup:
    H = _as_subgroup(G, H)
    s = H.as_set
    return Subgroup(G, (g for g in G if all(G.conj(g, h) in s for h in H.members)))


def is_normal(G: FiniteGroup, N) -> bool:
    N = _as_subgroup(G, N)
    s = N.as_set
    return all(G.conj(g, n) in s for g in G for n in N.members)


def derived_subgroup(G: FiniteGroup, members: Optional[Iterable[int]] = None) -> frozenset:
    els = list(G) if members is None else list(members)
    t, inv = G.table, G.inverses
    comms = {t[t[a][b]][t[inv[a]][inv[b]]] for a in els for b in els}
    return closure(G, comms)


def is_solvable(G: FiniteGroup, members: Optional[Iterable[int]] = None) -> bool:
    current = frozenset(G) if members is None else frozenset(members)
    while len(current) > 1:
        nxt = derived_subgroup(G, current)
        if nxt == current:
            return False
        current = nxt
    return True


def cosets(G: FiniteGroup, N) -> list[tuple[int, ...]]:
    """Left cosets gN, each sorted, ordered by least element."""
    N = _as_subgroup(G, N)
    seen = set()
    out = []
    for g in G:
        if g in seen:
            continue
        c = tuple(sorted(G.table[g][n] for n in N.members))
        seen.update(c)
        out.append(c)
    return out


def quotient_by(G: FiniteGroup, N) -> tuple[FiniteGroup, GroupHom]:
    """G/N on coset representatives (least element of each coset)."""
    N = _as_subgroup(G, N)
    if not is_normal(G, N):
        raise NotNormal(f"{N} is not normal")
    cs = cosets(G, N)
    which = [0] * G.order
    for i, c in enumerate(cs):
        for g in c:
            which[g] = i
    reps = [c[0] for c in cs]
    table = [[which[G.table[a][b]] for b in reps] for a in reps]
    Q = FiniteGroup(table, labels=reps, name=f"{G.name}/{N.order}" if G.name else None)
    return Q, GroupHom(G, Q, which)


def induced_subgroup(G: FiniteGroup, H) -> tuple[FiniteGroup, GroupHom]:
    """H as a group in its own right (elements renumbered in sorted order) and its inclusion."""
    H = _as_subgroup(G, H)
    pos = {g: i for i, g in enumerate(H.members)}
    table = [[pos[G.table[a][b]] for b in H.members] for a in H.members]
    S = FiniteGroup(table, labels=H.members)
    return S, GroupHom(S, G, H.members)


def _extend_on_generators(G: FiniteGroup, H: FiniteGroup, gens, images):
    """Map determined by generator images, or None if that is not a homomorphism."""
    f = [None] * G.order
    f[0] = 0
    queue = deque([0])
    tg, th = G.table, H.table
    while queue:
        x = queue.popleft()
        for g, im in zip(gens, images):
            y = tg[x][g]
            v = th[f[x]][im]
            if f[y] is None:
                f[y] = v
                queue.append(y)
            elif f[y] != v:
                return None
    return tuple(f)


def find_isomorphism(G: FiniteGroup, H: FiniteGroup,
                     accept: Optional[Callable[[tuple], bool]] = None) -> Optional[GroupHom]:
    """Backtracking search for an isomorphism G -> H, optionally filtered by ``accept``."""
    if G.order != H.order:
        return None
    if sorted(G.element_order(g) for g in G) != sorted(H.element_order(h) for h in H):
        return None
    gens = generating_set(G)
    cands = [[h for h in H if H.element_order(h) == G.element_order(g)] for g in gens]
    for images in itertools.product(*cands):
        f = _extend_on_generators(G, H, gens, images)
        if f is None or len(set(f)) != H.order:
            continue
        if accept is None or accept(f):
            return GroupHom(G, H, f)
    return None


def automorphisms_of(G: FiniteGroup, bound: Optional[int] = None) -> FiniteGroup:
    """Aut(G) as a group whose labels are the automorphisms as permutations of G.

    Elements are numbered in lexicographic order of those permutations, so the
    identity automorphism is element 0.
    """
    check_bound(G.order, "group", bound)
    cached = G._cache.get("aut")
    if cached is not None:
        return cached
    gens = generating_set(G)
    cands = [[h for h in G if G.element_order(h) == G.element_order(g)] for g in gens]
    autos = set()
    for images in itertools.product(*cands):
        f = _extend_on_generators(G, G, gens, images)
        if f is not None and len(set(f)) == G.order:
            autos.add(f)
    perms = sorted(autos)
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[perm_mul(p, q)] for q in perms] for p in perms]
    aut = FiniteGroup(table, labels=perms, name=f"Aut({G.name})" if G.name else None)
    aut._cache["degree"] = G.order
    G._cache["aut"] = aut
    return aut


def is_automorphism(G: FiniteGroup, p: Sequence[int]) -> bool:
    p = tuple(p)
    if len(p) != G.order or sorted(p) != list(range(G.order)):
        return False
    t = G.table
    return all(p[t[a][b]] == t[p[a]][p[b]] for a in G for b in G)


def homomorphisms(G: FiniteGroup, H: FiniteGroup) -> list[tuple]:
    """All homomorphisms G -> H as element maps, in lexicographic order of generator images."""
    gens = generating_set(G)
    cands = [[h for h in H if G.element_order(g) % H.element_order(h) == 0] for g in gens]
    out = []
    for images in itertools.product(*cands):
        f = _extend_on_generators(G, H, gens, images)
        if f is not None:
            out.append(f)
    return out


def action_table(phi, A: FiniteGroup, K: FiniteGroup) -> tuple[Perm, ...]:
    """Normalize a K-action on A (a GroupHom into Aut(A) or a per-element table) to permutations."""
    if isinstance(phi, GroupHom):
        if phi.target.labels is None:
            raise NotIntoAut("target of phi carries no automorphism labels")
        table = tuple(tuple(phi.target.labels[phi.map[k]]) for k in K)
    else:
        table = tuple(tuple(p) for p in phi)
    if len(table) != K.order:
        raise NotIntoAut(f"phi has {len(table)} entries, expected {K.order}")
    for k, p in enumerate(table):
        if not is_automorphism(A, p):
            raise NotIntoAut(f"phi({k}) is not an automorphism of A")
    if table[0] != tuple(range(A.order)):
        raise NotIntoAut("phi(1) is not the identity automorphism")
    for k1 in K:
        for k2 in K:
            if table[K.table[k1][k2]] != perm_mul(table[k1], table[k2]):
                raise NotIntoAut(f"phi({k1}*{k2}) != phi({k1})∘phi({k2})")
    return table


@dataclass(frozen=True, eq=False)
class SemidirectProduct:
    """A ⋊_φ K; element (a, k) has index ``a + |A|*k``."""
    group: FiniteGroup
    a: FiniteGroup
    k: FiniteGroup
    phi: tuple
    embed_a: GroupHom
    embed_k: GroupHom
    project_k: GroupHom

    def pair(self, a: int, k: int) -> int:
        return a + self.a.order * k

    def split(self, x: int) -> tuple[int, int]:
        return x % self.a.order, x // self.a.order

    @property
    def a_subgroup(self) -> Subgroup:
        return self.embed_a.image()

    @property
    def k_subgroup(self) -> Subgroup:
        return self.embed_k.image()


def semidirect(A: FiniteGroup, K: FiniteGroup, phi) -> SemidirectProduct:
    """(a1,k1)(a2,k2) = (a1·φ(k1)(a2), k1k2)."""
    phi = action_table(phi, A, K)
    nA, nK = A.order, K.order
    ta, tk = A.table, K.table
    n = nA * nK
    table = [[0] * n for _ in range(n)]
    for k1 in range(nK):
        p = phi[k1]
        for a1 in range(nA):
            row = table[a1 + nA * k1]
            for k2 in range(nK):
                k = tk[k1][k2]
                for a2 in range(nA):
                    row[a2 + nA * k2] = ta[a1][p[a2]] + nA * k
    labels = [(a, k) for k in range(nK) for a in range(nA)]
    name = f"{A.name}:{K.name}" if A.name and K.name else None
    G = FiniteGroup(table, labels=labels, name=name)
    return SemidirectProduct(
        group=G, a=A, k=K, phi=phi,
        embed_a=GroupHom(A, G, range(nA)),
        embed_k=GroupHom(K, G, [nA * k for k in range(nK)]),
        project_k=GroupHom(G, K, [x // nA for x in range(n)]),
    )


def conjugation_action(G: FiniteGroup, A, K) -> tuple[Perm, ...]:
    """For A normal in G and K ≤ G: per element of K (sorted), conjugation on A (sorted members)."""
    A = _as_subgroup(G, A)
    K = _as_subgroup(G, K)
    pos = {a: i for i, a in enumerate(A.members)}
    out = []
    for k in K.members:
        try:
            out.append(tuple(pos[G.conj(k, a)] for a in A.members))
        except KeyError:
            raise NotNormal(f"element {k} does not normalize {A}")
    return tuple(out)
