import pytest
from hypothesis import given, settings, strategies as hst

from torsor_lab import group_core as gc
from torsor_lab.errors import (BoundExceeded, NoIdentity, NonAssociative, NotASubgroup,
                               NotClosed, NotIntoAut, NotNormal)

import oracles

CATALOG = {
    "C1": gc.cyclic(1), "C2": gc.cyclic(2), "C4": gc.cyclic(4), "V4": gc.klein_four(),
    "C6": gc.cyclic(6), "S3": gc.symmetric(3), "D8": gc.dihedral(4), "Q8": gc.quaternion(),
    "C2xC4": gc.direct_product(gc.cyclic(2), gc.cyclic(4)), "A4": gc.alternating(4),
}


def test_build_from_c2_table():
    G = gc.build_group({"table": [[0, 1], [1, 0]]})
    assert G.order == 2


def test_build_s3_from_generators():
    G = gc.build_group({"permutation_generators": ["(1 2)", "(1 2 3)"], "degree": 3})
    assert G.order == 6
    assert not G.is_abelian()


def test_build_a4_from_generators():
    G = gc.build_group({"permutation_generators": ["(1 2)(3 4)", "(1 2 3)"], "degree": 4})
    assert G.order == 12
    assert gc.find_isomorphism(G, gc.alternating(4)) is not None


def test_build_numbering_is_breadth_first():
    G = gc.build_group({"permutation_generators": ["(1 2 3)"], "degree": 3})
    assert G.labels[0] == (0, 1, 2)
    assert G.labels[1] == gc.parse_cycles("(1 2 3)", 3)


def test_parse_cycles_composes_right_to_left():
    # (1 2)(2 3): apply (2 3) first, so 1 -> 2, 2 -> 3 -> ... = (1 2 3)
    assert gc.parse_cycles("(1 2)(2 3)", 3) == gc.parse_cycles("(1 2 3)", 3)


def test_build_rejects_bad_tables():
    with pytest.raises(NotClosed):
        gc.build_group({"table": [[0, 2], [1, 0]]})
    with pytest.raises(NoIdentity):
        gc.build_group({"table": [[1, 1], [1, 1]]})
    # a Latin square with identity that is not associative
    bad = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NonAssociative):
        gc.build_group({"table": bad})


@pytest.mark.parametrize("name,count", [("C1", 1), ("S3", 6), ("Q8", 6)])
def test_subgroup_counts(name, count):
    G = gc.trivial_group() if name == "C1" else CATALOG[name]
    assert len(gc.subgroups_of(G)) == count


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_subgroups_match_subset_closure(name):
    G = CATALOG[name]
    ours = {H.as_set for H in gc.subgroups_of(G)}
    assert ours == set(oracles.subsets_closed(G.table))
    subs = gc.subgroups_of(G)
    assert subs == sorted(subs, key=lambda H: (H.order, H.members))


def test_subgroups_bound():
    with pytest.raises(BoundExceeded):
        gc.subgroups_of(gc.symmetric(4), bound=10)


def test_normalizers():
    S3 = gc.symmetric(3)
    assert gc.normalizer_of(S3, gc.whole(S3)) == gc.whole(S3)
    t = S3.index_of(gc.parse_cycles("(1 2)", 3))
    assert gc.normalizer_of(S3, gc.generated_subgroup(S3, [t])).order == 2
    A4 = gc.alternating(4)
    V4 = next(H for H in gc.subgroups_of(A4) if H.order == 4)
    assert gc.normalizer_of(A4, V4).order == 12
    with pytest.raises(NotASubgroup):
        gc.normalizer_of(S3, [0, t, 1 if t != 1 else 2])


def test_quotients():
    S3 = gc.symmetric(3)
    Q, proj = gc.quotient_by(S3, gc.trivial_subgroup(S3))
    assert gc.find_isomorphism(Q, S3) is not None
    A3 = next(H for H in gc.subgroups_of(S3) if H.order == 3)
    Q, proj = gc.quotient_by(S3, A3)
    assert Q.order == 2 and proj.kernel() == A3
    Q8 = gc.quaternion()
    Z = next(H for H in gc.subgroups_of(Q8) if H.order == 2)
    Q, proj = gc.quotient_by(Q8, Z)
    assert gc.find_isomorphism(Q, gc.klein_four()) is not None
    t = S3.index_of(gc.parse_cycles("(1 2)", 3))
    with pytest.raises(NotNormal):
        gc.quotient_by(S3, gc.generated_subgroup(S3, [t]))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_quotient_invariants(name):
    G = CATALOG[name]
    for N in gc.subgroups_of(G):
        if not gc.is_normal(G, N):
            continue
        Q, proj = gc.quotient_by(G, N)
        assert Q.order * N.order == G.order
        assert proj.is_surjective and proj.kernel() == N
        # representatives are the minimal ids of their cosets
        assert all(r == min(c) for r, c in zip(Q.labels, gc.cosets(G, N)))


def test_automorphism_groups():
    assert gc.automorphisms_of(gc.cyclic(2)).order == 1
    assert gc.automorphisms_of(gc.cyclic(3)).order == 2
    aut = gc.automorphisms_of(gc.klein_four())
    assert gc.find_isomorphism(aut, gc.symmetric(3)) is not None
    for p in aut.labels:
        assert gc.is_automorphism(gc.klein_four(), p)


def test_semidirect_examples():
    C3, C2, V4 = gc.cyclic(3), gc.cyclic(2), gc.klein_four()
    direct = gc.semidirect(C3, C2, [(0, 1, 2), (0, 1, 2)])
    assert direct.group.is_abelian()
    inversion = gc.semidirect(C3, C2, [(0, 1, 2), (0, 2, 1)])
    assert gc.find_isomorphism(inversion.group, gc.symmetric(3)) is not None
    autV = gc.automorphisms_of(V4)
    rot = next(p for p in autV.labels if autV.element_order(autV.index_of(p)) == 3)
    rot2 = gc.perm_mul(rot, rot)
    a4 = gc.semidirect(V4, gc.cyclic(3), [tuple(range(4)), rot, rot2])
    assert gc.find_isomorphism(a4.group, gc.alternating(4)) is not None
    with pytest.raises(NotIntoAut):
        gc.semidirect(C3, C2, [(0, 1, 2), (1, 0, 2)])


def test_semidirect_structure():
    V4 = gc.klein_four()
    autV = gc.automorphisms_of(V4)
    for f in gc.homomorphisms(gc.cyclic(2), autV):
        sd = gc.semidirect(V4, gc.cyclic(2), [autV.labels[v] for v in f])
        A, K = sd.a_subgroup, sd.k_subgroup
        assert gc.is_normal(sd.group, A)
        assert A.as_set & K.as_set == {0}
        assert A.order * K.order == sd.group.order


@settings(max_examples=40, deadline=None)
@given(hst.sampled_from(sorted(CATALOG)), hst.data())
def test_table_axioms(name, data):
    G = CATALOG[name]
    a, b, c = (data.draw(hst.integers(0, G.order - 1)) for _ in range(3))
    assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    assert G.mul(G.inv(a), a) == 0 and G.mul(0, a) == a == G.mul(a, 0)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_conjugacy_classes_oracle(name):
    G = CATALOG[name]
    assert {frozenset(c) for c in G.conjugacy_classes()} == set(oracles.conj_classes(G.table))
