from fractions import Fraction

import pytest

from torsor_lab import catalog as cat
from torsor_lab import cohomology as co
from torsor_lab import gamma_scheme as gs
from torsor_lab import group_core as gc
from torsor_lab import heights as ht
from torsor_lab.errors import (MissingOverride, NotFaithful, NotGammaInvariant,
                               RamifiedOutsideList, TrivialGroup, ValidationError)

C2, C3 = gc.cyclic(2), gc.cyclic(3)
S3, A4 = gc.symmetric(3), gc.alternating(4)


def test_malle_index_a4_natural():
    c = ht.malle_index_function(gs.constant(A4))
    assert c.values == (0, 2, 2, 2)
    inv = ht.invariants_of(c)
    assert inv.a == Fraction(1, 2) and inv.b_points == 3 and inv.b_orbits == 3


def test_regular_c2():
    c = ht.regular_index_function(gs.constant(C2))
    assert c.values == (0, 1)
    inv = ht.invariants_of(c)
    assert (inv.a, inv.b_points, inv.b_orbits) == (1, 1, 1)


def test_identity_class_is_zero():
    for GG in cat.gamma_models(max_group=8, max_gamma=1):
        assert ht.regular_index_function(GG).values[0] == 0


def test_constant_c3_without_roots_of_unity():
    GG = gs.make_gamma_group(C3, C2, chi=[1, 2])
    inv = ht.invariants_of(ht.regular_index_function(GG))
    assert (inv.a, inv.b_points, inv.b_orbits) == (Fraction(1, 2), 2, 1)


def test_counting_function_validation():
    GG = gs.make_gamma_group(C3, C2, chi=[1, 2])
    with pytest.raises(NotGammaInvariant):
        ht.counting_function(GG, [0, 1, 2])
    with pytest.raises(ValidationError):
        ht.counting_function(GG, [1, 1, 1])
    with pytest.raises(ValidationError):
        ht.counting_function(GG, [0, 0, 1])
    with pytest.raises(TrivialGroup):
        ht.invariants_of(ht.counting_function(gs.constant(gc.trivial_group()), [0]))


def test_index_function_faithfulness():
    GG = gs.constant(S3)
    with pytest.raises(NotFaithful):
        ht.index_function(GG, [(0, 1)] * 6)
    with pytest.raises(NotFaithful):
        ht.malle_index_function(gs.constant(C3))


def test_pullbacks():
    big = gs.constant(A4)
    c = ht.malle_index_function(big)
    ident = gc.GroupHom(A4, A4, tuple(A4))
    assert ht.pullback_counting(ident, big, big, c).values == c.values
    V4 = next(H for H in gc.subgroups_of(A4) if H.order == 4)
    sub, inc = gs.restrict(big, V4)
    pc = ht.pullback_counting(inc, sub, big, c)
    assert pc.values == (0, 2, 2, 2) and ht.invariants_of(pc).a == Fraction(1, 2)
    t = S3.index_of(gc.parse_cycles("(1 2)", 3))
    pc = ht.pullback_counting(gc.GroupHom(C2, S3, (0, t)), gs.constant(C2), gs.constant(S3),
                              ht.malle_index_function(gs.constant(S3)))
    assert pc.values == (0, 1) and ht.invariants_of(pc).a == 1


def _c3_setup():
    GG = gs.constant(C3, C3)
    c = ht.regular_index_function(GG)
    ram = co.make_place(C3, "p5", 5, [0, 1, 2], [0, 1, 2], 1, 1)
    unr = co.make_place(C3, "p7", 7, [0, 1, 2], [0], 0, 1)
    return GG, c, ram, unr


def test_height_examples():
    GG, c, ram, unr = _c3_setup()
    spec = ht.HeightSpec(c)
    assert ht.evaluate_height(spec, co.trivial_cocycle(GG), [ram, unr]) == 1
    x = co.Cocycle(GG, (0, 1, 2))
    assert ht.evaluate_height(spec, x, [ram]) == 25
    assert ht.evaluate_height(spec, x, [ram, unr]) == 25   # unramified factor is 1


def test_height_errors_and_overrides():
    GG, c, ram, unr = _c3_setup()
    x = co.Cocycle(GG, (0, 1, 2))
    with pytest.raises(RamifiedOutsideList):
        ht.evaluate_height(ht.HeightSpec(c), x, [unr], ramified_at=["p5"])
    strict = ht.HeightSpec(c, sigma=frozenset({"p5"}), default_override=None)
    with pytest.raises(MissingOverride):
        ht.evaluate_height(strict, x, [ram])
    key = ("p5", co.local_class_key(x, ram))
    spec = ht.HeightSpec(c, sigma=frozenset({"p5"}), overrides={key: 1}, default_override=None)
    assert ht.evaluate_height(spec, x, [ram]) == 5
    assert ht.evaluate_height(ht.HeightSpec(c, sigma=frozenset({"p5"})), x, [ram]) == 1
    h1 = co.h1_classes(GG)
    assert ht.evaluate_height(ht.HeightSpec(c), (h1, h1.class_of_cocycle(x)), [ram]) == 25


def test_height_multiplicative_and_comparable():
    GG, c, ram, unr = _c3_setup()
    ram2 = co.make_place(C3, "p13", 13, [0, 1, 2], [0, 1, 2], 2, 2)
    places = [ram, unr, ram2]
    base = ht.HeightSpec(c)
    other = ht.HeightSpec(c, sigma=frozenset({"p5"}), default_override=Fraction(3))
    ratios = []
    for x in co.enumerate_cocycles(GG):
        whole = ht.evaluate_height(base, x, places)
        assert whole == ht.evaluate_height(base, x, places[:1]) * ht.evaluate_height(base, x, places[1:])
        ratios.append(ht.evaluate_height(other, x, places) / whole)
    assert 0 < min(ratios) <= max(ratios) < float("inf")


def test_log_height_for_fractional_exponents():
    GG, _, ram, _ = _c3_setup()
    c = ht.counting_function(GG, [0, Fraction(1, 2), Fraction(1, 2)])
    x = co.Cocycle(GG, (0, 1, 2))
    with pytest.raises(ValidationError):
        ht.evaluate_height(ht.HeightSpec(c), x, [ram])
    assert ht.log_height(ht.HeightSpec(c), x, [ram]) == pytest.approx(0.5 * __import__("math").log(5))


def test_invariants_preserved_by_twist():
    for GG in cat.gamma_models(max_group=8, max_gamma=4):
        if GG.G.order == 1:
            continue
        c = ht.regular_index_function(GG)
        before = ht.invariants_of(c)
        for sigma in co.enumerate_cocycles(GG):
            after = ht.invariants_of(ht.transport_to_twist(c, gs.twist(GG, sigma)))
            assert (after.a, after.b_points, after.b_orbits) == (before.a, before.b_points, before.b_orbits)
            assert before.b_points >= before.b_orbits >= 1
