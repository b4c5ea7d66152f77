from fractions import Fraction

import pytest

from paradol.pushforward import (FamilyFixture, FiberComplex, NodalCurve,
                                 Node, SamplePoint, SheafOnNodalCurve,
                                 curve_cohomology, direct_image_table,
                                 fiber_hypercohomology, gauss_manin_theta)
from paradol.weights import rank_sequence

P1 = NodalCurve(["c"], [])

I2 = NodalCurve(["c1", "c2"], [
    Node("n1", ("c1", "0"), ("c2", "0")),
    Node("n2", ("c1", "inf"), ("c2", "inf")),
])

CHAIN = NodalCurve(["a", "b"], [Node("n", ("a", "inf"), ("b", "0"))])


def i2_fiber() -> FiberComplex:
    s0 = SheafOnNodalCurve(I2, 1, {"c1": [0], "c2": [0]})
    s1 = SheafOnNodalCurve(I2, 1, {"c1": [0], "c2": [0]}, kind="residue")
    return FiberComplex(s0, s1)


def i2_family() -> FamilyFixture:
    return FamilyFixture("i2", [
        SamplePoint("t1", declared=(1, 2, 1)),
        SamplePoint("t0", declared=(1, 2, 1), fiber=i2_fiber()),
    ], special="t0")


def test_line_bundle_cohomology_on_p1():
    for d, want in [(0, (1, 0)), (1, (2, 0)), (-1, (0, 0)), (-2, (0, 1)),
                    (-3, (0, 2))]:
        c = curve_cohomology(SheafOnNodalCurve(P1, 1, {"c": [d]}))
        assert (c.h0, c.h1) == want


def test_structure_sheaf_of_cycle():
    c = curve_cohomology(SheafOnNodalCurve(I2, 1, {"c1": [0], "c2": [0]}))
    assert (c.h0, c.h1) == (1, 1)


def test_dualizing_sheaf_of_cycle():
    s = SheafOnNodalCurve(I2, 1, {"c1": [0], "c2": [0]}, kind="residue")
    c = curve_cohomology(s)
    assert (c.h0, c.h1) == (1, 1)


def test_chain_is_rational():
    c = curve_cohomology(SheafOnNodalCurve(CHAIN, 1,
                                           {"a": [0], "b": [0]}))
    assert (c.h0, c.h1) == (1, 0)


def test_disconnected_curve_rejected():
    with pytest.raises(ValueError):
        NodalCurve(["a", "b"], [])


def test_i2_hypercohomology():
    assert fiber_hypercohomology(i2_fiber()) == (1, 2, 1)


def test_four_marked_fibers():
    s0 = SheafOnNodalCurve(P1, 1, {"c": [-2]})
    s1 = SheafOnNodalCurve(P1, 1, {"c": [0]}, kind="residue")
    assert fiber_hypercohomology(FiberComplex(s0, s1)) == (0, 2, 0)
    t0 = SheafOnNodalCurve(CHAIN, 1, {"a": [-1], "b": [-1]})
    t1 = SheafOnNodalCurve(CHAIN, 1, {"a": [0], "b": [0]}, kind="residue")
    assert fiber_hypercohomology(FiberComplex(t0, t1)) == (0, 2, 0)


def test_direct_image_table_flags():
    rep = direct_image_table(i2_family(), 0)
    assert rep.dims["t0"] == (1, 2, 1)
    assert rep.local_freeness_pass and rep.base_change_pass
    assert rep.euler_constant


def test_euler_mismatch_is_an_error():
    bad = FamilyFixture("bad", [
        SamplePoint("t0", declared=(1, 1, 1), fiber=i2_fiber())])
    with pytest.raises(ValueError):
        direct_image_table(bad, 0)


def test_level_periodicity():
    fam = i2_family()
    for a in (Fraction(0), Fraction(1, 3), Fraction(-2, 5)):
        assert direct_image_table(fam, a - 1).dims == \
            direct_image_table(fam, a).dims


def test_gauss_manin_residue_i2():
    gm = gauss_manin_theta(i2_family(), 0)
    assert gm.jordan == (2,)
    assert rank_sequence(gm.residue)[1] == 1
    assert gm.local_nearby_dims == {"n1": 1, "n2": 1}


def test_gauss_manin_vanishes_for_smooth_families():
    fam = FamilyFixture("prod", [SamplePoint("t", declared=(1, 2, 1))])
    gm = gauss_manin_theta(fam, 0)
    assert gm.jordan == () and gm.theta.rows == 0
