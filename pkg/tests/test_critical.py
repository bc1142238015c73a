import random

import pytest

from lagmul.arith import FieldSpec
from lagmul.critical import (
    ConstrainedSystem,
    augmented_jacobian,
    brute_force_critical_points,
    check_hypotheses,
    critical_ideal,
    jacobian_ring_dimension,
    lagrange_jacobian_dimension,
    lagrange_jacobian_ideal,
    milnor_sum,
    predicted_milnor_sum,
    proj_smooth_ci,
    transform_system,
    variety_points,
)
from lagmul.errors import (
    FieldTooLarge,
    KTooLarge,
    NonIsolatedCritical,
    RationalFieldUnsupported,
    ReservedVariable,
    TooManyConstraints,
    ZeroPolynomial,
)
from lagmul.groebner import Ideal
from lagmul.matrix import PolyMatrix
from lagmul.poly import Ring


def test_augmented_jacobian_layout(circle, parabola):
    R = circle.ring
    assert augmented_jacobian(circle) == PolyMatrix(R, [[R.parse("2*x1"), R.parse("2*x2")], [R.one(), R.zero()]])
    assert augmented_jacobian(parabola) == PolyMatrix(
        R, [[R.parse("-2*x1"), R.one()], [R.zero(), R.one()]]
    )


def test_char_two_derivatives():
    sys_ = ConstrainedSystem.from_text(2, ["x1", "x2"], "x1", ["x1^2 + x2^2 - 1"])
    row = augmented_jacobian(sys_).rows[0]
    assert all(e.is_zero() for e in row)


def test_minors(circle):
    m = augmented_jacobian(circle)
    R = circle.ring
    assert m.minors(2) == [R.parse("-2*x2")]
    assert m.minors(1) == [R.parse("2*x1"), R.parse("2*x2"), R.one(), R.zero()]
    with pytest.raises(KTooLarge):
        m.minors(3)


def test_critical_ideal_gbs(circle, parabola):
    R = circle.ring
    assert set(critical_ideal(circle).gb) == {R.parse("x2"), R.parse("x1^2 - 1")}
    assert set(critical_ideal(parabola).gb) == {R.parse("x1"), R.parse("x2")}


def test_objective_equals_constraint():
    sys_ = ConstrainedSystem.from_text(0, ["x1", "x2"], "x1^2 + x2", ["x1^2 + x2"])
    I = critical_ideal(sys_)
    assert I.same_ideal(Ideal([sys_.constraints[0]]))
    with pytest.raises(NonIsolatedCritical):
        milnor_sum(sys_)


def test_three_methods(circle, parabola, fermat):
    assert (milnor_sum(circle), lagrange_jacobian_dimension(circle)) == (2, 2)
    assert (milnor_sum(parabola), lagrange_jacobian_dimension(parabola)) == (1, 1)
    assert (milnor_sum(fermat), lagrange_jacobian_dimension(fermat)) == (12, 12)


def test_lagrange_ideal_generators(circle):
    I = lagrange_jacobian_ideal(circle)
    S = I.ring
    expected = Ideal([S.parse("1 + 2*y1*x1"), S.parse("2*y1*x2"), S.parse("x1^2 + x2^2 - 1")], S)
    assert I.same_ideal(expected)


def test_point_lagrange_ideal():
    # the one-variable, one-constraint case falls outside ConstrainedSystem; compute it directly
    S = Ring(FieldSpec(0), ("y1", "x1"))
    assert Ideal([S.parse("y1"), S.parse("x1")]).quotient_dimension() == 1


def test_predicted():
    assert predicted_milnor_sum(2, (2, 1)) == 2
    assert predicted_milnor_sum(3, (3, 1)) == 12


def test_system_validation():
    with pytest.raises(TooManyConstraints):
        ConstrainedSystem.from_text(0, ["x1", "x2"], "x1", ["x1", "x2"])
    with pytest.raises(ReservedVariable):
        ConstrainedSystem.from_text(0, ["x0", "x2"], "x0", ["x2"])
    with pytest.raises(ReservedVariable):
        ConstrainedSystem.from_text(0, ["y1", "x2"], "x2", ["y1"])
    with pytest.raises(ZeroPolynomial):
        ConstrainedSystem.from_text(0, ["x1", "x2"], "0", ["x1"])


def test_hypotheses_circle_and_parabola(circle, parabola):
    h = check_hypotheses(circle)
    assert h.all_pass
    h = check_hypotheses(parabola)
    assert not h.h2 and "H2" in h.failed()
    assert h.as_dict()["note"] == "scheme-theoretic certificates only"


def test_h4_char_condition():
    sys_ = ConstrainedSystem.from_text(2, ["x1", "x2"], "x1^2 + x2", ["x1^2 + x2^2 + x1*x2 - 1"])
    h = check_hypotheses(sys_)
    assert not h.h4


def test_proj_smooth_ci():
    R = Ring(FieldSpec(0), ("x0", "x1", "x2"))
    assert proj_smooth_ci([R.parse("x0^2 - x1^2 - x2^2")])
    # cuspidal cubic is singular
    assert not proj_smooth_ci([R.parse("x2^2*x0 - x1^3")])
    # two lines through a point: not smooth
    assert not proj_smooth_ci([R.parse("x1*x2")])


def test_jacobian_ring_dimension():
    R = Ring(FieldSpec(0), ("x1", "x2"))
    assert jacobian_ring_dimension(R.parse("x1^3 + x2^3")) == 4
    assert jacobian_ring_dimension(R.parse("x1^2 + x2^5")) == 4


def test_brute_force_parabola_f7():
    sys_ = ConstrainedSystem.from_text(7, ["x1", "x2"], "x2", ["x2 - x1^2"])
    assert brute_force_critical_points(sys_) == {(0, 0)}
    assert variety_points(critical_ideal(sys_)) == {(0, 0)}


def test_brute_force_circle_f5():
    sys_ = ConstrainedSystem.from_text(5, ["x1", "x2"], "x1", ["x1^2 + x2^2 - 1"])
    assert brute_force_critical_points(sys_) == {(1, 0), (4, 0)}


def test_brute_force_guards(circle):
    with pytest.raises(RationalFieldUnsupported):
        brute_force_critical_points(circle)
    big = ConstrainedSystem.from_text(32003, ["x1", "x2"], "x1", ["x1^2 + x2^2 - 1"])
    with pytest.raises(FieldTooLarge):
        brute_force_critical_points(big)


def test_linear_change_invariance():
    sys_ = ConstrainedSystem.from_text(32003, ["x1", "x2"], "x1", ["x1^2 + x2^2 - 1"])
    rng = random.Random(3)
    for _ in range(3):
        M = [[rng.randrange(32003) for _ in range(2)] for _ in range(2)]
        if (M[0][0] * M[1][1] - M[0][1] * M[1][0]) % 32003 == 0:
            continue
        assert milnor_sum(transform_system(sys_, M)) == 2
