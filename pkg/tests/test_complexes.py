from math import comb

import pytest

from lagmul.arith import FieldSpec
from lagmul.complexes import (
    affine_complexes,
    default_truncation,
    eagon_northcott,
    eagon_northcott_rank,
    graded_strand,
    h0_hilbert_check,
    h0_hilbert_report,
    homology_vanishes,
    koszul_complex,
    koszul_regularity_check,
    leading_complexes,
    strand_homology,
    tensor_total,
)
from lagmul.critical import critical_ideal, leading_critical_ideal, leading_form_jacobian
from lagmul.errors import HypothesesFail, NotGraded, TruncationTooSmall
from lagmul.groebner import Ideal
from lagmul.matrix import PolyMatrix
from lagmul.poly import Ring

R2 = Ring(FieldSpec(0), ("x1", "x2"))


@pytest.mark.parametrize("n", range(2, 7))
def test_en_rank_formula(n):
    R = Ring(FieldSpec(32003), tuple(f"x{i + 1}" for i in range(n)))
    for r in range(1, n):
        # C_0 is the base ring; the closed form covers p >= 1
        expected = [1] + [comb(n, p + r) * comb(p + r - 1, r) for p in range(1, n - r + 1)]
        assert [eagon_northcott_rank(n, r, p) for p in range(n - r + 1)] == expected
        # generic linear matrix: r+1 rows, n columns
        rows = [[R.gen((i + j) % n) + R.gen((2 * i + j + 1) % n) for j in range(n)] for i in range(r + 1)]
        c = eagon_northcott(PolyMatrix(R, rows), [2] * (r + 1))
        assert c.ranks() == expected
        if n <= 5:
            assert c.d_squared_zero()


def test_en_h0_is_minor_ideal(circle, fermat):
    for sys_ in (circle, fermat):
        en, _, _ = leading_complexes(sys_)
        J = Ideal(leading_form_jacobian(sys_).minors(sys_.r + 1), sys_.ring)
        assert Ideal(en.h0_presentation(), sys_.ring).same_ideal(J)


def test_circle_presentations(circle):
    R = circle.ring
    *_, total = affine_complexes(circle)
    target = Ideal([R.parse("x1^2 + x2^2 - 1"), R.parse("-2*x2")], R)
    assert Ideal(total.h0_presentation(), R).same_ideal(target)
    assert target.same_ideal(critical_ideal(circle))
    *_, ltotal = leading_complexes(circle)
    assert Ideal(ltotal.h0_presentation(), R).same_ideal(leading_critical_ideal(circle))


def test_delta_squared_zero(circle, fermat, parabola):
    for sys_ in (circle, fermat, parabola):
        for c in affine_complexes(sys_) + leading_complexes(sys_):
            assert c.d_squared_zero()


def test_leading_complexes_graded(circle, fermat):
    for sys_ in (circle, fermat):
        for c in leading_complexes(sys_):
            assert c.is_graded()


def test_koszul_strand_dimensions():
    c = koszul_complex([R2.parse("x1"), R2.parse("x2")])
    s = graded_strand(c, 1)
    assert s.dims() == [2, 2, 0]
    assert graded_strand(c, 0).dims() == [1, 0, 0]
    assert graded_strand(c, -1).dims() == [0, 0, 0]
    assert strand_homology(c, 0) == [1, 0, 0]
    assert strand_homology(c, 1) == [0, 0, 0]


def test_strand_needs_grading(parabola):
    _, kz, total = affine_complexes(parabola)
    for c in (kz, total):
        with pytest.raises(NotGraded):
            graded_strand(c, 2)


def test_koszul_regular_vs_not():
    assert koszul_regularity_check([R2.parse("x1"), R2.parse("x2")], 8)["regular"]
    res = koszul_regularity_check([R2.parse("x1"), R2.parse("x1")], 8)
    assert not res["regular"]
    assert res["witness"]["homology"][1] > 0


def test_strands_compose_to_zero(fermat):
    en, kz, total = leading_complexes(fermat)
    for c in (en, total):
        for deg in range(0, 7):
            s = graded_strand(c, deg)
            for p in range(1, len(s.maps) - 1):
                a, b = s.dense(p), s.dense(p + 1)
                if a and b and a[0] and b[0]:
                    prod = [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]
                    assert all(v == 0 for row in prod for v in row)


def test_homology_vanishes_on_acceptance_instances(circle, fermat):
    for sys_ in (circle, fermat):
        for c in leading_complexes(sys_):
            ok, witness = homology_vanishes(c, 8)
            assert ok, witness


def test_hilbert_check(circle, fermat):
    rep = h0_hilbert_report(circle, 10)
    assert rep.passed and rep.total_dimension == 2 and sum(rep.strand_h0) == 2
    rep = h0_hilbert_report(fermat, 10)
    assert rep.passed and rep.total_dimension == 12
    # G(1) d1 = total, with d1 = 3
    assert rep.g_at_one * 3 == 12
    assert h0_hilbert_check(fermat, 10)


def test_hilbert_check_preconditions(parabola, fermat):
    with pytest.raises(HypothesesFail):
        h0_hilbert_check(parabola, 10)
    with pytest.raises(TruncationTooSmall) as err:
        h0_hilbert_report(fermat, 2)
    assert err.value.degree == 2


def test_default_truncation():
    assert default_truncation((2, 1)) == 10
    assert default_truncation((5, 5, 5)) == 13


def test_tensor_ranks():
    a = koszul_complex([R2.parse("x1")])
    b = koszul_complex([R2.parse("x2")])
    t = tensor_total(a, b)
    assert t.ranks() == [1, 2, 1]
    assert t.d_squared_zero()
    assert strand_homology(t, 0) == [1, 0, 0]
    assert strand_homology(t, 2) == [0, 0, 0]


def test_dump_is_deterministic(circle):
    a = [c.dump() for c in affine_complexes(circle)]
    b = [c.dump() for c in affine_complexes(circle)]
    assert a == b and "xi" in a[0]
