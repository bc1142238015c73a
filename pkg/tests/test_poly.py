import random

import pytest
from hypothesis import given, settings, strategies as st

from lagmul.arith import QQ, FieldSpec
from lagmul.errors import MixedRings, NotHomogeneous, ParseError, ZeroPolynomial
from lagmul.poly import Ring, euler_check

R = Ring(QQ, ("x1", "x2", "x3"))


def test_parse_and_print_roundtrip():
    f = R.parse("x1^2 + x2^2 - 1")
    assert str(f) == "x1^2 + x2^2 - 1"
    assert R.parse(str(f)) == f


def test_parse_parentheses_and_powers():
    f = R.parse("(2*x1 + 1)^2")
    assert f == R.parse("4*x1^2 + 4*x1 + 1")
    assert R.parse("-(x1 - x2)") == R.parse("x2 - x1")


def test_division_not_in_syntax():
    with pytest.raises(ParseError):
        R.parse("x1/2")


def test_derivative_examples():
    assert R.parse("x1^3 + x2").derivative(0) == R.parse("3*x1^2")
    assert R.parse("x1*x2").derivative(1) == R.parse("x1")
    F3 = Ring(FieldSpec(3), ("x1", "x2"))
    assert F3.parse("x1^3").derivative(0).is_zero()


def test_implicit_multiplication_rejected():
    with pytest.raises(ParseError) as err:
        R.parse("2x1")
    assert err.value.line == 1 and err.value.column >= 1


def test_unknown_variable_rejected():
    with pytest.raises(ParseError):
        R.parse("x1 + y7")


def test_degree_and_leading_form():
    f = R.parse("x1^3 + x1*x2 + 5")
    assert f.total_degree() == 3
    assert f.leading_form() == R.parse("x1^3")
    assert not f.is_homogeneous()
    assert f.leading_form().is_homogeneous()


def test_zero_polynomial_degree():
    with pytest.raises(ZeroPolynomial):
        R.zero().total_degree()


def test_degrevlex_leading_monomial():
    # degrevlex: x1*x3^2 < x2^3 since ties break on the smallest power of the last variable
    f = R.parse("x1*x3^2 + x2^3")
    assert f.leading_monomial() == (0, 3, 0)
    lex = R.with_order("lex")
    assert lex.parse("x1*x3^2 + x2^3").leading_monomial() == (1, 0, 2)


def test_derivative_char_two():
    F2 = Ring(FieldSpec(2), ("x1", "x2"))
    g = F2.parse("x1^2 + x2^2 - 1")
    assert g.derivative(0).is_zero() and g.derivative(1).is_zero()


def test_homogenize_and_dehomogenize():
    f = R.parse("x1^2 + x2 - 1")
    h = f.homogenize()
    assert h.ring.names == ("x0", "x1", "x2", "x3")
    assert h.is_homogeneous() and h.total_degree() == 2
    assert h.substitute(0, 1).drop_variable(0, R) == f
    # leading form equals the homogenization at x0 = 0
    assert h.substitute(0, 0).drop_variable(0, R) == f.leading_form()


def test_evaluate_mod_p():
    F = Ring(FieldSpec(7), ("x1", "x2"))
    assert F.parse("x1^2 + 3*x2").evaluate((3, 4)) == (9 + 12) % 7


def test_mixed_rings():
    S = Ring(FieldSpec(5), ("x1", "x2", "x3"))
    with pytest.raises(MixedRings):
        R.gen(0) + S.gen(0)


def test_euler_check_requires_homogeneous():
    with pytest.raises(NotHomogeneous):
        euler_check(R.parse("x1 + 1"))


def _random_homogeneous(ring, degree, rng):
    mons = [e for e in __import__("itertools").product(range(degree + 1), repeat=ring.nvars) if sum(e) == degree]
    terms = {e: rng.randint(-20, 20) for e in mons}
    return ring.from_dict(terms)


@pytest.mark.parametrize("char", [0, 2, 3, 5])
def test_euler_identity(char):
    rng = random.Random(char)
    ring = Ring(FieldSpec(char), ("x1", "x2", "x3"))
    for _ in range(10):
        g = _random_homogeneous(ring, rng.randint(1, 5), rng)
        if g:
            assert euler_check(g)


coef = st.integers(min_value=-5, max_value=5)
polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3)), coef, max_size=6
).map(R.from_dict)


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == R.zero()


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_product_rule(a, b):
    for i in range(3):
        assert (a * b).derivative(i) == a.derivative(i) * b + a * b.derivative(i)


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_degree_of_product(a, b):
    if a and b:
        assert (a * b).total_degree() == a.total_degree() + b.total_degree()
        assert (a * b).leading_form() == a.leading_form() * b.leading_form()
