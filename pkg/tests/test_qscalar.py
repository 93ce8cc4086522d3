import cmath

import pytest
from hypothesis import given, strategies as st

from qskein.qscalar import Laurent, RootOfUnity


def q(n, c=1):
    return Laurent.q_power(n, c)


def test_addition_examples():
    # q^(1/2) + q^(-1/2)
    s = q(4) + q(-4)
    assert s.terms == {4: 1, -4: 1}
    x = q(3, 5) + q(-2, 7)
    assert (x + (-x)).is_zero()
    # (q + q^-1) + (q - q^-1) = 2q
    assert (q(8) + q(-8)) + (q(8) - q(-8)) == q(8, 2)


def test_multiplication_examples():
    assert (q(1) * q(-1)).is_one()
    lhs = (q(8) + q(-8)) * (q(8) - q(-8))
    assert lhs == q(16) - q(-16)
    assert (Laurent.zero() * (q(8) + q(3, 9))).is_zero()


def test_reflect():
    assert q(4).reflect() == q(-4)
    pal = q(8) + q(-8)
    assert pal.reflect() == pal
    x = q(3, 2) + q(-5, 7) + q(0, -1)
    assert x.reflect().reflect() == x


def test_inverse_and_pow():
    assert q(3).inverse() == q(-3)
    assert q(5, -1).inverse() == q(-5, -1)
    with pytest.raises(ValueError):
        (q(0, 2)).inverse()
    with pytest.raises(ValueError):
        (q(1) + q(2)).inverse()
    assert q(2) ** 3 == q(6)
    assert q(2) ** -2 == q(-4)
    assert (q(1) + q(-1)) ** 0 == Laurent.one()


def test_eval_examples():
    root = RootOfUnity(5)
    assert abs(Laurent.one().evaluate(root) - 1.0) < 1e-12
    assert abs(q(1).evaluate(root) - cmath.exp(2j * cmath.pi / 5)) < 1e-12
    for L in (5, 7, 11):
        r = RootOfUnity(L)
        val = (q(8) + q(-8)).evaluate(r)
        assert abs(val - 2 * cmath.cos(2 * cmath.pi * 8 / L)) < 1e-12


def test_root_order_validation():
    with pytest.raises(ValueError):
        RootOfUnity(4)
    with pytest.raises(ValueError):
        RootOfUnity(1)


scalars = st.dictionaries(
    st.integers(-10, 10), st.integers(-9, 9), max_size=4
).map(Laurent)


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(scalars, scalars)
def test_reflect_is_ring_hom(a, b):
    assert (a + b).reflect() == a.reflect() + b.reflect()
    assert (a * b).reflect() == a.reflect() * b.reflect()


@given(scalars, scalars)
def test_eval_is_ring_hom(a, b):
    root = RootOfUnity(7)
    lhs = (a * b).evaluate(root)
    rhs = a.evaluate(root) * b.evaluate(root)
    assert abs(lhs - rhs) < 1e-9


def test_printing():
    assert str(Laurent.zero()) == "0"
    assert str(q(4) + q(-4, 3)) == "3*q^(-1/2) + 1*q^(1/2)"
    assert str(q(8, 2)) == "2*q^(1)"
