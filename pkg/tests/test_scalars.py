from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from brst.errors import ConfigurationError, NotAUnit
from brst.scalars import FormalScalar, gauss, scalar_conj, scalar_invert, scalar_mul

N = 3
lam = FormalScalar.lam(N)
i = FormalScalar.constant((0, 1), N)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gaussians = st.tuples(rationals, rationals)


@st.composite
def scalars(draw, order=N):
    coeffs = draw(st.lists(gaussians, min_size=0, max_size=order + 1))
    return FormalScalar(dict(enumerate(coeffs)), order)


@st.composite
def units(draw, order=N):
    a = draw(scalars(order))
    c0 = draw(gaussians.filter(lambda g: g[0] or g[1]))
    return FormalScalar({0: c0}, order) + (a - FormalScalar({0: a.coefficient(0)}, order))


def test_i_lambda_squared():
    assert scalar_mul(i * lam, i * lam) == -(lam * lam)


def test_truncation_drops_high_powers():
    two = FormalScalar.lam(2)
    assert (1 + two) * (1 - two + two * two) == FormalScalar.one(2)
    assert lam ** 4 == 0
    assert FormalScalar([1, 0, 0, 0, 5], N) == 1


def test_sparse_canonical_form():
    a = FormalScalar({0: 1, 2: 0}, N)
    assert a.series.keys() == {0}
    assert a - a == FormalScalar.zero(N)
    assert not (a - a)


def test_conjugation():
    a = FormalScalar({0: (2, 3)}, N)
    assert scalar_conj(a) == FormalScalar({0: (2, -3)}, N)
    assert (i * lam).conj() == -(i * lam)


def test_inverse_examples():
    two = FormalScalar.lam(2)
    assert scalar_invert(1 + two) == 1 - two + two * two
    assert FormalScalar.constant(2, N).invert() == FormalScalar.constant(gauss("1/2"), N)
    with pytest.raises(NotAUnit):
        scalar_invert(lam)


def test_mismatched_orders():
    with pytest.raises(ConfigurationError):
        FormalScalar.one(2) * FormalScalar.one(3)


def test_floats_rejected():
    with pytest.raises(TypeError):
        FormalScalar({0: 0.5}, N)
    with pytest.raises(TypeError):
        gauss(1j)


def test_coefficient_is_exact():
    a = FormalScalar({1: ("1/3", "-2/7")}, N)
    assert a.coefficient(1) == (Fraction(1, 3), Fraction(-2, 7))
    assert a.valuation() == 1
    assert FormalScalar.zero(N).valuation() == N + 1


def test_ring_order_positivity():
    assert (2 * lam).is_positive()
    assert not (-lam + lam * lam).is_positive()
    assert not (i * lam).is_positive()
    assert FormalScalar.zero(N).is_nonnegative()


@given(scalars(), scalars(), scalars())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a * 1 == a


@given(scalars())
def test_conj_is_involutive(a):
    assert a.conj().conj() == a


@given(scalars(), scalars())
def test_conj_is_multiplicative(a, b):
    assert (a * b).conj() == a.conj() * b.conj()


@given(units())
def test_inverse(u):
    assert u * u.invert() == 1
    assert (u.invert()).invert() == u
