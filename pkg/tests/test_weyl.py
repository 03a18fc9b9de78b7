from math import factorial

import pytest
from hypothesis import given, strategies as st

from brst.errors import DomainError
from brst.grassmann import MetricData
from brst.models import so3_model, translation_model
from brst.scalars import FormalScalar
from brst.weyl import (LieData, PolyObservable, check_equivariance, classical_restrict,
                       moyal_star, poisson_bracket, prolong)

N = 3


def q(a, n=2):
    return PolyObservable.q(a, n, N)


def p(a, n=2):
    return PolyObservable.p(a, n, N)


def const(c, n=2):
    return PolyObservable.constant(c, n, N)


def moyal_oracle(f, g):
    """Σ_r (iλ/2)^r / r! · Π^r(f, g) with Π the Poisson bidifferential operator."""
    n = f.n
    pairs = [(f, g, 1)]
    out = f.pointwise(g)
    for r in range(1, N + 1):
        nxt = []
        for a, b, s in pairs:
            for k in range(n):
                nxt.append((a.derivative("q", k), b.derivative("p", k), s))
                nxt.append((a.derivative("p", k), b.derivative("q", k), -s))
        pairs = [(a, b, s) for a, b, s in nxt if a and b]
        scale = FormalScalar({1: (0, "1/2")}, N) ** r * FormalScalar({0: f"1/{factorial(r)}"}, N)
        for a, b, s in pairs:
            out = out + a.pointwise(b).scale(scale.series).scale(s)
    return out


exps = st.tuples(*[st.integers(0, 2)] * 4)
coeffs = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(lambda c: c != (0, 0))


@st.composite
def polys(draw):
    terms = draw(st.dictionaries(exps, coeffs, max_size=3))
    return PolyObservable({e: {0: c} for e, c in terms.items()}, 2, N)


def test_poisson_examples():
    assert poisson_bracket(q(0), p(0)) == const(1)
    assert not poisson_bracket(q(0), q(1))
    qq, pp = q(0, 1), p(0, 1)
    assert poisson_bracket(qq.pointwise(pp), qq.pointwise(qq)) == qq.pointwise(qq).scale(-2)


def test_canonical_commutator():
    lam_i = FormalScalar({1: (0, 1)}, N)
    assert moyal_star(q(0), p(0)) - moyal_star(p(0), q(0)) == const(lam_i)


def test_unit_and_conjugation():
    f = q(0).pointwise(p(1)) + p(0).scale((0, 2))
    assert moyal_star(f, const(1)) == f == moyal_star(const(1), f)
    assert moyal_star(q(0), p(0)).conj() == moyal_star(p(0), q(0))


@given(polys(), polys())
def test_moyal_matches_oracle(f, g):
    assert moyal_star(f, g) == moyal_oracle(f, g)


@given(polys(), polys(), polys())
def test_moyal_associative(f, g, h):
    assert moyal_star(moyal_star(f, g), h) == moyal_star(f, moyal_star(g, h))


@given(polys(), polys())
def test_moyal_hermitian(f, g):
    assert moyal_star(f, g).conj() == moyal_star(g.conj(), f.conj())


@given(polys(), polys())
def test_first_order_commutator_is_poisson(f, g):
    comm = moyal_star(f, g) - moyal_star(g, f)
    assert comm.lambda_part(0) == const(0)
    assert comm.lambda_part(1) == poisson_bracket(f, g).scale((0, 1)).lambda_part(0)


def test_equivariance_passes():
    assert check_equivariance(translation_model(2), N)[0]
    assert check_equivariance(so3_model(N), N)[0]


def test_equivariance_negative_control():
    lie = so3_model(N)
    broken = LieData(3, {(0, 1): {2: 2}, (1, 0): {2: -2}, (1, 2): {0: 1}, (2, 1): {0: -1},
                         (2, 0): {1: 1}, (0, 2): {1: -1}},
                     lie.momentum, MetricData.identity(3), validate=False)
    ok, witness = check_equivariance(broken, N)
    assert not ok
    assert witness["pair"] == (0, 1)


def test_lie_data_validation():
    mom = [p(0), p(1)]
    with pytest.raises(DomainError, match="antisymmetric"):
        LieData(2, {(0, 1): {0: 1}, (1, 0): {0: 1}}, mom)


def test_restrict_and_prolong():
    f = q(0).pointwise(p(0)) + q(1)
    assert classical_restrict(f, [0]) == q(1)
    assert classical_restrict(prolong(q(1), [0]), [0]) == q(1)
    assert not classical_restrict(p(0).pointwise(p(0)), [0])
    with pytest.raises(DomainError):
        prolong(p(0), [0])
