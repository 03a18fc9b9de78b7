import random

import pytest
from hypothesis import given, settings, strategies as st

from brst import checks as C
from brst.algebra import (BrstContext, BrstElement, adjoint_brst, brst_involution,
                          classical_brst, classical_ce_delta, classical_koszul, ghost_operator,
                          laplacian_element, quantum_brst, quantum_koszul, star_std,
                          supercommutator)
from brst.errors import CapacityError, ConfigurationError
from brst.grassmann import Multivector, wedge
from brst.models import so3_model, translation_model
from brst.scalars import FormalScalar
from brst.weyl import PolyObservable, moyal_star, poisson_bracket

N = 3


def el(mv, f):
    return BrstElement.tensor(mv, f)


def one_mv():
    return Multivector.one(N)


def fn(n, **powers):
    e = [0] * (2 * n)
    for name, k in powers.items():
        idx = int(name[1:])
        e[idx if name[0] == "q" else n + idx] = k
    return PolyObservable.monomial(e, n, order=N)


def test_star_std_examples(t2_ctx):
    q, p = fn(2, q0=1), fn(2, p0=1)
    x, y = el(one_mv(), q), el(one_mv(), p)
    assert star_std(t2_ctx, x, y) == el(one_mv(), moyal_star(q, p))
    g0, a0 = Multivector.ghost(0, N), Multivector.antighost(0, N)
    one = PolyObservable.one(2, N)
    assert star_std(t2_ctx, el(g0, one), el(a0, one)) == el(wedge(g0, a0), one)
    z = el(g0, q) + el(a0, p)
    assert star_std(t2_ctx, t2_ctx.one(), z) == z == star_std(t2_ctx, z, t2_ctx.one())


def test_capacity_error_names_term():
    ctx = BrstContext(translation_model(2), N, 2, [0])
    x = el(one_mv(), fn(2, q1=2))
    with pytest.raises(CapacityError) as info:
        star_std(ctx, x, x)
    assert "q1^4" in str(info.value)


def test_mismatched_context():
    ctx = BrstContext(translation_model(2), 2, 6, [0])
    with pytest.raises(ConfigurationError):
        quantum_brst(ctx, el(one_mv(), fn(2, q0=1)))


def test_ghost_operator_examples():
    f = fn(2, q1=1)
    g0, a0 = Multivector.ghost(0, N), Multivector.antighost(0, N)
    assert ghost_operator(el(g0, f)) == el(g0, f)
    assert ghost_operator(el(a0, f)) == -el(a0, f)
    assert not ghost_operator(el(wedge(g0, a0), f))


def test_ce_differential_translation(t2_ctx):
    f = fn(2, q0=2, q1=1)
    x = el(one_mv(), f)
    want = el(Multivector.ghost(0, N), poisson_bracket(fn(2, p0=1), f))
    assert classical_ce_delta(t2_ctx, x) == want
    assert classical_brst(t2_ctx, x) == want
    # quantum: linear J makes the commutator exact at first order
    assert quantum_brst(t2_ctx, x) == want
    assert not classical_ce_delta(t2_ctx, el(one_mv(), fn(2, q1=2)))


def test_koszul_examples(t2_ctx):
    a0, g0 = Multivector.antighost(0, N), Multivector.ghost(0, N)
    one = PolyObservable.one(2, N)
    f = fn(2, q0=1, q1=1)
    assert classical_koszul(t2_ctx, el(a0, one)) == el(one_mv(), fn(2, p0=1))
    assert not classical_koszul(t2_ctx, el(one_mv(), f))
    gx = el(wedge(g0, a0), f)
    assert classical_koszul(t2_ctx, gx) == -el(g0, f.pointwise(fn(2, p0=1)))
    assert quantum_koszul(t2_ctx, el(a0, f)) == el(one_mv(), moyal_star(f, fn(2, p0=1)))


def test_quantum_koszul_correction_so3(so3_ctx):
    # both orderings of the double insertion into e_0 ∧ e_1 give −e_2: (iλ/2)(−2 e_2)
    a0, a1 = Multivector.antighost(0, N), Multivector.antighost(1, N)
    one = PolyObservable.one(3, N)
    x = el(wedge(a0, a1), one)
    lam_part = quantum_koszul(so3_ctx, x).lambda_part(1)
    want = el(Multivector.antighost(2, N), one).scale((0, -1))
    assert lam_part == want


@pytest.mark.parametrize("name", ["t1_ctx", "t2_ctx", "so3_ctx"])
def test_charges(name, request):
    ctx = request.getfixturevalue(name)
    assert C.theta_square(ctx)
    assert C.gamma_differential(ctx)


@pytest.mark.parametrize("name", ["t1_ctx", "t2_ctx", "so3_ctx"])
def test_nilpotency_and_splitting(name, request):
    ctx = request.getfixturevalue(name)
    for check in (C.classical_nilpotency, C.quantum_nilpotency, C.adjoint_nilpotency,
                  C.splitting, C.classical_limit, C.ghost_number_operator):
        r = check(ctx, 2)
        assert r.ok, r


def test_laplacian(t1_ctx, t2_ctx):
    for ctx in (t1_ctx, t2_ctx):
        d = laplacian_element(ctx)
        assert brst_involution(ctx, d) == d
        assert not ghost_operator(d)
    assert C.laplacian_relation(t1_ctx, 2)


def test_involution_of_functions(t2_ctx):
    f = fn(2, q0=1).scale((0, 1)) + fn(2, p1=2)
    assert brst_involution(t2_ctx, el(one_mv(), f)) == el(one_mv(), f.conj())
    g = t2_ctx.charges().gamma
    assert brst_involution(t2_ctx, g) == -g


def test_adjoint_on_unit(t2_ctx):
    assert not adjoint_brst(t2_ctx, t2_ctx.one())


@pytest.mark.parametrize("name", ["t2_ctx", "so3_ctx"])
def test_involution_suite(name, request):
    ctx = request.getfixturevalue(name)
    for r in C.involution_suite(ctx, 60, 2, seed=3):
        assert r.ok, r


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_d_is_derivation(seed):
    ctx = BrstContext(translation_model(2), N, 8, [0])
    rng = random.Random(seed)
    x = C.random_homogeneous(ctx, rng, 2)
    y = C.random_homogeneous(ctx, rng, 2)
    lhs = quantum_brst(ctx, star_std(ctx, x, y))
    dx = star_std(ctx, quantum_brst(ctx, x), y)
    xdy = star_std(ctx, x, quantum_brst(ctx, y))
    assert lhs == dx + (xdy if x.parity() == 0 else -xdy)


def test_quantum_brst_is_commutator(so3_ctx):
    # D_std = (1/iλ) ad(Θ_std) at orders where the division is exact
    th = so3_ctx.charges().theta_std
    x = el(Multivector.ghost(1, N), fn(3, q0=1, p2=1))
    comm = supercommutator(so3_ctx, th, x)
    assert comm.lambda_part(0) == so3_ctx.zero()
    d = quantum_brst(so3_ctx, x)
    assert comm.lambda_part(1) == d.lambda_part(0).scale((0, 1))
