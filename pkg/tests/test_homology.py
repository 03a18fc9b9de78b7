import pytest

from brst import oracle
from brst.algebra import adjoint_brst, quantum_brst
from brst.errors import DomainError
from brst.homology import (BrokenRestriction, DeformedRestriction, SectorBasis,
                           brst_cohomology, brst_quotient, check_f0_reality,
                           check_koszul_homotopy, check_restriction_properties,
                           deformed_restriction, involution_closure, koszul_homotopy, psi_map,
                           reduced_monomials, reduced_star, restriction_by_field_solve)
from brst.models import nonunimodular_model, translation_model
from brst.scalars import gauss
from brst.suites import exponential_restriction
from brst.weyl import PolyObservable, monomials_up_to, moyal_star

ORDER = 3


def q(a, n=2):
    return PolyObservable.q(a, n, ORDER)


def p(a, n=2):
    return PolyObservable.p(a, n, ORDER)


@pytest.mark.parametrize("degree,dim,kdim", [(0, 1, 4), (1, 3, 12), (2, 6, 24), (3, 10, 40)])
def test_abelian_ghost_zero_cohomology(t2_ctx, degree, dim, kdim):
    H = brst_cohomology(0, t2_ctx, degree)
    assert H.dim == dim and H.kdim() == kdim and not H.torsion()


def test_abelian_ghost_one_cohomology(t2_ctx):
    assert [brst_cohomology(1, t2_ctx, d).dim for d in range(4)] == [1, 3, 6, 10]


def test_negative_ghost_cohomology_vanishes(t2_ctx):
    assert [brst_cohomology(-1, t2_ctx, d).kdim() for d in range(4)] == [0, 0, 0, 0]


def test_single_pair_has_only_constants(t1_ctx):
    assert [brst_cohomology(0, t1_ctx, d).dim for d in range(4)] == [1, 1, 1, 1]


def test_so3_ghost_zero(so3_ctx):
    assert [brst_cohomology(0, so3_ctx, d).dim for d in range(3)] == [1, 1, 4]


def test_cohomology_dimensions_agree_with_oracle(t2_ctx):
    for k in (-1, 0, 1):
        for d in range(3):
            H = brst_cohomology(k, t2_ctx, d)
            z, b = oracle.sector_kdims(t2_ctx, k, d, [(quantum_brst, 1)])
            assert H.kdim() == z - b


def test_quotient_dimensions_agree_with_oracle(t2_ctx):
    ops = [(quantum_brst, 1), (adjoint_brst, -1)]
    for k in (-1, 0, 1):
        Q = brst_quotient(k, t2_ctx, 2)
        z, b = oracle.sector_kdims(t2_ctx, k, 2, ops)
        assert Q.kdim() == z - b


@pytest.mark.parametrize("degree", [0, 1, 2, 3])
def test_quotient_maps_isomorphically(t2_ctx, degree):
    Q = brst_quotient(0, t2_ctx, degree)
    cmp = Q.comparison
    assert cmp["injective"] and cmp["surjective"]
    assert Q.dim == Q.cohomology.dim == len(reduced_monomials(t2_ctx.lie, [0], degree))


def test_involution_closure(t2_ctx):
    Q0 = brst_quotient(0, t2_ctx, 2)
    assert involution_closure(t2_ctx, Q0) == (True, None)
    Q1 = brst_quotient(1, t2_ctx, 2)
    ok, _ = involution_closure(t2_ctx, Q1)
    assert ok


def test_sector_basis_round_trip(t2_ctx):
    S = SectorBasis(t2_ctx, 1, 2)
    for i in range(len(S)):
        x = S.basis_element(i)
        assert S.vector(x) == {i: {0: (1, 0)}}


# deformed restriction ---------------------------------------------------------

@pytest.fixture(scope="module")
def res2():
    return DeformedRestriction(translation_model(2), [0], ORDER)


def test_restriction_examples(res2):
    assert res2(q(0).pointwise(p(0))) == PolyObservable.constant({1: gauss(0, "-1/2")}, 2,
                                                                 ORDER)
    assert not res2(p(0))
    assert res2(q(1)) == q(1)
    # the star product with J lies in the kernel
    assert not res2(moyal_star(q(0), p(0)))


def test_restriction_properties(res2):
    out = check_restriction_properties(res2, 4)
    assert all(ok for ok, _ in out.values()), out


def test_restriction_single_pair():
    res = DeformedRestriction(translation_model(1), [0], ORDER)
    out = check_restriction_properties(res, 4)
    assert all(ok for ok, _ in out.values())


def test_field_solve_agrees(res2):
    solved = restriction_by_field_solve(translation_model(2), [0], ORDER, 3)
    for e, img in solved.items():
        f = PolyObservable._raw({e: {0: (1, 0)}}, ORDER, n=2)
        assert res2(f).terms == img, e


def test_exponential_closed_form(res2):
    for e in monomials_up_to(4, 4):
        f = PolyObservable._raw({e: {0: (1, 0)}}, ORDER, n=2)
        assert res2(f) == exponential_restriction(f, [0], ORDER)


def test_corrected_momentum_shifts_constants():
    res = DeformedRestriction(translation_model(1, correction=[1]), [0], ORDER)
    out = check_restriction_properties(res, 3)
    assert all(ok for ok, _ in out.values())
    # ι*(p ⋆ 1) must cancel the λ shift: ι*(p) = −λ
    assert res(p(0, 1)) == PolyObservable.constant({1: gauss(-1)}, 1, ORDER)


def test_nontranslation_rejected():
    with pytest.raises(DomainError):
        DeformedRestriction(nonunimodular_model(), [0, 1], ORDER)


def test_reduced_star_is_moyal(res2):
    one = PolyObservable.one(2, ORDER)
    assert reduced_star(res2, q(1), p(1)) == moyal_star(q(1), p(1))
    assert reduced_star(res2, p(1) * p(1), q(1)) == moyal_star(p(1) * p(1), q(1))
    u = q(1) * p(1) + q(1)
    assert reduced_star(res2, u, one) == u


def test_reduced_star_conjugation(res2):
    u = q(1).scale({0: gauss(0, 1)})
    v = p(1) * q(1)
    assert reduced_star(res2, u, v).conj() == reduced_star(res2, v.conj(), u.conj())


def test_koszul_homotopy(t2_ctx):
    assert check_koszul_homotopy(t2_ctx, 3) == (True, None)
    x = t2_ctx.element({(0, 0, (0, 0, 1, 0)): {0: (1, 0)}})
    assert koszul_homotopy(t2_ctx, x) == t2_ctx.element({(0, 1, (0, 0, 0, 0)): {0: (1, 0)}})


def test_psi_is_isomorphism(t2_ctx, res2):
    for d in range(4):
        H = brst_cohomology(0, t2_ctx, d)
        ok, _, targets, vals = psi_map(res2, H)
        assert ok and len(vals) == len(targets) == H.dim and vals == [0] * H.dim


def test_f0_reality_with_negative_control(t2_ctx, res2):
    Q = brst_quotient(0, t2_ctx, 2)
    elements = [Q.sector.element(v) for v, _ in Q.cycles.generators()]
    assert check_f0_reality(res2, elements) == (True, None)
    ok, witness = check_f0_reality(res2, elements, BrokenRestriction(res2, 1))
    assert not ok and witness is not None


def test_context_restriction_requires_surface(so3_ctx):
    with pytest.raises(DomainError):
        deformed_restriction(so3_ctx)
