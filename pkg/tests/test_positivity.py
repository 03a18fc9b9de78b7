import pytest

from brst.errors import DomainError
from brst.grassmann import MetricData, Multivector, involution_star
from brst.positivity import (check_left_ideal, check_positive_on_basis, conjugated_functional,
                             degree_shift_table, delta_functional, ghost_grading, gns_construct,
                             gns_harmonic_model, gns_intertwiner, harmonic_space,
                             hermitian_form_is_positive, hermitian_pair, hermitian_pairs,
                             intertwiner_is_isometric, is_hermitian, matrix_model,
                             positivity_witness, rho_faithfulness)
from brst.scalars import FormalScalar
from brst.grassmann import all_monomials, gamma

N = 3
COEFFS = [1, (0, 1), ("1/2", 1), {0: (1, 0), 1: (3, 0)}]


def metric(n):
    return MetricData.identity(n)


def fs(series, order=N):
    return FormalScalar.from_series(series, order)


def test_delta_values():
    d = delta_functional(1, N)
    e, f = Multivector.ghost(0, N), Multivector.antighost(0, N)
    assert d(Multivector.one(N)) == fs({0: (1, 0)})
    assert d(e) == fs({}) and d(f) == fs({})
    assert d(involution_star(e, metric(1)) * e) == fs({1: (2, 0)})
    assert d(involution_star(f, metric(1)) * f) == fs({})


def test_conjugating_by_one_gives_delta():
    d = delta_functional(2, N)
    assert conjugated_functional(d, Multivector.one(N), metric(2)).values == d.values


def test_witness_for_unit():
    b, val = positivity_witness(Multivector.one(N), metric(1))
    assert b == Multivector.one(N) and val == fs({0: (1, 0)})


def test_witness_for_full_pair_sits_at_second_order():
    h = hermitian_pair((0,), (0,), (0, 1), N)
    assert is_hermitian(h, metric(1))
    _, val = positivity_witness(h, metric(1))
    assert val.series and min(val.series) == 2


def test_witness_rejects_bad_input():
    with pytest.raises(DomainError):
        positivity_witness(Multivector._raw({}, N), metric(1))
    with pytest.raises(DomainError):
        positivity_witness(Multivector.ghost(0, N), metric(1))


@pytest.mark.parametrize("n,count", [(1, 10), (2, 55)])
def test_every_pair_element_has_witness(n, count):
    order = 2 * n
    seen = 0
    for K, L, c, h in hermitian_pairs(n, COEFFS, order):
        if not h or not is_hermitian(h, metric(n)):
            continue
        seen += 1
        _, val = positivity_witness(h, metric(n))
        assert val.series, (K, L, c)
    assert seen == count


def test_delta_positive_on_basis():
    for n in (1, 2):
        assert check_positive_on_basis(delta_functional(n, N), all_monomials(n),
                                       metric(n)) == (True, None)


def test_hermitian_form_verdicts():
    one = {0: (1, 0)}
    verdict, pivots = hermitian_form_is_positive([{0: one}, {1: {1: (2, 0)}}], N)
    assert verdict is True and pivots[1] == fs({1: (2, 0)})
    assert hermitian_form_is_positive([{0: {0: (-1, 0)}}], N)[0] is False
    indefinite = [{0: one, 1: {0: (2, 0)}}, {0: {0: (2, 0)}, 1: one}]
    assert hermitian_form_is_positive(indefinite, N)[0] is False
    assert hermitian_form_is_positive([{1: one}, {}], N)[0] is False


@pytest.mark.parametrize("n,dim,ideal,torsion", [(1, 2, 2, 1), (2, 4, 12, 3)])
def test_gns_of_delta(n, dim, ideal, torsion):
    S = gns_construct(delta_functional(n, 2 * n), metric(n))
    assert (S.dim, S.ideal.dim, len(S.ideal.torsion())) == (dim, ideal, torsion)
    assert S.is_positive_definite()[0] is True
    assert S.check_adjointness() == (True, None)
    assert check_left_ideal(S.ideal, n) == (True, None)
    assert ghost_grading(S) == (True, None)
    T, rank = gns_intertwiner(S)
    assert rank == 1 and intertwiner_is_isometric(S, T) == (True, None)


def test_gns_three_generators_positive():
    S = gns_construct(delta_functional(3, N), metric(3))
    verdict, pivots = S.is_positive_definite()
    assert S.dim == 8 and verdict is True
    assert sorted(min(p.series) for p in pivots) == [0, 1, 1, 1, 2, 2, 2, 3]


def test_pi_of_one_is_identity():
    S = gns_construct(delta_functional(2, 4), metric(2))
    assert S.pi(Multivector.one(4)) == [{j: {0: (1, 0)}} for j in range(S.dim)]


def test_rho_faithful():
    assert rho_faithfulness(1, N) == ([0, 0, 1, 1], True)
    vals, ok = rho_faithfulness(2, N)
    assert ok and sorted(vals) == [0] * 4 + [1] * 8 + [2] * 4
    assert degree_shift_table(2, N)[0]


def test_matrix_harmonic_example():
    m = matrix_model([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[0, 0, 1], [0, 0, 0], [0, 0, 0]], N)
    hr = harmonic_space(m)
    assert hr.agree and hr.dim == 1 and hr.cohomology_dim == 1 and hr.injective
    assert hr.orthogonal_meet == 0 and hr.laplacian_nonnegative


def test_zero_differential_is_all_harmonic():
    m = matrix_model([[2, 1], [1, 1]], [[0, 0], [0, 0]], N)
    hr = harmonic_space(m)
    assert hr.dim == 2 and hr.cohomology_dim == 2


def test_harmonic_rejects_non_square_zero():
    with pytest.raises(DomainError):
        harmonic_space(matrix_model([[1, 0], [0, 1]], [[1, 0], [0, 0]], N))


def test_gns_harmonic_with_gamma():
    S = gns_construct(delta_functional(1, 2), metric(1))
    hr = harmonic_space(gns_harmonic_model(S, Multivector.ghost(0, 2)))
    assert hr.agree and hr.injective
