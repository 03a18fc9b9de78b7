"""Acceptance gate: ten end-to-end criteria, one printed verdict line each.

Run with ``pytest tests/test_acceptance.py -s`` or directly as a script.
"""

import random
import sys

import pytest

from brst import checks as C
from brst import oracle
from brst.algebra import adjoint_brst, quantum_brst
from brst.grassmann import MetricData
from brst.homology import (DeformedRestriction, brst_cohomology, brst_quotient,
                           check_restriction_properties, reduced_monomials, reduced_star)
from brst.linalg import (SectorMap, image, image_columns, kernel, kernel_columns,
                         matrix_from_rows, quotient_basis, smith)
from brst.manifest import load_manifest, shipped_fixtures
from brst.models import translation_model
from brst.positivity import (closed_form_value, conjugated_value, delta_functional,
                             gns_construct, gns_harmonic_model, gns_intertwiner, harmonic_space,
                             hermitian_pairs, intertwiner_is_isometric, is_hermitian,
                             matrix_model, positivity_witness, recipe_b, rho_faithfulness)
from brst.grassmann import Multivector
from brst.scalars import gauss
from brst.suites import suite_quotient
from brst.weyl import PolyObservable, moyal_star

COEFFS = [1, (0, 1), ("1/2", 1), {0: (1, 0), 1: (3, 0)}]

# verdict lines, echoed again in the terminal summary by conftest
VERDICTS = []


def verdict(number, ok, detail=""):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  {detail}"
    VERDICTS.append(line)
    print(line)
    assert ok, line


def fixtures():
    return [load_manifest(name) for name in shipped_fixtures()]


def test_criterion_01_nilpotency():
    counts = []
    ok = True
    for name in ("abelian-t2", "so3-t3"):
        ctx = load_manifest(name).context(order=3, poly_degree=4)
        for r in (C.classical_nilpotency(ctx, 4), C.adjoint_nilpotency(ctx, 4),
                  C.theta_square(ctx)):
            ok = ok and r.ok
            counts.append(r.count)
    verdict(1, ok, f"elements checked {counts}")


def test_criterion_02_splitting():
    total = 0
    ok = True
    for m in fixtures():
        ctx = m.context()
        r = C.splitting(ctx, m.poly_degree)
        ok = ok and r.ok
        total += r.count
    verdict(2, ok, f"{total} basis elements")


def test_criterion_03_involution():
    ok = True
    for m in fixtures():
        ctx = m.context()
        for r in C.involution_suite(ctx, 500, min(m.poly_degree, 2), m.seed):
            ok = ok and r.ok
    verdict(3, ok, "500 random pairs per manifest")


def test_criterion_04_rho():
    ok = True
    metrics = [MetricData.identity(1), MetricData.identity(2),
               MetricData([[gauss(2)[0], gauss(1)[0]], [gauss(1)[0], gauss(1)[0]]])]
    for metric in metrics:
        n = metric.dim
        ok = ok and all(r.ok for r in (C.rho_homomorphism(n, 3), C.rho_basis_values(n, 3),
                                       C.rho_adjointness(metric, 3)))
        ok = ok and rho_faithfulness(n, 3)[1]
    verdict(4, ok, "exhaustive for n = 1, 2")


def test_criterion_05_positivity():
    ok = True
    seen = []
    for n in (1, 2):
        N = max(3, 2 * n)
        metric = MetricData.identity(n)
        delta = delta_functional(n, N)
        count = 0
        for K, L, c, h in hermitian_pairs(n, COEFFS, N):
            if not h or not is_hermitian(h, metric):
                continue
            count += 1
            _, val = positivity_witness(h, metric)
            ok = ok and bool(val.series)
            if K != L:
                b, c1, c2 = recipe_b(K, L, c, N)
                ok = ok and conjugated_value(delta, b, h, metric) == \
                    closed_form_value(len(L), len(K), c, c1, c2, N)
        seen.append(count)
    verdict(5, ok and seen == [10, 55], f"Hermitian pair elements {seen}")


def test_criterion_06_reduction():
    m = load_manifest("abelian-t2")
    ctx = m.context(order=3, poly_degree=3)
    ok = True
    dims = []
    for d in range(4):
        want = len(reduced_monomials(m.lie, m.constrained, d))
        H = brst_cohomology(0, ctx, d)
        Q = brst_quotient(0, ctx, d, cohomology=H)
        cmp = Q.comparison
        ok = ok and H.dim == Q.dim == want and cmp["injective"] and cmp["surjective"]
        zh, bh = oracle.sector_kdims(ctx, 0, d, [(quantum_brst, 1)])
        zq, bq = oracle.sector_kdims(ctx, 0, d, [(quantum_brst, 1), (adjoint_brst, -1)])
        ok = ok and H.kdim() == zh - bh and Q.kdim() == zq - bq
        dims.append(H.dim)
    entry = suite_quotient(m, 0, 1, 3)
    ok = ok and any("compact" in note for note in entry.notes)
    verdict(6, ok, f"dimensions {dims}")


def test_criterion_07_reduced_star():
    res = DeformedRestriction(translation_model(2), [0], 3)
    monos = [PolyObservable._raw({e: {0: (1, 0)}}, 3, n=2)
             for e in reduced_monomials(res.lie, [0], 3)]
    ok = True
    for u in monos:
        iu = u.scale({0: gauss(0, 1)})
        for v in monos:
            ok = ok and reduced_star(res, u, v) == moyal_star(u, v)
            ok = ok and reduced_star(res, iu, v).conj() == reduced_star(res, v.conj(), iu.conj())
    verdict(7, ok, f"{len(monos) ** 2} monomial pairs")


def test_criterion_08_restriction():
    ok = True
    for m in (1, 2):
        res = DeformedRestriction(translation_model(m), [0], 3)
        ok = ok and all(v for v, _ in check_restriction_properties(res, 4).values())
    verdict(8, ok, "abelian-t1 and abelian-t2 at N = 3")


def test_criterion_09_gns_harmonic():
    ok = True
    for n in (1, 2):
        space = gns_construct(delta_functional(n, 2 * n), MetricData.identity(n))
        T, rank = gns_intertwiner(space)
        ok = ok and rank == 1 and intertwiner_is_isometric(space, T)[0]
        hr = harmonic_space(gns_harmonic_model(space, Multivector.ghost(0, 2 * n)))
        ok = ok and hr.agree and hr.injective
    hr = harmonic_space(matrix_model([[1, 0, 0], [0, 1, 0], [0, 0, 1]],
                                     [[0, 0, 1], [0, 0, 0], [0, 0, 0]], 3))
    ok = ok and hr.agree and hr.injective and hr.dim <= hr.cohomology_dim
    verdict(9, ok, "intertwiner, harmonic agreement, injectivity")


def _random_matrix(rng):
    order = rng.randint(0, 2)
    nrows, ncols = rng.randint(1, 20), rng.randint(1, 20)
    density = rng.choice([0.1, 0.3, 0.6])
    cols = []
    for _ in range(ncols):
        col = {}
        for i in range(nrows):
            if rng.random() < density:
                s = {}
                for k in range(order + 1):
                    if rng.random() < 0.5:
                        c = gauss(rng.randint(-3, 3), rng.randint(-1, 1))
                        if c[0] or c[1]:
                            s[k] = c
                if s:
                    col[i] = s
        cols.append(col)
    return cols, nrows, ncols, order


def test_criterion_10_linear_algebra():
    rng = random.Random(20240601)
    ok = True
    for _ in range(200):
        cols, nrows, ncols, order = _random_matrix(rng)
        vals = smith(cols, nrows, order).valuations()
        counts = oracle.valuation_counts(cols, nrows, ncols, order)
        ok = ok and [vals.count(v) for v in range(order + 1)] == counts
        ok = ok and kernel_columns(cols, nrows, ncols, order).kdim() == \
            oracle.kernel_kdim(cols, nrows, ncols, order)
        ok = ok and image_columns(cols, nrows, order).kdim() == \
            oracle.image_kdim(cols, nrows, ncols, order)
    one = {0: (1, 0)}
    D = SectorMap(range(3), range(3), matrix_from_rows([[{}, {}, one], [{}, {}, {}],
                                                        [{}, {}, {}]]), 3)
    Q = quotient_basis(image(D), kernel(D))
    ok = ok and Q.free_rank == 1 and Q.representatives() == [{1: one}]
    verdict(10, ok, "200 random matrices and the 3x3 nilpotent instance")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
