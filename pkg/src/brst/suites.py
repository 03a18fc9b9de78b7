"""Verification suites driven by a manifest.

Each suite returns a report ``Entry``. Sector computations can be spread over
worker processes (``BRST_THREADS``); results are always assembled in sector
order so the report does not depend on scheduling.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor

from . import checks as C
from .algebra import adjoint_brst, laplacian_element, quantum_brst
from .errors import BrstError, CapacityError, DomainError, LiftingError
from .grassmann import Multivector, all_monomials
from .homology import (BrokenRestriction, DeformedRestriction, brst_cohomology, brst_quotient,
                       check_f0_reality, check_koszul_homotopy, check_restriction_properties,
                       involution_closure, psi_map, reduced_monomials, reduced_star,
                       restriction_by_field_solve)
from .manifest import SUITES, load_manifest
from .oracle import sector_kdims
from .positivity import (check_positive_on_basis, closed_form_value, conjugated_value,
                         degree_shift_table, delta_functional, gns_construct,
                         gns_harmonic_model, gns_intertwiner, check_left_ideal, ghost_grading,
                         gram_columns, harmonic_space, hermitian_pairs, intertwiner_is_isometric,
                         is_hermitian, matrix_model, positivity_witness, recipe_b,
                         rho_faithfulness)
from .report import Entry, Report, encode_element, encode_series
from .scalars import G1, FormalScalar, gauss, sconj, smul, ssub
from .weyl import PolyObservable, classical_restrict, monomials_up_to, moyal_star

# sectors with more K-columns than this skip the fraction-field cross-check
ORACLE_LIMIT = 400

COMPACTNESS_NOTE = ("the isomorphism theorem assumes a compact group; translation actions "
                    "are not compact, so the ghost-number-zero isomorphism is checked on "
                    "this instance only")


def _workers():
    try:
        return max(1, int(os.environ.get("BRST_THREADS", "1")))
    except ValueError:
        return 1


def _sectors(manifest, ghost, degree):
    ks = [ghost] if ghost is not None else list(range(manifest.ghost_range[0],
                                                      manifest.ghost_range[1] + 1))
    ds = [degree] if degree is not None else list(range(manifest.poly_degree + 1))
    return [(k, d) for k in ks for d in ds]


def _translation_type(manifest, order):
    if manifest.constrained is None:
        return None
    try:
        return DeformedRestriction(manifest.lie, manifest.constrained, order)
    except DomainError:
        return None


# sector workers ------------------------------------------------------------------

def _sector_job(args):
    """One (ghost, degree) sector; plain data in and out so it can cross processes."""
    manifest, kind, k, d, order = args
    if isinstance(manifest, str):
        manifest = load_manifest(manifest)
    ctx = manifest.context(order=order, poly_degree=d)
    try:
        H = brst_cohomology(k, ctx, d)
        row = {"ghost": k, "degree": d, "dim": H.dim, "size": len(H.sector),
               "torsion": H.torsion(), "kdim": H.kdim()}
        if kind == "quotient":
            Q = brst_quotient(k, ctx, d, cohomology=H)
            cmp = Q.comparison
            closed, _ = involution_closure(ctx, Q)
            row = {"ghost": k, "degree": d, "dim": Q.dim, "cohomology_dim": H.dim,
                   "size": len(Q.sector), "torsion": Q.torsion(), "kdim": Q.kdim(),
                   "injective": cmp["injective"], "surjective": cmp["surjective"],
                   "unit_rank": cmp["unit_rank"], "involution_closed": closed}
            ops = [(quantum_brst, 1), (adjoint_brst, -1)]
        else:
            ops = [(quantum_brst, 1)]
        if len(H.sector) * (ctx.order + 1) <= ORACLE_LIMIT:
            z, b = sector_kdims(ctx, k, d, ops)
            row["oracle_kdim"] = z - b
        return row, None
    except CapacityError as exc:
        return None, f"ghost={k} degree={d}: {exc}"


def _run_sectors(manifest, kind, sectors, order):
    src = manifest.path if manifest.path else manifest
    jobs = [(src, kind, k, d, order) for k, d in sectors]
    workers = min(_workers(), len(jobs))
    if workers > 1 and manifest.path:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_sector_job, jobs))
    return [_sector_job((manifest, kind, k, d, order)) for k, d in sectors]


def _sector_entry(manifest, kind, ghost, degree, order):
    e = Entry(kind)
    res = _translation_type(manifest, order)
    rows = _run_sectors(manifest, kind, _sectors(manifest, ghost, degree), order)
    for row, err in rows:
        if err is not None:
            e.add_check("sector within degree cap", False, 1, err)
            continue
        tors = row.pop("torsion")
        row["torsion"] = [d for _, d in tors]
        e.add_row("dimensions", **row)
        label = f"ghost={row['ghost']} degree={row['degree']}"
        if "oracle_kdim" in row:
            e.add_check(f"fraction-field dimension agrees ({label})",
                        row["oracle_kdim"] == row["kdim"], 1,
                        f"{row['kdim']} vs {row['oracle_kdim']}")
        if kind == "quotient":
            e.add_check(f"involution preserves cycles and boundaries ({label})",
                        row["involution_closed"], 1)
        if res is not None and row["ghost"] == 0:
            want = len(reduced_monomials(manifest.lie, manifest.constrained, row["degree"]))
            e.add_check(f"dimension equals reduced monomial count ({label})",
                        row["dim"] == want, 1, f"{row['dim']} vs {want}")
            if kind == "quotient":
                e.add_check(f"I_A is an isomorphism ({label})",
                            row["injective"] and row["surjective"] and
                            row["cohomology_dim"] == want, 1,
                            f"unit rank {row['unit_rank']}")
    if kind == "quotient" and res is not None:
        e.notes.append(COMPACTNESS_NOTE)
    return e


# suites ----------------------------------------------------------------------------

def suite_verify(manifest, degree, order):
    e = Entry("verify")
    ctx = manifest.context(order=order, poly_degree=degree)
    lie = manifest.lie
    gn = lie.dim
    try:
        results = [C.theta_square(ctx), C.gamma_differential(ctx),
                   C.equivariance(lie, order, min(degree, 2)),
                   C.classical_nilpotency(ctx, degree), C.quantum_nilpotency(ctx, degree),
                   C.adjoint_nilpotency(ctx, degree), C.splitting(ctx, degree),
                   C.classical_limit(ctx, degree), C.ghost_number_operator(ctx, degree),
                   C.laplacian_relation(ctx, min(degree, 2))]
        results += C.involution_suite(ctx, manifest.samples, min(degree, 2), manifest.seed)
    except CapacityError as exc:
        e.add_check("identity checks within degree cap", False, 1, exc)
        return e
    results += [C.grassmann_associativity(gn, order), C.rho_homomorphism(gn, order),
                C.rho_basis_values(gn, order), C.rho_adjointness(lie.metric, order),
                C.grassmann_gamma(lie.metric, order),
                C.moyal_associativity(manifest.n, order, 2),
                C.moyal_hermitian(manifest.n, order, 2)]
    for r in results:
        e.add_result(r)
    vals, faithful = rho_faithfulness(gn, order)
    e.add_check("ρ_std is faithful", faithful, len(vals), vals)
    return e


def suite_cohomology(manifest, ghost, degree, order):
    return _sector_entry(manifest, "cohomology", ghost, degree, order)


def suite_quotient(manifest, ghost, degree, order):
    return _sector_entry(manifest, "quotient", ghost, degree, order)


def exponential_restriction(f, constrained, order):
    """ι ∘ exp(−(iλ/2) Σ ∂q_a ∂p_a): the closed form for J_a = p_a."""
    acc = f
    term = f
    k = 0
    while term:
        k += 1
        if k > order:
            break
        nxt = None
        for a in constrained:
            d = term.derivative("q", a).derivative("p", a)
            nxt = d if nxt is None else nxt + d
        term = nxt.scale({1: gauss(0, "-1/2")}).scale({0: gauss(f"1/{k}")})
        acc = acc + term
    return classical_restrict(acc, constrained)


def suite_reduce(manifest, degree, order):
    e = Entry("reduce")
    res = _translation_type(manifest, order)
    if res is None:
        e.status = "skip"
        e.notes.append("reduction needs translation-type constraints J_a = p_a + λ·const")
        return e
    lie, cons, n = manifest.lie, manifest.constrained, manifest.n
    props = check_restriction_properties(res, degree)
    for name, label in [("lambda0_is_classical", "ι*₀ = ι*"),
                        ("kills_koszul_image", "ι* ∘ ∂ = 0 on antighost degree 1"),
                        ("left_inverse_of_prolongation", "ι* ∘ prol = id")]:
        ok, w = props[name]
        e.add_check(label, ok, 1, w)
    try:
        solved = restriction_by_field_solve(lie, cons, order, degree)
        bad = None
        for ex, img in solved.items():
            f = PolyObservable._raw({ex: {0: G1}}, order, n=n)
            if res(f).terms != img:
                bad = ex
                break
        e.add_check("restriction agrees with the per-order field solve", bad is None,
                    len(solved), bad)
    except LiftingError as exc:
        e.add_check("restriction agrees with the per-order field solve", False, 1, exc)
    if lie.correction is None:
        bad = None
        monos = monomials_up_to(2 * n, degree)
        for ex in monos:
            f = PolyObservable._raw({ex: {0: G1}}, order, n=n)
            if res(f) != exponential_restriction(f, cons, order):
                bad = ex
                break
        e.add_check("restriction = ι ∘ exp(−(iλ/2)∂q∂p)", bad is None, len(monos), bad)
    reduced = [PolyObservable._raw({ex: {0: G1}}, order, n=n)
               for ex in reduced_monomials(lie, cons, degree)]
    table = []
    moyal_bad = herm_bad = None
    for u in reduced:
        for v in reduced:
            p = reduced_star(res, u, v)
            table.append({"left": repr(u), "right": repr(v), "product": encode_element(p)})
            if moyal_bad is None and p != moyal_star(u, v):
                moyal_bad = (repr(u), repr(v))
            iu = u.scale({0: gauss(0, 1)})
            if herm_bad is None and reduced_star(res, iu, v).conj() != \
                    reduced_star(res, v.conj(), iu.conj()):
                herm_bad = (repr(u), repr(v))
    pairs = len(reduced) ** 2
    e.data["reduced_products"] = table
    e.add_check("⋆_red = Moyal product on the reduced variables", moyal_bad is None, pairs,
                moyal_bad)
    e.add_check("complex conjugation is an involution for ⋆_red", herm_bad is None, pairs,
                herm_bad)
    ctx = manifest.context(order=order, poly_degree=degree)
    ok, w = check_koszul_homotopy(ctx, degree)
    e.add_check("Koszul homotopy: ∂h + h∂ = id − prol ι*", ok, 1, w)
    H = brst_cohomology(0, ctx, degree)
    ok, cols, targets, vals = psi_map(res, H)
    iso = ok and len(vals) == len(targets) == H.dim and all(v == 0 for v in vals)
    e.add_check("ghost-zero classes map isomorphically to invariant functions", iso,
                len(targets), vals)
    Q = brst_quotient(0, ctx, degree, cohomology=H)
    elements = [Q.sector.element(v) for v, _ in Q.cycles.generators()]
    ok, w = check_f0_reality(res, elements)
    e.add_check("ι* commutes with conjugation on F⁰ of ker D ∩ ker D*", ok, len(elements), w)
    rest = [b for b in range(n) if b not in cons]
    if rest and degree >= 2:
        ok, _ = check_f0_reality(res, elements, BrokenRestriction(res, rest[0]))
        e.add_check("negative control: perturbed restriction breaks reality", ok,
                    len(elements), expected=False)
    return e


def suite_positivity(manifest, order):
    e = Entry("positivity")
    n = manifest.dim
    metric = manifest.lie.metric
    N = max(order, 2 * n)
    if N != order:
        e.notes.append(f"witness values sit at λ^(i+j); truncation raised to N = {N}")
    coefficients = [1, (0, 1), ("1/2", 1), {0: (1, 0), 1: (3, 0)}]
    delta = delta_functional(n, N)
    count = missing = mismatch = degenerate = 0
    miss_w = mis_w = None
    for K, L, c, h in hermitian_pairs(n, coefficients, N):
        if not h or not is_hermitian(h, metric):
            continue
        count += 1
        b, val = positivity_witness(h, metric)
        if not val.series:
            missing += 1
            miss_w = miss_w or (K, L)
        if K == L:
            degenerate += 1
            continue
        bb, c1, c2 = recipe_b(K, L, c, N)
        if conjugated_value(delta, bb, h, metric) != closed_form_value(len(L), len(K), c, c1,
                                                                      c2, N):
            mismatch += 1
            mis_w = mis_w or (K, L)
    e.add_check("every Hermitian pair element has a witness δ_b(h) ≠ 0", missing == 0, count,
                miss_w)
    e.add_check("witness value matches the closed form", mismatch == 0,
                count - degenerate, mis_w)
    if degenerate:
        e.notes.append(f"{degenerate} elements with equal ghost and antighost index sets "
                       "are excluded from the closed-form comparison")
    basis = all_monomials(n)
    ok, w = check_positive_on_basis(delta, basis, metric)
    e.add_check("δ(a* ∘ a) ≥ 0 on basis monomials", ok, len(basis), w)
    G = gram_columns(delta, basis, metric)
    bad = None
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            gij = G[j].get(i, {})
            det = ssub(smul(G[i].get(i, {}), G[j].get(j, {}), N), smul(gij, sconj(gij), N))
            if not FormalScalar.from_series(det, N).is_nonnegative():
                bad = (i, j)
                break
        if bad:
            break
    e.add_check("Cauchy–Schwarz on basis pairs", bad is None,
                len(basis) * (len(basis) - 1) // 2, bad)
    vals, faithful = rho_faithfulness(n, N)
    e.add_check("ρ_std is injective", faithful, len(vals), vals)
    e.data["rho_valuations"] = vals
    ok, table = degree_shift_table(n, N)
    e.add_check("ρ_std shifts form degree by i − j", ok, len(table))
    for (i, j), good in sorted(table.items()):
        e.add_row("degree_shift", ghost_degree=i, antighost_degree=j, ok=good)
    return e


def _grassmann_charge(ctx, order):
    """Grassmann factor of the BRST charge: Ω, plus Σ e^a in the abelian case."""
    terms = {}
    for (g, a, _), s in ctx.omega_terms(order).items():
        terms[(g, a)] = s
    x = Multivector._raw(terms, order)
    if not ctx.lie.f:
        for k in range(ctx.dim):
            x = x + Multivector.ghost(k, order)
    return x


def suite_gns(manifest, order):
    e = Entry("gns")
    n = manifest.dim
    metric = manifest.lie.metric
    N = max(order, 2 * n)
    omega = delta_functional(n, N)
    space = gns_construct(omega, metric)
    e.data["gns_dim"] = space.dim
    e.data["gelfand_ideal_dim"] = space.ideal.dim
    e.data["gelfand_torsion"] = len(space.ideal.torsion())
    if space.ideal.torsion():
        e.notes.append("the null space carries λ-torsion from the truncation; "
                       "the ideal is taken to be its free part")
    verdict, _ = space.is_positive_definite()
    e.add_check("GNS inner product is positive definite", verdict is True, space.dim, verdict)
    ok, w = space.check_adjointness()
    e.add_check("π is a *-representation", ok, 2 * n, w)
    ok, w = check_left_ideal(space.ideal, n)
    e.add_check("Gel'fand ideal is a left ideal", ok, space.ideal.dim, w)
    ok, w = ghost_grading(space)
    e.add_check("π(γ) = iλ · form degree", ok, space.dim, w)
    T, rank = gns_intertwiner(space)
    e.add_check("intertwiner with ρ_std is unique up to scale", rank == 1, rank)
    if T is not None:
        ok, w = intertwiner_is_isometric(space, T)
        e.add_check("intertwiner is isometric and maps ψ_b to ρ_std(b)1", ok, space.dim, w)
    ctx = manifest.context(order=N, poly_degree=0)
    charge = _grassmann_charge(ctx, N)
    try:
        hr = harmonic_space(gns_harmonic_model(space, charge))
        e.add_check("ker Θ ∩ ker Θ* = ker Δ", hr.agree, space.dim)
        e.add_check("I_H is injective", hr.injective, hr.dim,
                    f"{hr.dim} harmonic vs {hr.cohomology_dim} cohomology")
        e.add_check("⟨Δφ, φ⟩ ≥ 0", hr.laplacian_nonnegative, space.dim)
        e.add_row("harmonic", model="gns", dim=hr.dim, cohomology_dim=hr.cohomology_dim,
                  image_meets_complement=hr.orthogonal_meet)
    except DomainError as exc:
        e.notes.append(f"harmonic space on the GNS module skipped: {exc}")
    m = matrix_model([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [[0, 0, 1], [0, 0, 0], [0, 0, 0]], N)
    hr = harmonic_space(m)
    e.add_check("matrix instance: ker Θ ∩ ker Θ* = ker Δ", hr.agree, 3)
    e.add_check("matrix instance: I_H is injective", hr.injective, hr.dim)
    e.add_row("harmonic", model="matrix", dim=hr.dim, cohomology_dim=hr.cohomology_dim,
              image_meets_complement=hr.orthogonal_meet)
    lap = laplacian_element(manifest.context(order=order, poly_degree=0))
    scalar = lap.function_part((0, 0))
    e.data["delta_of_laplacian"] = [{"term": repr(PolyObservable._raw({ex: {0: G1}}, order,
                                                                      n=manifest.n)),
                                     "coefficient": encode_series(s, order)}
                                    for ex, s in sorted(scalar.terms.items())]
    return e


def run_suite(manifest, suite, ghost=None, degree=None, order=None):
    """Run one suite and return its report entry."""
    if suite not in SUITES:
        raise DomainError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    order = manifest.lambda_order if order is None else order
    deg = manifest.poly_degree if degree is None else degree
    start = time.perf_counter()
    try:
        if suite == "verify":
            e = suite_verify(manifest, deg, order)
        elif suite == "cohomology":
            e = suite_cohomology(manifest, ghost, degree, order)
        elif suite == "quotient":
            e = suite_quotient(manifest, ghost, degree, order)
        elif suite == "reduce":
            e = suite_reduce(manifest, deg, order)
        elif suite == "positivity":
            e = suite_positivity(manifest, order)
        else:
            e = suite_gns(manifest, order)
    except BrstError as exc:
        e = Entry(suite)
        e.add_check("suite completed", False, 1, f"{type(exc).__name__}: {exc}")
    e.timing = time.perf_counter() - start
    return e


def run(manifest, suites=None, ghost=None, degree=None, order=None):
    """Run several suites; ``None`` selects those enabled in the manifest."""
    if suites is None:
        suites = [s for s in SUITES if manifest.suites.get(s)]
    params = {"lambda_order": manifest.lambda_order if order is None else order,
              "poly_degree": manifest.poly_degree if degree is None else degree,
              "ghost": ghost, "seed": manifest.seed, "samples": manifest.samples}
    entries = [run_suite(manifest, s, ghost, degree, order) for s in suites]
    return Report(manifest.name, entries, params)
