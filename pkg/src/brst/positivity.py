"""Positive functionals, GNS spaces and harmonic spaces for the deformed Grassmann algebra.

Positivity over R[[λ]] always means the ring order: a series is positive
when its lowest nonvanishing coefficient is a positive real number.
"""

from itertools import combinations

from .errors import DomainError
from .grassmann import (UNIT, GrassmannMonomial, Multivector, all_monomials, bits, circ_terms,
                        form_monomials, gamma, inner_product, involution_star, mask_of,
                        rho_matrix, rho_std)
from .linalg import (SubspaceBasis, apply_columns, image_columns, intersection, kernel_columns,
                     quotient_basis, smith, span)
from .scalars import (DEFAULT_ORDER, G1, GI, FormalScalar, gconj, gmul, gneg, gpow, sconj,
                      sdiv, smul, ssub, sval)
from ._sparse import accumulate, prune, scalar_series


class LinearFunctional:
    """A C[[λ]]-linear functional on the Grassmann algebra, given on monomials."""

    def __init__(self, values, n, order=DEFAULT_ORDER, tag=""):
        self.n = n
        self.order = order
        self.tag = tag
        self.values = {GrassmannMonomial(*m): scalar_series(v, order)
                       for m, v in values.items()}
        self.values = {m: s for m, s in self.values.items() if s}

    def series(self, a):
        acc = {}
        for m, s in a.terms.items():
            v = self.values.get(m)
            if v:
                for k, c in smul(s, v, self.order).items():
                    old = acc.get(k)
                    acc[k] = c if old is None else (old[0] + c[0], old[1] + c[1])
        return {k: c for k, c in acc.items() if c[0] or c[1]}

    def __call__(self, a):
        return FormalScalar.from_series(self.series(a), self.order)

    def __repr__(self):
        return f"LinearFunctional({self.tag or 'custom'}, n={self.n})"


def delta_functional(n, order=DEFAULT_ORDER):
    """The projection onto the scalar component."""
    return LinearFunctional({UNIT: 1}, n, order, tag="δ")


def _mv(terms, order):
    return Multivector._raw(terms, order)


def _basis_mv(m, order):
    return _mv({m: {0: G1}}, order)


def conjugated_functional(omega, b, metric):
    """ω_b(a) = ω(b* ∘ a ∘ b), tabulated on all monomials."""
    n, N = omega.n, omega.order
    bstar = involution_star(b, metric)
    values = {}
    for m in all_monomials(n):
        prod = circ_terms(circ_terms(bstar.terms, {m: {0: G1}}, N), b.terms, N)
        v = omega.series(_mv(prod, N))
        if v:
            values[m] = v
    return LinearFunctional(values, n, N, tag=f"{omega.tag}_b")


def is_hermitian(h, metric):
    return involution_star(h, metric) == h


def hermitian_pair(ghosts, antighosts, c, order=DEFAULT_ORDER):
    """(−i)^{i+j} c̄ e^{k_1..k_j} ∧ e_{ℓ_i..ℓ_1} + c e^{ℓ_1..ℓ_i} ∧ e_{k_j..k_1}.

    ``ghosts`` = (k_1 < ... < k_j), ``antighosts`` = (ℓ_1 < ... < ℓ_i); the
    reversed antighost strings are converted to the canonical order.
    """
    j, i = len(ghosts), len(antighosts)
    s = scalar_series(c, order)
    first = Multivector.from_letters([("g", k) for k in ghosts] +
                                     [("a", l) for l in reversed(antighosts)], order=order)
    second = Multivector.from_letters([("g", l) for l in antighosts] +
                                      [("a", k) for k in reversed(ghosts)], order=order)
    phase = gpow((0, -1), i + j)
    cbar = {k: gmul(phase, v) for k, v in sconj(s).items()}
    return first.scale(cbar) + second.scale(s)


def closed_form_value(i, j, c, c1, c2, order=DEFAULT_ORDER):
    """(2iλ)^{i+j} (−i)^i ((−1)^j c̄ c̄₁ c₂ + c c₁ c̄₂)."""
    c, c1, c2 = (scalar_series(x, order) for x in (c, c1, c2))
    t1 = smul(smul(sconj(c), sconj(c1), order), c2, order)
    if j % 2:
        t1 = {k: gneg(v) for k, v in t1.items()}
    t2 = smul(smul(c, c1, order), sconj(c2), order)
    acc = dict(t1)
    for k, v in t2.items():
        old = acc.get(k)
        acc[k] = v if old is None else (old[0] + v[0], old[1] + v[1])
    pref = gmul(gpow((0, 2), i + j), gpow((0, -1), i))
    out = {k + i + j: gmul(v, pref) for k, v in acc.items()
           if (v[0] or v[1]) and k + i + j <= order}
    return FormalScalar.from_series(out, order)


def recipe_b(ghosts, antighosts, c, order=DEFAULT_ORDER):
    """b = c₁ e^{k_1..k_j} + c₂ e^{ℓ_1..ℓ_i} with c₁ = c̄ and (−1)^j c₂ = c̄₂."""
    j = len(ghosts)
    c1 = sconj(scalar_series(c, order))
    c2 = {0: G1} if j % 2 == 0 else {0: GI}
    b = Multivector.monomial(ghosts, (), order=order).scale(c1) + \
        Multivector.monomial(antighosts, (), order=order).scale(c2)
    return b, c1, c2


def positivity_witness(h, metric):
    """A vector b with δ(b* ∘ h ∘ b) ≠ 0, following the pair recipe.

    Terms of h are visited in canonical order; for each, b is built from the
    ghost and antighost letters of the term and the first nonzero value wins.
    """
    if not h:
        raise DomainError("positivity witness requested for h = 0")
    if not is_hermitian(h, metric):
        raise DomainError("positivity witness requested for a non-Hermitian element")
    N = h.order
    n = metric.dim
    delta = delta_functional(n, N)
    if h.terms.get(UNIT):
        b = Multivector.one(N)
        return b, delta(h)
    for m in h.keys():
        ghosts, antighosts = bits(m[0]), bits(m[1])
        coeff = h.terms[m]
        # the pair is written with the antighosts of the first term reversed
        candidates = [recipe_b(ghosts, antighosts, coeff, N)[0],
                      recipe_b(antighosts, ghosts, coeff, N)[0],
                      Multivector.monomial(ghosts, (), order=N),
                      Multivector.monomial(antighosts, (), order=N)]
        for b in candidates:
            val = conjugated_value(delta, b, h, metric)
            if val.series:
                return b, val
    raise DomainError("no witness found")


def conjugated_value(omega, b, a, metric):
    N = omega.order
    bstar = involution_star(b, metric)
    prod = circ_terms(circ_terms(bstar.terms, a.terms, N), b.terms, N)
    return omega(_mv(prod, N))


def hermitian_pairs(n, coefficients, order=DEFAULT_ORDER):
    """All pair elements (K, L, c) with K, L ⊆ {0..n-1} not both empty."""
    subsets = [s for r in range(n + 1) for s in combinations(range(n), r)]
    out = []
    for K in subsets:
        for L in subsets:
            if not K and not L:
                continue
            for c in coefficients:
                out.append((K, L, c, hermitian_pair(K, L, c, order)))
    return out


# Gram matrices, ideals and GNS ---------------------------------------------------

def gram_columns(omega, basis, metric):
    """G[b][a] = ω(b* ∘ a) stored by columns a."""
    N = omega.order
    stars = [involution_star(_basis_mv(m, N), metric) for m in basis]
    cols = []
    for a in basis:
        col = {}
        for i, bs in enumerate(stars):
            v = omega.series(_mv(circ_terms(bs.terms, {a: {0: G1}}, N), N))
            if v:
                col[i] = v
        cols.append(col)
    return cols


def check_positive_on_basis(omega, basis, metric):
    """ω(a* ∘ a) ≥ 0 for each basis monomial; returns (ok, witness)."""
    N = omega.order
    for m in basis:
        a = _basis_mv(m, N)
        v = omega(_mv(circ_terms(involution_star(a, metric).terms, a.terms, N), N))
        if not v.is_nonnegative():
            return False, m
    return True, None


def hermitian_form_is_positive(cols, order):
    """Congruence diagonalization in the ring order.

    Returns (verdict, pivots) with verdict True for positive definite, False
    for a certified failure and None when the truncation is too short to decide.
    """
    n = len(cols)
    G = [[cols[j].get(i, {}) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if G[i][j] != sconj(G[j][i]):
                return False, ("not Hermitian", i, j)
    remaining = list(range(n))
    pivots = []
    prec = order
    while remaining:
        k = min(remaining, key=lambda r: (sval(G[r][r], prec), r))
        d = G[k][k]
        v = sval(d, prec)
        if v > prec:
            return None, pivots
        lead = d[v]
        if lead[1] or lead[0] <= 0:
            return False, ("pivot", k)
        for r in remaining:
            if r != k and sval(G[r][k], prec) < v:
                return False, ("off-diagonal dominates", r, k)
        pivots.append(FormalScalar.from_series({kk: c for kk, c in d.items() if kk <= prec},
                                               order))
        remaining.remove(k)
        # G_rk / d is exact to λ^(prec − v) and G_ks has valuation ≥ v,
        # so the Schur complement keeps the full precision
        for r in remaining:
            if not G[r][k]:
                continue
            u = sdiv(G[r][k], d, prec)
            for s in remaining:
                if G[k][s]:
                    G[r][s] = ssub(G[r][s], smul(u, G[k][s], prec))
    return True, pivots


class GelfandIdeal:
    """Left kernel of the Gram matrix; the free part is the ideal proper."""

    def __init__(self, basis, kernel, order):
        self.basis = basis
        self.kernel = kernel
        self.order = order
        self.free = span(kernel.free_generators(), len(basis), order)

    @property
    def dim(self):
        return self.kernel.free_rank

    def torsion(self):
        return self.kernel.torsion_generators()

    def contains(self, a):
        idx = {m: i for i, m in enumerate(self.basis)}
        return self.free.contains({idx[m]: s for m, s in a.terms.items()})

    def elements(self):
        return [_mv({self.basis[i]: s for i, s in v.items()}, self.order)
                for v in self.kernel.free_generators()]


def gelfand_ideal(omega, metric):
    """I_ω = {a : ω(b* ∘ a) = 0 for all b}."""
    basis = all_monomials(omega.n)
    cols = gram_columns(omega, basis, metric)
    K = kernel_columns(cols, len(basis), len(basis), omega.order)
    return GelfandIdeal(basis, K, omega.order)


def generators(n, order=DEFAULT_ORDER):
    return [Multivector.ghost(k, order) for k in range(n)] + \
        [Multivector.antighost(k, order) for k in range(n)]


def check_left_ideal(ideal, n):
    """x ∘ a ∈ I for every generator letter x and free ideal generator a."""
    for a in ideal.elements():
        for x in generators(n, ideal.order):
            if not ideal.contains(x * a):
                return False, (x, a)
    return True, None


class GnsSpace:
    """H_ω = A / I_ω with ψ_a = [a], ⟨ψ_a, ψ_b⟩ = ω(a* ∘ b), π(a)ψ_b = ψ_{ab}."""

    def __init__(self, omega, metric):
        self.omega = omega
        self.metric = metric
        self.n = omega.n
        self.order = omega.order
        self.ideal = gelfand_ideal(omega, metric)
        basis = self.ideal.basis
        self.basis = basis
        self._index = {m: i for i, m in enumerate(basis)}
        full = SubspaceBasis.full(len(basis), self.order)
        self._quotient = quotient_basis(self.ideal.free, full)
        self.representatives = [self._element(v) for v in self._quotient.representatives()]
        self.dim = len(self.representatives)
        self.gram = [[self.inner(a, b) for b in self.representatives]
                     for a in self.representatives]
        self._pi = {}

    def _element(self, vec):
        return _mv({self.basis[i]: s for i, s in vec.items()}, self.order)

    def _vector(self, a):
        return {self._index[m]: s for m, s in a.terms.items()}

    def coordinates(self, a):
        """Coordinates of ψ_a in the representative basis."""
        coords = self._quotient.coordinates(self._vector(a))
        out = {}
        pos = 0
        for (_, d, _), c in zip(self._quotient.summands, coords):
            if d == self.order + 1:
                if c:
                    out[pos] = c
                pos += 1
        return out

    def inner(self, a, b):
        star = involution_star(a, self.metric)
        return self.omega(_mv(circ_terms(star.terms, b.terms, self.order), self.order))

    def pi(self, a):
        """Matrix of π_ω(a) by columns over the representative basis."""
        return [self.coordinates(a * r) for r in self.representatives]

    def gram_columns(self):
        return [{i: self.gram[i][j].series for i in range(self.dim) if self.gram[i][j].series}
                for j in range(self.dim)]

    def is_positive_definite(self):
        return hermitian_form_is_positive(self.gram_columns(), self.order)

    def check_adjointness(self, elements=None):
        """⟨π(a)x, y⟩ = ⟨x, π(a*)y⟩ on all generator / basis-vector pairs."""
        N = self.order
        elements = elements or generators(self.n, N)
        G = self.gram_columns()
        for a in elements:
            A = self.pi(a)
            As = self.pi(involution_star(a, self.metric))
            for x in range(self.dim):
                for y in range(self.dim):
                    lhs = _form(G, A[x], {y: {0: G1}}, N)
                    rhs = _form(G, {x: {0: G1}}, As[y], N)
                    if lhs != rhs:
                        return False, (a, x, y)
        return True, None

    def __repr__(self):
        return f"GnsSpace(dim={self.dim}, n={self.n}, ω={self.omega.tag})"


def _form(gram_cols, u, v, order):
    """⟨u, v⟩ = Σ conj(u_i) G_ij v_j."""
    acc = {}
    for j, vj in v.items():
        for i, gij in gram_cols[j].items():
            ui = u.get(i)
            if ui is None:
                continue
            for k, c in smul(smul(sconj(ui), gij, order), vj, order).items():
                old = acc.get(k)
                acc[k] = c if old is None else (old[0] + c[0], old[1] + c[1])
    return {k: c for k, c in acc.items() if c[0] or c[1]}


def gns_construct(omega, metric):
    ok, witness = check_positive_on_basis(omega, all_monomials(omega.n), metric)
    if not ok:
        raise DomainError(f"functional is not positive: ω(a*a) < 0 for a = {witness}")
    return GnsSpace(omega, metric)


def ghost_grading(space):
    """(1/iλ) π(γ) on the representatives, compared with the form degree.

    Returns (ok, witness) where ok means π(γ)ψ = iλ·deg·ψ on every
    representative of pure form degree.
    """
    N = space.order
    G = space.pi(gamma(space.n, N))
    for j, rep in enumerate(space.representatives):
        degs = {m[0].bit_count() for m in rep.terms}
        if len(degs) != 1 or any(m[1] for m in rep.terms):
            return False, rep
        k = degs.pop()
        expected = {j: {1: (0, k)}} if k else {}
        if prune({i: dict(s) for i, s in G[j].items()}) != expected:
            return False, rep
    return True, None


def gns_intertwiner(space):
    """Solve T π(x) = ρ_std(x) T for the generators with T ψ_1 = 1.

    Returns (T by columns over form_monomials, dimension of the solution module).
    """
    N = space.order
    n = space.n
    forms = form_monomials(n)
    fdim = len(forms)
    d = space.dim
    gens = generators(n, N)
    # unknown vec(T)[i*d + j] = T[i][j]
    rows = []
    for x in gens:
        P = space.pi(x)
        _, R = rho_matrix(x, n)
        R = [{i: s for i, s in col.items()} for col in R]
        for i in range(fdim):
            for j in range(d):
                row = {}
                # (T P)[i][j] = Σ_k T[i][k] P[k][j]
                for k, s in P[j].items():
                    _acc_row(row, i * d + k, s, N)
                # − (R T)[i][j] = − Σ_k R[i][k] T[k][j]
                for k in range(fdim):
                    s = R[k].get(i)
                    if s:
                        _acc_row(row, k * d + j, {kk: gneg(c) for kk, c in s.items()}, N)
                row = {k: s for k, s in row.items() if s}
                if row:
                    rows.append(row)
    cols = [dict() for _ in range(fdim * d)]
    for r, row in enumerate(rows):
        for k, s in row.items():
            cols[k][r] = s
    K = kernel_columns(cols, len(rows), fdim * d, N)
    free = K.free_generators()
    if len(free) != 1:
        return None, len(free)
    vec = free[0]
    one = space.coordinates(Multivector.one(N))
    (j1, _), = one.items()
    # normalize so that T ψ_1 = 1
    unit_idx = forms.index(UNIT)
    t11 = vec.get(unit_idx * d + j1, {})
    if sval(t11, N) != 0:
        return None, len(free)
    scale = sdiv({0: G1}, t11, N)
    T = [dict() for _ in range(d)]
    for k, s in vec.items():
        i, j = divmod(k, d)
        v = smul(s, scale, N)
        if v:
            T[j][i] = v
    return T, len(free)


def _acc_row(row, k, s, order):
    old = row.get(k, {})
    new = dict(old)
    for kk, c in s.items():
        o = new.get(kk)
        new[kk] = c if o is None else (o[0] + c[0], o[1] + c[1])
    row[k] = {kk: c for kk, c in new.items() if c[0] or c[1]}


def intertwiner_is_isometric(space, T):
    """⟨Tψ_a, Tψ_b⟩_rescaled = ⟨ψ_a, ψ_b⟩_ω and Tψ_b = ρ_std(b)1."""
    N = space.order
    forms = form_monomials(space.n)
    images = [_mv({forms[i]: s for i, s in col.items()}, N) for col in T]
    for a, ra in enumerate(space.representatives):
        if rho_std(ra, Multivector.one(N)) != images[a]:
            return False, ("not ψ_b ↦ ρ(b)1", a)
        for b in range(space.dim):
            if inner_product(images[a], images[b], space.metric) != space.gram[a][b]:
                return False, ("inner product", a, b)
    return True, None


# harmonic space -------------------------------------------------------------------

class HarmonicModel:
    """A finite pre-Hilbert module with a square-zero Θ and its adjoint (by columns)."""

    def __init__(self, gram, theta, theta_star, order):
        self.dim = len(theta)
        self.gram = gram
        self.theta = theta
        self.theta_star = theta_star
        self.order = order


def matrix_model(gram_rows, theta_rows, order=DEFAULT_ORDER):
    """HarmonicModel from dense rows; the adjoint is G⁻¹ Θ^† G over Q(i)."""
    from . import fieldla
    n = len(theta_rows)
    G = [[_g(x) for x in row] for row in gram_rows]
    Th = [[_g(x) for x in row] for row in theta_rows]
    Gi_cols = []
    for j in range(n):
        e = [(0, 0)] * n
        e[j] = G1
        Gi_cols.append(fieldla.solve(G, e))
    Ginv = fieldla.transpose(Gi_cols)
    ThH = [[gconj(Th[j][i]) for j in range(n)] for i in range(n)]
    Ts = fieldla.matmul(fieldla.matmul(Ginv, ThH), G)
    return HarmonicModel(_cols(G), _cols(Th), _cols(Ts), order)


def _g(x):
    from .scalars import gauss
    return gauss(x)


def _cols(rows):
    n = len(rows)
    m = len(rows[0]) if rows else 0
    return [{i: {0: rows[i][j]} for i in range(n) if rows[i][j][0] or rows[i][j][1]}
            for j in range(m)]


def gns_harmonic_model(space, charge):
    """Θ_H = π(charge), Θ*_H = π(charge*) on a GNS space."""
    return HarmonicModel(space.gram_columns(), space.pi(charge),
                         space.pi(involution_star(charge, space.metric)), space.order)


def _compose(A, B, order):
    return [apply_columns(A, col, order) for col in B]


def _add(A, B):
    out = []
    for ca, cb in zip(A, B):
        col = {i: dict(s) for i, s in ca.items()}
        for i, s in cb.items():
            old = col.get(i, {})
            for k, c in s.items():
                o = old.get(k)
                old[k] = c if o is None else (o[0] + c[0], o[1] + c[1])
            col[i] = {k: c for k, c in old.items() if c[0] or c[1]}
        out.append({i: s for i, s in col.items() if s})
    return out


class HarmonicResult:
    def __init__(self, **kw):
        self.__dict__.update(kw)


def harmonic_space(h):
    """ker Θ ∩ ker Θ* and ker Δ, computed independently and compared.

    Comparison is on free parts; λ-torsion is reported alongside.
    """
    if h.theta_star is None:
        raise DomainError("harmonic space needs the adjoint of Θ")
    N, d = h.order, h.dim
    if any(_compose(h.theta, h.theta, N)[j] for j in range(d)):
        raise DomainError("Θ does not square to zero")
    stacked = [dict() for _ in range(d)]
    for j in range(d):
        for i, s in h.theta[j].items():
            stacked[j][i] = s
        for i, s in h.theta_star[j].items():
            stacked[j][d + i] = s
    both = kernel_columns(stacked, 2 * d, d, N)
    lap = _add(_compose(h.theta, h.theta_star, N), _compose(h.theta_star, h.theta, N))
    klap = kernel_columns(lap, d, d, N)
    free_both = span(both.free_generators(), d, N)
    free_lap = span(klap.free_generators(), d, N)
    agree = all(free_lap.contains(v) for v in free_both.free_generators()) and \
        all(free_both.contains(v) for v in free_lap.free_generators()) and \
        free_both.free_rank == free_lap.free_rank
    # im Θ ∩ (im Θ)^⊥
    im = image_columns(h.theta, d, N)
    perp_rows = []
    for j in range(d):
        tx = h.theta[j]
        if not tx:
            continue
        row = {}
        for y in range(d):
            v = _form(h.gram, tx, {y: {0: G1}}, N)
            if v:
                row[y] = v
        if row:
            perp_rows.append(row)
    pcols = [dict() for _ in range(d)]
    for r, row in enumerate(perp_rows):
        for y, s in row.items():
            pcols[y][r] = s
    perp = kernel_columns(pcols, len(perp_rows), d, N)
    meet = intersection(im, perp)
    # I_H: harmonic -> ker Θ / im Θ
    kth = kernel_columns(h.theta, d, d, N)
    coh = quotient_basis(im, kth)
    cols = []
    for v in free_both.free_generators():
        coords = coh.coordinates(v)
        col = {}
        pos = 0
        for (_, dd, _), c in zip(coh.summands, coords):
            if dd == N + 1:
                if c:
                    col[pos] = c
                pos += 1
        cols.append(col)
    vals = smith(cols, coh.free_rank, N).valuations() if cols else []
    inj = sum(1 for v in vals if v == 0) == len(cols)
    # ⟨Δφ, φ⟩ ≥ 0 on basis vectors
    lap_pos = True
    for j in range(d):
        val = _form(h.gram, lap[j], {j: {0: G1}}, N)
        if not FormalScalar.from_series(val, N).is_nonnegative():
            lap_pos = False
    return HarmonicResult(
        harmonic=free_both, kernel_both=both, kernel_laplacian=klap,
        agree=agree, dim=free_both.free_rank,
        torsion=both.has_torsion() or klap.has_torsion(),
        orthogonal_meet=meet.free_rank, cohomology_dim=coh.free_rank,
        injective=inj and free_both.free_rank <= coh.free_rank,
        laplacian_nonnegative=lap_pos)


# faithfulness of ρ_std ----------------------------------------------------------------

def rho_faithfulness(n, order=DEFAULT_ORDER):
    """Smith valuations of a ↦ ρ_std(a) on the monomial basis.

    Returns (valuations, faithful) with faithful meaning full rank with every
    valuation within the truncation, i.e. injective over C[[λ]].
    """
    forms = form_monomials(n)
    fd = len(forms)
    cols = []
    for m in all_monomials(n):
        _, R = rho_matrix(_basis_mv(m, order), n)
        col = {}
        for j, c in enumerate(R):
            for i, s in c.items():
                col[j * fd + i] = s
        cols.append(col)
    vals = smith(cols, fd * fd, order).valuations()
    return vals, len(vals) == len(cols) and max(vals, default=0) <= order


def degree_shift_table(n, order=DEFAULT_ORDER):
    """For each bidegree (i, j): does ρ_std(x_ij) map Λ^k into Λ^{k+i−j} (zero if k < j)?"""
    forms = form_monomials(n)
    ok = True
    table = {}
    for m in all_monomials(n):
        i, j = m[0].bit_count(), m[1].bit_count()
        good = True
        for f in forms:
            k = f[0].bit_count()
            img = rho_std(_basis_mv(m, order), _basis_mv(f, order))
            degs = {x[0].bit_count() for x in img.terms}
            if k < j and img:
                good = False
            if img and degs != {k + i - j}:
                good = False
        table[(i, j)] = table.get((i, j), True) and good
        ok = ok and good
    return ok, table


__all__ = ["LinearFunctional", "delta_functional", "conjugated_functional", "is_hermitian",
           "hermitian_pair", "closed_form_value", "recipe_b", "positivity_witness",
           "conjugated_value", "hermitian_pairs", "gram_columns", "check_positive_on_basis",
           "hermitian_form_is_positive", "GelfandIdeal", "gelfand_ideal", "check_left_ideal",
           "GnsSpace", "gns_construct", "ghost_grading", "gns_intertwiner",
           "intertwiner_is_isometric", "HarmonicModel", "matrix_model", "gns_harmonic_model",
           "harmonic_space", "rho_faithfulness", "degree_shift_table"]
