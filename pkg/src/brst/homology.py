"""BRST cohomology and the BRST quotient on finite sectors.

A sector is spanned by the tensor monomials of one ghost number and
polynomial degree at most d. The differentials leave a sector in general
(the Koszul part raises the degree), so the computations use

    Z = ker(D restricted to the sector),
    B = D(x) for those x in the ghost-number-(k−1) sector whose image has
        no component outside the degree-d sector,

both computed exactly over Q(i)[λ]/(λ^(N+1)).
"""

from gmpy2 import mpq

from . import fieldla
from .algebra import BrstElement, adjoint_brst, brst_involution, classical_koszul, quantum_brst
from .errors import DomainError, LiftingError
from .grassmann import mono_wedge
from .linalg import (SectorMap, apply_columns, intersection, kernel_columns, quotient_basis,
                     smith, span)
from .scalars import G1, GI, Q0, gmul, gneg, smul
from .weyl import PolyObservable, classical_restrict, monomials_up_to, moyal_star, prolong
from ._sparse import accumulate, prune


def _grassmann_masks(dim, ghost_number):
    out = []
    for g in range(1 << dim):
        for a in range(1 << dim):
            if g.bit_count() - a.bit_count() == ghost_number:
                out.append((g, a))
    out.sort(key=lambda m: (m[0].bit_count() + m[1].bit_count(), m[0], m[1]))
    return out


class SectorBasis:
    """Ordered basis of the ghost-number-k, degree-≤d part of the BRST algebra."""

    def __init__(self, ctx, ghost_number, poly_degree_cap):
        self.ghost_number = ghost_number
        self.poly_degree_cap = poly_degree_cap
        self.n = ctx.n
        self.order = ctx.order
        masks = _grassmann_masks(ctx.dim, ghost_number)
        self.basis = [(gm, e) for e in monomials_up_to(2 * ctx.n, poly_degree_cap)
                      for gm in masks]
        self.index = {(gm[0], gm[1], e): i for i, (gm, e) in enumerate(self.basis)}

    def __len__(self):
        return len(self.basis)

    def key(self, i):
        gm, e = self.basis[i]
        return (gm[0], gm[1], e)

    def element(self, vec):
        terms = {self.key(i): dict(s) for i, s in vec.items() if s}
        return BrstElement._raw(terms, self.order, n=self.n)

    def vector(self, x):
        out = {}
        for key, s in x.terms.items():
            i = self.index.get(key)
            if i is None:
                raise DomainError(f"element leaves the sector: {key}")
            out[i] = dict(s)
        return out

    def basis_element(self, i):
        return BrstElement._raw({self.key(i): {0: G1}}, self.order, n=self.n)

    def __repr__(self):
        return (f"SectorBasis(ghost={self.ghost_number}, degree<={self.poly_degree_cap}, "
                f"size={len(self.basis)})")


def operator_map(ctx, op, sector):
    """Matrix of op on the sector; rows are all keys the images touch.

    Rows inside ``sector`` come first in sector order when the image stays in
    the same ghost number; the remaining keys follow in sorted order.
    """
    images = [op(ctx, sector.basis_element(j)) for j in range(len(sector))]
    keys = set()
    for im in images:
        keys.update(im.terms)
    keys = sorted(keys, key=lambda k: (sum(k[2]), tuple(-x for x in k[2]), k[0], k[1]))
    row = {k: i for i, k in enumerate(keys)}
    cols = [{row[k]: dict(s) for k, s in im.terms.items()} for im in images]
    return SectorMap(sector.basis, keys, cols, ctx.order)


def _split_rows(m, target):
    """Split a map into the rows landing in ``target`` and the rest."""
    inside, outside = [], []
    for col in m.columns:
        cin, cout = {}, {}
        for i, s in col.items():
            j = target.index.get(m.codomain[i])
            if j is None:
                cout[i] = s
            else:
                cin[j] = s
        inside.append(cin)
        outside.append(cout)
    return inside, outside


def cycles(ctx, op, sector):
    m = operator_map(ctx, op, sector)
    return kernel_columns(m.columns, len(m.codomain), len(sector), ctx.order)


def boundaries(ctx, op, sector, shift=1):
    """op(x) for x in ghost number k − shift whose image stays inside the sector.

    D raises the ghost number (shift 1), D* lowers it (shift −1).
    """
    below = SectorBasis(ctx, sector.ghost_number - shift, sector.poly_degree_cap)
    m = operator_map(ctx, op, below)
    inside, outside = _split_rows(m, sector)
    nout = len(m.codomain)
    K = kernel_columns(outside, nout, len(below), ctx.order)
    images = [apply_columns(inside, vec, ctx.order) for vec, _ in K.generators()]
    return span([v for v in images if v], len(sector), ctx.order)


class CohomologyResult:
    """Z/B on one sector, with representatives and torsion."""

    def __init__(self, sector, cycles, boundaries, quotient):
        self.sector = sector
        self.cycles = cycles
        self.boundaries = boundaries
        self.quotient = quotient

    @property
    def dim(self):
        return self.quotient.free_rank

    def torsion(self):
        return self.quotient.torsion()

    def representatives(self):
        return [self.sector.element(v) for v in self.quotient.representatives()]

    def kdim(self):
        return self.quotient.kdim()


def brst_cohomology(k, ctx, degree):
    """H^(k) of D_std on the degree-capped sector."""
    sector = SectorBasis(ctx, k, degree)
    Z = cycles(ctx, quantum_brst, sector)
    B = boundaries(ctx, quantum_brst, sector)
    return CohomologyResult(sector, Z, B, quotient_basis(B, Z))


def _stacked_kernel(ctx, ops, sector):
    cols = [dict() for _ in range(len(sector))]
    offset = 0
    for op in ops:
        m = operator_map(ctx, op, sector)
        for j, col in enumerate(m.columns):
            for i, s in col.items():
                cols[j][offset + i] = s
        offset += len(m.codomain)
    return kernel_columns(cols, offset, len(sector), ctx.order)


class QuotientResult(CohomologyResult):
    """(ker D ∩ ker D*) / (im D ∩ im D*) plus the comparison with H."""

    def __init__(self, sector, cycles, boundaries, quotient, cohomology):
        super().__init__(sector, cycles, boundaries, quotient)
        self.cohomology = cohomology
        self.comparison = compare_with_cohomology(self, cohomology)


def brst_quotient(k, ctx, degree, cohomology=None):
    """H̃^(k) on the degree-capped sector."""
    sector = SectorBasis(ctx, k, degree)
    Z = _stacked_kernel(ctx, (quantum_brst, adjoint_brst), sector)
    B = intersection(boundaries(ctx, quantum_brst, sector),
                     boundaries(ctx, adjoint_brst, sector, -1))
    if cohomology is None:
        cohomology = brst_cohomology(k, ctx, degree)
    return QuotientResult(sector, Z, B, quotient_basis(B, Z), cohomology)


def _rank_profile(columns, nrows, order):
    sf = smith(columns, nrows, order)
    return sf.valuations()


def compare_with_cohomology(qres, hres):
    """Matrix of [a] ↦ [a] from H̃ to H; reports injectivity and surjectivity.

    Over the ring, "full rank" means all Smith pivots are units.
    """
    hq = hres.quotient
    cols = []
    for rep in qres.quotient.representatives():
        coords = hq.coordinates(rep)
        col = {}
        pos = 0
        for (_, d, _), c in zip(hq.summands, coords):
            if d == hq.order + 1:
                if c:
                    col[pos] = c
                pos += 1
        cols.append(col)
    nrows = hq.free_rank
    vals = _rank_profile(cols, nrows, hq.order)
    unit_rank = sum(1 for v in vals if v == 0)
    return {
        "source_dim": len(cols),
        "target_dim": nrows,
        "unit_rank": unit_rank,
        "valuations": vals,
        "injective": unit_rank == len(cols),
        "surjective": unit_rank == nrows,
    }


def involution_closure(ctx, qres, partner=None):
    """[a]* = [a*]: the involution carries cycles and boundaries of ghost k to ghost −k.

    ``partner`` is the quotient on the ghost −k sector (computed if omitted).
    """
    sector = qres.sector
    if partner is None:
        k = sector.ghost_number
        partner = qres if k == 0 else brst_quotient(-k, ctx, sector.poly_degree_cap)
    target = partner.sector

    def inside(x, module):
        try:
            return module.contains(target.vector(brst_involution(ctx, x)))
        except DomainError:
            return False

    for vec, _ in qres.cycles.generators():
        a = sector.element(vec)
        if not inside(a, partner.cycles):
            return False, a
    for vec, _ in qres.boundaries.generators():
        b = sector.element(vec)
        if not inside(b, partner.boundaries):
            return False, b
    return True, None


# deformed restriction ---------------------------------------------------------

class DeformedRestriction:
    """ι*(bold): polynomials on T*R^n -> polynomials on the constraint surface.

    Translation-type constraints only: J_a = p_a + λ(constant) for the
    constrained indices. The map is fixed by ι*(prol φ) = φ and
    ι*(f ⋆ J_a) = 0. Writing a monomial containing p_a as f·p_a,

        ι*(f p_a) = −ι*(f ⋆ J_a − f p_a),

    and the right side only involves polynomials of lower degree, so the
    images are computed by recursion on the degree, at the full λ-order.
    """

    def __init__(self, lie, constrained, order):
        self.lie = lie
        self.constrained = list(constrained)
        self.order = order
        self.n = lie.n
        self.momenta = {}
        for pos, a in enumerate(self.constrained):
            J = lie.quantum_momentum(pos, order)
            lin = {e: s for e, s in J.terms.items() if sum(e)}
            expected = tuple(1 if i == self.n + a else 0 for i in range(2 * self.n))
            if list(lin) != [expected] or lin[expected] != {0: G1}:
                raise DomainError("deformed restriction needs translation-type constraints "
                                  "J_a = p_a + λ·const")
            self.momenta[a] = J
        self._memo = {}

    def _image(self, e):
        hit = self._memo.get(e)
        if hit is not None:
            return hit
        n = self.n
        for a in self.constrained:
            if e[n + a]:
                break
        else:
            out = {e: {0: G1}}
            self._memo[e] = out
            return out
        f_e = list(e)
        f_e[n + a] -= 1
        f = PolyObservable._raw({tuple(f_e): {0: G1}}, self.order, n=n)
        rest = moyal_star(f, self.momenta[a]).terms
        rest = {k: dict(s) for k, s in rest.items()}
        del rest[e]
        for key, s in rest.items():
            if 0 in s:
                raise LiftingError(f"lifting step at {e} has a λ⁰ obstruction")
        acc = {}
        for key, s in rest.items():
            for k2, t in self._image(key).items():
                for k, c in smul(s, t, self.order).items():
                    accumulate(acc, k2, k, gneg(c))
        out = prune(acc)
        self._memo[e] = out
        return out

    def __call__(self, f):
        acc = {}
        for e, s in f.terms.items():
            for k2, t in self._image(e).items():
                for k, c in smul(s, t, self.order).items():
                    accumulate(acc, k2, k, c)
        return f._like(prune(acc))

    def restrict_element(self, x):
        """Apply to the function factor of an element of Λg* ⊗ C[q, p][[λ]]."""
        acc = {}
        for (g, a, e), s in x.terms.items():
            if a:
                raise DomainError("deformed restriction acts on Λg* ⊗ functions only")
            for k2, t in self._image(e).items():
                for k, c in smul(s, t, self.order).items():
                    accumulate(acc, (g, a, k2), k, c)
        return x._like(prune(acc))

    def lambda_part(self, f, r):
        """The λ^r component of the map applied to f."""
        return self(f).lambda_part(r)


def deformed_restriction(ctx):
    if ctx.constrained is None:
        raise DomainError("context carries no constraint surface")
    return DeformedRestriction(ctx.lie, ctx.constrained, ctx.order)


def check_restriction_properties(res, degree, samples=None):
    """The three defining properties on all monomials of degree ≤ degree.

    Returns a dict name -> (ok, witness).
    """
    n, N = res.n, res.order
    out = {}
    witness = None
    for e in monomials_up_to(2 * n, degree):
        f = PolyObservable._raw({e: {0: G1}}, N, n=n)
        if res(f).lambda_part(0) != classical_restrict(f, res.constrained).lambda_part(0):
            witness = e
            break
    out["lambda0_is_classical"] = (witness is None, witness)
    witness = None
    for e in monomials_up_to(2 * n, degree - 1):
        f = PolyObservable._raw({e: {0: G1}}, N, n=n)
        for a in res.constrained:
            if res(moyal_star(f, res.momenta[a])):
                witness = (e, a)
                break
        if witness:
            break
    out["kills_koszul_image"] = (witness is None, witness)
    witness = None
    for e in monomials_up_to(2 * n, degree):
        if any(e[n + a] for a in res.constrained):
            continue
        phi = PolyObservable._raw({e: {0: G1}}, N, n=n)
        if res(prolong(phi, res.constrained)) != phi:
            witness = e
            break
    out["left_inverse_of_prolongation"] = (witness is None, witness)
    return out


def restriction_by_field_solve(lie, constrained, order, degree):
    """Independent route: solve the defining conditions per λ-order over Q(i).

    Unknowns are the images of all monomials of degree ≤ degree. Returns a
    dict monomial -> series image dict, or raises LiftingError.
    """
    n = lie.n
    monos = monomials_up_to(2 * n, degree)
    idx = {e: i for i, e in enumerate(monos)}
    free = [e for e in monos if not any(e[n + a] for a in constrained)]
    fidx = {e: i for i, e in enumerate(free)}
    momenta = [lie.quantum_momentum(pos, order) for pos in range(len(constrained))]
    # constraints: vector v (series per monomial) and target t (series per free monomial)
    cons = []
    for e in free:
        cons.append(({e: {0: G1}}, {e: {0: G1}}))
    for e in monomials_up_to(2 * n, degree - 1):
        f = PolyObservable._raw({e: {0: G1}}, order, n=n)
        for pos in range(len(constrained)):
            prod = moyal_star(f, momenta[pos])
            cons.append((prod.terms, {}))
    rows = []
    for v, _ in cons:
        row = [(Q0, Q0)] * len(monos)
        for key, s in v.items():
            if 0 in s:
                row[idx[key]] = s[0]
        rows.append(row)
    if fieldla.rank(rows) != len(monos):
        raise LiftingError("defining conditions do not determine the restriction")
    images = {e: {} for e in monos}
    for r in range(order + 1):
        rhs_cols = []
        for v, t in cons:
            # L_r(v_0) = t_r − Σ_{s≥1} L_{r−s}(v_s)
            target = {}
            for key, s in t.items():
                if r in s:
                    target[key] = s[r]
            for key, s in v.items():
                for sp, c in s.items():
                    if sp == 0 or sp > r:
                        continue
                    for fk, ser in images[key].items():
                        val = ser.get(r - sp)
                        if val is not None:
                            old = target.get(fk, (Q0, Q0))
                            p = gmul(c, val)
                            target[fk] = (old[0] - p[0], old[1] - p[1])
            rhs_cols.append(target)
        for fk in free:
            rhs = [tc.get(fk, (Q0, Q0)) for tc in rhs_cols]
            if not any(x[0] or x[1] for x in rhs):
                continue
            sol = fieldla.solve(rows, rhs)
            if sol is None:
                raise LiftingError(f"no solution at order λ^{r}")
            for e, val in zip(monos, sol):
                if val[0] or val[1]:
                    images[e].setdefault(fk, {})[r] = val
    return {e: {k: s for k, s in img.items() if s} for e, img in images.items()}


def reduced_star(res, u1, u2):
    """u1 ⋆_red u2 = ι*(prol u1 ⋆ prol u2)."""
    return res(moyal_star(prolong(u1, res.constrained), prolong(u2, res.constrained)))


def reduced_variables(lie, constrained):
    """Indices (into the exponent tuple) of the residual canonical pairs."""
    n = lie.n
    rest = [b for b in range(n) if b not in constrained]
    return rest, [b for b in rest] + [n + b for b in rest]


def reduced_monomials(lie, constrained, degree):
    """Monomials in the residual pairs, embedded as full exponent tuples."""
    n = lie.n
    rest, slots = reduced_variables(lie, constrained)
    out = []
    for small in monomials_up_to(len(slots), degree):
        e = [0] * (2 * n)
        for s, x in zip(slots, small):
            e[s] = x
        out.append(tuple(e))
    return out


def invariant_monomials(lie, constrained, degree):
    return reduced_monomials(lie, constrained, degree)


def check_f0_reality(res, elements, restriction=None):
    """conj(ι* F⁰) = ι* conj(F⁰) for the Grassmann-trivial part of each element."""
    restriction = restriction or res
    for x in elements:
        f0 = x.function_part((0, 0))
        lhs = restriction(f0).conj()
        rhs = restriction(f0.conj())
        if lhs != rhs:
            return False, x
    return True, None


class BrokenRestriction:
    """Negative control: ι*(bold) plus iλ ι*∂_q∂_p on one residual pair."""

    def __init__(self, res, pair):
        self.res = res
        self.pair = pair

    def __call__(self, f):
        b = self.pair
        extra = f.derivative("q", b).derivative("p", b)
        return self.res(f) + self.res(extra).scale({1: GI})


def psi_map(res, hres):
    """[a] ↦ [ι*(bold) F⁰(a)] from H^(0) to invariant polynomials on C.

    Returns (ok_well_defined, matrix columns, target monomials, profile).
    """
    sector = hres.sector
    degree = sector.poly_degree_cap
    targets = invariant_monomials(res.lie, res.constrained, degree)
    tidx = {e: i for i, e in enumerate(targets)}
    order = res.order
    cols = []
    for vec in hres.quotient.representatives():
        img = res(sector.element(vec).function_part((0, 0)))
        col = {}
        for e, s in img.terms.items():
            if e not in tidx:
                return False, None, targets, None
            col[tidx[e]] = s
        cols.append(col)
    for vec, _ in hres.boundaries.generators():
        if res(sector.element(vec).function_part((0, 0))):
            return False, None, targets, None
    vals = _rank_profile(cols, len(targets), order)
    return True, cols, targets, vals


# Koszul homotopy --------------------------------------------------------------

def koszul_homotopy(ctx, x):
    """h = Σ_a e_a ∧ ∂/∂p_a divided by (constrained p-degree + antighost degree).

    Classical, λ-independent; ghosts are spectators with the sign of ∂.
    """
    n = ctx.n
    cons = ctx.constrained
    acc = {}
    for (g, a, e), s in x.terms.items():
        k = g.bit_count()
        r = sum(e[n + b] for b in cons)
        ell = a.bit_count()
        if r + ell == 0:
            continue
        for pos, b in enumerate(cons):
            if not e[n + b] or a & (1 << pos):
                continue
            ne = list(e)
            ne[n + b] -= 1
            sign, m = mono_wedge((0, 1 << pos), (0, a))
            sign *= -1 if k % 2 else 1
            coef = mpq(e[n + b] * sign, r + ell)
            for kk, c in s.items():
                accumulate(acc, (g, m[1], tuple(ne)), kk, (c[0] * coef, c[1] * coef))
    return ctx.element(prune(acc))


def check_koszul_homotopy(ctx, degree):
    """Augmented identity D̂ĥ + ĥD̂ = 2·id at λ⁰ on ghost-free sectors.

    With D̂ = 2∂ on antighost degree ≥ 1 and 2ι* into the functions on C, and
    ĥ = h plus prol, this reduces to ∂h + h∂ = id − prol∘ι* on antighost
    degree 0 and ∂h + h∂ = id above; both are checked on every monomial.
    """
    n = ctx.n
    cons = ctx.constrained
    for e in monomials_up_to(2 * n, degree):
        for a in range(1 << ctx.dim):
            x = BrstElement._raw({(0, a, e): {0: G1}}, ctx.order, n=n)
            lhs = classical_koszul(ctx, koszul_homotopy(ctx, x)) + \
                koszul_homotopy(ctx, classical_koszul(ctx, x))
            if a == 0 and not any(e[n + b] for b in cons):
                expected = ctx.zero()
            else:
                expected = x
            if lhs.lambda_part(0) != expected:
                return False, (a, e)
    return True, None


__all__ = ["SectorBasis", "operator_map", "cycles", "boundaries", "CohomologyResult",
           "QuotientResult", "brst_cohomology", "brst_quotient", "compare_with_cohomology",
           "involution_closure", "DeformedRestriction", "deformed_restriction",
           "check_restriction_properties", "restriction_by_field_solve", "reduced_star",
           "reduced_monomials", "invariant_monomials", "check_f0_reality", "BrokenRestriction",
           "psi_map", "koszul_homotopy", "check_koszul_homotopy"]
