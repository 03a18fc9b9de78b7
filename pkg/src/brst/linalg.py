"""Exact linear algebra over the chain ring R = Q(i)[λ]/(λ^(N+1)).

R is local with maximal ideal (λ), so every matrix has a Smith form
U·M·V = diag(λ^(v_1), ..., λ^(v_r), 0, ...). The elimination below picks, at
each step, an entry of minimal λ-valuation as pivot: its λ⁰-normalized part
is a unit, and it divides every other remaining entry. Row operations clear
its column, column operations its row. Both transforms and their inverses
are tracked, sparsely.

Every submodule S of R^n then has the normal form

    S = { Σ_i P[:, i] y_i : val(y_i) >= e_i },

with P invertible and exponents e_i in {0, ..., N+1}. Exponent 0 means a
free generator, 1..N a λ-torsion generator λ^e·P[:, i] (reported, never
dropped), N+1 an absent direction. Kernels, images, intersections and
quotients all come out in this form.
"""

from .errors import ContainmentError
from .scalars import (DEFAULT_ORDER, G1, FormalScalar, gneg, sdiv, sinv, smul, sval)


def _axpy(target, x, c, order):
    """target += c·x for sparse vectors (dict index -> series)."""
    for idx, s in x.items():
        prod = smul(c, s, order)
        if not prod:
            continue
        old = target.get(idx)
        if old is None:
            target[idx] = prod
            continue
        for k, v in prod.items():
            o = old.get(k)
            if o is None:
                old[k] = v
            else:
                w = (o[0] + v[0], o[1] + v[1])
                if w[0] or w[1]:
                    old[k] = w
                else:
                    del old[k]
        if not old:
            del target[idx]


def _neg(s):
    return {k: gneg(c) for k, c in s.items()}


def _shift_down(s, v):
    return {k - v: c for k, c in s.items()}


def _identity(n):
    return {i: {i: {0: G1}} for i in range(n)}


class SmithForm:
    """U·M·V = D with D supported on the pivot positions.

    ``U`` and ``Vinv`` are stored by rows, ``Uinv`` and ``V`` by columns.
    ``pivots`` lists (row, column, valuation) in elimination order.
    """

    def __init__(self, nrows, ncols, order, pivots, U, Uinv, V, Vinv):
        self.nrows = nrows
        self.ncols = ncols
        self.order = order
        self.pivots = pivots
        self.U = U
        self.Uinv = Uinv
        self.V = V
        self.Vinv = Vinv

    def valuations(self):
        return sorted(v for _, _, v in self.pivots)


def smith(columns, nrows, order):
    """Smith form of the matrix given as a list of sparse columns."""
    ncols = len(columns)
    rows = {}
    colidx = {}
    for j, col in enumerate(columns):
        for i, s in col.items():
            s = {k: c for k, c in s.items() if k <= order and (c[0] or c[1])}
            if s:
                rows.setdefault(i, {})[j] = s
                colidx.setdefault(j, set()).add(i)
    U = _identity(nrows)
    Uinv = _identity(nrows)
    V = _identity(ncols)
    Vinv = _identity(ncols)
    pivots = []
    active_rows = set(rows)
    while True:
        best = None
        for i in active_rows:
            for j, s in rows[i].items():
                v = min(s)
                key = (v, j, i)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        v, j, i = best
        p = rows[i][j]
        # normalize the pivot to exactly λ^v by scaling row i with a unit
        unit = _shift_down(p, v)
        m = order - v
        scale = sinv({k: c for k, c in unit.items() if k <= m}, m)
        if scale != {0: G1}:
            scale_inv = sinv(scale, order)
            newrow = {}
            for jj, s in rows[i].items():
                t = smul(s, scale, order)
                if t:
                    newrow[jj] = t
            rows[i] = newrow
            U[i] = {c: t for c, s in U[i].items() if (t := smul(s, scale, order))}
            Uinv[i] = {r: t for r, s in Uinv[i].items() if (t := smul(s, scale_inv, order))}
        rows[i][j] = {v: G1}
        # clear column j with row operations
        for r in sorted(colidx.get(j, ())):
            if r == i:
                continue
            c = _shift_down(rows[r][j], v)
            negc = _neg(c)
            for jj, s in rows[i].items():
                prod = smul(negc, s, order)
                if not prod:
                    continue
                old = rows[r].get(jj)
                if old is None:
                    rows[r][jj] = prod
                    colidx.setdefault(jj, set()).add(r)
                    continue
                for k, val in prod.items():
                    o = old.get(k)
                    if o is None:
                        old[k] = val
                    else:
                        w = (o[0] + val[0], o[1] + val[1])
                        if w[0] or w[1]:
                            old[k] = w
                        else:
                            del old[k]
                if not old:
                    del rows[r][jj]
                    colidx[jj].discard(r)
            rows[r].pop(j, None)
            colidx[j].discard(r)
            _axpy(U[r], U[i], negc, order)
            _axpy(Uinv[i], Uinv[r], c, order)
        # clear row i with column operations; column j is now zero off row i
        for s_col in sorted(rows[i]):
            if s_col == j:
                continue
            c = _shift_down(rows[i][s_col], v)
            _axpy(V[s_col], V[j], _neg(c), order)
            _axpy(Vinv[j], Vinv[s_col], c, order)
            colidx[s_col].discard(i)
        rows[i] = {j: {v: G1}}
        active_rows.discard(i)
        for r in list(colidx.get(j, ())):
            if r != i:
                colidx[j].discard(r)
        # deactivate column j for the remaining rows (already zero there)
        for r in active_rows:
            rows[r].pop(j, None)
        pivots.append((i, j, v))
    return SmithForm(nrows, ncols, order, pivots, U, Uinv, V, Vinv)


class SubspaceBasis:
    """A submodule of R^dim in normal form.

    ``frame`` holds the columns P[:, i] (dict index -> sparse vector),
    ``coframe`` the rows of P⁻¹, ``exponents`` the e_i.
    """

    def __init__(self, dim, order, frame, coframe, exponents, labels=None):
        self.dim = dim
        self.order = order
        self.frame = frame
        self.coframe = coframe
        self.exponents = exponents
        self.labels = labels

    @classmethod
    def zero(cls, dim, order=DEFAULT_ORDER):
        return cls(dim, order, _identity(dim), _identity(dim), [order + 1] * dim)

    @classmethod
    def full(cls, dim, order=DEFAULT_ORDER):
        return cls(dim, order, _identity(dim), _identity(dim), [0] * dim)

    def _members(self):
        return [i for i in range(self.dim) if self.exponents[i] <= self.order]

    def generators(self):
        """List of (vector, exponent); the generator is λ^exponent · vector."""
        out = []
        for i in self._members():
            e = self.exponents[i]
            vec = {k: {kk + e: c for kk, c in s.items() if kk + e <= self.order}
                   for k, s in self.frame[i].items()}
            vec = {k: s for k, s in vec.items() if s}
            out.append((vec, e))
        return out

    def free_generators(self):
        return [v for v, e in self.generators() if e == 0]

    def torsion_generators(self):
        return [(v, e) for v, e in self.generators() if e > 0]

    @property
    def free_rank(self):
        return sum(1 for e in self.exponents if e == 0)

    @property
    def rank(self):
        return self.free_rank

    def rank_profile(self):
        """Number of generators per exponent 0..N."""
        prof = [0] * (self.order + 1)
        for e in self.exponents:
            if e <= self.order:
                prof[e] += 1
        return prof

    def kdim(self):
        """Dimension over Q(i)."""
        return sum(self.order + 1 - e for e in self.exponents if e <= self.order)

    def has_torsion(self):
        return any(0 < e <= self.order for e in self.exponents)

    def cocoords(self, v):
        """y = P⁻¹ v."""
        y = {}
        for i, row in self.coframe.items():
            acc = {}
            for k, s in row.items():
                t = v.get(k)
                if t is not None:
                    for kk, c in smul(s, t, self.order).items():
                        o = acc.get(kk)
                        acc[kk] = c if o is None else (o[0] + c[0], o[1] + c[1])
            acc = {k: c for k, c in acc.items() if c[0] or c[1]}
            if acc:
                y[i] = acc
        return y

    def contains(self, v):
        y = self.cocoords(v)
        return all(sval(s, self.order) >= self.exponents[i] for i, s in y.items())

    def coordinates(self, v):
        """c with v = Σ c_i λ^{e_i} P[:, i]; raises if v is not in the module."""
        y = self.cocoords(v)
        out = {}
        for i, s in y.items():
            e = self.exponents[i]
            if sval(s, self.order) < e:
                raise ContainmentError("vector is not in the submodule", witness=v)
            if e <= self.order:
                out[i] = _shift_down(s, e)
        return out

    def vectors_as_scalars(self):
        """Free generators as lists of FormalScalar, for reporting."""
        out = []
        for vec in self.free_generators():
            out.append([FormalScalar.from_series(vec.get(k, {}), self.order)
                        for k in range(self.dim)])
        return out

    def __repr__(self):
        return (f"SubspaceBasis(dim={self.dim}, free_rank={self.free_rank}, "
                f"profile={self.rank_profile()})")


def kernel_columns(columns, nrows, ncols, order):
    sf = smith(columns, nrows, order)
    exps = [0] * ncols
    for _, j, v in sf.pivots:
        exps[j] = order + 1 - v
    return SubspaceBasis(ncols, order, sf.V, sf.Vinv, exps)


def image_columns(columns, nrows, order):
    sf = smith(columns, nrows, order)
    exps = [order + 1] * nrows
    for i, _, v in sf.pivots:
        exps[i] = v
    return SubspaceBasis(nrows, order, sf.Uinv, sf.U, exps)


def span(vectors, dim, order):
    """The submodule generated by the given sparse vectors."""
    return image_columns(list(vectors), dim, order)


def apply_columns(columns, v, order):
    """M·v for M given by sparse columns."""
    out = {}
    for j, s in v.items():
        _axpy(out, columns[j], s, order)
    return out


def _defining_rows(S):
    """Rows of diag(λ^{N+1-e}) P⁻¹: S is exactly their common kernel."""
    N = S.order
    rows = []
    for i in range(S.dim):
        e = S.exponents[i]
        if e == 0:
            continue
        shift = N + 1 - e
        row = {}
        for k, s in S.coframe.get(i, {}).items():
            t = {kk + shift: c for kk, c in s.items() if kk + shift <= N}
            if t:
                row[k] = t
        if row:
            rows.append(row)
    return rows


def _rows_to_columns(rows, ncols):
    cols = [dict() for _ in range(ncols)]
    for r, row in enumerate(rows):
        for j, s in row.items():
            cols[j][r] = s
    return cols


def intersection(S, T):
    """S ∩ T as the kernel of the stacked defining equations."""
    if S.dim != T.dim or S.order != T.order:
        raise ValueError("submodules of different ambient modules")
    rows = _defining_rows(S) + _defining_rows(T)
    return kernel_columns(_rows_to_columns(rows, S.dim), len(rows), S.dim, S.order)


def is_submodule(T, S):
    for vec, _ in T.generators():
        if not S.contains(vec):
            return False, vec
    return True, None


class Quotient:
    """S / T for T ⊆ S, decomposed as ⊕ R/λ^{d_k}.

    ``summands`` lists (representative, d) with d = N+1 for a free summand;
    trivial summands (d = 0) are omitted.
    """

    def __init__(self, sup, sub, summands, transform, index):
        self.sup = sup
        self.sub = sub
        self.summands = summands
        self._transform = transform
        self._index = index

    @property
    def order(self):
        return self.sup.order

    @property
    def free_rank(self):
        return sum(1 for _, d, _ in self.summands if d == self.order + 1)

    @property
    def rank(self):
        return self.free_rank

    def representatives(self):
        return [v for v, d, _ in self.summands if d == self.order + 1]

    def torsion(self):
        return [(v, d) for v, d, _ in self.summands if d <= self.order]

    def kdim(self):
        return sum(d for _, d, _ in self.summands)

    def coordinates(self, v):
        """Coordinates of v ∈ S in the summands, each reduced mod λ^d."""
        c = self.sup.coordinates(v)
        local = {self._index[i]: s for i, s in c.items() if i in self._index}
        out = []
        for _, d, row_id in self.summands:
            acc = {}
            for k, s in self._transform.get(row_id, {}).items():
                t = local.get(k)
                if t is not None:
                    for kk, val in smul(s, t, self.order).items():
                        o = acc.get(kk)
                        acc[kk] = val if o is None else (o[0] + val[0], o[1] + val[1])
            out.append({k: val for k, val in acc.items() if k < d and (val[0] or val[1])})
        return out

    def is_zero_class(self, v):
        return all(not c for c in self.coordinates(v))


def quotient_basis(sub, sup):
    """Decompose sup/sub; sub must be contained in sup."""
    ok, witness = is_submodule(sub, sup)
    if not ok:
        raise ContainmentError("sub is not contained in sup", witness=witness)
    N = sup.order
    members = sup._members()
    index = {i: pos for pos, i in enumerate(members)}
    cols = []
    for vec, _ in sub.generators():
        c = sup.coordinates(vec)
        cols.append({index[i]: s for i, s in c.items() if i in index and s})
    for pos, i in enumerate(members):
        e = sup.exponents[i]
        if e > 0:
            cols.append({pos: {N + 1 - e: G1}})
    sf = smith(cols, len(members), N)
    pivot_val = {i: v for i, _, v in sf.pivots}
    summands = []
    for r in range(len(members)):
        d = pivot_val.get(r, N + 1)
        if d == 0:
            continue
        # representative: lift the column Uinv[:, r] from coordinates to R^dim
        rep = {}
        for pos, s in sf.Uinv[r].items():
            i = members[pos]
            e = sup.exponents[i]
            scaled = {k + e: c for k, c in s.items() if k + e <= N}
            if scaled:
                _axpy(rep, sup.frame[i], scaled, N)
        summands.append((rep, d, r))
    # deterministic order: free summands first, then by representative support
    summands.sort(key=lambda t: (-t[1], min(t[0]) if t[0] else -1))
    return Quotient(sup, sub, summands, sf.U, index)


def matrix_from_rows(rows):
    """Sparse columns from a dense row list of series (helper for tests)."""
    ncols = len(rows[0]) if rows else 0
    cols = [dict() for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, s in enumerate(row):
            if s:
                cols[j][i] = s
    return cols


def kernel(m):
    return kernel_columns(m.columns, len(m.codomain), len(m.domain), m.order)


def image(m):
    return image_columns(m.columns, len(m.codomain), m.order)


class SectorMap:
    """A matrix over R between two ordered bases (columns index the domain)."""

    def __init__(self, domain, codomain, columns, order):
        self.domain = list(domain)
        self.codomain = list(codomain)
        self.columns = columns
        self.order = order

    def entry(self, i, j):
        return FormalScalar.from_series(self.columns[j].get(i, {}), self.order)

    def apply(self, v):
        return apply_columns(self.columns, v, self.order)

    def __repr__(self):
        return f"SectorMap({len(self.codomain)}x{len(self.domain)}, N={self.order})"


__all__ = ["SmithForm", "smith", "SubspaceBasis", "Quotient", "SectorMap", "kernel", "image",
           "kernel_columns", "image_columns", "span", "intersection", "quotient_basis",
           "is_submodule", "apply_columns", "matrix_from_rows", "sdiv"]
