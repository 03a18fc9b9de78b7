"""Independent check of the module elimination by expansion over Q(i).

A matrix over R = Q(i)[λ]/(λ^(N+1)) acting on (R/λ^t)^n is the block
lower-triangular Toeplitz matrix of its λ-coefficients. Its Q(i)-ranks for
t = 1..N+1 determine the multiset of Smith valuations without any
elimination over R.
"""

from . import fieldla
from .scalars import G0


def expanded(columns, nrows, ncols, t):
    """Q(i)-matrix of the map (R/λ^t)^ncols -> (R/λ^t)^nrows.

    Coordinates are ordered (power, index): row k*nrows + i holds the λ^k
    coefficient of output i.
    """
    rows = [[G0] * (t * ncols) for _ in range(t * nrows)]
    for j, col in enumerate(columns):
        for i, s in col.items():
            for k, c in s.items():
                for shift in range(t - k):
                    rows[(shift + k) * nrows + i][shift * ncols + j] = c
    return rows


def valuation_counts(columns, nrows, ncols, order):
    """Number of Smith pivots with valuation 0, 1, ..., N."""
    ranks = [0]
    for t in range(1, order + 2):
        ranks.append(fieldla.rank(expanded(columns, nrows, ncols, t)))
    deltas = [ranks[t] - ranks[t - 1] for t in range(1, order + 2)]
    return [deltas[0]] + [deltas[t] - deltas[t - 1] for t in range(1, order + 1)]


def kernel_kdim(columns, nrows, ncols, order):
    t = order + 1
    return t * ncols - fieldla.rank(expanded(columns, nrows, ncols, t))


def image_kdim(columns, nrows, ncols, order):
    return fieldla.rank(expanded(columns, nrows, ncols, order + 1))


def span_kdim(vectors, dim, order):
    """Q(i)-dimension of the R-span of the given vectors."""
    return image_kdim(list(vectors), dim, len(vectors), order)


def flatten(vec, dim, order):
    out = [G0] * ((order + 1) * dim)
    for i, s in vec.items():
        for k, c in s.items():
            out[k * dim + i] = c
    return out


def _expand_vectors(vectors, dim, order):
    return [flatten(v, dim, order) for v in vectors]


def _kernel_vectors(columns, nrows, ncols, order):
    """Q(i)-basis of the kernel of the expanded map, as sparse R-vectors."""
    t = order + 1
    rows = expanded(columns, nrows, ncols, t)
    basis = fieldla.nullspace(rows, t * ncols) if rows else _unit_vectors(t * ncols)
    return [_unflatten(v, ncols) for v in basis]


def _unit_vectors(m):
    out = []
    for i in range(m):
        v = [G0] * m
        v[i] = (1, 0)
        out.append(v)
    return out


def _unflatten(v, dim):
    out = {}
    for idx, c in enumerate(v):
        if c[0] or c[1]:
            k, i = divmod(idx, dim)
            out.setdefault(i, {})[k] = c
    return out


def _apply(columns, v, order):
    out = {}
    for j, s in v.items():
        for i, t in columns[j].items():
            for a, x in s.items():
                for b, y in t.items():
                    if a + b <= order:
                        acc = out.setdefault(i, {})
                        p = (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])
                        o = acc.get(a + b)
                        acc[a + b] = p if o is None else (o[0] + p[0], o[1] + p[1])
    return out


def sector_kdims(ctx, k, degree, ops):
    """Q(i)-dimensions (cycles, boundaries) for the operators in ``ops``.

    ``ops`` is a list of (operator, ghost shift). Cycles are the common
    kernel; boundaries are the intersection of the separate images, each
    restricted to preimages landing inside the sector.
    """
    from .homology import SectorBasis, _split_rows, operator_map
    N = ctx.order
    sector = SectorBasis(ctx, k, degree)
    n = len(sector)
    stacked = [dict() for _ in range(n)]
    offset = 0
    for op, _ in ops:
        m = operator_map(ctx, op, sector)
        for j, col in enumerate(m.columns):
            for i, s in col.items():
                stacked[j][offset + i] = s
        offset += len(m.codomain)
    z = kernel_kdim(stacked, offset, n, N)
    spaces = []
    for op, shift in ops:
        src = SectorBasis(ctx, k - shift, degree)
        m = operator_map(ctx, op, src)
        inside, outside = _split_rows(m, sector)
        pre = _kernel_vectors(outside, len(m.codomain), len(src), N)
        spaces.append(_expand_vectors([_apply(inside, v, N) for v in pre], n, N))
    if len(spaces) == 1:
        b = fieldla.rank(spaces[0]) if spaces[0] else 0
    else:
        dims = [fieldla.rank(s) if s else 0 for s in spaces]
        total = fieldla.rank([r for s in spaces for r in s]) if any(spaces) else 0
        b = sum(dims) - total
    return z, b
