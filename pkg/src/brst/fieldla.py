"""Dense Gaussian elimination over the field Q(i).

Matrices are lists of rows of Gaussian rationals ``(re, im)``. This module is
deliberately simple; it backs the order-by-order oracle for the module
elimination in :mod:`brst.linalg` and a few small exact solves.
"""

from .scalars import G0, G1, gmul, ginv, gsub


def _is_zero(c):
    return not c[0] and not c[1]


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    a = [list(r) for r in rows]
    if not a:
        return [], []
    ncols = len(a[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(a)):
            if not _is_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = ginv(a[r][c])
        a[r] = [gmul(x, inv) for x in a[r]]
        for i in range(len(a)):
            if i != r and not _is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [gsub(x, gmul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows):
    if not rows or not rows[0]:
        return 0
    return len(rref(rows)[1])


def nullspace(rows, ncols):
    """Basis of {x : rows · x = 0} as a list of vectors."""
    red, pivots = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for f in free:
        v = [G0] * ncols
        v[f] = G1
        for r, pc in enumerate(pivots):
            c = red[r][f]
            if not _is_zero(c):
                v[pc] = (-c[0], -c[1])
        out.append(v)
    return out


def solve(rows, rhs):
    """One solution x of rows · x = rhs, or None if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [G0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def transpose(rows):
    return [list(col) for col in zip(*rows)] if rows else []


def matmul(a, b):
    bt = transpose(b)
    out = []
    for row in a:
        new = []
        for col in bt:
            acc = G0
            for x, y in zip(row, col):
                if not _is_zero(x) and not _is_zero(y):
                    p = gmul(x, y)
                    acc = (acc[0] + p[0], acc[1] + p[1])
            new.append(acc)
        out.append(new)
    return out
