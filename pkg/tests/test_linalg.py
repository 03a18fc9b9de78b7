import pytest
from hypothesis import given, settings, strategies as st

from brst import oracle
from brst.errors import ContainmentError
from brst.linalg import (SectorMap, SubspaceBasis, apply_columns, image, image_columns,
                         intersection, kernel, kernel_columns, matrix_from_rows, quotient_basis,
                         smith, span)
from brst.scalars import smul


def _add_into(acc, s):
    for k, c in s.items():
        o = acc.get(k)
        acc[k] = c if o is None else (o[0] + c[0], o[1] + c[1])


def _clean(s):
    return {k: c for k, c in s.items() if c[0] or c[1]}


def dense_product(left_rows, right_cols, n_inner, order):
    """Entry (i, j) of L·R for L given by rows and R by columns."""
    out = {}
    for i, row in left_rows.items():
        for j, col in right_cols.items():
            acc = {}
            for k, s in row.items():
                t = col.get(k)
                if t:
                    _add_into(acc, smul(s, t, order))
            acc = _clean(acc)
            if acc:
                out[(i, j)] = acc
    return out


@st.composite
def matrices(draw, max_dim=8, max_order=2):
    order = draw(st.integers(0, max_order))
    nrows = draw(st.integers(1, max_dim))
    ncols = draw(st.integers(1, max_dim))
    entry = st.dictionaries(st.integers(0, order),
                            st.tuples(st.integers(-2, 2), st.integers(-1, 1)).filter(any),
                            max_size=2)
    density = draw(st.sampled_from([0.2, 0.5]))
    cols = []
    for _ in range(ncols):
        col = {}
        for i in range(nrows):
            if draw(st.floats(0, 1)) < density:
                s = draw(entry)
                s = {k: c for k, c in s.items()}
                if s:
                    col[i] = s
        cols.append(col)
    return cols, nrows, order


def _as_series(cols):
    from brst.scalars import gauss
    return [{i: {k: gauss(c) for k, c in s.items()} for i, s in col.items()} for col in cols]


@settings(max_examples=80)
@given(matrices())
def test_smith_reconstructs(m):
    cols, nrows, order = m
    cols = _as_series(cols)
    sf = smith(cols, nrows, order)
    ncols = len(cols)
    rows_m = {}
    for j, col in enumerate(cols):
        for i, s in col.items():
            rows_m.setdefault(i, {})[j] = s
    um = dense_product(sf.U, {j: col for j, col in enumerate(cols)}, nrows, order)
    um_rows = {}
    for (i, j), s in um.items():
        um_rows.setdefault(i, {})[j] = s
    umv = dense_product(um_rows, sf.V, ncols, order)
    want = {(i, j): {v: (1, 0)} for i, j, v in sf.pivots}
    got = {key: {k: (int(c[0]), int(c[1])) for k, c in s.items()} for key, s in umv.items()}
    assert got == want
    assert dense_product(sf.U, sf.Uinv, nrows, order) == {(i, i): {0: (1, 0)}
                                                          for i in range(nrows)}
    assert dense_product(sf.Vinv, sf.V, ncols, order) == {(i, i): {0: (1, 0)}
                                                          for i in range(ncols)}


@settings(max_examples=80)
@given(matrices())
def test_smith_matches_fraction_field_oracle(m):
    cols, nrows, order = m
    cols = _as_series(cols)
    vals = smith(cols, nrows, order).valuations()
    counts = oracle.valuation_counts(cols, nrows, len(cols), order)
    assert [vals.count(v) for v in range(order + 1)] == counts


@settings(max_examples=60)
@given(matrices())
def test_kernel_and_image_dimensions(m):
    cols, nrows, order = m
    cols = _as_series(cols)
    ncols = len(cols)
    K = kernel_columns(cols, nrows, ncols, order)
    im = image_columns(cols, nrows, order)
    assert K.kdim() == oracle.kernel_kdim(cols, nrows, ncols, order)
    assert im.kdim() == oracle.image_kdim(cols, nrows, ncols, order)
    for vec, _ in K.generators():
        assert not apply_columns(cols, vec, order)
    for j in range(ncols):
        assert im.contains(cols[j])


@settings(max_examples=40)
@given(matrices(max_dim=6), st.data())
def test_intersection_dimension(m, data):
    cols, nrows, order = m
    cols = _as_series(cols)
    other = data.draw(matrices(max_dim=6).filter(lambda x: True))
    ocols = _as_series([{i: s for i, s in c.items() if i < nrows} for c in other[0]])
    ocols = [{i: {k: c for k, c in s.items() if k <= order} for i, s in col.items()}
             for col in ocols]
    S = span(cols, nrows, order)
    T = span(ocols, nrows, order)
    meet = intersection(S, T)
    both = oracle.span_kdim(cols + ocols, nrows, order)
    assert meet.kdim() == S.kdim() + T.kdim() - both
    for vec, _ in meet.generators():
        assert S.contains(vec) and T.contains(vec)


def test_zero_and_identity_maps():
    zero = SectorMap(range(3), range(2), [dict() for _ in range(3)], 2)
    assert kernel(zero).free_rank == 3
    assert image(zero).rank_profile() == [0, 0, 0]
    ident = SectorMap(range(3), range(3), [{i: {0: (1, 0)}} for i in range(3)], 2)
    assert kernel(ident).kdim() == 0


def nilpotent_example(order=3):
    one = {0: (1, 0)}
    rows = [[{}, {}, one], [{}, {}, {}], [{}, {}, {}]]
    return SectorMap(range(3), range(3), matrix_from_rows(rows), order)


def test_nilpotent_three_by_three():
    D = nilpotent_example()
    K, im = kernel(D), image(D)
    assert (K.free_rank, im.free_rank) == (2, 1)
    Q = quotient_basis(im, K)
    assert Q.free_rank == 1 and not Q.torsion()
    (rep,) = Q.representatives()
    assert rep == {1: {0: (1, 0)}}
    assert Q.is_zero_class({0: {0: (1, 0)}})


def test_quotient_edge_cases():
    S = span([{0: {0: (1, 0)}}, {1: {1: (1, 0)}}], 3, 2)
    assert quotient_basis(S, S).kdim() == 0
    Q = quotient_basis(SubspaceBasis.zero(3, 2), S)
    assert Q.free_rank == 1 and [d for _, d in Q.torsion()] == [2]


def test_quotient_torsion():
    full = SubspaceBasis.full(1, 3)
    sub = span([{0: {2: (1, 0)}}], 1, 3)
    Q = quotient_basis(sub, full)
    assert Q.free_rank == 0
    assert [d for _, d in Q.torsion()] == [2]
    assert Q.kdim() == 2


def test_containment_failure_has_witness():
    S = span([{0: {0: (1, 0)}}], 2, 2)
    T = span([{1: {0: (1, 0)}}], 2, 2)
    with pytest.raises(ContainmentError) as info:
        quotient_basis(T, S)
    assert info.value.witness == {1: {0: (1, 0)}}
