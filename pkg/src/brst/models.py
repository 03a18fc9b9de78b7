"""Ready-made Lie data for the shipped examples."""

from .grassmann import MetricData
from .scalars import DEFAULT_ORDER
from .weyl import LieData, PolyObservable


def translation_model(m, constrained=(0,), order=DEFAULT_ORDER, correction=None):
    """Abelian g = R^k acting on T*R^m by translating the constrained q's; J_a = p_a.

    ``correction`` optionally gives one rational constant per generator; the
    quantum momentum map is then J_a + λ c_a.
    """
    k = len(constrained)
    mom = [PolyObservable.p(a, m, order) for a in constrained]
    corr = None
    if correction is not None:
        corr = [PolyObservable.constant({1: _g(c)}, m, order) for c in correction]
    return LieData(k, {}, mom, MetricData.identity(k), corr, m)


def _g(c):
    from .scalars import gauss
    return gauss(c)


def so3_model(order=DEFAULT_ORDER, metric=None):
    """so(3) acting on T*R^3 by rotations; J = q × p."""
    n = 3
    q = [PolyObservable.q(a, n, order) for a in range(n)]
    p = [PolyObservable.p(a, n, order) for a in range(n)]
    mom = []
    for a in range(3):
        b, c = (a + 1) % 3, (a + 2) % 3
        mom.append(q[b].pointwise(p[c]) - q[c].pointwise(p[b]))
    f = {}
    for a in range(3):
        b, c = (a + 1) % 3, (a + 2) % 3
        f[(a, b)] = {c: 1}
        f[(b, a)] = {c: -1}
    return LieData(3, f, mom, metric or MetricData.identity(3), None, n)


def nonunimodular_model(order=DEFAULT_ORDER):
    """The two-dimensional algebra [ξ_0, ξ_1] = ξ_1 on T*R with J_0 = qp, J_1 = p."""
    q = PolyObservable.q(0, 1, order)
    p = PolyObservable.p(0, 1, order)
    f = {(0, 1): {1: 1}, (1, 0): {1: -1}}
    return LieData(2, f, [q.pointwise(p), p], MetricData.identity(2), None, 1)
