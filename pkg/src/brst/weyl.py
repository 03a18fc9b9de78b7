"""Polynomial observables on R^(2n) with the Moyal star product.

Exponent tuples are ordered ``(q_0, ..., q_{n-1}, p_0, ..., p_{n-1})``. The
Poisson bracket is the canonical one, {q_a, p_b} = δ_ab. The star product is

    f ⋆ g = f exp((iλ/2) Σ_a (←∂_{q_a} →∂_{p_a} − ←∂_{p_a} →∂_{q_a})) g,

so that f ⋆ g − g ⋆ f = iλ{f, g} + O(λ³) and q ⋆ p − p ⋆ q = iλ.
"""

from functools import lru_cache
from itertools import product
from math import factorial

from gmpy2 import mpq

from ._sparse import SparseElement, accumulate, prune, scalar_series
from .errors import ConfigurationError, DomainError
from .grassmann import MetricData
from .scalars import DEFAULT_ORDER, G1, GI, Q0, gmul, gpow, sfmt, smul, to_rational

HALF_I = (Q0, mpq(1, 2))
_HALF_I_POW = [gpow(HALF_I, r) for r in range(64)]


def _falling(x, k):
    out = 1
    for j in range(k):
        out *= x - j
    return out


def monomial_degree(e):
    return sum(e)


def monomials_up_to(nvars, d):
    """Exponent tuples of total degree <= d, graded-lex ordered."""
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(prefix + (left,))
            return
        for k in range(left, -1, -1):
            rec(prefix + (k,), left - k, slots - 1)

    for total in range(d + 1):
        if nvars == 0:
            if total == 0:
                out.append(())
            continue
        rec((), total, nvars)
    return out


def _pair_terms(alpha, beta, gamma, delta):
    """One canonical pair of the Moyal expansion for q^α p^β ⋆ q^γ p^δ."""
    out = []
    for s in range(min(alpha, delta) + 1):
        for t in range(min(beta, gamma) + 1):
            c = (_falling(alpha, s) * _falling(delta, s) * _falling(beta, t) * _falling(gamma, t))
            if not c:
                continue
            coeff = mpq(c, factorial(s) * factorial(t))
            if t & 1:
                coeff = -coeff
            out.append((alpha + gamma - s - t, beta + delta - s - t, s + t, coeff))
    return out


@lru_cache(maxsize=None)
def moyal_table(e1, e2):
    """Monomial product e1 ⋆ e2 as a tuple of (exponents, λ-power, coefficient)."""
    n = len(e1) // 2
    per_pair = [_pair_terms(e1[a], e1[n + a], e2[a], e2[n + a]) for a in range(n)]
    acc = {}
    for combo in product(*per_pair):
        qs = tuple(c[0] for c in combo)
        ps = tuple(c[1] for c in combo)
        r = sum(c[2] for c in combo)
        coeff = mpq(1)
        for c in combo:
            coeff *= c[3]
        key = (qs + ps, r)
        acc[key] = acc.get(key, 0) + coeff
    return tuple((e, r, gmul((c, Q0), _HALF_I_POW[r]))
                 for (e, r), c in sorted(acc.items(), key=lambda kv: (kv[0][1], kv[0][0])) if c)


@lru_cache(maxsize=None)
def pointwise_table(e1, e2):
    return tuple(x + y for x, y in zip(e1, e2))


def _fmt_exps(e):
    n = len(e) // 2
    parts = []
    for a in range(n):
        if e[a]:
            parts.append(f"q{a}" + (f"^{e[a]}" if e[a] > 1 else ""))
    for a in range(n):
        if e[n + a]:
            parts.append(f"p{a}" + (f"^{e[n + a]}" if e[n + a] > 1 else ""))
    return "*".join(parts) if parts else "1"


class PolyObservable(SparseElement):
    """Sparse polynomial in (q, p) with truncated-series coefficients.

    ``*`` is the Moyal star product; :meth:`pointwise` is the commutative one.
    """

    __slots__ = ("n",)

    def __init__(self, terms=None, n=1, order=DEFAULT_ORDER):
        self.n = n
        super().__init__(terms, order)

    def _check_key(self, key):
        key = tuple(int(x) for x in key)
        if len(key) != 2 * self.n or any(x < 0 for x in key):
            raise ValueError(f"exponent tuple {key} does not fit {self.n} canonical pairs")
        return key

    def _extra(self):
        return {"n": self.n}

    def _check(self, other):
        super()._check(other)
        if other.n != self.n:
            raise ConfigurationError(f"mismatched phase spaces: {self.n} vs {other.n} pairs")

    def _unit_key(self):
        return (0,) * (2 * self.n)

    def _sort_key(self, key):
        return (sum(key), tuple(-x for x in key))

    @classmethod
    def constant(cls, c, n, order=DEFAULT_ORDER):
        s = scalar_series(c, order)
        return cls._raw({(0,) * (2 * n): s} if s else {}, order, n=n)

    @classmethod
    def one(cls, n, order=DEFAULT_ORDER):
        return cls.constant(1, n, order)

    @classmethod
    def monomial(cls, exps, n, coeff=1, order=DEFAULT_ORDER):
        s = scalar_series(coeff, order)
        return cls._raw({tuple(exps): s} if s else {}, order, n=n)

    @classmethod
    def q(cls, a, n, order=DEFAULT_ORDER):
        e = [0] * (2 * n)
        e[a] = 1
        return cls._raw({tuple(e): {0: G1}}, order, n=n)

    @classmethod
    def p(cls, a, n, order=DEFAULT_ORDER):
        e = [0] * (2 * n)
        e[n + a] = 1
        return cls._raw({tuple(e): {0: G1}}, order, n=n)

    def degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def conj(self):
        return self._like({e: {k: (c[0], -c[1]) for k, c in s.items()}
                           for e, s in self.terms.items()})

    def pointwise(self, other):
        self._check(other)
        acc = {}
        for e1, s1 in self.terms.items():
            for e2, s2 in other.terms.items():
                e = pointwise_table(e1, e2)
                for k, c in smul(s1, s2, self.order).items():
                    accumulate(acc, e, k, c)
        return self._like(prune(acc))

    def derivative(self, var, a):
        """∂/∂q_a (var='q') or ∂/∂p_a (var='p')."""
        idx = a if var == "q" else self.n + a
        out = {}
        for e, s in self.terms.items():
            if e[idx]:
                f = (mpq(e[idx]), Q0)
                e2 = list(e)
                e2[idx] -= 1
                out[tuple(e2)] = {k: gmul(c, f) for k, c in s.items()}
        return self._like(out)

    def __mul__(self, other):
        if isinstance(other, PolyObservable):
            return moyal_star(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __repr__(self):
        if not self.terms:
            return "PolyObservable(0)"
        parts = [f"({sfmt(self.terms[e])})·{_fmt_exps(e)}" for e in self.keys()]
        return "PolyObservable(" + " + ".join(parts) + ")"


def moyal_terms(a, b, order):
    acc = {}
    for e1, s1 in a.items():
        for e2, s2 in b.items():
            s12 = smul(s1, s2, order)
            if not s12:
                continue
            for e, r, q in moyal_table(e1, e2):
                if r > order:
                    break
                for k, c in s12.items():
                    kk = k + r
                    if kk <= order:
                        accumulate(acc, e, kk, gmul(c, q))
    return prune(acc)


def moyal_star(f, g):
    """The Weyl-Moyal star product, truncated at the common order."""
    f._check(g)
    return f._like(moyal_terms(f.terms, g.terms, f.order))


def poisson_bracket(f, g):
    f._check(g)
    out = f._like({})
    for a in range(f.n):
        out = out + f.derivative("q", a).pointwise(g.derivative("p", a))
        out = out - f.derivative("p", a).pointwise(g.derivative("q", a))
    return out


def star_commutator(f, g):
    return moyal_star(f, g) - moyal_star(g, f)


# Lie data and momentum maps --------------------------------------------------

class LieData:
    """Structure constants, metric and momentum map of a Hamiltonian g-action.

    ``structure[(a, b)]`` maps c to f^c_{ab}, so [ξ_a, ξ_b] = f^c_{ab} ξ_c.
    ``momentum[a]`` is the classical J_a; ``correction[a]`` (optional) holds
    the higher orders of the quantum momentum map, a polynomial whose
    coefficients start at λ^1.
    """

    def __init__(self, dim, structure, momentum, metric=None, correction=None, n=None,
                 validate=True):
        self.dim = dim
        self.f = {}
        for (a, b), row in dict(structure).items():
            for c, v in dict(row).items():
                v = to_rational(v)
                if v:
                    self.f.setdefault((a, b), {})[c] = v
        self.metric = metric if metric is not None else MetricData.identity(dim)
        if self.metric.dim != dim:
            raise ConfigurationError("metric dimension differs from the Lie algebra dimension")
        self.momentum = list(momentum)
        if len(self.momentum) != dim:
            raise ConfigurationError("need one momentum component per basis element")
        self.n = n if n is not None else (self.momentum[0].n if self.momentum else 0)
        for J in self.momentum:
            if J.n != self.n:
                raise ConfigurationError("momentum components live on different phase spaces")
        self.correction = list(correction) if correction else None
        if self.correction is not None:
            if len(self.correction) != dim:
                raise ConfigurationError("need one correction per basis element")
            for c in self.correction:
                if any(0 in s for s in c.terms.values()):
                    raise ConfigurationError("quantum corrections must start at order λ")
        if validate:
            self.validate()

    def fc(self, c, a, b):
        return self.f.get((a, b), {}).get(c, Q0)

    def validate(self):
        n = self.dim
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.fc(c, a, b) != -self.fc(c, b, a):
                        raise DomainError(
                            f"structure constants not antisymmetric: f^{c}_{a}{b} != -f^{c}_{b}{a}",
                        )
        w = self.jacobi_violation()
        if w is not None:
            raise DomainError(f"Jacobi identity fails for basis triple {w}")

    def jacobi_violation(self):
        n = self.dim
        for a in range(n):
            for b in range(a + 1, n):
                for c in range(b + 1, n):
                    for e in range(n):
                        tot = Q0
                        for d in range(n):
                            tot += (self.fc(d, a, b) * self.fc(e, d, c)
                                    + self.fc(d, b, c) * self.fc(e, d, a)
                                    + self.fc(d, c, a) * self.fc(e, d, b))
                        if tot:
                            return (a, b, c)
        return None

    def chi(self):
        """χ_a = ½ f^b_{ab} = ½ tr ad(ξ_a)."""
        return [sum((self.fc(b, a, b) for b in range(self.dim)), Q0) / 2
                for a in range(self.dim)]

    def is_unimodular(self):
        return not any(self.chi())

    def max_momentum_degree(self):
        return max((J.degree() for J in self.momentum), default=0)

    def classical_momentum(self, a, order):
        J = self.momentum[a]
        return J.lift(order) if J.order < order else J.truncate(order)

    def quantum_momentum(self, a, order):
        J = self.classical_momentum(a, order)
        if self.correction is None:
            return J
        c = self.correction[a]
        c = c.lift(order) if c.order < order else c.truncate(order)
        return J + c

    def transformed(self, A):
        """The same data in the basis ξ'_a = Σ_b A[a][b] ξ_b."""
        n = self.dim
        A = [[to_rational(x) for x in row] for row in A]
        from .grassmann import _inverse
        Ainv = _inverse(A)
        f = {}
        for a in range(n):
            for b in range(n):
                row = {}
                for c in range(n):
                    tot = Q0
                    for x in range(n):
                        if not A[a][x]:
                            continue
                        for y in range(n):
                            if not A[b][y]:
                                continue
                            for z in range(n):
                                v = self.fc(z, x, y)
                                if v:
                                    tot += A[a][x] * A[b][y] * v * Ainv[z][c]
                    if tot:
                        row[c] = tot
                if row:
                    f[(a, b)] = row
        def combo(items, a):
            out = None
            for b in range(n):
                if A[a][b]:
                    term = items[b].scale((A[a][b], Q0))
                    out = term if out is None else out + term
            return out if out is not None else items[0].scale(0)
        mom = [combo(self.momentum, a) for a in range(n)]
        corr = [combo(self.correction, a) for a in range(n)] if self.correction else None
        g = self.metric.g
        gnew = [[sum((A[a][x] * A[b][y] * g[x][y] for x in range(n) for y in range(n)), Q0)
                 for b in range(n)] for a in range(n)]
        return LieData(n, f, mom, MetricData(gnew), corr, self.n)


def check_equivariance(lie, order=DEFAULT_ORDER, degree=2):
    """Check both covariance identities of the quantum momentum map.

    Returns ``(True, None)`` or ``(False, witness)`` with a description of the
    first violating instance.
    """
    n = lie.n
    iland = {1: GI}
    Jq = [lie.quantum_momentum(a, order) for a in range(lie.dim)]
    for a in range(lie.dim):
        for b in range(lie.dim):
            lhs = star_commutator(Jq[a], Jq[b])
            rhs = PolyObservable._raw({}, order, n=n)
            for c in range(lie.dim):
                v = lie.fc(c, a, b)
                if v:
                    rhs = rhs + Jq[c].scale((v, Q0))
            rhs = rhs.scale(iland)
            if lhs != rhs:
                return False, {"identity": "J(ξ)⋆J(η) − J(η)⋆J(ξ) = iλ J([ξ,η])", "pair": (a, b)}
    for e in monomials_up_to(2 * n, degree):
        f = PolyObservable._raw({e: {0: G1}}, order, n=n)
        for a in range(lie.dim):
            lhs = star_commutator(Jq[a], f)
            rhs = poisson_bracket(Jq[a], f).scale(iland)
            if lhs != rhs:
                return False, {"identity": "J(ξ)⋆f − f⋆J(ξ) = iλ{J(ξ), f}",
                               "pair": (a, e)}
    for a in range(lie.dim):
        for b in range(lie.dim):
            lhs = poisson_bracket(lie.momentum[a], lie.momentum[b])
            rhs = lie.momentum[a].scale(0)
            for c in range(lie.dim):
                v = lie.fc(c, a, b)
                if v:
                    rhs = rhs + lie.momentum[c].scale((v, Q0))
            if lhs != rhs:
                return False, {"identity": "{J_a, J_b} = f^c_ab J_c", "pair": (a, b)}
    return True, None


# constraint surface {p_a = 0, a in constrained} -------------------------------

def classical_restrict(f, constrained):
    """Set the constrained momenta to zero."""
    idx = [f.n + a for a in constrained]
    return f._like({e: dict(s) for e, s in f.terms.items() if not any(e[i] for i in idx)})


def prolong(phi, constrained):
    """Polynomial inclusion; the argument must not mention constrained momenta."""
    idx = [phi.n + a for a in constrained]
    for e in phi.terms:
        if any(e[i] for i in idx):
            raise DomainError(f"prolong: monomial {_fmt_exps(e)} mentions a constrained momentum")
    return phi._like({e: dict(s) for e, s in phi.terms.items()})
