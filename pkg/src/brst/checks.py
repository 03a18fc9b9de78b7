"""Identity checks on sector bases and random samples.

Every check returns a ``Check`` carrying a verdict, the number of instances
examined and the first counterexample, if any.
"""

import random

from .algebra import (BrstElement, ad_laplacian, adjoint_brst, brst_involution,
                      classical_brst, ghost_operator, ghost_operator_commutator, laplacian,
                      quantum_brst, quantum_brst_split, star_std)
from .grassmann import (Multivector, all_monomials, circ_std, form_monomials, gamma,
                        inner_product, involution_star, rho_std)
from .homology import SectorBasis
from .scalars import G1, GI, gauss
from .weyl import check_equivariance, monomials_up_to, moyal_star, PolyObservable


class Check:
    """Outcome of one identity check."""

    __slots__ = ("name", "ok", "count", "witness")

    def __init__(self, name, ok, count=0, witness=None):
        self.name = name
        self.ok = ok
        self.count = count
        self.witness = witness

    def __bool__(self):
        return bool(self.ok)

    def __repr__(self):
        state = "pass" if self.ok else "fail"
        return f"Check({self.name}: {state}, n={self.count})"


def sector_elements(ctx, degree, ghost_numbers=None):
    """Basis elements of every ghost-number sector up to the degree."""
    if ghost_numbers is None:
        ghost_numbers = range(-ctx.dim, ctx.dim + 1)
    for k in ghost_numbers:
        S = SectorBasis(ctx, k, degree)
        for i in range(len(S)):
            yield S.basis_element(i)


def _sweep(name, elements, test):
    count = 0
    for x in elements:
        count += 1
        if not test(x):
            return Check(name, False, count, x)
    return Check(name, True, count)


# charges and differentials ---------------------------------------------------

def theta_square(ctx):
    th = ctx.charges().theta_std
    return Check("Θ_std ⋆ Θ_std = 0", not star_std(ctx, th, th), 1)


def classical_nilpotency(ctx, degree):
    return _sweep("D² = 0 (classical)", sector_elements(ctx, degree),
                  lambda x: not classical_brst(ctx, classical_brst(ctx, x)))


def quantum_nilpotency(ctx, degree):
    return _sweep("D_std² = 0", sector_elements(ctx, degree),
                  lambda x: not quantum_brst(ctx, quantum_brst(ctx, x)))


def adjoint_nilpotency(ctx, degree):
    return _sweep("(D*_std)² = 0", sector_elements(ctx, degree),
                  lambda x: not adjoint_brst(ctx, adjoint_brst(ctx, x)))


def splitting(ctx, degree):
    return _sweep("D_std = δ + 2∂", sector_elements(ctx, degree),
                  lambda x: quantum_brst(ctx, x) == quantum_brst_split(ctx, x))


def classical_limit(ctx, degree):
    return _sweep("D_std = D at λ⁰", sector_elements(ctx, degree),
                  lambda x: quantum_brst(ctx, x).lambda_part(0) ==
                  classical_brst(ctx, x).lambda_part(0))


def ghost_number_operator(ctx, degree):
    return _sweep("(1/iλ) ad(γ) = Gh", sector_elements(ctx, degree),
                  lambda x: ghost_operator_commutator(ctx, x) == ghost_operator(x))


def gamma_differential(ctx):
    """D γ = −Θ in both regimes."""
    ch = ctx.charges()
    q = quantum_brst(ctx, ch.gamma) == -ch.theta_std
    c = classical_brst(ctx, ch.gamma) == -ch.theta_classical
    return Check("D γ = −Θ", q and c, 2)


def laplacian_relation(ctx, degree):
    """ad(Δ) x = −λ² (D D* + D* D) x."""
    def test(x):
        lhs = ad_laplacian(ctx, x)
        rhs = laplacian(ctx, x).scale({2: gauss(-1)})
        return lhs == rhs
    return _sweep("ad(Δ) = −λ²(DD* + D*D)", sector_elements(ctx, degree), test)


def equivariance(lie, order, degree=2):
    ok, witness = check_equivariance(lie, order, degree)
    return Check("quantum momentum map is equivariant", ok, 1, witness)


# random homogeneous samples ----------------------------------------------------

def random_coefficient(rng, order):
    s = {}
    for k in range(order + 1):
        if rng.random() < (0.8 if k == 0 else 0.3):
            re, im = rng.randint(-3, 3), rng.randint(-3, 3)
            if re or im:
                s[k] = gauss(re, im) if rng.random() < 0.8 else gauss(f"{re}/2", im)
    return s or {0: G1}


def random_homogeneous(ctx, rng, degree, ghost_number=None, terms=3):
    if ghost_number is None:
        ghost_number = rng.randint(-ctx.dim, ctx.dim)
    S = SectorBasis(ctx, ghost_number, degree)
    if not len(S):
        return ctx.zero()
    picks = {}
    for _ in range(rng.randint(1, terms)):
        picks[S.key(rng.randrange(len(S)))] = random_coefficient(rng, ctx.order)
    return BrstElement._raw(picks, ctx.order, n=ctx.n)


def random_pairs(ctx, count, degree, seed=0):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_homogeneous(ctx, rng, degree), random_homogeneous(ctx, rng, degree)


def involution_suite(ctx, count=500, degree=2, seed=0):
    """(x⋆y)* = y*⋆x*, γ* = −γ, Gh(a*) = −(Gh a)*, D*a = (−1)^{|a|}(D a*)*."""
    pairs = list(random_pairs(ctx, count, degree, seed))
    star = lambda x: brst_involution(ctx, x)
    out = [_sweep("(x ⋆ y)* = y* ⋆ x*", pairs,
                  lambda p: star(star_std(ctx, p[0], p[1])) ==
                  star_std(ctx, star(p[1]), star(p[0])))]
    g = ctx.charges().gamma
    out.append(Check("γ* = −γ", star(g) == -g, 1))
    out.append(_sweep("Gh(a*) = −(Gh a)*", (p[0] for p in pairs),
                      lambda a: ghost_operator_commutator(ctx, star(a)) ==
                      -star(ghost_operator_commutator(ctx, a))))

    def dstar(a):
        lhs = adjoint_brst(ctx, a)
        rhs = star(quantum_brst(ctx, star(a)))
        return lhs == (rhs if a.parity() == 0 else -rhs)
    out.append(_sweep("D*a = (−1)^|a| (D a*)*", (p[0] for p in pairs), dstar))
    out.append(_sweep("x** = x", (p[1] for p in pairs), lambda a: star(star(a)) == a))
    return out


# Grassmann and Weyl factors -----------------------------------------------------

def _mono(m, order):
    return Multivector._raw({m: {0: G1}}, order)


def grassmann_associativity(n, order):
    monos = all_monomials(n)
    els = [_mono(m, order) for m in monos]
    def triples():
        for a in els:
            for b in els:
                for c in els:
                    yield a, b, c
    return _sweep("∘_std is associative", triples(),
                  lambda t: circ_std(circ_std(t[0], t[1]), t[2]) ==
                  circ_std(t[0], circ_std(t[1], t[2])))


def rho_homomorphism(n, order):
    forms = [_mono(m, order) for m in form_monomials(n)]
    els = [_mono(m, order) for m in all_monomials(n)]
    def cases():
        for a in els:
            for b in els:
                for f in forms:
                    yield a, b, f
    return _sweep("ρ(a ∘ b) = ρ(a) ρ(b)", cases(),
                  lambda t: rho_std(circ_std(t[0], t[1]), t[2]) ==
                  rho_std(t[0], rho_std(t[1], t[2])))


def rho_basis_values(n, order):
    """ρ(e^i) = e^i ∧ ·  and  ρ(e_i) = 2iλ ins(e_i)."""
    from .grassmann import wedge, mono_contract_left
    forms = form_monomials(n)
    count = 0
    for i in range(n):
        for m in forms:
            count += 1
            f = _mono(m, order)
            if rho_std(Multivector.ghost(i, order), f) != wedge(Multivector.ghost(i, order), f):
                return Check("ρ on generators", False, count, ("ghost", i, m))
            got = rho_std(Multivector.antighost(i, order), f)
            if m[0] >> i & 1:
                sign, rest = mono_contract_left("g", i, m)
                want = _mono(rest, order).scale({1: gauss(0, 2 * sign)})
            else:
                want = Multivector._raw({}, order)
            if got != want:
                return Check("ρ on generators", False, count, ("antighost", i, m))
    return Check("ρ on generators", True, count)


def rho_adjointness(metric, order):
    """⟨ρ(a)x, y⟩ = ⟨x, ρ(a*)y⟩ for the rescaled inner product."""
    n = metric.dim
    forms = [_mono(m, order) for m in form_monomials(n)]
    els = [_mono(m, order) for m in all_monomials(n)]
    def cases():
        for a in els:
            for x in forms:
                for y in forms:
                    yield a, x, y
    return _sweep("ρ is a *-representation", cases(),
                  lambda t: inner_product(rho_std(t[0], t[1]), t[2], metric) ==
                  inner_product(t[1], rho_std(involution_star(t[0], metric), t[2]), metric))


def grassmann_gamma(metric, order):
    g = gamma(metric.dim, order)
    return Check("γ* = −γ in Λ(g* ⊕ g)", involution_star(g, metric) == -g, 1)


def moyal_associativity(n, order, degree=2):
    monos = [PolyObservable._raw({e: {0: G1}}, order, n=n) for e in monomials_up_to(2 * n, degree)]
    def triples():
        for a in monos:
            for b in monos:
                for c in monos:
                    yield a, b, c
    return _sweep("⋆ is associative", triples(),
                  lambda t: moyal_star(moyal_star(t[0], t[1]), t[2]) ==
                  moyal_star(t[0], moyal_star(t[1], t[2])))


def moyal_hermitian(n, order, degree=2):
    monos = [PolyObservable._raw({e: {0: G1}}, order, n=n).scale({0: GI} if sum(e) % 2 else {0: G1})
             for e in monomials_up_to(2 * n, degree)]
    pairs = [(a, b) for a in monos for b in monos]
    return _sweep("conj(f ⋆ g) = conj(g) ⋆ conj(f)", pairs,
                  lambda p: moyal_star(p[0], p[1]).conj() ==
                  moyal_star(p[1].conj(), p[0].conj()))


__all__ = ["Check", "sector_elements", "theta_square", "classical_nilpotency",
           "quantum_nilpotency", "adjoint_nilpotency", "splitting", "classical_limit",
           "ghost_number_operator", "gamma_differential", "laplacian_relation", "equivariance",
           "random_homogeneous", "random_pairs", "involution_suite", "grassmann_associativity",
           "rho_homomorphism", "rho_basis_values", "rho_adjointness", "grassmann_gamma",
           "moyal_associativity", "moyal_hermitian"]
