import itertools

from hypothesis import given, strategies as st

from brst.grassmann import (GrassmannMonomial, MetricData, Multivector, all_monomials, circ_std,
                            form_monomials, gamma, inner_product, insert_left, insert_right,
                            involution_star, rho_std, wedge)
from brst.scalars import FormalScalar

N = 3
ONE = Multivector.one(N)
g = lambda k: Multivector.ghost(k, N)
ag = lambda k: Multivector.antighost(k, N)
ident2 = MetricData.identity(2)


def letters_to_element(seq):
    """Oracle: sort a letter word into canonical order by adjacent swaps."""
    rank = lambda x: (0 if x[0] == "g" else 1, x[1])
    word = list(seq)
    if len(set(word)) < len(word):
        return Multivector._raw({}, N)
    sign = 1
    for i in range(len(word)):
        for j in range(len(word) - 1 - i):
            if rank(word[j]) > rank(word[j + 1]):
                word[j], word[j + 1] = word[j + 1], word[j]
                sign = -sign
    gh = [k for kind, k in word if kind == "g"]
    an = [k for kind, k in word if kind == "a"]
    return Multivector.monomial(gh, an, coeff=sign, order=N)


def product(seq):
    out = ONE
    for kind, k in seq:
        out = wedge(out, g(k) if kind == "g" else ag(k))
    return out


letter = st.tuples(st.sampled_from("ga"), st.integers(0, 2))


def test_wedge_basics():
    assert not wedge(g(0), g(0))
    assert wedge(g(0), ag(0)) == -wedge(ag(0), g(0))


def test_wedge_mixed_sign():
    a = wedge(g(0), ag(1))
    b = wedge(g(1), ag(0))
    assert wedge(a, b) == letters_to_element([("g", 0), ("a", 1), ("g", 1), ("a", 0)])


@given(st.lists(letter, max_size=6))
def test_wedge_matches_sorting_oracle(seq):
    assert product(seq) == letters_to_element(seq)


@given(st.lists(letter, max_size=3), st.lists(letter, max_size=3))
def test_graded_commutativity(u, v):
    a, b = product(u), product(v)
    sign = -1 if (len(u) * len(v)) % 2 else 1
    assert wedge(a, b) == wedge(b, a).scale(sign)


def test_monomial_gradings():
    m = GrassmannMonomial(0b011, 0b100)
    assert m.bidegree == (2, 1)
    assert m.ghost_number == 1
    assert m.parity == 1


def test_insertions():
    assert insert_left(ag(0), g(0)) == ONE
    assert not insert_left(ag(0), g(1))
    x = wedge(g(1), ag(0))
    assert insert_right(g(0), x) == g(1)
    y = wedge(wedge(g(0), g(1)), ag(2))
    # left contraction of e^1 passes one letter
    assert insert_left(ag(1), y) == wedge(g(0), ag(2)).scale(-1)


def test_circ_std_examples():
    lam2i = FormalScalar({1: (0, 2)}, N)
    assert circ_std(g(0), ag(1)) == wedge(g(0), ag(1))
    assert circ_std(ag(1), g(1)) == wedge(g(1), ag(1)).scale(-1) + Multivector.scalar(lam2i, N)
    assert circ_std(ag(0), g(1)) == wedge(g(1), ag(0)).scale(-1)
    a = wedge(g(0), ag(1)) + ag(0)
    assert circ_std(ONE, a) == a == circ_std(a, ONE)


def test_circ_std_associative_exhaustive():
    els = [Multivector._raw({m: {0: (1, 0)}}, N) for m in all_monomials(2)]
    for a, b, c in itertools.product(els, repeat=3):
        assert circ_std(circ_std(a, b), c) == circ_std(a, circ_std(b, c))


def test_involution_examples():
    assert involution_star(ag(0), ident2) == g(0).scale((0, -1))
    assert involution_star(gamma(2, N), ident2) == -gamma(2, N)


def test_involution_antimultiplicative_exhaustive():
    els = [Multivector._raw({m: {0: (1, 0)}}, N) for m in all_monomials(2)]
    star = lambda x: involution_star(x, ident2)
    for a, b in itertools.product(els, repeat=2):
        assert star(circ_std(a, b)) == circ_std(star(b), star(a))
        assert star(star(a)) == a


def test_involution_with_nontrivial_metric():
    metric = MetricData([[2, 1], [1, 1]])
    els = [Multivector._raw({m: {0: (1, 0)}}, N) for m in all_monomials(2)]
    star = lambda x: involution_star(x, metric)
    for a, b in itertools.product(els, repeat=2):
        assert star(circ_std(a, b)) == circ_std(star(b), star(a))
    assert star(gamma(2, N)) == -gamma(2, N)


def test_rho_on_generators():
    forms = [Multivector._raw({m: {0: (1, 0)}}, N) for m in form_monomials(2)]
    two_i_lam = FormalScalar({1: (0, 2)}, N)
    for f in forms:
        assert rho_std(ONE, f) == f
        for k in range(2):
            assert rho_std(g(k), f) == wedge(g(k), f)
            assert rho_std(ag(k), f) == insert_left(ag(k), f).scale(two_i_lam)


def test_rho_homomorphism_exhaustive():
    els = [Multivector._raw({m: {0: (1, 0)}}, N) for m in all_monomials(2)]
    forms = [Multivector._raw({m: {0: (1, 0)}}, N) for m in form_monomials(2)]
    for a, b, f in itertools.product(els, els, forms):
        assert rho_std(circ_std(a, b), f) == rho_std(a, rho_std(b, f))


def test_inner_products():
    e12 = wedge(g(0), g(1))
    assert inner_product(e12, e12, ident2, rescaled=False) == FormalScalar.one(N)
    assert inner_product(g(0), g(1), ident2, rescaled=False) == 0
    assert inner_product(e12, e12, ident2) == FormalScalar({2: 4}, N)


def test_rho_is_star_representation():
    els = [Multivector._raw({m: {0: (1, 0)}}, N) for m in all_monomials(2)]
    forms = [Multivector._raw({m: {0: (1, 0)}}, N) for m in form_monomials(2)]
    for a, x, y in itertools.product(els, forms, forms):
        lhs = inner_product(rho_std(a, x), y, ident2)
        rhs = inner_product(x, rho_std(involution_star(a, ident2), y), ident2)
        assert lhs == rhs
