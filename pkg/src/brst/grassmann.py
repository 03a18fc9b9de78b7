"""The deformed Grassmann algebra Λ(g* ⊕ g) with the standard ordered product.

Monomials are pairs of bitmasks ``(ghost, antighost)``: bit ``k`` of ``ghost``
selects the ghost letter e^k, bit ``k`` of ``antighost`` the antighost e_k.
Letters are kept in canonical order, all ghosts ascending and then all
antighosts ascending, so every monomial has a unique key. Indices are 0-based.

The standard ordered product contracts antighosts of the left factor against
ghosts of the right factor,

    a ∘ b = Σ_r (2iλ)^r / r! · μ((P*)^r (a ⊗ b)),   P* = jns(e^k) ⊗ ins(e_k),

with ``jns`` the right insertion and ``ins`` the left insertion. P* acts on a
tensor product without a Koszul sign; that choice is what makes
``ρ_std(e_i) = 2iλ ins(e_i)`` hold.
"""

from functools import lru_cache
from itertools import combinations
from typing import NamedTuple

from gmpy2 import mpq

from ._sparse import SparseElement, accumulate, prune, scalar_series
from .errors import DomainError
from .scalars import (DEFAULT_ORDER, G1, GMINUSI, Q0, Q1, FormalScalar, gmul, gpow,
                      sconj, sfmt, smul, to_rational)


class GrassmannMonomial(NamedTuple):
    ghost: int
    antighost: int

    @property
    def bidegree(self):
        return (self.ghost.bit_count(), self.antighost.bit_count())

    @property
    def ghost_number(self):
        return self.ghost.bit_count() - self.antighost.bit_count()

    @property
    def parity(self):
        return (self.ghost.bit_count() + self.antighost.bit_count()) & 1

    def letters(self):
        return letters(self)


UNIT = GrassmannMonomial(0, 0)


def bits(mask):
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def mask_of(indices):
    m = 0
    for k in indices:
        m |= 1 << k
    return m


def letters(m):
    """Letter sequence of a monomial: ('g', k) for e^k and ('a', k) for e_k."""
    return [("g", k) for k in bits(m[0])] + [("a", k) for k in bits(m[1])]


def ghost_number(m):
    return m[0].bit_count() - m[1].bit_count()


def degree(m):
    return m[0].bit_count() + m[1].bit_count()


def merge_sign(x, y):
    """Sign of sorting the letters of x followed by the letters of y."""
    count = 0
    for j in bits(y):
        count += (x >> (j + 1)).bit_count()
    return -1 if count & 1 else 1


@lru_cache(maxsize=None)
def mono_wedge(m1, m2):
    """(sign, monomial) of m1 ∧ m2, or None if a letter repeats."""
    g1, a1 = m1
    g2, a2 = m2
    if g1 & g2 or a1 & a2:
        return None
    sign = merge_sign(g1, g2) * merge_sign(a1, a2)
    if a1.bit_count() & 1 and g2.bit_count() & 1:
        sign = -sign
    return sign, (g1 | g2, a1 | a2)


def _position(m, kind, k):
    g, a = m
    if kind == "g":
        return (g & ((1 << k) - 1)).bit_count()
    return g.bit_count() + (a & ((1 << k) - 1)).bit_count()


def mono_contract_left(kind, k, m):
    """Left insertion removing letter (kind, k); returns (sign, monomial) or None."""
    g, a = m
    bit = 1 << k
    if kind == "g":
        if not g & bit:
            return None
        rest = (g ^ bit, a)
    else:
        if not a & bit:
            return None
        rest = (g, a ^ bit)
    return (-1 if _position(m, kind, k) & 1 else 1), rest


def mono_contract_right(kind, k, m):
    """Right insertion removing letter (kind, k); returns (sign, monomial) or None."""
    g, a = m
    bit = 1 << k
    if kind == "g":
        if not g & bit:
            return None
        rest = (g ^ bit, a)
    else:
        if not a & bit:
            return None
        rest = (g, a ^ bit)
    after = g.bit_count() + a.bit_count() - 1 - _position(m, kind, k)
    return (-1 if after & 1 else 1), rest


_TWO_I_POW = [gpow((Q0, mpq(2)), r) for r in range(64)]


@lru_cache(maxsize=None)
def circ_table(m1, m2):
    """Monomial product m1 ∘ m2 as a tuple of (monomial, λ-power, coefficient)."""
    common = m1[1] & m2[0]
    out = {}
    idx = bits(common)
    for r in range(len(idx) + 1):
        for subset in combinations(idx, r):
            sign = 1
            left, right = m1, m2
            for k in subset:
                s1, left = mono_contract_right("a", k, left)
                s2, right = mono_contract_left("g", k, right)
                sign *= s1 * s2
            w = mono_wedge(left, right)
            if w is None:
                continue
            sign *= w[0]
            key = (w[1], r)
            out[key] = out.get(key, 0) + sign
    return tuple((GrassmannMonomial(*m), r, gmul((mpq(c), Q0), _TWO_I_POW[r]))
                 for (m, r), c in sorted(out.items()) if c)


def _fmt_monomial(m):
    if m == (0, 0):
        return "1"
    parts = [f"e^{k}" if kind == "g" else f"e_{k}" for kind, k in letters(m)]
    return "∧".join(parts)


class Multivector(SparseElement):
    """Sparse element of Λ(g* ⊕ g) with truncated-series coefficients.

    ``*`` is the standard ordered product, ``^`` the wedge product.
    """

    __slots__ = ()

    def _check_key(self, key):
        if not (isinstance(key, tuple) and len(key) == 2):
            raise TypeError("Multivector keys are (ghost_mask, antighost_mask)")
        return GrassmannMonomial(int(key[0]), int(key[1]))

    def _unit_key(self):
        return UNIT

    def _sort_key(self, key):
        return (degree(key), key[0], key[1])

    @classmethod
    def one(cls, order=DEFAULT_ORDER):
        return cls._raw({UNIT: {0: G1}}, order)

    @classmethod
    def scalar(cls, c, order=DEFAULT_ORDER):
        s = scalar_series(c, order)
        return cls._raw({UNIT: s} if s else {}, order)

    @classmethod
    def ghost(cls, k, order=DEFAULT_ORDER):
        """The ghost letter e^k."""
        return cls._raw({GrassmannMonomial(1 << k, 0): {0: G1}}, order)

    @classmethod
    def antighost(cls, k, order=DEFAULT_ORDER):
        """The antighost letter e_k."""
        return cls._raw({GrassmannMonomial(0, 1 << k): {0: G1}}, order)

    @classmethod
    def monomial(cls, ghosts=(), antighosts=(), coeff=1, order=DEFAULT_ORDER):
        """Canonical monomial e^{ghosts} ∧ e_{antighosts} (ascending order)."""
        s = scalar_series(coeff, order)
        key = GrassmannMonomial(mask_of(ghosts), mask_of(antighosts))
        return cls._raw({key: s} if s else {}, order)

    @classmethod
    def from_letters(cls, seq, coeff=1, order=DEFAULT_ORDER):
        """Wedge product of letters in the given order, e.g. [('a', 1), ('g', 0)]."""
        out = cls.scalar(coeff, order)
        for kind, k in seq:
            letter = cls.ghost(k, order) if kind == "g" else cls.antighost(k, order)
            out = wedge(out, letter)
        return out

    def bidegrees(self):
        return sorted({m.bidegree for m in self.terms})

    def ghost_numbers(self):
        return sorted({m.ghost_number for m in self.terms})

    def is_homogeneous(self):
        return len({m.parity for m in self.terms}) <= 1

    def parity(self):
        ps = {m.parity for m in self.terms}
        if len(ps) > 1:
            raise DomainError("element is not homogeneous in parity")
        return ps.pop() if ps else 0

    def scalar_part(self):
        return self.coefficient(UNIT)

    def conj_coefficients(self):
        return self._like({m: sconj(s) for m, s in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Multivector):
            return circ_std(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __xor__(self, other):
        return wedge(self, other)

    def __repr__(self):
        if not self.terms:
            return "Multivector(0)"
        parts = [f"({sfmt(self.terms[m])})·{_fmt_monomial(m)}" for m in self.keys()]
        return "Multivector(" + " + ".join(parts) + ")"


def _check_pair(a, b):
    a._check(b)
    return a.order


def wedge_terms(a, b, n):
    acc = {}
    for m1, s1 in a.items():
        for m2, s2 in b.items():
            w = mono_wedge(m1, m2)
            if w is None:
                continue
            sign, m = w
            for k, c in smul(s1, s2, n).items():
                accumulate(acc, GrassmannMonomial(*m), k, c if sign > 0 else (-c[0], -c[1]))
    return prune(acc)


def wedge(a, b):
    n = _check_pair(a, b)
    return Multivector._raw(wedge_terms(a.terms, b.terms, n), n)


def circ_terms(a, b, n):
    acc = {}
    for m1, s1 in a.items():
        for m2, s2 in b.items():
            table = circ_table(m1, m2)
            if not table:
                continue
            s12 = smul(s1, s2, n)
            if not s12:
                continue
            for m, r, q in table:
                if r > n:
                    continue
                for k, c in s12.items():
                    kk = k + r
                    if kk <= n:
                        accumulate(acc, m, kk, gmul(c, q))
    return prune(acc)


def circ_std(a, b):
    """The standard ordered product a ∘_std b."""
    n = _check_pair(a, b)
    return Multivector._raw(circ_terms(a.terms, b.terms, n), n)


def _degree_one_letters(v):
    out = []
    for m, s in v.terms.items():
        if degree(m) != 1:
            raise DomainError("insertion needs a degree-one element (vector or covector)")
        if m[0]:
            # a covector e^k pairs with the antighost e_k
            out.append(("a", bits(m[0])[0], s))
        else:
            out.append(("g", bits(m[1])[0], s))
    return out


def _insert(v, a, contract):
    n = _check_pair(v, a)
    acc = {}
    for kind, k, sv in _degree_one_letters(v):
        for m, s in a.terms.items():
            hit = contract(kind, k, m)
            if hit is None:
                continue
            sign, rest = hit
            for kk, c in smul(sv, s, n).items():
                accumulate(acc, GrassmannMonomial(*rest), kk,
                           c if sign > 0 else (-c[0], -c[1]))
    return Multivector._raw(prune(acc), n)


def insert_left(v, a):
    """Left insertion ins(v)a: a vector e_k contracts e^k, a covector e^k contracts e_k."""
    return _insert(v, a, mono_contract_left)


def insert_right(v, a):
    """Right insertion jns(v)a."""
    return _insert(v, a, mono_contract_right)


# metric and involution --------------------------------------------------------

def _det(rows):
    """Exact determinant by fraction-free elimination."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return Q1
    sign = Q1
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i]), None)
        if piv is None:
            return Q0
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            sign = -sign
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            if f:
                for c in range(i, n):
                    a[r][c] -= f * a[i][c]
    out = sign
    for i in range(n):
        out *= a[i][i]
    return out


def _inverse(rows):
    n = len(rows)
    a = [list(r) + [Q1 if i == j else Q0 for j in range(n)] for i, r in enumerate(rows)]
    for i in range(n):
        piv = next(r for r in range(i, n) if a[r][i])
        a[i], a[piv] = a[piv], a[i]
        p = a[i][i]
        a[i] = [x / p for x in a[i]]
        for r in range(n):
            if r != i and a[r][i]:
                f = a[r][i]
                a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return [row[n:] for row in a]


class MetricData:
    """A positive definite symmetric rational matrix g with its exact inverse."""

    __slots__ = ("g", "g_inv", "key")

    def __init__(self, g):
        rows = [[to_rational(x) for x in row] for row in g]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DomainError("metric must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise DomainError(f"metric is not symmetric at ({i}, {j})")
        for k in range(1, n + 1):
            if _det([r[:k] for r in rows[:k]]) <= 0:
                err = DomainError(f"metric is not positive definite: leading minor {k} <= 0")
                err.minor = k
                raise err
        self.g = tuple(tuple(r) for r in rows)
        self.g_inv = tuple(tuple(r) for r in _inverse(rows)) if n else ()
        self.key = self.g

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def dim(self):
        return len(self.g)

    def is_identity(self):
        n = len(self.g)
        return all(self.g[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))

    def __eq__(self, other):
        return isinstance(other, MetricData) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"MetricData({[[str(x) for x in r] for r in self.g]})"


@lru_cache(maxsize=None)
def _star_monomial(m, metric):
    """(monomial)* as raw terms with λ-free coefficients."""
    seq = letters(m)
    n = metric.dim
    acc = {UNIT: {0: G1}}
    for kind, k in reversed(seq):
        # e_k -> -i g_{kj} e^j,  e^k -> -i g^{kj} e_j ; the -i is applied at the end
        row = metric.g[k] if kind == "a" else metric.g_inv[k]
        image = {}
        for j in range(n):
            if row[j]:
                key = GrassmannMonomial(1 << j, 0) if kind == "a" else GrassmannMonomial(0, 1 << j)
                image[key] = {0: (row[j], Q0)}
        acc = wedge_terms(acc, image, 0)
    phase = gpow(GMINUSI, len(seq))
    return {key: {0: gmul(s[0], phase)} for key, s in acc.items()}


def star_terms(terms, metric, n):
    acc = {}
    for m, s in terms.items():
        cs = sconj(s)
        for key, t in _star_monomial(m, metric).items():
            q = t[0]
            for k, c in cs.items():
                accumulate(acc, key, k, gmul(c, q))
    return prune(acc)


def involution_star(a, metric):
    """The graded *-involution: antilinear, (a∘b)* = b*∘a*, e_j* = -i g_jk e^k."""
    return Multivector._raw(star_terms(a.terms, metric, a.order), a.order)


# distinguished elements --------------------------------------------------------

def gamma(n, order=DEFAULT_ORDER):
    """The ghost charge ½ e^a ∧ e_a."""
    half = (mpq(1, 2), Q0)
    terms = {}
    for k in range(n):
        sign, m = mono_wedge((1 << k, 0), (0, 1 << k))
        terms[GrassmannMonomial(*m)] = {0: half if sign > 0 else (-half[0], Q0)}
    return Multivector._raw(terms, order)


def all_monomials(n):
    """Every monomial of Λ(g* ⊕ g), sorted by degree then masks."""
    out = [GrassmannMonomial(g, a) for g in range(1 << n) for a in range(1 << n)]
    out.sort(key=lambda m: (degree(m), m[0], m[1]))
    return out


def form_monomials(n):
    """Monomials of Λg*, the carrier space of ρ_std."""
    out = [GrassmannMonomial(g, 0) for g in range(1 << n)]
    out.sort(key=lambda m: (degree(m), m[0]))
    return out


# representation and inner products --------------------------------------------

def rho_std(a, alpha):
    """ρ_std(a)α = ι*(a ∘_std α) for α in Λg*."""
    if any(m[1] for m in alpha.terms):
        raise DomainError("ρ_std acts on Λg*; alpha has antighost letters")
    prod = circ_std(a, alpha)
    return Multivector._raw({m: s for m, s in prod.terms.items() if not m[1]}, a.order)


def rho_matrix(a, n):
    """Matrix of ρ_std(a) on the basis ``form_monomials(n)``: rows x cols of series."""
    basis = form_monomials(n)
    index = {m: i for i, m in enumerate(basis)}
    cols = []
    for m in basis:
        img = rho_std(a, Multivector._raw({m: {0: G1}}, a.order))
        cols.append({index[k]: s for k, s in img.terms.items()})
    return basis, cols


def _pairing_star(m1, m2, metric):
    if m1[0].bit_count() != m2[0].bit_count():
        return Q0
    i1, i2 = bits(m1[0]), bits(m2[0])
    return _det([[metric.g_inv[i][j] for j in i2] for i in i1])


def inner_product(a, b, metric, rescaled=True):
    """⟨a, b⟩ on Λg*, antilinear in a; the rescaled form weights degree k by (2λ)^k."""
    n = _check_pair(a, b)
    for x in (a, b):
        if any(m[1] for m in x.terms):
            raise DomainError("inner product is defined on Λg* only")
    acc = {}
    for m1, s1 in a.terms.items():
        c1 = sconj(s1)
        for m2, s2 in b.terms.items():
            d = _pairing_star(m1, m2, metric)
            if not d:
                continue
            k0 = m1[0].bit_count() if rescaled else 0
            if k0 > n:
                continue
            w = (d * (mpq(2) ** k0), Q0)
            for k, c in smul(c1, s2, n - k0).items():
                val = gmul(c, w)
                old = acc.get(k + k0)
                acc[k + k0] = val if old is None else (old[0] + val[0], old[1] + val[1])
    return FormalScalar.from_series(acc, n)
