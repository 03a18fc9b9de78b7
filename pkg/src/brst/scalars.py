"""Exact coefficients: Gaussian rationals and truncated power series in λ.

The coefficient ring of every computation is Q(i)[λ]/(λ^(N+1)). A Gaussian
rational is stored as a pair ``(re, im)`` of ``gmpy2.mpq``; a series is a dict
mapping a λ-power to a nonzero Gaussian rational. The helpers prefixed with
``g`` and ``s`` work on these raw forms and are what the hot loops of the
other modules use. :class:`FormalScalar` is the immutable public wrapper.

Everything is exact. Floats are rejected at every entry point.
"""

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

from .errors import ConfigurationError, NotAUnit

DEFAULT_ORDER = 3

Q0 = mpq(0)
Q1 = mpq(1)
G0 = (Q0, Q0)
G1 = (Q1, Q0)
GI = (Q0, Q1)
GMINUS1 = (-Q1, Q0)
GMINUSI = (Q0, -Q1)


# Gaussian rationals ---------------------------------------------------------

def to_rational(x):
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, int):
        return mpq(x)
    if type(x) is type(Q0):
        return x
    if isinstance(x, (Fraction, Rational)):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        try:
            return mpq(x.strip())
        except ValueError as exc:
            raise ValueError(f"not an exact rational: {x!r}") from exc
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def gauss(x, im=None):
    """Coerce ``x`` (or the pair ``x, im``) to a Gaussian rational."""
    if im is not None:
        return (to_rational(x), to_rational(im))
    if isinstance(x, tuple) and len(x) == 2:
        return (to_rational(x[0]), to_rational(x[1]))
    if isinstance(x, list) and len(x) == 2:
        return (to_rational(x[0]), to_rational(x[1]))
    if isinstance(x, complex):
        raise TypeError("complex floats are not exact; pass (re, im) instead")
    return (to_rational(x), Q0)


def gadd(a, b):
    return (a[0] + b[0], a[1] + b[1])


def gsub(a, b):
    return (a[0] - b[0], a[1] - b[1])


def gneg(a):
    return (-a[0], -a[1])


def gmul(a, b):
    ar, ai = a
    br, bi = b
    return (ar * br - ai * bi, ar * bi + ai * br)


def gconj(a):
    return (a[0], -a[1])


def ginv(a):
    d = a[0] * a[0] + a[1] * a[1]
    if not d:
        raise ZeroDivisionError("division by zero Gaussian rational")
    return (a[0] / d, -a[1] / d)


def gdiv(a, b):
    return gmul(a, ginv(b))


def gnorm2(a):
    return a[0] * a[0] + a[1] * a[1]


def gzero(a):
    return not a[0] and not a[1]


def gpow(a, k):
    out = G1
    for _ in range(k):
        out = gmul(out, a)
    return out


def gfmt(a):
    """Short human-readable form, e.g. ``3/2``, ``-i``, ``1+2i``."""
    re, im = a
    if not im:
        return str(re)
    if not re:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return f"{im}i"
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    tail = "i" if mag == 1 else f"{mag}i"
    return f"{re}{sign}{tail}"


# truncated series -----------------------------------------------------------

def sclean(s):
    return {k: c for k, c in s.items() if c[0] or c[1]}


def sconst(c):
    c = gauss(c)
    return {0: c} if (c[0] or c[1]) else {}


def smul(a, b, n):
    out = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = k1 + k2
            if k > n:
                continue
            v = gmul(c1, c2)
            old = out.get(k)
            out[k] = v if old is None else (old[0] + v[0], old[1] + v[1])
    return {k: c for k, c in out.items() if c[0] or c[1]}


def sadd(a, b):
    out = dict(a)
    for k, c in b.items():
        old = out.get(k)
        if old is None:
            out[k] = c
        else:
            v = (old[0] + c[0], old[1] + c[1])
            if v[0] or v[1]:
                out[k] = v
            else:
                del out[k]
    return out


def sneg(a):
    return {k: (-c[0], -c[1]) for k, c in a.items()}


def ssub(a, b):
    return sadd(a, sneg(b))


def sscale(a, g):
    if not g[0] and not g[1]:
        return {}
    return {k: gmul(c, g) for k, c in a.items()}


def sshift(a, r, n):
    """Multiply by λ^r, dropping powers above n."""
    return {k + r: c for k, c in a.items() if k + r <= n}


def sconj(a):
    return {k: (c[0], -c[1]) for k, c in a.items()}


def sval(a, n):
    """λ-adic valuation; ``n + 1`` for zero."""
    return min(a) if a else n + 1


def sinv(a, n):
    c0 = a.get(0)
    if c0 is None:
        raise NotAUnit("constant term vanishes; not a unit")
    inv0 = ginv(c0)
    # geometric-series recursion b_k = -inv0 * sum_{j>=1} a_j b_{k-j}
    b = [inv0]
    for k in range(1, n + 1):
        acc = G0
        for j in range(1, k + 1):
            aj = a.get(j)
            if aj is not None:
                acc = gadd(acc, gmul(aj, b[k - j]))
        b.append(gneg(gmul(inv0, acc)))
    return {k: c for k, c in enumerate(b) if c[0] or c[1]}


def sdiv(a, p, n):
    """Return c with c*p = a mod λ^(n+1); requires val(a) >= val(p)."""
    if not a:
        return {}
    v = sval(p, n)
    if v > n:
        raise NotAUnit("division by zero series")
    if sval(a, n) < v:
        raise NotAUnit("dividend has lower valuation than divisor")
    m = n - v
    ashift = {k - v: c for k, c in a.items() if k - v <= m}
    pshift = {k - v: c for k, c in p.items() if k - v <= m}
    return smul(ashift, sinv(pshift, m), m)


def sfmt(a):
    if not a:
        return "0"
    parts = []
    for k in sorted(a):
        c = gfmt(a[k])
        if k == 0:
            parts.append(c)
        else:
            lam = "λ" if k == 1 else f"λ^{k}"
            if c == "1":
                parts.append(lam)
            elif c == "-1":
                parts.append("-" + lam)
            elif "+" in c[1:] or "-" in c[1:]:
                parts.append(f"({c}){lam}")
            else:
                parts.append(f"{c}{lam}")
    return " + ".join(parts).replace("+ -", "- ")


def sequal(a, b):
    return a == b


# public wrapper -------------------------------------------------------------

class FormalScalar:
    """An element of Q(i)[λ]/(λ^(N+1)).

    >>> lam = FormalScalar.lam(2)
    >>> (1 + lam) * (1 - lam + lam * lam) == FormalScalar.one(2)
    True
    """

    __slots__ = ("_series", "_order", "_key")

    def __init__(self, coeffs=None, order=DEFAULT_ORDER):
        if order < 0:
            raise ConfigurationError("truncation order must be non-negative")
        s = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
            for k, c in items:
                if k < 0:
                    raise ValueError("negative λ-power")
                if k > order:
                    continue
                g = gauss(c)
                if g[0] or g[1]:
                    s[k] = gadd(s.get(k, G0), g)
        self._series = sclean(s)
        self._order = order
        self._key = None

    @classmethod
    def from_series(cls, series, order):
        obj = cls.__new__(cls)
        obj._series = {k: c for k, c in series.items() if k <= order and (c[0] or c[1])}
        obj._order = order
        obj._key = None
        return obj

    @classmethod
    def constant(cls, c, order=DEFAULT_ORDER):
        return cls.from_series(sconst(c), order)

    @classmethod
    def one(cls, order=DEFAULT_ORDER):
        return cls.from_series({0: G1}, order)

    @classmethod
    def zero(cls, order=DEFAULT_ORDER):
        return cls.from_series({}, order)

    @classmethod
    def lam(cls, order=DEFAULT_ORDER):
        return cls.from_series({1: G1}, order)

    @property
    def order(self):
        return self._order

    @property
    def series(self):
        return dict(self._series)

    def coefficient(self, k):
        """Coefficient of λ^k as a pair of ``Fraction`` (re, im)."""
        c = self._series.get(k, G0)
        return (Fraction(int(c[0].numerator), int(c[0].denominator)),
                Fraction(int(c[1].numerator), int(c[1].denominator)))

    def valuation(self):
        return sval(self._series, self._order)

    def is_zero(self):
        return not self._series

    def __bool__(self):
        return bool(self._series)

    def is_real(self):
        return all(not c[1] for c in self._series.values())

    def is_positive(self):
        """Ring order of R[[λ]]: the lowest nonzero coefficient is real and > 0."""
        if not self._series:
            return False
        c = self._series[min(self._series)]
        return not c[1] and c[0] > 0

    def is_nonnegative(self):
        return not self._series or self.is_positive()

    def _coerce(self, other):
        if isinstance(other, FormalScalar):
            if other._order != self._order:
                raise ConfigurationError(
                    f"mismatched truncation orders {self._order} and {other._order}")
            return other._series
        try:
            return sconst(other)
        except TypeError:
            return None

    def __add__(self, other):
        s = self._coerce(other)
        if s is None:
            return NotImplemented
        return FormalScalar.from_series(sadd(self._series, s), self._order)

    __radd__ = __add__

    def __sub__(self, other):
        s = self._coerce(other)
        if s is None:
            return NotImplemented
        return FormalScalar.from_series(ssub(self._series, s), self._order)

    def __rsub__(self, other):
        s = self._coerce(other)
        if s is None:
            return NotImplemented
        return FormalScalar.from_series(ssub(s, self._series), self._order)

    def __neg__(self):
        return FormalScalar.from_series(sneg(self._series), self._order)

    def __mul__(self, other):
        s = self._coerce(other)
        if s is None:
            return NotImplemented
        return FormalScalar.from_series(smul(self._series, s, self._order), self._order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        s = self._coerce(other)
        if s is None:
            return NotImplemented
        return self * FormalScalar.from_series(s, self._order).invert()

    def __pow__(self, k):
        out = FormalScalar.one(self._order)
        for _ in range(k):
            out = out * self
        return out

    def conj(self):
        return FormalScalar.from_series(sconj(self._series), self._order)

    def invert(self):
        return FormalScalar.from_series(sinv(self._series, self._order), self._order)

    def __eq__(self, other):
        if isinstance(other, FormalScalar):
            return self._order == other._order and self._series == other._series
        try:
            return self._series == sconst(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._key is None:
            self._key = (self._order, tuple(sorted(self._series.items())))
        return hash(self._key)

    def __repr__(self):
        return f"FormalScalar({sfmt(self._series)}, N={self._order})"

    def __str__(self):
        return sfmt(self._series)


def scalar_mul(a, b):
    return a * b


def scalar_conj(a):
    return a.conj()


def scalar_invert(a):
    return a.invert()
