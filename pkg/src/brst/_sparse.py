"""Shared storage for sparse elements with truncated-series coefficients."""

from .errors import ConfigurationError
from .scalars import DEFAULT_ORDER, FormalScalar, gauss, sconst, smul


def terms_add(a, b, sign=1):
    out = {k: dict(s) for k, s in a.items()}
    for key, s in b.items():
        acc = out.get(key)
        if acc is None:
            acc = out[key] = {}
        for k, c in s.items():
            old = acc.get(k)
            if sign < 0:
                c = (-c[0], -c[1])
            if old is None:
                acc[k] = c
            else:
                v = (old[0] + c[0], old[1] + c[1])
                if v[0] or v[1]:
                    acc[k] = v
                else:
                    del acc[k]
        if not acc:
            del out[key]
    return out


def terms_scale(a, s, n):
    out = {}
    for key, t in a.items():
        v = smul(t, s, n)
        if v:
            out[key] = v
    return out


def accumulate(acc, key, k, c):
    """acc[key][k] += c, keeping the dicts free of zeros lazily."""
    ser = acc.get(key)
    if ser is None:
        acc[key] = {k: c}
        return
    old = ser.get(k)
    ser[k] = c if old is None else (old[0] + c[0], old[1] + c[1])


def prune(acc):
    out = {}
    for key, ser in acc.items():
        s = {k: c for k, c in ser.items() if c[0] or c[1]}
        if s:
            out[key] = s
    return out


def truncate_terms(a, n):
    out = {}
    for key, ser in a.items():
        s = {k: c for k, c in ser.items() if k <= n}
        if s:
            out[key] = s
    return out


def scalar_series(x, order):
    if isinstance(x, FormalScalar):
        if x.order != order:
            raise ConfigurationError(
                f"mismatched truncation orders {x.order} and {order}")
        return x.series
    if isinstance(x, dict):
        return {k: c for k, c in x.items() if k <= order and (c[0] or c[1])}
    return sconst(x)


class SparseElement:
    """Sparse map key -> truncated series, with module operations.

    Subclasses fix the meaning of the keys and add their products.
    """

    __slots__ = ("terms", "order")

    def __init__(self, terms=None, order=DEFAULT_ORDER):
        self.order = order
        if not terms:
            self.terms = {}
            return
        clean = {}
        for key, value in terms.items():
            if isinstance(value, FormalScalar):
                s = scalar_series(value, order)
            elif isinstance(value, dict):
                s = {k: gauss(c) for k, c in value.items() if k <= order}
            else:
                s = sconst(value)
            s = {k: c for k, c in s.items() if c[0] or c[1]}
            if s:
                clean[self._check_key(key)] = s
        self.terms = clean

    def _check_key(self, key):
        return key

    @classmethod
    def _raw(cls, terms, order, **extra):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.order = order
        for name, value in extra.items():
            setattr(obj, name, value)
        return obj

    def _like(self, terms):
        return type(self)._raw(terms, self.order, **self._extra())

    def _extra(self):
        return {}

    def _check(self, other):
        if not isinstance(other, SparseElement) or type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.order != self.order:
            raise ConfigurationError(
                f"mismatched truncation orders {self.order} and {other.order}")

    def __add__(self, other):
        if not isinstance(other, SparseElement):
            other = self._scalar_element(other)
        self._check(other)
        return self._like(terms_add(self.terms, other.terms))

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, SparseElement):
            other = self._scalar_element(other)
        self._check(other)
        return self._like(terms_add(self.terms, other.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return self._like({key: {k: (-c[0], -c[1]) for k, c in s.items()}
                           for key, s in self.terms.items()})

    def scale(self, x):
        return self._like(terms_scale(self.terms, scalar_series(x, self.order), self.order))

    def _scalar_element(self, x):
        s = scalar_series(x, self.order)
        return self._like({self._unit_key(): s} if s else {})

    def _unit_key(self):
        raise NotImplementedError

    def __eq__(self, other):
        if isinstance(other, SparseElement):
            return (type(other) is type(self) and self.order == other.order
                    and self.terms == other.terms)
        try:
            return self == self._scalar_element(other)
        except (TypeError, NotImplementedError):
            return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def keys(self):
        return sorted(self.terms, key=self._sort_key)

    def _sort_key(self, key):
        return key

    def coefficient(self, key):
        return FormalScalar.from_series(self.terms.get(key, {}), self.order)

    def items(self):
        for key in self.keys():
            yield key, FormalScalar.from_series(self.terms[key], self.order)

    def truncate(self, order):
        """Same element viewed at a lower truncation order."""
        if order > self.order:
            raise ConfigurationError("cannot raise the truncation order of an element")
        return type(self)._raw(truncate_terms(self.terms, order), order, **self._extra())

    def lift(self, order):
        """Same coefficients, reinterpreted at a higher truncation order."""
        return type(self)._raw({k: dict(s) for k, s in self.terms.items()}, order,
                               **self._extra())

    def lambda_part(self, k):
        """Coefficient of λ^k as an element with λ-free coefficients."""
        out = {}
        for key, s in self.terms.items():
            c = s.get(k)
            if c is not None:
                out[key] = {0: c}
        return self._like(out)
