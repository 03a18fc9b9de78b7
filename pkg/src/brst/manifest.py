"""Manifest files: sectioned ``key = value`` text describing a model.

Example::

    [lie]
    dim = 1
    structure = []            # rows [a, b, c, value] meaning f^c_ab, 1-based
    metric = [[1]]
    momentum = ["p1"]         # polynomials in q1..qn, p1..pn
    correction = ["0"]        # optional: J_quantum = J + λ·correction

    [model]
    n = 2
    constrained = [1]

    [truncation]
    lambda_order = 3
    poly_degree = 2
    ghost_range = [-1, 1]

    [suites]
    verify = true

Values are Python literals (``true``/``false`` are accepted). Indices in the
file are 1-based; the loaded objects use 0-based indices.
"""

import ast
from pathlib import Path

from .algebra import BrstContext
from .errors import DomainError, ManifestError
from .grassmann import MetricData
from .scalars import Q1, gauss, to_rational
from .weyl import LieData, PolyObservable

SECTIONS = {
    "lie": {"dim", "structure", "metric", "momentum", "correction"},
    "model": {"n", "constrained", "name"},
    "truncation": {"lambda_order", "poly_degree", "ghost_range", "seed", "samples"},
    "suites": {"verify", "cohomology", "quotient", "reduce", "positivity", "gns"},
}
REQUIRED = {"lie": {"dim", "momentum"}, "model": {"n"}}
SUITES = ("verify", "cohomology", "quotient", "reduce", "positivity", "gns")


class Manifest:
    """A validated model description."""

    def __init__(self, path, name, lie, constrained, lambda_order, poly_degree, ghost_range,
                 suites, seed=0, samples=500, source=None):
        self.path = path
        self.name = name
        self.lie = lie
        self.n = lie.n
        self.dim = lie.dim
        self.constrained = constrained
        self.lambda_order = lambda_order
        self.poly_degree = poly_degree
        self.ghost_range = ghost_range
        self.suites = suites
        self.seed = seed
        self.samples = samples
        self.source = source or {}

    def context(self, order=None, degree_cap=None, poly_degree=None):
        """A BrstContext with a degree cap large enough for the sector sweeps."""
        d = self.poly_degree if poly_degree is None else poly_degree
        if degree_cap is None:
            degree_cap = max(6, d + 2 * self.lie.max_momentum_degree())
        return BrstContext(self.lie, self.lambda_order if order is None else order,
                           degree_cap, self.constrained)

    def __repr__(self):
        return (f"Manifest({self.name!r}, dim={self.dim}, n={self.n}, "
                f"constrained={self.constrained})")


class _Entry:
    def __init__(self, value, line, column):
        self.value = value
        self.line = line
        self.column = column


def _strip_comment(text):
    out = []
    quote = None
    for ch in text:
        if quote:
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
        elif ch == "#":
            break
        out.append(ch)
    return "".join(out)


def _depth(text):
    d = 0
    quote = None
    for ch in text:
        if quote:
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
        elif ch in "([{":
            d += 1
        elif ch in ")]}":
            d -= 1
    return d


def parse_sections(text):
    """Raw parse: {section: {key: _Entry}} with literal values.

    A value whose brackets are unbalanced continues on the following lines.
    """
    sections = {}
    current = None
    lines = text.splitlines()
    lineno = 0
    while lineno < len(lines):
        raw = lines[lineno]
        lineno += 1
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        col = line.index(stripped[0]) + 1
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ManifestError("unterminated section header", lineno, col)
            current = stripped[1:-1].strip()
            if current not in SECTIONS:
                raise ManifestError(f"unknown section [{current}]", lineno, col)
            if current in sections:
                raise ManifestError(f"duplicate section [{current}]", lineno, col)
            sections[current] = {}
            continue
        if current is None:
            raise ManifestError("key outside of any section", lineno, col)
        if "=" not in line:
            raise ManifestError("expected 'key = value'", lineno, col)
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in SECTIONS[current]:
            raise ManifestError(f"unknown key {key!r} in [{current}]", lineno, col)
        if key in sections[current]:
            raise ManifestError(f"duplicate key {key!r}", lineno, col)
        start = lineno
        vcol = line.index("=") + 2 + (len(value) - len(value.lstrip()))
        src = value.strip()
        while _depth(src) > 0 and lineno < len(lines):
            src += " " + _strip_comment(lines[lineno]).strip()
            lineno += 1
        if _depth(src) != 0:
            raise ManifestError(f"unbalanced brackets in value of {key!r}", start, vcol)
        src = src.replace("true", "True").replace("false", "False")
        try:
            parsed = ast.literal_eval(src)
        except (ValueError, SyntaxError) as exc:
            offset = getattr(exc, "offset", None) or 1
            raise ManifestError(f"cannot parse value of {key!r}: {exc.__class__.__name__}",
                                start, vcol + offset - 1) from None
        sections[current][key] = _Entry(parsed, start, vcol)
    for sec, keys in REQUIRED.items():
        if sec not in sections:
            raise ManifestError(f"missing section [{sec}]")
        for k in keys:
            if k not in sections[sec]:
                raise ManifestError(f"missing key {k!r} in [{sec}]")
    return sections


# polynomial strings ----------------------------------------------------------

def parse_polynomial(text, n, order, line=None, column=None):
    """Parse e.g. "q2*p3 - q3*p2 + 1/2*i*p1**2" into a PolyObservable.

    Variables are q1..qn and p1..pn; ``i`` is the imaginary unit.
    """
    base = column or 1
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ManifestError(f"cannot parse polynomial {text!r}", line,
                            base + (exc.offset or 1) - 1) from None

    def fail(node, msg):
        raise ManifestError(f"{msg} in polynomial {text!r}", line,
                            base + getattr(node, "col_offset", 0))

    def const(c):
        return PolyObservable.constant(c, n, order)

    def walk(node):
        if isinstance(node, ast.Expression):
            return walk(node.body)
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, int):
                fail(node, "only integer literals are allowed")
            return const(node.value)
        if isinstance(node, ast.Name):
            name = node.id
            if name == "i":
                return PolyObservable.constant(gauss(0, 1), n, order)
            if len(name) >= 2 and name[0] in "qp" and name[1:].isdigit():
                k = int(name[1:])
                if not 1 <= k <= n:
                    fail(node, f"variable {name} out of range 1..{n}")
                make = PolyObservable.q if name[0] == "q" else PolyObservable.p
                return make(k - 1, n, order)
            fail(node, f"unknown name {name!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)
                        and node.right.value >= 0):
                    fail(node, "exponents must be nonnegative integers")
                v = walk(node.left)
                out = const(1)
                for _ in range(node.right.value):
                    out = out.pointwise(v)
                return out
            left, right = walk(node.left), walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left.pointwise(right)
            if isinstance(node.op, ast.Div):
                if right.degree() > 0 or not right.terms:
                    fail(node, "division only by nonzero constants")
                c = right.terms[(0,) * (2 * n)][0]
                if c[1]:
                    fail(node, "division only by rational constants")
                return left.scale((Q1 / c[0], 0))
        fail(node, "unsupported expression")

    return walk(tree)


# loading -----------------------------------------------------------------------

def _get(sections, sec, key, default=None):
    entry = sections.get(sec, {}).get(key)
    return entry if entry is not None else _Entry(default, None, None)


def _expect_int(entry, what, minimum=None):
    v = entry.value
    if isinstance(v, bool) or not isinstance(v, int):
        raise ManifestError(f"{what} must be an integer", entry.line, entry.column)
    if minimum is not None and v < minimum:
        raise ManifestError(f"{what} must be at least {minimum}", entry.line, entry.column)
    return v


def _lie_from_sections(sections, n, order):
    dim_e = sections["lie"]["dim"]
    dim = _expect_int(dim_e, "dim", 1)
    st = _get(sections, "lie", "structure", [])
    if not isinstance(st.value, (list, tuple)):
        raise ManifestError("structure must be a list of [a, b, c, value] rows",
                            st.line, st.column)
    f = {}
    for row in st.value:
        if not (isinstance(row, (list, tuple)) and len(row) == 4):
            raise ManifestError("structure rows must be [a, b, c, value]", st.line, st.column)
        a, b, c, v = row
        for idx in (a, b, c):
            if not (isinstance(idx, int) and 1 <= idx <= dim):
                raise ManifestError(f"structure index {idx!r} out of range 1..{dim}",
                                    st.line, st.column)
        try:
            v = to_rational(v) if not isinstance(v, str) else to_rational(_fraction(v))
        except (TypeError, ValueError, ZeroDivisionError):
            raise ManifestError(f"structure value {v!r} is not rational",
                                st.line, st.column) from None
        key = (a - 1, b - 1)
        if c - 1 in f.get(key, {}):
            raise ManifestError(f"duplicate structure entry f^{c}_{a}{b}", st.line, st.column)
        f.setdefault(key, {})[c - 1] = v
    for (a, b), row in f.items():
        for c, v in row.items():
            w = f.get((b, a), {}).get(c, 0)
            if v != -w:
                raise ManifestError(
                    f"structure constants not antisymmetric: f^{c + 1}_{a + 1}{b + 1} = {v} "
                    f"but f^{c + 1}_{b + 1}{a + 1} = {w}", st.line, st.column)
    me = _get(sections, "lie", "metric", None)
    if me.value is None:
        metric = MetricData.identity(dim)
    else:
        try:
            metric = MetricData([[_fraction(x) if isinstance(x, str) else x for x in row]
                                 for row in me.value])
        except DomainError as exc:
            minor = getattr(exc, "minor", None)
            msg = (f"metric is not positive definite: leading minor {minor} is not positive"
                   if minor else f"invalid metric: {exc}")
            err = ManifestError(msg, me.line, me.column)
            err.minor = minor
            raise err from None
        except (TypeError, ValueError):
            raise ManifestError("metric must be a square matrix of rationals",
                                me.line, me.column) from None
        if metric.dim != dim:
            raise ManifestError(f"metric must be {dim}x{dim}", me.line, me.column)
    mo = sections["lie"]["momentum"]
    if not (isinstance(mo.value, (list, tuple)) and len(mo.value) == dim):
        raise ManifestError(f"momentum must list {dim} polynomial strings", mo.line, mo.column)
    mom = [parse_polynomial(str(s), n, order, mo.line, mo.column) for s in mo.value]
    co = _get(sections, "lie", "correction", None)
    corr = None
    if co.value is not None:
        if not (isinstance(co.value, (list, tuple)) and len(co.value) == dim):
            raise ManifestError(f"correction must list {dim} polynomial strings",
                                co.line, co.column)
        corr = []
        for s in co.value:
            p = parse_polynomial(str(s), n, order, co.line, co.column)
            corr.append(p._like({e: {k + 1: c for k, c in ser.items() if k + 1 <= order}
                                 for e, ser in p.terms.items()}))
    lie = LieData(dim, f, mom, metric, corr, n, validate=False)
    w = lie.jacobi_violation()
    if w is not None:
        err = ManifestError(f"Jacobi identity fails for basis triple "
                            f"({w[0] + 1}, {w[1] + 1}, {w[2] + 1})", st.line, st.column)
        err.triple = tuple(x + 1 for x in w)
        raise err
    return lie


def _fraction(s):
    from fractions import Fraction
    return Fraction(s)


def load_manifest_text(text, path=None):
    sections = parse_sections(text)
    n = _expect_int(sections["model"]["n"], "n", 1)
    tr = sections.get("truncation", {})
    order = _expect_int(tr["lambda_order"], "lambda_order", 0) if "lambda_order" in tr else 3
    degree = _expect_int(tr["poly_degree"], "poly_degree", 0) if "poly_degree" in tr else 2
    lie = _lie_from_sections(sections, n, order)
    ce = _get(sections, "model", "constrained", None)
    constrained = None
    if ce.value is not None:
        if not isinstance(ce.value, (list, tuple)) or len(ce.value) != lie.dim:
            raise ManifestError("constrained must list one momentum index per generator",
                                ce.line, ce.column)
        for k in ce.value:
            if not (isinstance(k, int) and 1 <= k <= n):
                raise ManifestError(f"constrained index {k!r} out of range 1..{n}",
                                    ce.line, ce.column)
        if len(set(ce.value)) != len(ce.value):
            raise ManifestError("constrained indices must be distinct", ce.line, ce.column)
        constrained = [k - 1 for k in ce.value]
    ge = _get(sections, "truncation", "ghost_range", [-lie.dim, lie.dim])
    gr = ge.value
    if not (isinstance(gr, (list, tuple)) and len(gr) == 2 and all(isinstance(x, int) for x in gr)
            and gr[0] <= gr[1]):
        raise ManifestError("ghost_range must be [low, high]", ge.line, ge.column)
    suites = {s: False for s in SUITES}
    for key, entry in sections.get("suites", {}).items():
        if not isinstance(entry.value, bool):
            raise ManifestError(f"suite flag {key!r} must be true or false",
                                entry.line, entry.column)
        suites[key] = entry.value
    name_e = _get(sections, "model", "name", None)
    name = name_e.value or (Path(path).stem if path else "manifest")
    seed = _expect_int(_get(sections, "truncation", "seed", 0), "seed")
    samples = _expect_int(_get(sections, "truncation", "samples", 500), "samples", 1)
    source = {sec: {k: e.value for k, e in keys.items()} for sec, keys in sections.items()}
    return Manifest(str(path) if path else None, name, lie, constrained, order, degree,
                    tuple(gr), suites, seed, samples, source)


def load_manifest(path):
    """Read and validate a manifest file."""
    p = Path(path)
    if not p.exists():
        shipped = Path(__file__).parent / "fixtures" / p.name
        if not p.suffix:
            shipped = shipped.with_suffix(".brst")
        if shipped.exists():
            p = shipped
        else:
            raise ManifestError(f"manifest not found: {path}")
    return load_manifest_text(p.read_text(encoding="utf-8"), p)


def fixture_path(name):
    p = Path(__file__).parent / "fixtures" / name
    return p if p.suffix else p.with_suffix(".brst")


def shipped_fixtures():
    return sorted(p.stem for p in (Path(__file__).parent / "fixtures").glob("*.brst"))
