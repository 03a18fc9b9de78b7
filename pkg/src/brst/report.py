"""Reports: structured suite results with table and json renderings.

Report content is plain data (strings, ints, bools, lists, dicts); exact
values are encoded on the way in, so ``parse_report(emit_report(r, "json"))``
reproduces ``r`` exactly.
"""

import json

from .scalars import FormalScalar, to_rational

SCHEMA = "brst-report/1"


def encode_rational(q):
    q = to_rational(q)
    return f"{int(q.numerator)}/{int(q.denominator)}"


def encode_gauss(c):
    return {"re": encode_rational(c[0]), "im": encode_rational(c[1])}


def encode_series(s, order):
    """A truncated series as the array of its N + 1 coefficients."""
    if isinstance(s, FormalScalar):
        order, s = s.order, s.series
    return [encode_gauss(s.get(k, (0, 0))) for k in range(order + 1)]


def encode_element(x):
    """Sparse element as a sorted list of {term, coefficient}."""
    return [{"term": repr_key(x, key), "coefficient": encode_series(x.terms[key], x.order)}
            for key in x.keys()]


def repr_key(x, key):
    text = repr(x._like({key: {0: (1, 0)}}))
    return text[text.index("·") + 1:-1] if "·" in text else text


class Entry:
    """One suite's outcome: checks, dimension tables and free-form data."""

    def __init__(self, suite, status="pass", checks=None, tables=None, data=None, notes=None,
                 timing=None):
        self.suite = suite
        self.status = status
        self.checks = list(checks or [])
        self.tables = dict(tables or {})
        self.data = dict(data or {})
        self.notes = list(notes or [])
        self.timing = timing

    def add_check(self, name, ok, count=0, witness=None, expected=True):
        """Record a check; ``expected=False`` marks a negative control that must fail."""
        passed = bool(ok) == expected
        self.checks.append({"name": name, "status": "pass" if passed else "fail",
                            "count": int(count),
                            "witness": None if witness is None else str(witness)})
        if not passed:
            self.status = "fail"
        return passed

    def add_result(self, check, expected=True):
        return self.add_check(check.name, check.ok, check.count, check.witness, expected)

    def add_row(self, table, **row):
        self.tables.setdefault(table, []).append(row)

    def to_dict(self, timing=False):
        d = {"suite": self.suite, "status": self.status, "checks": self.checks,
             "tables": self.tables, "data": self.data, "notes": self.notes}
        if timing and self.timing is not None:
            d["timing"] = round(self.timing, 3)
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(d["suite"], d["status"], d.get("checks"), d.get("tables"), d.get("data"),
                   d.get("notes"), d.get("timing"))

    def __eq__(self, other):
        return isinstance(other, Entry) and self.to_dict(True) == other.to_dict(True)


class Report:
    def __init__(self, manifest=None, entries=None, parameters=None):
        self.manifest = manifest
        self.entries = list(entries or [])
        self.parameters = dict(parameters or {})

    @property
    def passed(self):
        return all(e.status != "fail" for e in self.entries)

    def to_dict(self, timing=False):
        return {"schema": SCHEMA, "manifest": self.manifest, "parameters": self.parameters,
                "status": "pass" if self.passed else "fail",
                "entries": [e.to_dict(timing) for e in self.entries]}

    @classmethod
    def from_dict(cls, d):
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        return cls(d.get("manifest"), [Entry.from_dict(e) for e in d.get("entries", [])],
                   d.get("parameters"))

    def __eq__(self, other):
        return isinstance(other, Report) and self.to_dict(True) == other.to_dict(True)


def _row_text(row):
    keys = [k for k in ("ghost", "degree", "dim") if k in row]
    keys += sorted(k for k in row if k not in keys)
    return " ".join(f"{k}={_plain(row[k])}" for k in keys)


def _plain(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True, ensure_ascii=False)
    return str(v)


def emit_report(report, fmt="table", timing=False):
    if fmt == "json":
        return json.dumps(report.to_dict(timing), sort_keys=True, indent=2,
                          ensure_ascii=False) + "\n"
    if fmt != "table":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    if report.manifest is not None:
        lines.append(f"manifest {report.manifest}")
    for e in report.entries:
        head = f"[{e.suite}] {e.status.upper()}"
        if timing and e.timing is not None:
            head += f"  ({e.timing:.2f}s)"
        lines.append(head)
        for c in e.checks:
            line = f"  {c['status']:<4}  {c['name']}"
            if c["count"]:
                line += f"  (n={c['count']})"
            if c["status"] == "fail" and c["witness"]:
                line += f"  witness: {c['witness']}"
            lines.append(line)
        for name in sorted(e.tables):
            lines.append(f"  table {name}")
            for row in e.tables[name]:
                lines.append("    " + _row_text(row))
        for key in sorted(e.data):
            lines.append(f"  {key}: {_plain(e.data[key])}")
        for note in e.notes:
            lines.append(f"  note: {note}")
    if report.entries:
        lines.append(f"overall {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def parse_report(text):
    return Report.from_dict(json.loads(text))
