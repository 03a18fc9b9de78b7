from brst.report import (Entry, Report, emit_report, encode_rational, encode_series,
                         parse_report)
from brst.scalars import FormalScalar, gauss
from brst.suites import run


def test_empty_report():
    r = Report()
    assert r.passed
    assert parse_report(emit_report(r, "json")) == r
    assert emit_report(r) == "\n"


def test_rational_encoding():
    assert encode_rational("-3/6") == "-1/2"
    assert encode_series(FormalScalar.from_series({1: gauss("1/3", 2)}, 2), None) == [
        {"re": "0/1", "im": "0/1"}, {"re": "1/3", "im": "2/1"}, {"re": "0/1", "im": "0/1"}]


def test_round_trip_and_failure_status():
    e = Entry("verify")
    e.add_check("a", True, 3)
    e.add_check("control", False, 2, expected=False)
    e.add_row("dimensions", ghost=0, degree=1, dim=3, injective=True)
    e.data["x"] = [1, 2]
    r = Report("m", [e], {"order": 3})
    assert r.passed
    assert parse_report(emit_report(r, "json")) == r
    e.add_check("b", False, 1, witness=(1, 2))
    assert not r.passed and e.status == "fail"
    text = emit_report(r)
    assert "ghost=0 degree=1 dim=3 injective=yes" in text
    assert "witness: (1, 2)" in text and text.rstrip().endswith("overall FAIL")


def test_timing_only_on_request():
    e = Entry("gns", timing=1.23456)
    r = Report("m", [e])
    assert "timing" not in emit_report(r, "json")
    assert '"timing": 1.235' in emit_report(r, "json", timing=True)


def test_json_is_deterministic(manifests):
    a = emit_report(run(manifests["abelian-t1"], ["cohomology", "positivity"]), "json")
    b = emit_report(run(manifests["abelian-t1"], ["cohomology", "positivity"]), "json")
    assert a == b
