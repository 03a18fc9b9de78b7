"""Command-line front end: ``brst <suite|all> <manifest> [options]``."""

import argparse
import sys

from .errors import BrstError, ManifestError
from .manifest import SUITES, load_manifest
from .report import emit_report
from .suites import run


def build_parser():
    p = argparse.ArgumentParser(
        prog="brst",
        description="Exact BRST computations on manifest-described desk-scale models.")
    p.add_argument("suite", choices=SUITES + ("all",),
                   help="suite to run; 'all' runs the suites enabled in the manifest")
    p.add_argument("manifest", help="manifest file, or the name of a shipped fixture")
    p.add_argument("--ghost", type=int, metavar="K", help="restrict sector tables to ghost number K")
    p.add_argument("--degree", type=int, metavar="D",
                   help="polynomial degree cap (sector tables use this degree only)")
    p.add_argument("--lambda-order", type=int, metavar="N", dest="order",
                   help="truncation order of the formal parameter")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    p.add_argument("--timing", action="store_true", help="include wall-clock timings")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.degree is not None and args.degree < 0:
        print("brst: --degree must be non-negative", file=sys.stderr)
        return 2
    if args.order is not None and args.order < 0:
        print("brst: --lambda-order must be non-negative", file=sys.stderr)
        return 2
    try:
        manifest = load_manifest(args.manifest)
    except ManifestError as exc:
        print(f"brst: {args.manifest}: {exc}", file=sys.stderr)
        return 2
    suites = None if args.suite == "all" else [args.suite]
    try:
        report = run(manifest, suites, ghost=args.ghost, degree=args.degree, order=args.order)
    except BrstError as exc:
        print(f"brst: {exc}", file=sys.stderr)
        return 1
    text = emit_report(report, args.format, timing=args.timing)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
