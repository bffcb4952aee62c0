"""Command-line front end.

One executable with three modes:
    dossier --spec group.spec [--count-max-m K] [--budget N] [--seed S]
    dossier --specialize vectors.jsonl
    dossier --fan N

Exit codes: 0 all checks pass, 2 parse error, 3 budget error,
4 invariant violation / disagreement (the failed check is named).
"""

import argparse
import json
import sys

from . import dossier as dz
from .errors import (BudgetError, DomainError, InvariantViolation,
                     PrecisionError, SpecParseError)
from .lt_specialize import read_level_vectors


def make_parser():
    ap = argparse.ArgumentParser(
        prog="dossier",
        description="Depth-zero invariant dossiers, level-vector "
                    "specialization reports, and KGL fan exports.")
    mode = ap.add_mutually_exclusive_group(required=True)
    mode.add_argument("--spec", metavar="PATH",
                      help="group spec file (JSON: type/n or custom fields, q, mu)")
    mode.add_argument("--specialize", metavar="PATH",
                      help="level-vector file (one JSON record per line)")
    mode.add_argument("--fan", metavar="N", type=int,
                      help="export the KGL_N fan")
    ap.add_argument("--count-max-m", type=int, default=None, metavar="K",
                    help="enumerate Y(w) over F_{q^m} for m <= K (default 1)")
    ap.add_argument("--budget", type=int, default=dz.DEFAULT_BUDGET,
                    help="enumeration size budget")
    ap.add_argument("--seed", type=int, default=0,
                    help="seed for the randomized ledger checks")
    ap.add_argument("--pretty", action="store_true",
                    help="append a human-readable report")
    ap.add_argument("--out", metavar="PATH", help="write output to a file")
    return ap


def _emit(text, out_path):
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        if args.spec is not None:
            try:
                with open(args.spec) as fh:
                    doc = dz.parse_spec_doc(fh.read())
            except OSError as exc:
                raise SpecParseError(str(exc))
            explicit = args.count_max_m is not None
            dossier = dz.build_dossier(doc,
                                       count_max_m=args.count_max_m or 1,
                                       budget=args.budget, seed=args.seed,
                                       explicit_max_m=explicit)
            _emit(dz.render_dossier(dossier, pretty=args.pretty), args.out)
            code = dz.dossier_exit_code(dossier)
            if code:
                print("failed checks: " + ", ".join(dz.failed_checks(dossier)),
                      file=sys.stderr)
            return code

        if args.specialize is not None:
            try:
                with open(args.specialize) as fh:
                    vectors = read_level_vectors(fh)
            except OSError as exc:
                raise SpecParseError(str(exc))
            report = dz.specialize_report(vectors)
            text = json.dumps(report, indent=None, separators=(",", ":")) + "\n"
            if args.pretty:
                lines = [text, "----\n"]
                for rec in report["records"]:
                    lines.append(json.dumps(rec) + "\n")
                text = "".join(lines)
            _emit(text, args.out)
            if report["disagreements"]:
                print("specialization routes disagree", file=sys.stderr)
                return 4
            return 0

        doc = dz.fan_export(args.fan)
        _emit(json.dumps(doc, indent=None, separators=(",", ":")) + "\n",
              args.out)
        return 0

    except SpecParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 4
    except (DomainError, PrecisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
