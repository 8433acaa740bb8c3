"""Command line interface.

Exit status is 0 when every check passes, 1 when a check fails and 2 for
usage errors.
"""

import argparse
import json
import sys

from .errors import BinpolyError
from .suite import (
    Report,
    cohomology_check,
    complex_checks,
    expected_cohomology,
    flag_checks,
    group_checks,
    homology_strings,
    load_expected,
    polytope_checks,
    quotient_checks,
    sphere_check,
    verify_all,
)


def _emit(report, json_path, out):
    text = json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n"
    if json_path == "-":
        out.write(text)
        return
    out.write(report.text() + "\n")
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def cmd_group(args, out):
    from .groups import get_group

    expected = load_expected()
    report = Report(["group", "--group", args.group])
    if args.group in ("Q8", "S3"):
        g = get_group(args.group)
        report.add(f"{args.group}: order", g.order == expected["groups"][args.group]["order"], {"order": g.order})
        report.add(f"{args.group}: group axioms", g.check_axioms())
    else:
        group_checks(report, args.group, expected)
    if args.dump:
        report.data["group"] = get_group(args.group).to_json()
    return report


def cmd_polytope(args, out):
    expected = load_expected()
    report = Report(["polytope", "--group", args.group, "--oracle", args.oracle])
    progress = None
    if args.oracle == "full" and args.group == "I":
        print("note: the full oracle for I tests about 8.2 million vertex subsets", file=sys.stderr)
    polytope_checks(report, args.group, expected, args.oracle, progress)
    return report


def cmd_complex(args, out):
    from .catalog import ChainComplex, build_by_label

    if args.input:
        with open(args.input, encoding="utf-8") as fh:
            data = json.load(fh)
        report = Report(["complex", "--input", args.input])

        def run():
            c = ChainComplex.from_json(data)
            return True, {"label": c.label, "ranks": c.ranks}

        report.run(f"{data.get('label', '?')}: d o d = 0", run)
        return report
    report = Report(["complex", "--label", args.label] + (["--verify"] if args.verify else []))
    if args.emit:
        c = build_by_label(args.label)
        text = json.dumps(c.to_json(), indent=1) + "\n"
        if args.emit == "-":
            out.write(text)
            return None
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text)
        report.add(f"{args.label}: emitted", True, {"path": args.emit, "ranks": c.ranks})
    if args.verify:
        complex_checks(report, args.label)
    return report


def cmd_homology(args, out):
    from .homology import flag_homology_report, quotient_homology, sphere_homology

    expected = load_expected()
    report = Report(["homology", "--target", args.target] + (["--group", args.group] if args.group else [])
                    + (["--n", str(args.n)] if args.target == "sphere" else []))
    if args.target == "flag":
        flag_checks(report, expected)
        report.data["homology"] = flag_homology_report().to_json()
        return report
    if not args.group or args.group not in ("T", "O", "I"):
        raise UsageError("--group T, O or I is required for this target")
    if args.target == "sphere":
        if str(args.n) in expected["sphere_homology"]:
            sphere_check(report, args.group, args.n, expected)
        else:
            res = sphere_homology(args.group, args.n)
            want = ["Z"] + ["0"] * (4 * args.n - 2) + ["Z"]
            report.add(f"{args.group}: sphere homology n={args.n}", homology_strings(res) == want,
                       homology_strings(res))
    else:
        quotient_checks(report, args.group, expected)
        report.data["homology"] = quotient_homology(args.group).to_json()
    return report


def cmd_cohomology(args, out):
    from .homology import group_cohomology_table

    expected = load_expected()
    if args.qmax < 4:
        raise UsageError("--qmax must be at least 4")
    report = Report(["cohomology", "--group", args.group, "--qmax", str(args.qmax)])
    cohomology_check(report, args.group, args.qmax, expected)
    res = group_cohomology_table(args.group, args.qmax)
    report.data["cohomology"] = res.to_json()
    report.data["expected"] = expected_cohomology(expected, args.group, args.qmax)
    return report


def cmd_verify_all(args, out):
    return verify_all(fast=args.fast)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser():
    p = _Parser(prog="binpoly", description="Exact computations for binary polyhedral groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("group", help="build a group and check its presentation")
    g.add_argument("--group", required=True, choices=["T", "O", "I", "S3", "Q8"])
    g.add_argument("--dump", action="store_true", help="include the element list in the JSON")
    g.add_argument("--json", metavar="PATH")
    g.set_defaults(func=cmd_group)

    pp = sub.add_parser("polytope", help="orbit polytope, f-vector and fundamental domain")
    pp.add_argument("--group", required=True, choices=["T", "O", "I"])
    pp.add_argument("--oracle", choices=["orbit", "full"], default="orbit")
    pp.add_argument("--json", metavar="PATH")
    pp.set_defaults(func=cmd_polytope)

    c = sub.add_parser("complex", help="emit or verify a chain complex")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--label", choices=["KO", "KI", "KT", "KS3", "KO_TZ", "KT_MIN"])
    src.add_argument("--input", metavar="PATH", help="verify a complex read from JSON")
    c.add_argument("--emit", metavar="PATH")
    c.add_argument("--verify", action="store_true")
    c.add_argument("--json", metavar="PATH")
    c.set_defaults(func=cmd_complex)

    h = sub.add_parser("homology", help="sphere, quotient or flag manifold homology")
    h.add_argument("--target", required=True, choices=["sphere", "quotient", "flag"])
    h.add_argument("--group", choices=["T", "O", "I"])
    h.add_argument("--n", type=int, default=1)
    h.add_argument("--json", metavar="PATH")
    h.set_defaults(func=cmd_homology)

    co = sub.add_parser("cohomology", help="integral group cohomology table")
    co.add_argument("--group", required=True, choices=["T", "O", "I"])
    co.add_argument("--qmax", type=int, default=12)
    co.add_argument("--json", metavar="PATH")
    co.set_defaults(func=cmd_cohomology)

    v = sub.add_parser("verify-all", help="run every check")
    v.add_argument("--fast", action="store_true", help="skip the I oracle and n=2 spheres")
    v.add_argument("--json", metavar="PATH")
    v.set_defaults(func=cmd_verify_all)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    if args.command == "complex" and args.label and not (args.emit or args.verify):
        print("binpoly complex: one of --emit or --verify is required with --label", file=sys.stderr)
        return 2
    try:
        report = args.func(args, out)
    except UsageError as exc:
        print(f"binpoly {args.command}: {exc}", file=sys.stderr)
        return 2
    except BinpolyError as exc:
        print(f"binpoly {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if report is None:
        return 0
    _emit(report, getattr(args, "json", None), out)
    return 0 if report.overall == "pass" else 1


if __name__ == "__main__":
    sys.exit(main())
