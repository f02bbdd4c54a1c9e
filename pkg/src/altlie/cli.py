"""Command-line driver: ``altlie <subcommand> [flags]``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import appell, cohomology, grouplaw
from .errors import AltlieError
from .kernel import _backend
from .lie import build_algebra, checks, prop_phi, structure_dict
from .reps import contraction_limit, rep_operators, verify_representation
from .suite import FORMATS, MODES, SuiteConfig, run_suite


def _dump(data):
    return json.dumps(data, ensure_ascii=False, indent=2) + "\n"


def _common():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--window", type=int, default=10, help="index bound for graded checks (default 10)")
    p.add_argument("--cap", type=int, default=8, help="series truncation degree (default 8)")
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--mode", choices=MODES, default="calibrated",
                   help="differential-operator representation as printed or calibrated")
    p.add_argument("--backend", choices=("auto", "python", "compiled"), default="auto",
                   help="sparse kernel implementation (results are identical)")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="altlie", description="Exact verification of the alt / W algebra results.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-all", parents=[common], help="run every check and print the suite report")
    p.add_argument("--max-j", type=int, default=4)
    p.add_argument("--max-k", type=int, default=4)
    p.add_argument("--timing", action="store_true", help="include per-check wall time (not deterministic)")

    p = sub.add_parser("jacobi", parents=[common], help="Jacobi identity on basis triples")
    p.add_argument("--algebra", default="alt")

    p = sub.add_parser("iso", parents=[common], help="check the map alt -> sl2 (x) R[e]/e^2")
    p.add_argument("--drop-half", action="store_true", help="omit the 1/2 on X1 (expected to fail)")

    p = sub.add_parser("h2", parents=[common], help="dimension of the second cohomology")
    p.add_argument("--algebra", default="alt")

    p = sub.add_parser("cocycle", parents=[common], help="closedness of the Virasoro and ω cocycles")
    p.add_argument("--which", choices=("vir", "omega", "both"), default="both")

    sub.add_parser("rep-check", parents=[common], help="differential-operator representation of W")
    sub.add_parser("contract", parents=[common], help="contraction of vir+vir onto W")

    p = sub.add_parser("grouplaw", parents=[common], help="second-kind coordinates of the partial product")
    p.add_argument("--symbolic", action="store_true", help="print the six coordinates")
    p.add_argument("--check", action="store_true", help="replay the oracle and print the discrepancy report")

    p = sub.add_parser("appell", parents=[common], help="table of the canonical Appell polynomials")
    p.add_argument("--max-j", type=int, default=2)
    p.add_argument("--max-k", type=int, default=2)

    p = sub.add_parser("export", parents=[common], help="write a deterministic data file")
    p.add_argument("what", choices=("structure", "appell", "h2", "grouplaw"))
    p.add_argument("--algebra", default="alt")
    p.add_argument("--max-j", type=int, default=2)
    p.add_argument("--max-k", type=int, default=2)
    p.add_argument("--output", "-o", default="-", help="destination file ('-' for stdout)")
    return parser


# -- subcommands -------------------------------------------------------------

def _config(args, **extra):
    return SuiteConfig(window=args.window, cap=args.cap, mode=args.mode, format=args.format, **extra)


def cmd_verify_all(args):
    cfg = _config(args, max_j=args.max_j, max_k=args.max_k, timing=args.timing)
    report = run_suite(cfg)
    return report.render(), 0 if report.ok else 1


def cmd_jacobi(args):
    alg = build_algebra(args.algebra)
    r = checks.jacobi_check(alg, window=args.window)
    return _dump({**r.to_dict(), "ok": r.ok}), 0 if r.ok else 1


def cmd_iso(args):
    r = checks.check_morphism(prop_phi(half=not args.drop_half))
    return _dump(r.to_dict()), 0 if r.ok and r.isomorphism else 1


def cmd_h2(args):
    r = cohomology.h2_dimension(build_algebra(args.algebra))
    return _dump(r.to_dict()), 0


def cmd_cocycle(args):
    out = {}
    if args.which in ("vir", "both"):
        vect = build_algebra("vect")
        out["vir"] = cohomology.d2(cohomology.virasoro_cocycle(vect), args.window).to_dict()
    if args.which in ("omega", "both"):
        w = build_algebra("w_window")
        out["omega"] = cohomology.d2(cohomology.omega_cocycle(w), args.window).to_dict()
    ok = all(v["is_cocycle"] for v in out.values())
    return _dump(out), 0 if ok else 1


def cmd_rep_check(args):
    r = verify_representation(rep_operators(args.mode), window=args.window)
    return _dump({"mode": args.mode, "window": args.window, **r.to_dict()}), 0 if r.ok else 1


def cmd_contract(args):
    r = contraction_limit(window=args.window)
    return _dump(r.to_dict()), 0 if r.ok else 1


def _grouplaw_data(args):
    out = {}
    if args.symbolic or not args.check:
        out["coordinates"] = grouplaw.factor_second_kind(grouplaw.partial_product()).to_dict()
    if args.check:
        out["leibniz"] = grouplaw.leibniz_discrepancy_report().to_dict()
    return out


def cmd_grouplaw(args):
    return _dump(_grouplaw_data(args)), 0


def _appell_text(args):
    if args.max_j < 0 or args.max_k < 0:
        raise ValueError("--max-j and --max-k must be non-negative")
    table = appell.appell_table(args.max_j, args.max_k)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["j", "k", "h_jk"])
        writer.writerows(table.rows())
        return buf.getvalue(), True
    total = args.max_j + args.max_k
    cap = max(args.cap, total)
    cons = appell.consistency_check(args.max_j, args.max_k, cap=cap, table=table)
    if args.format == "text":
        lines = [f"h[{j},{k}] = {h}" for j, k, h in table.rows()]
        lines.append(f"consistency: {'pass' if cons.ok else 'fail'}")
        return "\n".join(lines) + "\n", cons.ok
    return _dump({**table.to_dict(), "consistency": cons.to_dict()}), cons.ok


def cmd_appell(args):
    text, ok = _appell_text(args)
    return text, 0 if ok else 1


def cmd_export(args):
    if args.what == "structure":
        alg = build_algebra(args.algebra)
        text = _dump(structure_dict(alg, None if alg.is_finite else args.window))
    elif args.what == "h2":
        text = _dump(cohomology.h2_dimension(build_algebra(args.algebra)).to_dict())
    elif args.what == "grouplaw":
        args.symbolic, args.check = True, True
        text = _dump(_grouplaw_data(args))
    else:
        text, _ = _appell_text(args)
    if args.output == "-":
        return text, 0
    try:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise AltlieError(f"cannot write {args.output}: {exc.strerror or exc}") from None
    return "", 0


COMMANDS = {
    "verify-all": cmd_verify_all,
    "jacobi": cmd_jacobi,
    "iso": cmd_iso,
    "h2": cmd_h2,
    "cocycle": cmd_cocycle,
    "rep-check": cmd_rep_check,
    "contract": cmd_contract,
    "grouplaw": cmd_grouplaw,
    "appell": cmd_appell,
    "export": cmd_export,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.window < 1:
        parser.error("--window must be at least 1")
    if args.cap < 0:
        parser.error("--cap must be non-negative")
    if args.backend != "auto":
        try:
            _backend.use(args.backend)
        except RuntimeError as exc:
            parser.error(str(exc))
    if args.command == "verify-all":
        try:
            _config(args, max_j=args.max_j, max_k=args.max_k).validate()
        except ValueError as exc:
            parser.error(str(exc))
    try:
        text, status = COMMANDS[args.command](args)
    except (AltlieError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"altlie: error: {msg}", file=sys.stderr)
        return 2
    sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
