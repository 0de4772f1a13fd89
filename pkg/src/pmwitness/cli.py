"""Command-line interface.

    pmwitness simulate --prep 00 [--qwp THETA --hwp ALPHA] [--depol A]
    pmwitness ingest --file data.csv
    pmwitness witness (--file data.csv | --ideal) [--depol-mode] [--depol A]
    pmwitness oracle (--file data.csv | --ideal) [--dump-lp PATH]
    pmwitness sweep --steps 7 --beta-step 1 [--out sweep.csv]
    pmwitness thresholds

JSON goes to stdout; ``--verbose`` adds a human summary on stderr.  Exit
codes: 0 success, 1 input or usage error, 2 domain error.  Every error is a
single stderr line ``<ErrorCode>: <message>``.
"""
from __future__ import annotations

import argparse
import math
import sys

from . import data_io, jones
from .errors import DomainError, PMWitnessError
from .geometry import (
    DISK_TOL_EXP,
    LABELS,
    PROB_TOL_EXP,
    find_equivalence,
    ideal_quad,
    noise_delta,
)
from .ontic import lp
from .witnesses import STATED_THRESHOLDS, THRESHOLD_BRACKETS, build_report, solve_thresholds, table_rows


class UsageError(Exception):
    code = "UsageError"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--file", help="intensity CSV (prep,basis,i1,i2)")
    src.add_argument("--ideal", action="store_true", help="use the ideal preparations")
    p.add_argument("--depol", type=float, default=0.0,
                   help="shrink every preparation towards the origin by mixing weight A")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pmwitness",
                     description="Noise-robust contextuality witnesses for the four-preparation scenario.")
    parser.add_argument("--tol-prob", type=float, default=PROB_TOL_EXP,
                        help="normalisation tolerance for ingested probabilities (default %(default)g)")
    parser.add_argument("--tol-geom", type=float, default=DISK_TOL_EXP,
                        help="slack on unit-disk membership of ingested data (default %(default)g)")
    parser.add_argument("--max-denominator", type=int, default=lp.DEFAULT_MAX_DENOMINATOR,
                        help="denominator bound when quantising data for the LP")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="Jones simulation and tomography of one preparation")
    p.add_argument("--prep", required=True, choices=LABELS)
    p.add_argument("--qwp", type=float, help="QWP angle (radians unless --degrees)")
    p.add_argument("--hwp", type=float, help="HWP angle (radians unless --degrees)")
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--depol", type=float, default=0.0, help="depolarizing mixing weight a")

    p = sub.add_parser("ingest", help="parse intensities and print the preparation vectors")
    p.add_argument("--file", required=True)

    p = sub.add_parser("witness", help="evaluate all witnesses")
    _add_source(p)
    p.add_argument("--depol-mode", action="store_true", help="use the depolarizing-noise bounds")
    p.add_argument("--no-lp", action="store_true", help="skip the exact LP oracle")

    p = sub.add_parser("oracle", help="exact LP verdict on noncontextual models")
    _add_source(p)
    p.add_argument("--dump-lp", metavar="PATH", help="write the feasibility and TV programs here")

    p = sub.add_parser("sweep", help="depolarizing sweep dataset (CSV)")
    p.add_argument("--steps", type=int, default=7)
    p.add_argument("--beta-step", type=float, default=1.0, help="HWP step in degrees")
    p.add_argument("--from-zero", action="store_true", help="include the undepolarized point")
    p.add_argument("--out", help="output CSV path (stdout if omitted)")

    sub.add_parser("thresholds", help="solve the five noise thresholds")
    return parser


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _load_quad(args):
    if args.ideal:
        quad = ideal_quad()
    else:
        records = data_io.parse_intensities(_read(args.file))
        quad = data_io.quad_from_records(records, tol_prob=args.tol_prob, tol_geom=args.tol_geom)
    if args.depol:
        quad = quad.map(lambda v: jones.depolarize(v, args.depol))
    return quad


def _log(args, msg: str) -> None:
    if args.verbose:
        print(msg, file=getattr(args, "stderr", None) or sys.stderr)


def cmd_simulate(args) -> dict:
    conv = math.radians if args.degrees else float
    theta = None if args.qwp is None else conv(args.qwp)
    alpha = None if args.hwp is None else conv(args.hwp)
    probs, stokes = jones.simulate(args.prep, theta, alpha, args.depol)
    _log(args, f"P{args.prep}: x={stokes.x:+.6f} y={stokes.y:+.6f}")
    return {
        "prep": args.prep,
        "probs": {k: data_io.sig6(v) for k, v in probs.as_dict().items()},
        "stokes": [data_io.sig6(stokes.x), data_io.sig6(stokes.y)],
        "s_z": data_io.sig6(probs.s_z),
    }


def cmd_ingest(args) -> dict:
    records = data_io.parse_intensities(_read(args.file))
    quad = data_io.quad_from_records(records, tol_prob=args.tol_prob, tol_geom=args.tol_geom)
    out = {"quad": {lab: [data_io.sig6(v.x), data_io.sig6(v.y)] for lab, v in quad.items()}}
    s_z = data_io.s_z_from_records(records)
    if s_z:
        out["s_z"] = {k: data_io.sig6(v) for k, v in s_z.items()}
    _log(args, f"{len(records)} records, noise delta {float(noise_delta(quad)):.6f}")
    return out


def _lp_parts(quad, args):
    verdict = lp.nc_feasible(quad, max_denominator=args.max_denominator)
    tv = lp.min_parity_tv(quad, max_denominator=args.max_denominator)
    verdict.min_parity_tv = tv.min_parity_tv
    verdict.certificate_verified = verdict.certificate_verified and tv.certificate_verified
    gap = lp.bodp_gap(quad, max_denominator=args.max_denominator)
    half_gap = lp.bodp_gap(quad, equivalence=False, max_denominator=args.max_denominator)
    half_tv = lp.min_parity_tv(quad, equivalence=False, max_denominator=args.max_denominator)
    return verdict, gap, (half_tv.min_parity_tv, half_gap)


def cmd_witness(args) -> dict:
    quad = _load_quad(args)
    w = find_equivalence(quad)
    report = build_report(quad, w, "depolarizing" if args.depol_mode else "plain")
    verdict = gap = half = None
    if not args.no_lp:
        verdict, gap, half = _lp_parts(quad, args)
    _log(args, "verdicts: " + ", ".join(f"{k}={v}" for k, v in report.verdicts.items()))
    return data_io.report_dict(report, verdict, gap=gap, half_parity=half,
                               thresholds=solve_thresholds(), tabulated=table_rows(quad, tabulated=True))


def cmd_oracle(args) -> dict:
    quad = _load_quad(args)
    verdict, gap, half = _lp_parts(quad, args)
    if args.dump_lp:
        rq, w, _ = lp.exact_inputs(quad, max_denominator=args.max_denominator)
        with open(args.dump_lp, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("# program: feasibility\n")
            lp.feasibility_program(rq, w.p, w.q).dump(fh)
            fh.write("# program: parity_tv\n")
            lp.parity_tv_program(rq, w.p, w.q).dump(fh)
    _log(args, f"noncontextual model exists: {verdict.feasible}; bodp gap {float(gap):.6f}")
    out = data_io.lp_dict(verdict, gap, half)
    if verdict.feasible and verdict.witness_model:
        out["witness_model"] = {lab: {k: data_io._exact(m) for k, m in mu.as_dict().items()}
                                for lab, mu in verdict.witness_model.items()}
    return out


def sweep_points(steps: int, beta_step: float, from_zero: bool = False) -> list[data_io.SweepPoint]:
    a_values = jones.beta_sweep(steps, beta_step, include_zero=from_zero)
    points = []
    for lab in LABELS:
        base = jones.prepared_vector(lab)
        for a in a_values:
            points.append(data_io.sweep_point(lab, a, jones.depolarize(base, a)))
    return points


def cmd_sweep(args):
    if args.steps < 0:
        raise UsageError("--steps must be nonnegative")
    text = data_io.emit_sweep(sweep_points(args.steps, args.beta_step, args.from_zero))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        _log(args, f"wrote {text.count(chr(10)) - 1} rows to {args.out}")
        return None
    return text


def cmd_thresholds(args) -> dict:
    t = solve_thresholds()
    trunc = t.truncated()
    out = {}
    for k, root in t.as_dict().items():
        out[k] = {
            "root": data_io.sig6(root),
            "truncated": trunc[k],
            "stated": STATED_THRESHOLDS[k],
            "bracket": list(THRESHOLD_BRACKETS[k]),
            "matches": trunc[k] == STATED_THRESHOLDS[k],
        }
    _log(args, " ".join(f"{k}={v['root']}" for k, v in out.items()))
    return out


COMMANDS = {
    "simulate": cmd_simulate,
    "ingest": cmd_ingest,
    "witness": cmd_witness,
    "oracle": cmd_oracle,
    "sweep": cmd_sweep,
    "thresholds": cmd_thresholds,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.stderr = stderr
        result = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"UsageError: {exc}", file=stderr)
        return 1
    except DomainError as exc:
        print(f"{exc.code}: {exc}", file=stderr)
        return 2
    except PMWitnessError as exc:
        print(f"{exc.code}: {exc}", file=stderr)
        return 1
    except OSError as exc:
        print(f"IOError: {exc.strerror or exc}: {exc.filename or ''}".rstrip(": "), file=stderr)
        return 1
    if result is None:
        return 0
    stdout.write(result if isinstance(result, str) else data_io.dumps(result))
    return 0


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
