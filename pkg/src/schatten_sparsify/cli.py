"""Command line entry point: ``schatten-sparsify <command> ...``.

Exit codes: 0 success, 1 a verification check failed, 2 usage, parse or I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import attacks
from .instances import (INSTANCE_FILES, HardInstance, build_instance, load_instance,
                        save_instance)
from .mtxio import ParseError, atomic_write_text, format_value, read_matrix
from .spectra import SchattenExponent, lp_norm, schatten_norm, singular_values
from .verify import DEFAULT_TOL, check_instance
from .vectors import promote_sparsifier, promotion_budget

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    """Bad input detected after argument parsing; maps to exit code 2."""


def _exponent(text: str) -> SchattenExponent:
    try:
        return SchattenExponent.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _exponent_list(text: str) -> list[SchattenExponent]:
    return [_exponent(t) for t in text.split(",") if t.strip()]


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _config(args: argparse.Namespace) -> dict:
    """Resolved flags as JSON-friendly values."""
    out = {}
    for key, val in sorted(vars(args).items()):
        if key == "func":
            continue
        if isinstance(val, SchattenExponent):
            val = str(val)
        elif isinstance(val, list):
            val = [str(v) if isinstance(v, SchattenExponent) else v for v in val]
        elif isinstance(val, Path):
            val = str(val)
        out[key] = val
    return out


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def cmd_generate(args) -> int:
    try:
        inst = build_instance(args.case, args.k, args.p, args.q)
    except (ValueError, MemoryError) as exc:
        raise UsageError(f"invalid instance parameters: {exc}") from None
    save_instance(inst, args.out)
    print(f"wrote case {inst.case_id} instance (n={inst.n}) to {args.out}")
    return EXIT_OK


def _load(directory) -> HardInstance:
    d = Path(directory)
    missing = [f for f in INSTANCE_FILES if not (d / f).is_file()]
    if missing:
        raise UsageError(f"instance directory {d} is missing {', '.join(missing)}")
    try:
        return load_instance(d)
    except (ParseError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"corrupt instance in {d}: {exc}") from None


def cmd_verify(args) -> int:
    inst = _load(args.instance)
    report = check_instance(inst, args.eps, args.tol)
    doc = report.to_dict()
    doc["config"] = _config(args)
    report_path = Path(args.report) if args.report else Path(args.instance) / "report.json"
    atomic_write_text(report_path, _dump(doc))
    for rec in report.checks:
        print(f"{'PASS' if rec.passed else 'FAIL'}  {rec.name}: lhs={rec.lhs:.17g} rhs={rec.rhs:.17g}")
    for w in report.warnings:
        print(f"WARNING  {w}")
    return EXIT_OK if report.passed else EXIT_FAILED


def _instance_from_args(args):
    if args.instance:
        return _load(args.instance)
    if None in (args.case, args.k, args.p, args.q):
        raise UsageError("give --instance DIR or all of --case, --k, --p, --q")
    try:
        return build_instance(args.case, args.k, args.p, args.q)
    except ValueError as exc:
        raise UsageError(f"invalid instance parameters: {exc}") from None


def cmd_attack(args) -> int:
    inst = _instance_from_args(args)
    try:
        results = attacks.sweep(inst, args.strategy, args.budget_frac, args.seed, q=args.eval_q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    atomic_write_text(args.out, attacks.results_csv(results))
    summary = attacks.summarize(results, eps0=inst.eps0)
    summary["config"] = _config(args)
    summary["instance"] = inst.metadata()
    summary_path = Path(args.summary) if args.summary else Path(args.out).with_suffix(".summary.json")
    atomic_write_text(summary_path, _dump(summary))
    for cell in summary["cells"]:
        print(f"{cell['strategy']:>8} frac={cell['budget_frac']:<8g} "
              f"min_rel_error={cell['min_rel_error']:.6g}")
    return EXIT_OK


def _read_vector(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        x = np.array([float(t) for t in text.split()], dtype=np.float64)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    if x.size == 0 or not np.all(np.isfinite(x)):
        raise UsageError(f"{path}: expected a non-empty list of finite numbers")
    return x


def cmd_vec_sparsify(args) -> int:
    x = _read_vector(args.input)
    try:
        budget = promotion_budget(x, args.eps, args.p, args.q)
        sparse = promote_sparsifier(x, args.eps, args.p, args.q, budget=budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    err = lp_norm(x - sparse, args.q) / lp_norm(x, args.q)
    atomic_write_text(args.out, "".join(f"{format_value(v)}\n" for v in sparse))
    doc = {
        "s": budget.s,
        "c_exact": budget.c_exact,
        "c_rounded": budget.c_rounded,
        "nnz": int(np.count_nonzero(sparse)),
        "achieved_lq_error": err,
        "guarantee_holds": err <= args.eps,
        "config": _config(args),
    }
    text = _dump(doc)
    if args.report:
        atomic_write_text(args.report, text)
    sys.stdout.write(text)
    return EXIT_OK


def _norm_key(p: SchattenExponent) -> str:
    return f"S_{p}"


def cmd_norms(args) -> int:
    try:
        a = read_matrix(args.matrix)
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except ParseError as exc:
        raise UsageError(f"{args.matrix}: {exc}") from None
    spec = singular_values(a)
    out = {_norm_key(p): schatten_norm(spec, p) for p in args.p}
    sys.stdout.write(json.dumps(out) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="schatten-sparsify", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a hard instance to a directory")
    g.add_argument("--case", type=int, required=True, choices=(1, 2, 3, 4))
    g.add_argument("--k", type=int, required=True, help="log2 of the dimension")
    g.add_argument("--p", type=_exponent, required=True)
    g.add_argument("--q", type=_exponent, required=True)
    g.add_argument("--out", type=Path, required=True)
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check P1-P3 of a generated instance")
    v.add_argument("--instance", type=Path, required=True)
    v.add_argument("--eps", type=float, required=True)
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.add_argument("--report", type=Path, help="default: INSTANCE/report.json")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("attack", help="sweep sparsification strategies against B")
    a.add_argument("--instance", type=Path)
    a.add_argument("--case", type=int, choices=(1, 2, 3, 4))
    a.add_argument("--k", type=int)
    a.add_argument("--p", type=_exponent)
    a.add_argument("--q", type=_exponent)
    a.add_argument("--eval-q", type=_exponent, help="Schatten exponent for the error; default q")
    a.add_argument("--strategy", type=lambda t: [s.strip() for s in t.split(",") if s.strip()],
                   default=list(attacks.STRATEGIES), help="comma list of topk,uniform,weighted")
    a.add_argument("--budget-frac", type=_float_list, default=[1 / 16, 1 / 8, 1 / 4],
                   help="comma list of fractions of nnz(B)")
    a.add_argument("--seed", type=_int_list, default=[0], help="comma list of seeds")
    a.add_argument("--out", type=Path, default=Path("attack.csv"))
    a.add_argument("--summary", type=Path, help="default: OUT with .summary.json suffix")
    a.set_defaults(func=cmd_attack)

    s = sub.add_parser("vec-sparsify", help="promote an lp sparsifier of a vector to lq")
    s.add_argument("--input", type=Path, required=True, help="whitespace-separated vector")
    s.add_argument("--eps", type=float, required=True)
    s.add_argument("--p", type=_exponent, required=True)
    s.add_argument("--q", type=_exponent, required=True)
    s.add_argument("--out", type=Path, required=True)
    s.add_argument("--report", type=Path)
    s.set_defaults(func=cmd_vec_sparsify)

    n = sub.add_parser("norms", help="print Schatten norms of a matrix file as JSON")
    n.add_argument("--matrix", type=Path, required=True)
    n.add_argument("--p", type=_exponent_list, default=[SchattenExponent(1.0),
                                                          SchattenExponent(2.0),
                                                          SchattenExponent(math.inf)])
    n.set_defaults(func=cmd_norms)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
