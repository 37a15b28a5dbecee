"""Command-line front end.

Subcommands expose the moment table, affinity quadratures, decay constants,
Taylor coefficients, the classifier, truncated series sums, and the seeded
simulator, each emitting a canonical report on stdout.

Report layout (fixed key order): command, config, results, version, and seed
when the command is stochastic.  JSON floats use shortest round-trip decimals
(Python repr), so a report re-parses and re-serializes to identical bytes.
Exit codes: 0 success, 2 usage or spec-parse error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import __version__
from .cauchy import InputError
from .hellinger import (
    QUADRATIC_CANDIDATES,
    affinity_additive,
    affinity_multiplicative,
    quadratic_coefficient,
    taylor_coefficient_a,
)
from .kakutani import (
    ClassificationResult,
    Constant,
    Explicit,
    Geometric,
    PowerLaw,
    ProductModel,
    SequenceSpec,
    classify,
    kakutani_partial_sum,
)
from .moments import gamma_moment, to_real
from .montecarlo import RunConfig, simulate_loglr, sqrt_lr_check
from .quadrature import DEFAULT_TOL, QuadratureError

__all__ = ["SpecParseError", "parse_spec", "run", "main", "GOLDEN_SEED"]

# repository-wide seed for reproduced stochastic results
GOLDEN_SEED = 42424242

_USAGE_ERROR = 2
_NUMERIC_ERROR = 3


class SpecParseError(ValueError):
    """Sequence spec rejected; carries a position-annotated message."""


def _fail(message: str, position: int) -> "SpecParseError":
    return SpecParseError(f"column {position + 1}: {message}")


_SPEC_FIELDS = {"power": ("a", "p"), "geom": ("a", "r"), "const": ("c",)}


def parse_spec(s: str) -> SequenceSpec:
    """Parse a sequence spec string.

    Grammar: ``power:a=<float>,p=<float>`` | ``geom:a=<float>,r=<float>`` |
    ``const:c=<float>`` | ``file:<path>`` where the file holds one decimal
    literal per line and ``#``-prefixed comment lines are ignored.
    """
    head, sep, rest = s.partition(":")
    if not sep:
        raise _fail("expected '<kind>:' prefix (power, geom, const, or file)", len(s))
    if head == "file":
        return _parse_file_spec(rest)
    if head not in _SPEC_FIELDS:
        raise _fail(f"unknown spec kind {head!r}", 0)
    wanted = _SPEC_FIELDS[head]
    seen: dict[str, float] = {}
    offset = len(head) + 1
    for chunk in rest.split(","):
        key, eq, text = chunk.partition("=")
        if not eq or not key:
            raise _fail(f"expected key=value, got {chunk!r}", offset)
        if key not in wanted:
            raise _fail(f"unknown parameter {key!r} for {head!r}", offset)
        if key in seen:
            raise _fail(f"duplicate parameter {key!r}", offset)
        try:
            value = float(text)
        except ValueError:
            raise _fail(f"not a decimal literal: {text!r}", offset + len(key) + 1) from None
        seen[key] = value
        offset += len(chunk) + 1
    for key in wanted:
        if key not in seen:
            raise _fail(f"missing parameter {key!r} for {head!r}", len(s))
    try:
        if head == "power":
            return PowerLaw(amplitude=seen["a"], exponent=seen["p"])
        if head == "geom":
            return Geometric(amplitude=seen["a"], ratio=seen["r"])
        return Constant(seen["c"])
    except InputError as e:
        raise _fail(str(e), len(head) + 1) from None


def _parse_file_spec(path: str) -> Explicit:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise SpecParseError(f"cannot read spec file {path!r}: {e}") from None
    values = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            v = float(line)
        except ValueError:
            raise SpecParseError(
                f"{path}:{lineno}: column 1: not a decimal literal: {line!r}"
            ) from None
        if v != v or v in (float("inf"), float("-inf")):
            raise SpecParseError(f"{path}:{lineno}: column 1: non-finite value {line!r}")
        values.append(v)
    if not values:
        raise SpecParseError(f"{path}: no values found")
    return Explicit(tuple(values))


def _jsonify(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return float(obj) if isinstance(obj, float) else obj


def _report(command, config, results, seed=None) -> dict:
    report = {
        "command": list(command),
        "config": _jsonify(config),
        "results": _jsonify(results),
        "version": __version__,
    }
    if seed is not None:
        report["seed"] = seed
    return report


def _classification_payload(res: ClassificationResult) -> dict:
    return {"verdict": res.verdict, "method": res.method, "evidence": res.evidence}


def _coefficient_string(pr) -> str:
    if pr.denominator == 1:
        return str(pr.numerator)
    return f"{pr.numerator}/{pr.denominator}"


def _build_model(args) -> ProductModel:
    gamma = parse_spec(args.gamma) if getattr(args, "gamma", None) else Constant(1.0)
    return ProductModel(kind=args.kind, perturbation=parse_spec(args.spec), base_scale=gamma)


# ---------------------------------------------------------------------------
# subcommand handlers: each returns (config, results, seed-or-None, csv_rows)
# csv_rows is None (flatten results) or (header, rows)


def _cmd_moment(args):
    pr = gamma_moment(args.r, args.s)
    results = {"coefficient": _coefficient_string(pr), "value": to_real(pr)}
    return {"r": args.r, "s": args.s}, results, None, None


def _cmd_affinity(args):
    if args.additive is not None:
        config = {"mode": "additive", "zeta": args.additive, "tol": args.tol}
        q = affinity_additive(args.additive, tol=args.tol)
    else:
        config = {"mode": "multiplicative", "sigma": args.multiplicative, "tol": args.tol}
        q = affinity_multiplicative(args.multiplicative, tol=args.tol)
    results = {"value": q.value, "error_estimate": q.error_estimate, "node_count": q.node_count}
    return config, results, None, None


def _cmd_coeff(args):
    est = quadratic_coefficient(args.case)
    results = {
        "value": est.value,
        "step_grid": list(est.step_grid),
        "extrapolation_residual": est.extrapolation_residual,
    }
    if args.case == "additive":
        results["reference_candidates"] = dict(QUADRATIC_CANDIDATES)
    else:
        results["reference_candidates"] = {"1/16": QUADRATIC_CANDIDATES["1/16"]}
    return {"case": args.case}, results, None, None


def _cmd_taylor(args):
    return {"ell": args.ell}, {"ell": args.ell, "value": taylor_coefficient_a(args.ell)}, None, None


def _cmd_classify(args):
    model = _build_model(args)
    config = {"kind": args.kind, "spec": args.spec, "gamma": args.gamma or "const:c=1"}
    return config, _classification_payload(classify(model)), None, None


def _cmd_sum(args):
    model = _build_model(args)
    part = kakutani_partial_sum(model, args.N, tol=args.tol)
    config = {
        "kind": args.kind,
        "spec": args.spec,
        "gamma": args.gamma or "const:c=1",
        "N": args.N,
        "tol": args.tol,
    }
    terms = [
        {"n": i + 1, "weighted": w, "K_n": k, "S_N": s}
        for i, (w, k, s) in enumerate(zip(part.weighted, part.summands, part.cumulative))
    ]
    results = {
        "S_N": part.total,
        "tail_low": part.tail_low,
        "tail_high": part.tail_high,
        "tail_note": part.tail_note,
        "terms": terms,
    }
    rows = [[t["n"], t["weighted"], t["K_n"], t["S_N"]] for t in terms]
    return config, results, None, (["n", "weighted", "K_n", "S_N"], rows)


def _cmd_simulate(args):
    model = _build_model(args)
    checkpoints = tuple(int(c) for c in args.checkpoints.split(","))
    cfg = RunConfig(seed=args.seed, trials=args.trials, n_factors=args.N, checkpoints=checkpoints)
    stats = simulate_loglr(model, cfg)
    config = {
        "kind": args.kind,
        "spec": args.spec,
        "gamma": args.gamma or "const:c=1",
        "N": args.N,
        "trials": args.trials,
        "checkpoints": list(cfg.checkpoints),
    }
    results = {
        "checkpoints": list(stats.checkpoints),
        "loglr_q10": list(stats.loglr_q10),
        "loglr_q50": list(stats.loglr_q50),
        "loglr_q90": list(stats.loglr_q90),
        "sqrt_lr_mean": list(stats.sqrt_lr_mean),
        "sqrt_lr_std_error": list(stats.sqrt_lr_std_error),
    }
    rows = [
        [c, q10, q50, q90, m, se]
        for c, q10, q50, q90, m, se in zip(
            stats.checkpoints,
            stats.loglr_q10,
            stats.loglr_q50,
            stats.loglr_q90,
            stats.sqrt_lr_mean,
            stats.sqrt_lr_std_error,
        )
    ]
    header = ["checkpoint", "loglr_q10", "loglr_q50", "loglr_q90", "sqrt_lr_mean", "sqrt_lr_std_error"]
    return config, results, args.seed, (header, rows)


def _cmd_report(args):
    if args.suite != "paper":
        raise InputError(f"unknown suite {args.suite!r}")
    results = _paper_suite()
    return {"suite": args.suite}, results, GOLDEN_SEED, None


def _paper_suite() -> dict:
    moments = []
    for s in range(1, 9):
        for r in range(0, s):
            pr = gamma_moment(r, s)
            moments.append(
                {"r": r, "s": s, "coefficient": _coefficient_string(pr), "value": to_real(pr)}
            )
    taylor = [{"ell": ell, "value": taylor_coefficient_a(ell)} for ell in range(0, 9)]
    coeffs = {}
    for case in ("additive", "multiplicative"):
        est = quadratic_coefficient(case)
        entry = {
            "value": est.value,
            "extrapolation_residual": est.extrapolation_residual,
            "reference_candidates": dict(QUADRATIC_CANDIDATES)
            if case == "additive"
            else {"1/16": QUADRATIC_CANDIDATES["1/16"]},
        }
        coeffs[case] = entry
    affinities = [
        {"sigma": s, "value": affinity_multiplicative(s).value} for s in (1.1, 1.5, 2.0, 3.0, 10.0)
    ]
    verdicts = []
    for kind in ("additive", "multiplicative"):
        for label, spec in (
            ("power:a=1,p=0.4", PowerLaw(1.0, 0.4)),
            ("power:a=1,p=0.5", PowerLaw(1.0, 0.5)),
            ("power:a=1,p=0.51", PowerLaw(1.0, 0.51)),
            ("power:a=1,p=0.75", PowerLaw(1.0, 0.75)),
            ("power:a=1,p=1", PowerLaw(1.0, 1.0)),
            ("power:a=1,p=2", PowerLaw(1.0, 2.0)),
            ("const:c=0.1", Constant(0.1)),
            ("geom:a=1,r=0.9", Geometric(1.0, 0.9)),
        ):
            model = ProductModel(kind=kind, perturbation=spec)
            verdicts.append({"kind": kind, "spec": label, "verdict": classify(model).verdict})
    checks = []
    for kind, spec, label in (
        ("additive", PowerLaw(1.0, 1.0), "power:a=1,p=1"),
        ("multiplicative", Constant(0.3), "const:c=0.3"),
    ):
        model = ProductModel(kind=kind, perturbation=spec)
        cfg = RunConfig(seed=GOLDEN_SEED, trials=10**4, n_factors=50, checkpoints=(50,))
        chk = sqrt_lr_check(model, cfg)
        checks.append(
            {
                "kind": kind,
                "spec": label,
                "N": 50,
                "trials": 10**4,
                "mc_value": chk.mc_value,
                "mc_std_error": chk.mc_std_error,
                "series_value": chk.series_value,
                "agree": chk.agree,
            }
        )
    return {
        "moment_table": moments,
        "taylor_coefficients": taylor,
        "quadratic_coefficients": coeffs,
        "multiplicative_affinities": affinities,
        "classifier_verdicts": verdicts,
        "sqrt_lr_checks": checks,
    }


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cauchyprod",
        description="Equivalence/singularity toolkit for countable products of Cauchy measures",
    )
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("moment", help="exact even-moment integral as a rational multiple of pi")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.set_defaults(handler=_cmd_moment)

    p = sub.add_parser("affinity", help="Hellinger affinity by adaptive quadrature")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--additive", type=float, metavar="ZETA")
    group.add_argument("--multiplicative", type=float, metavar="SIGMA")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(handler=_cmd_affinity)

    p = sub.add_parser("coeff", help="quadratic decay constant of the dichotomy summand")
    p.add_argument("--case", choices=("additive", "multiplicative"), required=True)
    p.set_defaults(handler=_cmd_coeff)

    p = sub.add_parser("taylor", help="Taylor coefficient of I(sigma) about sigma=1")
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(handler=_cmd_taylor)

    p = sub.add_parser("classify", help="exact equivalence/singularity verdict")
    p.add_argument("--kind", choices=("additive", "multiplicative"), required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--gamma", default=None)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("sum", help="truncated dichotomy series with tail bracket")
    p.add_argument("--kind", choices=("additive", "multiplicative"), required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--gamma", default=None)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.set_defaults(handler=_cmd_sum)

    p = sub.add_parser("simulate", help="seeded likelihood-ratio trajectories")
    p.add_argument("--kind", choices=("additive", "multiplicative"), required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--gamma", default=None)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--checkpoints", required=True, metavar="CSV_INTS")
    p.set_defaults(handler=_cmd_simulate)

    p = sub.add_parser("report", help="full reproduction suite")
    p.add_argument("--suite", default="paper")
    p.set_defaults(handler=_cmd_report)

    return parser


def _flatten(prefix: str, obj, rows: list) -> None:
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            _flatten(f"{prefix}[{i}]", v, rows)
    else:
        rows.append([prefix, obj])


def _emit_csv(report: dict, csv_rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if csv_rows is not None:
        header, rows = csv_rows
        writer.writerow(header)
        writer.writerows(rows)
    else:
        writer.writerow(["key", "value"])
        flat: list = []
        _flatten("", report["results"], flat)
        writer.writerows(flat)
    return buf.getvalue()


def run(argv) -> int:
    """Parse argv, execute one subcommand, print its report; returns exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else _USAGE_ERROR
        return code
    try:
        config, results, seed, csv_rows = args.handler(args)
    except SpecParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return _USAGE_ERROR
    except (InputError, IndexError, ValueError, TypeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return _USAGE_ERROR
    except QuadratureError as e:
        print(f"numeric failure: {e}", file=sys.stderr)
        return _NUMERIC_ERROR
    report = _report(argv, config, results, seed)
    if args.format == "csv":
        sys.stdout.write(_emit_csv(report, csv_rows))
    else:
        print(json.dumps(report, indent=2))
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
