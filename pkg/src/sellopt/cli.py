"""Command line interface.

Subcommands:
  selling-curve   expected price-to-maximum ratio S(tau) on a grid
  optimal         optimal selling time report for one parameter set
  argmax-density  density of the time at which the price peaks
  gap-density     density of the gap between current and maximum log-price
  mc-verify       Monte Carlo spot check of the analytic S values

Every command takes the model either as --mu (log-price drift) or as
--alpha (growth rate in price units; mu = (alpha - sigma^2/2)), plus
--sigma and --T. Curves are written as CSV (header x,value, 17 significant
digits) or JSON (schema_version 1, sorted keys); reruns with equal
arguments produce byte-identical output. Relative --output paths are
placed under $SELLOPT_OUTPUT_DIR when that variable is set.

Exit codes: 0 on success, 1 on domain or invariant failures and on a
failed mc-verify comparison, 2 on command line usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

from .argmax import argmax_curve
from .gap import gap_pdf
from .model import Curve, InvariantViolation, ModelParams
from .selling import AlphaParams, alpha_to_mu, optimize, selling_curve

__all__ = ["main", "build_parser"]

_SCHEMA_VERSION = 1


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def _add_model_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--mu", type=float, help="drift of the log price")
    group.add_argument(
        "--alpha",
        type=float,
        help="growth rate in price units; converted as mu = (alpha - 1/2) sigma^2",
    )
    parser.add_argument(
        "--sigma", type=float, default=1.0, help="volatility (default 1.0)"
    )
    parser.add_argument(
        "--T",
        dest="horizon",
        type=float,
        default=1.0,
        help="time horizon (default 1.0)",
    )


def _params(args: argparse.Namespace) -> ModelParams:
    if args.mu is not None:
        mu = args.mu
    else:
        mu = alpha_to_mu(AlphaParams(alpha=args.alpha, sigma=args.sigma))
    return ModelParams(mu=mu, sigma=args.sigma, horizon=args.horizon)


def _resolve_output(path: str | None) -> str | None:
    if path is None:
        return None
    base = os.environ.get("SELLOPT_OUTPUT_DIR", "")
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    return path


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _curve_csv(curve: Curve) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["x", "value"])
    for x, v in zip(curve.xs, curve.values):
        writer.writerow([_fmt(x), _fmt(v)])
    return buf.getvalue()


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _curve_payload(curve: Curve) -> dict:
    return {
        "schema_version": _SCHEMA_VERSION,
        "metadata": dict(curve.metadata),
        "xs": list(curve.xs),
        "values": list(curve.values),
    }


def _emit_curve(curve: Curve, fmt: str, path: str | None) -> None:
    if fmt == "csv":
        _emit(_curve_csv(curve), path)
    else:
        _emit(_json_text(_curve_payload(curve)), path)


def _add_output_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format",
        choices=("csv", "json"),
        default="csv",
        help="output format (default csv)",
    )
    parser.add_argument(
        "--output",
        help="output file; omitted means stdout, relative paths go under "
        "$SELLOPT_OUTPUT_DIR when set",
    )


def _cmd_selling_curve(args: argparse.Namespace) -> int:
    curve = selling_curve(_params(args), grid_n=args.grid_n, tol=args.tol)
    _emit_curve(curve, args.format, _resolve_output(args.output))
    return 0


def _cmd_argmax_density(args: argparse.Namespace) -> int:
    curve = argmax_curve(_params(args), grid_n=args.grid_n)
    _emit_curve(curve, args.format, _resolve_output(args.output))
    return 0


def _cmd_gap_density(args: argparse.Namespace) -> int:
    params = _params(args)
    tau = args.tau if args.tau is not None else 0.5 * params.horizon
    scale = params.sigma * math.sqrt(params.horizon)
    y_max = 10.0 * scale + abs(params.mu) * params.horizon
    n = args.grid_n
    xs = [i * y_max / n for i in range(n + 1)]
    values = [gap_pdf(y, tau, params) for y in xs]
    curve = Curve(
        xs=tuple(xs),
        values=tuple(values),
        metadata={
            "quantity": "gap_density",
            "tau": tau,
            "mu": params.mu,
            "sigma": params.sigma,
            "horizon": params.horizon,
        },
    )
    _emit_curve(curve, args.format, _resolve_output(args.output))
    return 0


def _cmd_optimal(args: argparse.Namespace) -> int:
    params = _params(args)
    report = optimize(params, grid_n=args.grid_n, tol=args.tol)
    lines = [
        f"regime: {report.regime}",
        "tau_star: " + ", ".join(_fmt(t) for t in report.tau_star),
        f"s_at_0: {_fmt(report.s_at_0)}",
        f"s_at_T: {_fmt(report.s_at_T)}",
        f"optimal_relative_error: {_fmt(report.optimal_relative_error)}",
        f"interior_max: {_fmt(report.interior_max)}",
        f"grid_n: {report.grid_n}",
    ]
    sys.stdout.write("\n".join(lines) + "\n")
    if args.output is not None:
        payload = {
            "schema_version": _SCHEMA_VERSION,
            "regime": report.regime,
            "tau_star": list(report.tau_star),
            "s_at_0": report.s_at_0,
            "s_at_T": report.s_at_T,
            "optimal_relative_error": report.optimal_relative_error,
            "interior_max": report.interior_max,
            "grid_n": report.grid_n,
            "mu": params.mu,
            "sigma": params.sigma,
            "horizon": params.horizon,
        }
        _emit(_json_text(payload), _resolve_output(args.output))
    return 0


def _cmd_mc_verify(args: argparse.Namespace) -> int:
    from . import mc  # deferred: compiling the simulation kernel is slow

    params = _params(args)
    config = mc.McConfig(
        n_paths=args.n_paths, n_steps=args.n_steps, seed=args.seed, params=params
    )
    horizon = params.horizon
    taus = (0.0, 0.5 * horizon, horizon)
    ensemble = mc.simulate_ensemble(config, snap_times=taus)
    allowance = mc.s_bias_allowance(config)
    from .selling import s_of_tau

    failures = 0
    for tau in taus:
        result = mc.estimate_S(tau, ensemble=ensemble)
        analytic = s_of_tau(tau, params)
        lo = analytic - 4.0 * result.std_error
        hi = analytic + allowance + 4.0 * result.std_error
        ok = lo <= result.estimate <= hi
        failures += 0 if ok else 1
        sys.stdout.write(
            f"tau={_fmt(tau)}: mc={_fmt(result.estimate)} "
            f"analytic={_fmt(analytic)} std_error={_fmt(result.std_error)} "
            f"bias_allowance={_fmt(allowance)} {'ok' if ok else 'FAIL'}\n"
        )
    if failures:
        sys.stdout.write(f"mc-verify: {failures} of {len(taus)} checks failed\n")
        return 1
    sys.stdout.write("mc-verify: all checks passed\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sellopt",
        description="Optimal selling time analytics for geometric Brownian motion",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "selling-curve", help="expected price-to-maximum ratio S(tau) on a grid"
    )
    _add_model_arguments(p)
    p.add_argument("--grid-n", type=int, default=64, help="grid intervals (default 64)")
    p.add_argument("--tol", type=float, default=1e-9, help="quadrature tolerance")
    _add_output_arguments(p)
    p.set_defaults(handler=_cmd_selling_curve)

    p = sub.add_parser("optimal", help="optimal selling time report")
    _add_model_arguments(p)
    p.add_argument("--grid-n", type=int, default=64, help="scan intervals (default 64)")
    p.add_argument("--tol", type=float, default=1e-9, help="quadrature tolerance")
    p.add_argument("--output", help="optional JSON report file")
    p.set_defaults(handler=_cmd_optimal)

    p = sub.add_parser("argmax-density", help="density of the price peak time")
    _add_model_arguments(p)
    p.add_argument("--grid-n", type=int, default=64, help="grid intervals (default 64)")
    _add_output_arguments(p)
    p.set_defaults(handler=_cmd_argmax_density)

    p = sub.add_parser(
        "gap-density", help="density of max minus current log price at one time"
    )
    _add_model_arguments(p)
    p.add_argument(
        "--tau", type=float, default=None, help="interior time (default T/2)"
    )
    p.add_argument(
        "--grid-n", type=int, default=128, help="grid intervals (default 128)"
    )
    _add_output_arguments(p)
    p.set_defaults(handler=_cmd_gap_density)

    p = sub.add_parser("mc-verify", help="Monte Carlo check of analytic S values")
    _add_model_arguments(p)
    p.add_argument(
        "--n-paths", type=int, default=100_000, help="paths (default 100000)"
    )
    p.add_argument(
        "--n-steps", type=int, default=2_000, help="time steps (default 2000)"
    )
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.set_defaults(handler=_cmd_mc_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (InvariantViolation, ValueError) as exc:
        sys.stderr.write(f"sellopt: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
