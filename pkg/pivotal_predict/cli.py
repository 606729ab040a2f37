from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Callable, NoReturn, Sequence

from pivotal_predict.bayes import (
    DEFAULT_HALF_WIDTHS,
    DEFAULT_TOLERANCE,
    check_consistency,
    coincidence_sweep,
)
from pivotal_predict.config import (
    load_model_config,
    write_density_csv,
    write_report,
    write_sample_csv,
)
from pivotal_predict.exceptions import (
    ConfigSchemaError,
    PivotalError,
    ValidationError,
)
from pivotal_predict.montecarlo import coverage_experiment, seeded_rng
from pivotal_predict.density import sample
from pivotal_predict.noise import realize
from pivotal_predict.pivotal import pivot_density, predictive_density
from pivotal_predict.utilities import (
    SCHEMA_VERSION,
    ensure_parent_dir,
    parse_gamma_list,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_IO = 2

EPILOG = (
    f"Model files are YAML, schema_version {SCHEMA_VERSION}: keys noise1, noise2, "
    "optional grid {lo, hi, n_points} and prior. Families: normal (mean, sd), "
    "laplace (loc, scale), uniform (a, b), normal-mixture (components), "
    "tabulated (x, pdf | path). Exit codes: 0 success or pass, 1 invalid input "
    "or failed check, 2 file-system error."
)


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1; 2 is reserved for file-system failures."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAILED, f"{self.prog}: error: {message}\n")


def _default_report_path(out: str) -> str:
    return os.path.splitext(out)[0] + ".yaml"


def cmd_pivot(args: argparse.Namespace) -> int:
    config = load_model_config(args.config)
    d = pivot_density(config.model)
    ensure_parent_dir(args.out)
    write_density_csv(d, args.out, cdf_included=args.cdf)
    print(f"pivot density: {d.grid.n_points} nodes on [{d.grid.lo:.6g}, {d.grid.hi:.6g}]")
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    config = load_model_config(args.config)
    gammas = parse_gamma_list(args.gamma)
    result = predictive_density(config.model, args.x1, gammas)
    report_path = args.report or _default_report_path(args.out)
    ensure_parent_dir(args.out)
    ensure_parent_dir(report_path)
    write_density_csv(result.predictive, args.out, cdf_included=args.cdf)
    write_report(result, report_path)
    summary = ", ".join(
        f"{i.gamma:g}: [{i.lo:.6g}, {i.hi:.6g}]" for i in result.intervals
    )
    print(f"predictive for x1={result.observed_x1:g}: {summary}")
    return EXIT_OK


def cmd_bayes_check(args: argparse.Namespace) -> int:
    config = load_model_config(args.config)
    if config.prior is None:
        raise ConfigSchemaError("prior", "bayes-check needs a prior in the model file")
    f1, _ = config.model.realized()
    report = check_consistency(f1, realize(config.prior), args.x1, args.tol)
    if args.out:
        ensure_parent_dir(args.out)
        write_report(report, args.out)
    if report.no_overlap:
        print("bayes-check: prior and likelihood supports do not overlap, FAIL")
    else:
        verdict = "pass" if report.passed else "FAIL"
        print(
            f"bayes-check: sup gap {report.sup_norm_gap:.3e} "
            f"(tol {report.tolerance:g}) on {report.grid_points} nodes, {verdict}"
        )
    return EXIT_OK if report.passed else EXIT_FAILED


def _parse_widths(text: str) -> list[float]:
    try:
        return [float(w) for w in text.split(",") if w.strip()]
    except ValueError as e:
        raise ValidationError("half_width", f"not a number list: {text!r}") from e


def cmd_coincidence(args: argparse.Namespace) -> int:
    config = load_model_config(args.config)
    widths = _parse_widths(args.half_widths)
    report = coincidence_sweep(
        config.model, args.x1, widths, center=args.center, window=args.window
    )
    ensure_parent_dir(args.out)
    write_report(report, args.out)
    gaps = ", ".join(f"{w:g}: {g:.3e}" for w, g in zip(report.half_widths, report.gaps))
    print(f"coincidence gaps by half-width: {gaps}")
    return EXIT_OK


def cmd_coverage(args: argparse.Namespace) -> int:
    config = load_model_config(args.config)
    report = coverage_experiment(
        config.model, args.theta, args.gamma, args.n, args.seed, workers=args.workers
    )
    ensure_parent_dir(args.out)
    write_report(report, args.out)
    verdict = "pass" if report.passed else "FAIL"
    print(
        f"coverage gamma={report.gamma:g}: {report.hits}/{report.n_replicates} "
        f"hits ({report.empirical_coverage:.4f}), {verdict}"
    )
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_sample(args: argparse.Namespace) -> int:
    config = load_model_config(args.config)
    model = config.model
    if args.which == "pivot":
        d = pivot_density(model)
    else:
        f1, f2 = model.realized()
        d = f1 if args.which == "noise1" else f2
    draws = sample(d, seeded_rng(args.seed), args.n)
    ensure_parent_dir(args.out)
    write_sample_csv(draws, args.out)
    print(f"sample: {draws.size} draws from {args.which}")
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", required=True, help="Path to the YAML model file")
    p.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log to stderr; repeat for debug output",
    )


def _subcommand(
    subparsers: argparse._SubParsersAction,
    name: str,
    handler: Callable[[argparse.Namespace], int],
    help_text: str,
) -> argparse.ArgumentParser:
    p = subparsers.add_parser(name, help=help_text, description=help_text, epilog=EPILOG)
    _add_common(p)
    p.set_defaults(handler=handler)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="pivotal-predict",
        description="Pivotal predictive densities for repeated location measurements.",
        epilog=EPILOG,
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = _subcommand(sub, "pivot", cmd_pivot, "Write the density of x2 - x1 as CSV.")
    p.add_argument("--out", required=True, help="Output CSV path")
    p.add_argument("--cdf", action="store_true", help="Add a cdf column")

    p = _subcommand(
        sub, "predict", cmd_predict, "Predictive density of x2 given x1, with intervals."
    )
    p.add_argument("--x1", type=float, required=True, help="Observed first measurement")
    p.add_argument(
        "--gamma",
        default="0.95",
        help="Comma-separated coverage levels in (0, 1) (default: 0.95)",
    )
    p.add_argument("--out", required=True, help="Output CSV path for the predictive density")
    p.add_argument(
        "--report", default=None, help="Interval report path (default: --out with .yaml suffix)"
    )
    p.add_argument("--cdf", action="store_true", help="Add a cdf column")

    p = _subcommand(
        sub,
        "bayes-check",
        cmd_bayes_check,
        "Compare the two Bayesian routes to the error posterior under the model's prior.",
    )
    p.add_argument("--x1", type=float, required=True, help="Observed first measurement")
    p.add_argument(
        "--tol",
        type=float,
        default=DEFAULT_TOLERANCE,
        help=f"Sup-norm tolerance (default: {DEFAULT_TOLERANCE:g})",
    )
    p.add_argument("--out", default=None, help="Consistency report path")

    p = _subcommand(
        sub,
        "coincidence",
        cmd_coincidence,
        "Gap between wide-uniform-prior predictives and the pivotal predictive.",
    )
    p.add_argument("--x1", type=float, required=True, help="Observed first measurement")
    p.add_argument(
        "--half-widths",
        default=",".join(f"{w:g}" for w in DEFAULT_HALF_WIDTHS),
        help="Comma-separated prior half-widths in units of the larger noise sd",
    )
    p.add_argument("--center", type=float, default=0.0, help="Prior center (default: 0)")
    p.add_argument(
        "--window", type=float, default=5.0, help="Comparison window in sd units around x1"
    )
    p.add_argument("--out", required=True, help="Sweep report path")

    p = _subcommand(
        sub, "coverage", cmd_coverage, "Monte Carlo coverage of the central predictive interval."
    )
    p.add_argument("--theta", type=float, default=0.0, help="True location used to simulate")
    p.add_argument("--gamma", type=float, required=True, help="Coverage level in (0, 1)")
    p.add_argument("--n", type=int, required=True, help="Number of replicates (>= 100)")
    p.add_argument("--seed", type=int, required=True, help="Master seed")
    p.add_argument("--workers", type=int, default=1, help="Replicate threads (default: 1)")
    p.add_argument("--out", required=True, help="Coverage report path")

    p = _subcommand(sub, "sample", cmd_sample, "Draw from a realized density.")
    p.add_argument(
        "--which", choices=["noise1", "noise2", "pivot"], required=True, help="Density to sample"
    )
    p.add_argument("--n", type=int, required=True, help="Number of draws")
    p.add_argument("--seed", type=int, required=True, help="Seed")
    p.add_argument("--out", required=True, help="Output CSV path")

    return parser


def _configure_logging(verbosity: int) -> None:
    if verbosity <= 0:
        return
    level = logging.DEBUG if verbosity > 1 else logging.INFO
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_FAILED
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except PivotalError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
