"""
Command line interface::

    wahbalightweight solve INPUT [--method lma] [--q0 random | q0 q1 q2 q3]
    wahbalightweight hessian INPUT --quat q0 q1 q2 q3
    wahbalightweight sweep INPUT [--samples 1000] [--norm-range 0.5 1.5]
    wahbalightweight simulate --output PATH [--pairs 3] [--noise 0.0]
    wahbalightweight verify [--printed-convention]

Exit status is 0 on success, 1 on invalid input or configuration
and 2 when an iterative solve does not converge.
"""

import argparse
import logging
import sys
from typing import List, Optional, Sequence

import numpy as np

from .__version__ import __title__, __version__
from .compat import dumps
from .davenport import solve_davenport
from .enums import Method, TerminationReason, WeightScheme
from .exceptions import ConfigError, WahbaError
from .fileio import (
    SWEEP_HEADER,
    format_csv,
    read_observation_file,
    sidecar_path,
    write_json,
    write_observation_file,
    write_text,
    write_trace_file,
)
from .model import gradient, hessian_total, loss_total
from .optimizers import solve
from .quaternion import angular_distance, as_quaternion
from .resources import IterationRecord, OptimizerConfig, SimConfig
from .simulator import generate_set, random_unit_quaternion, substream
from .spectral import analyze, eig_sym4
from .utils import check_seed, default_header, format_float
from .verify import Verifier

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_NOT_CONVERGED = 2


def _finite_or_none(value: float) -> Optional[float]:
    return float(value) if np.isfinite(value) else None


def _quaternion_list(q: np.ndarray) -> List[Optional[float]]:
    return [_finite_or_none(value) for value in q]


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        write_text(path, text)
    else:
        sys.stdout.write(text)


def parse_q0(values: Sequence[str], seed: int) -> np.ndarray:
    """
    :param values: ["random"] or four floats
    :param int seed: Seeds the random draw
    :raises: ConfigError if neither
    """
    if len(values) == 1 and values[0] == "random":
        return random_unit_quaternion(np.random.default_rng(seed))
    try:
        return as_quaternion([float(value) for value in values])
    except (ValueError, WahbaError):
        raise ConfigError("q0 must be 'random' or four floats, got %s" % " ".join(values))


def cmd_solve(args: argparse.Namespace) -> int:
    check_seed(args.seed)
    observations = read_observation_file(args.input)
    oracle = solve_davenport(observations)
    method = Method(args.method)
    if method is Method.DAVENPORT:
        q = oracle.q
        min_eig = eig_sym4(hessian_total(observations, q)).min_eig
        trace = [
            IterationRecord(
                0,
                q,
                loss_total(observations, q),
                float(np.linalg.norm(gradient(observations, q))),
                min_eig,
            )
        ]
        final_q, final_loss = q, trace[0].loss
        converged, reason, iterations = True, TerminationReason.CLOSED_FORM, 0
    else:
        config = OptimizerConfig(
            method=method,
            step_size=args.step_size,
            kappa=args.kappa,
            normalize_each_step=args.normalize,
            grad_tol=args.grad_tol,
            loss_tol=args.loss_tol,
            max_iters=args.max_iters,
        )
        result = solve(observations, parse_q0(args.q0, args.seed), config)
        trace = result.trace
        final_q, final_loss = result.final_q, result.final_loss
        converged, reason = result.converged, result.termination_reason
        iterations = result.iterations

    output = {
        "method": method.value,
        "final_q": _quaternion_list(final_q),
        "final_loss": _finite_or_none(final_loss),
        "converged": converged,
        "termination_reason": reason.value,
        "iterations": iterations,
        "davenport_q": oracle.q.tolist(),
        "davenport_lambda": oracle.lambda_max,
        "davenport_multiplicity_flag": oracle.multiplicity_flag,
        "agreement_angle_rad": _finite_or_none(angular_distance(final_q, oracle.q))
        if np.all(np.isfinite(final_q))
        else None,
    }
    _emit(dumps(output) + "\n", args.output)
    if args.trace:
        write_trace_file(args.trace, trace)
    return EXIT_OK if converged else EXIT_NOT_CONVERGED


def cmd_hessian(args: argparse.Namespace) -> int:
    observations = read_observation_file(args.input)
    report = analyze(observations, args.quat)
    output = report.serialise
    output["eigenvalues_text"] = ["%.15f" % value for value in report.eigenvalues]
    sys.stdout.write(dumps(output) + "\n")
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    norm_low, norm_high = args.norm_range
    check_seed(args.seed)
    if args.samples < 1:
        raise ConfigError("samples must be >= 1, got %s" % args.samples)
    if not 0 <= norm_low <= norm_high:
        raise ConfigError("empty norm range [%s, %s]" % (norm_low, norm_high))
    observations = read_observation_file(args.input)

    rows, outside_ball, outside_psd, violations = [], 0, 0, 0
    for index in range(args.samples):
        rng = substream(args.seed, index)
        norm = rng.uniform(norm_low, norm_high)
        q = norm * random_unit_quaternion(rng)
        report = analyze(observations, q)
        rows.append(
            [
                format_float(norm),
                format_float(report.min_eig),
                format_float(report.max_eig),
                report.classification.value,
            ]
        )
        if not report.bound_satisfied:
            violations += 1
        if norm >= 1.0:
            outside_ball += 1
            outside_psd += report.classification.is_convex
    if violations:
        logger.warning("[Sweep: %s]: %s samples outside analytic bounds", args.seed, violations)

    _emit(format_csv(SWEEP_HEADER, rows), args.output)
    if outside_ball:
        summary = "psd fraction for norm >= 1: %s/%s = %s" % (
            outside_psd,
            outside_ball,
            format_float(outside_psd / outside_ball),
        )
    else:
        summary = "psd fraction for norm >= 1: n/a (no samples)"
    # keeps stdout a clean CSV when no output path is given
    print(summary, file=sys.stdout if args.output else sys.stderr)
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    config = SimConfig(
        n_pairs=args.pairs,
        noise_sigma=args.noise,
        weight_scheme=WeightScheme.CUSTOM if args.weights else WeightScheme.UNIFORM,
        weights=args.weights,
        seed=args.seed,
    )
    rng = np.random.default_rng(config.seed)
    truth = as_quaternion(args.truth) if args.truth else random_unit_quaternion(rng)
    observations, metadata = generate_set(truth, config, rng)
    write_observation_file(args.output, observations)
    meta = metadata.serialise
    meta["generator"] = default_header()
    write_json(sidecar_path(args.output), meta)
    print(
        "%s pairs written to %s, truth %s"
        % (len(observations), args.output, " ".join(format_float(v) for v in metadata.truth))
    )
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    check_seed(args.seed)
    verifier = Verifier(
        seed=args.seed, draws=args.draws, printed_convention=args.printed_convention
    )
    results = verifier.run()
    for result in results:
        print(
            "%-26s %s  %s" % (result.name, "PASS" if result.passed else "FAIL", result.detail)
        )
    for index, eigenvalues in enumerate(verifier.published_eigenvalues, start=1):
        print("q%s eigenvalues: %s" % (index, " ".join("%.15f" % v for v in eigenvalues)))
    return EXIT_OK if all(result.passed for result in results) else EXIT_INPUT_ERROR


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=__title__,
        description="Convexity analysis and solvers for Wahba's problem.",
    )
    parser.add_argument("--version", action="version", version=default_header())
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="log to stderr, -v info, -vv debug",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve_parser = subparsers.add_parser("solve", help="estimate the attitude")
    solve_parser.add_argument("input", help="observation file (JSON)")
    solve_parser.add_argument(
        "--method", choices=[m.value for m in Method], default=Method.LMA.value
    )
    solve_parser.add_argument(
        "--q0", nargs="+", default=["random"], metavar="Q", help="'random' or q0 q1 q2 q3"
    )
    solve_parser.add_argument(
        "--normalize",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="renormalise the iterate after each step",
    )
    solve_parser.add_argument("--seed", type=int, default=0)
    solve_parser.add_argument("--step-size", type=float, default=0.1)
    solve_parser.add_argument("--kappa", type=float, default=1e-6)
    solve_parser.add_argument("--grad-tol", type=float, default=1e-10)
    solve_parser.add_argument("--loss-tol", type=float, default=1e-14)
    solve_parser.add_argument("--max-iters", type=int, default=200)
    solve_parser.add_argument("--output", help="result JSON, stdout if omitted")
    solve_parser.add_argument("--trace", help="per iteration CSV")
    solve_parser.set_defaults(func=cmd_solve)

    hessian_parser = subparsers.add_parser("hessian", help="hessian spectrum at q")
    hessian_parser.add_argument("input", help="observation file (JSON)")
    hessian_parser.add_argument(
        "--quat", nargs=4, type=float, required=True, metavar=("Q0", "Q1", "Q2", "Q3")
    )
    hessian_parser.set_defaults(func=cmd_hessian)

    sweep_parser = subparsers.add_parser("sweep", help="classify random quaternions")
    sweep_parser.add_argument("input", help="observation file (JSON)")
    sweep_parser.add_argument("--samples", type=int, default=1000)
    sweep_parser.add_argument(
        "--norm-range", nargs=2, type=float, default=[0.5, 1.5], metavar=("MIN", "MAX")
    )
    sweep_parser.add_argument("--seed", type=int, default=0)
    sweep_parser.add_argument("--output", help="CSV, stdout if omitted")
    sweep_parser.set_defaults(func=cmd_sweep)

    simulate_parser = subparsers.add_parser("simulate", help="generate observations")
    simulate_parser.add_argument("--pairs", type=int, default=3)
    simulate_parser.add_argument("--noise", type=float, default=0.0)
    simulate_parser.add_argument(
        "--weights", nargs="+", type=float, help="custom weights, one per pair"
    )
    simulate_parser.add_argument(
        "--truth", nargs=4, type=float, metavar=("Q0", "Q1", "Q2", "Q3")
    )
    simulate_parser.add_argument("--seed", type=int, default=0)
    simulate_parser.add_argument("--output", required=True, help="observation file")
    simulate_parser.set_defaults(func=cmd_simulate)

    verify_parser = subparsers.add_parser("verify", help="run the self checks")
    verify_parser.add_argument("--seed", type=int, default=20190101)
    verify_parser.add_argument("--draws", type=int, default=1000)
    verify_parser.add_argument(
        "--printed-convention",
        action="store_true",
        help="use the closed-form H_A entry table",
    )
    verify_parser.set_defaults(func=cmd_verify)
    return parser


def setup_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # usage errors are input errors, --help and --version exit 0
        return EXIT_OK if e.code in (0, None) else EXIT_INPUT_ERROR
    setup_logging(args.verbose)
    logger.debug("[%s: %s]: %s", __title__, __version__, args)
    try:
        return args.func(args)
    except WahbaError as e:
        sys.stderr.write("%s: error: %s\n" % (__title__, e))
        return EXIT_INPUT_ERROR
