"""Command-line entry point: ``aqg run|sweep|verify|restart``."""

import argparse
import sys
from pathlib import Path

from loguru import logger
from pydantic import ValidationError

from src.harness.config import ConfigError, RunConfig, SweepSpec, load_run_config, load_sweep_spec
from src.harness.experiments import restart, run_experiment, sweep
from src.harness.persistence import write_oracle_reports
from src.oracle.report import reports_to_frame
from src.oracle.suites import SUITES, run_suite

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2


def _configure_logging(verbose: bool) -> None:
    logger.remove()
    logger.add(sys.stderr, level="DEBUG" if verbose else "INFO")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", type=Path, default=Path("out"), help="Directory for artifacts (default: ./out).")
    common.add_argument("--seed", type=int, default=None, help="Override the configured seed.")
    common.add_argument("--verbose", action="store_true", help="Log per-sample details.")

    parser = argparse.ArgumentParser(prog="aqg", description="Anisotropic SQG simulator and verification harness.")
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", parents=[common], help="Integrate one configuration.")
    run_parser.add_argument("config", type=Path, help="Experiment file (key = value lines).")

    sweep_parser = commands.add_parser("sweep", parents=[common], help="Run an (alpha, beta) grid.")
    sweep_parser.add_argument("config", type=Path, help="Sweep file with alpha_grid and beta_grid.")

    verify_parser = commands.add_parser("verify", parents=[common], help="Run verification suites.")
    verify_parser.add_argument("suite", choices=[*SUITES, "all"], help="Suite to run.")

    restart_parser = commands.add_parser("restart", parents=[common], help="Restart a run from t0 and compare.")
    restart_parser.add_argument("config", type=Path, help="Experiment file; t0 selects the restart time.")
    return parser


def _with_seed(config: RunConfig, seed: int | None) -> RunConfig:
    return config if seed is None else config.with_seed(seed)


def cmd_run(config_path: Path, out_dir: Path, seed: int | None) -> int:
    config = _with_seed(load_run_config(config_path), seed)
    record = run_experiment(config, out_dir, name=config_path.stem)
    print(record.summary())
    if record.aborted:
        print(f"run aborted: {record.abort_reason}")
    return EXIT_OK


def cmd_sweep(config_path: Path, out_dir: Path, seed: int | None) -> int:
    spec: SweepSpec = load_sweep_spec(config_path)
    if seed is not None:
        spec = spec.model_copy(update={"base": spec.base.with_seed(seed)})
    frame = sweep(spec, out_dir)
    print(frame)
    return EXIT_OK


def cmd_verify(suite: str, out_dir: Path, seed: int | None) -> int:
    reports = run_suite(suite, seed)
    write_oracle_reports(reports_to_frame(reports), out_dir / f"oracle_{suite}.csv")
    failed = [report for report in reports if not report.passed]
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        print(f"{status} {report.lemma} [{report.params}] max_ratio={report.max_ratio:.6g} samples={report.samples}")
    for report in failed:
        print(f"reproduce {report.lemma} [{report.params}] with seed {report.worst_case_seed}")
    return EXIT_VERIFICATION_FAILED if failed else EXIT_OK


def cmd_restart(config_path: Path, out_dir: Path, seed: int | None) -> int:
    config = _with_seed(load_run_config(config_path), seed)
    original, restarted, comparison = restart(config, out_dir)
    print(original.summary())
    print(restarted.summary())
    print(f"max overlap discrepancy: {comparison['discrepancy_l2'].max():.3e}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    """
    Run the command line.

    Returns
    -------
    int
        0 on success (whatever the boundedness classification), 1 when a verification suite fails,
        2 on usage or configuration errors.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        match args.command:
            case "run":
                return cmd_run(args.config, args.out, args.seed)
            case "sweep":
                return cmd_sweep(args.config, args.out, args.seed)
            case "verify":
                return cmd_verify(args.suite, args.out, args.seed)
            case "restart":
                return cmd_restart(args.config, args.out, args.seed)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValidationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
