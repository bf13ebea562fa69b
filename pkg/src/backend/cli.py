"""Command-line driver: sample, estimate, oscillate, validate, bounds.

Every command writes UTF-8 CSV (or a graph dump for ``sample``) and maps
library errors to exit codes: 2 usage, 3 hypothesis violation, 4 budget
exceeded, 5 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from collections.abc import Callable, Sequence
from pathlib import Path
from typing import Any, Literal

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from . import bounds
from .config import ConstructorConfig, EstimatorConfig
from .constructor import (
    PlanStore,
    build_oscillator,
    build_pendant_witness,
    validate_boundary,
    validate_nice,
    validate_proper,
)
from .errors import InvalidParamsError, VerificationFailedError, ZeroOneError
from .estimator import (
    MonteCarloEstimator,
    estimate_prob,
    verify_plan,
    write_report_csv,
    write_rows_csv,
)
from .gen import gen_member
from .logging_config import configure_logging, set_run_context
from .models import ProbSeq, SampleSpec
from .sampler import sample
from .seq import classify_conditions, hereditary_verdicts

logger = logging.getLogger(__name__)

Command = Literal["sample", "estimate", "oscillate", "validate", "bounds"]
CHECKS = ("gen", "proper", "nice", "boundary", "classify", "hereditary", "pendant")
DEFAULT_GRID = [1_000, 10_000, 100_000, 1_000_000]


class RunConfig(BaseModel):
    """Validated flags of one invocation."""

    command: Command
    seq: ProbSeq | None = None
    q: ProbSeq | None = None
    n: int | None = Field(default=None, ge=1)
    grid: list[int] = Field(default_factory=list)
    sentence: str | None = None
    trials: int = Field(default=2000, ge=1)
    seed: int = Field(default=0, ge=0, lt=2**64)
    alpha: float = Field(default=0.05, gt=0, lt=1)
    slack: float = Field(default=0.1, ge=0, lt=1)
    workers: int = Field(default=1, ge=1)
    variant: str | None = None
    depth: int = Field(default=2, ge=1)
    params: dict[str, Any] = Field(default_factory=dict)
    assert_hypothesis: bool = False
    check: str | None = None
    mode: int = Field(default=1, ge=1, le=3)
    bound: str | None = None
    out: Path | None = None
    plan_dir: Path | None = None


def parse_seq(text: str) -> ProbSeq:
    """A sequence from JSON text or a JSON file; a bare list is a finite prefix."""
    path = Path(text)
    if not text.lstrip().startswith(("{", "[")) and path.exists():
        text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParamsError(f"sequence is not valid JSON: {exc}") from exc
    try:
        if isinstance(data, list):
            return ProbSeq.finite(data)
        return ProbSeq.model_validate(data)
    except (ValidationError, TypeError, ValueError) as exc:
        raise InvalidParamsError(f"invalid sequence: {exc}") from exc


def parse_grid(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidParamsError(
            f"grid must be comma-separated integers: {text}"
        ) from exc


def parse_params(pairs: Sequence[str]) -> dict[str, Any]:
    """key=value pairs; values are decoded as JSON when possible."""
    params: dict[str, Any] = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep or not key:
            raise InvalidParamsError(f"expected key=value, got '{pair}'")
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    return params


def _require(value, flag: str):
    if value is None:
        raise InvalidParamsError(f"{flag} is required for this command")
    return value


def _emit_rows(rows: list[dict], out: Path | None, fields: list[str] | None = None):
    if out is not None:
        write_rows_csv(rows, out, fields)
        logger.info(f"wrote {len(rows)} rows to {out}")
        return
    fields = fields or (list(rows[0].keys()) if rows else [])
    writer = csv.DictWriter(sys.stdout, fieldnames=fields)
    writer.writeheader()
    writer.writerows(rows)


def cmd_sample(config: RunConfig) -> int:
    seq = _require(config.seq, "--seq")
    n = _require(config.n, "--n")
    graph = sample(SampleSpec(seq=seq, n=n, seed=config.seed))
    text = graph.dump()
    if config.out is None:
        sys.stdout.write(text)
    else:
        config.out.parent.mkdir(parents=True, exist_ok=True)
        config.out.write_text(text, encoding="utf-8")
        logger.info(f"sampled n={n}: {graph.edge_count} edges -> {config.out}")
    return 0


def cmd_estimate(config: RunConfig) -> int:
    seq = _require(config.seq, "--seq")
    sentence = _require(config.sentence, "--sentence")
    grid = config.grid or [_require(config.n, "--n or --grid")]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise InvalidParamsError(f"grid must be strictly increasing: {grid}")
    rows = []
    for n in grid:
        est = estimate_prob(
            seq,
            n,
            sentence,
            config.trials,
            seed=config.seed,
            alpha=config.alpha,
            workers=config.workers,
        )
        rows.append(
            {
                "n": n,
                "sentence": sentence,
                "trials": est.trials,
                "successes": est.successes,
                "point": est.point,
                "ci_low": est.ci_low,
                "ci_high": est.ci_high,
            }
        )
        logger.info(f"{sentence} at n={n}: {est.point:.4f}")
    _emit_rows(rows, config.out)
    return 0


def cmd_oscillate(config: RunConfig) -> int:
    seq = _require(config.seq, "--seq")
    variant = _require(config.variant, "--variant")
    estimator_config = EstimatorConfig(
        trials=config.trials,
        alpha=config.alpha,
        slack=config.slack,
        workers=config.workers,
    )
    constructor_config = ConstructorConfig.from_env()
    plan = build_oscillator(
        variant,
        seq,
        params=config.params,
        depth=config.depth,
        estimator=MonteCarloEstimator(estimator_config, seed=config.seed),
        config=constructor_config,
        assert_hypothesis=config.assert_hypothesis,
    )
    if config.plan_dir is not None:
        PlanStore(config.plan_dir).save_plan(plan, config.seed)

    report = verify_plan(
        plan,
        config.trials,
        seed=config.seed,
        alpha=config.alpha,
        slack=config.slack,
        workers=config.workers,
    )
    rows = [row.csv_row() for row in report.rows]
    if config.out is not None:
        write_report_csv(report, config.out)
    else:
        _emit_rows(rows, None, list(rows[0].keys()))
    if not report.oscillates:
        raise VerificationFailedError(
            f"{variant}: alternates={report.alternates}, "
            f"passed {sum(r.passed for r in report.rows)}/{len(report.rows)}"
        )
    logger.info(f"{variant}: oscillation verified at {len(report.rows)} checkpoints")
    return 0


def _cert_row(check: str, cert: BaseModel) -> dict[str, Any]:
    data = cert.model_dump()
    return {
        "check": check,
        "accepted": data.pop("accepted"),
        "detail": json.dumps(data, default=str),
    }


def cmd_validate(config: RunConfig) -> int:
    check = _require(config.check, "--check")
    seq = _require(config.seq, "--seq")
    if check == "gen":
        q = _require(config.q, "--q")
        row = _cert_row(f"gen{config.mode}", gen_member(q, seq, config.mode))
    elif check == "proper":
        row = _cert_row(check, validate_proper(seq))
    elif check == "nice":
        row = _cert_row(check, validate_nice(seq))
    elif check == "boundary":
        row = _cert_row(check, validate_boundary(seq))
    elif check == "classify":
        report = classify_conditions(seq, config.grid or DEFAULT_GRID)
        row = {
            "check": check,
            "verdict_star": report.verdict_star.value,
            "verdict_double_star": report.verdict_double_star.value,
            "detail": report.model_dump_json(),
        }
    elif check == "hereditary":
        report = hereditary_verdicts(seq, config.grid or DEFAULT_GRID)
        row = {
            "check": check,
            **{f"law_{j}": status.value for j, status in report.laws.items()},
            "detail": report.model_dump_json(),
        }
    elif check == "pendant":
        witness = build_pendant_witness(seq)
        row = {
            "check": check,
            **witness.model_dump(exclude={"q"}),
            "q": witness.q.to_json(),
        }
    else:
        raise InvalidParamsError(f"unknown check '{check}'; choose from {CHECKS}")
    _emit_rows([row], config.out)
    return 0


def _arg(params: dict[str, Any], name: str, cast=float):
    if name not in params:
        raise InvalidParamsError(f"bound needs --param {name}=...")
    return cast(params[name])


BOUNDS: dict[str, Callable[[dict[str, Any], ProbSeq | None], Any]] = {
    "poisson": lambda a, _: bounds.poisson_tail_bound(
        _arg(a, "lam"), _arg(a, "i", int)
    ),
    "degree": lambda a, _: bounds.degree_event_params(
        _arg(a, "n", int), _arg(a, "delta")
    )[1],
    "isolated-point": lambda a, _: bounds.isolated_point_cap(
        _arg(a, "n", int), _arg(a, "eps")
    ),
    "isolated-expectation": lambda a, s: bounds.isolated_expectation_cap(
        _require(s, "--seq"), _arg(a, "n", int)
    ),
    "isolated-path": lambda a, _: bounds.isolated_path_expectation_cap(
        _arg(a, "n", int), _arg(a, "k", int), _arg(a, "eps")
    ),
    "independence": lambda a, _: bounds.independence_failure_cap(
        _arg(a, "p_prime"),
        _arg(a, "n", int),
        _arg(a, "spacing", int),
        int(a.get("span", 0)),
    ),
    "chain-success": lambda a, s: bounds.chain_success_floor(
        _require(s, "--seq"), _arg(a, "k", int), _arg(a, "l_star", int)
    ),
    "chain-failure": lambda a, s: bounds.chain_failure_cap(
        _require(s, "--seq"),
        _arg(a, "k", int),
        _arg(a, "l_star", int),
        _arg(a, "n", int),
    ),
    "chain-candidates": lambda a, s: bounds.chain_candidate_ceiling(
        _require(s, "--seq"),
        _arg(a, "k", int),
        _arg(a, "l_star", int),
        _arg(a, "n", int),
    ),
    "expected-ceiling": lambda a, _: bounds.expected_ceiling_value(
        _arg(a, "p_star"), _arg(a, "k", int), _arg(a, "eps"), _arg(a, "n", int)
    ),
    "boundary-gap": lambda a, s: bounds.boundary_gap_cap(
        _require(s, "--seq"), _arg(a, "l_star", int)
    ),
    "nice-boundary": lambda a, _: bounds.nice_boundary_cap(
        _arg(a, "mass"), _arg(a, "eps"), _arg(a, "m", int)
    ),
    "nice-positive": lambda a, _: bounds.nice_positive_cap(
        _arg(a, "p_one"), _arg(a, "mass"), _arg(a, "l_star", int)
    ),
}


def cmd_bounds(config: RunConfig) -> int:
    name = _require(config.bound, "--bound")
    if name not in BOUNDS:
        raise InvalidParamsError(
            f"unknown bound '{name}'; choose from {', '.join(BOUNDS)}"
        )
    result = BOUNDS[name](config.params, config.seq)
    if isinstance(result, float):
        row = {"bound": name, "value": result, "inputs": json.dumps(config.params)}
    else:
        row = {
            "bound": name,
            "value": result.value,
            "inputs": json.dumps(result.inputs, default=str),
        }
    _emit_rows([row], config.out)
    return 0


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "sample": cmd_sample,
    "estimate": cmd_estimate,
    "oscillate": cmd_oscillate,
    "validate": cmd_validate,
    "bounds": cmd_bounds,
}


def build_parser() -> argparse.ArgumentParser:
    defaults = EstimatorConfig.from_env()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seq", help="sequence JSON, a JSON file, or a bare list")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", type=Path, help="output file (stdout if omitted)")
    common.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="extra parameter, repeatable",
    )
    common.add_argument("--verbose", "-v", action="store_true")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--trials", type=int, default=defaults.trials)
    sampling.add_argument("--alpha", type=float, default=defaults.alpha)
    sampling.add_argument("--workers", type=int, default=defaults.workers)

    parser = argparse.ArgumentParser(
        prog="zeroone-lab",
        description="Experiments on 0-1 laws of distance-dependent random graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", parents=[common], help="draw one graph")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser(
        "estimate", parents=[common, sampling], help="estimate Pr[sentence] over n"
    )
    p.add_argument("--n", type=int)
    p.add_argument("--grid", help="comma-separated n values")
    p.add_argument("--sentence", required=True)

    p = sub.add_parser(
        "oscillate", parents=[common, sampling], help="build and verify a plan"
    )
    p.add_argument("--variant", required=True)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--slack", type=float, default=defaults.slack)
    p.add_argument("--assert-hypothesis", action="store_true")
    p.add_argument("--plan-dir", type=Path)

    p = sub.add_parser("validate", parents=[common], help="structural checks")
    p.add_argument("--check", required=True, choices=CHECKS)
    p.add_argument("--q", help="candidate sequence for --check gen")
    p.add_argument("--mode", type=int, default=1)
    p.add_argument("--grid", help="comma-separated n values")

    p = sub.add_parser("bounds", parents=[common], help="evaluate a closed-form bound")
    p.add_argument("--bound", required=True)
    return parser


def to_run_config(args: argparse.Namespace) -> RunConfig:
    values = {
        key: value
        for key, value in vars(args).items()
        if key not in ("param", "verbose", "grid", "seq", "q") and value is not None
    }
    if getattr(args, "seq", None):
        values["seq"] = parse_seq(args.seq)
    if getattr(args, "q", None):
        values["q"] = parse_seq(args.q)
    if getattr(args, "grid", None):
        values["grid"] = parse_grid(args.grid)
    values["params"] = parse_params(args.param)
    try:
        return RunConfig(**values)
    except ValidationError as exc:
        raise InvalidParamsError(str(exc)) from exc


def setup_logging(verbose: bool) -> None:
    load_dotenv()
    configure_logging(
        console_level="DEBUG" if verbose else os.getenv("LOG_CONSOLE_LEVEL", "INFO"),
        file_level=os.getenv("LOG_FILE_LEVEL", "DEBUG"),
        log_file=os.getenv("LOG_FILE") or None,
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    try:
        config = to_run_config(args)
        set_run_context(config.command, config.seed)
        logger.info(f"running {config.command}")
        return COMMANDS[config.command](config)
    except ZeroOneError as exc:
        logger.error(f"{exc.kind}: {exc.message}")
        return exc.exit_code
    except OSError as exc:
        logger.error(f"I/O error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
