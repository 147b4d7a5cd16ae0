"""Command-line harness: run experiment configs, write CSV/SVG artifacts,
and audit replacement outcomes against the compositional expectation.

Exit codes: 0 success, 1 experiment failure, 2 config error,
3 audit flagged non-compositional.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

from .agents import Sender, receiver_from_json_dict
from .engine import (
    BatchResult,
    ReplacementEvent,
    Trajectory,
    TrajectoryConfig,
    apply_event,
    run_batch,
    take_snapshot,
)
from .game import GameSpec, make_atomic_game, make_two_sender_game
from .infotheory import (
    NEG_INF,
    PolicySnapshot,
    compositional_conditionals,
    compositional_expectation,
    compositional_expected_average,
    info_table,
    receiver_average_info,
    signal_info,
)
from .svgplot import line_chart

EXIT_OK = 0
EXIT_EXPERIMENT_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_NON_COMPOSITIONAL = 3

DEFAULT_AUDIT_THRESHOLD = 0.25  # bits


class ConfigError(ValueError):
    """A config file problem, reported with its location in the document."""


@dataclass
class ExperimentConfig:
    name: str
    trajectory: TrajectoryConfig
    num_runs: int = 20
    plot: bool = True
    comment: str = ""


# ---------------------------------------------------------------------------
# config parsing

_EXPERIMENT_KEYS = {
    "name",
    "comment",
    "game",
    "receiver",
    "temperature",
    "normalized_scores",
    "introduction_mode",
    "alpha",
    "total_turns",
    "snapshot_every",
    "num_runs",
    "seed",
    "events",
    "plot",
}
_EVENT_KEYS = {"turn", "sender", "old", "new"}


def _require(condition: bool, where: str, message: str) -> None:
    if not condition:
        raise ConfigError(f"{where}: {message}")


def _reject_unknown(unknown: set, where: str) -> None:
    if unknown:
        raise ConfigError(f"{where}: unknown key {sorted(unknown)[0]!r}")


def _parse_game(value, where: str) -> GameSpec:
    if value is None or value == "two_sender":
        return make_two_sender_game()
    if isinstance(value, dict):
        if set(value) == {"atomic"}:
            _require(
                isinstance(value["atomic"], int) and value["atomic"] >= 2,
                where,
                "atomic game needs an integer size >= 2",
            )
            return make_atomic_game(value["atomic"])
        try:
            return GameSpec.from_json_dict(value)
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"{where}: bad game spec ({exc})") from exc
    raise ConfigError(f"{where}: game must be 'two_sender', {{'atomic': n}}, or a spec dict")


def _parse_event(data, where: str) -> ReplacementEvent:
    _require(isinstance(data, dict), where, "event must be an object")
    _reject_unknown(set(data) - _EVENT_KEYS, where)
    for key in _EVENT_KEYS:
        _require(key in data, where, f"missing key {key!r}")
    return ReplacementEvent(
        turn=data["turn"],
        sender_index=data["sender"],
        old_symbol=data["old"],
        new_symbol=data["new"],
    )


def _parse_experiment(data, where: str) -> ExperimentConfig:
    _require(isinstance(data, dict), where, "experiment must be an object")
    _reject_unknown(set(data) - _EXPERIMENT_KEYS, where)
    _require("name" in data, where, "missing key 'name'")
    name = data["name"]
    _require(isinstance(name, str) and name != "", where, "name must be a non-empty string")

    spec = _parse_game(data.get("game"), f"{where}.game")
    events = tuple(
        _parse_event(e, f"{where}.events[{i}]")
        for i, e in enumerate(data.get("events", []))
    )
    trajectory = TrajectoryConfig(
        spec=spec,
        receiver_kind=data.get("receiver", "conventional"),
        temperature=float(data.get("temperature", 2000.0)),
        normalized_scores=bool(data.get("normalized_scores", False)),
        introduction_mode=data.get("introduction_mode", "erasing"),
        alpha=float(data.get("alpha", 1.0)),
        total_turns=data.get("total_turns", 100_000),
        events=events,
        snapshot_every=data.get("snapshot_every", 100),
        seed=data.get("seed", 0),
    )
    _require(
        trajectory.receiver_kind in ("conventional", "minimalist", "generalist"),
        f"{where}.receiver",
        f"unknown receiver kind {trajectory.receiver_kind!r}",
    )
    _require(
        isinstance(trajectory.total_turns, int) and trajectory.total_turns >= 0,
        f"{where}.total_turns",
        "must be a non-negative integer",
    )
    num_runs = data.get("num_runs", 20)
    _require(
        isinstance(num_runs, int) and num_runs >= 1,
        f"{where}.num_runs",
        "must be a positive integer",
    )
    try:
        trajectory.check()
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc
    return ExperimentConfig(
        name=name,
        trajectory=trajectory,
        num_runs=num_runs,
        plot=bool(data.get("plot", True)),
        comment=data.get("comment", ""),
    )


def parse_config(path) -> list[ExperimentConfig]:
    """Load and validate a config file; unknown keys are rejected."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"{path}: no such file")
    try:
        document = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    _require(isinstance(document, dict), str(path), "top level must be an object")
    _reject_unknown(set(document) - {"experiments", "comment"}, str(path))
    _require("experiments" in document, str(path), "missing key 'experiments'")
    experiments_raw = document["experiments"]
    _require(isinstance(experiments_raw, list), f"{path}.experiments", "must be a list")
    experiments = [
        _parse_experiment(e, f"{path}.experiments[{i}]")
        for i, e in enumerate(experiments_raw)
    ]
    names = [e.name for e in experiments]
    _require(
        len(set(names)) == len(names), f"{path}.experiments", "duplicate experiment names"
    )
    return experiments


# ---------------------------------------------------------------------------
# experiment artifacts


def _csv_value(value: float) -> str:
    if value == NEG_INF:
        return "-inf"
    return f"{value:.12g}"


def _runs_csv(batch: BatchResult) -> str:
    lines = ["run_id,turn,phase,expected_payoff,sender_info_bits,receiver_info_bits"]
    for run_id, trajectory in enumerate(batch.trajectories):
        for report in trajectory.reports:
            lines.append(
                f"{run_id},{report.turn},{report.phase},"
                f"{_csv_value(report.expected_payoff)},"
                f"{_csv_value(report.sender_info_bits)},"
                f"{_csv_value(report.receiver_info_bits)}"
            )
    return "\r\n".join(lines) + "\r\n"


def _aggregate_csv(batch: BatchResult) -> str:
    lines = [
        "turn,phase,mean_payoff,std_payoff,mean_sender_info,std_sender_info,"
        "mean_receiver_info,std_receiver_info"
    ]
    for row in batch.aggregate:
        lines.append(
            f"{row.turn},{row.phase},{_csv_value(row.mean_payoff)},"
            f"{_csv_value(row.std_payoff)},{_csv_value(row.mean_sender_info)},"
            f"{_csv_value(row.std_sender_info)},{_csv_value(row.mean_receiver_info)},"
            f"{_csv_value(row.std_receiver_info)}"
        )
    return "\r\n".join(lines) + "\r\n"


def _policy_json(trajectory: Trajectory) -> str:
    document = {
        "format": "signalgames-policy",
        "turn": trajectory.config.total_turns,
        "game": trajectory.config.spec.to_json_dict(),
        "senders": [sender.to_json_dict() for sender in trajectory.senders],
        "receiver": trajectory.receiver.to_json_dict(),
    }
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _plot_svg(exp: ExperimentConfig, batch: BatchResult) -> str:
    xs = [row.turn for row in batch.aggregate]
    ys = [row.mean_receiver_info for row in batch.aggregate]
    return line_chart(
        [("mean receiver info", xs, ys)],
        title=exp.name,
        xlabel="turn",
        ylabel="average information (bits)",
        vlines=[event.turn for event in exp.trajectory.events],
    )


def run_experiment(
    exp: ExperimentConfig,
    out_dir: Path,
    num_runs: Optional[int] = None,
    seed: Optional[int] = None,
    plot: Optional[bool] = None,
    dump_policy: bool = False,
) -> list[str]:
    """Run one experiment batch and write its artifacts; returns filenames."""
    config = exp.trajectory
    if seed is not None:
        config = replace(config, seed=seed)
    runs = num_runs if num_runs is not None else exp.num_runs
    batch = run_batch(config, runs)

    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[str] = []

    def emit(filename: str, text: str) -> None:
        (out_dir / filename).write_text(text, newline="")
        written.append(filename)

    emit(f"{exp.name}_runs.csv", _runs_csv(batch))
    emit(f"{exp.name}_aggregate.csv", _aggregate_csv(batch))
    # event-boundary acts tables from the first run of the batch
    first = batch.trajectories[0]
    for (turn, phase), snapshot in sorted(first.event_snapshots.items()):
        table = info_table(snapshot, rows="compound", cols="acts")
        emit(f"{exp.name}_event{turn}_{phase}_acts.csv", table.to_csv())
    if (plot if plot is not None else exp.plot):
        emit(f"{exp.name}.svg", _plot_svg(exp, batch))
    if dump_policy:
        emit(f"{exp.name}_policy.json", _policy_json(first))
    return written


# ---------------------------------------------------------------------------
# audit


def load_policy(path) -> tuple[GameSpec, PolicySnapshot, list[Sender], object]:
    """Rebuild agents from a --dump-policy file and snapshot their policies."""
    try:
        document = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"{path}: cannot read policy file ({exc})") from exc
    try:
        spec = GameSpec.from_json_dict(document["game"])
        senders = [
            Sender.from_json_dict(spec, data) for data in document["senders"]
        ]
        receiver = receiver_from_json_dict(spec, document["receiver"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{path}: malformed policy file ({exc})") from exc
    snapshot = take_snapshot(spec, senders, receiver)
    return spec, snapshot, senders, receiver


def _format_table(table) -> str:
    width = max(len(label) for label in table.row_labels + [""])
    header = " " * width + "  " + "  ".join(f"{c:>8}" for c in table.col_labels)
    lines = [header]
    for label, row in zip(table.row_labels, table.cells):
        cells = "  ".join(
            f"{'-inf':>8}" if v == NEG_INF else f"{v:8.3f}" for v in row
        )
        lines.append(f"{label:<{width}}  {cells}")
    return "\n".join(lines)


def audit_command(
    policy_path,
    replaced_symbol: str,
    threshold: float = DEFAULT_AUDIT_THRESHOLD,
    out=None,
) -> int:
    """Compare actual post-replacement information against the compositional
    expectation; returns the exit code."""
    out = sys.stdout if out is None else out
    spec, pre_snapshot, senders, receiver = load_policy(policy_path)
    if replaced_symbol not in [m for a in pre_snapshot.sender_alphabets for m in a]:
        raise ConfigError(f"symbol {replaced_symbol!r} not in any sender alphabet")
    new_symbol = replaced_symbol + "?"
    sender_index = pre_snapshot.sender_of(replaced_symbol)

    event = ReplacementEvent(0, sender_index, replaced_symbol, new_symbol)
    apply_event(event, senders, receiver)
    post_snapshot = take_snapshot(spec, senders, receiver)

    actual = info_table(post_snapshot, rows="compound", cols="acts")
    expected = compositional_expectation(pre_snapshot, replaced_symbol, new_symbol)

    print(f"replacing {replaced_symbol!r} with fresh symbol {new_symbol!r}", file=out)
    print("\nactual post-replacement information about acts (bits):", file=out)
    print(_format_table(actual), file=out)
    print("\ncompositional expectation (bits):", file=out)
    print(_format_table(expected), file=out)

    # per-row average transmitted info, actual vs expected
    expected_cond, q_post = compositional_conditionals(
        pre_snapshot, replaced_symbol, new_symbol
    )
    prior = post_snapshot.state_prior
    print("\nper-signal transmitted info, actual vs expected (bits):", file=out)
    for sig in sorted(q_post, key=lambda s: tuple(map(str, s))):
        actual_bits = (
            signal_info(post_snapshot.receiver_conditionals[sig], prior)
            if q_post[sig] > 0
            else 0.0
        )
        expected_bits = signal_info(expected_cond[sig], prior) if q_post[sig] > 0 else 0.0
        label = " & ".join(sig)
        print(
            f"  {label:<16} actual {actual_bits:6.3f}  expected {expected_bits:6.3f}"
            f"  delta {actual_bits - expected_bits:+6.3f}",
            file=out,
        )

    actual_avg = receiver_average_info(post_snapshot)
    expected_avg = compositional_expected_average(pre_snapshot, replaced_symbol, new_symbol)
    gap = expected_avg - actual_avg
    print(
        f"\naverage transmitted info: actual {actual_avg:.4f}, "
        f"expected {expected_avg:.4f}, gap {gap:.4f} bits "
        f"(threshold {threshold:g})",
        file=out,
    )
    if gap > threshold:
        print("verdict: NON-COMPOSITIONAL (more information lost than expected)", file=out)
        return EXIT_NON_COMPOSITIONAL
    print("verdict: compositional within threshold", file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="signalgames",
        description="Run urn-learning signaling game experiments and audits.",
    )
    parser.add_argument("--config", type=Path, help="experiment config JSON file")
    parser.add_argument("--experiment", help="run only the named experiment")
    parser.add_argument("--runs", type=int, help="override num_runs for every experiment")
    parser.add_argument("--seed", type=int, help="override the base seed")
    parser.add_argument("--out", type=Path, default=Path("out"), help="output directory")
    plot_group = parser.add_mutually_exclusive_group()
    plot_group.add_argument("--plot", dest="plot", action="store_true", default=None)
    plot_group.add_argument("--no-plot", dest="plot", action="store_false")
    parser.add_argument(
        "--dump-policy",
        action="store_true",
        help="write final-turn agent snapshots as JSON",
    )
    parser.add_argument("--audit", metavar="POLICY", type=Path, help="policy JSON to audit")
    parser.add_argument("--replace", metavar="SYMBOL", help="symbol replaced in the audit")
    parser.add_argument(
        "--threshold",
        type=float,
        default=DEFAULT_AUDIT_THRESHOLD,
        help="audit gap threshold in bits (default %(default)s)",
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.audit is not None:
            if not args.replace:
                parser.error("--audit requires --replace SYMBOL")
            return audit_command(args.audit, args.replace, args.threshold)

        if args.config is None:
            parser.error("either --config or --audit is required")
        experiments = parse_config(args.config)
        if args.experiment is not None:
            experiments = [e for e in experiments if e.name == args.experiment]
            if not experiments:
                raise ConfigError(f"no experiment named {args.experiment!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR

    manifest: dict[str, list[str]] = {}
    failed = False
    for exp in experiments:
        try:
            manifest[exp.name] = run_experiment(
                exp,
                args.out,
                num_runs=args.runs,
                seed=args.seed,
                plot=args.plot,
                dump_policy=args.dump_policy,
            )
            print(f"{exp.name}: wrote {len(manifest[exp.name])} artifacts")
        except Exception as exc:  # keep going; partial outputs stay on disk
            failed = True
            manifest[exp.name] = [f"FAILED: {exc}"]
            print(f"{exp.name}: FAILED ({exc})", file=sys.stderr)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    )
    return EXIT_EXPERIMENT_FAILURE if failed else EXIT_OK


def entry_point() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry_point()
