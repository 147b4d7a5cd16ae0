"""Seeded trajectory runner for repeated signaling games.

One trajectory is a strictly sequential loop: draw a state, let each sender
emit a message, let the receiver act, reward and reinforce, with scheduled
symbol-replacement events and metric snapshots at a fixed cadence.  Batches
run independent trajectories on consecutive seeds and aggregate by turn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .agents import Receiver, Sender, make_receiver
from .game import GameSpec, InvalidSpecError, validate
from .infotheory import (
    PolicySnapshot,
    receiver_average_info,
    sender_average_info,
)
from .reinforcement import make_rng, sample_weights


@dataclass(frozen=True)
class ReplacementEvent:
    """At ``turn``, sender ``sender_index`` renames ``old_symbol`` to a fresh
    ``new_symbol``; the receiver reacts per its architecture."""

    turn: int
    sender_index: int
    old_symbol: str
    new_symbol: str


@dataclass
class TrajectoryConfig:
    spec: GameSpec
    receiver_kind: str = "conventional"
    temperature: float = 2000.0
    normalized_scores: bool = False
    introduction_mode: str = "erasing"
    alpha: float = 1.0
    total_turns: int = 100_000
    events: tuple[ReplacementEvent, ...] = ()
    snapshot_every: int = 100
    seed: int = 0

    def check(self) -> None:
        problems = validate(self.spec)
        if problems:
            raise InvalidSpecError("; ".join(problems))
        if self.total_turns < 0:
            raise ValueError("total_turns must be non-negative")
        if self.snapshot_every < 1:
            raise ValueError("snapshot_every must be at least 1")
        for event in self.events:
            if not (1 <= event.turn <= self.total_turns):
                raise ValueError(
                    f"event turn {event.turn} outside [1, {self.total_turns}]"
                )


@dataclass
class InfoReport:
    """One metric record; phase is 'regular', or 'pre'/'post' at an event."""

    turn: int
    phase: str
    expected_payoff: float
    sender_info_bits: float
    receiver_info_bits: float


@dataclass
class Trajectory:
    config: TrajectoryConfig
    reports: list[InfoReport]
    senders: list[Sender]
    receiver: Receiver
    # (turn, phase) -> PolicySnapshot captured on either side of each event
    event_snapshots: dict[tuple[int, str], PolicySnapshot] = field(default_factory=dict)


def build_agents(config: TrajectoryConfig) -> tuple[list[Sender], Receiver]:
    spec = config.spec
    senders = [Sender(spec, i) for i in range(spec.num_senders)]
    receiver = make_receiver(
        spec,
        config.receiver_kind,
        temperature=config.temperature,
        normalized=config.normalized_scores,
        introduction_mode=config.introduction_mode,
        alpha=config.alpha,
    )
    return senders, receiver


def step(
    spec: GameSpec,
    senders: Sequence[Sender],
    receiver: Receiver,
    rng: np.random.Generator,
    prior_weights: Sequence[float],
) -> tuple[int, tuple, int, float]:
    """One full round of play, including reinforcement.

    Returns (state, signal, act, reward).
    """
    state = sample_weights(prior_weights, rng)
    signal = tuple(sender.choose(state, rng) for sender in senders)
    receiver.on_signal(signal)
    act = receiver.choose(signal, rng)
    reward = spec.utility[state][act]
    if reward:
        for sender, symbol in zip(senders, signal):
            sender.reinforce(state, symbol, reward)
    receiver.reinforce(signal, act, reward)
    return state, signal, act, reward


def apply_event(
    event: ReplacementEvent, senders: Sequence[Sender], receiver: Receiver
) -> None:
    senders[event.sender_index].replace_message(event.old_symbol, event.new_symbol)
    receiver.on_replacement(event.old_symbol, event.new_symbol)


def take_snapshot(
    spec: GameSpec, senders: Sequence[Sender], receiver: Receiver
) -> PolicySnapshot:
    """Freeze current conditional distributions over the live alphabets."""
    alphabets = tuple(tuple(sender.alphabet) for sender in senders)
    conditionals = [sender.conditional_matrix() for sender in senders]
    snapshot = PolicySnapshot(
        state_prior=spec.prior_array(),
        sender_alphabets=alphabets,
        sender_conditionals=conditionals,
        receiver_conditionals={},
    )
    receiver_conditionals = {
        sig: np.asarray(receiver.act_distribution(sig), dtype=float)
        for sig in snapshot.signals()
    }
    snapshot.receiver_conditionals = receiver_conditionals
    return snapshot


def snapshot_expected_payoff(spec: GameSpec, snapshot: PolicySnapshot) -> float:
    """Exact expected payoff of the snapshotted policies."""
    total = 0.0
    utility = spec.utility
    for s in range(spec.num_states):
        p_s = snapshot.state_prior[s]
        if p_s <= 0:
            continue
        for sig in snapshot.signals():
            p_sig = snapshot.signal_prob_given_state(sig, s)
            if p_sig <= 0:
                continue
            rho = snapshot.receiver_conditionals[sig]
            total += p_s * p_sig * float(np.dot(rho, utility[s]))
    return total


def make_report(spec: GameSpec, snapshot: PolicySnapshot, turn: int, phase: str) -> InfoReport:
    return InfoReport(
        turn=turn,
        phase=phase,
        expected_payoff=snapshot_expected_payoff(spec, snapshot),
        sender_info_bits=sender_average_info(snapshot),
        receiver_info_bits=receiver_average_info(snapshot),
    )


def run(config: TrajectoryConfig) -> Trajectory:
    """Execute one seeded trajectory, returning its metric reports."""
    config.check()
    spec = config.spec
    rng = make_rng(config.seed)
    senders, receiver = build_agents(config)
    events_by_turn = {event.turn: event for event in config.events}
    prior_weights = list(spec.state_prior)

    reports = [make_report(spec, take_snapshot(spec, senders, receiver), 0, "regular")]
    event_snapshots: dict[tuple[int, str], PolicySnapshot] = {}
    for turn in range(1, config.total_turns + 1):
        step(spec, senders, receiver, rng, prior_weights)
        event = events_by_turn.get(turn)
        if event is not None:
            # events fire after the turn's step; snapshot both sides of it
            snapshot = take_snapshot(spec, senders, receiver)
            event_snapshots[(turn, "pre")] = snapshot
            reports.append(make_report(spec, snapshot, turn, "pre"))
            apply_event(event, senders, receiver)
            snapshot = take_snapshot(spec, senders, receiver)
            event_snapshots[(turn, "post")] = snapshot
            reports.append(make_report(spec, snapshot, turn, "post"))
        elif turn % config.snapshot_every == 0:
            reports.append(
                make_report(spec, take_snapshot(spec, senders, receiver), turn, "regular")
            )
    return Trajectory(
        config=config,
        reports=reports,
        senders=senders,
        receiver=receiver,
        event_snapshots=event_snapshots,
    )


@dataclass
class AggregateRow:
    turn: int
    phase: str
    mean_payoff: float
    std_payoff: float
    mean_sender_info: float
    std_sender_info: float
    mean_receiver_info: float
    std_receiver_info: float


@dataclass
class BatchResult:
    trajectories: list[Trajectory]
    aggregate: list[AggregateRow]

    def aggregate_row(self, turn: int, phase: str = "regular") -> AggregateRow:
        for row in self.aggregate:
            if row.turn == turn and row.phase == phase:
                return row
        raise KeyError(f"no aggregate row at turn {turn} phase {phase!r}")


def run_batch(config: TrajectoryConfig, num_runs: int) -> BatchResult:
    """Run trajectories on seeds seed, seed+1, ... and aggregate by turn."""
    if num_runs < 1:
        raise ValueError("num_runs must be at least 1")
    trajectories = [
        run(replace(config, seed=config.seed + i)) for i in range(num_runs)
    ]
    n_reports = len(trajectories[0].reports)
    aggregate = []
    for i in range(n_reports):
        slot = [t.reports[i] for t in trajectories]
        payoff = np.array([r.expected_payoff for r in slot])
        sender = np.array([r.sender_info_bits for r in slot])
        recv = np.array([r.receiver_info_bits for r in slot])
        aggregate.append(
            AggregateRow(
                turn=slot[0].turn,
                phase=slot[0].phase,
                mean_payoff=float(payoff.mean()),
                std_payoff=float(payoff.std()),
                mean_sender_info=float(sender.mean()),
                std_sender_info=float(sender.std()),
                mean_receiver_info=float(recv.mean()),
                std_receiver_info=float(recv.std()),
            )
        )
    return BatchResult(trajectories=trajectories, aggregate=aggregate)


SIGNALING_SYSTEM_PAYOFF = 0.95  # reporting convention


def reached_signaling_system(trajectory: Trajectory) -> bool:
    return trajectory.reports[-1].expected_payoff >= SIGNALING_SYSTEM_PAYOFF
