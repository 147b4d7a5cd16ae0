"""Game definitions: states, message alphabets, acts, priors, utilities.

A game is described by an immutable :class:`GameSpec`.  Compound signals are
plain tuples of atomic symbols, one slot per sender; ``None`` marks an absent
slot in a partial signal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

import numpy as np

PRIOR_TOL = 1e-12

# One slot per sender; None marks an absent slot.
CompoundSignal = tuple  # tuple[Optional[str], ...]


class InvalidSpecError(ValueError):
    """A game specification violates a structural invariant."""


@dataclass(frozen=True)
class GameSpec:
    """The tuple defining a signaling game.

    ``sender_alphabets`` holds one alphabet of atomic message symbols per
    sender; symbols are opaque strings, globally unique across senders so
    that replacement events can mint fresh names without collisions.
    ``utility`` is a dense (state, act) reward matrix.
    """

    num_states: int
    sender_alphabets: tuple[tuple[str, ...], ...]
    num_acts: int
    state_prior: tuple[float, ...]
    utility: tuple[tuple[float, ...], ...]

    @property
    def num_senders(self) -> int:
        return len(self.sender_alphabets)

    def prior_array(self) -> np.ndarray:
        return np.asarray(self.state_prior, dtype=float)

    def utility_array(self) -> np.ndarray:
        return np.asarray(self.utility, dtype=float)

    def all_symbols(self) -> list[str]:
        return [m for alphabet in self.sender_alphabets for m in alphabet]

    def sender_of(self, symbol: str) -> int:
        for i, alphabet in enumerate(self.sender_alphabets):
            if symbol in alphabet:
                return i
        raise KeyError(f"unknown symbol {symbol!r}")

    def signals(self) -> list[CompoundSignal]:
        """All complete compound signals, in deterministic product order."""
        return [tuple(sig) for sig in itertools.product(*self.sender_alphabets)]

    def optimal_act(self, state: int) -> int:
        return int(np.argmax(self.utility_array()[state]))

    def to_json_dict(self) -> dict:
        return {
            "num_states": self.num_states,
            "sender_alphabets": [list(a) for a in self.sender_alphabets],
            "num_acts": self.num_acts,
            "state_prior": list(self.state_prior),
            "utility": [list(row) for row in self.utility],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "GameSpec":
        return cls(
            num_states=int(data["num_states"]),
            sender_alphabets=tuple(
                tuple(str(m) for m in a) for a in data["sender_alphabets"]
            ),
            num_acts=int(data["num_acts"]),
            state_prior=tuple(float(p) for p in data["state_prior"]),
            utility=tuple(tuple(float(u) for u in row) for row in data["utility"]),
        )


def validate(spec: GameSpec) -> list[str]:
    """Check structural invariants; returns a list of violations (empty = ok)."""
    problems: list[str] = []
    prior = spec.prior_array()
    if prior.shape != (spec.num_states,):
        problems.append(
            f"state_prior has length {prior.shape[0]}, expected {spec.num_states}"
        )
    if np.any(prior < 0):
        problems.append("state_prior has negative entries")
    if abs(float(prior.sum()) - 1.0) > PRIOR_TOL:
        problems.append(f"state_prior sums to {float(prior.sum())!r}, not 1")
    for i, alphabet in enumerate(spec.sender_alphabets):
        if not alphabet:
            problems.append(f"sender {i} has an empty alphabet")
    symbols = spec.all_symbols()
    if len(symbols) != len(set(symbols)):
        problems.append("duplicate message symbols across senders")
    utility = spec.utility_array()
    if utility.shape != (spec.num_states, spec.num_acts):
        problems.append(
            f"utility has shape {utility.shape}, expected "
            f"{(spec.num_states, spec.num_acts)}"
        )
    return problems


def _check(spec: GameSpec) -> GameSpec:
    problems = validate(spec)
    if problems:
        raise InvalidSpecError("; ".join(problems))
    return spec


def make_atomic_game(n: int) -> GameSpec:
    """The atomic n-game: one sender, n states/messages/acts, identity reward."""
    if n < 2:
        raise InvalidSpecError("atomic game needs at least 2 states")
    identity = tuple(
        tuple(1.0 if i == j else 0.0 for j in range(n)) for i in range(n)
    )
    return _check(
        GameSpec(
            num_states=n,
            sender_alphabets=(tuple(f"m{i}" for i in range(n)),),
            num_acts=n,
            state_prior=tuple(1.0 / n for _ in range(n)),
            utility=identity,
        )
    )


def make_two_sender_game() -> GameSpec:
    """The 4x4x4 two-sender game: two binary senders, four states and acts."""
    identity = tuple(
        tuple(1.0 if i == j else 0.0 for j in range(4)) for i in range(4)
    )
    return _check(
        GameSpec(
            num_states=4,
            sender_alphabets=(("mA0", "mA1"), ("mB0", "mB1")),
            num_acts=4,
            state_prior=(0.25, 0.25, 0.25, 0.25),
            utility=identity,
        )
    )


def validate_signal(
    alphabets: tuple[tuple[str, ...], ...], signal: CompoundSignal
) -> None:
    """Check slot count and per-sender membership of a compound signal."""
    if len(signal) != len(alphabets):
        raise ValueError(
            f"signal {signal!r} has {len(signal)} slots, expected {len(alphabets)}"
        )
    for slot, (symbol, alphabet) in enumerate(zip(signal, alphabets)):
        if symbol is not None and symbol not in alphabet:
            raise ValueError(f"slot {slot}: {symbol!r} not in sender alphabet")


def signal_label(signal: CompoundSignal) -> str:
    """Human-readable label for table rows, e.g. ``mA0 & mB1``."""
    return " & ".join("?" if m is None else str(m) for m in signal)
