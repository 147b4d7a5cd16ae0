"""Exact information metrics computed analytically from policy snapshots.

Everything is in bits (log base 2).  Zero conditional probabilities produce a
negative-infinity sentinel in content tables; the sentinel is set by an exact
zero test, never by floating-point underflow.  Metrics are exact expectations
over states, messages and acts: no empirical sampling enters here.
"""

from __future__ import annotations

import io
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .game import CompoundSignal, signal_label

NEG_INF = float("-inf")

# Conditionals at or below this are treated as exact zeros for the sentinel.
ZERO_TOL = 1e-15

NORM_TOL = 1e-9


def _check_normalized(p: np.ndarray, name: str) -> None:
    if np.any(p < -ZERO_TOL):
        raise ValueError(f"{name} has negative entries")
    if abs(float(p.sum()) - 1.0) > NORM_TOL:
        raise ValueError(f"{name} sums to {float(p.sum())!r}, not 1")


def entropy(p: Sequence[float]) -> float:
    """Shannon entropy in bits, with 0 log 0 = 0."""
    arr = np.asarray(p, dtype=float)
    _check_normalized(arr, "probability vector")
    nz = arr[arr > ZERO_TOL]
    return float(-np.sum(nz * np.log2(nz)))


def pointwise_info(p_cond: float, p_prior: float) -> float:
    """log2(p_cond / p_prior); the -inf sentinel when p_cond is zero."""
    if p_prior <= 0:
        raise ValueError("prior probability must be positive")
    if p_cond <= ZERO_TOL:
        return NEG_INF
    return math.log2(p_cond / p_prior)


def signal_info(p_cond: Sequence[float], p_prior: Sequence[float]) -> float:
    """KL divergence (bits) from prior to the post-signal conditional."""
    cond = np.asarray(p_cond, dtype=float)
    prior = np.asarray(p_prior, dtype=float)
    _check_normalized(cond, "conditional")
    _check_normalized(prior, "prior")
    if np.any(prior <= 0):
        raise ValueError("prior must be strictly positive")
    mask = cond > ZERO_TOL
    return float(np.sum(cond[mask] * np.log2(cond[mask] / prior[mask])))


def mutual_info(joint: Sequence[Sequence[float]]) -> float:
    """Mutual information (bits) of a joint distribution matrix."""
    j = np.asarray(joint, dtype=float)
    _check_normalized(j.ravel(), "joint")
    row = j.sum(axis=1)  # P(s)
    col = j.sum(axis=0)  # P(m)
    total = 0.0
    for i in range(j.shape[0]):
        for k in range(j.shape[1]):
            p = j[i, k]
            if p > ZERO_TOL:
                total += p * math.log2(p / (row[i] * col[k]))
    return total


def average_info(
    message_probs: Sequence[float],
    conditionals: Sequence[Sequence[float]],
    prior: Sequence[float],
) -> float:
    """Average transmitted information: Q-weighted per-message KL (bits)."""
    q = np.asarray(message_probs, dtype=float)
    _check_normalized(q, "message probabilities")
    if len(conditionals) != len(q):
        raise ValueError("one conditional per message required")
    return float(
        sum(
            qi * signal_info(cond, prior)
            for qi, cond in zip(q, conditionals)
            if qi > ZERO_TOL
        )
    )


@dataclass
class PolicySnapshot:
    """Frozen conditional distributions of all agents at one turn."""

    state_prior: np.ndarray
    sender_alphabets: tuple[tuple[str, ...], ...]
    sender_conditionals: list[np.ndarray]  # one |S| x |alphabet| matrix per sender
    receiver_conditionals: dict[CompoundSignal, np.ndarray]

    def __post_init__(self):
        self.state_prior = np.asarray(self.state_prior, dtype=float)
        self.sender_conditionals = [
            np.asarray(m, dtype=float) for m in self.sender_conditionals
        ]
        self.receiver_conditionals = {
            tuple(k): np.asarray(v, dtype=float)
            for k, v in self.receiver_conditionals.items()
        }

    @property
    def num_states(self) -> int:
        return len(self.state_prior)

    @property
    def num_acts(self) -> int:
        return len(next(iter(self.receiver_conditionals.values())))

    def signals(self) -> list[CompoundSignal]:
        return [tuple(sig) for sig in itertools.product(*self.sender_alphabets)]

    def signal_prob_given_state(self, signal: CompoundSignal, state: int) -> float:
        p = 1.0
        for sender, symbol in enumerate(signal):
            alphabet = self.sender_alphabets[sender]
            p *= float(self.sender_conditionals[sender][state, alphabet.index(symbol)])
        return p

    def signal_marginal(self) -> dict[CompoundSignal, float]:
        """Q(signal) induced by the prior and current sender policies."""
        return {
            sig: float(
                sum(
                    self.state_prior[s] * self.signal_prob_given_state(sig, s)
                    for s in range(self.num_states)
                )
            )
            for sig in self.signals()
        }

    def state_posterior(self, signal: CompoundSignal) -> np.ndarray:
        """P(state | signal) by Bayes; zero-probability signals stay zero."""
        joint = np.array(
            [
                self.state_prior[s] * self.signal_prob_given_state(signal, s)
                for s in range(self.num_states)
            ]
        )
        total = joint.sum()
        if total <= 0.0:
            return joint
        return joint / total

    def validate(self) -> list[str]:
        problems = []
        if abs(float(self.state_prior.sum()) - 1.0) > NORM_TOL:
            problems.append("state prior not normalized")
        for i, mat in enumerate(self.sender_conditionals):
            if np.any(np.abs(mat.sum(axis=1) - 1.0) > NORM_TOL):
                problems.append(f"sender {i} conditional rows not normalized")
        for sig, row in self.receiver_conditionals.items():
            if abs(float(np.sum(row)) - 1.0) > NORM_TOL:
                problems.append(f"receiver conditional for {sig} not normalized")
        return problems

    def sender_of(self, symbol: str) -> int:
        for i, alphabet in enumerate(self.sender_alphabets):
            if symbol in alphabet:
                return i
        raise KeyError(f"unknown symbol {symbol!r}")


def induced_act_prior(snapshot: PolicySnapshot) -> np.ndarray:
    """Marginal act distribution under current sender and receiver policies."""
    q = snapshot.signal_marginal()
    prior = np.zeros(snapshot.num_acts)
    for sig, qp in q.items():
        prior += qp * snapshot.receiver_conditionals[sig]
    return prior


def _act_prior(snapshot: PolicySnapshot, act_prior) -> np.ndarray:
    # Default: the state prior carried over to acts.  The games in scope pair
    # exactly one optimal act with each state, so information about acts is
    # read against the same baseline as information about states; this is the
    # convention under which converged tables show log2(1/P(s)) cells and
    # fresh signals show all-zero rows.  Pass induced_act_prior(snapshot) to
    # measure against the policy-induced act marginal instead.
    if act_prior is None:
        return snapshot.state_prior
    return np.asarray(act_prior, dtype=float)


def sender_average_info(snapshot: PolicySnapshot) -> float:
    """Average information the compound signals carry about states (bits)."""
    q = snapshot.signal_marginal()
    total = 0.0
    for sig, qp in q.items():
        if qp > ZERO_TOL:
            total += qp * signal_info(snapshot.state_posterior(sig), snapshot.state_prior)
    return total


def receiver_average_info(snapshot: PolicySnapshot, act_prior=None) -> float:
    """Average information the compound signals carry about acts (bits)."""
    prior = _act_prior(snapshot, act_prior)
    q = snapshot.signal_marginal()
    total = 0.0
    for sig, qp in q.items():
        if qp > ZERO_TOL:
            total += qp * signal_info(snapshot.receiver_conditionals[sig], prior)
    return total


RowLabel = Union[str, tuple]


@dataclass
class InfoTable:
    """Tabular information content: rows of pointwise info in bits."""

    row_labels: list[str]
    col_labels: list[str]
    cells: np.ndarray

    def row(self, label: str) -> np.ndarray:
        return self.cells[self.row_labels.index(label)]

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("," + ",".join(self.col_labels) + "\r\n")
        for label, row in zip(self.row_labels, self.cells):
            cells = ["-inf" if v == NEG_INF else f"{v:.12g}" for v in row]
            out.write(label + "," + ",".join(cells) + "\r\n")
        return out.getvalue()


def _conditional_for_row(
    snapshot: PolicySnapshot, row: RowLabel, cols: str
) -> np.ndarray:
    if isinstance(row, tuple):
        if cols == "acts":
            return snapshot.receiver_conditionals[row]
        return snapshot.state_posterior(row)
    # atomic message row
    sender = snapshot.sender_of(row)
    if cols == "states":
        alphabet = snapshot.sender_alphabets[sender]
        joint = np.array(
            [
                snapshot.state_prior[s]
                * float(snapshot.sender_conditionals[sender][s, alphabet.index(row)])
                for s in range(snapshot.num_states)
            ]
        )
        total = joint.sum()
        return joint / total if total > 0 else joint
    # acts: marginalize the receiver conditional over signals containing the
    # atomic message, weighted by how often each such signal arrives
    num = np.zeros(snapshot.num_acts)
    den = 0.0
    for sig, qp in snapshot.signal_marginal().items():
        if sig[sender] == row:
            num += qp * snapshot.receiver_conditionals[sig]
            den += qp
    return num / den if den > 0 else num


def info_vector(
    snapshot: PolicySnapshot, row: RowLabel, cols: str = "states", act_prior=None
) -> np.ndarray:
    """Pointwise information of one message (atomic or compound) per column."""
    if cols not in ("states", "acts"):
        raise ValueError("cols must be 'states' or 'acts'")
    prior = snapshot.state_prior if cols == "states" else _act_prior(snapshot, act_prior)
    cond = _conditional_for_row(snapshot, row, cols)
    return np.array(
        [pointwise_info(float(cond[i]), float(prior[i])) for i in range(len(prior))]
    )


def _row_labels(snapshot: PolicySnapshot, rows: str) -> list[RowLabel]:
    if rows == "atomic":
        return [m for alphabet in snapshot.sender_alphabets for m in alphabet]
    if rows == "compound":
        return snapshot.signals()
    raise ValueError("rows must be 'atomic' or 'compound'")


def _col_labels(snapshot: PolicySnapshot, cols: str) -> list[str]:
    if cols == "states":
        return [f"s{i}" for i in range(snapshot.num_states)]
    return [f"a{i}" for i in range(snapshot.num_acts)]


def info_table(
    snapshot: PolicySnapshot, rows: str = "atomic", cols: str = "states", act_prior=None
) -> InfoTable:
    """Stack info vectors for all atomic messages or all compound signals."""
    labels = _row_labels(snapshot, rows)
    cells = np.vstack(
        [info_vector(snapshot, label, cols, act_prior) for label in labels]
    )
    display = [
        signal_label(label) if isinstance(label, tuple) else str(label)
        for label in labels
    ]
    return InfoTable(display, _col_labels(snapshot, cols), cells)


def _replace_in_signal(sig: CompoundSignal, slot: int, symbol: str) -> CompoundSignal:
    return tuple(symbol if i == slot else m for i, m in enumerate(sig))


def compositional_conditionals(
    snapshot: PolicySnapshot, old_symbol: str, new_symbol: str
) -> tuple[dict[CompoundSignal, np.ndarray], dict[CompoundSignal, float]]:
    """Post-replacement act conditionals a compositional interpreter keeps.

    Signals containing the new symbol inherit the conditional of their
    remaining components, obtained by marginalizing the pre-replacement
    receiver policy over the replaced slot.  Other signals are unchanged.
    Returns the conditionals together with the post-replacement signal
    marginal (the pre marginal with the symbol renamed).
    """
    slot = snapshot.sender_of(old_symbol)
    q_pre = snapshot.signal_marginal()
    conditionals: dict[CompoundSignal, np.ndarray] = {}
    q_post: dict[CompoundSignal, float] = {}
    for sig, qp in q_pre.items():
        post_sig = _replace_in_signal(sig, slot, new_symbol) if sig[slot] == old_symbol else sig
        q_post[post_sig] = qp
        if sig[slot] != old_symbol:
            conditionals[post_sig] = snapshot.receiver_conditionals[sig]
            continue
        # marginalize over what the replaced slot might have said
        num = np.zeros(snapshot.num_acts)
        den = 0.0
        for other, qo in q_pre.items():
            if all(other[i] == sig[i] for i in range(len(sig)) if i != slot):
                num += qo * snapshot.receiver_conditionals[other]
                den += qo
        conditionals[post_sig] = num / den if den > 0 else num
    return conditionals, q_post


def compositional_expectation(
    snapshot: PolicySnapshot, old_symbol: str, new_symbol: str = None, act_prior=None
) -> InfoTable:
    """Acts table a perfectly compositional interpreter would show after
    replacing ``old_symbol`` by a fresh symbol."""
    if new_symbol is None:
        new_symbol = old_symbol + "?"
    conditionals, _ = compositional_conditionals(snapshot, old_symbol, new_symbol)
    prior = _act_prior(snapshot, act_prior)
    labels = sorted(conditionals, key=lambda sig: tuple(str(m) for m in sig))
    cells = np.vstack(
        [
            np.array(
                [
                    pointwise_info(float(conditionals[sig][i]), float(prior[i]))
                    for i in range(len(prior))
                ]
            )
            for sig in labels
        ]
    )
    return InfoTable(
        [signal_label(sig) for sig in labels],
        _col_labels(snapshot, "acts"),
        cells,
    )


def compositional_expected_average(
    snapshot: PolicySnapshot, old_symbol: str, new_symbol: str = None, act_prior=None
) -> float:
    """Average transmitted information under the compositional expectation."""
    if new_symbol is None:
        new_symbol = old_symbol + "?"
    conditionals, q_post = compositional_conditionals(snapshot, old_symbol, new_symbol)
    prior = _act_prior(snapshot, act_prior)
    total = 0.0
    for sig, qp in q_post.items():
        if qp > ZERO_TOL:
            total += qp * signal_info(conditionals[sig], prior)
    return total
