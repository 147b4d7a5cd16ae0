"""Urn-style reinforcement primitives shared by all agents.

A :class:`ReinforcementTable` is a keyed collection of urns: each context key
maps to a vector of accumulated weights, one per option.  Choice probabilities
are proportional to accumulated weight (Herrnstein matching), and sampling is
driven by a seeded ``numpy`` generator so runs are reproducible bit-for-bit.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

import numpy as np


class DegenerateContextError(ValueError):
    """All weights in a context are zero; no proportional choice exists."""


class SymbolCollisionError(ValueError):
    """A relabel or introduction would reuse an existing symbol."""


def make_rng(seed: int) -> np.random.Generator:
    """Deterministic random stream: same seed, same draws, any platform."""
    return np.random.default_rng(seed)


class ReinforcementTable:
    """Map from context key to per-option accumulated weights.

    Contexts are created lazily: the first query of an unknown key
    materializes it with ``initial_weight`` for every option, so fresh
    contexts behave uniformly.  Weights are plain floats; fractional values
    are allowed (the information-preserving initialization needs them).
    """

    def __init__(self, options: Sequence[Hashable], initial_weight: float = 1.0):
        if not options:
            raise ValueError("option set must be non-empty")
        self.options = list(options)
        self.initial_weight = float(initial_weight)
        self.entries: dict[Hashable, list[float]] = {}

    def _index(self, option: Hashable) -> int:
        return self.options.index(option)

    def weights(self, context: Hashable) -> list[float]:
        """Weight vector for a context, materializing it if unseen."""
        row = self.entries.get(context)
        if row is None:
            row = [self.initial_weight] * len(self.options)
            self.entries[context] = row
        return row

    def distribution(self, context: Hashable) -> list[float]:
        """Weights normalized to a probability vector (matching law)."""
        row = self.weights(context)
        total = sum(row)
        if total <= 0.0:
            raise DegenerateContextError(f"all-zero weights for context {context!r}")
        return [w / total for w in row]

    def reinforce(self, context: Hashable, option: Hashable, amount: float) -> None:
        """Add ``amount`` balls of ``option`` to the ``context`` urn."""
        if amount < 0:
            raise ValueError("negative reinforcement is out of scope")
        self.weights(context)[self._index(option)] += amount

    def relabel(self, old_symbol: Hashable, new_symbol: Hashable) -> None:
        """Rename a symbol wherever it appears, keeping every weight.

        Symbols are renamed both in option labels and inside tuple/frozenset
        context keys.  A no-op if ``old_symbol`` is absent.
        """
        if new_symbol == old_symbol:
            return
        present = old_symbol in self.options or any(
            self._key_contains(k, old_symbol) for k in self.entries
        )
        if not present:
            return
        if new_symbol in self.options or any(
            self._key_contains(k, new_symbol) for k in self.entries
        ):
            raise SymbolCollisionError(f"symbol {new_symbol!r} already in use")
        self.options = [new_symbol if o == old_symbol else o for o in self.options]
        self.entries = {
            self._swap_key(k, old_symbol, new_symbol): v for k, v in self.entries.items()
        }

    @staticmethod
    def _key_contains(key: Hashable, symbol: Hashable) -> bool:
        if isinstance(key, (tuple, frozenset)):
            return symbol in key
        return key == symbol

    @staticmethod
    def _swap_key(key: Hashable, old: Hashable, new: Hashable) -> Hashable:
        if isinstance(key, tuple):
            return tuple(new if x == old else x for x in key)
        if isinstance(key, frozenset):
            return frozenset(new if x == old else x for x in key)
        return new if key == old else key

    # -- serialization --------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "options": [_key_to_json(o) for o in self.options],
            "initial_weight": self.initial_weight,
            "entries": [
                {"context": _key_to_json(k), "weights": list(v)}
                for k, v in sorted(self.entries.items(), key=lambda kv: repr(kv[0]))
            ],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "ReinforcementTable":
        table = cls([_key_from_json(o) for o in data["options"]], data["initial_weight"])
        for entry in data["entries"]:
            table.entries[_key_from_json(entry["context"])] = [
                float(w) for w in entry["weights"]
            ]
        return table


def proportional_distribution(table: ReinforcementTable, context: Hashable) -> list[float]:
    """Module-level alias for :meth:`ReinforcementTable.distribution`."""
    return table.distribution(context)


def reinforce(
    table: ReinforcementTable, context: Hashable, option: Hashable, amount: float
) -> None:
    table.reinforce(context, option, amount)


def relabel(table: ReinforcementTable, old_symbol, new_symbol) -> None:
    table.relabel(old_symbol, new_symbol)


def sample(distribution: Iterable[float], rng: np.random.Generator) -> int:
    """Draw an index with the given probabilities, consuming one draw."""
    r = rng.random()
    acc = 0.0
    last = 0
    for i, p in enumerate(distribution):
        acc += p
        last = i
        if r < acc:
            return i
    return last  # guard against accumulated rounding


def sample_weights(weights: Sequence[float], rng: np.random.Generator) -> int:
    """Like :func:`sample` but over unnormalized non-negative weights."""
    total = sum(weights)
    if total <= 0.0:
        raise DegenerateContextError("cannot sample from all-zero weights")
    r = rng.random() * total
    acc = 0.0
    last = 0
    for i, w in enumerate(weights):
        acc += w
        last = i
        if r < acc:
            return i
    return last


def _key_to_json(key: Hashable):
    if isinstance(key, tuple):
        return {"tuple": [_key_to_json(x) for x in key]}
    if isinstance(key, frozenset):
        return {"set": sorted(_key_to_json(x) for x in key)}
    return key


def _key_from_json(data):
    if isinstance(data, dict):
        if "tuple" in data:
            return tuple(_key_from_json(x) for x in data["tuple"])
        if "set" in data:
            return frozenset(_key_from_json(x) for x in data["set"])
    return data
