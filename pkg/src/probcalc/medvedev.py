"""Medvedev frames: finitary problems with solution sets drawn from {1..n}.

A world is a nonempty set S of still-possible solutions; learning more
shrinks it, so S <= T iff T is a subset of S.  The singletons are the
maximal worlds.  Only bounded n is examined, so results are statements
about frames with base size <= n_max, not about Medvedev logic as a whole.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .errors import ResourceLimitError
from .formula import Formula, atoms
from .kripke import KripkeModel, ValuationSpace, _require_pure_problem

MAX_BASE = 5
DEFAULT_VALUATION_BUDGET = 2_000_000


def valuation_budget() -> int:
    return int(os.environ.get("PROBCALC_VALUATION_BUDGET", DEFAULT_VALUATION_BUDGET))


@dataclass(frozen=True)
class MedvedevFrame:
    base_size: int
    worlds: tuple[frozenset[int], ...]  # world i is the subset with bitmask i + 1

    @property
    def ups(self) -> tuple[int, ...]:
        """Bitmask of worlds above each world (its nonempty subsets)."""
        return _ups(self.base_size)

    def le(self, i: int, j: int) -> bool:
        return self.worlds[j] <= self.worlds[i]

    def maximal(self) -> list[int]:
        return [i for i, s in enumerate(self.worlds) if len(s) == 1]

    def skeleton(self) -> KripkeModel:
        n = len(self.worlds)
        le = frozenset((i, j) for i in range(n) for j in range(n) if self.le(i, j))
        return KripkeModel(n, le, {})


@lru_cache(maxsize=None)
def _ups(n: int) -> tuple[int, ...]:
    count = (1 << n) - 1
    return tuple(sum(1 << (t - 1) for t in range(1, count + 1) if t & s == t)
                 for s in range(1, count + 1))


def medvedev_frame(n: int, max_base: int = MAX_BASE) -> MedvedevFrame:
    if not isinstance(n, int) or not 1 <= n <= max_base:
        raise ValueError(f"base size must be between 1 and {max_base}, got {n!r}")
    worlds = tuple(frozenset(k + 1 for k in range(n) if s >> k & 1) for s in range(1, 1 << n))
    return MedvedevFrame(n, worlds)


class Refutation(NamedTuple):
    base_size: int
    world: frozenset[int]
    valuation: dict[str, list[frozenset[int]]]  # atom -> worlds (as subsets) where true


@dataclass(frozen=True)
class MedvedevResult:
    valid: bool
    refutation: Refutation | None = None
    valuations_checked: int = 0

    def __bool__(self):
        return self.valid


def medvedev_valid_upto(f: Formula, n_max: int, budget: int | None = None,
                        max_base: int = MAX_BASE) -> MedvedevResult:
    """Is ``f`` forced at every world of every Medvedev frame with base
    size <= n_max under every persistent valuation?  The first refutation
    in (n, valuation index) order is reported.  Exceeding the valuation
    budget raises ResourceLimitError instead of truncating."""
    _require_pure_problem(f)
    budget = valuation_budget() if budget is None else budget
    names = atoms(f)
    index = {a: k for k, a in enumerate(names)}
    checked = 0
    for n in range(1, n_max + 1):
        frame = medvedev_frame(n, max_base)
        space = ValuationSpace(frame.ups, len(names), budget=budget - checked)
        checked += space.size
        bad = space.refuted(f, index)
        if bad:
            v = (bad & -bad).bit_length() - 1
            forced = space.forced(f, index)
            w = next(w for w in range(len(frame.worlds)) if not forced[w] >> v & 1)
            sets = space.valuation(v)
            val = {a: [frame.worlds[x] for x in range(len(frame.worlds)) if sets[k] >> x & 1]
                   for a, k in index.items()}
            return MedvedevResult(False, Refutation(n, frame.worlds[w], val), checked)
    return MedvedevResult(True, None, checked)


__all__ = ["MedvedevFrame", "MedvedevResult", "Refutation", "medvedev_frame",
           "medvedev_valid_upto", "ResourceLimitError"]
