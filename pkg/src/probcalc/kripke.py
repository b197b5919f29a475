"""Finite Kripke models for the problem sort.

``evaluate`` is the textbook forcing relation, written for clarity.  The
countermodel search uses a separate bit-parallel evaluator: for a fixed
frame, every persistent valuation gets an index, and the set of valuations
under which a formula is forced at world ``w`` is one Python integer.
The two evaluators are deliberately independent so that each checks the
other.
"""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, NamedTuple, Sequence

from .errors import ImpureFormulaError, ModelError, SortError
from .formula import And, Atom, Bottom, Formula, Implies, Or, Sort, atoms, is_pure, to_text

log = logging.getLogger(__name__)


def _closure(n: int, pairs) -> frozenset[tuple[int, int]]:
    rel = [[False] * n for _ in range(n)]
    for i in range(n):
        rel[i][i] = True
    for i, j in pairs:
        rel[i][j] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    return frozenset((i, j) for i in range(n) for j in range(n) if rel[i][j])


@dataclass(frozen=True)
class KripkeModel:
    """Worlds ``0..worlds-1``, a preorder ``le`` and a persistent valuation.

    The order given is closed reflexively and transitively on construction.
    """

    worlds: int
    le: frozenset[tuple[int, int]]
    val: Mapping[str, frozenset[int]] = field(hash=False)

    def __post_init__(self):
        n = self.worlds
        if not isinstance(n, int) or n < 1:
            raise ModelError("a model needs at least one world")
        pairs = set()
        for pair in self.le:
            i, j = pair
            if not (0 <= i < n and 0 <= j < n):
                raise ModelError(f"order pair {pair!r} mentions an unknown world")
            pairs.add((i, j))
        closed = _closure(n, pairs)
        if closed != pairs:
            log.info("closed the order reflexively/transitively (%d -> %d pairs)",
                     len(pairs), len(closed))
        object.__setattr__(self, "le", closed)
        val = {}
        for name, ws in self.val.items():
            if not isinstance(name, str) or not name[:1].islower():
                raise ModelError(f"{name!r} is not a problem atom")
            ws = frozenset(ws)
            if any(not 0 <= w < n for w in ws):
                raise ModelError(f"valuation of {name!r} mentions an unknown world")
            for i, j in closed:
                if i in ws and j not in ws:
                    raise ModelError(f"valuation of {name!r} is not persistent: "
                                     f"true at {i} but not at {j} although {i} <= {j}")
            val[name] = ws
        object.__setattr__(self, "val", val)

    def above(self, w: int) -> list[int]:
        return [v for v in range(self.worlds) if (w, v) in self.le]

    def roots(self) -> list[int]:
        return [w for w in range(self.worlds) if len(self.above(w)) == self.worlds]

    def to_json(self) -> dict:
        return {
            "worlds": self.worlds,
            "le": sorted([i, j] for i, j in self.le if i != j),
            "val": {a: sorted(ws) for a, ws in sorted(self.val.items())},
        }

    @classmethod
    def from_json(cls, data) -> KripkeModel:
        try:
            le = [tuple(p) for p in data.get("le", [])]
            if any(len(p) != 2 for p in le):
                raise ModelError("order pairs must have two entries")
            return cls(data["worlds"], frozenset(le), dict(data.get("val", {})))
        except (KeyError, TypeError, ValueError, AttributeError) as e:
            raise ModelError(f"malformed model: {e}") from e


def load_model(path) -> KripkeModel:
    with open(path, encoding="utf-8") as fh:
        try:
            return KripkeModel.from_json(json.load(fh))
        except json.JSONDecodeError as e:
            raise ModelError(f"{path}: not valid JSON ({e})") from e


def _require_pure_problem(f: Formula) -> None:
    if not is_pure(f):
        raise ImpureFormulaError(f"{to_text(f)!r} contains '!' or '?'")
    if f.sort is not Sort.PROBLEM:
        raise SortError(to_text(f), Sort.PROBLEM, f.sort)


def evaluate(m: KripkeModel, w: int, f: Formula) -> bool:
    """Does world ``w`` of ``m`` force ``f``?"""
    if not 0 <= w < m.worlds:
        raise ModelError(f"unknown world {w}")
    _require_pure_problem(f)
    for name in atoms(f):
        if name not in m.val:
            raise ModelError(f"atom {name!r} is not in the model's atom universe")
    return _force(m, w, f)


def _force(m: KripkeModel, w: int, f: Formula) -> bool:
    if isinstance(f, Atom):
        return w in m.val[f.name]
    if isinstance(f, Bottom):
        return False
    if isinstance(f, And):
        return _force(m, w, f.left) and _force(m, w, f.right)
    if isinstance(f, Or):
        return _force(m, w, f.left) or _force(m, w, f.right)
    if isinstance(f, Implies):
        return all(not _force(m, v, f.left) or _force(m, v, f.right) for v in m.above(w))
    raise TypeError(f"cannot evaluate {f!r}")


def persistence_check(m: KripkeModel, f: Formula) -> bool:
    """True iff the set of worlds forcing ``f`` is upward closed."""
    forced = [evaluate(m, w, f) for w in range(m.worlds)]
    return all(forced[j] for i, j in m.le if forced[i])


# ---------------------------------------------------------------- frames as bitmasks
#
# A frame on n worlds is a tuple ``ups`` with ``ups[i]`` the bitmask of worlds
# above i (i itself included).

def pair_bit(n: int, i: int, j: int) -> int:
    """Bit position of the off-diagonal pair (i, j), row-major."""
    return i * (n - 1) + (j if j < i else j - 1)


def order_mask(ups: Sequence[int]) -> int:
    n = len(ups)
    return sum(1 << pair_bit(n, i, j)
               for i in range(n) for j in range(n) if i != j and ups[i] >> j & 1)


@lru_cache(maxsize=None)
def preorders(n: int) -> tuple[tuple[int, ...], ...]:
    """All preorders on n labelled worlds, sorted by :func:`order_mask`."""
    if n == 1:
        return ((1,),)
    out = []
    full = (1 << (n - 1)) - 1
    for ups in preorders(n - 1):
        downs = [sum(1 << x for x in range(n - 1) if ups[x] >> i & 1) for i in range(n - 1)]
        new = 1 << (n - 1)
        for up in range(full + 1):
            if any(up >> u & 1 and ups[u] & ~up for u in range(n - 1)):
                continue
            for down in range(full + 1):
                if any(down >> d & 1 and downs[d] & ~down for d in range(n - 1)):
                    continue
                if any(down >> d & 1 and up & ~ups[d] for d in range(n - 1)):
                    continue
                out.append(tuple(ups[i] | (new if down >> i & 1 else 0) for i in range(n - 1))
                           + (up | new,))
    return tuple(sorted(out, key=order_mask))


def _is_poset(ups) -> bool:
    return all(not (ups[j] >> i & 1) for i in range(len(ups)) for j in range(len(ups))
               if i != j and ups[i] >> j & 1)


@lru_cache(maxsize=None)
def rooted_posets(n: int) -> tuple[tuple[int, ...], ...]:
    """Rooted partial orders on n worlds, one per isomorphism class, root = 0."""
    full = (1 << n) - 1
    seen = {}
    for ups in preorders(n):
        if ups[0] != full or not _is_poset(ups):
            continue
        key = min(_permuted_mask(ups, perm) for perm in itertools.permutations(range(n)))
        seen.setdefault(key, ups)
    return tuple(seen[k] for k in sorted(seen))


def _permuted_mask(ups, perm) -> int:
    n = len(ups)
    return sum(1 << (perm[i] * n + perm[j])
               for i in range(n) for j in range(n) if ups[i] >> j & 1)


def upsets(ups: Sequence[int]) -> list[int]:
    """Upward-closed sets of a frame, as ascending bitmasks."""
    n = len(ups)
    downs = [sum(1 << x for x in range(n) if ups[x] >> i & 1) for i in range(n)]
    out = []

    def rec(i, inside, outside):
        if i == n:
            out.append(inside)
            return
        bit = 1 << i
        if (inside | outside) & bit:
            rec(i + 1, inside, outside)
            return
        if not ups[i] & outside:
            rec(i + 1, inside | ups[i], outside)
        if not downs[i] & inside:
            rec(i + 1, inside, outside | downs[i])

    rec(0, 0, 0)
    return sorted(out)


class ValuationSpace:
    """All persistent valuations of ``n_atoms`` atoms on one frame.

    Valuations are indexed in increasing order of the combined bitmask
    ``sum(U_k << (k * worlds))`` where ``U_k`` is the upset of atom ``k``.
    """

    def __init__(self, ups: Sequence[int], n_atoms: int, budget: int | None = None):
        self.ups = tuple(ups)
        self.n = len(ups)
        self.n_atoms = n_atoms
        self.sets = upsets(self.ups)
        self.size = len(self.sets) ** n_atoms
        if budget is not None and self.size > budget:
            from .errors import ResourceLimitError
            raise ResourceLimitError(
                f"{self.size} valuations on a {self.n}-world frame exceed the budget of {budget}")
        self.all = (1 << self.size) - 1
        # atom k is true at world w under valuation v  <=>  bit v of self.atom_bits[k][w]
        self.atom_bits = [[0] * self.n for _ in range(n_atoms)]
        count = len(self.sets)
        for v in range(self.size):
            rest = v
            for k in range(n_atoms):
                s = self.sets[rest % count]
                rest //= count
                for w in range(self.n):
                    if s >> w & 1:
                        self.atom_bits[k][w] |= 1 << v
        self._memo: dict = {}

    def valuation(self, v: int) -> list[int]:
        count = len(self.sets)
        out = []
        for _ in range(self.n_atoms):
            out.append(self.sets[v % count])
            v //= count
        return out

    def forced(self, f: Formula, index: Mapping[str, int]) -> tuple[int, ...]:
        key = (f, tuple(sorted(index.items())))
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if isinstance(f, Atom):
            out = tuple(self.atom_bits[index[f.name]])
        elif isinstance(f, Bottom):
            out = (0,) * self.n
        elif isinstance(f, And):
            a, b = self.forced(f.left, index), self.forced(f.right, index)
            out = tuple(x & y for x, y in zip(a, b))
        elif isinstance(f, Or):
            a, b = self.forced(f.left, index), self.forced(f.right, index)
            out = tuple(x | y for x, y in zip(a, b))
        elif isinstance(f, Implies):
            a, b = self.forced(f.left, index), self.forced(f.right, index)
            local = [(self.all ^ x) | y for x, y in zip(a, b)]
            res = []
            for w in range(self.n):
                acc = self.all
                up = self.ups[w]
                for u in range(self.n):
                    if up >> u & 1:
                        acc &= local[u]
                res.append(acc)
            out = tuple(res)
        else:
            raise TypeError(f"cannot evaluate {f!r}")
        if len(self._memo) > 50_000:
            self._memo.clear()
        self._memo[key] = out
        return out

    def refuted(self, f: Formula, index: Mapping[str, int], worlds: int | None = None) -> int:
        """Bitset of valuations under which some world (in mask ``worlds``) fails ``f``."""
        forced = self.forced(f, index)
        bad = 0
        for w, x in enumerate(forced):
            if worlds is None or worlds >> w & 1:
                bad |= self.all ^ x
        return bad


@lru_cache(maxsize=8192)
def _space(ups: tuple[int, ...], n_atoms: int) -> ValuationSpace:
    return ValuationSpace(ups, n_atoms)


class Countermodel(NamedTuple):
    model: KripkeModel
    world: int


def _lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def smallest_refuting_size(f: Formula, max_worlds: int) -> int | None:
    """Least n <= max_worlds such that some n-world model refutes ``f``.

    A world refuting ``f`` also refutes it in the submodel it generates, and
    collapsing clusters of that submodel preserves forcing, so it suffices
    to look at rooted partial orders up to isomorphism.
    """
    _require_pure_problem(f)
    names = atoms(f)
    index = {a: k for k, a in enumerate(names)}
    for n in range(1, max_worlds + 1):
        for ups in rooted_posets(n):
            if _space(ups, len(names)).refuted(f, index, worlds=1):
                return n
    return None


def countermodel_search(f: Formula, max_worlds: int) -> Countermodel | None:
    """Canonically first model with at most ``max_worlds`` worlds refuting ``f``.

    Models are ordered by world count, then order bitmask, then valuation
    bitmask; the returned world is the least refuting one.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be positive")
    n = smallest_refuting_size(f, max_worlds)
    if n is None:
        return None
    names = atoms(f)
    index = {a: k for k, a in enumerate(names)}
    for ups in preorders(n):
        space = _space(ups, len(names))
        bad = space.refuted(f, index)
        if not bad:
            continue
        v = _lowest_bit(bad)
        sets = space.valuation(v)
        forced = space.forced(f, index)
        world = next(w for w in range(n) if not forced[w] >> v & 1)
        le = frozenset((i, j) for i in range(n) for j in range(n) if ups[i] >> j & 1)
        val = {a: frozenset(w for w in range(n) if sets[k] >> w & 1) for a, k in index.items()}
        return Countermodel(KripkeModel(n, le, val), world)
    raise AssertionError("rooted-poset pre-check and labelled scan disagree")
