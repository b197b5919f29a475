"""Decision procedures: truth tables (CPC), G4ip sequent search (IPC) and a
signed tableau with ancestor blocking (S4)."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

from .errors import ImpureFormulaError, SortError
from .formula import And, Atom, Bottom, Formula, Implies, Or, Sort, atoms, is_pure, to_text
from .kripke import countermodel_search, smallest_refuting_size
from .modal import BOTTOM, Box, MAnd, MAtom, MBottom, MImplies, ModalFormula, MOr, modal_atoms
from .modal import to_text as modal_text

DEFAULT_MAX_WORLDS = 5
# suite constants for exhaustive enumeration
ENUM_ATOMS = 2
ENUM_DEPTH = 3


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: Any = None

    def __bool__(self):
        return self.valid


def _require(f: Formula, sort: Sort) -> None:
    if not is_pure(f):
        raise ImpureFormulaError(f"{to_text(f)!r} contains '!' or '?'")
    if f.sort is not sort:
        raise SortError(to_text(f), sort, f.sort)


# ---------------------------------------------------------------- CPC

def _truth(f: Formula, env: dict[str, bool]) -> bool:
    if isinstance(f, Atom):
        return env[f.name]
    if isinstance(f, Bottom):
        return False
    if isinstance(f, And):
        return _truth(f.left, env) and _truth(f.right, env)
    if isinstance(f, Or):
        return _truth(f.left, env) or _truth(f.right, env)
    if isinstance(f, Implies):
        return not _truth(f.left, env) or _truth(f.right, env)
    raise TypeError(f"unexpected node {f!r}")


def cpc_valid(f: Formula) -> Verdict:
    """Classical validity of a proposition; the witness is the first
    falsifying assignment (False before True, atoms in name order)."""
    _require(f, Sort.PROPOSITION)
    names = atoms(f)
    for values in itertools.product((False, True), repeat=len(names)):
        env = dict(zip(names, values))
        if not _truth(f, env):
            return Verdict(False, env)
    return Verdict(True)


# ---------------------------------------------------------------- IPC (G4ip)

@lru_cache(maxsize=1 << 18)
def _prove(gamma: frozenset, goal: Formula) -> bool:
    if goal in gamma or any(isinstance(g, Bottom) for g in gamma):
        return True
    # invertible left rules
    for g in gamma:
        rest = gamma - {g}
        if isinstance(g, And):
            return _prove(rest | {g.left, g.right}, goal)
        if isinstance(g, Or):
            return _prove(rest | {g.left}, goal) and _prove(rest | {g.right}, goal)
        if isinstance(g, Implies):
            a = g.left
            if isinstance(a, Atom) and a in gamma:
                return _prove(rest | {g.right}, goal)
            if isinstance(a, Bottom):
                return _prove(rest, goal)
            if isinstance(a, And):
                return _prove(rest | {Implies(a.left, Implies(a.right, g.right))}, goal)
            if isinstance(a, Or):
                return _prove(rest | {Implies(a.left, g.right), Implies(a.right, g.right)}, goal)
    # invertible right rules
    if isinstance(goal, And):
        return _prove(gamma, goal.left) and _prove(gamma, goal.right)
    if isinstance(goal, Implies):
        return _prove(gamma | {goal.left}, goal.right)
    # non-invertible choices
    if isinstance(goal, Or) and (_prove(gamma, goal.left) or _prove(gamma, goal.right)):
        return True
    for g in gamma:
        if isinstance(g, Implies) and isinstance(g.left, Implies):
            c, d, b = g.left.left, g.left.right, g.right
            rest = gamma - {g}
            if _prove(rest | {Implies(d, b)}, Implies(c, d)) and _prove(rest | {b}, goal):
                return True
    return False


def ipc_provable(f: Formula) -> bool:
    """Bare sequent-search answer, without countermodel construction."""
    _require(f, Sort.PROBLEM)
    return _prove(frozenset(), f)


def ipc_derivable(f: Formula, max_worlds: int = DEFAULT_MAX_WORLDS) -> Verdict:
    """Intuitionistic derivability of a problem formula.

    Decided by contraction-free sequent search.  When the search fails, the
    witness is a countermodel found independently by bounded model search
    (``None`` if no model within ``max_worlds`` worlds exists).
    """
    if ipc_provable(f):
        return Verdict(True)
    return Verdict(False, countermodel_search(f, max_worlds))


# ---------------------------------------------------------------- S4 tableau

_BOX_T, _BOX_F = "T", "F"


def _key(sf):
    return (sf[0], modal_text(sf[1]))


def _saturations(initial) -> list[frozenset]:
    """All open, propositionally saturated extensions of a set of signed
    formulas.  ``T Box A`` also yields ``T A`` (reflexivity)."""
    out = []

    def expand(done: frozenset, todo: list):
        while todo:
            sf = todo.pop()
            if sf in done:
                continue
            sign, f = sf
            if (not sign, f) in done or (sign and isinstance(f, MBottom)):
                return
            done = done | {sf}
            if isinstance(f, MAnd):
                if sign:
                    todo += [(True, f.left), (True, f.right)]
                else:
                    expand(done, todo + [(False, f.left)])
                    expand(done, todo + [(False, f.right)])
                    return
            elif isinstance(f, MOr):
                if sign:
                    expand(done, todo + [(True, f.left)])
                    expand(done, todo + [(True, f.right)])
                    return
                todo += [(False, f.left), (False, f.right)]
            elif isinstance(f, MImplies):
                if sign:
                    expand(done, todo + [(False, f.left)])
                    expand(done, todo + [(True, f.right)])
                    return
                todo += [(True, f.left), (False, f.right)]
            elif isinstance(f, Box) and sign:
                todo.append((True, f.inner))
        out.append(done)

    expand(frozenset(), sorted(initial, key=_key, reverse=True))
    return out


class _World:
    def __init__(self, label: frozenset):
        self.label = label
        self.succ: list[_World] = []


def _open_world(initial: frozenset, ancestors: list[_World]) -> _World | None:
    for label in _saturations(initial):
        world = _World(label)
        chain = ancestors + [world]
        boxes = {sf for sf in label if sf[0] and isinstance(sf[1], Box)}
        ok = True
        for sign, f in sorted(label, key=_key):
            if sign or not isinstance(f, Box):
                continue
            succ = frozenset(boxes | {(False, f.inner)})
            blocker = next((a for a in chain if succ <= a.label), None)
            if blocker is None:
                blocker = _open_world(succ, chain)
                if blocker is None:
                    ok = False
                    break
            world.succ.append(blocker)
        if ok:
            return world
    return None


def _tableau_model(root: _World) -> dict:
    ids: dict[int, int] = {}
    order: list[_World] = []
    stack = [root]
    while stack:
        w = stack.pop()
        if id(w) in ids:
            continue
        ids[id(w)] = len(order)
        order.append(w)
        stack.extend(reversed(w.succ))
    n = len(order)
    reach = [{i} for i in range(n)]
    for w in order:
        reach[ids[id(w)]].update(ids[id(v)] for v in w.succ)
    changed = True
    while changed:
        changed = False
        for i in range(n):
            new = set().union(*(reach[j] for j in reach[i]))
            if new != reach[i]:
                reach[i], changed = new, True
    val: dict[str, list[int]] = {}
    for i, w in enumerate(order):
        for sign, f in w.label:
            if sign and isinstance(f, MAtom):
                val.setdefault(f.name, []).append(i)
    return {
        "worlds": n,
        "le": sorted([i, j] for i in range(n) for j in reach[i] if i != j),
        "val": {a: sorted(ws) for a, ws in sorted(val.items())},
        "root": 0,
    }


def s4_valid(f: ModalFormula) -> Verdict:
    """S4 validity.  The witness of an invalid formula is the open branch
    read as a reflexive-transitive model falsifying ``f`` at world 0;
    atoms absent from ``val`` are false everywhere."""
    root = _open_world(frozenset({(False, f)}), [])
    if root is None:
        return Verdict(True)
    model = _tableau_model(root)
    for a in modal_atoms(f):
        model["val"].setdefault(a, [])
    model["val"] = dict(sorted(model["val"].items()))
    return Verdict(False, model)


# ---------------------------------------------------------------- enumeration

def enumerate_formulas(n_atoms: int = ENUM_ATOMS, max_depth: int = ENUM_DEPTH,
                       sort: Sort = Sort.PROBLEM) -> list[Formula]:
    """Every !/?-free formula of depth <= max_depth (an atom has depth 1)
    over the first ``n_atoms`` atoms and bottom, with &, | and ->."""
    if not 0 <= n_atoms <= 26 or max_depth < 1:
        raise ValueError("need 0..26 atoms and depth >= 1")
    letters = "abcdefghijklmnopqrstuvwxyz" if sort is Sort.PROBLEM else "PQRSTUVWXYZABCDEFGHIJKLMNO"
    leaves = [Atom(letters[k], sort) for k in range(n_atoms)] + [Bottom(sort)]
    level = list(leaves)
    for _ in range(max_depth - 1):
        level = leaves + [op(x, y) for op in (And, Or, Implies) for x in level for y in level]
    return level


def crosscheck(n_atoms: int = ENUM_ATOMS, max_depth: int = ENUM_DEPTH,
               max_worlds: int = DEFAULT_MAX_WORLDS) -> tuple[int, list[Formula]]:
    """Compare sequent search with bounded countermodel search over the
    enumeration.  Returns (formulas checked, discrepancies)."""
    fs = enumerate_formulas(n_atoms, max_depth)
    bad = [f for f in fs
           if ipc_provable(f) != (smallest_refuting_size(f, max_worlds) is None)]
    return len(fs), bad
