"""Embeddings between the logics.

``double_negation_translate`` is Kolmogorov's variant of the negative
translation, which double-negates every subformula (unlike Gödel-Gentzen,
which only touches atoms, disjunctions and existentials):

    N(p) = ~~a      N(x o y) = ~~(N(x) o N(y))      N(falseP) = falseH

``godel_translate`` boxes atoms and implications:

    T(a) = Box a    T(x -> y) = Box(T(x) -> T(y))   T(x & y), T(x | y) homomorphic
"""

from __future__ import annotations

import string
from typing import Mapping

from .errors import ImpureFormulaError, SortError
from .formula import (
    FALSE_H, And, Atom, Bottom, Formula, Implies, Not, Or, Sort, is_pure, to_text,
)
from .modal import BOTTOM, Box, MAnd, MAtom, MImplies, ModalFormula, MOr

# Rotating the first letter keeps P, Q, R... -> a, b, c... and stays injective.
_ROTATE = str.maketrans(string.ascii_uppercase,
                        string.ascii_lowercase[11:] + string.ascii_lowercase[:11])


def problem_name(name: str) -> str:
    """Problem-atom name used for proposition atom ``name`` (P -> a, Q -> b)."""
    head = name[0]
    head = head.translate(_ROTATE) if head in string.ascii_uppercase else head.lower()
    return head + name[1:]


def resort(f: Formula, atom_map: Mapping[str, str] | None = None) -> Formula:
    """Re-sort a pure proposition as a problem, renaming atoms."""
    _require(f, Sort.PROPOSITION)

    def go(g):
        if isinstance(g, Atom):
            name = atom_map[g.name] if atom_map and g.name in atom_map else problem_name(g.name)
            return Atom(name, Sort.PROBLEM)
        if isinstance(g, Bottom):
            return FALSE_H
        return type(g)(go(g.left), go(g.right))

    return go(f)


def _require(f: Formula, sort: Sort) -> None:
    if not is_pure(f):
        raise ImpureFormulaError(f"{to_text(f)!r} contains '!' or '?'")
    if f.sort is not sort:
        raise SortError(to_text(f), sort, f.sort)


def double_negation_translate(f: Formula, atom_map: Mapping[str, str] | None = None) -> Formula:
    _require(f, Sort.PROPOSITION)

    def go(g):
        if isinstance(g, Atom):
            return Not(Not(resort(g, atom_map)))
        if isinstance(g, Bottom):
            return FALSE_H
        return Not(Not(type(g)(go(g.left), go(g.right))))

    return go(f)


def godel_translate(f: Formula) -> ModalFormula:
    _require(f, Sort.PROBLEM)

    def go(g):
        if isinstance(g, Atom):
            return Box(MAtom(g.name))
        if isinstance(g, Bottom):
            return BOTTOM
        if isinstance(g, And):
            return MAnd(go(g.left), go(g.right))
        if isinstance(g, Or):
            return MOr(go(g.left), go(g.right))
        if isinstance(g, Implies):
            return Box(MImplies(go(g.left), go(g.right)))
        raise TypeError(f"unexpected node {g!r}")

    return go(f)
