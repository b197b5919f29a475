"""Trusted checker for Hilbert-style derivations in CPC, IPC and HC.

HC is the propositional fragment of the combined calculus of problems and
propositions: intuitionistic axioms over problems, classical axioms over
propositions, five bridge axioms and the two cross-sort rules

    p         a
   ----(CH)  ----(HC)
    !p        ?a

Derivations carry no hypotheses; every step is an axiom instance, modus
ponens, or one of the two rules applied to an earlier step.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Mapping, Union

from .errors import ProofFormatError, ProbcalcError, SchemeError, SortError
from .formula import (
    Bang, Formula, Implies, Query, Sort, instantiate, is_pure, match,
    metavariables, parse, parse_scheme, to_text,
)


class System(str, Enum):
    CPC = "cpc"
    IPC = "ipc"
    HC = "hc"


H, P = Sort.PROBLEM, Sort.PROPOSITION

# Intuitionistic basis, usable at either sort. Metavariables x, y, z.
_BASE_SCHEMES = {
    "A1": "x -> (y -> x)",
    "A2": "(x -> (y -> z)) -> ((x -> y) -> (x -> z))",
    "A3": "x -> x | y",
    "A4": "y -> x | y",
    "A5": "(x -> z) -> ((y -> z) -> (x | y -> z))",
    "A6": "x & y -> x",
    "A7": "x & y -> y",
    "A8": "x -> (y -> x & y)",
    "A9": "{bot} -> x",
}
_CLASSICAL_SCHEMES = {"A10": "~~x -> x"}

_BRIDGE_SCHEMES = {
    "B1": ("?!p -> p", {"p": P}),
    "B2": ("alpha -> !?alpha", {"alpha": H}),
    "B3": ("!(p -> q) -> (!p -> !q)", {"p": P, "q": P}),
    "B4": ("?(alpha -> beta) -> (?alpha -> ?beta)", {"alpha": H, "beta": H}),
    "B5": ("~!falseP", {}),
}

AXIOM_NAMES = tuple(_BASE_SCHEMES) + tuple(_CLASSICAL_SCHEMES) + tuple(_BRIDGE_SCHEMES)


@dataclass(frozen=True)
class AxiomScheme:
    name: str
    pattern: Formula
    systems: frozenset[System]


@lru_cache(maxsize=None)
def axiom_scheme(name: str, sort: Sort = Sort.PROBLEM) -> AxiomScheme:
    """The scheme called ``name``; A-schemes are instantiated at ``sort``."""
    if name in _BASE_SCHEMES or name in _CLASSICAL_SCHEMES:
        if name in _CLASSICAL_SCHEMES and sort is not P:
            raise SchemeError(f"{name} is classical and only exists over propositions")
        text = {**_BASE_SCHEMES, **_CLASSICAL_SCHEMES}[name].format(bot=sort.bottom_name)
        pattern = parse_scheme(text, {"x": sort, "y": sort, "z": sort})
        if name in _CLASSICAL_SCHEMES:
            systems = {System.CPC, System.HC}
        else:
            systems = {System.HC, System.IPC if sort is H else System.CPC}
        return AxiomScheme(name, pattern, frozenset(systems))
    if name in _BRIDGE_SCHEMES:
        text, metas = _BRIDGE_SCHEMES[name]
        return AxiomScheme(name, parse_scheme(text, metas), frozenset({System.HC}))
    raise SchemeError(f"unknown axiom {name!r}")


# ---------------------------------------------------------------- proofs

@dataclass(frozen=True)
class Axiom:
    name: str
    assign: Mapping[str, Formula] | None = field(default=None, hash=False)


@dataclass(frozen=True)
class MP:
    minor: int  # step proving X
    major: int  # step proving X -> Y


@dataclass(frozen=True)
class CH:
    source: int


@dataclass(frozen=True)
class HC:
    source: int


Justification = Union[Axiom, MP, CH, HC]


@dataclass(frozen=True)
class Step:
    formula: Formula
    by: Justification


@dataclass(frozen=True)
class Proof:
    steps: tuple[Step, ...]
    target: Formula | None = None

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.target is None and self.steps:
            object.__setattr__(self, "target", self.steps[-1].formula)

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class CheckReport:
    accepted: bool
    failed_step: int | None = None
    reason: str | None = None

    @property
    def verdict(self) -> str:
        return "accepted" if self.accepted else "rejected"

    def __bool__(self):
        return self.accepted


class _Reject(Exception):
    pass


def _check_sort(f: Formula, system: System) -> None:
    if system is System.HC:
        return
    if not is_pure(f):
        raise _Reject(f"'!'/'?' is not part of {system.value.upper()}")
    want = H if system is System.IPC else P
    if f.sort is not want:
        raise _Reject(f"{system.value.upper()} formulas must be {want.value}s, "
                      f"got a {f.sort.value}")


def _earlier(i: int, k: int) -> int:
    if not isinstance(i, int) or isinstance(i, bool) or not 0 <= i < k:
        raise _Reject(f"bad step reference {i!r}: must point to an earlier step (0..{k - 1})")
    return i


def _check_axiom(f: Formula, by: Axiom, system: System) -> None:
    if by.name not in AXIOM_NAMES:
        raise _Reject(f"unknown axiom {by.name!r}")
    try:
        scheme = axiom_scheme(by.name, f.sort)
    except SchemeError as e:
        raise _Reject(str(e))
    if system not in scheme.systems:
        raise _Reject(f"axiom {by.name} at sort {f.sort.value} is not available in "
                      f"{system.value.upper()}")
    metas = metavariables(scheme.pattern)
    if by.assign is None:
        if match(scheme.pattern, f) is None:
            raise _Reject(f"formula is not an instance of {by.name}")
        return
    extra = set(by.assign) - set(metas)
    if extra:
        raise _Reject(f"{by.name} has no metavariable(s) {sorted(extra)}")
    try:
        expected = instantiate(scheme.pattern, by.assign)
    except (SchemeError, SortError) as e:
        raise _Reject(f"{by.name}: {e}")
    if expected != f:
        raise _Reject(f"{by.name} instance is {to_text(expected)!r}, step states {to_text(f)!r}")


def check_proof(p: Proof, system: System | str) -> CheckReport:
    """Validate every step of ``p`` in ``system``; stop at the first failure."""
    system = System(system)
    if not p.steps:
        return CheckReport(False, None, "empty proof")
    formulas: list[Formula] = []
    for k, step in enumerate(p.steps):
        f, by = step.formula, step.by
        try:
            if isinstance(by, (CH, HC)) and system is not System.HC:
                raise _Reject(f"rule {type(by).__name__} illegal outside HC")
            _check_sort(f, system)
            if isinstance(by, Axiom):
                _check_axiom(f, by, system)
            elif isinstance(by, MP):
                x = formulas[_earlier(by.minor, k)]
                imp = formulas[_earlier(by.major, k)]
                if not isinstance(imp, Implies):
                    raise _Reject(f"step {by.major} is not an implication")
                if imp.left != x:
                    raise _Reject(f"step {by.minor} does not match the antecedent of step {by.major}")
                if imp.right != f:
                    raise _Reject(f"modus ponens yields {to_text(imp.right)!r}, "
                                  f"step states {to_text(f)!r}")
            elif isinstance(by, (CH, HC)):
                rule = type(by).__name__
                src = formulas[_earlier(by.source, k)]
                want_sort, ctor = (P, Bang) if rule == "CH" else (H, Query)
                if src.sort is not want_sort:
                    raise _Reject(f"rule {rule} needs a {want_sort.value} at step {by.source}")
                if f != ctor(src):
                    raise _Reject(f"rule {rule} yields {to_text(ctor(src))!r}, "
                                  f"step states {to_text(f)!r}")
            else:
                raise _Reject(f"unknown justification {by!r}")
        except _Reject as e:
            return CheckReport(False, k, str(e))
        formulas.append(f)
    if p.target is not None and formulas[-1] != p.target:
        return CheckReport(False, len(formulas) - 1, "final step differs from the target")
    return CheckReport(True)


# ---------------------------------------------------------------- JSON

def step_to_json(step: Step) -> dict:
    by = step.by
    out: dict = {"formula": to_text(step.formula)}
    if isinstance(by, Axiom):
        out.update(by="axiom", name=by.name)
        if by.assign is not None:
            out["assign"] = {k: to_text(v) for k, v in sorted(by.assign.items())}
    elif isinstance(by, MP):
        out.update({"by": "mp", "from": by.minor, "imp": by.major})
    else:
        out.update({"by": "ch" if isinstance(by, CH) else "hc", "from": by.source})
    return out


def proof_to_json(p: Proof) -> list[dict]:
    return [step_to_json(s) for s in p.steps]


def _require(entry: dict, key: str, k: int):
    if key not in entry:
        raise ProofFormatError(f"step {k}: missing key {key!r}")
    return entry[key]


def _index(entry: dict, key: str, k: int) -> int:
    v = _require(entry, key, k)
    if not isinstance(v, int) or isinstance(v, bool):
        raise ProofFormatError(f"step {k}: {key!r} must be an integer")
    return v


def proof_from_json(data) -> Proof:
    """Build a Proof from the JSON array format. Malformed input raises
    ProofFormatError; logical problems are left to :func:`check_proof`."""
    if not isinstance(data, list) or not data:
        raise ProofFormatError("a proof is a non-empty JSON array of steps")
    steps = []
    for k, entry in enumerate(data):
        if not isinstance(entry, dict):
            raise ProofFormatError(f"step {k}: expected an object")
        try:
            f = parse(_require(entry, "formula", k))
            kind = _require(entry, "by", k)
            if kind == "axiom":
                assign = entry.get("assign")
                if assign is not None:
                    if not isinstance(assign, dict):
                        raise ProofFormatError(f"step {k}: 'assign' must be an object")
                    assign = {name: parse(text) for name, text in assign.items()}
                by = Axiom(str(_require(entry, "name", k)), assign)
            elif kind == "mp":
                by = MP(_index(entry, "from", k), _index(entry, "imp", k))
            elif kind == "ch":
                by = CH(_index(entry, "from", k))
            elif kind == "hc":
                by = HC(_index(entry, "from", k))
            else:
                raise ProofFormatError(f"step {k}: unknown justification {kind!r}")
        except ProofFormatError:
            raise
        except (ProbcalcError, TypeError) as e:
            raise ProofFormatError(f"step {k}: {e}") from e
        steps.append(Step(f, by))
    return Proof(tuple(steps))


def load_proof(path) -> Proof:
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ProofFormatError(f"{path}: not valid JSON ({e})") from e
    return proof_from_json(data)


def dump_proof(p: Proof, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(proof_to_json(p), fh, indent=1, ensure_ascii=False)
        fh.write("\n")
