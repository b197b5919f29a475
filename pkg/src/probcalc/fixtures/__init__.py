"""Golden fixtures: proofs, Kripke models, groupoids and formulas as JSON.

``index.json`` maps a fixture name to its file and expected outcome.  The
files are regenerated by ``scripts/build_fixtures.py`` and committed.
"""

from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

from ..errors import FixtureError, ProbcalcError
from ..formula import parse
from ..groupoid import load_groupoid
from ..kernel import load_proof
from ..kripke import load_model
from ..modal import parse_modal

ROOT = Path(__file__).resolve().parent
KINDS = ("proofs", "models", "groupoids", "formulas")


@lru_cache(maxsize=1)
def index() -> dict[str, dict]:
    with open(ROOT / "index.json", encoding="utf-8") as fh:
        return json.load(fh)


def names(kind: str | None = None) -> list[str]:
    return [n for n, e in index().items() if kind is None or e["kind"] == kind]


def entry(name: str) -> dict:
    try:
        return index()[name]
    except KeyError:
        raise FixtureError(f"no fixture named {name!r}") from None


def path(name: str) -> Path:
    return ROOT / entry(name)["path"]


def load(name: str):
    """Parsed, validated fixture object: Proof, KripkeModel, FiniteGroupoid,
    or a Formula (ModalFormula for s4 entries)."""
    e = entry(name)
    p = ROOT / e["path"]
    if not p.is_file():
        raise FixtureError(f"fixture {name!r} is indexed but {e['path']} is missing")
    try:
        if e["kind"] == "proofs":
            return load_proof(p)
        if e["kind"] == "models":
            return load_model(p)
        if e["kind"] == "groupoids":
            return load_groupoid(p)
        with open(p, encoding="utf-8") as fh:
            text = json.load(fh)["formula"]
        return parse_modal(text) if e.get("logic") == "s4" else parse(text)
    except (ProbcalcError, KeyError, ValueError) as err:
        raise FixtureError(f"fixture {name!r} is malformed: {err}") from err
