import random

import pytest

from probcalc import fixtures
from probcalc.decision import (
    cpc_valid, enumerate_formulas, ipc_derivable, ipc_provable, s4_valid,
)
from probcalc.errors import ImpureFormulaError, SortError
from probcalc.formula import Sort, parse
from probcalc.kripke import evaluate
from probcalc.modal import parse_modal

import oracles


def test_cpc_examples():
    assert cpc_valid(parse("P | ~P")).valid
    v = cpc_valid(parse("P -> Q"))
    assert not v.valid and v.witness == {"P": True, "Q": False}
    assert cpc_valid(parse("~~P -> P")).valid
    assert cpc_valid(parse("((P -> Q) -> P) -> P")).valid


def test_cpc_rejects_problems_and_bridges():
    with pytest.raises(SortError):
        cpc_valid(parse("a | ~a"))
    with pytest.raises(ImpureFormulaError):
        cpc_valid(parse("?!P -> P"))


def test_ipc_examples():
    v = ipc_derivable(parse("a | ~a"))
    assert not v.valid and v.witness.model.worlds == 2
    assert not evaluate(v.witness.model, v.witness.world, parse("a | ~a"))
    assert ipc_derivable(parse("~~(a | ~a)")).valid
    assert ipc_derivable(parse("(a | ~a) -> (~~a -> a)")).valid
    assert not ipc_derivable(parse("~~a -> a")).valid
    assert not ipc_derivable(parse("((a -> b) -> a) -> a")).valid
    assert ipc_derivable(parse("~~~a -> ~a")).valid


def test_ipc_rejects_bridges():
    with pytest.raises(ImpureFormulaError):
        ipc_derivable(parse("a -> !?a"))
    with pytest.raises(SortError):
        ipc_provable(parse("P"))


@pytest.mark.parametrize("text", ["~~(a | ~a)", "(a -> b) | (b -> a)", "~a | ~~a",
                                  "(~~a -> a) -> a | ~a", "a -> ~~a"])
def test_ipc_against_exhaustive_kripke_oracle(text):
    f = parse(text)
    ref = oracles.kripke_refutation(f, 3)
    v = ipc_derivable(f)
    if v.valid:
        assert ref is None
    if ref is not None:
        assert not v.valid and v.witness.model.worlds == ref[0]


def test_s4_examples():
    assert s4_valid(parse_modal("Box P -> P")).valid
    assert s4_valid(parse_modal("Box P -> Box Box P")).valid
    assert s4_valid(parse_modal("Box(P -> Q) -> (Box P -> Box Q)")).valid
    v = s4_valid(parse_modal("P -> Box P"))
    assert not v.valid and v.witness["root"] == 0


@pytest.mark.parametrize("text", [
    "Box(Box(a -> Box a) -> a) -> a",     # Grz
    "a -> Box ~Box ~a",                   # B
    "~Box a -> Box ~Box a",               # 5
    "Box(Box a -> b) | Box(Box b -> a)",  # .3
    "Box a | Box ~Box a",
])
def test_s4_rejects_stronger_logics(text):
    f = parse_modal(text)
    v = s4_valid(f)
    assert not v.valid
    m = v.witness
    rel = {(i, i) for i in range(m["worlds"])} | {tuple(p) for p in m["le"]}
    val = {a: set(ws) for a, ws in m["val"].items()}
    assert not oracles.s4_true(rel, val, m["root"], f)


@pytest.mark.parametrize("text", [
    "Box a -> Box Box a", "Box(a -> b) -> Box a -> Box b", "Box a & Box b -> Box(a & b)",
    "~Box false", "Box a -> a", "Box(a | b) -> Box(b | a)",
])
def test_s4_validities_survive_small_models(text):
    f = parse_modal(text)
    assert s4_valid(f).valid
    assert oracles.s4_refutation(f, 3) is None


def test_s4_against_small_model_oracle(seed):
    from probcalc.translations import godel_translate
    rng = random.Random(seed)
    sample = rng.sample(enumerate_formulas(), 120)
    for g in sample:
        f = godel_translate(g)
        v = s4_valid(f)
        if v.valid:
            assert oracles.s4_refutation(f, 3) is None, f
        else:
            m = v.witness
            rel = {(i, i) for i in range(m["worlds"])} | {tuple(p) for p in m["le"]}
            val = {a: set(ws) for a, ws in m["val"].items()}
            assert not oracles.s4_true(rel, val, 0, f), f


def test_cpc_against_truth_tables():
    import itertools
    for f in enumerate_formulas(2, 3, Sort.PROPOSITION)[::7]:
        want = all(oracles.truth(f, {"P": p, "Q": q})
                   for p, q in itertools.product((False, True), repeat=2))
        assert cpc_valid(f).valid == want


def test_deterministic():
    for _ in range(2):
        a = ipc_derivable(parse("(~a -> b | c) -> (~a -> b) | (~a -> c)"))
        b = ipc_derivable(parse("(~a -> b | c) -> (~a -> b) | (~a -> c)"))
        assert a == b
    assert s4_valid(parse_modal("a -> Box a")) == s4_valid(parse_modal("a -> Box a"))


def test_deciders_agree_with_kernel_fixtures():
    for name in fixtures.names("proofs"):
        e = fixtures.entry(name)
        target = fixtures.load(name).target
        if e["system"] == "ipc":
            assert ipc_derivable(target).valid, name
        elif e["system"] == "cpc":
            assert cpc_valid(target).valid, name


def test_enumeration_shape():
    fs = enumerate_formulas(2, 3)
    assert len(fs) == 2703 == len(set(fs))
    assert len(enumerate_formulas(1, 2)) == 2 + 3 * 4
    assert all(f.sort is Sort.PROPOSITION for f in enumerate_formulas(2, 2, Sort.PROPOSITION))


def test_formula_fixture_verdicts():
    for name in fixtures.names("formulas"):
        e, f = fixtures.entry(name), fixtures.load(name)
        decide = {"cpc": cpc_valid, "ipc": ipc_derivable, "s4": s4_valid}[e["logic"]]
        assert decide(f).valid == e["valid"], name
