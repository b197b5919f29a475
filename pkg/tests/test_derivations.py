import pytest

from probcalc import fixtures
from probcalc.derivations import (
    DERIVED_THEOREMS, ProofBuilder, derived_theorems, galois_backward, galois_forward,
)
from probcalc.errors import ShapeError
from probcalc.formula import parse
from probcalc.kernel import MP, Axiom, Proof, Step, check_proof

EXPECTED = {
    "S4-T": "?!P -> P",
    "S4-K": "?!(P -> Q) -> (?!P -> ?!Q)",
    "S4-4": "?!P -> ?!?!P",
    "S4-Nec-demo": "?!(P -> P)",
    "IEL-coreflection": "a -> !?a",
    "IEL-K": "!?(a -> b) -> (!?a -> !?b)",
    "IEL-consistency": "!?falseH -> falseH",
}


@pytest.mark.parametrize("tag", sorted(EXPECTED))
def test_derived_theorems(tag):
    p = derived_theorems(tag)
    assert p.target == parse(EXPECTED[tag])
    assert check_proof(p, "hc").accepted


def test_tag_list_and_unknown_tag():
    assert set(DERIVED_THEOREMS) == set(EXPECTED)
    assert len(derived_theorems("S4-T")) == 1
    assert len(derived_theorems("S4-4")) > 1
    with pytest.raises(KeyError):
        derived_theorems("S5")


def test_builder_expands_syllogism_into_kernel_steps():
    b = ProofBuilder()
    p = b.build(b.syllogism(b.axiom("A6", x="a", y="b"), b.axiom("A3", x="a", y="c")))
    assert p.target == parse("a & b -> a | c")
    assert check_proof(p, "ipc").accepted
    assert {type(s.by) for s in p.steps} == {Axiom, MP}


def test_builder_identity_at_both_sorts():
    for x, system in [("a & b", "ipc"), ("?a", "hc"), ("P", "cpc")]:
        b = ProofBuilder()
        p = b.build(b.identity(x))
        assert p.target == parse(f"({x}) -> ({x})")
        assert check_proof(p, system).accepted


def test_forward_on_query_identity_gives_coreflection():
    out = galois_forward(fixtures.load("galois-query-identity"))
    assert out.target == parse("a -> !?a")
    assert check_proof(out, "hc").accepted


def test_forward_and_back_on_ex_falso():
    p = fixtures.load("galois-falsum")
    fwd = galois_forward(p)
    assert fwd.target == parse("falseH -> !P") and check_proof(fwd, "hc").accepted
    back = galois_backward(fwd)
    assert back.target == p.target and check_proof(back, "hc").accepted


def test_backward_from_bang_identity_gives_b1():
    b = ProofBuilder()
    p = b.build(b.identity("!P"))
    out = galois_backward(p)
    assert out.target == parse("?!P -> P")
    assert check_proof(out, "hc").accepted


def test_shape_mismatch():
    b = ProofBuilder()
    p = b.build(b.axiom("B2", alpha="a"))           # a -> !?a
    with pytest.raises(ShapeError):
        galois_forward(p)
    with pytest.raises(ShapeError):
        galois_backward(fixtures.load("s4-t"))


def test_rejected_input_is_refused():
    bogus = Proof((Step(parse("?a -> P"), Axiom("B1")),))
    with pytest.raises(ShapeError, match="rejected"):
        galois_forward(bogus)


def test_output_keeps_input_steps_verbatim():
    p = fixtures.load("galois-and-comm")
    out = galois_forward(p)
    assert out.steps[:len(p)] == p.steps
