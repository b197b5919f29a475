import pytest
from hypothesis import given, settings

from probcalc.errors import ParseError, SchemeError, SortError
from probcalc.formula import (
    FALSE_H, FALSE_P, And, Atom, Bang, Bottom, Implies, Meta, Not, Or, Query, Sort, atoms,
    depth, instantiate, match, nodes, parse, parse_scheme, replace_at, size, to_text,
)

from strategies import formulas

H, P = Sort.PROBLEM, Sort.PROPOSITION
a, b = Atom("a", H), Atom("b", H)
PP, QQ = Atom("P", P), Atom("Q", P)


def test_bridge_shape_is_a_problem():
    f = parse("!(P -> Q) -> (!P -> !Q)")
    assert f == Implies(Bang(Implies(PP, QQ)), Implies(Bang(PP), Bang(QQ)))
    assert f.sort is H


def test_bang_of_problem_is_a_sort_error():
    with pytest.raises(SortError) as info:
        parse("!a")
    assert info.value.expected is P and info.value.found is H
    assert info.value.position == 0


def test_negation_is_sugar():
    assert parse("~a") == Implies(a, FALSE_H)
    assert parse("~P") == Implies(PP, FALSE_P)


@pytest.mark.parametrize("f, text", [
    (Implies(Query(Bang(PP)), PP), "?!P -> P"),
    (a, "a"),
    (Not(Bang(FALSE_P)), "~!falseP"),
])
def test_printing(f, text):
    assert to_text(f) == text


def test_precedence_and_associativity():
    assert parse("a -> b -> a") == Implies(a, Implies(b, a))
    assert parse("a & b | a") == Or(And(a, b), a)
    assert parse("a | b & a") == Or(a, And(b, a))
    assert parse("a | b | a") == Or(Or(a, b), a)
    assert parse("~a & b") == And(Not(a), b)
    assert parse("?a & P") == And(Query(a), PP)


def test_unicode_input_and_output():
    f = parse("¬a ∧ b → a ∨ b")
    assert f == parse("~a & b -> a | b")
    assert to_text(f, unicode=True) == "¬a ∧ b → a ∨ b"


@pytest.mark.parametrize("text", ["a &", "(a", "a b", "a -> ", "", "a $ b", "P & a"])
def test_malformed_input(text):
    with pytest.raises((ParseError, SortError)):
        parse(text)


def test_parse_error_reports_position_and_expectation():
    with pytest.raises(ParseError) as info:
        parse("a & (b | )")
    assert info.value.position == 9
    assert "atom" in info.value.expected


def test_mixed_sorts_point_at_the_connective():
    with pytest.raises(SortError) as info:
        parse("a -> P")
    assert info.value.position == 2


@given(formulas(max_depth=8))
@settings(max_examples=400, deadline=None)
def test_print_parse_round_trip(f):
    assert parse(to_text(f)) == f
    assert parse(to_text(f, unicode=True)) == f


def test_instantiate_examples():
    alpha = parse_scheme("alpha -> !?alpha", {"alpha": H})
    assert instantiate(alpha, {"alpha": a}) == parse("a -> !?a")
    x = parse_scheme("X -> X", {"X": P})
    assert instantiate(x, {"X": PP}) == parse("P -> P")
    b1 = parse_scheme("?!p -> p", {"p": P})
    out = instantiate(b1, {"p": And(PP, QQ)})
    assert parse(to_text(out)) == out == parse("?!(P & Q) -> (P & Q)")


def test_instantiate_errors():
    s = parse_scheme("x -> y", {"x": H, "y": H})
    with pytest.raises(SchemeError, match="unassigned"):
        instantiate(s, {"x": a})
    with pytest.raises(SchemeError, match="needs a problem"):
        instantiate(s, {"x": a, "y": PP})


@given(formulas(sort=H, max_depth=4), formulas(sort=P, max_depth=4))
@settings(max_examples=100, deadline=None)
def test_instantiate_commutes_with_printing(x, p):
    s = parse_scheme("x -> !(p & ?x)", {"x": H, "p": P})
    out = instantiate(s, {"x": x, "p": p})
    assert parse(to_text(out)) == out
    assert match(s, out) == {"x": x, "p": p}


def test_match_respects_repeated_metavariables():
    s = parse_scheme("x -> x", {"x": H})
    assert match(s, parse("a -> a")) == {"x": a}
    assert match(s, parse("a -> b")) is None
    assert match(s, parse("P -> P")) is None


def test_traversal_helpers():
    f = parse("?a -> P & Q")
    assert size(f) == 6 and depth(f) == 3
    assert atoms(f) == ["P", "Q", "a"]
    assert [type(g).__name__ for g in nodes(f)] == ["Implies", "Query", "Atom", "And", "Atom", "Atom"]
    assert replace_at(f, 2, Atom("b", H)) == parse("?b -> P & Q")
    with pytest.raises(IndexError):
        replace_at(f, 99, a)


def test_sort_is_total_on_constructed_trees():
    with pytest.raises(SortError):
        And(a, PP)
    with pytest.raises(SortError):
        Query(PP)
    assert Bottom(P).sort is P and Meta("x", H).sort is H


def test_atoms_must_carry_the_sort_of_their_case():
    with pytest.raises((SortError, ValueError)):
        Atom("a", P)
