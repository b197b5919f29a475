import pytest

from probcalc import fixtures
from probcalc.errors import FixtureError
from probcalc.formula import parse
from probcalc.groupoid import delooping, equivalent, h_level, symmetric_group
from probcalc.kernel import check_proof
from probcalc.kripke import KripkeModel


def test_every_indexed_fixture_loads():
    for name in fixtures.names():
        assert fixtures.load(name) is not None
        assert fixtures.path(name).is_file()


def test_every_file_is_indexed():
    on_disk = {p.relative_to(fixtures.ROOT).as_posix()
               for kind in fixtures.KINDS for p in (fixtures.ROOT / kind).glob("*.json")}
    assert on_disk == {e["path"] for e in fixtures.index().values()}


def test_named_examples():
    p = fixtures.load("s4-4-derivation")
    assert p.target == parse("?!P -> ?!?!P") and check_proof(p, "hc").accepted
    m = fixtures.load("lem-countermodel")
    assert isinstance(m, KripkeModel) and m.worlds == 2
    assert equivalent(fixtures.load("bs3"), delooping(symmetric_group(3)))


def test_recorded_expectations_hold():
    for name in fixtures.names("proofs"):
        e = fixtures.entry(name)
        p = fixtures.load(name)
        assert check_proof(p, e["system"]).accepted
        assert p.target == parse(e["target"])
    for name in fixtures.names("groupoids"):
        e = fixtures.entry(name)
        g = fixtures.load(name)
        assert h_level(g) == e["level"] and len(g.components()) == e["components"]


def test_acceptance_names_are_indexed():
    from test_acceptance import FIXTURES_USED
    assert FIXTURES_USED <= set(fixtures.names())


def test_unknown_and_broken(tmp_path, monkeypatch):
    with pytest.raises(FixtureError):
        fixtures.load("no-such-fixture")
    bad_index = {"ghost": {"kind": "proofs", "path": "proofs/ghost.json"}}
    monkeypatch.setattr(fixtures, "index", lambda: bad_index)
    with pytest.raises(FixtureError, match="missing"):
        fixtures.load("ghost")
