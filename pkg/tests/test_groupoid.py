import itertools

import pytest

from probcalc import fixtures
from probcalc.errors import GroupoidError
from probcalc.groupoid import (
    FiniteGroup, FiniteGroupoid, action_groupoid, cyclic_group, delooping, discrete,
    disjoint_union, empty, equivalent, groups_isomorphic, h_level, has_level, hom_type,
    indiscrete, load_groupoid, point, relabel, symmetric_group, truncate,
)

S3, C3, C6 = symmetric_group(3), cyclic_group(3), cyclic_group(6)


def test_hom_types():
    bs3 = delooping(S3)
    h = hom_type(bs3, 0, 0)
    assert h.objects == 6 and h.morphisms == 6
    assert hom_type(discrete(2), 0, 1).objects == 0
    g = indiscrete(3)
    assert all(hom_type(g, x, x).objects >= 1 for x in range(3))
    with pytest.raises(GroupoidError):
        hom_type(bs3, 0, 1)


def test_level_table():
    assert h_level(point()) == -2
    assert h_level(empty()) == -1
    assert [h_level(discrete(n)) for n in (2, 3, 5)] == [0, 0, 0]
    assert h_level(delooping(C3)) == 1
    assert h_level(delooping(S3)) == 1
    assert h_level(indiscrete(4)) == -2
    assert h_level(delooping([[0]])) == -2


def test_cumulativity():
    for g in [point(), empty(), discrete(3), indiscrete(2), delooping(S3),
              disjoint_union(delooping(C3), point())]:
        lvl = h_level(g)
        assert has_level(g, lvl)
        assert all(has_level(g, m) for m in range(lvl, 4))
        assert not any(has_level(g, m) for m in range(-3, lvl))


def test_truncation():
    bs3 = delooping(S3)
    assert equivalent(truncate(bs3, -1), point())
    assert truncate(empty(), -1).objects == 0
    two = disjoint_union(delooping(C3), delooping(C3))
    t0 = truncate(two, 0)
    assert t0.objects == 2 and h_level(t0) == 0
    assert truncate(bs3, 1) is bs3 and truncate(bs3, 5) is bs3
    assert h_level(truncate(bs3, -2)) == -2
    with pytest.raises(GroupoidError):
        truncate(empty(), -2)
    with pytest.raises(GroupoidError):
        truncate(bs3, -3)


def test_truncation_reaches_its_level():
    for name in fixtures.names("groupoids"):
        g = fixtures.load(name)
        for k in (-2, -1, 0, 1):
            if k == -2 and g.objects == 0:
                continue
            assert has_level(truncate(g, k), k), (name, k)


def test_delooping_validation():
    assert delooping([[0]]).morphisms == 1
    bc3 = delooping(C3)
    assert bc3.objects == 1 and bc3.morphisms == 3
    with pytest.raises(GroupoidError) as info:
        delooping([[0, 1, 2], [1, 0, 0], [2, 0, 0]])
    a, b, c = info.value.witness
    t = [[0, 1, 2], [1, 0, 0], [2, 0, 0]]
    assert t[t[a][b]][c] != t[a][t[b][c]]
    with pytest.raises(GroupoidError, match="inverse"):
        delooping([[0, 1], [1, 1]])
    with pytest.raises(GroupoidError, match="identity"):
        delooping([[0, 0], [0, 0]])
    with pytest.raises(GroupoidError):
        delooping([[0, 1], [1]])


def test_group_isomorphism():
    assert groups_isomorphic(FiniteGroup(C6), FiniteGroup(cyclic_group(6)))
    assert not groups_isomorphic(FiniteGroup(S3), FiniteGroup(C6))
    v4 = [[a ^ b for b in range(4)] for a in range(4)]
    assert not groups_isomorphic(FiniteGroup(v4), FiniteGroup(cyclic_group(4)))
    # C2 x C3 is cyclic
    c2c3 = [[((a // 3 + b // 3) % 2) * 3 + (a % 3 + b % 3) % 3 for b in range(6)] for a in range(6)]
    assert groups_isomorphic(FiniteGroup(c2c3), FiniteGroup(C6))


def test_equivalence_examples():
    bs3 = delooping(S3)
    for perm in itertools.islice(itertools.permutations(range(6)), 0, 720, 97):
        assert equivalent(bs3, relabel(bs3, [0], list(perm)))
    assert not equivalent(bs3, delooping(C6))
    assert not equivalent(point(), delooping(C3))
    assert equivalent(point(), indiscrete(3))
    assert not equivalent(discrete(2), discrete(3))


def test_action_groupoid():
    fattened = fixtures.load("bc3-fattened")
    assert fattened.objects == 2 and equivalent(fattened, delooping(C3))
    with pytest.raises(GroupoidError, match="action"):
        action_groupoid(C3, [[0, 1], [1, 0], [0, 1]])


def test_validation_of_raw_groupoids():
    ok = discrete(1).to_json()
    assert FiniteGroupoid.from_json(ok) == discrete(1)
    bad_id = dict(ok, id=[5])
    with pytest.raises(GroupoidError):
        FiniteGroupoid.from_json(bad_id)
    missing = dict(ok, compose=[])
    with pytest.raises(GroupoidError, match="missing"):
        FiniteGroupoid.from_json(missing)
    no_inverse = {"objects": 2, "morphisms": [{"src": 0, "dst": 0}, {"src": 1, "dst": 1},
                                              {"src": 0, "dst": 1}],
                  "compose": [[0, 0, 0], [1, 1, 1], [0, 2, 2], [2, 1, 2]], "id": [0, 1]}
    with pytest.raises(GroupoidError, match="inverse"):
        FiniteGroupoid.from_json(no_inverse)
    with pytest.raises(GroupoidError):
        FiniteGroupoid.from_json({"objects": 1})


def test_inverses_are_inferred():
    g = delooping(S3)
    for f in range(g.morphisms):
        assert g.compose[f, g.inverse[f]] == g.ident[0]


def test_file_round_trip(tmp_path):
    import json
    g = fixtures.load("euclid")
    path = tmp_path / "g.json"
    path.write_text(json.dumps(g.to_json()))
    assert load_groupoid(path) == g
    path.write_text("{")
    with pytest.raises(GroupoidError):
        load_groupoid(path)
