import json

import pytest

from symplex.actions import trivial_action
from symplex.errors import InputError, OrthogonalityFailure
from symplex.generators import cycle_rotation, sierpinski
from symplex.groups import character_table, make_group
from symplex.io import (
    load_action,
    load_complex,
    load_group,
    load_measure,
    maximal_simplices,
    save_action_bundle,
    save_complex,
    save_group,
    save_measure,
)
from symplex.measure import empirical_measure, tv_distance


def test_complex_roundtrip(tmp_path):
    k = sierpinski(1).complex
    path = tmp_path / "k.complex.json"
    save_complex(k, str(path))
    again = load_complex(str(path))
    assert again == k
    assert again.degree_bound == k.degree_bound


def test_maximal_simplices_are_minimal_description(tmp_path):
    k = sierpinski(1).complex
    maxes = maximal_simplices(k)
    assert len(maxes) == 3  # the three triangles
    assert all(len(m) == 3 for m in maxes)


def test_group_roundtrip_with_table(tmp_path):
    g = make_group("symmetric", 3)
    path = tmp_path / "g.group.json"
    save_group(g, str(path))
    again = load_group(str(path))
    assert again.mul == g.mul
    table = character_table(again)
    assert sorted(table.degrees) == [1, 1, 2]


def test_tampered_character_table_rejected(tmp_path):
    g = make_group("cyclic", 3)
    path = tmp_path / "g.group.json"
    save_group(g, str(path))
    doc = json.loads(path.read_text())
    doc["character_table"]["irreducibles"][1][1][0][0] += 1
    path.write_text(json.dumps(doc))
    with pytest.raises(OrthogonalityFailure):
        load_group(str(path))


def test_action_bundle_roundtrip(tmp_path):
    act = cycle_rotation(6, 3)
    action_path = save_action_bundle(act, str(tmp_path / "c6"))
    again = load_action(action_path)
    assert again.complex == act.complex
    assert again.act == act.act
    assert again.group.mul == act.group.mul


def test_malformed_files_raise_input_error(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_complex(str(bad))
    bad.write_text(json.dumps({"vertex_count": 3}))
    with pytest.raises(InputError):
        load_complex(str(bad))
    with pytest.raises(InputError):
        load_action(str(bad))


def test_measure_roundtrip(tmp_path):
    act = cycle_rotation(12, 3)
    m = empirical_measure(act, 1)
    path = tmp_path / "m.measure.json"
    save_measure(m, str(path))
    again = load_measure(str(path), act.group)
    assert again.radius == m.radius
    assert tv_distance(m, again) == 0


def test_trivial_group_measure_roundtrip(tmp_path):
    triv = make_group("trivial")
    act = trivial_action(triv, sierpinski(1).complex)
    m = empirical_measure(act, 1)
    path = tmp_path / "m2.measure.json"
    save_measure(m, str(path))
    again = load_measure(str(path), triv)
    assert again.atoms == m.atoms
