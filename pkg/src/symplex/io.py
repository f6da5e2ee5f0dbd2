"""File formats: complexes, groups, actions, and measures.

All formats are JSON documents.  Complex files carry maximal simplices only
(the loader applies downward closure); group files may embed an exact
character table as rational coefficient vectors over the group's cyclotomic
field; action files reference their group and complex files by path
relative to the action file.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction

from .actions import GroupAction
from .canonical import CanonicalCode, decode_code
from .complexes import validate_complex
from .cyclotomic import CyclotomicField
from .errors import InputError, RadiusMismatch
from .groups import CharacterTable, Group, character_table, make_group
from .measure import EmpiricalMeasure


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def maximal_simplices(complex_):
    """Simplices that are not a face of any larger simplex."""
    all_simplices = complex_.simplex_set()
    out = []
    for s in sorted(all_simplices, key=lambda t: (len(t), t)):
        covered = False
        for t in all_simplices:
            if len(t) > len(s) and set(s) < set(t):
                covered = True
                break
        if not covered:
            out.append(list(s))
    return sorted(out, key=lambda x: (len(x), x))


def save_complex(complex_, path):
    doc = {
        "vertex_count": complex_.vertex_count,
        "degree_bound": complex_.degree_bound,
        "maximal_simplices": maximal_simplices(complex_),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_complex(path):
    doc = _load_json(path)
    try:
        return validate_complex(
            [tuple(s) for s in doc["maximal_simplices"]],
            degree_bound=int(doc["degree_bound"]),
            vertex_count=int(doc["vertex_count"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed complex file {path}: {exc}") from exc


def _table_to_json(table):
    return {
        "exponent": table.field.e,
        "classes": [list(c) for c in table.classes],
        "irreducibles": [
            [[[x.numerator, x.denominator] for x in value.c] for value in char]
            for char in table.chars
        ],
    }


def _table_from_json(group, doc):
    try:
        e = int(doc["exponent"])
        field = CyclotomicField(e)
        classes = tuple(tuple(int(g) for g in c) for c in doc["classes"])
        chars = []
        for char in doc["irreducibles"]:
            values = []
            for coeffs in char:
                values.append(field.from_coeffs(
                    [Fraction(int(num), int(den)) for num, den in coeffs]))
            chars.append(tuple(values))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"malformed character table: {exc}") from exc
    return CharacterTable(group, field, classes, chars)


def save_group(group, path, include_table=True):
    doc = {
        "name": group.name,
        "order": group.order,
        "mul_table": [list(row) for row in group.mul],
    }
    if include_table:
        doc["character_table"] = _table_to_json(character_table(group))
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_group(path):
    """Load a group; an embedded character table is verified and cached."""
    doc = _load_json(path)
    try:
        group = Group(doc["mul_table"], name=doc.get("name", "custom"))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed group file {path}: {exc}") from exc
    if "character_table" in doc:
        table = character_table(group, _table_from_json(group, doc["character_table"]))
        group._cache["character_table"] = table
    return group


def save_action(action, path, group_path, complex_path):
    base = os.path.dirname(os.path.abspath(path))
    doc = {
        "group_ref": os.path.relpath(os.path.abspath(group_path), base),
        "complex_ref": os.path.relpath(os.path.abspath(complex_path), base),
        "act_table": [list(row) for row in action.act],
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_action(path):
    doc = _load_json(path)
    base = os.path.dirname(os.path.abspath(path))
    try:
        group = load_group(os.path.join(base, doc["group_ref"]))
        complex_ = load_complex(os.path.join(base, doc["complex_ref"]))
        act = doc["act_table"]
    except KeyError as exc:
        raise InputError(f"malformed action file {path}: {exc}") from exc
    return GroupAction(group, complex_, act)


def save_action_bundle(action, prefix):
    """Write group, complex, and action files sharing a path prefix.

    Returns the action file path.
    """
    group_path = prefix + ".group.json"
    complex_path = prefix + ".complex.json"
    action_path = prefix + ".action.json"
    save_group(action.group, group_path)
    save_complex(action.complex, complex_path)
    save_action(action, action_path, group_path, complex_path)
    return action_path


def save_measure(measure, path):
    rows = sorted(
        [[code.hex(), w.numerator, w.denominator, measure.radius]
         for code, w in measure.atoms.items()])
    with open(path, "w") as fh:
        json.dump(rows, fh, indent=0)
        fh.write("\n")


def load_measure(path, group):
    rows = _load_json(path)
    atoms = {}
    radius = None
    try:
        for hex_code, num, den, r in rows:
            code = CanonicalCode.from_hex(group, hex_code)
            rooted, _ = decode_code(code)  # must decode cleanly
            del rooted
            if radius is None:
                radius = int(r)
            elif radius != int(r):
                raise RadiusMismatch("mixed radii in measure file")
            atoms[code] = Fraction(int(num), int(den))
    except (TypeError, ValueError) as exc:
        raise InputError(f"malformed measure file {path}: {exc}") from exc
    return EmpiricalMeasure(radius, atoms, f"loaded from {path}", group)
