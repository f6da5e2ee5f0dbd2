import random
from fractions import Fraction

import pytest

from symplex.actions import GroupAction, trivial_action
from symplex.canonical import (
    CanonicalCode,
    DoublyRootedGComplex,
    RootedGComplex,
    canonical_code,
    decode_code,
    doubly_rooted_code,
    root_restrict,
    rooted_distance,
    rooted_isomorphic,
    truncate_code,
)
from symplex.complexes import validate_complex
from symplex.errors import GroupMismatch, VertexOutOfRange
from symplex.generators import (
    cycle_reflection,
    cycle_rotation,
    prism_rotation,
    random_gcomplex,
    sierpinski,
)
from symplex.groups import make_group


def relabel_action(action, perm):
    """Rebuild an action under a relabeling old -> new of the vertices."""
    inv = {n: o for o, n in perm.items()}
    k = action.complex
    sims = [tuple(sorted(perm[v] for v in s)) for s in k.simplex_set()]
    newk = validate_complex(sims, k.degree_bound)
    rows = []
    for g in range(action.group.order):
        rows.append(tuple(perm[action.act[g][inv[v]]]
                          for v in range(k.vertex_count)))
    return GroupAction(action.group, newk, rows)


def random_rooted(rng, group):
    act = random_gcomplex(rng.randint(4, 8), 5, group, seed=rng.randint(0, 10 ** 6))
    root = rng.randrange(act.complex.vertex_count)
    return root_restrict(act, root)


GROUPS = [make_group("trivial"), make_group("cyclic", 2), make_group("cyclic", 3)]


class TestCodeInvariance:
    def test_relabeling_and_root_representative(self):
        rng = random.Random(42)
        for trial in range(60):
            group = GROUPS[trial % len(GROUPS)]
            rc = random_rooted(rng, group)
            base = canonical_code(rc)
            k = rc.action.complex
            verts = list(range(k.vertex_count))
            rng.shuffle(verts)
            perm = {o: n for o, n in enumerate(verts)}
            relabeled = relabel_action(rc.action, perm)
            other_root = perm[rng.choice(rc.root)]
            rc2 = root_restrict(relabeled, other_root)
            assert canonical_code(rc2) == base, f"trial {trial}"

    def test_code_distinguishes_rotation_from_trivial_action(self):
        tri = validate_complex([{0, 1}, {1, 2}, {0, 2}], 4)
        c3 = make_group("cyclic", 3)
        rot = GroupAction(c3, tri, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
        code_rot = canonical_code(root_restrict(rot, 0))
        code_triv = canonical_code(root_restrict(trivial_action(c3, tri), 0))
        assert code_rot != code_triv

    def test_code_equality_iff_isomorphic(self):
        rng = random.Random(7)
        pool = []
        for trial in range(24):
            group = GROUPS[trial % len(GROUPS)]
            pool.append(random_rooted(rng, group))
        for i in range(len(pool)):
            for j in range(i, len(pool)):
                a, b = pool[i], pool[j]
                if a.action.group.mul != b.action.group.mul:
                    continue
                same_code = canonical_code(a) == canonical_code(b)
                same_iso = rooted_isomorphic(a, b)
                assert same_code == same_iso, (i, j)

    def test_roundtrip_through_decode(self):
        rng = random.Random(3)
        for trial in range(20):
            group = GROUPS[trial % len(GROUPS)]
            rc = random_rooted(rng, group)
            code = canonical_code(rc)
            decoded, _ranks = decode_code(code)
            assert rooted_isomorphic(rc, decoded)
            assert canonical_code(decoded) == code

    def test_hex_roundtrip(self):
        rc = root_restrict(sierpinski(1), 0)
        code = canonical_code(rc)
        again = CanonicalCode.from_hex(code.group, code.hex())
        assert again == code


class TestBallCoherence:
    def test_truncation_equals_direct_ball_code(self):
        cases = [
            root_restrict(sierpinski(2), 0),
            root_restrict(cycle_rotation(12, 3), 0),
            root_restrict(prism_rotation(5), 0),
            root_restrict(cycle_reflection(8), 1),
        ]
        for rc in cases:
            for r in range(0, 3):
                big = canonical_code(rc.ball(r + 1))
                direct = canonical_code(rc.ball(r))
                assert truncate_code(big, r) == direct


class TestRootedIsomorphic:
    def test_reflexive(self):
        rc = root_restrict(sierpinski(1), 0)
        assert rooted_isomorphic(rc, rc)

    def test_vertex_count_mismatch(self):
        a = root_restrict(cycle_rotation(6, 3), 0)
        b = root_restrict(cycle_rotation(12, 3), 0)
        assert not rooted_isomorphic(a, b)

    def test_relabeled_cycle(self):
        rng = random.Random(5)
        act = cycle_rotation(6, 3)
        verts = list(range(6))
        rng.shuffle(verts)
        perm = {o: n for o, n in enumerate(verts)}
        a = root_restrict(act, 0)
        b = root_restrict(relabel_action(act, perm), perm[0])
        assert rooted_isomorphic(a, b)

    def test_group_mismatch_raises(self):
        a = root_restrict(cycle_rotation(6, 3), 0)
        b = root_restrict(cycle_rotation(6, 2), 0)
        with pytest.raises(GroupMismatch):
            rooted_isomorphic(a, b)


class TestRootedDistance:
    def test_self_distance(self):
        a = root_restrict(sierpinski(1), 0)
        d = rooted_distance(a, a, r_max=5)
        assert d.status == "at_least" and d.r == 5

    def test_incompatible_roots_infinite(self):
        # fixed root vs free-orbit root: non-isomorphic orbit types
        c2 = make_group("cyclic", 2)
        seg = validate_complex([{0, 1}], 4)
        swap = GroupAction(c2, seg, [[0, 1], [1, 0]])
        fixed = trivial_action(c2, seg)
        d = rooted_distance(root_restrict(swap, 0), root_restrict(fixed, 0), 4)
        assert d.status == "infinite"
        assert d.as_float() == float("inf")

    def test_corner_rooted_fractal_approximations(self):
        def corner_rc(n):
            act = sierpinski(n)
            k = act.complex
            corner = next(v for v in range(k.vertex_count) if k.degree(v) == 2)
            return root_restrict(act, corner)
        d = rooted_distance(corner_rc(2), corner_rc(3), r_max=8)
        assert d.status == "exact" and 0 <= d.r < 8

    def test_symmetry_and_ultrametric_bound(self):
        rng = random.Random(11)
        triples = []
        for _ in range(6):
            group = make_group("cyclic", 2)
            triples.append(tuple(random_rooted(rng, group) for _ in range(3)))
        r_max = 4
        for a, b, c in triples:
            dab = rooted_distance(a, b, r_max)
            dba = rooted_distance(b, a, r_max)
            assert (dab.status, dab.r) == (dba.status, dba.r)
            dac = rooted_distance(a, c, r_max)
            dbc = rooted_distance(b, c, r_max)
            vals = {k: (float("inf") if d.status == "infinite" else 0.5 ** d.r)
                    for k, d in (("ab", dab), ("ac", dac), ("bc", dbc))}
            assert vals["ac"] <= max(vals["ab"], vals["bc"]) + 1e-12


class TestDoublyRooted:
    def test_translation_symmetry_on_cycle(self):
        act = cycle_rotation(9, 3)
        # (K, O_0, O_1) vs (K, O_1, O_2): related by the rotation automorphism
        o0, o1, o2 = act.orbit(0), act.orbit(1), act.orbit(2)
        c1 = doubly_rooted_code(DoublyRootedGComplex(act, o0, o1))
        c2 = doubly_rooted_code(DoublyRootedGComplex(act, o1, o2))
        assert c1 == c2

    def test_asymmetric_path_codes_differ(self):
        path = validate_complex([{0, 1}, {1, 2}], 4)
        act = trivial_action(make_group("trivial"), path)
        end_mid = doubly_rooted_code(DoublyRootedGComplex(act, (0,), (1,)))
        mid_end = doubly_rooted_code(DoublyRootedGComplex(act, (1,), (0,)))
        assert end_mid != mid_end
        end_end = doubly_rooted_code(DoublyRootedGComplex(act, (0,), (2,)))
        other_end = doubly_rooted_code(DoublyRootedGComplex(act, (2,), (0,)))
        assert end_end == other_end  # the mirror swaps the ends

    def test_union_touching_is_enough(self):
        two = validate_complex([{0, 1}, {2, 3}], 4)
        act = trivial_action(make_group("trivial"), two)
        # neither root alone touches both components; the union does
        drc = DoublyRootedGComplex(act, (0,), (2,))
        assert doubly_rooted_code(drc) is not None
        with pytest.raises(VertexOutOfRange):
            DoublyRootedGComplex(
                trivial_action(make_group("trivial"),
                               validate_complex([{0, 1}, {2, 3}, {4}], 4)),
                (0,), (2,))


class TestRootRestrict:
    def test_connected_unchanged(self):
        act = sierpinski(1)
        rc = root_restrict(act, 0)
        assert rc.action.complex.vertex_count == act.complex.vertex_count

    def test_keeps_component_orbit(self):
        c3 = make_group("cyclic", 3)
        three = validate_complex([{0, 1, 2}, {3, 4, 5}, {6, 7, 8}], 6)
        act3 = GroupAction(c3, three, [list(range(9)),
                                       [3, 4, 5, 6, 7, 8, 0, 1, 2],
                                       [6, 7, 8, 0, 1, 2, 3, 4, 5]])
        rc = root_restrict(act3, 0)
        assert rc.action.complex.vertex_count == 9

    def test_out_of_range(self):
        with pytest.raises(VertexOutOfRange):
            root_restrict(sierpinski(0), 99)
