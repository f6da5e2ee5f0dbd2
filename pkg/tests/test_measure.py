import random
from fractions import Fraction

import pytest

from symplex.actions import GroupAction, trivial_action
from symplex.canonical import root_restrict
from symplex.complexes import validate_complex
from symplex.errors import RadiusMismatch
from symplex.generators import (
    cycle_rotation,
    prism_rotation,
    random_gcomplex,
    sierpinski,
)
from symplex.groups import make_group
from symplex.measure import (
    WeightedEnsemble,
    check_unimodular,
    convergence_report,
    empirical_measure,
    tv_distance,
    uniform_root_ensemble,
)

TRIV = make_group("trivial")


def rotation_triangle():
    tri = validate_complex([{0, 1}, {1, 2}, {0, 2}], 4)
    return GroupAction(make_group("cyclic", 3), tri,
                       [[0, 1, 2], [1, 2, 0], [2, 0, 1]])


class TestEmpiricalMeasure:
    def test_single_vertex(self):
        pt = trivial_action(TRIV, validate_complex([{0}], 4))
        for r in [0, 2, 5]:
            m = empirical_measure(pt, r)
            assert len(m) == 1
            assert list(m.atoms.values()) == [Fraction(1)]

    def test_transitive_rotation_one_atom(self):
        m = empirical_measure(rotation_triangle(), 1)
        assert len(m) == 1
        assert list(m.atoms.values()) == [Fraction(1)]

    def test_level_one_fractal_two_ball_types(self):
        act = trivial_action(TRIV, sierpinski(1).complex)
        m = empirical_measure(act, 1)
        assert len(m) == 2
        assert sorted(m.atoms.values()) == [Fraction(1, 2), Fraction(1, 2)]

    def test_weights_always_sum_to_one(self):
        for seed in range(6):
            act = random_gcomplex(7, 5, make_group("cyclic", 2), seed)
            m = empirical_measure(act, 1)
            assert sum(m.atoms.values()) == 1


class TestTvDistance:
    def test_identity(self):
        m = empirical_measure(rotation_triangle(), 1)
        assert tv_distance(m, m) == 0

    def test_disjoint_supports(self):
        m1 = empirical_measure(rotation_triangle(), 1)
        pt = trivial_action(make_group("cyclic", 3),
                            validate_complex([{0}], 4))
        m2 = empirical_measure(pt, 1)
        assert tv_distance(m1, m2) == 1

    def test_radius_mismatch(self):
        m1 = empirical_measure(rotation_triangle(), 1)
        m2 = empirical_measure(rotation_triangle(), 2)
        with pytest.raises(RadiusMismatch):
            tv_distance(m1, m2)

    def test_metric_properties_on_random_triples(self):
        rng = random.Random(0)
        group = make_group("cyclic", 2)
        measures = [empirical_measure(random_gcomplex(6, 5, group, seed), 1)
                    for seed in range(6)]
        for _ in range(12):
            a, b, c = (measures[rng.randrange(len(measures))] for _ in range(3))
            assert tv_distance(a, b) == tv_distance(b, a)
            assert tv_distance(a, b) <= tv_distance(a, c) + tv_distance(c, b)
            assert (tv_distance(a, b) == 0) == (a.atoms == b.atoms)

    def test_radius_refinement_cannot_blur(self):
        group = make_group("cyclic", 3)
        a = random_gcomplex(8, 5, group, 1)
        b = random_gcomplex(8, 5, group, 2)
        prev = Fraction(0)
        for r in range(0, 4):
            cur = tv_distance(empirical_measure(a, r), empirical_measure(b, r))
            assert cur >= prev
            prev = cur


class TestUnimodularity:
    def test_uniform_ensembles_pass(self):
        actions = [
            rotation_triangle(),
            sierpinski(1),
            trivial_action(TRIV, sierpinski(1).complex),
            cycle_rotation(6, 3),
            prism_rotation(4),
        ]
        for act in actions:
            ens = uniform_root_ensemble(act)
            for depth in [1, 2, 3]:
                report = check_unimodular(ens, depth)
                assert report.passed, (act, depth, report)
                assert report.max_violation == 0

    def test_end_rooted_path_fails(self):
        path = validate_complex([{0, 1}, {1, 2}], 4)
        act = trivial_action(TRIV, path)
        ens = WeightedEnsemble([(root_restrict(act, 0), Fraction(1))])
        report = check_unimodular(ens, 2)
        assert not report.passed
        assert report.max_violation > 0
        assert report.violations

    def test_point_mass_on_vertex_passes(self):
        pt = trivial_action(TRIV, validate_complex([{0}], 4))
        ens = WeightedEnsemble([(root_restrict(pt, 0), Fraction(1))])
        assert check_unimodular(ens, 3).passed

    def test_seeded_random_uniform_ensembles_pass(self):
        for seed in range(5):
            act = random_gcomplex(6, 5, make_group("cyclic", 2), seed)
            ens = uniform_root_ensemble(act)
            assert check_unimodular(ens, 2).passed


class TestConvergenceReport:
    def test_constant_family_is_zero(self):
        fam = [rotation_triangle() for _ in range(4)]
        report = convergence_report(fam, [1])
        assert all(tv == 0 for _i, _r, tv in report.rows)

    def test_far_rotation_cycles_look_alike(self):
        fam = [cycle_rotation(3 * 2 ** j, 3) for j in range(2, 5)]
        report = convergence_report(fam, [1])
        assert all(tv == 0 for _i, _r, tv in report.rows)

    def test_fractal_distances_shrink(self):
        fam = [sierpinski(n) for n in range(2, 5)]
        report = convergence_report(fam, [1])
        col = report.tv_column(1)
        assert all(col[i] > col[i + 1] for i in range(len(col) - 1))
        assert all(0 < tv < 1 for tv in col)

    def test_csv_written(self, tmp_path):
        fam = [sierpinski(n) for n in range(0, 3)]
        out = tmp_path / "report.csv"
        convergence_report(fam, [1], out_path=str(out))
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "index,r,tv_to_next"
        assert len(lines) == 3
