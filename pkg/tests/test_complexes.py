import random
from fractions import Fraction
from itertools import combinations

import pytest

from symplex.complexes import (
    INFINITE,
    ball,
    betti,
    boundary_matrix,
    laplacian,
    path_distance,
    validate_complex,
)
from symplex.errors import (
    DegreeBoundExceeded,
    DimensionOutOfRange,
    EmptySimplex,
    VertexOutOfRange,
)
from symplex.generators import random_complex, sierpinski


def triangle():
    return validate_complex([{0, 1, 2}], 4)


def hollow_triangle():
    return validate_complex([{0, 1}, {1, 2}, {0, 2}], 4)


def int_rank_by_minors(mat):
    """Independent rank oracle: largest k with a nonzero k x k minor."""
    rows = [[mat.entry(i, j) for j in range(mat.ncols)] for i in range(mat.nrows)]

    def det(sub):
        n = len(sub)
        if n == 1:
            return sub[0][0]
        total = 0
        for j in range(n):
            if sub[0][j] == 0:
                continue
            minor = [r[:j] + r[j + 1:] for r in sub[1:]]
            total += (-1) ** j * sub[0][j] * det(minor)
        return total

    best = 0
    for k in range(1, min(mat.nrows, mat.ncols) + 1):
        found = False
        for ri in combinations(range(mat.nrows), k):
            for ci in combinations(range(mat.ncols), k):
                sub = [[rows[i][j] for j in ci] for i in ri]
                if det(sub) != 0:
                    found = True
                    break
            if found:
                break
        if found:
            best = k
        else:
            break
    return best


class TestValidate:
    def test_closure_of_triangle(self):
        k = triangle()
        assert k.vertex_count == 3
        assert k.counts() == {0: 3, 1: 3, 2: 1}

    def test_two_points(self):
        k = validate_complex([{0}, {1}], 4)
        assert k.vertex_count == 2
        assert k.counts() == {0: 2}

    def test_sierpinski_level_one_counts(self):
        k = sierpinski(1).complex
        assert k.vertex_count == 6
        assert k.counts() == {0: 6, 1: 9, 2: 3}

    def test_degree_bound_rejected(self):
        star = [{0, i} for i in range(1, 7)]
        with pytest.raises(DegreeBoundExceeded):
            validate_complex(star, 5)
        validate_complex(star, 6)

    def test_empty_simplex_rejected(self):
        with pytest.raises(EmptySimplex):
            validate_complex([set()], 4)
        with pytest.raises(EmptySimplex):
            validate_complex([], 4)

    def test_noncontiguous_ids_rejected(self):
        with pytest.raises(VertexOutOfRange):
            validate_complex([{0, 2}], 4)

    def test_isolated_vertices_via_vertex_count(self):
        k = validate_complex([{0, 1}], 4, vertex_count=4)
        assert k.vertex_count == 4
        assert k.counts() == {0: 4, 1: 1}


class TestPathDistance:
    def test_same_vertex(self):
        assert path_distance(triangle(), 0, 0) == 0

    def test_adjacent(self):
        assert path_distance(triangle(), 0, 2) == 1

    def test_disconnected(self):
        k = validate_complex([{0}, {1}], 4)
        assert path_distance(k, 0, 1) == INFINITE

    def test_out_of_range(self):
        with pytest.raises(VertexOutOfRange):
            path_distance(triangle(), 0, 5)

    def test_infinite_compares_above_ints(self):
        assert INFINITE > 10 ** 9
        assert not INFINITE <= 3


class TestBall:
    def test_radius_zero(self):
        sub, relabel = ball(triangle(), {0}, 0)
        assert sub.vertex_count == 1
        assert relabel == {0: 0}

    def test_radius_one_is_whole_triangle(self):
        sub, _ = ball(triangle(), {0}, 1)
        assert sub.counts() == {0: 3, 1: 3, 2: 1}

    def test_sierpinski_corner_ball_matches_bfs_oracle(self):
        k = sierpinski(2).complex
        corner = next(v for v in range(k.vertex_count) if k.degree(v) == 2)
        # oracle: plain BFS over the edge list
        adj = {v: set() for v in range(k.vertex_count)}
        for (u, v) in k.n_simplices(1):
            adj[u].add(v)
            adj[v].add(u)
        frontier, seen = {corner}, {corner}
        for _ in range(2):
            frontier = {w for v in frontier for w in adj[v]} - seen
            seen |= frontier
        sub, relabel = ball(k, {corner}, 2)
        assert set(relabel) == seen
        assert sub.vertex_count == 6
        assert sub.counts() == {0: 6, 1: 9, 2: 3}

    def test_ball_nesting(self):
        k = sierpinski(2).complex
        b2, _ = ball(k, {0}, 2)
        b1_direct, _ = ball(k, {0}, 1)
        b1_nested, _ = ball(b2, {0}, 1)
        assert b1_direct == b1_nested


class TestBoundary:
    def test_triangle_edges_incidence(self):
        m = boundary_matrix(triangle(), 1)
        assert (m.nrows, m.ncols) == (3, 3)
        for j in range(3):
            col = [m.entry(i, j) for i in range(3)]
            assert sorted(col) == [-1, 0, 1]
            assert sum(col) == 0

    def test_boundary_of_boundary_vanishes(self):
        k = triangle()
        d1 = boundary_matrix(k, 1)
        d2 = boundary_matrix(k, 2)
        assert d1.matmul(d2).is_zero()

    def test_sierpinski_one_rank_by_minor_oracle(self):
        k = sierpinski(1).complex
        d2 = boundary_matrix(k, 2)
        assert (d2.nrows, d2.ncols) == (9, 3)
        assert d2.rank() == int_rank_by_minors(d2) == 3

    def test_dimension_out_of_range(self):
        with pytest.raises(DimensionOutOfRange):
            boundary_matrix(triangle(), 3)

    def test_dd_zero_on_random_complexes(self):
        for seed in range(5):
            k = random_complex(10, 6, seed)
            if k.dim >= 2:
                d1 = boundary_matrix(k, 1)
                d2 = boundary_matrix(k, 2)
                assert d1.matmul(d2).is_zero()


class TestLaplacian:
    def test_single_vertex(self):
        k = validate_complex([{0}], 4)
        assert laplacian(k, 0).entry(0, 0) == 0

    def test_triangle_degree_form(self):
        lap = laplacian(triangle(), 0)
        for i in range(3):
            assert lap.entry(i, i) == 2
            for j in range(3):
                if i != j:
                    assert lap.entry(i, j) == -1
        assert len(lap.nullspace()) == 1

    def test_sierpinski_kernel_is_first_betti(self):
        k = sierpinski(1).complex
        lap = laplacian(k, 1)
        assert lap.nrows == 9
        assert len(lap.nullspace()) == betti(k, 1) == 1

    def test_symmetric_positive_semidefinite(self):
        rng = random.Random(4)
        for seed in range(4):
            k = random_complex(9, 6, seed)
            for n in range(k.dim + 1):
                lap = laplacian(k, n)
                assert lap == lap.transpose()
                for _ in range(5):
                    x = {i: rng.randint(-3, 3) for i in range(lap.ncols)}
                    lx = lap.apply(x)
                    quad = sum(lx.get(i, 0) * x[i] for i in x)
                    assert quad >= 0


class TestBetti:
    def test_solid_triangle_contractible(self):
        assert betti(triangle(), 0) == 1
        assert betti(triangle(), 1) == 0

    def test_hollow_triangle_circle(self):
        assert betti(hollow_triangle(), 1) == 1

    def test_sierpinski_closed_form(self):
        for n in range(4):
            k = sierpinski(n).complex
            assert betti(k, 0) == 1
            assert betti(k, 1) == (3 ** n - 1) // 2

    def test_euler_characteristic_identity(self):
        for seed in range(6):
            k = random_complex(9, 6, seed)
            chi = k.euler_characteristic()
            chi_betti = sum((-1) ** n * betti(k, n) for n in range(k.dim + 1))
            assert chi == chi_betti

    def test_harmonic_equals_homology(self):
        for seed in range(4):
            k = random_complex(8, 6, seed + 10)
            if sum(k.counts().values()) > 200:
                continue
            for n in range(k.dim + 1):
                assert len(laplacian(k, n).nullspace()) == betti(k, n)
