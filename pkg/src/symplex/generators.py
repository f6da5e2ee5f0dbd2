"""Deterministic families of finite complexes with group symmetry.

Each generator returns a validated :class:`GroupAction`; identical inputs
produce bit-identical outputs.  The triangle-fractal family is checked
exhaustively at build time: the lattice form of its rotation is derived,
not axiomatic, so the generator verifies it before handing anything out.
"""

from __future__ import annotations

import random

from .actions import GroupAction, trivial_action
from .complexes import validate_complex
from .errors import Indivisible, IndexOutOfRange, InternalInconsistency
from .groups import make_group
from .induction import SubgroupEmbedding, induce_complex


def sierpinski(n):
    """The n-th triangle-fractal approximation with its order-3 rotation.

    Vertices are lattice pairs (a, b) in the basis of the two unit triangle
    edges; level k+1 is level k united with translates by 2^k along each
    basis vector.  The rotation generator acts by (a, b) -> (2^n - a - b, a).
    """
    if not 0 <= n <= 8:
        raise IndexOutOfRange(f"sierpinski index {n} outside 0..8")
    triangles = [((0, 0), (1, 0), (0, 1))]
    for k in range(n):
        shift = 2 ** k
        shifted1 = [tuple((a + shift, b) for (a, b) in t) for t in triangles]
        shifted2 = [tuple((a, b + shift) for (a, b) in t) for t in triangles]
        triangles = triangles + shifted1 + shifted2
    coords = sorted({p for t in triangles for p in t})
    index = {p: i for i, p in enumerate(coords)}
    maximal = [tuple(sorted(index[p] for p in t)) for t in triangles]
    complex_ = validate_complex(maximal, degree_bound=4)

    expected_v = (3 ** (n + 1) + 3) // 2
    expected_e = 3 ** (n + 1)
    expected_t = 3 ** n
    counts = complex_.counts()
    if (complex_.vertex_count != expected_v or counts.get(1) != expected_e
            or counts.get(2) != expected_t):
        raise InternalInconsistency(
            f"triangle fractal counts wrong at n={n}: {counts}")

    size = 2 ** n

    def rot(p):
        a, b = p
        return (size - a - b, a)

    perm = []
    for p in coords:
        q = rot(p)
        if q not in index:
            raise InternalInconsistency(
                f"rotation leaves the vertex set at {p} -> {q} (n={n})")
        perm.append(index[q])
    # exhaustive checks: order 3 and simplex preservation
    perm2 = [perm[perm[v]] for v in range(len(perm))]
    perm3 = [perm[v] for v in perm2]
    if perm3 != list(range(len(perm))):
        raise InternalInconsistency(f"rotation does not have order 3 at n={n}")
    simplex_set = complex_.simplex_set()
    for s in simplex_set:
        if tuple(sorted(perm[v] for v in s)) not in simplex_set:
            raise InternalInconsistency(
                f"rotation does not preserve simplices at n={n}")
    group = make_group("cyclic", 3)
    ident = list(range(len(perm)))
    return GroupAction(group, complex_, [ident, perm, perm2])


def cycle_rotation(m, k):
    """C_k acting on the m-cycle by rotation of m/k steps (needs k | m)."""
    if m < 3:
        raise Indivisible(f"cycle length {m} must be at least 3")
    if m % k != 0:
        raise Indivisible(f"rotation order {k} does not divide cycle length {m}")
    edges = [(i, (i + 1) % m) for i in range(m)]
    complex_ = validate_complex(edges, degree_bound=2)
    step = m // k
    act = [[(v + j * step) % m for v in range(m)] for j in range(k)]
    return GroupAction(make_group("cyclic", k), complex_, act)


def cycle_reflection(m):
    """C_2 acting on the m-cycle by the reflection i -> -i (fixes vertex 0)."""
    if m < 3:
        raise Indivisible(f"cycle length {m} must be at least 3")
    edges = [(i, (i + 1) % m) for i in range(m)]
    complex_ = validate_complex(edges, degree_bound=2)
    act = [list(range(m)), [(-v) % m for v in range(m)]]
    return GroupAction(make_group("cyclic", 2), complex_, act)


def prism_rotation(m):
    """C_3 rotating the triangle factor of a triangulated torus grid.

    Vertices are (i, j) with i on the m-cycle and j on the 3-cycle; each
    square face is split along the (i, j)-(i+1, j+1) diagonal.  The rotation
    j -> j+1 displaces every vertex by exactly one edge.
    """
    if m < 3:
        raise Indivisible(f"prism length {m} must be at least 3")

    def vid(i, j):
        return (i % m) * 3 + (j % 3)

    triangles = []
    for i in range(m):
        for j in range(3):
            triangles.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            triangles.append((vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)))
    complex_ = validate_complex([tuple(sorted(t)) for t in triangles],
                                degree_bound=8)
    act = []
    for r in range(3):
        act.append([vid(v // 3, v % 3 + r) for v in range(3 * m)])
    return GroupAction(make_group("cyclic", 3), complex_, act)


def induced_copies(group, subgroup_elements, action_h):
    """Family-building alias for the induction of an action to a bigger group."""
    emb = SubgroupEmbedding(group, subgroup_elements)
    return induce_complex(emb, action_h)


def random_complex(v, degree_bound, seed):
    """Seeded random bounded-degree complex: edge proposals with degree-cap
    rejection, then each closed triangle filled with probability 1/2."""
    rng = random.Random(seed)
    target = min(3.0 / max(v - 1, 1), 1.0)
    deg = [0] * v
    edges = []
    for i in range(v):
        for j in range(i + 1, v):
            if rng.random() < target and deg[i] < degree_bound and deg[j] < degree_bound:
                edges.append((i, j))
                deg[i] += 1
                deg[j] += 1
    edge_set = set(edges)
    simplices = [(i,) for i in range(v)] + edges
    for i in range(v):
        for j in range(i + 1, v):
            if (i, j) not in edge_set:
                continue
            for k in range(j + 1, v):
                if (j, k) in edge_set and (i, k) in edge_set:
                    if rng.random() < 0.5:
                        simplices.append((i, j, k))
    return validate_complex(simplices, degree_bound=degree_bound, vertex_count=v)


def random_gcomplex(v, degree_bound, group, seed):
    """Free orbits of a seeded random complex: |G| permuted copies."""
    base = random_complex(v, degree_bound, seed)
    base_action = trivial_action(make_group("trivial"), base)
    emb = SubgroupEmbedding(group, {group.identity})
    return induce_complex(emb, base_action)
