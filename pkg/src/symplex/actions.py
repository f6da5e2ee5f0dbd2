"""Simplicial actions of finite groups on complexes.

A :class:`GroupAction` couples a Group with a Complex through an
order x vertex_count table.  Construction checks both the group-action
axioms and that every group element maps simplices to simplices.
"""

from __future__ import annotations

from fractions import Fraction

from .complexes import Complex
from .cyclotomic import CyclotomicField
from .errors import DimensionOutOfRange, InvalidEmbedding, VertexOutOfRange
from .exact import SparseMatrix
from .groups import character_table, stabilizer_type


def _perm_parity(seq):
    """Sign of the permutation sorting ``seq`` ascending."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        m = min(range(i, len(seq)), key=lambda k: seq[k])
        if m != i:
            seq[i], seq[m] = seq[m], seq[i]
            sign = -sign
    return sign


class GroupAction:
    """A finite group acting simplicially on a finite complex."""

    __slots__ = ("group", "complex", "act", "_orbit_cache")

    def __init__(self, group, complex_, act, validate=True):
        act = tuple(tuple(row) for row in act)
        if validate:
            _validate_action(group, complex_, act)
        self.group = group
        self.complex = complex_
        self.act = act
        self._orbit_cache = None

    def apply(self, g, v):
        return self.act[g][v]

    def apply_simplex(self, g, simplex):
        return tuple(sorted(self.act[g][v] for v in simplex))

    def orbit(self, v):
        if not 0 <= v < self.complex.vertex_count:
            raise VertexOutOfRange(f"vertex {v} out of range")
        return tuple(sorted({row[v] for row in self.act}))

    def stabilizer(self, v):
        return frozenset(g for g in range(self.group.order)
                         if self.act[g][v] == v)

    def __repr__(self):
        return (f"GroupAction({self.group.name} on "
                f"{self.complex.vertex_count} vertices)")


def _validate_action(group, complex_, act):
    n = complex_.vertex_count
    if len(act) != group.order or any(len(row) != n for row in act):
        raise InvalidEmbedding("action table has wrong shape")
    ident = act[group.identity]
    if ident != tuple(range(n)):
        raise InvalidEmbedding("identity does not act trivially")
    for row in act:
        if sorted(row) != list(range(n)):
            raise InvalidEmbedding("a group element does not act bijectively")
    for g in range(group.order):
        for h in range(group.order):
            gh = group.mul[g][h]
            for v in range(n):
                if act[g][act[h][v]] != act[gh][v]:
                    raise InvalidEmbedding(
                        f"action is not compatible with the group law "
                        f"at (g={g}, h={h}, v={v})")
    simplex_sets = {d: set(group_) for d, group_ in complex_.simplices.items()}
    for g in range(group.order):
        row = act[g]
        for d, group_ in complex_.simplices.items():
            if d == 0:
                continue
            target = simplex_sets[d]
            for s in group_:
                if tuple(sorted(row[v] for v in s)) not in target:
                    raise InvalidEmbedding(
                        f"element {g} does not preserve simplex {s}")


def trivial_action(group, complex_):
    ident = tuple(range(complex_.vertex_count))
    return GroupAction(group, complex_, [ident] * group.order, validate=False)


def orbits(action):
    """Vertex orbits, each sorted ascending, ordered by minimal vertex."""
    if action._orbit_cache is None:
        seen = set()
        out = []
        for v in range(action.complex.vertex_count):
            if v in seen:
                continue
            orb = action.orbit(v)
            seen.update(orb)
            out.append(orb)
        action._orbit_cache = tuple(out)
    return action._orbit_cache


def orbit_type(action, orbit):
    """The OrbitType (transitive G-set class) of a vertex orbit."""
    if isinstance(orbit, int):
        orbit = action.orbit(orbit)
    stab = action.stabilizer(min(orbit))
    return stabilizer_type(action.group, stab)


def signed_permutation_matrix(action, g, n):
    """The signed permutation of g on ascending-oriented n-simplices."""
    if n < 0 or n > action.complex.dim:
        raise DimensionOutOfRange(f"n={n} out of range")
    simplices = action.complex.n_simplices(n)
    index = {s: i for i, s in enumerate(simplices)}
    m = SparseMatrix(len(simplices), len(simplices))
    row = action.act[g]
    for j, s in enumerate(simplices):
        image = tuple(row[v] for v in s)
        target = tuple(sorted(image))
        m.rows[index[target]][j] = _perm_parity(image)
    return m


def isotypic_projection(action, n, rho, table=None):
    """Matrix of the isotypic projection P_rho on n-chains.

    P_rho = (deg(rho)/|G|) * sum_g conj(chi_rho(g)) M_g with M_g the signed
    permutation matrices; entries are exact cyclotomic numbers.
    """
    if table is None:
        table = character_table(action.group)
    group = action.group
    field = table.field
    size = len(action.complex.n_simplices(n))
    if n < 0 or n > action.complex.dim:
        raise DimensionOutOfRange(f"n={n} out of range")
    scale = Fraction(table.degrees[rho], group.order)
    out = SparseMatrix(size, size)
    for g in range(group.order):
        coeff = table.value(rho, g).conjugate() * scale
        if not coeff:
            continue
        mg = signed_permutation_matrix(action, g, n)
        out = out.add(mg.scale(coeff))
    return out


def chain_matrix_to_field(matrix, field):
    """Lift an integer/rational sparse matrix into a cyclotomic field."""
    out = SparseMatrix(matrix.nrows, matrix.ncols)
    for i, row in enumerate(matrix.rows):
        out.rows[i] = {j: field.from_rational(v) for j, v in row.items()}
    return out
