"""Isotypic Laplacians, exact multiplicities, and spectral diagnostics.

The isotypic Laplacian on n-chains is (id - P_rho) + Delta_n; its kernel is
the rho-isotypic part of the harmonic n-chains, so its exact nullity over
the cyclotomic field gives the multiplicity of rho in degree-n homology.
Floating point is used only for eigenvalue lists, and the zero eigenvalue
mass is always overwritten with the exact kernel dimension.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .actions import chain_matrix_to_field, isotypic_projection, orbits
from .canonical import decode_code
from .complexes import betti, laplacian
from .errors import (
    InternalInconsistency,
    PowerCapExceeded,
    RadiusTooSmall,
    SizeCapExceeded,
)
from .exact import SparseMatrix
from .groups import character_table
from .induction import induce_complex
from .measure import EmpiricalMeasure

POWER_CAP = 12
SPECTRUM_SIZE_CAP = 5000
ZERO_EIGENVALUE_TOL = 1e-9
EIGENVALUE_MERGE_TOL = 1e-8
ELIMINATION_SIZE_LIMIT = 1200


def rho_laplacian(action, n, rho, table=None):
    """(id - P_rho) + Delta_n as an exact cyclotomic matrix on n-chains."""
    if table is None:
        table = character_table(action.group)
    field = table.field
    proj = isotypic_projection(action, n, rho, table=table)
    size = proj.nrows
    lap = chain_matrix_to_field(laplacian(action.complex, n), field)
    out = SparseMatrix.identity(size, field.one).sub(proj).add(lap)
    return out


@dataclass(frozen=True)
class MultiplicityResult:
    m: int                 # multiplicity of rho in H_n
    m2: Fraction           # m divided by the vertex count
    kernel_dim: int        # nullity of the isotypic Laplacian
    method: str


def _multiplicity_elimination(action, n, rho, table):
    mat = rho_laplacian(action, n, rho, table=table)
    kernel = mat.ncols - mat.rank()
    return kernel


def _lefschetz_number(action, g):
    """Alternating sum of traces of g on chains: signed fixed simplices."""
    total = 0
    row = action.act[g]
    for d, group_ in action.complex.simplices.items():
        t = 0
        for s in group_:
            image = tuple(row[v] for v in s)
            if tuple(sorted(image)) == s:
                t += _parity(image)
        total += (-1) ** d * t
    return total


def _parity(seq):
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        m = min(range(i, len(seq)), key=lambda k: seq[k])
        if m != i:
            seq[i], seq[m] = seq[m], seq[i]
            sign = -sign
    return sign


def _lefschetz_applicable(action, n):
    """The trace-formula route works for degree-1 homology of a connected
    complex of dimension <= 2 with vanishing degree-2 homology: there the
    character of the action on H_1 is 1 - Lefschetz number."""
    k = action.complex
    return (n == 1 and k.dim <= 2 and betti(k, 0) == 1
            and (k.dim < 2 or betti(k, 2) == 0))


def _multiplicity_lefschetz(action, n, rho, table):
    group = action.group
    field = table.field
    total = field.zero
    for g in range(group.order):
        h1_trace = 1 - _lefschetz_number(action, g)
        total = total + table.value(rho, g).conjugate() * h1_trace
    q = total.rational_part()
    if q is None:
        raise InternalInconsistency("character sum on homology is irrational")
    q = q / group.order
    if q.denominator != 1 or q < 0:
        raise InternalInconsistency(
            f"homology multiplicity {q} is not a nonnegative integer")
    return int(q) * table.degrees[rho]


def multiplicity(action, n, rho, table=None, method="auto"):
    """Exact multiplicity of irreducible ``rho`` in H_n.

    ``elimination`` computes the nullity of the isotypic Laplacian over the
    cyclotomic field; ``lefschetz`` uses the exact trace formula where its
    preconditions hold; ``auto`` picks lefschetz only above the elimination
    size limit.
    """
    if table is None:
        table = character_table(action.group)
    size = len(action.complex.n_simplices(n))
    if method == "auto":
        if size > ELIMINATION_SIZE_LIMIT and _lefschetz_applicable(action, n):
            method = "lefschetz"
        else:
            method = "elimination"
    if method == "lefschetz":
        if not _lefschetz_applicable(action, n):
            raise InternalInconsistency(
                "lefschetz route needs a connected 2-complex with trivial "
                "degree-2 homology and n=1")
        kernel = _multiplicity_lefschetz(action, n, rho, table)
    elif method == "elimination":
        kernel = _multiplicity_elimination(action, n, rho, table)
    else:
        raise ValueError(f"unknown multiplicity method '{method}'")
    deg = table.degrees[rho]
    if kernel % deg != 0:
        raise InternalInconsistency(
            f"kernel dimension {kernel} is not divisible by the degree {deg}")
    m = kernel // deg
    nv = action.complex.vertex_count
    return MultiplicityResult(m=m, m2=Fraction(m, nv), kernel_dim=kernel,
                              method=method)


def l2_betti(obj, n):
    """Vertex-normalized Betti number of a complex or an action."""
    complex_ = getattr(obj, "complex", obj)
    return Fraction(betti(complex_, n), complex_.vertex_count)


class SpectralMeasure:
    """Vertex-normalized eigenvalue/mass pairs of an isotypic Laplacian."""

    __slots__ = ("pairs", "normalization")

    def __init__(self, pairs, normalization):
        self.pairs = tuple(pairs)  # (float eigenvalue, Fraction mass)
        self.normalization = normalization

    def total_mass(self):
        return sum((m for _e, m in self.pairs), Fraction(0))

    def moment(self, r):
        return sum(float(m) * e ** r for e, m in self.pairs)

    def __repr__(self):
        return f"SpectralMeasure({len(self.pairs)} atoms / {self.normalization})"


def spectral_measure(action, n, rho, table=None, size_cap=SPECTRUM_SIZE_CAP):
    """Eigenvalues of the isotypic Laplacian with exact kernel mass.

    The nonzero spectrum comes from a dense Hermitian eigensolver on the
    complex embedding; eigenvalues within the merge tolerance are pooled.
    The mass at zero is replaced by the exact kernel dimension.
    """
    if table is None:
        table = character_table(action.group)
    size = len(action.complex.n_simplices(n))
    if size > size_cap:
        raise SizeCapExceeded(f"{size} n-simplices exceeds cap {size_cap}")
    nv = action.complex.vertex_count
    if size == 0:
        return SpectralMeasure([], nv)
    mat = rho_laplacian(action, n, rho, table=table)
    dense = np.zeros((size, size), dtype=complex)
    for i, row in enumerate(mat.rows):
        for j, v in row.items():
            dense[i, j] = v.to_complex()
    if not np.allclose(dense, dense.conj().T, atol=1e-12):
        raise InternalInconsistency("isotypic Laplacian is not self-adjoint")
    eigs = np.linalg.eigvalsh(dense)
    if eigs.size and eigs[0] < -ZERO_EIGENVALUE_TOL:
        raise InternalInconsistency(
            f"negative eigenvalue {eigs[0]} below tolerance")
    kernel = multiplicity(action, n, rho, table=table).kernel_dim
    near_zero = int(np.sum(eigs < ZERO_EIGENVALUE_TOL))
    if near_zero != kernel:
        raise InternalInconsistency(
            f"float kernel count {near_zero} != exact kernel {kernel}")
    pairs = []
    if kernel:
        pairs.append((0.0, Fraction(kernel, nv)))
    positive = [float(e) for e in eigs[kernel:]]
    i = 0
    while i < len(positive):
        j = i + 1
        while j < len(positive) and positive[j] - positive[j - 1] <= EIGENVALUE_MERGE_TOL:
            j += 1
        cluster = positive[i:j]
        pairs.append((sum(cluster) / len(cluster), Fraction(len(cluster), nv)))
        i = j
    sm = SpectralMeasure(pairs, nv)
    expected = Fraction(size, nv)
    if sm.total_mass() != expected:
        raise InternalInconsistency("spectral measure mass mismatch")
    return sm


def moment(action, n, rho, r, table=None, power_cap=POWER_CAP):
    """Exact normalized trace of the r-th power of the isotypic Laplacian."""
    if r < 0 or r > power_cap:
        raise PowerCapExceeded(f"moment order {r} outside 0..{power_cap}")
    nv = action.complex.vertex_count
    size = len(action.complex.n_simplices(n))
    if r == 0:
        return Fraction(size, nv)
    if table is None:
        table = character_table(action.group)
    mat = rho_laplacian(action, n, rho, table=table)
    t = mat.power_trace(r)
    if isinstance(t, int):
        return Fraction(t, nv)
    q = t.rational_part()
    if q is None:
        raise InternalInconsistency(
            "trace has an irrational residue; the group's character field "
            "does not collapse to the rationals here")
    return q / nv


def local_moment(measure, n, rho, r, table=None):
    """The same moment read off a neighborhood measure.

    Valid once the measure radius reaches 2r+1: the diagonal entry of the
    r-th power at a simplex meeting the root orbit only depends on that
    neighborhood, so summing the root-local traces over the atoms equals
    the global moment exactly.
    """
    if not isinstance(measure, EmpiricalMeasure):
        raise TypeError("local_moment needs an EmpiricalMeasure")
    if measure.radius < 2 * r + 1:
        raise RadiusTooSmall(
            f"measure radius {measure.radius} below required {2 * r + 1}")
    group = measure.group
    if table is None:
        table = character_table(group)
    field = table.field
    total = Fraction(0)
    for code, weight in sorted(measure.atoms.items(), key=lambda kv: kv[0].blob):
        rooted, _ranks = decode_code(code)
        action = rooted.action
        size = len(action.complex.n_simplices(n))
        root = rooted.root
        rootset = set(root)
        if size == 0:
            continue
        if r == 0:
            # diagonal of the identity: count simplices meeting the root
            acc = Fraction(0)
            for s in action.complex.n_simplices(n):
                hits = sum(1 for v in s if v in rootset)
                if hits:
                    acc += Fraction(hits)
            total += weight * acc / (len(root) * (n + 1))
            continue
        mat = rho_laplacian(action, n, rho, table=table)
        power = mat
        for _ in range(r - 1):
            power = power.matmul(mat)
        acc = field.zero
        for idx, s in enumerate(action.complex.n_simplices(n)):
            hits = sum(1 for v in s if v in rootset)
            if hits:
                diag = power.rows[idx].get(idx)
                if diag is not None:
                    acc = acc + diag * hits
        q = acc.rational_part()
        if q is None:
            raise InternalInconsistency("local trace has an irrational residue")
        total += weight * q / (len(root) * (n + 1))
    return total


def fk_determinant(spectral):
    """exp of the log-integral over the strictly positive spectrum."""
    total = 0.0
    for e, mass in spectral.pairs:
        if e > ZERO_EIGENVALUE_TOL:
            total += float(mass) * math.log(e)
    return math.exp(total)


@dataclass
class ReciprocityReport:
    rows: list  # (rho index, lhs Fraction, rhs Fraction, equal bool)
    all_equal: bool


def reciprocity_check(emb, action_h, n, table_g=None):
    """Both sides of the induced-multiplicity identity, exactly, per rho.

    Left: multiplicities on the induced complex.  Right: restriction
    multiplicities against the subgroup's own multiplicities, scaled by
    |H|/|G|.
    """
    from .groups import restriction_multiplicities

    group = emb.ambient
    if table_g is None:
        table_g = character_table(group)
    table_h = character_table(emb.subgroup)
    induced = induce_complex(emb, action_h)
    h_mults = [multiplicity(action_h, n, theta, table=table_h)
               for theta in range(len(table_h))]
    scale = Fraction(emb.subgroup.order, group.order)
    rows = []
    for rho in range(len(table_g)):
        lhs = multiplicity(induced, n, rho, table=table_g).m2
        rest = restriction_multiplicities(group, table_g, emb.elements, rho)
        rhs = scale * sum((Fraction(rest[theta]) * h_mults[theta].m2
                           for theta in range(len(table_h))), Fraction(0))
        rows.append((rho, lhs, rhs, lhs == rhs))
    return ReciprocityReport(rows=rows, all_equal=all(r[3] for r in rows))


def write_spectrum_csv(spectral, path_or_file):
    def emit(fh):
        w = csv.writer(fh)
        w.writerow(["eigenvalue", "mass_num", "mass_den"])
        for e, mass in spectral.pairs:
            w.writerow([repr(e), mass.numerator, mass.denominator])
    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            emit(fh)
