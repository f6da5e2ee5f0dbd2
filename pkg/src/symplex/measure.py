"""Empirical neighborhood measures and their diagnostics.

The empirical measure of a finite complex with symmetry assigns to every
vertex the canonical code of the radius-r ball around its orbit, weighted
uniformly.  Total-variation distances between such measures at a fixed
radius drive the convergence reports; the mass-transport check compares
doubly rooted classes in both root orders.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction

from .actions import orbits
from .canonical import (
    DoublyRootedGComplex,
    canonical_code,
    doubly_rooted_code,
    root_restrict,
)
from .complexes import distances_from
from .errors import RadiusMismatch, VertexOutOfRange


class EmpiricalMeasure:
    """A rational-weighted multiset of canonical ball codes."""

    __slots__ = ("radius", "atoms", "provenance", "group")

    def __init__(self, radius, atoms, provenance, group):
        self.radius = radius
        self.atoms = dict(atoms)
        self.provenance = provenance
        self.group = group
        total = sum(self.atoms.values(), Fraction(0))
        if total != 1 or any(w <= 0 for w in self.atoms.values()):
            raise VertexOutOfRange(
                f"atom weights must be positive and sum to 1, got {total}")

    def __len__(self):
        return len(self.atoms)

    def __repr__(self):
        return (f"EmpiricalMeasure(r={self.radius}, atoms={len(self.atoms)}, "
                f"{self.provenance})")


def empirical_measure(action, radius, provenance=None):
    """Uniform-root measure of radius-r ball classes.

    Every vertex contributes 1/#vertices to the code of the ball around its
    orbit in the component-restricted complex; vertices in one orbit share a
    single canonical computation.
    """
    nv = action.complex.vertex_count
    atoms = {}
    for orbit in orbits(action):
        rc = root_restrict(action, orbit[0])
        code = canonical_code(rc.ball(radius))
        w = Fraction(len(orbit), nv)
        atoms[code] = atoms.get(code, Fraction(0)) + w
    if provenance is None:
        provenance = f"empirical r={radius} on {nv} vertices"
    return EmpiricalMeasure(radius, atoms, provenance, action.group)


def tv_distance(m1, m2):
    """Total-variation distance between two measures of equal radius."""
    if m1.radius != m2.radius:
        raise RadiusMismatch(f"radii differ: {m1.radius} vs {m2.radius}")
    keys = set(m1.atoms) | set(m2.atoms)
    total = Fraction(0)
    for k in keys:
        total += abs(m1.atoms.get(k, Fraction(0)) - m2.atoms.get(k, Fraction(0)))
    return total / 2


class WeightedEnsemble:
    """A finite list of rooted complexes with positive weights summing to 1."""

    __slots__ = ("atoms",)

    def __init__(self, atoms):
        atoms = [(rc, Fraction(w)) for rc, w in atoms]
        total = sum((w for _rc, w in atoms), Fraction(0))
        if total != 1 or any(w <= 0 for _rc, w in atoms):
            raise VertexOutOfRange(
                f"ensemble weights must be positive and sum to 1, got {total}")
        self.atoms = atoms

    def __len__(self):
        return len(self.atoms)


def uniform_root_ensemble(action):
    """The uniform-root ensemble of a finite action, one atom per orbit."""
    nv = action.complex.vertex_count
    atoms = []
    for orbit in orbits(action):
        rc = root_restrict(action, orbit[0])
        atoms.append((rc, Fraction(len(orbit), nv)))
    return WeightedEnsemble(atoms)


@dataclass
class UnimodularityReport:
    passed: bool
    max_violation: Fraction
    depth: int
    violations: list = field(default_factory=list)  # (code, lhs, rhs)

    def __repr__(self):
        state = "pass" if self.passed else "fail"
        return (f"UnimodularityReport({state}, depth={self.depth}, "
                f"max_violation={self.max_violation})")


def check_unimodular(ensemble, depth):
    """Mass-transport symmetry at finite depth, verified exactly.

    For every doubly rooted class reachable within the depth the two root
    orders must carry identical weighted counts.  Codes are cached per
    unordered orbit pair, since both orders decode the same complex.
    """
    lhs = {}
    rhs = {}
    for rc, w in ensemble.atoms:
        action = rc.action
        root = rc.root
        dist = distances_from(action.complex, root, cutoff=depth)
        per_orbit = {}
        for v, d in dist.items():
            if d <= depth:
                orb = action.orbit(v)
                per_orbit[orb] = per_orbit.get(orb, 0) + 1
        cache = {}
        for orb, count in per_orbit.items():
            key = (root, orb)
            if key not in cache:
                cache[key] = (
                    doubly_rooted_code(DoublyRootedGComplex(action, root, orb)),
                    doubly_rooted_code(DoublyRootedGComplex(action, orb, root)),
                )
            code_oo, code_xo = cache[key]
            lhs[code_oo] = lhs.get(code_oo, Fraction(0)) + w * count
            rhs[code_xo] = rhs.get(code_xo, Fraction(0)) + w * count
    violations = []
    worst = Fraction(0)
    for code in set(lhs) | set(rhs):
        a = lhs.get(code, Fraction(0))
        b = rhs.get(code, Fraction(0))
        if a != b:
            violations.append((code, a, b))
            worst = max(worst, abs(a - b))
    violations.sort(key=lambda t: t[0].blob)
    return UnimodularityReport(passed=not violations, max_violation=worst,
                               depth=depth, violations=violations)


@dataclass
class ConvergenceReport:
    rows: list  # (index, radius, Fraction tv distance to the next member)

    def tv_column(self, radius):
        return [t for (_i, r, t) in self.rows if r == radius]


def convergence_report(family, radii, out_path=None, indices=None):
    """Consecutive TV distances per radius along a family of actions."""
    family = list(family)
    if indices is None:
        indices = list(range(len(family)))
    rows = []
    for r in radii:
        measures = [empirical_measure(a, r) for a in family]
        for pos in range(len(measures) - 1):
            rows.append((indices[pos], r,
                         tv_distance(measures[pos], measures[pos + 1])))
    rows.sort(key=lambda t: (t[1], t[0]))
    report = ConvergenceReport(rows=rows)
    if out_path is not None:
        write_convergence_csv(report, out_path)
    return report


def write_convergence_csv(report, path_or_file):
    def emit(fh):
        w = csv.writer(fh)
        w.writerow(["index", "r", "tv_to_next"])
        for idx, r, tv in report.rows:
            w.writerow([idx, r, f"{tv.numerator}/{tv.denominator}"])
    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            emit(fh)
