"""Induction of complexes and ensembles from a subgroup to the full group.

Inducing an H-complex to G produces |G/H| labeled copies permuted through
coset representatives, which are always chosen as the minimal element index
of each left coset (so the representative of H itself is the identity).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction

from .actions import GroupAction
from .complexes import Complex, distances_from
from .errors import GroupMismatch, InvalidEmbedding, NotASubgroup
from .groups import subgroup_group


class SubgroupEmbedding:
    """A subgroup of G with its standalone group and coset bookkeeping."""

    __slots__ = ("ambient", "elements", "subgroup", "to_ambient", "from_ambient",
                 "coset_reps", "coset_of", "h_part")

    def __init__(self, ambient, elements):
        elements = frozenset(elements)
        subgroup, to_ambient, from_ambient = subgroup_group(ambient, elements)
        self.ambient = ambient
        self.elements = elements
        self.subgroup = subgroup
        self.to_ambient = to_ambient
        self.from_ambient = from_ambient
        cosets = {}
        for g in range(ambient.order):
            coset = frozenset(ambient.mul[g][h] for h in elements)
            cosets.setdefault(min(coset), coset)
        reps = sorted(cosets)
        if reps[0] != ambient.identity:
            raise NotASubgroup("identity is not the minimal coset representative")
        self.coset_reps = tuple(reps)
        coset_of = [None] * ambient.order
        for ci, r in enumerate(reps):
            for g in cosets[r]:
                coset_of[g] = ci
        self.coset_of = tuple(coset_of)
        # h_part[g]: local H-index of rep(g)^{-1} g
        h_part = []
        for g in range(ambient.order):
            rep = reps[coset_of[g]]
            h = ambient.mul[ambient.inv[rep]][g]
            h_part.append(from_ambient[h])
        self.h_part = tuple(h_part)

    @property
    def index(self):
        return len(self.coset_reps)

    def __repr__(self):
        return (f"SubgroupEmbedding(|H|={self.subgroup.order}, "
                f"index={self.index} in {self.ambient.name})")


def _require_matching_group(emb, action_h):
    if action_h.group.mul != emb.subgroup.mul:
        raise GroupMismatch(
            "the action's group table does not match the embedded subgroup")


def induce_complex(emb, action_h):
    """The induced action of G on |G/H| copies of the H-complex.

    Vertex (c, y) gets identifier c * |K^(0)| + y; simplices are the copy
    translates; g sends (c, y) to (c', h.y) where g rep_c = rep_{c'} h.
    """
    _require_matching_group(emb, action_h)
    base = action_h.complex
    nv = base.vertex_count
    copies = emb.index
    ambient = emb.ambient

    by_dim = {}
    for d, group_ in base.simplices.items():
        out = []
        for c in range(copies):
            off = c * nv
            for s in group_:
                out.append(tuple(v + off for v in s))
        by_dim[d] = tuple(sorted(out))
    complex_ = Complex(copies * nv, by_dim, base.degree_bound)

    act = []
    for g in range(ambient.order):
        row = [0] * (copies * nv)
        for c in range(copies):
            t = ambient.mul[g][emb.coset_reps[c]]
            c2 = emb.coset_of[t]
            h_local = emb.h_part[t]
            h_row = action_h.act[h_local]
            off, off2 = c * nv, c2 * nv
            for y in range(nv):
                row[off + y] = off2 + h_row[y]
        act.append(tuple(row))
    return GroupAction(ambient, complex_, act)


def induce_rooted(emb, rooted):
    """Induce a rooted H-complex; the new root is the G-orbit of (1, o)."""
    from .canonical import RootedGComplex

    action = induce_complex(emb, rooted.action)
    root_vertex = min(rooted.root)  # copy 0 carries the original labels
    return RootedGComplex(action, action.orbit(root_vertex))


def induce_ensemble(emb, ensemble):
    """Push an ensemble of rooted H-complexes forward to G, keeping weights."""
    from .measure import WeightedEnsemble

    atoms = [(induce_rooted(emb, rc), w) for rc, w in ensemble.atoms]
    return WeightedEnsemble(atoms)


def moved_set(action, g, bound):
    """Vertices moved by g a path distance of at most ``bound``."""
    complex_ = action.complex
    out = []
    row = action.act[g]
    for x in range(complex_.vertex_count):
        gx = row[x]
        if gx == x:
            out.append(x)
            continue
        dist = distances_from(complex_, [x], cutoff=bound)
        if gx in dist:
            out.append(x)
    return out


@dataclass
class CriterionReport:
    rows: list          # (family index, g, C, Fraction moved fraction)
    tolerance: Fraction
    consistent: bool

    def verdict_line(self):
        return f"criterion: {'consistent' if self.consistent else 'inconsistent'}"


def induced_criterion_report(family, subgroup_elements, c_max,
                             tolerance=Fraction(1, 20), out_path=None,
                             indices=None):
    """Moved-vertex fractions for every g outside H and every C <= c_max.

    The verdict is "consistent with an induced limit from H" exactly when
    every trajectory ends below the tolerance at the last family member.
    The report never claims the limit exists.
    """
    family = list(family)
    if not family:
        raise InvalidEmbedding("empty family")
    subgroup_elements = frozenset(subgroup_elements)
    if indices is None:
        indices = list(range(len(family)))
    rows = []
    final_fractions = {}
    for idx, action in zip(indices, family):
        nv = action.complex.vertex_count
        for g in range(action.group.order):
            if g in subgroup_elements:
                continue
            # distances once per vertex, shared across C
            row = action.act[g]
            displacement = []
            for x in range(nv):
                dist = distances_from(action.complex, [x], cutoff=c_max)
                displacement.append(dist.get(row[x]))
            for c in range(1, c_max + 1):
                count = sum(1 for d in displacement if d is not None and d <= c)
                frac = Fraction(count, nv)
                rows.append((idx, g, c, frac))
                final_fractions[(g, c)] = frac
    consistent = all(f <= tolerance for f in final_fractions.values())
    report = CriterionReport(rows=rows, tolerance=tolerance, consistent=consistent)
    if out_path is not None:
        write_criterion_csv(report, out_path)
    return report


def write_criterion_csv(report, path_or_file):
    def emit(fh):
        w = csv.writer(fh)
        w.writerow(["n", "g", "C", "moved_fraction"])
        for idx, g, c, frac in report.rows:
            w.writerow([idx, g, c, f"{frac.numerator}/{frac.denominator}"])
    if hasattr(path_or_file, "write"):
        emit(path_or_file)
    else:
        with open(path_or_file, "w", newline="") as fh:
            emit(fh)
