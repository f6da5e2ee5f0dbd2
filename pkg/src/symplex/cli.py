"""Command-line front end.

Subcommands: generate, multiplicity, spectrum, moments, converge, criterion,
reciprocity, unimodular-check, induce, distance.  All flags are long-form;
``--out -`` streams CSV to standard output.  Exit codes: 0 success, 1 a
computational cap was hit, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import __version__
from .actions import GroupAction
from .canonical import root_restrict, rooted_distance
from .errors import CapError, InputError, SymplexError
from .generators import (
    cycle_reflection,
    cycle_rotation,
    prism_rotation,
    random_gcomplex,
    sierpinski,
)
from .groups import (
    _isomorphism_to,
    all_subgroups,
    character_table,
    make_group,
    subgroup_group,
)
from .induction import SubgroupEmbedding, induce_complex, induced_criterion_report
from .io import load_action, save_action_bundle
from .measure import check_unimodular, convergence_report, uniform_root_ensemble
from .spectra import (
    POWER_CAP,
    SPECTRUM_SIZE_CAP,
    moment,
    multiplicity,
    reciprocity_check,
    spectral_measure,
    write_spectrum_csv,
)

_TOLERANCE_DEFAULT = Fraction(1, 20)


def parse_group_name(text):
    """Catalog names as used on the command line: C5, D4, S3, klein4, Q8."""
    t = text.strip()
    low = t.lower()
    if low == "trivial":
        return make_group("trivial")
    if low in ("klein4", "q8", "quaternion8"):
        return make_group("quaternion8" if low in ("q8", "quaternion8") else "klein4")
    if t[0] in "CcDdSs" and t[1:].isdigit():
        n = int(t[1:])
        kind = {"c": "cyclic", "d": "dihedral", "s": "symmetric"}[t[0].lower()]
        return make_group(kind, n)
    raise InputError(f"unknown group name '{text}'")


def _parse_range(text):
    if ".." in text:
        a, b = text.split("..", 1)
        lo, hi = int(a), int(b)
    else:
        lo = hi = int(text)
    if hi < lo:
        raise InputError(f"empty range '{text}'")
    return list(range(lo, hi + 1))


def _family_member(name, index, param):
    if name == "sierpinski":
        return sierpinski(index)
    if name == "cycle-rotation":
        k = param if param is not None else 3
        return cycle_rotation(k * 2 ** index, k)
    if name == "cycle-reflection":
        return cycle_reflection(2 ** index)
    if name == "prism-rotation":
        return prism_rotation(index)
    if name == "random":
        group = make_group("cyclic", param if param is not None else 2)
        return random_gcomplex(10, 6, group, seed=index)
    raise InputError(f"unknown family '{name}'")


def _resolve_subgroup(group, spec):
    """A subgroup of ``group`` named by 'trivial', 'full', a catalog name,
    or a comma-separated element list."""
    low = spec.strip().lower()
    if low == "trivial":
        return frozenset({group.identity})
    if low == "full":
        return frozenset(range(group.order))
    if "," in spec or spec.isdigit():
        return frozenset(int(x) for x in spec.split(","))
    target = parse_group_name(spec)
    for H in all_subgroups(group):
        if len(H) != target.order:
            continue
        sub, _to, _from = subgroup_group(group, H)
        if _isomorphism_to(sub, target) is not None:
            return H
    raise InputError(f"{group.name} has no subgroup isomorphic to '{spec}'")


def _transport_action(sub, catalog_action):
    """Re-express an action of a catalog group as an action of ``sub``."""
    iso = _isomorphism_to(sub, catalog_action.group)
    if iso is None:
        raise InputError(
            "action file group is not isomorphic to the requested subgroup")
    rows = [catalog_action.act[iso[h]] for h in range(sub.order)]
    return GroupAction(sub, catalog_action.complex, rows, validate=False)


class _Out:
    """CSV sink honoring '--out -'."""

    def __init__(self, path):
        self.path = path

    def __enter__(self):
        if self.path == "-":
            self.fh = sys.stdout
            self.close = False
        else:
            self.fh = open(self.path, "w", newline="")
            self.close = True
        return self.fh

    def __exit__(self, *exc):
        if self.close:
            self.fh.close()
        return False


def _write_meta(args, extra=None):
    if not getattr(args, "meta", False) or args.out == "-":
        return
    doc = {
        "tool": "symplex",
        "version": __version__,
        "caps": {"power": POWER_CAP, "spectrum_size": SPECTRUM_SIZE_CAP},
    }
    if extra:
        doc.update(extra)
    with open(args.out + ".meta.json", "w") as fh:
        json.dump(doc, fh, indent=1, sort_keys=True)
        fh.write("\n")


def _rho_list(table, text):
    if text == "all":
        return list(range(len(table)))
    idx = int(text)
    if not 0 <= idx < len(table):
        raise InputError(f"rho index {idx} outside 0..{len(table) - 1}")
    return [idx]


# ---------------------------------------------------------------------------
# subcommands

def cmd_generate(args):
    fam = args.family
    out = args.out_dir
    written = []
    if fam == "sierpinski":
        for n in _parse_range(args.args[0]):
            written.append(save_action_bundle(sierpinski(n), f"{out}/sierpinski_{n}"))
    elif fam == "cycle-rotation":
        m, k = int(args.args[0]), int(args.args[1])
        written.append(save_action_bundle(cycle_rotation(m, k),
                                          f"{out}/cycle_rotation_{m}_{k}"))
    elif fam == "cycle-reflection":
        m = int(args.args[0])
        written.append(save_action_bundle(cycle_reflection(m),
                                          f"{out}/cycle_reflection_{m}"))
    elif fam == "prism-rotation":
        m = int(args.args[0])
        written.append(save_action_bundle(prism_rotation(m),
                                          f"{out}/prism_rotation_{m}"))
    elif fam == "random":
        v, d, group_name, seed = args.args
        group = parse_group_name(group_name)
        written.append(save_action_bundle(
            random_gcomplex(int(v), int(d), group, int(seed)),
            f"{out}/random_{v}_{d}_{group_name}_{seed}"))
    else:
        raise InputError(f"unknown family '{fam}'")
    for path in written:
        print(path)


def cmd_multiplicity(args):
    action = load_action(args.action)
    table = character_table(action.group)
    rows = []
    for rho in _rho_list(table, args.rho):
        res = multiplicity(action, args.n, rho, table=table, method=args.method)
        rows.append([rho, table.degrees[rho], res.m,
                     res.m2.numerator, res.m2.denominator, res.kernel_dim])
    with _Out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["rho", "degree", "m", "m2_num", "m2_den", "kernel_dim"])
        w.writerows(rows)
    _write_meta(args)


def cmd_spectrum(args):
    action = load_action(args.action)
    table = character_table(action.group)
    [rho] = _rho_list(table, args.rho)
    sm = spectral_measure(action, args.n, rho, table=table)
    with _Out(args.out) as fh:
        write_spectrum_csv(sm, fh)
    _write_meta(args)


def cmd_moments(args):
    action = load_action(args.action)
    table = character_table(action.group)
    [rho] = _rho_list(table, args.rho)
    with _Out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["r", "value_num", "value_den"])
        for r in range(args.rmax + 1):
            val = moment(action, args.n, rho, r, table=table)
            w.writerow([r, val.numerator, val.denominator])
    _write_meta(args)


def cmd_converge(args):
    indices = _parse_range(args.range)
    family = [_family_member(args.family, i, args.param) for i in indices]
    report = convergence_report(family, [args.r], indices=indices)
    with _Out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["index", "r", "tv_to_next"])
        for idx, r, tv in report.rows:
            w.writerow([idx, r, f"{tv.numerator}/{tv.denominator}"])
    _write_meta(args)


def cmd_criterion(args):
    indices = _parse_range(args.range)
    family = [_family_member(args.family, i, args.param) for i in indices]
    subgroup = _resolve_subgroup(family[0].group, args.subgroup)
    tolerance = Fraction(args.tolerance).limit_denominator(10 ** 9) \
        if args.tolerance is not None else _TOLERANCE_DEFAULT
    report = induced_criterion_report(family, subgroup, args.cmax,
                                      tolerance=tolerance, indices=indices)
    with _Out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["n", "g", "C", "moved_fraction"])
        for idx, g, c, frac in report.rows:
            w.writerow([idx, g, c, f"{frac.numerator}/{frac.denominator}"])
    print(report.verdict_line())
    _write_meta(args)


def cmd_reciprocity(args):
    group = parse_group_name(args.big_group)
    subgroup_elems = _resolve_subgroup(group, args.subgroup)
    emb = SubgroupEmbedding(group, subgroup_elems)
    catalog_action = load_action(args.action)
    action_h = _transport_action(emb.subgroup, catalog_action)
    report = reciprocity_check(emb, action_h, args.n)
    with _Out(args.out) as fh:
        w = csv.writer(fh)
        w.writerow(["rho", "lhs_num", "lhs_den", "rhs_num", "rhs_den", "equal"])
        for rho, lhs, rhs, eq in report.rows:
            w.writerow([rho, lhs.numerator, lhs.denominator,
                        rhs.numerator, rhs.denominator, int(eq)])
    print(f"reciprocity: {'equal' if report.all_equal else 'mismatch'}")
    _write_meta(args)


def cmd_unimodular_check(args):
    action = load_action(args.action)
    ensemble = uniform_root_ensemble(action)
    report = check_unimodular(ensemble, args.depth)
    if args.out is not None:
        with _Out(args.out) as fh:
            w = csv.writer(fh)
            w.writerow(["code", "lhs", "rhs"])
            for code, a, b in report.violations:
                w.writerow([code.hex(), str(a), str(b)])
    state = "pass" if report.passed else "fail"
    print(f"unimodular: {state} max_violation="
          f"{report.max_violation.numerator}/{report.max_violation.denominator}")
    _write_meta(args)


def cmd_induce(args):
    group = parse_group_name(args.big_group)
    subgroup_elems = _resolve_subgroup(group, args.subgroup)
    emb = SubgroupEmbedding(group, subgroup_elems)
    catalog_action = load_action(args.action)
    action_h = _transport_action(emb.subgroup, catalog_action)
    induced = induce_complex(emb, action_h)
    path = save_action_bundle(induced, args.out_prefix)
    print(path)


def cmd_distance(args):
    a = load_action(args.action_a)
    b = load_action(args.action_b)
    ra = root_restrict(a, args.root_a)
    rb = root_restrict(b, args.root_b)
    d = rooted_distance(ra, rb, r_max=args.rmax)
    if d.status == "infinite":
        print("distance: status=infinite d=inf")
    else:
        print(f"distance: status={d.status} r={d.r} d={0.5 ** d.r!r}")


def build_parser():
    p = argparse.ArgumentParser(
        prog="symplex",
        description="Local statistics of symmetric simplicial complexes.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write complex/group/action files")
    g.add_argument("family")
    g.add_argument("args", nargs="*")
    g.add_argument("--out", dest="out_dir", default=".")
    g.set_defaults(func=cmd_generate)

    def common(sp, rho=True):
        sp.add_argument("--action", required=True)
        sp.add_argument("--n", type=int, required=True)
        if rho:
            sp.add_argument("--rho", default="all")
        sp.add_argument("--out", default="-")
        sp.add_argument("--meta", action="store_true")

    m = sub.add_parser("multiplicity", help="exact homology multiplicities")
    common(m)
    m.add_argument("--method", default="auto",
                   choices=["auto", "elimination", "lefschetz"])
    m.set_defaults(func=cmd_multiplicity)

    s = sub.add_parser("spectrum", help="spectral measure dump")
    common(s)
    s.set_defaults(func=cmd_spectrum, rho="0")

    mo = sub.add_parser("moments", help="exact trace moments")
    common(mo)
    mo.add_argument("--rmax", type=int, default=6)
    mo.set_defaults(func=cmd_moments, rho="0")

    c = sub.add_parser("converge", help="consecutive TV distances of a family")
    c.add_argument("--family", required=True)
    c.add_argument("--range", required=True)
    c.add_argument("--param", type=int)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--out", default="-")
    c.add_argument("--meta", action="store_true")
    c.set_defaults(func=cmd_converge)

    cr = sub.add_parser("criterion", help="moved-fraction trajectories")
    cr.add_argument("--family", required=True)
    cr.add_argument("--range", required=True)
    cr.add_argument("--param", type=int)
    cr.add_argument("--H", dest="subgroup", required=True)
    cr.add_argument("--Cmax", dest="cmax", type=int, required=True)
    cr.add_argument("--tolerance", type=str, default=None)
    cr.add_argument("--out", default="-")
    cr.add_argument("--meta", action="store_true")
    cr.set_defaults(func=cmd_criterion)

    r = sub.add_parser("reciprocity", help="induced-multiplicity identity check")
    r.add_argument("--G", dest="big_group", required=True)
    r.add_argument("--H", dest="subgroup", required=True)
    r.add_argument("--action", required=True)
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--out", default="-")
    r.add_argument("--meta", action="store_true")
    r.set_defaults(func=cmd_reciprocity)

    u = sub.add_parser("unimodular-check", help="mass-transport symmetry check")
    u.add_argument("--action", required=True)
    u.add_argument("--depth", type=int, required=True)
    u.add_argument("--out", default=None)
    u.add_argument("--meta", action="store_true")
    u.set_defaults(func=cmd_unimodular_check)

    i = sub.add_parser("induce", help="write the induced action bundle")
    i.add_argument("--G", dest="big_group", required=True)
    i.add_argument("--H", dest="subgroup", required=True)
    i.add_argument("--action", required=True)
    i.add_argument("--out", dest="out_prefix", required=True)
    i.set_defaults(func=cmd_induce)

    d = sub.add_parser("distance", help="rooted ball distance of two actions")
    d.add_argument("--action-a", dest="action_a", required=True)
    d.add_argument("--root-a", dest="root_a", type=int, required=True)
    d.add_argument("--action-b", dest="action_b", required=True)
    d.add_argument("--root-b", dest="root_b", type=int, required=True)
    d.add_argument("--rmax", type=int, default=8)
    d.set_defaults(func=cmd_distance)

    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except CapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InputError, SymplexError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
