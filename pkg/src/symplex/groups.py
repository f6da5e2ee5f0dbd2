"""Finite groups, subgroup enumeration, and exact character tables.

Groups are multiplication tables over element indices 0..order-1 with the
identity at index 0 for all catalog constructions.  Character tables live
in the cyclotomic field Q(zeta_e) for e the group exponent and are checked
against the orthogonality relations before they are handed out.

There is no general character-table algorithm here: tables come from the
built-in catalog, from the closed abelian construction, from transporting
a catalog table through an explicit isomorphism, or from a file.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import gcd

from .cyclotomic import CyclotomicField
from .errors import (
    GroupTooLarge,
    NotAGroup,
    NotASubgroup,
    OrthogonalityFailure,
    TableUnavailable,
)

SUBGROUP_SEARCH_LIMIT = 48


def _lcm(a, b):
    return a * b // gcd(a, b)


class Group:
    """A finite group given by its multiplication table."""

    __slots__ = ("order", "mul", "identity", "inv", "exponent", "name",
                 "_element_orders", "_cache")

    def __init__(self, mul, name="group", validate=True):
        mul = tuple(tuple(row) for row in mul)
        order = len(mul)
        if validate:
            _validate_table(mul, order)
        self.order = order
        self.mul = mul
        self.identity = _find_identity(mul, order)
        inv = [None] * order
        for g in range(order):
            for h in range(order):
                if mul[g][h] == self.identity:
                    inv[g] = h
                    break
        if any(i is None for i in inv):
            raise NotAGroup("an element has no inverse")
        self.inv = tuple(inv)
        orders = []
        for g in range(order):
            k, x = 1, g
            while x != self.identity:
                x = mul[x][g]
                k += 1
            orders.append(k)
        self._element_orders = tuple(orders)
        e = 1
        for k in orders:
            e = _lcm(e, k)
        self.exponent = e
        self.name = name
        self._cache = {}

    def element_order(self, g):
        return self._element_orders[g]

    def conjugate(self, g, h):
        """h g h^{-1}."""
        return self.mul[self.mul[h][g]][self.inv[h]]

    def conjugacy_classes(self):
        """Element conjugacy classes, each sorted, ordered by min element."""
        if "classes" not in self._cache:
            seen = set()
            classes = []
            for g in range(self.order):
                if g in seen:
                    continue
                cls = sorted({self.conjugate(g, h) for h in range(self.order)})
                seen.update(cls)
                classes.append(tuple(cls))
            classes.sort(key=lambda c: c[0])
            self._cache["classes"] = tuple(classes)
        return self._cache["classes"]

    def __eq__(self, other):
        if not isinstance(other, Group):
            return NotImplemented
        return self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    def __repr__(self):
        return f"Group({self.name}, order={self.order})"


def _find_identity(mul, order):
    for e in range(order):
        if all(mul[e][g] == g and mul[g][e] == g for g in range(order)):
            return e
    raise NotAGroup("no identity element")


def _validate_table(mul, order):
    if any(len(row) != order for row in mul):
        raise NotAGroup("multiplication table is not square")
    rng = range(order)
    for row in mul:
        for v in row:
            if not (isinstance(v, int) and 0 <= v < order):
                raise NotAGroup("table entry out of range")
    for g in rng:
        if sorted(mul[g]) != list(rng) or sorted(mul[h][g] for h in rng) != list(rng):
            raise NotAGroup("table rows/columns are not permutations")
    for a in rng:
        for b in rng:
            ab = mul[a][b]
            for c in rng:
                if mul[ab][c] != mul[a][mul[b][c]]:
                    raise NotAGroup(
                        f"associativity fails at ({a},{b},{c})")


# ---------------------------------------------------------------------------
# catalog constructions (identity always at index 0)

def _perm_group(perms, name):
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(p[q[i]] for i in range(len(q)))] for q in perms]
           for p in perms]
    return Group(mul, name=name)


def _cyclic(n):
    mul = [[(i + j) % n for j in range(n)] for i in range(n)]
    return Group(mul, name=f"C{n}")


def _klein4():
    mul = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    return Group(mul, name="klein4")


def _dihedral(n):
    # elements: rotations r^i (index i), reflections s r^i (index n+i)
    def mul_el(a, b):
        ra, sa = a % n, a // n
        rb, sb = b % n, b // n
        if sa == 0 and sb == 0:
            return (ra + rb) % n
        if sa == 0 and sb == 1:
            return n + (rb - ra) % n
        if sa == 1 and sb == 0:
            return n + (ra + rb) % n
        return (rb - ra) % n
    mul = [[mul_el(a, b) for b in range(2 * n)] for a in range(2 * n)]
    return Group(mul, name=f"D{n}")


def _symmetric(n):
    perms = sorted(permutations(range(n)))
    return _perm_group(perms, name=f"S{n}")


def _quaternion8():
    # indices: 1, -1, i, -i, j, -j, k, -k
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    def q_mul(a, b):
        sa, xa = (1 if not a.startswith("-") else -1), a.lstrip("-")
        sb, xb = (1 if not b.startswith("-") else -1), b.lstrip("-")
        table = {
            ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
            ("i", "1"): (1, "i"), ("j", "1"): (1, "j"), ("k", "1"): (1, "k"),
            ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
            ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
            ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
            ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
        }
        s, x = table[(xa, xb)]
        s *= sa * sb
        return ("" if s == 1 else "-") + x
    index = {nm: i for i, nm in enumerate(names)}
    mul = [[index[q_mul(a, b)] for b in names] for a in names]
    return Group(mul, name="Q8")


_CATALOG_FIXED = {
    "klein4": _klein4,
    "quaternion8": _quaternion8,
}

_CATALOG_PARAM = {
    "cyclic": _cyclic,
    "dihedral": _dihedral,
    "symmetric": _symmetric,
}


def make_group(name=None, n=None, *, table=None):
    """Build a group from the catalog or from an explicit table.

    Catalog names: ``cyclic n``, ``dihedral n`` (n >= 3), ``symmetric n``
    (n <= 4), ``klein4``, ``quaternion8``.  ``trivial`` is accepted as an
    alias for ``cyclic 1``.
    """
    if table is not None:
        return Group(table, name=name or "custom")
    if name is None:
        raise NotAGroup("make_group needs a catalog name or a table")
    key = name.lower()
    if key == "trivial":
        return _cyclic(1)
    if key in _CATALOG_FIXED:
        return _CATALOG_FIXED[key]()
    if key in _CATALOG_PARAM:
        if n is None or n < 1:
            raise NotAGroup(f"catalog group '{name}' needs a positive parameter")
        if key == "symmetric" and n > 4:
            raise NotAGroup("symmetric groups are cataloged only up to n=4")
        if key == "dihedral" and n < 3:
            raise NotAGroup("dihedral groups are cataloged for n >= 3")
        return _CATALOG_PARAM[key](n)
    raise NotAGroup(f"unknown catalog group '{name}'")


# ---------------------------------------------------------------------------
# subgroups and transitive G-sets

def generated_subgroup(group, generators):
    """Closure of a set of elements under multiplication."""
    elems = {group.identity}
    frontier = [group.identity]
    gens = list(generators)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = group.mul[x][g]
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return frozenset(elems)


def all_subgroups(group):
    """Every subgroup, found by closing generator sets incrementally."""
    if group.order > SUBGROUP_SEARCH_LIMIT:
        raise GroupTooLarge(
            f"subgroup enumeration capped at order {SUBGROUP_SEARCH_LIMIT}")
    if "subgroups" in group._cache:
        return group._cache["subgroups"]
    trivial = frozenset({group.identity})
    found = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            for g in range(group.order):
                if g in H:
                    continue
                K = generated_subgroup(group, set(H) | {g})
                if K not in found:
                    found.add(K)
                    nxt.append(K)
        frontier = nxt
    result = sorted(found, key=lambda H: (len(H), sorted(H)))
    group._cache["subgroups"] = result
    return result


def _conjugate_subgroup(group, H, g):
    return frozenset(group.conjugate(h, g) for h in H)


def subgroup_conjugacy_classes(group):
    """Conjugacy classes of subgroups; each class sorted, minimal rep first."""
    subs = all_subgroups(group)
    seen = set()
    classes = []
    for H in subs:
        if H in seen:
            continue
        cls = {_conjugate_subgroup(group, H, g) for g in range(group.order)}
        seen.update(cls)
        classes.append(sorted(cls, key=lambda K: sorted(K)))
    return classes


class OrbitType:
    """An isomorphism class of transitive G-sets (a subgroup up to conjugacy)."""

    __slots__ = ("stabilizer", "index", "rank")

    def __init__(self, stabilizer, index, rank):
        self.stabilizer = stabilizer  # frozenset of element indices (class rep)
        self.index = index            # |G| / |stabilizer| = size of the G-set
        self.rank = rank              # position in the deterministic ordering

    @property
    def size(self):
        return self.index

    def __eq__(self, other):
        if not isinstance(other, OrbitType):
            return NotImplemented
        return self.rank == other.rank and self.stabilizer == other.stabilizer

    def __hash__(self):
        return hash((self.rank, self.stabilizer))

    def __repr__(self):
        return f"OrbitType(rank={self.rank}, index={self.index})"


def transitive_gsets(group):
    """All transitive G-sets up to isomorphism, deterministically ordered.

    Order: index ascending (so the one-point G-set comes first), then the
    lexicographically minimal element set of a class representative.
    """
    if "gsets" in group._cache:
        return group._cache["gsets"]
    classes = subgroup_conjugacy_classes(group)
    reps = [cls[0] for cls in classes]
    reps.sort(key=lambda H: (group.order // len(H), sorted(H)))
    types = [OrbitType(H, group.order // len(H), rank)
             for rank, H in enumerate(reps)]
    group._cache["gsets"] = types
    return types


def stabilizer_type(group, stab):
    """The OrbitType whose stabilizer class contains the given subgroup."""
    stab = frozenset(stab)
    for t in transitive_gsets(group):
        if len(t.stabilizer) != len(stab):
            continue
        for g in range(group.order):
            if _conjugate_subgroup(group, stab, g) == t.stabilizer:
                return t
    raise NotASubgroup("stabilizer does not match any subgroup class")


def subgroup_group(group, elements):
    """A subgroup as a standalone Group.

    Returns (H, to_ambient, from_ambient): ``to_ambient[i]`` is the ambient
    index of H's element i; elements are sorted so H's identity is index 0.
    """
    elems = sorted(set(elements))
    if group.identity not in elems:
        raise NotASubgroup("subgroup must contain the identity")
    pos = {g: i for i, g in enumerate(elems)}
    for a in elems:
        if group.inv[a] not in pos:
            raise NotASubgroup("subset not closed under inverse")
        for b in elems:
            if group.mul[a][b] not in pos:
                raise NotASubgroup("subset not closed under multiplication")
    mul = [[pos[group.mul[a][b]] for b in elems] for a in elems]
    h = Group(mul, name=f"{group.name}-sub{len(elems)}", validate=False)
    return h, tuple(elems), pos


# ---------------------------------------------------------------------------
# character tables

class CharacterTable:
    """Exact irreducible characters over Q(zeta_e)."""

    __slots__ = ("group", "field", "classes", "class_of", "chars", "degrees")

    def __init__(self, group, field, classes, chars):
        self.group = group
        self.field = field
        self.classes = classes
        class_of = [None] * group.order
        for ci, cls in enumerate(classes):
            for g in cls:
                class_of[g] = ci
        self.class_of = tuple(class_of)
        self.chars = chars  # list of tuples of Cyclotomic, one per class
        self.degrees = tuple(int(ch[class_of[group.identity]].rational_part())
                             for ch in chars)

    def __len__(self):
        return len(self.chars)

    def value(self, rho, g):
        """Character value of irreducible ``rho`` at group element ``g``."""
        return self.chars[rho][self.class_of[g]]

    def verify_orthogonality(self):
        g = self.group
        n = g.order
        field = self.field
        sizes = [len(c) for c in self.classes]
        for i, chi in enumerate(self.chars):
            for j, psi in enumerate(self.chars):
                total = field.zero
                for ci, size in enumerate(sizes):
                    total = total + chi[ci] * psi[ci].conjugate() * size
                expected = n if i == j else 0
                if total != expected:
                    raise OrthogonalityFailure(
                        f"row orthogonality fails for characters {i},{j}")
        if sum(d * d for d in self.degrees) != n:
            raise OrthogonalityFailure("degrees do not sum-of-squares to |G|")


def _chars_from_element_values(group, values):
    """Package per-element character values into per-class tuples."""
    classes = group.conjugacy_classes()
    e = group.exponent
    field = CyclotomicField(e)
    chars = []
    for val in values:
        chars.append(tuple(val[cls[0]] for cls in classes))
    return CharacterTable(group, field, classes, chars)


def _cyclic_table(group, generator):
    n = group.order
    field = CyclotomicField(group.exponent)
    # discrete log base the generator
    log = {group.identity: 0}
    x = generator
    k = 1
    while x != group.identity:
        log[x] = k
        x = group.mul[x][generator]
        k += 1
    values = []
    for j in range(n):
        values.append([field.zeta_power((j * log[g] * (group.exponent // n)) % group.exponent)
                       for g in range(n)])
    return _chars_from_element_values(group, values)


def _find_generator(group):
    for g in range(group.order):
        if group.element_order(g) == group.order:
            return g
    return None


def _is_abelian(group):
    m = group.mul
    return all(m[a][b] == m[b][a] for a in range(group.order)
               for b in range(a + 1, group.order))


def _abelian_table(group):
    """Characters of an abelian group via a generating set and its relations."""
    n = group.order
    e = group.exponent
    field = CyclotomicField(e)
    # Greedy generating set.
    gens = []
    span = generated_subgroup(group, [])
    for g in sorted(range(n), key=lambda x: -group.element_order(x)):
        if g not in span:
            gens.append(g)
            span = generated_subgroup(group, gens)
        if len(span) == n:
            break
    k = len(gens)
    dims = [group.element_order(g) for g in gens]
    # Exponent vector for every element (BFS over the generator Cayley graph).
    expvec = {group.identity: (0,) * k}
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for i, g in enumerate(gens):
                y = group.mul[x][g]
                if y not in expvec:
                    v = list(expvec[x])
                    v[i] += 1
                    expvec[y] = tuple(v)
                    nxt.append(y)
        frontier = nxt
    # Relation vectors: all exponent tuples representing the identity.
    relations = []
    for tup in product(*[range(d) for d in dims]):
        x = group.identity
        for i, a in enumerate(tup):
            for _ in range(a):
                x = group.mul[x][gens[i]]
        if x == group.identity:
            relations.append(tup)
    # Dual vectors v with sum a_i v_i = 0 mod e for every relation.
    duals = []
    for v in product(*[range(0, e, e // d) for d in dims]):
        if all(sum(a * w for a, w in zip(rel, v)) % e == 0 for rel in relations):
            duals.append(v)
    if len(duals) != n:
        raise TableUnavailable("abelian character construction failed")
    duals.sort()
    values = []
    for v in duals:
        values.append([field.zeta_power(sum(a * w for a, w in zip(expvec[g], v)) % e)
                       for g in range(n)])
    return _chars_from_element_values(group, values)


def _dihedral_table(group, n):
    e = group.exponent
    field = CyclotomicField(e)
    def rot(i):
        return i  # rotation r^i has index i by construction
    values = []
    one = field.one
    # linear characters
    triv = [one] * group.order
    det = [one] * n + [-one] * n
    values.append(triv)
    values.append(det)
    if n % 2 == 0:
        lam = [(one if i % 2 == 0 else -one) for i in range(n)]
        values.append(lam + lam)
        values.append(lam + [-x for x in lam])
    top = (n - 1) // 2 if n % 2 == 1 else n // 2 - 1
    for kk in range(1, top + 1):
        step = e // n
        row = [field.zeta_power(kk * i * step) + field.zeta_power(-kk * i * step)
               for i in range(n)]
        values.append(row + [field.zero] * n)
    return _chars_from_element_values(group, values)


def _cycle_type(perm):
    n = len(perm)
    seen = [False] * n
    lens = []
    for i in range(n):
        if seen[i]:
            continue
        l, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            l += 1
        lens.append(l)
    return tuple(sorted(lens, reverse=True))


_S3_CHARS = {  # cycle type -> (trivial, sign, standard)
    (1, 1, 1): (1, 1, 2),
    (2, 1): (1, -1, 0),
    (3,): (1, 1, -1),
}

_S4_CHARS = {  # cycle type -> (triv, sign, 2-dim, standard, standard*sign)
    (1, 1, 1, 1): (1, 1, 2, 3, 3),
    (2, 1, 1): (1, -1, 0, 1, -1),
    (2, 2): (1, 1, 2, -1, -1),
    (3, 1): (1, 1, -1, 0, 0),
    (4,): (1, -1, 0, -1, 1),
}


def _symmetric_table(group, n):
    field = CyclotomicField(group.exponent)
    perms = sorted(permutations(range(n)))
    data = {1: {(1,) * 1: (1,)}, 2: {(1, 1): (1, 1), (2,): (1, -1)},
            3: _S3_CHARS, 4: _S4_CHARS}[n]
    count = len(next(iter(data.values())))
    values = [[None] * group.order for _ in range(count)]
    for gi, p in enumerate(perms):
        row = data[_cycle_type(p)]
        for r in range(count):
            values[r][gi] = field.from_rational(row[r])
    return _chars_from_element_values(group, values)


def _quaternion_table(group):
    field = CyclotomicField(group.exponent)
    one = field.one
    # element order: 1, -1, i, -i, j, -j, k, -k
    sign_i = [1, 1, 1, 1, -1, -1, -1, -1]
    sign_j = [1, 1, -1, -1, 1, 1, -1, -1]
    values = [
        [one] * 8,
        [one * s for s in sign_i],
        [one * s for s in sign_j],
        [one * (si * sj) for si, sj in zip(sign_i, sign_j)],
        [one * v for v in (2, -2, 0, 0, 0, 0, 0, 0)],
    ]
    return _chars_from_element_values(group, values)


def _klein_table(group):
    field = CyclotomicField(group.exponent)
    one = field.one
    values = [
        [one, one, one, one],
        [one, one, -one, -one],
        [one, -one, one, -one],
        [one, -one, -one, one],
    ]
    return _chars_from_element_values(group, values)


def _isomorphism_to(group, target):
    """An isomorphism group -> target as an index map, or None."""
    if group.order != target.order:
        return None
    if sorted(group._element_orders) != sorted(target._element_orders):
        return None
    # minimal generating sequence of `group`
    gens = []
    span = generated_subgroup(group, [])
    for g in sorted(range(group.order),
                    key=lambda x: (-group.element_order(x), x)):
        if g not in span:
            gens.append(g)
            span = generated_subgroup(group, gens)
        if len(span) == group.order:
            break

    def words(gens_imgs):
        """Map every element of `group` to its image, or None on conflict."""
        img = {group.identity: target.identity}
        frontier = [group.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g, t in zip(gens, gens_imgs):
                    y = group.mul[x][g]
                    w = target.mul[img[x]][t]
                    if y in img:
                        if img[y] != w:
                            return None
                    else:
                        img[y] = w
                        nxt.append(y)
            frontier = nxt
        if len(set(img.values())) != group.order:
            return None
        return img

    candidates = [
        [t for t in range(target.order)
         if target.element_order(t) == group.element_order(g)]
        for g in gens
    ]
    for imgs in product(*candidates):
        img = words(imgs)
        if img is not None:
            # verify it is a homomorphism everywhere
            ok = all(img[group.mul[a][b]] == target.mul[img[a]][img[b]]
                     for a in range(group.order) for b in range(group.order))
            if ok:
                return img
    return None


_CATALOG_TARGETS = None


def _catalog_targets(order):
    """Catalog groups of a given order, largest structure first."""
    global _CATALOG_TARGETS
    if _CATALOG_TARGETS is None:
        groups = [_klein4(), _quaternion8(), _symmetric(3), _symmetric(4)]
        for n in range(3, SUBGROUP_SEARCH_LIMIT // 2 + 1):
            groups.append(_dihedral(n))
        _CATALOG_TARGETS = groups
    return [g for g in _CATALOG_TARGETS if g.order == order]


def character_table(group, file_table=None):
    """Exact character table; orthogonality is verified before returning.

    ``file_table`` is pre-parsed data from a group file (see symplex.io);
    when given it takes precedence over the catalog.
    """
    if "character_table" in group._cache and file_table is None:
        return group._cache["character_table"]
    if file_table is not None:
        table = file_table
    else:
        table = _builtin_table(group)
    table.verify_orthogonality()
    if file_table is None:
        group._cache["character_table"] = table
    return table


def _builtin_table(group):
    name = group.name
    if name.startswith("S") and name[1:].isdigit():
        return _symmetric_table(group, int(name[1:]))
    if name == "Q8":
        return _quaternion_table(group)
    if name == "klein4":
        return _klein_table(group)
    if name.startswith("D") and name[1:].isdigit():
        return _dihedral_table(group, int(name[1:]))
    gen = _find_generator(group)
    if gen is not None:
        return _cyclic_table(group, gen)
    if _is_abelian(group):
        return _abelian_table(group)
    # last resort: recognize the group as a catalog group
    for target in _catalog_targets(group.order):
        iso = _isomorphism_to(group, target)
        if iso is not None:
            ttab = character_table(target)
            values = []
            for r in range(len(ttab)):
                values.append([ttab.value(r, iso[g]) for g in range(group.order)])
            return _chars_from_element_values(group, values)
    raise TableUnavailable(
        f"no character table available for group '{group.name}' "
        f"(order {group.order}); supply one via a group file")


class RealizedGset:
    """A concrete transitive G-set: cosets of the type's stabilizer.

    Elements are ordered by their minimal coset member, so element 0 is the
    stabilizer itself and the base point of the realization.
    """

    __slots__ = ("otype", "size", "act", "stabs", "transporter")

    def __init__(self, group, otype):
        H = otype.stabilizer
        cosets = {}
        for g in range(group.order):
            coset = frozenset(group.mul[g][h] for h in H)
            key = min(coset)
            cosets[key] = coset
        order = sorted(cosets)
        elems = [cosets[k] for k in order]
        pos = {min(c): i for i, c in enumerate(elems)}
        self.otype = otype
        self.size = len(elems)
        act = []
        for g in range(group.order):
            row = []
            for c in elems:
                moved = frozenset(group.mul[g][x] for x in c)
                row.append(pos[min(moved)])
            act.append(tuple(row))
        self.act = tuple(act)
        stabs = []
        for j in range(self.size):
            stabs.append(frozenset(g for g in range(group.order)
                                   if self.act[g][j] == j))
        self.stabs = tuple(stabs)
        base = next(i for i, c in enumerate(elems) if group.identity in c)
        # transporter[j] = least g with g . base = j
        transporter = [None] * self.size
        for g in range(group.order):
            j = self.act[g][base]
            if transporter[j] is None:
                transporter[j] = g
        self.transporter = tuple(transporter)


def realize_gsets(group):
    """Realizations of all transitive G-sets, indexed by OrbitType rank."""
    if "realized" not in group._cache:
        group._cache["realized"] = tuple(RealizedGset(group, t)
                                         for t in transitive_gsets(group))
    return group._cache["realized"]


def restriction_multiplicities(group, table, subgroup_elements, rho):
    """Multiplicity of each irreducible of H in the restriction of rho.

    Returns a list indexed like ``character_table(H)`` for the standalone
    subgroup H; entries are exact nonnegative integers.
    """
    h_group, to_ambient, _from_ambient = subgroup_group(group, subgroup_elements)
    h_table = character_table(h_group)
    field_g = table.field
    out = []
    for theta in range(len(h_table)):
        total = field_g.zero
        for hi in range(h_group.order):
            ambient = to_ambient[hi]
            total = total + table.value(rho, ambient) * \
                h_table.value(theta, hi).embed(field_g).conjugate()
        q = total.rational_part()
        if q is None:
            raise OrthogonalityFailure("restriction inner product is irrational")
        q = q / h_group.order
        if q.denominator != 1 or q < 0:
            raise OrthogonalityFailure(
                f"restriction multiplicity {q} is not a nonnegative integer")
        out.append(int(q))
    return out
