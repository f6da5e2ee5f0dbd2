"""Canonical forms of rooted complexes with group symmetry.

A rooted complex is embedded into the model complex whose vertices are
(level, transitive-G-set element) pairs: the root orbit occupies level 0 of
its orbit-type block and every other orbit fills the next free level of its
own type.  Among all admissible equivariant embeddings we keep the one whose
simplex set is lexicographically earliest in the diagonal enumeration (each
simplex is keyed by the sum of 2^rank over its slots, and an earlier first
difference wins).  Equal codes are therefore exactly the equivariantly
isomorphic rooted complexes, independent of input labeling and of the root
representative.

The search runs as an exact beam: states that realize the same minimal
partial sequence are all kept, so ties caused by automorphisms never cut
off a minimal completion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .actions import GroupAction, orbits
from .complexes import ball, distances_from, full_subcomplex
from .errors import (
    DegreeBoundExceeded,
    GroupMismatch,
    InternalInconsistency,
    VertexOutOfRange,
)
from .groups import realize_gsets, stabilizer_type

CODE_VERSION_ROOTED = 1
CODE_VERSION_DOUBLY = 2


class RootedGComplex:
    """An action with a distinguished vertex orbit meeting every component."""

    __slots__ = ("action", "root")

    def __init__(self, action, root, validate=True):
        root = tuple(sorted(root))
        if validate:
            if not root:
                raise VertexOutOfRange("empty root")
            if root != action.orbit(root[0]):
                raise VertexOutOfRange("root is not a single vertex orbit")
            reach = distances_from(action.complex, root)
            if len(reach) != action.complex.vertex_count:
                raise VertexOutOfRange(
                    "a connected component misses the root orbit; "
                    "use root_restrict first")
        self.action = action
        self.root = root

    def ball(self, radius):
        """The rooted complex on the radius-r neighborhood of the root."""
        sub, relabel = ball(self.action.complex, self.root, radius)
        sub_action = _restrict_action(self.action, sub, relabel)
        new_root = tuple(sorted(relabel[v] for v in self.root))
        return RootedGComplex(sub_action, new_root, validate=False)

    def __repr__(self):
        return f"RootedGComplex(root={self.root}, {self.action!r})"


@dataclass(frozen=True)
class DoublyRootedGComplex:
    """An action with two distinguished orbits whose union meets every
    component (the union reading of the touching condition)."""
    action: GroupAction
    root1: tuple
    root2: tuple

    def __post_init__(self):
        reach = distances_from(self.action.complex,
                               set(self.root1) | set(self.root2))
        if len(reach) != self.action.complex.vertex_count:
            raise VertexOutOfRange(
                "a component misses both roots of a doubly rooted complex")


class CanonicalCode:
    """Canonical byte encoding of a rooted (or doubly rooted) complex."""

    __slots__ = ("group", "blob")

    def __init__(self, group, blob):
        self.group = group
        self.blob = blob

    def hex(self):
        return self.blob.hex()

    @classmethod
    def from_hex(cls, group, text):
        return cls(group, bytes.fromhex(text))

    def __eq__(self, other):
        if not isinstance(other, CanonicalCode):
            return NotImplemented
        return self.blob == other.blob and self.group.mul == other.group.mul

    def __hash__(self):
        return hash(self.blob)

    def __repr__(self):
        return f"CanonicalCode({self.blob.hex()})"


def _restrict_action(action, sub, relabel):
    inverse = {new: old for old, new in relabel.items()}
    rows = []
    for g in range(action.group.order):
        old_row = action.act[g]
        rows.append(tuple(relabel[old_row[inverse[v]]]
                          for v in range(sub.vertex_count)))
    return GroupAction(action.group, sub, rows, validate=False)


def root_restrict(action, root_vertex):
    """Restrict to the components meeting the orbit of ``root_vertex``.

    The result is relabeled order-preservingly and rooted at that orbit.
    """
    if not 0 <= root_vertex < action.complex.vertex_count:
        raise VertexOutOfRange(f"vertex {root_vertex} out of range")
    orbit = action.orbit(root_vertex)
    reach = distances_from(action.complex, orbit)
    if len(reach) == action.complex.vertex_count:
        return RootedGComplex(action, orbit, validate=False)
    sub, relabel = full_subcomplex(action.complex, reach.keys())
    sub_action = _restrict_action(action, sub, relabel)
    new_root = tuple(sorted(relabel[v] for v in orbit))
    return RootedGComplex(sub_action, new_root, validate=False)


# ---------------------------------------------------------------------------
# minimal embedding search

def _varint(value):
    out = bytearray()
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def _read_varint(blob, pos):
    shift = 0
    value = 0
    while True:
        byte = blob[pos]
        pos += 1
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return value, pos
        shift += 7


class _EmbeddingProblem:
    """Shared data for the minimal-embedding search over one rooted complex."""

    def __init__(self, rooted):
        action = rooted.action
        group = action.group
        self.action = action
        self.group = group
        self.realized = realize_gsets(group)
        self.block_width = sum(r.size for r in self.realized)
        self.bases = []
        off = 0
        for r in self.realized:
            self.bases.append(off)
            off += r.size
        self.orbits = orbits(action)
        self.orbit_index = {}
        for oi, orb in enumerate(self.orbits):
            for v in orb:
                self.orbit_index[v] = oi
        self.types = []
        self.bijections = []
        for orb in self.orbits:
            t, bijs = self._orbit_embeddings(orb)
            self.types.append(t)
            self.bijections.append(bijs)
        self.root_oi = self.orbit_index[rooted.root[0]]
        if self.orbits[self.root_oi] != rooted.root:
            raise InternalInconsistency("root is not an orbit")
        if action.complex.dim > action.complex.degree_bound:
            raise DegreeBoundExceeded(
                "complex dimension exceeds the model complex bound")
        # flat simplex table (all dimensions, vertices included) with the
        # orbits touching each simplex and, per (orbit, bijection), the
        # within-block offset mask of the orbit's vertices in the simplex
        all_simplices = []
        for _d, group_ in sorted(action.complex.simplices.items()):
            all_simplices.extend(group_)
        self.all_simplices = all_simplices
        self.touch_orbits = []
        for s in all_simplices:
            self.touch_orbits.append(tuple(sorted({self.orbit_index[v] for v in s})))
        cross = [[] for _ in self.orbits]
        for si, touching in enumerate(self.touch_orbits):
            for oi in touching:
                cross[oi].append(si)
        self.cross = [tuple(x) for x in cross]
        self.orbpart = []
        for oi, orb in enumerate(self.orbits):
            per_bij = []
            for bij in self.bijections[oi]:
                masks = {}
                for si in self.cross[oi]:
                    masks[si] = sum(1 << bij[v] for v in all_simplices[si]
                                    if v in bij)
                per_bij.append(masks)
            self.orbpart.append(per_bij)

    def _orbit_embeddings(self, orb):
        """Type rank plus every equivariant bijection orbit -> realized G-set.

        Each bijection is a dict vertex -> element index of the realization.
        """
        action = self.action
        group = self.group
        v0 = min(orb)
        stab = action.stabilizer(v0)
        t = stabilizer_type(group, stab)
        real = self.realized[t.rank]
        bijs = []
        for x in range(real.size):
            if real.stabs[x] != stab:
                continue
            mapping = {}
            for g in range(group.order):
                mapping[action.act[g][v0]] = real.act[g][x]
            bijs.append(mapping)
        if not bijs:
            raise InternalInconsistency("orbit admits no equivariant embedding")
        return t, bijs

    def block_base_rank(self, level, type_rank):
        return level * self.block_width + self.bases[type_rank]


class _State:
    """One partial embedding in the beam.

    ``pending`` counts the unplaced orbits touching each not-yet-complete
    simplex, ``mask`` accumulates 2^rank over its placed vertices, and
    ``ready`` lists, per orbit, the simplices that only wait for that orbit.
    """

    __slots__ = ("rank_of", "unplaced", "orbit_block", "pending", "mask",
                 "ready")

    def __init__(self, rank_of, unplaced, orbit_block, pending, mask, ready):
        self.rank_of = rank_of
        self.unplaced = unplaced
        self.orbit_block = orbit_block
        self.pending = pending
        self.mask = mask
        self.ready = ready

    def evaluate(self, problem, oi, bj, base):
        """Sorted segment keys for placing orbit oi with bijection bj."""
        masks = self.mask
        part = problem.orbpart[oi][bj]
        keys = [masks.get(si, 0) + (part[si] << base) for si in self.ready[oi]]
        keys.sort()
        return keys

    def place(self, problem, oi, bj, base):
        """A new state with orbit oi committed at block base rank ``base``."""
        bij = problem.bijections[oi][bj]
        part = problem.orbpart[oi][bj]
        rank_of = dict(self.rank_of)
        for v, el in bij.items():
            rank_of[v] = base + el
        unplaced = self.unplaced - {oi}
        orbit_block = dict(self.orbit_block)
        orbit_block[oi] = base
        pending = dict(self.pending)
        mask = dict(self.mask)
        ready = {o: list(r) for o, r in self.ready.items()}
        emitted = set(ready.pop(oi, ()))
        for si in problem.cross[oi]:
            if si in emitted:
                pending.pop(si, None)
                mask.pop(si, None)
                continue
            left = pending[si] - 1
            mask[si] = mask[si] + (part[si] << base)
            if left == 1:
                pending.pop(si)
                for other in problem.touch_orbits[si]:
                    if other in unplaced:
                        ready[other].append(si)
                        break
            else:
                pending[si] = left
        return _State(rank_of, unplaced, orbit_block, pending, mask, ready)


def _initial_state(problem):
    pending = {}
    mask = {}
    ready = {oi: [] for oi in range(len(problem.orbits))}
    for si, touching in enumerate(problem.touch_orbits):
        if len(touching) == 1:
            ready[touching[0]].append(si)
        else:
            pending[si] = len(touching)
            mask[si] = 0
    return _State({}, frozenset(range(len(problem.orbits))), {},
                  pending, mask, ready)


def _segment_less(a, b):
    """True if segment a precedes segment b (earlier presence wins; at a
    proper prefix the longer segment wins)."""
    for x, y in zip(a, b):
        if x != y:
            return x < y
    return len(a) > len(b)


def _minimal_embedding(rooted):
    """All minimal embeddings: returns (problem, key sequence, final states)."""
    problem = _EmbeddingProblem(rooted)
    root_oi = problem.root_oi
    counts_by_type = {}
    for oi in range(len(problem.orbits)):
        if oi == root_oi:
            continue
        tr = problem.types[oi].rank
        counts_by_type[tr] = counts_by_type.get(tr, 0) + 1
    max_level = max(counts_by_type.values(), default=0)

    blocks = [(0, problem.types[root_oi].rank, (root_oi,))]
    for level in range(1, max_level + 1):
        for type_rank in range(len(problem.realized)):
            if counts_by_type.get(type_rank, 0) >= level:
                members = tuple(
                    oi for oi in range(len(problem.orbits))
                    if oi != root_oi and problem.types[oi].rank == type_rank)
                blocks.append((level, type_rank, members))

    states = [_initial_state(problem)]
    sequence = []
    for level, type_rank, members in blocks:
        base = problem.block_base_rank(level, type_rank)
        best_seg = None
        chosen = []
        for state in states:
            for oi in members:
                if oi not in state.unplaced:
                    continue
                for bj in range(len(problem.bijections[oi])):
                    seg = state.evaluate(problem, oi, bj, base)
                    if best_seg is None or _segment_less(seg, best_seg):
                        best_seg = seg
                        chosen = [(state, oi, bj)]
                    elif seg == best_seg:
                        chosen.append((state, oi, bj))
        sequence.extend(best_seg)
        new_states = []
        seen = set()
        for state, oi, bj in chosen:
            new_state = state.place(problem, oi, bj, base)
            key = frozenset(new_state.rank_of.items())
            if key in seen:
                continue
            seen.add(key)
            new_states.append(new_state)
        states = new_states
    return problem, sequence, states


def _serialize_embedding(version, header_ranks, slot_ranks, simplex_keys_and_slots):
    """Shared byte layout: header, slot list (delta varints), simplex list.

    ``simplex_keys_and_slots`` is a list of (key, descending slot ranks);
    vertices (singletons) are implied by the slot list and skipped.
    """
    slot_ranks = sorted(slot_ranks)
    pos = {r: i for i, r in enumerate(slot_ranks)}
    out = bytearray([version])
    for h in header_ranks:
        out += _varint(h)
    out += _varint(len(slot_ranks))
    prev = 0
    for r in slot_ranks:
        out += _varint(r - prev)
        prev = r
    body = sorted(simplex_keys_and_slots)
    out += _varint(len(body))
    for _key, slots in body:
        out += _varint(len(slots))
        for r in slots:
            out += _varint(pos[r])
    return bytes(out)


def _embedding_simplices(problem, state):
    """(key, descending ranks) for every simplex of dim >= 1 in an embedding."""
    rank_of = state.rank_of
    out = []
    for d, group_ in problem.action.complex.simplices.items():
        if d == 0:
            continue
        for s in group_:
            ranks = sorted((rank_of[v] for v in s), reverse=True)
            key = sum(1 << r for r in ranks)
            out.append((key, tuple(ranks)))
    return out


def canonical_code(rooted):
    """The canonical code of a rooted complex.

    Equal codes are exactly the equivariantly isomorphic rooted complexes.
    """
    problem, _sequence, states = _minimal_embedding(rooted)
    state = states[0]
    root_type = problem.types[problem.root_oi]
    slots = sorted(state.rank_of.values())
    simplices = _embedding_simplices(problem, state)
    blob = _serialize_embedding(CODE_VERSION_ROOTED, (root_type.rank,),
                                slots, simplices)
    return CanonicalCode(problem.group, blob)


def doubly_rooted_code(drc):
    """Canonical code of a doubly rooted complex.

    Among the minimal embeddings of (K, root1) the second root is encoded by
    the least block it can occupy.
    """
    rooted = RootedGComplex(drc.action, drc.root1, validate=False)
    problem, _sequence, states = _minimal_embedding(rooted)
    root2_oi = problem.orbit_index[min(drc.root2)]
    block2 = min(st.orbit_block[root2_oi] for st in states)
    state = states[0]
    root_type = problem.types[problem.root_oi]
    type2 = problem.types[root2_oi]
    slots = sorted(state.rank_of.values())
    simplices = _embedding_simplices(problem, state)
    blob = _serialize_embedding(CODE_VERSION_DOUBLY,
                                (root_type.rank, type2.rank, block2),
                                slots, simplices)
    return CanonicalCode(problem.group, blob)


def decode_code(code):
    """Rebuild the rooted complex (and its slot ranks) from a code."""
    from .complexes import Complex, DEFAULT_DEGREE_BOUND

    blob = code.blob
    if blob[0] != CODE_VERSION_ROOTED:
        raise InternalInconsistency("can only decode singly rooted codes")
    group = code.group
    realized = realize_gsets(group)
    width = sum(r.size for r in realized)
    bases = []
    off = 0
    for r in realized:
        bases.append(off)
        off += r.size
    pos = 1
    root_type, pos = _read_varint(blob, pos)
    nslots, pos = _read_varint(blob, pos)
    slot_ranks = []
    prev = 0
    for _ in range(nslots):
        d, pos = _read_varint(blob, pos)
        prev += d
        slot_ranks.append(prev)
    nsimp, pos = _read_varint(blob, pos)
    simplices = []
    for _ in range(nsimp):
        k, pos = _read_varint(blob, pos)
        verts = []
        for _ in range(k):
            v, pos = _read_varint(blob, pos)
            verts.append(v)
        simplices.append(tuple(sorted(verts)))

    def slot_info(rank):
        level, rem = divmod(rank, width)
        for t in range(len(realized) - 1, -1, -1):
            if rem >= bases[t]:
                return level, t, rem - bases[t]
        raise InternalInconsistency("bad slot rank")

    groups = {}
    for s in simplices:
        groups.setdefault(len(s) - 1, []).append(s)
    by_dim = {0: tuple((i,) for i in range(nslots))}
    for d, items in groups.items():
        by_dim[d] = tuple(sorted(items))
    deg = [0] * nslots
    for (u, v) in by_dim.get(1, ()):
        deg[u] += 1
        deg[v] += 1
    bound = max(max(deg, default=0), DEFAULT_DEGREE_BOUND)
    complex_ = Complex(nslots, by_dim, bound)

    infos = [slot_info(r) for r in slot_ranks]
    rank_pos = {r: i for i, r in enumerate(slot_ranks)}
    act = []
    for g in range(group.order):
        row = []
        for (level, t, el) in infos:
            el2 = realized[t].act[g][el]
            row.append(rank_pos[level * width + bases[t] + el2])
        act.append(tuple(row))
    action = GroupAction(group, complex_, act, validate=False)
    root = tuple(i for i, (level, t, _el) in enumerate(infos)
                 if level == 0 and t == root_type)
    return RootedGComplex(action, root, validate=False), slot_ranks


def truncate_code(code, radius):
    """Code of the radius-r ball taken inside the canonical embedding itself.

    Mirrors the coherence of the embedding: truncating the minimal embedding
    of a larger ball gives the minimal embedding of the smaller one.
    """
    rooted, slot_ranks = decode_code(code)
    dist = distances_from(rooted.action.complex, rooted.root)
    keep = {v for v, d in dist.items() if d <= radius}
    kept_ranks = sorted(slot_ranks[v] for v in keep)
    simplices = []
    for d, group_ in rooted.action.complex.simplices.items():
        if d == 0:
            continue
        for s in group_:
            if all(v in keep for v in s):
                ranks = sorted((slot_ranks[v] for v in s), reverse=True)
                simplices.append((sum(1 << r for r in ranks), tuple(ranks)))
    root_type, _ = _read_varint(code.blob, 1)
    blob = _serialize_embedding(CODE_VERSION_ROOTED, (root_type,),
                                kept_ranks, simplices)
    return CanonicalCode(code.group, blob)


# ---------------------------------------------------------------------------
# independent isomorphism test and the rooted distance

def _orbit_invariant(action, orb, root_dist):
    degs = sorted(action.complex.degree(v) for v in orb)
    dists = sorted(root_dist.get(v, -1) for v in orb)
    return (len(orb), tuple(degs), tuple(dists))


def rooted_isomorphic(a, b):
    """Equivariant rooted isomorphism test by orbit-wise backtracking.

    Independent of the canonical encoding; the two must agree, which the
    test suite checks on every generated pair.
    """
    if a.action.group.mul != b.action.group.mul:
        raise GroupMismatch("rooted complexes over different groups")
    ka, kb = a.action.complex, b.action.complex
    if ka.vertex_count != kb.vertex_count or ka.counts() != kb.counts():
        return False
    orbs_a, orbs_b = orbits(a.action), orbits(b.action)
    if len(orbs_a) != len(orbs_b):
        return False
    dist_a = distances_from(ka, a.root)
    dist_b = distances_from(kb, b.root)
    inv_a = [_orbit_invariant(a.action, o, dist_a) for o in orbs_a]
    inv_b = [_orbit_invariant(b.action, o, dist_b) for o in orbs_b]
    if sorted(inv_a) != sorted(inv_b):
        return False
    oi_a = {v: i for i, o in enumerate(orbs_a) for v in o}
    oi_b = {v: i for i, o in enumerate(orbs_b) for v in o}
    root_a = oi_a[a.root[0]]
    root_b = oi_b[b.root[0]]

    order_a = sorted(range(len(orbs_a)),
                     key=lambda i: (i != root_a,
                                    min(dist_a.get(v, 1 << 30)
                                        for v in orbs_a[i]),
                                    orbs_a[i][0]))

    group = a.action.group
    simplex_sets = {d: set(g) for d, g in kb.simplices.items()}
    incident_a = [set() for _ in orbs_a]
    for group_ in ka.simplices.values():
        for s in group_:
            for oi in {oi_a[v] for v in s}:
                incident_a[oi].add(s)
    incident_b = [set() for _ in orbs_b]
    for group_ in kb.simplices.values():
        for s in group_:
            for oi in {oi_b[v] for v in s}:
                incident_b[oi].add(s)

    def candidates(ai, used_b):
        for bi in range(len(orbs_b)):
            if bi in used_b or inv_b[bi] != inv_a[ai]:
                continue
            if (ai == root_a) != (bi == root_b):
                continue
            v0 = min(orbs_a[ai])
            stab = a.action.stabilizer(v0)
            for w in orbs_b[bi]:
                if b.action.stabilizer(w) != stab:
                    continue
                mapping = {}
                for g in range(group.order):
                    mapping[a.action.act[g][v0]] = b.action.act[g][w]
                yield bi, mapping

    def extend(pos, vmap, used_b, placed_a):
        if pos == len(order_a):
            return True
        ai = order_a[pos]
        for bi, mapping in candidates(ai, used_b):
            ok = True
            new_placed = placed_a | set(orbs_a[ai])
            for s in incident_a[ai]:
                if all(v in new_placed for v in s):
                    img = tuple(sorted(mapping.get(v, vmap.get(v)) for v in s))
                    if img not in simplex_sets[len(s) - 1]:
                        ok = False
                        break
            if ok:
                # simplex counts inside the matched region must agree
                count_a = sum(1 for s in incident_a[ai]
                              if all(v in new_placed for v in s))
                image_orbits = {bi} | {oi_b[vmap[v]] for v in placed_a}
                placed_b_verts = set()
                for obi in image_orbits:
                    placed_b_verts.update(orbs_b[obi])
                count_b = sum(1 for s in incident_b[bi]
                              if all(v in placed_b_verts for v in s))
                if count_a != count_b:
                    ok = False
            if ok:
                vmap2 = dict(vmap)
                vmap2.update(mapping)
                if extend(pos + 1, vmap2, used_b | {bi}, new_placed):
                    return True
        return False

    return extend(0, {}, set(), set())


@dataclass(frozen=True)
class RootedDistance:
    """Outcome of a ball-by-ball comparison up to a radius cutoff."""
    status: str          # "infinite", "exact" or "at_least"
    r: int | None

    def as_float(self):
        if self.status == "infinite":
            return float("inf")
        return 0.5 ** self.r

    def __repr__(self):
        if self.status == "infinite":
            return "RootedDistance(INFINITE)"
        return f"RootedDistance({self.status} r={self.r})"


def rooted_distance(a, b, r_max=8):
    """Largest r <= r_max with equivariantly isomorphic radius-r balls.

    ``infinite`` means not even the radius-0 balls match (in particular
    whenever the root orbits are non-isomorphic G-sets); ``at_least`` means
    the balls agree all the way to the cutoff.
    """
    if a.action.group.mul != b.action.group.mul:
        raise GroupMismatch("rooted complexes over different groups")
    last_good = None
    for r in range(r_max + 1):
        ball_a, ball_b = a.ball(r), b.ball(r)
        if canonical_code(ball_a) != canonical_code(ball_b):
            if last_good is None:
                return RootedDistance("infinite", None)
            return RootedDistance("exact", last_good)
        last_good = r
        full_a = ball_a.action.complex.vertex_count == a.action.complex.vertex_count
        full_b = ball_b.action.complex.vertex_count == b.action.complex.vertex_count
        if full_a and full_b:
            return RootedDistance("at_least", r_max)
    return RootedDistance("at_least", r_max)
