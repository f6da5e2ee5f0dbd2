"""Finite simplicial complexes of bounded vertex degree.

A :class:`Complex` stores the full downward-closed simplex set grouped by
dimension, with every simplex as an ascending vertex tuple.  All homology
is computed over the rationals with exact integer matrices; no floating
point enters any rank.
"""

from __future__ import annotations

from collections import deque
from functools import total_ordering

from .errors import (
    DegreeBoundExceeded,
    DimensionOutOfRange,
    EmptySimplex,
    VertexOutOfRange,
)
from .exact import SparseMatrix

DEFAULT_DEGREE_BOUND = 16


@total_ordering
class _Infinite:
    """Distance value for vertices in different components."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return isinstance(other, _Infinite)

    def __gt__(self, other):
        if isinstance(other, _Infinite):
            return False
        return True

    def __hash__(self):
        return hash("INFINITE")

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()


class Complex:
    """Immutable finite simplicial complex.

    Use :func:`validate_complex` (or the file loader) to build one; the
    constructor trusts its arguments.
    """

    __slots__ = ("vertex_count", "simplices", "degree_bound", "_neighbors")

    def __init__(self, vertex_count, simplices, degree_bound):
        self.vertex_count = vertex_count
        # dim -> tuple of ascending vertex tuples, sorted lexicographically
        self.simplices = simplices
        self.degree_bound = degree_bound
        self._neighbors = None

    @property
    def dim(self):
        return max(self.simplices) if self.simplices else -1

    def n_simplices(self, n):
        return self.simplices.get(n, ())

    def counts(self):
        return {n: len(s) for n, s in sorted(self.simplices.items())}

    def simplex_set(self):
        out = set()
        for group in self.simplices.values():
            out.update(group)
        return out

    def has_simplex(self, verts):
        verts = tuple(sorted(verts))
        return verts in set(self.simplices.get(len(verts) - 1, ()))

    def neighbors(self):
        """Adjacency lists of the 1-skeleton (cached)."""
        if self._neighbors is None:
            adj = [[] for _ in range(self.vertex_count)]
            for (u, v) in self.simplices.get(1, ()):
                adj[u].append(v)
                adj[v].append(u)
            self._neighbors = tuple(tuple(sorted(a)) for a in adj)
        return self._neighbors

    def degree(self, v):
        return len(self.neighbors()[v])

    def euler_characteristic(self):
        return sum((-1) ** n * len(s) for n, s in self.simplices.items())

    def __eq__(self, other):
        if not isinstance(other, Complex):
            return NotImplemented
        return (self.vertex_count == other.vertex_count
                and self.simplices == other.simplices)

    def __hash__(self):
        return hash((self.vertex_count,
                     tuple(sorted((n, s) for n, s in self.simplices.items()))))

    def __repr__(self):
        c = self.counts()
        return f"Complex(vertices={self.vertex_count}, counts={c})"


def _close_downward(raw):
    """All nonempty subsets of the given simplices, grouped by dimension."""
    seen = set()
    stack = [tuple(sorted(s)) for s in raw]
    for s in stack:
        if len(set(s)) != len(s):
            raise EmptySimplex(f"repeated vertex in simplex {s}")
    while stack:
        s = stack.pop()
        if s in seen:
            continue
        seen.add(s)
        if len(s) > 1:
            for i in range(len(s)):
                stack.append(s[:i] + s[i + 1:])
    by_dim = {}
    for s in seen:
        by_dim.setdefault(len(s) - 1, []).append(s)
    return {n: tuple(sorted(group)) for n, group in by_dim.items()}


def validate_complex(raw, degree_bound=DEFAULT_DEGREE_BOUND, vertex_count=None):
    """Build a Complex from a list of vertex sets, applying downward closure.

    Vertex identifiers must be naturals.  When ``vertex_count`` is given,
    identifiers outside any listed simplex become isolated vertices;
    otherwise the identifiers must cover 0..max contiguously.
    """
    if not raw and vertex_count is None:
        raise EmptySimplex("no simplices given")
    cleaned = []
    for s in raw:
        s = tuple(sorted(set(s)))
        if not s:
            raise EmptySimplex("empty simplex in input")
        if any(v < 0 for v in s):
            raise VertexOutOfRange(f"negative vertex id in {s}")
        cleaned.append(s)
    used = sorted({v for s in cleaned for v in s})
    if vertex_count is None:
        vertex_count = used[-1] + 1 if used else 0
        if used != list(range(vertex_count)):
            raise VertexOutOfRange("vertex ids must cover 0..max contiguously")
    else:
        if used and used[-1] >= vertex_count:
            raise VertexOutOfRange(
                f"vertex id {used[-1]} exceeds vertex_count={vertex_count}")
    cleaned.extend((v,) for v in range(vertex_count))
    by_dim = _close_downward(cleaned)
    deg = [0] * vertex_count
    for (u, v) in by_dim.get(1, ()):
        deg[u] += 1
        deg[v] += 1
    worst = max(deg, default=0)
    if worst > degree_bound:
        offender = deg.index(worst)
        raise DegreeBoundExceeded(
            f"vertex {offender} has degree {worst} > bound {degree_bound}")
    top = max(by_dim, default=0)
    if top > degree_bound:
        raise DegreeBoundExceeded(
            f"simplex dimension {top} exceeds degree bound {degree_bound}")
    return Complex(vertex_count, by_dim, degree_bound)


def path_distance(complex_, u, v):
    """Shortest edge-path length between u and v, or INFINITE."""
    if not (0 <= u < complex_.vertex_count and 0 <= v < complex_.vertex_count):
        raise VertexOutOfRange(f"vertex out of range: {u}, {v}")
    if u == v:
        return 0
    adj = complex_.neighbors()
    dist = {u: 0}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                if y == v:
                    return dist[y]
                queue.append(y)
    return INFINITE


def distances_from(complex_, sources, cutoff=None):
    """BFS distances from a set of source vertices; unreachable -> absent.

    With ``cutoff`` the search stops at that depth (inclusive).
    """
    adj = complex_.neighbors()
    dist = {}
    queue = deque()
    for s in sources:
        if not 0 <= s < complex_.vertex_count:
            raise VertexOutOfRange(f"vertex out of range: {s}")
        dist[s] = 0
        queue.append(s)
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if cutoff is not None and dx >= cutoff:
            continue
        for y in adj[x]:
            if y not in dist:
                dist[y] = dx + 1
                queue.append(y)
    return dist


def full_subcomplex(complex_, vertices):
    """Full subcomplex on a vertex subset, relabeled order-preservingly.

    Returns (Complex, mapping old id -> new id).
    """
    kept = sorted(set(vertices))
    relabel = {old: new for new, old in enumerate(kept)}
    keep = set(kept)
    by_dim = {}
    for n, group in complex_.simplices.items():
        sub = [tuple(relabel[v] for v in s) for s in group
               if all(v in keep for v in s)]
        if sub:
            by_dim[n] = tuple(sorted(sub))
    return Complex(len(kept), by_dim, complex_.degree_bound), relabel


def ball(complex_, vertices, radius):
    """B_r: full subcomplex on vertices within path distance r of the set.

    Returns (Complex, mapping old id -> new id).
    """
    if not vertices:
        raise VertexOutOfRange("empty vertex set for ball")
    dist = distances_from(complex_, vertices)
    inside = [v for v, d in dist.items() if d <= radius]
    return full_subcomplex(complex_, inside)


def boundary_matrix(complex_, n):
    """Matrix of the n-th boundary operator on ascending-oriented simplices.

    Rows are (n-1)-simplices, columns are n-simplices, both in
    lexicographic order; entries are the alternating face signs.
    """
    if n < 1 or n > complex_.dim:
        raise DimensionOutOfRange(f"boundary_matrix: n={n} not in 1..{complex_.dim}")
    rows_index = {s: i for i, s in enumerate(complex_.n_simplices(n - 1))}
    cols = complex_.n_simplices(n)
    m = SparseMatrix(len(rows_index), len(cols))
    for j, s in enumerate(cols):
        sign = 1
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            m.rows[rows_index[face]][j] = sign
            sign = -sign
    return m


def laplacian(complex_, n):
    """Combinatorial Laplacian on n-chains (integer matrix)."""
    if n < 0 or n > complex_.dim:
        raise DimensionOutOfRange(f"laplacian: n={n} not in 0..{complex_.dim}")
    size = len(complex_.n_simplices(n))
    total = SparseMatrix(size, size)
    if n + 1 <= complex_.dim and complex_.n_simplices(n + 1):
        up = boundary_matrix(complex_, n + 1)
        total = total.add(up.matmul(up.transpose()))
    if n >= 1:
        down = boundary_matrix(complex_, n)
        total = total.add(down.transpose().matmul(down))
    return total


def betti(complex_, n):
    """dim H_n over Q from exact boundary ranks."""
    if n < 0:
        return 0
    k_n = len(complex_.n_simplices(n))
    if k_n == 0:
        return 0
    rank_n = boundary_matrix(complex_, n).rank() if n >= 1 else 0
    if n + 1 <= complex_.dim and complex_.n_simplices(n + 1):
        rank_up = boundary_matrix(complex_, n + 1).rank()
    else:
        rank_up = 0
    return k_n - rank_n - rank_up
