"""Sparse exact linear algebra over Fraction or cyclotomic entries.

Everything here is division-exact: no floating point.  Matrices are stored
row-wise as dicts, which keeps elimination fast for the incidence-like
matrices this package produces (boundary operators, Laplacians, isotypic
projections).  Pivots are chosen by a Markowitz-style fill estimate with
deterministic tie-breaking, so ranks and kernels are reproducible.
"""

from __future__ import annotations

from fractions import Fraction


def _inverse(value):
    """Multiplicative inverse of an exact scalar (Fraction, int or field element)."""
    inv = getattr(value, "inverse", None)
    if inv is not None:
        return inv()
    return Fraction(1, 1) / value


class SparseMatrix:
    """A sparse matrix with exact entries.

    ``rows[i]`` maps column index -> nonzero entry.  Entries may be ints,
    Fractions or cyclotomic numbers; they only need +, -, *, equality with
    zero via truthiness, and division through :func:`_inverse`.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [dict() for _ in range(nrows)]

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        m = cls(nrows, ncols)
        for (i, j), v in entries.items():
            if v:
                m.rows[i][j] = v
        return m

    @classmethod
    def identity(cls, n, one=1):
        m = cls(n, n)
        for i in range(n):
            m.rows[i][i] = one
        return m

    def entry(self, i, j):
        return self.rows[i].get(j, 0)

    def nnz(self):
        return sum(len(r) for r in self.rows)

    def copy(self):
        return SparseMatrix(self.nrows, self.ncols, [dict(r) for r in self.rows])

    def transpose(self):
        t = SparseMatrix(self.ncols, self.nrows)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                t.rows[j][i] = v
        return t

    def conjugate_transpose(self, conj):
        t = SparseMatrix(self.ncols, self.nrows)
        for i, row in enumerate(self.rows):
            for j, v in row.items():
                t.rows[j][i] = conj(v)
        return t

    def add(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        out = self.copy()
        for i, row in enumerate(other.rows):
            orow = out.rows[i]
            for j, v in row.items():
                s = orow.get(j, 0) + v
                if s:
                    orow[j] = s
                else:
                    orow.pop(j, None)
        return out

    def sub(self, other):
        assert self.nrows == other.nrows and self.ncols == other.ncols
        out = self.copy()
        for i, row in enumerate(other.rows):
            orow = out.rows[i]
            for j, v in row.items():
                s = orow.get(j, 0) - v
                if s:
                    orow[j] = s
                else:
                    orow.pop(j, None)
        return out

    def scale(self, s):
        out = SparseMatrix(self.nrows, self.ncols)
        if not s:
            return out
        for i, row in enumerate(self.rows):
            out.rows[i] = {j: s * v for j, v in row.items()}
        return out

    def matmul(self, other):
        assert self.ncols == other.nrows
        out = SparseMatrix(self.nrows, other.ncols)
        orows = other.rows
        for i, row in enumerate(self.rows):
            acc = {}
            for k, a in row.items():
                for j, b in orows[k].items():
                    s = acc.get(j, 0) + a * b
                    if s:
                        acc[j] = s
                    else:
                        acc.pop(j, None)
            out.rows[i] = acc
        return out

    def __matmul__(self, other):
        return self.matmul(other)

    def apply(self, vec):
        """Matrix times a sparse vector (dict col -> value)."""
        out = {}
        for i, row in enumerate(self.rows):
            s = 0
            for j, v in row.items():
                if j in vec:
                    s = s + v * vec[j]
            if s:
                out[i] = s
        return out

    def trace(self):
        t = 0
        for i, row in enumerate(self.rows):
            if i in row:
                t = t + row[i]
        return t

    def is_zero(self):
        return all(not r for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        if self.nrows != other.nrows or self.ncols != other.ncols:
            return False
        for r1, r2 in zip(self.rows, other.rows):
            keys = set(r1) | set(r2)
            for j in keys:
                if r1.get(j, 0) != r2.get(j, 0):
                    return False
        return True

    __hash__ = None

    def power_trace(self, r):
        """Exact trace of the r-th power, pairing half powers."""
        if r == 0:
            return self.nrows if self.nrows == self.ncols else None
        if r == 1:
            return self.trace()
        a = r // 2
        b = r - a
        pa = _power(self, a)
        pb = pa if b == a else pa.matmul(self)
        t = 0
        for i, row in enumerate(pa.rows):
            brow = pb.rows
            for j, v in row.items():
                w = brow[j].get(i)
                if w is not None:
                    t = t + v * w
        return t

    def rank(self):
        return _eliminate_rank([dict(r) for r in self.rows], self.ncols)

    def nullspace(self):
        """Exact basis of the right kernel, one dict (col -> value) per vector."""
        work = [dict(r) for r in self.rows]
        pivots = _eliminate_jordan(work, self.ncols)
        pivot_cols = {c for (_r, c) in pivots}
        basis = []
        for f in range(self.ncols):
            if f in pivot_cols:
                continue
            vec = {f: Fraction(1)}
            for (ri, ci) in pivots:
                row = work[ri]
                if f in row:
                    vec[ci] = -row[f] * _inverse(row[ci])
            basis.append(vec)
        return basis


def _power(m, k):
    result = None
    base = m
    while k:
        if k & 1:
            result = base if result is None else result.matmul(base)
        k >>= 1
        if k:
            base = base.matmul(base)
    return result


def _eliminate_rank(rows, ncols):
    """Destructive rank computation: sparsest-column pivoting, rows retire
    once pivoted.  Returns the rank."""
    col_rows = [set() for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j in row:
            col_rows[j].add(i)
    active_cols = [j for j in range(ncols) if col_rows[j]]
    rank = 0
    while True:
        best_col = None
        best_size = None
        for j in active_cols:
            s = len(col_rows[j])
            if s and (best_size is None or s < best_size):
                best_col = j
                best_size = s
                if s == 1:
                    break
        if best_col is None:
            break
        pj = best_col
        pi = min(col_rows[pj], key=lambda i: (len(rows[i]), i))
        prow = rows[pi]
        pinv = _inverse(prow[pj])
        # Retire the pivot row from all column sets first.
        for j in prow:
            col_rows[j].discard(pi)
        for ti in list(col_rows[pj]):
            trow = rows[ti]
            f = trow[pj] * pinv
            for j, v in prow.items():
                s = trow.get(j, 0) - f * v
                if s:
                    if j not in trow:
                        col_rows[j].add(ti)
                    trow[j] = s
                else:
                    if j in trow:
                        del trow[j]
                        col_rows[j].discard(ti)
        rank += 1
        active_cols = [j for j in active_cols if col_rows[j]]
    return rank


def _eliminate_jordan(rows, ncols):
    """Destructive Gauss-Jordan: each pivot column is cleared from every
    other row, so back-substitution for the kernel is immediate.
    Returns the pivot (row, col) list."""
    col_rows = [set() for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j in row:
            col_rows[j].add(i)
    undone = {i for i, row in enumerate(rows) if row}
    pivots = []
    while True:
        best = None
        for j in range(ncols):
            cand = col_rows[j] & undone
            if not cand:
                continue
            for i in cand:
                key = ((len(cand) - 1) * (len(rows[i]) - 1), len(rows[i]), i, j)
                if best is None or key < best[0]:
                    best = (key, i, j)
        if best is None:
            break
        _key, pi, pj = best
        prow = rows[pi]
        pinv = _inverse(prow[pj])
        for ti in list(col_rows[pj]):
            if ti == pi:
                continue
            trow = rows[ti]
            f = trow[pj] * pinv
            for j, v in prow.items():
                s = trow.get(j, 0) - f * v
                if s:
                    if j not in trow:
                        col_rows[j].add(ti)
                    trow[j] = s
                else:
                    if j in trow:
                        del trow[j]
                        col_rows[j].discard(ti)
        pivots.append((pi, pj))
        undone.discard(pi)
    return pivots


def intersection_dim(basis, constraint):
    """dim of span(basis) intersected with the kernel of ``constraint``.

    ``basis`` is a list of sparse vectors spanning a subspace W of the
    domain of ``constraint``; the result is dim(W ∩ ker constraint),
    computed as len(basis) - rank(constraint restricted to W).
    """
    if not basis:
        return 0
    cols = len(basis)
    rows = [dict() for _ in range(constraint.nrows)]
    for c, vec in enumerate(basis):
        img = constraint.apply(vec)
        for i, v in img.items():
            rows[i][c] = v
    restricted = SparseMatrix(constraint.nrows, cols, rows)
    return cols - restricted.rank()
