"""Exact dense linear algebra over the rational function field.

Matrices hold :class:`~firwb.field.RatFunc` entries (constants included),
so all results are exact.  ``rref`` is the workhorse; ``bareiss_rank``
is an independent fraction-free path used to cross-check ranks.
"""

from __future__ import annotations

from .field import Poly, RatFunc, _scalar_content_factor, poly_divexact


def _strip_row_scalar(row, field):
    """Divide a whole row by its common rational scalar content (rank-safe)."""
    if field.p is not None:
        return row
    coeffs = [c for p in row for c in p.terms.values()]
    if not coeffs:
        return row
    factor = _scalar_content_factor(coeffs)
    if factor == 1:
        return row
    return [p.scale(factor) for p in row]


class ExactMatrix:
    """A dense rows x cols matrix of exact rational functions."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field, rows: int, cols: int, entries=None):
        self.field = field
        self.rows = rows
        self.cols = cols
        if entries is None:
            z = RatFunc.zero(field)
            self.entries = [[z] * cols for _ in range(rows)]
        else:
            if len(entries) != rows or any(len(r) != cols for r in entries):
                raise ValueError("inconsistent matrix dimensions")
            self.entries = [list(r) for r in entries]

    @classmethod
    def identity(cls, field, n: int) -> "ExactMatrix":
        m = cls(field, n, n)
        one = RatFunc.one(field)
        for i in range(n):
            m.entries[i][i] = one
        return m

    @classmethod
    def from_columns(cls, field, rows: int, columns) -> "ExactMatrix":
        columns = list(columns)
        m = cls(field, rows, len(columns))
        for j, col in enumerate(columns):
            if len(col) != rows:
                raise ValueError("column length mismatch")
            for i, v in enumerate(col):
                m.entries[i][j] = v
        return m

    def column(self, j: int) -> list:
        return [self.entries[i][j] for i in range(self.rows)]

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.field, self.rows, self.cols, self.entries)

    def transpose(self) -> "ExactMatrix":
        m = ExactMatrix(self.field, self.cols, self.rows)
        for i in range(self.rows):
            for j in range(self.cols):
                m.entries[j][i] = self.entries[i][j]
        return m

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        m = ExactMatrix(self.field, self.rows, self.cols + other.cols)
        for i in range(self.rows):
            m.entries[i][: self.cols] = self.entries[i]
            m.entries[i][self.cols:] = other.entries[i]
        return m

    def vstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch in vstack")
        return ExactMatrix(
            self.field, self.rows + other.rows, self.cols, self.entries + other.entries
        )

    def mul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = ExactMatrix(self.field, self.rows, other.cols)
        # sparse-aware: skip zero factors, which dominate realized level matrices
        for k in range(self.cols):
            row_k = other.entries[k]
            for i in range(self.rows):
                a = self.entries[i][k]
                if a.is_zero:
                    continue
                out_row = out.entries[i]
                for j in range(other.cols):
                    b = row_k[j]
                    if b.is_zero:
                        continue
                    out_row[j] = out_row[j] + a * b
        return out

    def mul_vector(self, vec: list) -> list:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        zero = RatFunc.zero(self.field)
        out = [zero] * self.rows
        for j, v in enumerate(vec):
            if v.is_zero:
                continue
            for i in range(self.rows):
                a = self.entries[i][j]
                if not a.is_zero:
                    out[i] = out[i] + a * v
        return out

    def map_entries(self, fn) -> "ExactMatrix":
        return ExactMatrix(
            self.field, self.rows, self.cols, [[fn(v) for v in row] for row in self.entries]
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ExactMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def rref(self):
        """Reduced row echelon form.

        Returns ``(rank, pivots, reduced)`` where ``pivots`` lists the pivot
        column of each nonzero row of the reduced matrix.
        """
        m = [row[:] for row in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot = None
            for i in range(r, self.rows):
                if not m[i][c].is_zero:
                    pivot = i
                    break
            if pivot is None:
                continue
            m[r], m[pivot] = m[pivot], m[r]
            pv = m[r][c]
            if not pv.is_one:
                inv_row = m[r]
                for j in range(c, self.cols):
                    if not inv_row[j].is_zero:
                        inv_row[j] = inv_row[j] / pv
            for i in range(self.rows):
                if i == r:
                    continue
                f = m[i][c]
                if f.is_zero:
                    continue
                row_i, row_r = m[i], m[r]
                for j in range(c, self.cols):
                    if not row_r[j].is_zero:
                        row_i[j] = row_i[j] - f * row_r[j]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return r, pivots, ExactMatrix(self.field, self.rows, self.cols, m)

    def rank(self) -> int:
        return self.rref()[0]

    def kernel_basis(self) -> list:
        """Exact basis of the right kernel, one vector per free column."""
        rank, pivots, red = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        zero = RatFunc.zero(self.field)
        one = RatFunc.one(self.field)
        basis = []
        for fc in free:
            v = [zero] * self.cols
            v[fc] = one
            for i, pc in enumerate(pivots):
                v[pc] = -red.entries[i][fc]
            basis.append(v)
        return basis

    def det(self) -> RatFunc:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [row[:] for row in self.entries]
        n = self.rows
        det = RatFunc.one(self.field)
        sign = 1
        for c in range(n):
            pivot = None
            for i in range(c, n):
                if not m[i][c].is_zero:
                    pivot = i
                    break
            if pivot is None:
                return RatFunc.zero(self.field)
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                sign = -sign
            pv = m[c][c]
            det = det * pv
            for i in range(c + 1, n):
                f = m[i][c]
                if f.is_zero:
                    continue
                f = f / pv
                for j in range(c, n):
                    if not m[c][j].is_zero:
                        m[i][j] = m[i][j] - f * m[c][j]
        return det if sign == 1 else -det

    def __str__(self) -> str:
        return "\n".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.entries)


def bareiss_rank(mat: ExactMatrix) -> int:
    """Rank via fraction-free Bareiss elimination on cleared denominators.

    Independent of :meth:`ExactMatrix.rref`: works on polynomial entries
    with exact division by the previous pivot.
    """
    field = mat.field
    rows = []
    for row in mat.entries:
        dens = [v.den for v in row if not v.den.is_const]
        prod = Poly.one(field)
        for d in dens:
            prod = prod * d
        cleared = []
        for v in row:
            p = v.num
            if not v.den.is_const:
                p = p * poly_divexact(prod, v.den)
            else:
                p = p * prod
            cleared.append(p)
        rows.append(_strip_row_scalar(cleared, field))
    n_rows = len(rows)
    n_cols = mat.cols
    prev = Poly.one(field)
    r = 0
    for c in range(n_cols):
        pivot = None
        for i in range(r, n_rows):
            if not rows[i][c].is_zero:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        for i in range(r + 1, n_rows):
            for j in range(c + 1, n_cols):
                num = rows[i][j] * pv - rows[i][c] * rows[r][j]
                rows[i][j] = poly_divexact(num, prev)
            rows[i][c] = Poly.zero(field)
        prev = pv
        r += 1
        if r == n_rows:
            break
    return r


class RowReducer:
    """Incremental echelon span tracker for rank and membership tests."""

    def __init__(self, field):
        self.field = field
        self.pivots = []  # list of (pivot_index, reduced_vector)

    def reduce(self, vec: list) -> list:
        v = list(vec)
        for p, row in self.pivots:
            f = v[p]
            if f.is_zero:
                continue
            for j in range(len(v)):
                if not row[j].is_zero:
                    v[j] = v[j] - f * row[j]
        return v

    def add(self, vec: list) -> bool:
        """Reduce ``vec`` against the span; add it if independent."""
        v = self.reduce(vec)
        p = None
        for j, entry in enumerate(v):
            if not entry.is_zero:
                p = j
                break
        if p is None:
            return False
        pv = v[p]
        if not pv.is_one:
            v = [e / pv for e in v]
        for _, row in self.pivots:
            f = row[p]
            if not f.is_zero:
                for j in range(len(row)):
                    if not v[j].is_zero:
                        row[j] = row[j] - f * v[j]
        self.pivots.append((p, v))
        self.pivots.sort(key=lambda t: t[0])
        return True

    def contains(self, vec: list) -> bool:
        return all(e.is_zero for e in self.reduce(vec))

    @property
    def rank(self) -> int:
        return len(self.pivots)
