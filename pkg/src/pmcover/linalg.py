"""Exact linear algebra over the rationals and the integers.

Everything here is exact: rational work uses ``fractions.Fraction`` (always in
lowest terms, arbitrary precision) and integer lattice work uses Python ints.
Floats never appear.  Matrices are dense; the package operates at desk scale
where dense exact elimination is the simple, predictable choice.

The integer side is a column-style Hermite normal form with the unimodular
transform recorded, which answers "is b an integer combination of these
columns" and, as a byproduct, yields an integer basis of the column kernel.
Pivot choice is deterministic: smallest nonzero absolute value, then lowest
column index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

Rational = Fraction
Entry = Union[int, Fraction]


@dataclass(frozen=True)
class RatMatrix:
    """Immutable dense matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Entry]]) -> "RatMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows: all rows must have the same length")
        return cls(nrows, ncols, data)

    def transpose(self) -> "RatMatrix":
        data = tuple(
            tuple(self.entries[i][j] for i in range(self.rows))
            for j in range(self.cols)
        )
        return RatMatrix(self.cols, self.rows, data)

    def mul_vec(self, x: Sequence[Entry]) -> list[Fraction]:
        if len(x) != self.cols:
            raise ValueError(f"dimension mismatch: {self.cols} cols, {len(x)} entries")
        xs = [Fraction(v) for v in x]
        return [
            sum((row[j] * xs[j] for j in range(self.cols)), Fraction(0))
            for row in self.entries
        ]


def _rref(rows: list[list[Fraction]], width: int) -> tuple[list[list[Fraction]], list[int]]:
    """In-place reduced row echelon over the first ``width`` columns.

    Returns (rows, pivot_columns).  Columns beyond ``width`` (an augmented
    right-hand side) are carried along but never chosen as pivots.
    """
    pivots: list[int] = []
    r = 0
    for c in range(width):
        pivot_row = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(m: RatMatrix) -> int:
    rows = [list(row) for row in m.entries]
    _, pivots = _rref(rows, m.cols)
    return len(pivots)


def rational_solve(
    m: RatMatrix, b: Sequence[Entry]
) -> Optional[tuple[list[Fraction], list[list[Fraction]]]]:
    """Exact solve of M x = b: (particular solution, nullspace basis) or None.

    The particular solution sets all free variables to zero; each nullspace
    basis vector sets one free variable to one.
    """
    if len(b) != m.rows:
        raise ValueError(f"dimension mismatch: {m.rows} rows, {len(b)} rhs entries")
    rows = [list(row) + [Fraction(bv)] for row, bv in zip(m.entries, b)]
    rows, pivots = _rref(rows, m.cols)
    for i in range(len(pivots), m.rows):
        if rows[i][m.cols] != 0:
            return None  # zero row with nonzero right-hand side
    x = [Fraction(0)] * m.cols
    for i, c in enumerate(pivots):
        x[c] = rows[i][m.cols]
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        basis.append(v)
    return x, basis


def integer_det(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("determinant requires a square matrix")
    a = [[int(x) for x in row] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def hnf(matrix: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite normal form: H = M U with U unimodular.

    H is a lower staircase: pivot columns come first, each pivot positive,
    entries left of a pivot in its row reduced to [0, pivot), and all columns
    after the last pivot identically zero (their U columns span the integer
    kernel of M).
    """
    h = [[int(x) for x in row] for row in matrix]
    nrows = len(h)
    ncols = len(h[0]) if nrows else 0
    if any(len(row) != ncols for row in h):
        raise ValueError("ragged rows: all rows must have the same length")
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_cols(a: int, b: int) -> None:
        if a == b:
            return
        for row in h:
            row[a], row[b] = row[b], row[a]
        for row in u:
            row[a], row[b] = row[b], row[a]

    def add_col(dst: int, src: int, factor: int) -> None:
        for row in h:
            row[dst] += factor * row[src]
        for row in u:
            row[dst] += factor * row[src]

    def negate_col(c: int) -> None:
        for row in h:
            row[c] = -row[c]
        for row in u:
            row[c] = -row[c]

    col = 0
    pivot_of_col: list[tuple[int, int]] = []  # (row, col) of each pivot
    for row_i in range(nrows):
        if col == ncols:
            break
        while True:
            active = [j for j in range(col, ncols) if h[row_i][j] != 0]
            if not active:
                break
            best = min(active, key=lambda j: (abs(h[row_i][j]), j))
            swap_cols(col, best)
            done = True
            for j in range(col + 1, ncols):
                if h[row_i][j] != 0:
                    q = h[row_i][j] // h[row_i][col]
                    add_col(j, col, -q)
                    if h[row_i][j] != 0:
                        done = False
            if done:
                break
        if col < ncols and h[row_i][col] != 0:
            if h[row_i][col] < 0:
                negate_col(col)
            for j in range(col):
                q = h[row_i][j] // h[row_i][col]
                if q:
                    add_col(j, col, -q)
            pivot_of_col.append((row_i, col))
            col += 1
    return h, u


def hnf_solve(matrix: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[list[int]]:
    """An integer solution x of M x = b, or None if b is outside the lattice.

    Forward substitution over the staircase of the HNF, mapped back through
    the unimodular transform.  The result is verified exactly before return.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else 0
    if len(b) != nrows:
        raise ValueError(f"dimension mismatch: {nrows} rows, {len(b)} rhs entries")
    h, u = hnf(matrix)
    y = [0] * ncols
    next_pivot = 0
    for i in range(nrows):
        acc = sum(h[i][j] * y[j] for j in range(next_pivot))
        residual = b[i] - acc
        if next_pivot < ncols and h[i][next_pivot] != 0:
            q, rem = divmod(residual, h[i][next_pivot])
            if rem != 0:
                return None
            y[next_pivot] = q
            next_pivot += 1
        elif residual != 0:
            return None
    x = [sum(u[i][j] * y[j] for j in range(ncols)) for i in range(ncols)]
    for i in range(nrows):
        if sum(matrix[i][j] * x[j] for j in range(ncols)) != b[i]:
            raise AssertionError("hnf_solve produced an inexact solution")
    return x


def integer_kernel(matrix: Sequence[Sequence[int]]) -> list[list[int]]:
    """Integer basis of {z : M z = 0}: U columns over zero columns of H."""
    h, u = hnf(matrix)
    nrows = len(h)
    ncols = len(h[0]) if nrows else 0
    basis = []
    for j in range(ncols):
        if all(h[i][j] == 0 for i in range(nrows)):
            basis.append([u[i][j] for i in range(ncols)])
    return basis
