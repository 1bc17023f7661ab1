"""Exact rational scalars and dense rational matrices.

Everything downstream (coefficient matrices, weight checks, kernel
computations) runs on these primitives; floating point is never used.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

Rational = Fraction


class Infeasible(ValueError):
    """Linear system has no solution."""


def rat(value) -> Fraction:
    """Coerce an int, a 'p/q' string, or a Fraction to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError("cannot interpret %r as a rational number" % (value,))


def rat_str(value: Fraction) -> str:
    value = rat(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


class QMatrix:
    """Dense matrix over the rationals, immutable after construction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        ent = tuple(rat(x) for x in entries)
        if len(ent) != rows * cols:
            raise ValueError("expected %d entries, got %d" % (rows * cols, len(ent)))
        self.rows = rows
        self.cols = cols
        self.entries = ent

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "QMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        flat = []
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged rows")
            flat.extend(r)
        return cls(nrows, ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, [Fraction(int(i == j)) for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "QMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def diagonal(cls, diag: Sequence) -> "QMatrix":
        n = len(diag)
        m = [[0] * n for _ in range(n)]
        for i, d in enumerate(diag):
            m[i][i] = rat(d)
        return cls.from_rows(m)

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "QMatrix":
        return QMatrix(
            self.cols,
            self.rows,
            [self.at(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def mul(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                out.append(sum(ri[k] * other.at(k, j) for k in range(self.cols)))
        return QMatrix(self.rows, other.cols, out)

    def mul_vec(self, vec: Sequence) -> list:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [
            sum(self.at(i, k) * rat(vec[k]) for k in range(self.cols))
            for i in range(self.rows)
        ]

    def scale(self, c) -> "QMatrix":
        c = rat(c)
        return QMatrix(self.rows, self.cols, [c * x for x in self.entries])

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "QMatrix":
        return QMatrix(
            len(row_idx),
            len(col_idx),
            [self.at(i, j) for i in row_idx for j in col_idx],
        )

    def is_skew_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.at(i, j) == -self.at(j, i)
            for i in range(self.rows)
            for j in range(i, self.cols)
        )

    def is_diagonal(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.at(i, j) == 0
            for i in range(self.rows)
            for j in range(self.cols)
            if i != j
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, QMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(rat_str(x) for x in self.row(i)) for i in range(self.rows)
        )
        return "QMatrix(%dx%d: %s)" % (self.rows, self.cols, body)

    def to_json(self) -> list:
        return [[rat_str(x) for x in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "QMatrix":
        return cls.from_rows([[rat(x) for x in row] for row in data])


def _integer_rows(mat: QMatrix) -> list:
    """Scale each row by the lcm of denominators; rank/solutions unchanged."""
    out = []
    for i in range(mat.rows):
        row = mat.row(i)
        mult = lcm(*(x.denominator for x in row)) if row else 1
        out.append([int(x * mult) for x in row])
    return out


def _bareiss_echelon(rows: list) -> tuple:
    """Fraction-free (Bareiss) row echelon form of an integer matrix.

    Entries stay integral throughout: after k elimination steps every entry
    is a (k+1)-minor of the input, so the division by the previous pivot is
    exact.  Returns the echelon rows and the pivot column list.
    """
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    piv_cols = []
    r = 0
    prev = 1
    for c in range(nc):
        p = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
        pivot = rows[r][c]
        for i in range(r + 1, nr):
            f = rows[i][c]
            ri = rows[i]
            rr = rows[r]
            for j in range(nc):
                ri[j] = (ri[j] * pivot - f * rr[j]) // prev
        prev = pivot
        piv_cols.append(c)
        r += 1
        if r == nr:
            break
    return rows, piv_cols


def rank(mat: QMatrix) -> int:
    """Rank over the rationals via exact elimination."""
    if mat.rows == 0 or mat.cols == 0:
        return 0
    _, piv_cols = _bareiss_echelon(_integer_rows(mat))
    return len(piv_cols)


def _back_substitute(ech: list, piv_cols: list, ncols: int, rhs_col) -> list:
    """Solve the echelon system for the pivot variables, free variables 0.

    ``rhs_col`` maps a pivot-row index to its right-hand side (Fraction).
    """
    sol = [Fraction(0)] * ncols
    for r in range(len(piv_cols) - 1, -1, -1):
        c = piv_cols[r]
        s = rhs_col(r)
        row = ech[r]
        for j in range(c + 1, ncols):
            if row[j]:
                s -= row[j] * sol[j]
        sol[c] = Fraction(s, row[c])
    return sol


def solve_affine(a: QMatrix, b: Sequence) -> tuple:
    """Solve A x = b exactly.

    Returns ``(particular, kernel_basis)`` where ``particular`` is one
    solution (free variables set to 0) and ``kernel_basis`` is a list of
    vectors spanning the homogeneous solutions.  Raises :class:`Infeasible`
    when the system is inconsistent.
    """
    bvec = [rat(x) for x in b]
    if len(bvec) != a.rows:
        raise ValueError("right-hand side length mismatch")
    n = a.cols
    if a.rows == 0:
        return [Fraction(0)] * n, [_unit_vector(n, j) for j in range(n)]

    aug = QMatrix(a.rows, n + 1, [x for i in range(a.rows) for x in (*a.row(i), bvec[i])])
    ech, piv_cols = _bareiss_echelon(_integer_rows(aug))
    if piv_cols and piv_cols[-1] == n:
        raise Infeasible("inconsistent linear system")

    particular = _back_substitute(
        ech, piv_cols, n, lambda r: Fraction(ech[r][n])
    )
    free = [j for j in range(n) if j not in piv_cols]
    kernel = []
    for f in free:
        vec = _back_substitute(
            ech, piv_cols, n, lambda r: Fraction(-ech[r][f])
        )
        vec[f] = Fraction(1)
        kernel.append(vec)
    return particular, kernel


def nullspace(a: QMatrix) -> list:
    """Basis of the exact kernel of A."""
    _, kernel = solve_affine(a, [0] * a.rows)
    return kernel


def _unit_vector(n: int, j: int) -> list:
    v = [Fraction(0)] * n
    v[j] = Fraction(1)
    return v
