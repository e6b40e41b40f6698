"""Exact linear algebra over the rationals.

Everything in this package reduces to small dense systems over Q, so the
representation is deliberately plain: a matrix is a row-major tuple of
``fractions.Fraction`` entries.  ``Fraction`` already guarantees the scalar
invariants (lowest terms, positive denominator, arbitrary-precision integer
parts), and all arithmetic is exact.

Row reduction uses first-nonzero pivoting so that ranks, solutions and kernel
bases are reproducible across runs.  ``rank`` clears denominators row-wise and
runs fraction-free (Bareiss) elimination over Python ints, which is noticeably
faster in the hot paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

Scalar = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Mat:
    """Dense rational matrix; ``entries`` is row-major and immutable."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.entries)} != {self.rows}x{self.cols}"
            )

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "Mat":
        r = len(rows)
        c = len(rows[0]) if r else 0
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
        return Mat(r, c, tuple(_frac(x) for row in rows for x in row))

    @staticmethod
    def zeros(rows: int, cols: int) -> "Mat":
        return Mat(rows, cols, (_ZERO,) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat(n, n, tuple(_ONE if i == j else _ZERO
                               for i in range(n) for j in range(n)))

    @staticmethod
    def column(values: Sequence) -> "Mat":
        vals = [_frac(v) for v in values]
        return Mat(len(vals), 1, tuple(vals))

    # -- access --------------------------------------------------------

    def at(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return Mat(self.rows, self.cols,
                   tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in subtraction")
        return Mat(self.rows, self.cols,
                   tuple(a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> "Mat":
        c = _frac(c)
        return Mat(self.rows, self.cols, tuple(c * x for x in self.entries))

    def __mul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in product: {self.rows}x{self.cols} by "
                f"{other.rows}x{other.cols}")
        out = []
        orows = other.to_rows()
        for i in range(self.rows):
            srow = self.row(i)
            acc = [_ZERO] * other.cols
            for k, a in enumerate(srow):
                if a == 0:
                    continue
                orow = orows[k]
                for j in range(other.cols):
                    b = orow[j]
                    if b != 0:
                        acc[j] += a * b
            out.extend(acc)
        return Mat(self.rows, other.cols, tuple(out))

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   tuple(self.at(i, j) for j in range(self.cols)
                         for i in range(self.rows)))

    def hstack(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ValueError("row count mismatch in hstack")
        ent = []
        for i in range(self.rows):
            ent.extend(self.row(i))
            ent.extend(other.row(i))
        return Mat(self.rows, self.cols + other.cols, tuple(ent))


# -- elimination core ---------------------------------------------------


def _int_rows(m: Mat) -> list[list[int]]:
    """Clear denominators row by row; rank-preserving."""
    out = []
    for i in range(m.rows):
        row = m.row(i)
        mult = 1
        for x in row:
            d = x.denominator
            if d != 1:
                mult = mult * d // gcd(mult, d)
        out.append([int(x * mult) for x in row])
    return out


def _int_rank(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination (Bareiss) over int rows."""
    if not rows or not rows[0]:
        return 0
    rows = [r[:] for r in rows]
    nrows, ncols = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = None
        for i in range(rank, nrows):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        p = rows[rank][col]
        for i in range(rank + 1, nrows):
            xi = rows[i][col]
            if xi == 0 and p == prev:
                continue
            ri = rows[i]
            rp = rows[rank]
            for j in range(col, ncols):
                ri[j] = (p * ri[j] - xi * rp[j]) // prev
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form with first-nonzero pivoting.

    Returns (reduced rows, pivot column indices).
    """
    rows = [r[:] for r in rows]
    if not rows:
        return rows, []
    nrows, ncols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][col]
        if inv != 1:
            rows[r] = [x / inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col] != 0:
                c = rows[i][col]
                rows[i] = [a - c * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return rows, pivots


# -- public operations ---------------------------------------------------


def rank(m: Mat) -> int:
    """Rank of ``m`` over Q."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _int_rank(_int_rows(m))


def rank_rows(rows: list[list]) -> int:
    """Rank of a plain list-of-lists matrix (int or Fraction entries)."""
    if not rows or not rows[0]:
        return 0
    clean: list[list[int]] = []
    for row in rows:
        mult = 1
        frs = [_frac(x) for x in row]
        for x in frs:
            d = x.denominator
            if d != 1:
                mult = mult * d // gcd(mult, d)
        clean.append([int(x * mult) for x in frs])
    return _int_rank(clean)


def solve_right(a: Mat, b: Mat) -> Optional[Mat]:
    """Some exact solution x of a*x = b, or None if the system is unsolvable.

    Free variables are set to zero, so the solution is deterministic.
    """
    if a.rows != b.rows:
        raise ValueError(f"row mismatch: a has {a.rows}, b has {b.rows}")
    if a.cols == 0:
        return Mat.zeros(0, b.cols) if b.is_zero() else None
    if a.rows == 0:
        return Mat.zeros(a.cols, b.cols)
    aug = [list(a.row(i)) + list(b.row(i)) for i in range(a.rows)]
    red, pivots = _rref(aug)
    for col in pivots:
        if col >= a.cols:
            return None  # pivot in the rhs block: inconsistent
    sol = [[_ZERO] * b.cols for _ in range(a.cols)]
    for r, col in enumerate(pivots):
        for j in range(b.cols):
            sol[col][j] = red[r][a.cols + j]
    return Mat.from_rows(sol) if a.cols else Mat.zeros(0, b.cols)


def kernel_basis(m: Mat) -> Mat:
    """Matrix whose columns form a basis of ker(m); cols = cols(m) - rank(m)."""
    if m.cols == 0:
        return Mat.zeros(0, 0)
    if m.rows == 0:
        return Mat.identity(m.cols)
    red, pivots = _rref(m.to_rows())
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    cols = []
    for f in free:
        v = [_ZERO] * m.cols
        v[f] = _ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        cols.append(v)
    if not cols:
        return Mat.zeros(m.cols, 0)
    return Mat(m.cols, len(cols),
               tuple(cols[j][i] for i in range(m.cols) for j in range(len(cols))))


def solve_affine(a: Mat, b: Mat) -> Optional[tuple[Mat, Mat]]:
    """(particular solution, kernel basis) for a*x = b, or None."""
    x0 = solve_right(a, b)
    if x0 is None:
        return None
    return x0, kernel_basis(a)


def mat_from_cols(cols: Sequence[Sequence], nrows: int) -> Mat:
    """Matrix with the given columns; shape is explicit so empty dimensions
    survive (from_rows would collapse a 0-row matrix to 0 columns)."""
    ncols = len(cols)
    return Mat(nrows, ncols,
               tuple(_frac(cols[c][r]) for r in range(nrows)
                     for c in range(ncols)))


def column_space_basis(m: Mat) -> Mat:
    """Matrix whose columns are the pivot columns of m (a basis of im m)."""
    if m.rows == 0 or m.cols == 0:
        return Mat.zeros(m.rows, 0)
    _, pivots = _rref(m.to_rows())
    cols = [m.col(j) for j in pivots]
    if not cols:
        return Mat.zeros(m.rows, 0)
    return Mat(m.rows, len(cols),
               tuple(cols[j][i] for i in range(m.rows) for j in range(len(cols))))


def complement_coords(basis: Mat) -> list[int]:
    """Standard coordinates extending the columns of ``basis`` to a basis of
    the ambient space (pivot positions of the identity block)."""
    n = basis.rows
    aug = basis.hstack(Mat.identity(n))
    _, pivots = _rref(aug.to_rows())
    return [p - basis.cols for p in pivots if p >= basis.cols]


def inverse(m: Mat) -> Optional[Mat]:
    """Exact inverse of a square matrix, or None if singular."""
    if m.rows != m.cols:
        return None
    if m.rows == 0:
        return m
    x = solve_right(m, Mat.identity(m.rows))
    if x is None:
        return None
    if (m * x).entries != Mat.identity(m.rows).entries:
        return None
    if (x * m).entries != Mat.identity(m.rows).entries:
        return None
    return x
