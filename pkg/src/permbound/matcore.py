"""Dense matrices over exact rationals or float64, submatrix algebra, and
the exact permanent/determinant oracles used as ground truth everywhere else.

Conventions
-----------
* All row/column indices taken by the public API are 1-based, matching the
  usual mathematical notation a_{i,j}, A(S, T), A(-S, -T).  Storage is a
  plain 0-based tuple of row tuples.
* per(A(0x0)) = det(A(0x0)) = 1 by convention, so empty selections behave
  as neutral factors.
* Rectangular matrices are legal carriers (blocks X, Y); the permanent and
  determinant reject them with NotSquare.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    IndexOutOfRange,
    NotSquare,
)
from .scalars import FLOAT64, KINDS, RATIONAL, Scalar, coerce, one, zero

NAIVE_MAX = 10
RYSER_MAX_RATIONAL = 24
RYSER_MAX_FLOAT = 30


@dataclass(frozen=True)
class IndexSet:
    """A strictly increasing tuple of 1-based indices."""

    members: tuple[int, ...]

    def __post_init__(self):
        for m in self.members:
            if not isinstance(m, int) or m < 1:
                raise IndexOutOfRange(f"index {m!r} is not a positive integer")
        if any(a >= b for a, b in zip(self.members, self.members[1:])):
            raise IndexOutOfRange(f"indices must be strictly increasing: {self.members}")

    @classmethod
    def of(cls, items: Iterable[int] | "IndexSet") -> "IndexSet":
        if isinstance(items, IndexSet):
            return items
        return cls(tuple(sorted(set(items))))

    def complement(self, n: int) -> "IndexSet":
        inside = set(self.members)
        return IndexSet(tuple(i for i in range(1, n + 1) if i not in inside))

    def zero_based(self) -> tuple[int, ...]:
        return tuple(m - 1 for m in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, item) -> bool:
        return item in self.members


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix; ``entries`` is a tuple of row tuples."""

    entries: tuple[tuple[Scalar, ...], ...]
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown scalar kind: {self.kind!r}")
        widths = {len(row) for row in self.entries}
        if len(widths) > 1:
            raise DimensionMismatch("ragged rows")

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    @property
    def n(self) -> int:
        """Dimension of a square matrix; NotSquare otherwise."""
        if not self.is_square:
            raise NotSquare(f"{self.nrows}x{self.ncols} matrix is not square")
        return self.nrows

    def row(self, i: int) -> tuple[Scalar, ...]:
        """Row i, 1-based."""
        if not 1 <= i <= self.nrows:
            raise IndexOutOfRange(f"row {i} outside [1, {self.nrows}]")
        return self.entries[i - 1]

    def col(self, j: int) -> tuple[Scalar, ...]:
        """Column j, 1-based."""
        if not 1 <= j <= self.ncols:
            raise IndexOutOfRange(f"column {j} outside [1, {self.ncols}]")
        return tuple(row[j - 1] for row in self.entries)

    def entry(self, i: int, j: int) -> Scalar:
        """Entry a_{i,j}, 1-based."""
        if not (1 <= i <= self.nrows and 1 <= j <= self.ncols):
            raise IndexOutOfRange(f"entry ({i}, {j}) outside {self.nrows}x{self.ncols}")
        return self.entries[i - 1][j - 1]

    def is_nonneg(self) -> bool:
        return all(x >= 0 for row in self.entries for x in row)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)


def matrix(rows: Sequence[Sequence], kind: str | None = None) -> Matrix:
    """Build a Matrix, inferring the kind when not given.

    Any float entry forces float64; otherwise entries are coerced to exact
    rationals (ints, Fractions, and "p/q"/decimal strings are accepted).
    """
    rows = [list(r) for r in rows]
    if kind is None:
        has_float = any(isinstance(x, float) for r in rows for x in r)
        kind = FLOAT64 if has_float else RATIONAL
    return Matrix(tuple(tuple(coerce(x, kind) for x in r) for r in rows), kind)


def identity(n: int, kind: str = RATIONAL) -> Matrix:
    o, z = one(kind), zero(kind)
    return Matrix(tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)), kind)


def ones(n: int, kind: str = RATIONAL) -> Matrix:
    o = one(kind)
    return Matrix(tuple(tuple(o for _ in range(n)) for _ in range(n)), kind)


def transpose(m: Matrix) -> Matrix:
    return Matrix(tuple(zip(*m.entries)) if m.entries else (), m.kind)


def _require_same_kind(a: Matrix, b: Matrix):
    if a.kind != b.kind:
        raise DimensionMismatch(f"mixed scalar kinds: {a.kind} vs {b.kind}")


def matmul(a: Matrix, b: Matrix) -> Matrix:
    _require_same_kind(a, b)
    if a.ncols != b.nrows:
        raise DimensionMismatch(f"cannot multiply {a.nrows}x{a.ncols} by {b.nrows}x{b.ncols}")
    bt = transpose(b).entries
    out = tuple(
        tuple(sum((x * y for x, y in zip(row, col)), zero(a.kind)) for col in bt)
        for row in a.entries
    )
    return Matrix(out, a.kind)


def add(a: Matrix, b: Matrix) -> Matrix:
    _require_same_kind(a, b)
    if (a.nrows, a.ncols) != (b.nrows, b.ncols):
        raise DimensionMismatch(f"cannot add {a.nrows}x{a.ncols} and {b.nrows}x{b.ncols}")
    return Matrix(
        tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.entries, b.entries)),
        a.kind,
    )


def outer(x: Sequence[Scalar], y: Sequence[Scalar], kind: str) -> Matrix:
    """The |x| x |y| matrix with entries x_i * y_j."""
    xs = [coerce(v, kind) for v in x]
    ys = [coerce(v, kind) for v in y]
    return Matrix(tuple(tuple(xi * yj for yj in ys) for xi in xs), kind)


def select(m: Matrix, rows: Iterable[int] | IndexSet, cols: Iterable[int] | IndexSet) -> Matrix:
    """m(S, T): the submatrix of rows S and columns T (1-based index sets).

    select(m, (), ()) is the 0x0 matrix, whose permanent and determinant
    are 1 by convention.
    """
    rs = IndexSet.of(rows)
    cs = IndexSet.of(cols)
    for r in rs:
        if r > m.nrows:
            raise IndexOutOfRange(f"row {r} outside [1, {m.nrows}]")
    for c in cs:
        if c > m.ncols:
            raise IndexOutOfRange(f"column {c} outside [1, {m.ncols}]")
    return Matrix(
        tuple(tuple(m.entries[r - 1][c - 1] for c in cs) for r in rs),
        m.kind,
    )


def delete(m: Matrix, rows: Iterable[int] | IndexSet, cols: Iterable[int] | IndexSet) -> Matrix:
    """m(-S, -T): delete rows S and columns T; delete({i},{j}) is the (i,j) minor."""
    rs = IndexSet.of(rows)
    cs = IndexSet.of(cols)
    for r in rs:
        if r > m.nrows:
            raise IndexOutOfRange(f"row {r} outside [1, {m.nrows}]")
    for c in cs:
        if c > m.ncols:
            raise IndexOutOfRange(f"column {c} outside [1, {m.ncols}]")
    return select(m, rs.complement(m.nrows), cs.complement(m.ncols))


def permanent_naive(m: Matrix) -> Scalar:
    """per(m) by the n!-term permutation sum; guard n <= 10."""
    n = m.n
    if n > NAIVE_MAX:
        raise DimensionTooLarge(f"permanent_naive guard: n = {n} > {NAIVE_MAX}")
    rows = m.entries
    total = zero(m.kind)
    for sigma in permutations(range(n)):
        term = one(m.kind)
        for i in range(n):
            term *= rows[i][sigma[i]]
        total += term
    return total


def permanent_ryser(m: Matrix) -> Scalar:
    """per(m) by Ryser's inclusion-exclusion over column subsets, O(2^n * n).

    Gray-code iteration updates one column per subset.  Guards: n <= 24 in
    rational mode, n <= 30 in float mode.
    """
    n = m.n
    limit = RYSER_MAX_RATIONAL if m.kind == RATIONAL else RYSER_MAX_FLOAT
    if n > limit:
        raise DimensionTooLarge(f"permanent_ryser guard: n = {n} > {limit}")
    rows = m.entries
    if n == 0:
        return one(m.kind)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] + rows[0][1] * rows[1][0]
    z = zero(m.kind)
    sums = [z] * n
    total = z
    prev_gray = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        bit = gray ^ prev_gray
        j = bit.bit_length() - 1
        if gray & bit:
            for i in range(n):
                sums[i] += rows[i][j]
        else:
            for i in range(n):
                sums[i] -= rows[i][j]
        prev_gray = gray
        term = math.prod(sums)
        size = gray.bit_count()
        total += term if (n - size) % 2 == 0 else -term
    return total


def determinant(m: Matrix) -> Scalar:
    """det(m) by elimination with row pivoting; exact on rationals."""
    n = m.n
    if n == 0:
        return one(m.kind)
    a = [list(row) for row in m.entries]
    sign = 1
    det = one(m.kind)
    for t in range(n):
        # rational mode: first nonzero pivot; float: largest magnitude
        pivot_row = None
        if m.kind == RATIONAL:
            for i in range(t, n):
                if a[i][t] != 0:
                    pivot_row = i
                    break
        else:
            best = 0.0
            for i in range(t, n):
                if abs(a[i][t]) > best:
                    best = abs(a[i][t])
                    pivot_row = i
        if pivot_row is None:
            return zero(m.kind)
        if pivot_row != t:
            a[t], a[pivot_row] = a[pivot_row], a[t]
            sign = -sign
        pivot = a[t][t]
        det *= pivot
        for i in range(t + 1, n):
            if a[i][t] == 0:
                continue
            factor = a[i][t] / pivot
            for j in range(t, n):
                a[i][j] -= factor * a[t][j]
    return det if sign == 1 else -det
