"""PSD-specific machinery: Gram factorizations, the tensor-product permanent
formula, alpha-coefficient decompositions, and the PSD Schur inequality.

A PSD matrix enters the rest of the package only as a GramMatrix, i.e.
together with a factor V such that A = V^T V.  That constructor is the PSD
certificate; raw symmetric matrices claiming to be PSD are not accepted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .errors import DimensionMismatch, DimensionTooLarge, ZeroPivot
from .matcore import Matrix, add, delete, matmul, matrix, outer, permanent_ryser, transpose
from .scalars import RATIONAL, Scalar, coerce, eq_scalar, leq_scalar, one, zero

TENSOR_MAX_N = 6
TENSOR_MAX_SPACE = 2_000_000


@dataclass(frozen=True)
class GramMatrix:
    """A = V^T V carried together with its d x n factor V (columns v_1..v_n)."""

    factor: Matrix
    gram: Matrix

    @property
    def n(self) -> int:
        return self.gram.n

    @property
    def d(self) -> int:
        return self.factor.nrows

    def column(self, j: int) -> tuple[Scalar, ...]:
        """Factor column v_j, 1-based."""
        return self.factor.col(j)


@dataclass(frozen=True)
class AlphaCoefficients:
    """Coefficients of per(a*B + xx^T) as a polynomial in a.

    With d = dim(B), coeffs has length d + 1 and coeffs[k] is the
    coefficient of a^(d-k); so coeffs[0] = per(B) and coeffs[k] collects
    the terms using k entries of xx^T.
    """

    n: int
    coeffs: tuple[Scalar, ...]


@dataclass(frozen=True)
class PsdSchurCheck:
    exact: Scalar
    rhs: Scalar
    holds: bool


def gram_from_factor(v: Matrix | Sequence[Sequence]) -> GramMatrix:
    """Build the Gram matrix V^T V from a d x n factor (d >= 1, n >= 1)."""
    if not isinstance(v, Matrix):
        v = matrix(v)
    if v.nrows < 1 or v.ncols < 1:
        raise DimensionMismatch("factor must be at least 1x1")
    return GramMatrix(v, matmul(transpose(v), v))


def permanent_tensor(g: GramMatrix) -> Scalar:
    """per(A) = (1/n!) * || sum over sigma of v_sigma(1) x ... x v_sigma(n) ||^2.

    The tensor lives in a d^n-dimensional space; guarded to n <= 6 and
    d^n <= 2e6.  Exact in rational mode, and manifestly >= 0, which
    certifies non-negativity of PSD permanents.
    """
    n = g.n
    d = g.d
    if n > TENSOR_MAX_N or d ** n > TENSOR_MAX_SPACE:
        raise DimensionTooLarge(f"tensor space d^n = {d}^{n} exceeds the guard")
    kind = g.gram.kind
    cols = [g.column(j) for j in range(1, n + 1)]
    z = zero(kind)
    total = [z] * (d ** n)
    for sigma in permutations(range(n)):
        # accumulate the Kronecker product v_sigma(1) x ... x v_sigma(n)
        vec = [one(kind)]
        for i in range(n):
            v = cols[sigma[i]]
            vec = [a * b for a in vec for b in v]
        for idx, val in enumerate(vec):
            total[idx] += val
    norm_sq = sum((x * x for x in total), start=z)
    if kind == RATIONAL:
        return norm_sq / math.factorial(n)
    return norm_sq / float(math.factorial(n))


def _solve_interpolation(points: list, values: list, kind: str):
    """Solve the Vandermonde system for polynomial coefficients, highest first."""
    m = len(points)
    aug = [[coerce(p, kind) ** (m - 1 - j) for j in range(m)] + [values[i]]
           for i, p in enumerate(points)]
    for col in range(m):
        pivot_row = next(r for r in range(col, m) if aug[r][col] != 0)
        aug[col], aug[pivot_row] = aug[pivot_row], aug[col]
        pivot = aug[col][col]
        for r in range(m):
            if r == col:
                continue
            factor = aug[r][col] / pivot
            if factor == 0:
                continue
            for c in range(col, m + 1):
                aug[r][c] -= factor * aug[col][c]
    return [aug[r][m] / aug[r][r] for r in range(m)]


def alpha_coefficients(b: Matrix, x: Sequence[Scalar]) -> AlphaCoefficients:
    """Recover the coefficients of per(a*B + xx^T) by exact interpolation.

    The permanent is evaluated at the d + 1 sample points a = 1, ..., d+1
    and the Vandermonde system is solved exactly (rational mode).  The
    leading coefficient is per(B); the next one is
    sum_{i,j} x_i x_j per(B_{i,j}).
    """
    d = b.n
    kind = b.kind
    if len(x) != d:
        raise DimensionMismatch(f"x must have length {d}")
    xx = outer(x, x, kind)
    points = list(range(1, d + 2))
    values = []
    for a in points:
        scaled = Matrix(
            tuple(tuple(coerce(a, kind) * v for v in row) for row in b.entries), kind
        )
        values.append(permanent_ryser(add(scaled, xx)))
    coeffs = _solve_interpolation(points, values, kind)
    return AlphaCoefficients(d, tuple(coeffs))


def psd_schur_check(g: GramMatrix) -> PsdSchurCheck:
    """Check per(gram) <= a * per(B + xx^T / a) for the last-pivot split.

    gram is split as [[B, x], [x^T, a]] with a the last diagonal entry.
    Also asserts the exact Laplace identity per(gram) = a*alpha_0 + alpha_1
    where alpha are the coefficients of per(a*B + xx^T).
    """
    gram = g.gram
    n = gram.n
    if n < 2:
        raise DimensionMismatch("need n >= 2 to split off the last pivot")
    a = gram.entries[n - 1][n - 1]
    if a == 0:
        raise ZeroPivot(n)
    kind = gram.kind
    b = delete(gram, (n,), (n,))
    x = [gram.entries[i][n - 1] for i in range(n - 1)]
    exact = permanent_ryser(gram)
    corrected = add(b, outer(x, [coerce(v, kind) / a for v in x], kind))
    rhs = a * permanent_ryser(corrected)
    alpha = alpha_coefficients(b, x).coeffs
    expansion = a * alpha[0] + (alpha[1] if len(alpha) > 1 else zero(kind))
    if not eq_scalar(exact, expansion, kind):
        raise AssertionError(
            f"alpha expansion mismatch: per = {exact}, a*alpha0 + alpha1 = {expansion}"
        )
    return PsdSchurCheck(exact, rhs, leq_scalar(exact, rhs, kind))


def is_psd_exact(m: Matrix) -> bool:
    """Exact PSD test for symmetric rational matrices, no square roots.

    Recursive symmetric elimination: a negative pivot refutes PSD-ness; a
    zero pivot with a nonzero row refutes it; a zero pivot with a zero row
    is skipped; otherwise the Schur complement is PSD iff the input is.
    """
    if m.kind != RATIONAL:
        raise ValueError("exact PSD test requires rational entries")
    n = m.n
    rows = [list(r) for r in m.entries]
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                return False
    idx = list(range(n))
    while idx:
        t = idx[0]
        pivot = rows[t][t]
        if pivot < 0:
            return False
        if pivot == 0:
            if any(rows[t][j] != 0 for j in idx):
                return False
            idx = idx[1:]
            continue
        rest = idx[1:]
        for i in rest:
            for j in rest:
                rows[i][j] -= rows[i][t] * rows[t][j] / pivot
        idx = rest
    return True
