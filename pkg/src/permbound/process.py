"""The permanent process and its relatives.

The process runs the Gaussian elimination pattern with a sign flip: for
t = 1..n-1 and i, j > t it performs

    a_{i,j} <- a_{i,j} + a_{i,t} * a_{t,j} / a_{t,t}

and the product of the resulting diagonal pivots upper-bounds per(A) for
non-negative and for PSD inputs.  The minus-variant (honest column-wise
Gaussian elimination) reproduces det(A) exactly and serves as a sanity
anchor.  The u-recursion is the closed dynamic program for the same values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidGram, NegativeInput, ParameterOutOfRange, ZeroPermanent, ZeroPivot
from .matcore import Matrix, permanent_ryser, select
from .psd import GramMatrix
from .scalars import FLOAT64, RATIONAL, Scalar, leq_scalar, one


@dataclass(frozen=True)
class ProcessTrace:
    """Pivots (and optionally the matrices A^(1)..A^(n)) of one run.

    pivots[t-1] is a^(t)_{t,t}, which the process never touches again, so
    it also equals the final diagonal.  snapshots, when kept, hold the n
    states A^(1) (the input) through A^(n) (the final matrix).
    """

    n: int
    pivots: tuple[Scalar, ...]
    arithmetic: str
    ordering: tuple[int, ...] | None = None
    snapshots: tuple[Matrix, ...] | None = None

    @property
    def bound(self) -> Scalar:
        return math.prod(self.pivots, start=one(self.arithmetic))

    def snapshot(self, t: int) -> Matrix:
        """A^(t), 1-based; requires the run to have kept snapshots."""
        if self.snapshots is None:
            raise ValueError("run_process was called without keep_snapshots")
        if not 1 <= t <= self.n:
            raise ParameterOutOfRange(f"snapshot index {t} outside [1, {self.n}]")
        return self.snapshots[t - 1]


@dataclass(frozen=True)
class UMatrix:
    """The values u_{i,j} = a^(min(i,j))_{i,j} from the closed recursion."""

    matrix: Matrix

    @property
    def n(self) -> int:
        return self.matrix.n

    @property
    def entries(self) -> tuple[tuple[Scalar, ...], ...]:
        return self.matrix.entries


@dataclass(frozen=True)
class PivotBoundCheck:
    t: int
    pivot: Scalar
    ratio: Scalar
    holds: bool


def _check_ordering(ordering, n: int) -> tuple[int, ...] | None:
    if ordering is None:
        return None
    perm = tuple(ordering)
    if sorted(perm) != list(range(1, n + 1)):
        raise ParameterOutOfRange(f"ordering {perm} is not a permutation of 1..{n}")
    return perm


def _permute(m: Matrix, perm: tuple[int, ...]) -> Matrix:
    rows = tuple(
        tuple(m.entries[pi - 1][pj - 1] for pj in perm) for pi in perm
    )
    return Matrix(rows, m.kind)


def _psd_zero_pivot_ok(a, t0: int, n: int) -> bool:
    return all(a[i][t0] == 0 and a[t0][i] == 0 for i in range(t0 + 1, n))


def _sweep_rational(rows, n: int, psd_mode: bool, keep: bool):
    a = [list(r) for r in rows]
    snaps = [tuple(tuple(r) for r in a)] if keep else None
    for t0 in range(n - 1):
        p = a[t0][t0]
        if p == 0:
            if not psd_mode:
                raise ZeroPivot(t0 + 1)
            if not _psd_zero_pivot_ok(a, t0, n):
                raise InvalidGram(f"zero pivot with nonzero row/column at step {t0 + 1}")
        else:
            row_t = a[t0]
            for i in range(t0 + 1, n):
                lead = a[i][t0]
                if lead == 0:
                    continue
                f = lead / p
                ai = a[i]
                for j in range(t0 + 1, n):
                    ai[j] += f * row_t[j]
        if keep:
            snaps.append(tuple(tuple(r) for r in a))
    pivots = tuple(a[t][t] for t in range(n))
    return pivots, snaps


def _sweep_float(rows, n: int, psd_mode: bool, keep: bool):
    arr = np.array([[float(x) for x in r] for r in rows], dtype=np.float64)
    snaps = [arr.copy()] if keep else None
    for t in range(n - 1):
        p = arr[t, t]
        if p == 0.0:
            if not psd_mode:
                raise ZeroPivot(t + 1)
            if np.any(arr[t + 1:, t] != 0.0) or np.any(arr[t, t + 1:] != 0.0):
                raise InvalidGram(f"zero pivot with nonzero row/column at step {t + 1}")
        else:
            arr[t + 1:, t + 1:] += np.outer(arr[t + 1:, t], arr[t, t + 1:]) / p
        if keep:
            snaps.append(arr.copy())
    pivots = tuple(float(arr[t, t]) for t in range(n))
    if keep:
        snaps = [Matrix(tuple(tuple(row) for row in s.tolist()), FLOAT64) for s in snaps]
    return pivots, snaps


def run_process(
    a: Matrix | GramMatrix,
    keep_snapshots: bool = False,
    ordering=None,
) -> ProcessTrace:
    """Run the permanent process (Algorithm with the PLUS update).

    Accepts a non-negative Matrix, or a GramMatrix as the PSD certificate
    (raw symmetric matrices claiming PSD-ness are rejected).  A zero pivot
    raises ZeroPivot for non-negative inputs; for PSD inputs a zero pivot
    with zero row/column skips the step, and a nonzero row/column raises
    InvalidGram since it contradicts PSD-ness.

    ordering, when given, is a permutation of 1..n: entry (i, j) of the
    processed matrix is a_{ordering[i], ordering[j]}.  The permanent is
    invariant under this relabeling; the bound is not.
    """
    if isinstance(a, GramMatrix):
        m, psd_mode = a.gram, True
    elif isinstance(a, Matrix):
        m, psd_mode = a, False
        if not m.is_nonneg():
            raise NegativeInput(
                "run_process needs a non-negative matrix or a GramMatrix certificate"
            )
    else:
        raise TypeError(f"expected Matrix or GramMatrix, got {type(a).__name__}")
    n = m.n
    perm = _check_ordering(ordering, n)
    if perm is not None:
        m = _permute(m, perm)
    sweep = _sweep_rational if m.kind == RATIONAL else _sweep_float
    pivots, snaps = sweep(m.entries, n, psd_mode, keep_snapshots)
    if m.kind == RATIONAL and keep_snapshots:
        snaps = [Matrix(s, RATIONAL) for s in snaps]
    return ProcessTrace(
        n=n,
        pivots=pivots,
        arithmetic=m.kind,
        ordering=perm,
        snapshots=tuple(snaps) if keep_snapshots else None,
    )


def process_bound(a: Matrix | GramMatrix) -> Scalar:
    """Product of the process pivots; upper-bounds per(A)."""
    return run_process(a).bound


def run_gaussian_variant(a: Matrix, keep_snapshots: bool = False) -> ProcessTrace:
    """The minus-variant: column-wise Gaussian elimination without pivoting.

    Updates a_{i,j} <- a_{i,j} - a_{i,t} * a_{t,j} / a_{t,t} for j > t and
    every row i, producing a lower-triangular final matrix whose diagonal
    product is det(A) exactly in rational mode.  Any square input is
    accepted; a zero pivot is an error (no pivoting is performed).
    """
    n = a.n
    rows = [list(r) for r in a.entries]
    snaps = [tuple(tuple(r) for r in rows)] if keep_snapshots else None
    for t0 in range(n - 1):
        p = rows[t0][t0]
        if p == 0:
            raise ZeroPivot(t0 + 1)
        row_t = list(rows[t0])  # step-start values; row t itself is zeroed below
        for i in range(n):
            lead = rows[i][t0]
            if lead == 0:
                continue
            f = lead / p
            ri = rows[i]
            for j in range(t0 + 1, n):
                ri[j] -= f * row_t[j]
        if keep_snapshots:
            snaps.append(tuple(tuple(r) for r in rows))
    pivots = tuple(rows[t][t] for t in range(n))
    if keep_snapshots:
        snaps = tuple(Matrix(s, a.kind) for s in snaps)
    return ProcessTrace(
        n=n, pivots=pivots, arithmetic=a.kind, ordering=None,
        snapshots=snaps if keep_snapshots else None,
    )


def recursive_u(a: Matrix) -> UMatrix:
    """The closed recursion u_{i,j} = a_{i,j} + sum_{s < min(i,j)} u_{i,s} u_{s,j} / u_{s,s}.

    Equals the process values a^(min(i,j))_{i,j} entrywise, hence also the
    final matrix A^(n).  The sum runs to min(i,j) - 1; see the process
    equivalence test.
    """
    n = a.n
    if not a.is_nonneg():
        raise NegativeInput("the u-recursion is defined for non-negative matrices")
    rows = a.entries
    u = [[None] * n for _ in range(n)]
    for m0 in range(n):
        for j in range(m0, n):
            u[m0][j] = rows[m0][j] + sum(
                u[m0][s] * u[s][j] / u[s][s] for s in range(m0)
            )
        for i in range(m0 + 1, n):
            u[i][m0] = rows[i][m0] + sum(
                u[i][s] * u[s][m0] / u[s][s] for s in range(m0)
            )
        if u[m0][m0] == 0 and m0 < n - 1:
            raise ZeroPivot(m0 + 1)
    return UMatrix(Matrix(tuple(tuple(r) for r in u), a.kind))


def pivot_lower_bound_check(a: Matrix | GramMatrix) -> tuple[PivotBoundCheck, ...]:
    """Check pivot_t >= per(A^(t)(-[t-1], -[t-1])) / per(A^(t+1)(-[t], -[t])).

    The t = n denominator is the empty permanent 1, so the ratios telescope
    to per(A) and the per-step checks compose into the headline bound.
    """
    trace = run_process(a, keep_snapshots=True)
    n = trace.n
    kind = trace.arithmetic
    out = []
    for t in range(1, n + 1):
        trailing = range(t, n + 1)
        num = permanent_ryser(select(trace.snapshot(t), trailing, trailing))
        if t < n:
            rest = range(t + 1, n + 1)
            den = permanent_ryser(select(trace.snapshot(t + 1), rest, rest))
        else:
            den = one(kind)
        if den == 0:
            raise ZeroPermanent(f"zero denominator permanent at step {t}")
        ratio = num / den
        pivot = trace.pivots[t - 1]
        out.append(PivotBoundCheck(t, pivot, ratio, leq_scalar(ratio, pivot, kind)))
    return tuple(out)
