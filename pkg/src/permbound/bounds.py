"""Derived bound machinery on top of the process.

Recursive majorants and their certificates, the diagonal-dominance
guarantee, the exponential family with its closed form, the boundedness
function B(n, k, t) = n! * M^(n+k) * (M+1)^(t-1) with its entry/ratio/cycle
checks, and the product-of-row-sums baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Sequence

from .errors import (
    ConditionViolated,
    DimensionMismatch,
    NegativeEntry,
    ParameterOutOfRange,
    PreconditionViolated,
    ZeroPermanent,
    ZeroPivot,
)
from .matcore import IndexSet, Matrix, permanent_ryser, select
from .process import ProcessTrace, recursive_u, run_process
from .scalars import FLOAT64, RATIONAL, Scalar, coerce, eq_scalar, leq_scalar, one, zero


@dataclass(frozen=True)
class MajorantCertificate:
    """A candidate majorant b for a, with the claimed mode and verification flag.

    mode "inequality" claims a_{i,j} + sum_{s<min(i,j)} b_{i,s} b_{s,j} / a_{s,s}
    <= b_{i,j} everywhere; mode "equality" claims the recursion holds with
    equality (the solve_majorant output).  verified is set only by
    verify_majorant.
    """

    a: Matrix
    b: Matrix
    mode: str = "inequality"
    verified: bool = False


@dataclass(frozen=True)
class BoundFunction:
    """B(n, k, t) = n! * M^(n+k) * (M+1)^(t-1), increasing in every argument."""

    n: int
    M: Scalar

    def __post_init__(self):
        if self.n < 1:
            raise ParameterOutOfRange(f"n = {self.n} must be >= 1")
        if self.M < 1:
            raise ParameterOutOfRange(f"M = {self.M} must be >= 1")

    def __call__(self, k: int, t: int) -> Scalar:
        if k < 1 or t < 1:
            raise ParameterOutOfRange(f"k = {k}, t = {t} must be >= 1")
        return math.factorial(self.n) * self.M ** (self.n + k) * (self.M + 1) ** (t - 1)

    def gamma(self, m: int) -> Scalar:
        """gamma_m = m! * M^m, the dimension-m permanent cap."""
        if m < 0:
            raise ParameterOutOfRange(f"m = {m} must be >= 0")
        return math.factorial(m) * self.M ** m


@dataclass(frozen=True)
class BoundReport:
    """Per-matrix record of the computed bounds and tightness ratios."""

    matrix_id: str
    n: int
    process_bound: Scalar
    rowsum_bound: Scalar
    exact_perm: Scalar | None = None

    @property
    def process_over_exact(self) -> Scalar | None:
        if self.exact_perm in (None, 0):
            return None
        return self.process_bound / self.exact_perm

    @property
    def rowsum_over_exact(self) -> Scalar | None:
        if self.exact_perm in (None, 0):
            return None
        return self.rowsum_bound / self.exact_perm


@dataclass(frozen=True)
class DiagDominanceResult:
    certified: bool
    bound: Scalar | None
    eps: Scalar
    violation: tuple[int, int] | None = None


@dataclass(frozen=True)
class RatioCheck:
    ratio: Scalar
    bound: Scalar
    holds: bool


def rowsum_bound(a: Matrix) -> Scalar:
    """Product of row sums; the baseline upper bound for non-negative a."""
    kind = a.kind
    total = one(kind)
    for row in a.entries:
        total *= sum(row, start=zero(kind))
    return total


def _majorant_lhs(a_rows, b_rows, i: int, j: int, kind: str) -> Scalar:
    cut = min(i, j)
    return a_rows[i][j] + sum(
        (b_rows[i][s] * b_rows[s][j] / a_rows[s][s] for s in range(cut)),
        start=zero(kind),
    )


def verify_majorant(cert: MajorantCertificate) -> MajorantCertificate:
    """Check the majorant recursion condition at every entry and mark verified.

    On success the theorem's consequence u <= b entrywise is also asserted
    against recursive_u.  The first failing entry raises
    ConditionViolated(i, j) (1-based).
    """
    a, b = cert.a, cert.b
    if a.n != b.n:
        raise DimensionMismatch(f"a is {a.n}x{a.n} but b is {b.n}x{b.n}")
    if not a.is_nonneg() or not b.is_nonneg():
        raise NegativeEntry("majorant certificates require non-negative matrices")
    if cert.mode not in ("inequality", "equality"):
        raise ParameterOutOfRange(f"unknown certificate mode {cert.mode!r}")
    n = a.n
    kind = a.kind
    for s in range(n - 1):
        if a.entries[s][s] == 0:
            raise ZeroPivot(s + 1)
    for i in range(n):
        for j in range(n):
            lhs = _majorant_lhs(a.entries, b.entries, i, j, kind)
            ok = (
                eq_scalar(lhs, b.entries[i][j], kind)
                if cert.mode == "equality"
                else leq_scalar(lhs, b.entries[i][j], kind)
            )
            if not ok:
                raise ConditionViolated(i + 1, j + 1)
    u = recursive_u(a).entries
    for i in range(n):
        for j in range(n):
            assert leq_scalar(u[i][j], b.entries[i][j], kind), (
                f"u exceeds the verified majorant at ({i + 1}, {j + 1})"
            )
    return replace(cert, verified=True)


def solve_majorant(a: Matrix) -> Matrix:
    """Solve the equality form of the majorant recursion.

    b_{i,j} = a_{i,j} + sum_{s < min(i,j)} b_{i,s} b_{s,j} / a_{s,s}; note
    the denominators are the original diagonal entries, so b dominates the
    process values u and per(A) <= prod b_{i,i}.
    """
    n = a.n
    if not a.is_nonneg():
        raise NegativeEntry("solve_majorant requires a non-negative matrix")
    for s in range(n - 1):
        if a.entries[s][s] == 0:
            raise ZeroPivot(s + 1)
    rows = a.entries
    b = [[None] * n for _ in range(n)]
    for m0 in range(n):
        for j in range(m0, n):
            b[m0][j] = _majorant_lhs(rows, b, m0, j, a.kind)
        for i in range(m0 + 1, n):
            b[i][m0] = _majorant_lhs(rows, b, i, m0, a.kind)
    return Matrix(tuple(tuple(r) for r in b), a.kind)


def diag_dominance_certify(a: Matrix, eps: Scalar) -> DiagDominanceResult:
    """Check the diagonal-dominance condition and produce the (1+eps)^n bound.

    Condition at every (i, j): (1+eps)^2/eps * sum_{s < min(i,j)}
    a_{i,s} a_{s,j} / a_{s,s} <= a_{i,j}.  When it holds everywhere the
    certified bound is (1+eps)^n * prod a_{i,i}, and both per(A) and the
    process bound stay below it.  A violation is reported (first one in
    row-major order), not raised.
    """
    n = a.n
    kind = a.kind
    e = coerce(eps, kind)
    if e <= 0:
        raise ParameterOutOfRange(f"eps must be > 0, got {eps}")
    if not a.is_nonneg():
        raise NegativeEntry("diagonal dominance requires a non-negative matrix")
    for s in range(n):
        if a.entries[s][s] == 0:
            raise ZeroPivot(s + 1, f"zero diagonal entry at ({s + 1}, {s + 1})")
    factor = (1 + e) ** 2 / e
    rows = a.entries
    for i in range(n):
        for j in range(n):
            cross = sum(
                (rows[i][s] * rows[s][j] / rows[s][s] for s in range(min(i, j))),
                start=zero(kind),
            )
            if not leq_scalar(factor * cross, rows[i][j], kind):
                return DiagDominanceResult(False, None, e, (i + 1, j + 1))
    bound = (1 + e) ** n
    for s in range(n):
        bound *= rows[s][s]
    return DiagDominanceResult(True, bound, e)


def bound_function(n: int, M: Scalar, k: int, t: int) -> Scalar:
    """B(n, k, t) = n! * M^(n+k) * (M+1)^(t-1)."""
    return BoundFunction(n, M)(k, t)


def entry_bound_check(a: Matrix, M: Scalar, trace: ProcessTrace | None = None):
    """Scan process snapshots for entries exceeding B(n, 1, t).

    Requires unit diagonal and entries in [0, M].  Checks
    a^(t)_{i,j} <= B(n, 1, t) for every t <= min(i, j); returns None or the
    first violating (i, j, t), smallest t first then row-major.
    """
    n = a.n
    _require_unit_diagonal_bounded(a, M)
    if trace is None:
        trace = run_process(a, keep_snapshots=True)
    bf = BoundFunction(n, M)
    for t in range(1, n + 1):
        cap = bf(1, t)
        snap = trace.snapshot(t).entries
        for i in range(n):
            for j in range(n):
                if t <= min(i + 1, j + 1) and not leq_scalar(snap[i][j], cap, a.kind):
                    return (i + 1, j + 1, t)
    return None


def _require_unit_diagonal_bounded(a: Matrix, M: Scalar):
    n = a.n
    if M < 1:
        raise ParameterOutOfRange(f"M = {M} must be >= 1")
    for i in range(n):
        if not eq_scalar(a.entries[i][i], 1, a.kind):
            raise PreconditionViolated(f"diagonal entry ({i + 1}, {i + 1}) is not 1")
    for i in range(n):
        for j in range(n):
            x = a.entries[i][j]
            if x < 0 or not leq_scalar(x, M, a.kind):
                raise PreconditionViolated(
                    f"entry ({i + 1}, {j + 1}) = {x} outside [0, {M}]"
                )


def _full_cycles(members: Sequence[int]):
    """All |S|-cycles on S as {i: sigma(i)} maps; (|S|-1)! of them."""
    first, rest = members[0], members[1:]
    for tail in permutations(rest):
        cyc = {}
        cur = first
        for nxt in tail:
            cyc[cur] = nxt
            cur = nxt
        cyc[cur] = first
        yield cyc


def cycle_sum_ratio(
    a: Matrix,
    t: int,
    s: Iterable[int] | IndexSet,
    i0: int,
    M: Scalar,
    trace: ProcessTrace | None = None,
) -> RatioCheck:
    """The cycle-sum to sub-permanent ratio at step t, against B(n, |S|, t).

    ratio = (sum over full cycles sigma of S of prod_{i in S} a^(t)_{i, sigma(i)})
            / per(A^(t)(S - i0, S - i0)).

    S must lie in {t+1, ..., n} with |S| >= 2 and i0 in S; the matrix must
    have unit diagonal and entries in [0, M].
    """
    n = a.n
    _require_unit_diagonal_bounded(a, M)
    ss = IndexSet.of(s)
    if len(ss) < 2:
        raise ParameterOutOfRange(f"|S| = {len(ss)} must be >= 2")
    if t < 1 or any(m <= t or m > n for m in ss):
        raise ParameterOutOfRange(f"S = {ss.members} must lie within {{{t + 1}, ..., {n}}}")
    if i0 not in ss:
        raise ParameterOutOfRange(f"i0 = {i0} is not in S = {ss.members}")
    if trace is None:
        trace = run_process(a, keep_snapshots=True)
    snap = trace.snapshot(t).entries
    kind = a.kind
    num = zero(kind)
    for cyc in _full_cycles(ss.members):
        term = one(kind)
        for i in ss:
            term *= snap[i - 1][cyc[i] - 1]
        num += term
    rest = tuple(m for m in ss.members if m != i0)
    den = permanent_ryser(select(trace.snapshot(t), rest, rest))
    if den == 0:
        raise ZeroPermanent(f"per(A^({t})(S - i0, S - i0)) = 0")
    ratio = num / den
    cap = BoundFunction(n, M)(len(ss), t)
    return RatioCheck(ratio, cap, leq_scalar(ratio, cap, kind))


def perm_ratio_check(
    a: Matrix, s: Iterable[int] | IndexSet, i: int, j: int, M: Scalar
) -> RatioCheck:
    """per(A(S+i, S+j)) / per(A(S, S)) against gamma_{|S|+1} = (|S|+1)! M^(|S|+1).

    i and j must lie outside S (i = j is fine); unit diagonal makes the
    denominator >= 1, so ZeroPermanent cannot actually fire here.
    """
    n = a.n
    _require_unit_diagonal_bounded(a, M)
    ss = IndexSet.of(s)
    if any(m > n for m in ss):
        raise ParameterOutOfRange(f"S = {ss.members} must lie within [1, {n}]")
    if i in ss or j in ss or not (1 <= i <= n and 1 <= j <= n):
        raise ParameterOutOfRange(f"i = {i}, j = {j} must lie in [1, {n}] outside S")
    den = permanent_ryser(select(a, ss, ss))
    if den == 0:
        raise ZeroPermanent("per(A(S, S)) = 0")
    num = permanent_ryser(select(a, ss.members + (i,), ss.members + (j,)))
    ratio = num / den
    cap = BoundFunction(n, M).gamma(len(ss) + 1)
    return RatioCheck(ratio, cap, leq_scalar(ratio, cap, a.kind))


def _family_scalar(c) -> tuple[Scalar, str]:
    if isinstance(c, float):
        return c, FLOAT64
    return Fraction(c), RATIONAL


def exp_family(n: int, c) -> Matrix:
    """The family (A_n)_{i,j} = c^(-|i-j|); rational when c is, float otherwise."""
    if n < 1:
        raise ParameterOutOfRange(f"n = {n} must be >= 1")
    cc, kind = _family_scalar(c)
    if cc <= 0:
        raise ParameterOutOfRange(f"c = {c} must be > 0")
    powers = [one(kind)]
    for _ in range(n - 1):
        powers.append(powers[-1] / cc)
    return Matrix(
        tuple(tuple(powers[abs(i - j)] for j in range(n)) for i in range(n)), kind
    )


def exp_family_closed_form(n: int, c) -> Matrix:
    """The closed form of the process output on exp_family(n, c).

    Entry (i, j) is c^(-|i-j|) * (1 + sum_{k=1}^{min(i,j)-1} 2^(k-1) c^(-2k));
    equals run_process(exp_family(n, c)).snapshot(n) entrywise.
    """
    if n < 1:
        raise ParameterOutOfRange(f"n = {n} must be >= 1")
    cc, kind = _family_scalar(c)
    if cc <= 0:
        raise ParameterOutOfRange(f"c = {c} must be > 0")
    inv2 = 1 / (cc * cc)
    prefix = [one(kind)]  # prefix[m] = 1 + sum_{k=1..m} 2^(k-1) c^(-2k)
    term = inv2
    for _ in range(n - 1):
        prefix.append(prefix[-1] + term)
        term *= 2 * inv2
    powers = [one(kind)]
    for _ in range(n - 1):
        powers.append(powers[-1] / cc)
    return Matrix(
        tuple(
            tuple(powers[abs(i - j)] * prefix[min(i, j)] for j in range(n))
            for i in range(n)
        ),
        kind,
    )
