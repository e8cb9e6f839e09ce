"""Command line front end.

    permbound bound  INPUT [flags]      one JSON report for one matrix
    permbound family NAME key=val ...   JSON-lines reports for a family
    permbound verify INPUT --suite S    PASS/FAIL property checks

Reports serialize every numeric field as a string ("p/q" for rationals,
decimal for floats) and are byte-identical across runs; timing is opt-in
via --timing since it would break that determinism.  Exit codes: 0 ok,
1 check failed, 2 input error, 3 numeric error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations
from pathlib import Path

from .bounds import (
    MajorantCertificate,
    cycle_sum_ratio,
    diag_dominance_certify,
    entry_bound_check,
    exp_family,
    perm_ratio_check,
    rowsum_bound,
    verify_majorant,
)
from .errors import (
    ConditionViolated,
    DimensionMismatch,
    DimensionTooLarge,
    IndexOutOfRange,
    InvalidGram,
    NegativeEntry,
    NegativeInput,
    NotSquare,
    ParameterOutOfRange,
    ParseError,
    PermboundError,
    PreconditionViolated,
    ZeroPermanent,
    ZeroPivot,
)
from .matcore import (
    Matrix,
    RYSER_MAX_FLOAT,
    RYSER_MAX_RATIONAL,
    ones,
    permanent_ryser,
)
from .matio import ParsedMatrix, as_subject, matrix_as_strings, parse_matrix_file, to_kind
from .permschur import BlockSplit, condense, rank1_update_permanent, row_uncrossing_sides, schur_permanent_bound, two_row_inequality_sides
from .perminv import check_identity_dominance
from .process import run_process
from .psd import GramMatrix, TENSOR_MAX_N, TENSOR_MAX_SPACE, alpha_coefficients, gram_from_factor, permanent_tensor, psd_schur_check
from .scalars import FLOAT64, RATIONAL, eq_scalar, format_scalar, leq_scalar

OK, CHECK_FAILED, INPUT_ERROR, NUMERIC_ERROR = 0, 1, 2, 3

RATIONAL_DEFAULT_MAX_N = 12

_INPUT_ERRORS = (
    ParseError,
    NegativeInput,
    NegativeEntry,
    ParameterOutOfRange,
    PreconditionViolated,
    InvalidGram,
    NotSquare,
    IndexOutOfRange,
    DimensionMismatch,
)
_NUMERIC_ERRORS = (ZeroPivot, ZeroPermanent, DimensionTooLarge)


def _error_exit(exc: Exception) -> int:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    if isinstance(exc, _INPUT_ERRORS):
        return INPUT_ERROR
    if isinstance(exc, _NUMERIC_ERRORS):
        return NUMERIC_ERROR
    return CHECK_FAILED


def _pick_arithmetic(flag: str | None, n: int) -> str:
    if flag:
        return RATIONAL if flag == "rational" else FLOAT64
    return RATIONAL if n <= RATIONAL_DEFAULT_MAX_N else FLOAT64


def _parse_eps(text: str, kind: str):
    value = Fraction(text)
    return value if kind == RATIONAL else float(value)


def _fmt(x, kind: str) -> str:
    return format_scalar(x, kind)


def _build_report(
    parsed: ParsedMatrix,
    arithmetic: str,
    exact_max: int,
    ordering=None,
    eps: str | None = None,
    want_snapshots: bool = False,
    want_timing: bool = False,
) -> dict:
    started = time.perf_counter()
    subject = as_subject(parsed, arithmetic)
    m = subject.gram if isinstance(subject, GramMatrix) else subject
    trace = run_process(subject, keep_snapshots=want_snapshots, ordering=ordering)
    report = {
        "id": parsed.matrix_id,
        "n": m.n,
        "arithmetic": arithmetic,
        "process_bound": _fmt(trace.bound, arithmetic),
        "rowsum_bound": _fmt(rowsum_bound(m), arithmetic),
        "ratios": None,
    }
    guard = RYSER_MAX_RATIONAL if arithmetic == RATIONAL else RYSER_MAX_FLOAT
    if m.n <= min(exact_max, guard):
        exact = permanent_ryser(m)
        report["exact_perm"] = _fmt(exact, arithmetic)
        if exact != 0:
            report["ratios"] = {
                "process_over_exact": _fmt(trace.bound / exact, arithmetic),
                "rowsum_over_exact": _fmt(rowsum_bound(m) / exact, arithmetic),
            }
    if eps is not None:
        res = diag_dominance_certify(m, _parse_eps(eps, arithmetic))
        report["diag_dominance"] = {
            "eps": _fmt(res.eps, arithmetic),
            "certified": res.certified,
            "bound": None if res.bound is None else _fmt(res.bound, arithmetic),
        }
        if res.violation is not None:
            report["diag_dominance"]["violation"] = list(res.violation)
    if want_snapshots:
        report["snapshots"] = [matrix_as_strings(s) for s in trace.snapshots]
    if want_timing:
        report["elapsed_ms"] = int((time.perf_counter() - started) * 1000)
    return report


def _emit(lines: list[str], out: str | None):
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_bound(args) -> int:
    parsed = parse_matrix_file(args.input)
    arithmetic = _pick_arithmetic(args.arithmetic, parsed.matrix.n)
    ordering = None
    if args.ordering:
        try:
            ordering = tuple(int(p) for p in args.ordering.split(","))
        except ValueError as exc:
            raise ParseError(f"bad --ordering {args.ordering!r}") from exc
    report = _build_report(
        parsed,
        arithmetic,
        args.exact_max,
        ordering=ordering,
        eps=args.eps,
        want_snapshots=args.snapshots,
        want_timing=args.timing,
    )
    _emit([json.dumps(report, sort_keys=True)], args.out)
    return OK


def _family_instances(name: str, params: dict[str, str], count: int):
    """Yield (ParsedMatrix, eps-or-None) pairs for a named family."""
    def need(key):
        if key not in params:
            raise ParameterOutOfRange(f"family {name!r} needs parameter {key}=...")
        return params[key]

    def intval(key):
        try:
            return int(need(key))
        except ValueError as exc:
            raise ParameterOutOfRange(f"{key} must be an integer") from exc

    known = {"exp": {"n", "c"}, "allones": {"n"}, "random-dd": {"n", "eps", "delta", "seed"}}
    if name not in known:
        raise ParameterOutOfRange(f"unknown family {name!r}")
    extra = set(params) - known[name]
    if extra:
        raise ParameterOutOfRange(f"unknown parameters for {name!r}: {sorted(extra)}")
    if count < 1:
        raise ParameterOutOfRange("count must be >= 1")
    if name == "exp":
        n = intval("n")
        c = Fraction(need("c"))
        ident = f"exp(n={n},c={need('c')})"
        yield ParsedMatrix(ident, "nonneg", exp_family(n, c)), None
        return
    if name == "allones":
        n = intval("n")
        if n < 1:
            raise ParameterOutOfRange(f"n = {n} must be >= 1")
        yield ParsedMatrix(f"allones(n={n})", "nonneg", ones(n)), None
        return
    # random-dd: unit diagonal, off-diagonal entries delta * r with random
    # r in {3/4, 13/16, 7/8, 15/16, 1}, which keeps the Thm 1.4 condition
    # satisfiable for small enough delta while varying with the seed.
    n = intval("n")
    if n < 1:
        raise ParameterOutOfRange(f"n = {n} must be >= 1")
    eps = need("eps")
    delta = Fraction(need("delta"))
    if delta < 0:
        raise ParameterOutOfRange(f"delta = {delta} must be >= 0")
    seed = intval("seed")
    for idx in range(count):
        rng = random.Random(seed + idx)
        rows = [
            [
                Fraction(1) if i == j else delta * Fraction(12 + rng.randint(0, 4), 16)
                for j in range(n)
            ]
            for i in range(n)
        ]
        ident = f"random-dd(n={n},eps={eps},delta={delta},seed={seed + idx})"
        yield ParsedMatrix(ident, "nonneg", Matrix(tuple(tuple(r) for r in rows), RATIONAL)), eps


def cmd_family(args) -> int:
    params = {}
    for item in args.params:
        if "=" not in item:
            raise ParameterOutOfRange(f"family parameters look like key=value, got {item!r}")
        key, value = item.split("=", 1)
        params[key] = value
    instances = list(_family_instances(args.name, params, args.count))
    workers = max(1, int(os.environ.get("PERMBOUND_THREADS", "1") or "1"))

    def build(pair):
        parsed, eps = pair
        arithmetic = _pick_arithmetic(args.arithmetic, parsed.matrix.n)
        return json.dumps(
            _build_report(parsed, arithmetic, args.exact_max, eps=eps,
                          want_timing=args.timing),
            sort_keys=True,
        )

    if workers == 1:
        lines = [build(pair) for pair in instances]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            lines = list(pool.map(build, instances))
    _emit(lines, args.out)
    return OK


class _Suite:
    """Accumulates PASS/FAIL/SKIP lines for cmd_verify."""

    def __init__(self):
        self.lines: list[str] = []
        self.failed = False

    def run(self, name: str, fn):
        try:
            detail = fn()
        except ConditionViolated as exc:
            self.failed = True
            self.lines.append(f"FAIL {name}: {exc}")
            return
        if detail is None:
            self.lines.append(f"PASS {name}")
        else:
            self.failed = True
            self.lines.append(f"FAIL {name}: {detail}")

    def skip(self, name: str, reason: str):
        self.lines.append(f"SKIP {name}: {reason}")


def _check_schur(suite: _Suite, m: Matrix):
    n = m.n

    def rank1():
        if n < 2:
            return None
        split = BlockSplit(m, n - 1)
        x = [m.entries[n - 1][c] for c in range(n - 1)]
        y = [m.entries[r][n - 1] for r in range(n - 1)]
        pair = rank1_update_permanent(split.b, x, y, m.entries[n - 1][n - 1])
        if not pair.holds:
            return f"lhs {pair.lhs} != rhs {pair.rhs}"
        return None

    def schur_bound():
        for d in range(1, n):
            pair = schur_permanent_bound(BlockSplit(m, d))
            if not pair.holds:
                return f"exact > bound at d = {d}"
            if d == n - 1 and not eq_scalar(pair.lhs, pair.rhs, m.kind):
                return f"k = 1 split not an equality: {pair.lhs} vs {pair.rhs}"
        return None

    def dominance():
        return None if check_identity_dominance(m).holds else "a product fails to dominate I"

    if n >= 2:
        suite.run("rank1-identity", rank1)
        suite.run("schur-bound", schur_bound)
    else:
        suite.skip("rank1-identity", "needs n >= 2")
        suite.skip("schur-bound", "needs n >= 2")
    suite.run("identity-dominance", dominance)


def _check_uncross(suite: _Suite, m: Matrix):
    n = m.n

    def uncross():
        for d in range(0, n):
            split = BlockSplit(m, d)
            for i_star in range(1, split.k + 1):
                pair = row_uncrossing_sides(split, i_star)
                if not pair.holds:
                    return f"violated at d = {d}, i* = {i_star}"
                if (d == 0 or split.k == 1) and not eq_scalar(pair.lhs, pair.rhs, m.kind):
                    return f"expected equality at d = {d}, k = {split.k}"
        return None

    def two_row():
        d = n - 2
        split = BlockSplit(m, d)
        x1 = [m.entries[d][c] for c in range(d)]
        x2 = [m.entries[d + 1][c] for c in range(d)]
        y1 = [m.entries[r][d] for r in range(d)]
        y2 = [m.entries[r][d + 1] for r in range(d)]
        pair = two_row_inequality_sides(split.b, x1, x2, y1, y2, split.w)
        return None if pair.holds else f"lhs {pair.lhs} > rhs {pair.rhs}"

    def condense_check():
        pivot = m.entries[0][0]
        if pivot == 0:
            return "a_{1,1} = 0"
        x = [m.entries[i][0] for i in range(1, n)]
        y = [m.entries[0][j] for j in range(1, n)]
        w = BlockSplit(m, 1).w
        c = condense(pivot, x, y, w)
        lhs = permanent_ryser(m) / pivot
        rhs = permanent_ryser(c)
        return None if leq_scalar(lhs, rhs, m.kind) else f"{lhs} > {rhs}"

    suite.run("row-uncrossing", uncross)
    if n >= 2:
        suite.run("two-row-inequality", two_row)
        suite.run("condense-inequality", condense_check)
    else:
        suite.skip("two-row-inequality", "needs n >= 2")
        suite.skip("condense-inequality", "needs n >= 2")


def _has_unit_diagonal(m: Matrix) -> bool:
    return all(eq_scalar(m.entries[i][i], 1, m.kind) for i in range(m.n))


def _check_boundedness(suite: _Suite, m: Matrix):
    n = m.n
    if not _has_unit_diagonal(m) or not m.is_nonneg():
        raise PreconditionViolated("boundedness checks need a unit-diagonal non-negative matrix")
    M = max(Fraction(1), *(Fraction(x) for row in m.entries for x in row)) \
        if m.kind == RATIONAL else max(1.0, *(x for row in m.entries for x in row))
    trace = run_process(m, keep_snapshots=True)

    def entry_scan():
        violation = entry_bound_check(m, M, trace=trace)
        return None if violation is None else f"entry bound violated at {violation}"

    def perm_ratio():
        rng = random.Random(0)
        cases = []
        if n <= 5:
            for size in range(0, n):
                for s in combinations(range(1, n + 1), size):
                    rest = [i for i in range(1, n + 1) if i not in s]
                    cases.extend((s, i, j) for i in rest for j in rest)
        else:
            for _ in range(60):
                size = rng.randint(0, n - 1)
                s = tuple(sorted(rng.sample(range(1, n + 1), size)))
                rest = [i for i in range(1, n + 1) if i not in s]
                cases.append((s, rng.choice(rest), rng.choice(rest)))
        for s, i, j in cases:
            res = perm_ratio_check(m, s, i, j, M)
            if not res.holds:
                return f"ratio {res.ratio} > {res.bound} at S = {s}, i = {i}, j = {j}"
        return None

    def cycle_sum():
        rng = random.Random(0)
        cases = []
        if n <= 5:
            for t in range(1, n - 1):
                pool = range(t + 1, n + 1)
                for size in range(2, len(pool) + 1):
                    for s in combinations(pool, size):
                        cases.extend((t, s, i0) for i0 in s)
        else:
            for _ in range(60):
                t = rng.randint(1, n - 2)
                pool = list(range(t + 1, n + 1))
                size = rng.randint(2, len(pool))
                s = tuple(sorted(rng.sample(pool, size)))
                cases.append((t, s, rng.choice(s)))
        for t, s, i0 in cases:
            res = cycle_sum_ratio(m, t, s, i0, M, trace=trace)
            if not res.holds:
                return f"ratio {res.ratio} > {res.bound} at t = {t}, S = {s}, i0 = {i0}"
        return None

    suite.run("entry-bound", entry_scan)
    suite.run("perm-ratio", perm_ratio)
    if n >= 3:
        suite.run("cycle-sum", cycle_sum)
    else:
        suite.skip("cycle-sum", "needs n >= 3")


def _check_psd(suite: _Suite, parsed: ParsedMatrix):
    g = gram_from_factor(to_kind(parsed.factor, RATIONAL))
    n = g.n

    def consistency():
        return None if g.gram == parsed.matrix else "factor^T factor mismatch"

    def tensor():
        lhs = permanent_tensor(g)
        rhs = permanent_ryser(g.gram)
        return None if lhs == rhs else f"tensor {lhs} != ryser {rhs}"

    def schur():
        res = psd_schur_check(g)
        return None if res.holds else f"exact {res.exact} > rhs {res.rhs}"

    def alpha():
        b = BlockSplit(g.gram, n - 1).b
        x = [g.gram.entries[i][n - 1] for i in range(n - 1)]
        coeffs = alpha_coefficients(b, x).coeffs
        bad = [k for k, v in enumerate(coeffs) if v < 0]
        return None if not bad else f"negative alpha at positions {bad}"

    def soundness():
        exact = permanent_ryser(g.gram)
        bound = run_process(g).bound
        return None if leq_scalar(exact, bound, g.gram.kind) else f"per {exact} > bound {bound}"

    suite.run("gram-consistency", consistency)
    if n <= 5 and g.d ** n <= TENSOR_MAX_SPACE and n <= TENSOR_MAX_N:
        suite.run("tensor-permanent", tensor)
    else:
        suite.skip("tensor-permanent", "tensor space too large")
    if n >= 2:
        suite.run("psd-schur", schur)
        suite.run("alpha-nonneg", alpha)
    else:
        suite.skip("psd-schur", "needs n >= 2")
        suite.skip("alpha-nonneg", "needs n >= 2")
    suite.run("process-soundness", soundness)


def _check_majorant(suite: _Suite, parsed: ParsedMatrix):
    def majorant():
        verify_majorant(MajorantCertificate(a=parsed.matrix, b=parsed.majorant))
        return None

    suite.run("majorant-recursion", majorant)


def cmd_verify(args) -> int:
    parsed = parse_matrix_file(args.input)
    m = to_kind(parsed.matrix, RATIONAL)
    suite = _Suite()
    wanted = args.suite
    if wanted in ("schur", "all"):
        _check_schur(suite, m)
    if wanted in ("uncross", "all"):
        _check_uncross(suite, m)
    if wanted == "boundedness":
        _check_boundedness(suite, m)
    elif wanted == "all":
        if _has_unit_diagonal(m) and m.is_nonneg():
            _check_boundedness(suite, m)
        else:
            suite.skip("boundedness", "needs a unit-diagonal non-negative matrix")
    if wanted == "psd":
        if parsed.factor is None:
            raise PreconditionViolated("psd suite requires a gram-kind input with a factor")
        _check_psd(suite, parsed)
    elif wanted == "all":
        if parsed.factor is not None:
            _check_psd(suite, parsed)
        else:
            suite.skip("psd", "needs a gram-kind input with a factor")
    if parsed.majorant is not None:
        _check_majorant(suite, parsed)
    print("\n".join(suite.lines))
    return CHECK_FAILED if suite.failed else OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="permbound",
        description="Certified permanent upper bounds via the permanent process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bound = sub.add_parser("bound", help="compute bounds for one matrix file")
    p_bound.add_argument("input", help="csv or json matrix file")
    p_bound.add_argument("--arithmetic", choices=["float", "rational"], default=None,
                         help="default: rational for n <= 12, float above")
    p_bound.add_argument("--exact-max", type=int, default=10, dest="exact_max",
                         help="compute the exact permanent when n <= this (default 10)")
    p_bound.add_argument("--ordering", default=None, help="permutation like 2,1,3")
    p_bound.add_argument("--eps", default=None, help="run the diagonal-dominance certificate")
    p_bound.add_argument("--snapshots", action="store_true", help="include A^(t) sequence")
    p_bound.add_argument("--timing", action="store_true", help="include elapsed_ms")
    p_bound.add_argument("--out", default=None, help="write the report here instead of stdout")
    p_bound.set_defaults(fn=cmd_bound)

    p_family = sub.add_parser("family", help="run a parametrized matrix family")
    p_family.add_argument("name", choices=["exp", "allones", "random-dd"])
    p_family.add_argument("params", nargs="*", help="key=value family parameters")
    p_family.add_argument("--count", type=int, default=1,
                          help="instances for random families (seed, seed+1, ...)")
    p_family.add_argument("--arithmetic", choices=["float", "rational"], default=None)
    p_family.add_argument("--exact-max", type=int, default=10, dest="exact_max")
    p_family.add_argument("--timing", action="store_true")
    p_family.add_argument("--out", default=None)
    p_family.set_defaults(fn=cmd_family)

    p_verify = sub.add_parser("verify", help="run property checks against a matrix file")
    p_verify.add_argument("input")
    p_verify.add_argument("--suite", choices=["schur", "uncross", "boundedness", "psd", "all"],
                          default="all")
    p_verify.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except PermboundError as exc:
        return _error_exit(exc)


if __name__ == "__main__":
    raise SystemExit(main())
