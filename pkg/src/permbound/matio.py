"""Matrix file parsing and serialization for the CLI.

Two formats:

* csv: rows of comma-separated decimal or rational ("p/q") literals.
* json: {"n": int, "entries": row-major (flat or nested) array,
  "kind": "nonneg" | "gram", "factor": optional d x n array,
  "majorant": optional n x n array}.

Files are parsed exactly (decimals become exact decimal fractions) and
converted to float64 afterwards when float arithmetic is requested, so the
rational pipeline never sees binary rounding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .matcore import Matrix, matmul, transpose
from .psd import GramMatrix, gram_from_factor
from .scalars import FLOAT64, RATIONAL, format_scalar


@dataclass(frozen=True)
class ParsedMatrix:
    """A parsed input: the matrix, its declared kind tag, optional extras."""

    matrix_id: str
    kind_tag: str                     # "nonneg" | "gram"
    matrix: Matrix                    # always rational (exact) at parse time
    factor: Matrix | None = None      # present iff kind_tag == "gram"
    majorant: Matrix | None = None


def _parse_cell(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad numeric literal {text!r}") from exc


def _rows_to_matrix(rows, what: str) -> Matrix:
    if not rows:
        raise ParseError(f"{what} is empty")
    parsed = [tuple(_parse_cell(x) for x in row) for row in rows]
    widths = {len(r) for r in parsed}
    if len(widths) != 1:
        raise ParseError(f"{what} has ragged rows")
    return Matrix(tuple(parsed), RATIONAL)


def parse_csv_text(text: str, matrix_id: str = "stdin") -> ParsedMatrix:
    rows = [line.split(",") for line in text.strip().splitlines() if line.strip()]
    m = _rows_to_matrix(rows, "csv matrix")
    if not m.is_square:
        raise ParseError(f"csv matrix is {m.nrows}x{m.ncols}, not square")
    return ParsedMatrix(matrix_id, "nonneg", m)


def parse_json_text(text: str, matrix_id: str = "stdin") -> ParsedMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid json: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("json matrix file must be an object")
    try:
        n = int(doc["n"])
        entries = doc["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError("json matrix file needs integer 'n' and 'entries'") from exc
    kind_tag = doc.get("kind", "nonneg")
    if kind_tag not in ("nonneg", "gram"):
        raise ParseError(f"unknown matrix kind {kind_tag!r}")
    if entries and isinstance(entries[0], list):
        rows = entries
    else:
        if len(entries) != n * n:
            raise ParseError(f"flat entries length {len(entries)} != n^2 = {n * n}")
        rows = [entries[i * n : (i + 1) * n] for i in range(n)]
    m = _rows_to_matrix(rows, "json matrix")
    if m.nrows != n or not m.is_square:
        raise ParseError(f"declared n = {n} but entries form {m.nrows}x{m.ncols}")
    factor = None
    if kind_tag == "gram":
        if "factor" not in doc:
            raise ParseError("gram kind requires a 'factor' array")
        factor = _rows_to_matrix(doc["factor"], "gram factor")
        if factor.ncols != n:
            raise ParseError(f"factor has {factor.ncols} columns, expected n = {n}")
        if matmul(transpose(factor), factor) != m:
            raise ParseError("entries do not equal factor^T * factor")
    majorant = None
    if "majorant" in doc:
        majorant = _rows_to_matrix(doc["majorant"], "majorant")
        if majorant.nrows != n or not majorant.is_square:
            raise ParseError(f"majorant must be {n}x{n}")
    return ParsedMatrix(matrix_id, kind_tag, m, factor, majorant)


def parse_matrix_file(path: str | Path) -> ParsedMatrix:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        return parse_json_text(text, path.stem)
    return parse_csv_text(text, path.stem)


def to_kind(m: Matrix, kind: str) -> Matrix:
    if m.kind == kind:
        return m
    if kind == FLOAT64:
        return Matrix(tuple(tuple(float(x) for x in row) for row in m.entries), kind)
    raise ParseError("cannot losslessly convert float64 entries to rationals")


def as_subject(parsed: ParsedMatrix, kind: str) -> Matrix | GramMatrix:
    """The object handed to the process: a Matrix, or a GramMatrix when tagged gram."""
    if parsed.kind_tag == "gram":
        return gram_from_factor(to_kind(parsed.factor, kind))
    return to_kind(parsed.matrix, kind)


def serialize_csv(m: Matrix) -> str:
    return "\n".join(
        ",".join(format_scalar(x, m.kind) for x in row) for row in m.entries
    ) + "\n"


def matrix_as_strings(m: Matrix) -> list[list[str]]:
    return [[format_scalar(x, m.kind) for x in row] for row in m.entries]


def serialize_json(parsed: ParsedMatrix) -> str:
    doc = {
        "n": parsed.matrix.n,
        "entries": matrix_as_strings(parsed.matrix),
        "kind": parsed.kind_tag,
    }
    if parsed.factor is not None:
        doc["factor"] = matrix_as_strings(parsed.factor)
    if parsed.majorant is not None:
        doc["majorant"] = matrix_as_strings(parsed.majorant)
    return json.dumps(doc, sort_keys=True)
