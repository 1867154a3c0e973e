"""Plain-text matrix and vector files.

Matrix file: a header line ``rows cols`` followed by the entries row by row,
whitespace separated. Vector file: header ``n`` then n entries. Entries are
integers, decimals (``-0.5``, ``1e-3``) or fractions (``p/q``). Blank lines and
``#`` comments are ignored.

Fractions force the exact backend; decimals default to float but are read
exactly when the exact backend is requested. A file that mixes fractions and
decimals is rejected.
"""
from __future__ import annotations

import os
import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ParseError
from .matrix import Matrix
from .scalar import Backend, Number, format_value

_INT = re.compile(r"[+-]?\d+\Z")
_FRACTION = re.compile(r"[+-]?\d+/\d+\Z")
_DECIMAL = re.compile(r"[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z")


def _kind(tok: str) -> str | None:
    if _INT.match(tok):
        return "int"
    if _FRACTION.match(tok):
        return "fraction"
    if _DECIMAL.match(tok):
        return "decimal"
    return None


def _lines(path) -> list[tuple[int, list[str]]]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if line:
                out.append((lineno, line.split()))
    return out


def _header(lines, path, count: int) -> tuple[int, list[int]]:
    if not lines:
        raise ParseError("empty file", path)
    lineno, toks = lines[0]
    if len(toks) != count or not all(_INT.match(t) for t in toks):
        want = "'rows cols'" if count == 2 else "'n'"
        raise ParseError(f"header must be {want}, got {' '.join(toks)!r}", path, lineno)
    dims = [int(t) for t in toks]
    if any(d < 1 for d in dims):
        raise ParseError("dimensions must be positive", path, lineno)
    return lineno, dims


def _entries(lines, path, expected: int, backend: Backend | None):
    tokens = [(lineno, tok) for lineno, toks in lines[1:] for tok in toks]
    if len(tokens) != expected:
        where = tokens[expected][0] if len(tokens) > expected else (lines[-1][0] if lines else None)
        raise ParseError(f"expected {expected} entries, found {len(tokens)}", path, where)
    first_fraction = first_decimal = None
    kinds = []
    for lineno, tok in tokens:
        kind = _kind(tok)
        if kind is None:
            raise ParseError(f"unparsable entry {tok!r}", path, lineno)
        if kind == "fraction":
            if int(tok.split("/")[1]) == 0:
                raise ParseError(f"zero denominator in {tok!r}", path, lineno)
            if first_decimal is not None:
                raise ParseError(f"fraction {tok!r} mixed with decimal entries (line {first_decimal})",
                                 path, lineno)
            first_fraction = first_fraction or lineno
        elif kind == "decimal":
            if first_fraction is not None:
                raise ParseError(f"decimal {tok!r} mixed with fraction entries (line {first_fraction})",
                                 path, lineno)
            first_decimal = first_decimal or lineno
        kinds.append(kind)
    if backend is None:
        backend = Backend.FLOAT if first_decimal is not None else Backend.EXACT
    backend = Backend(backend)
    if backend is Backend.FLOAT and first_fraction is not None:
        raise ParseError("fraction entries require the exact backend", path, first_fraction)
    values: list[Number] = []
    for (lineno, tok), kind in zip(tokens, kinds):
        if backend is Backend.FLOAT:
            values.append(float(tok))
        elif kind == "int":
            values.append(int(tok))
        else:
            q = Fraction(tok)
            values.append(q.numerator if q.denominator == 1 else q)
    return values, backend


def parse_matrix_file(path: str | os.PathLike, backend: Backend | str | None = None) -> Matrix:
    lines = _lines(path)
    _, (rows, cols) = _header(lines, path, 2)
    values, backend = _entries(lines, path, rows * cols, backend)
    return Matrix([values[i * cols:(i + 1) * cols] for i in range(rows)], backend)


def parse_vector_file(path: str | os.PathLike, backend: Backend | str | None = None) -> list[Number]:
    lines = _lines(path)
    _, (n,) = _header(lines, path, 1)
    values, _ = _entries(lines, path, n, backend)
    return values


def format_matrix(A: Matrix) -> str:
    out = [f"{A.rows} {A.cols}"]
    for r in A.row_list():
        out.append(" ".join(format_value(v, A.backend) for v in r))
    return "\n".join(out) + "\n"


def format_vector(values: Sequence[Number], backend: Backend) -> str:
    return f"{len(values)}\n" + " ".join(format_value(v, backend) for v in values) + "\n"


def write_matrix_file(path: str | os.PathLike, A: Matrix) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(A))


def write_vector_file(path: str | os.PathLike, values: Iterable[Number], backend: Backend) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_vector(list(values), backend))
