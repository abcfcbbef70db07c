"""CSV partial distance matrices.

The first row is an empty cell followed by the labels; each later row is a
label followed by its entries. ``inf`` (lowercase) is the only infinity.
"""

from __future__ import annotations

import csv
import io
import re

from ..matrix import DistanceMatrix, PartialDistance
from ..rational import INF, format_number, parse_number
from .diagnostics import ParseDiagnostic, ParseError

_LABEL = re.compile(r"^[A-Za-z0-9_]+$")


def _columns(line: str, fields: list) -> list[int]:
    """1-based character column of each field; exact when the line has no quoting."""
    if '"' in line:
        return list(range(1, len(fields) + 1))
    cols, at = [], 1
    for f in fields:
        cols.append(at)
        at += len(f) + 1
    return cols


def parse_matrix(text: str) -> PartialDistance:
    """Parse and check a matrix; all-finite input comes back as a DistanceMatrix."""

    def fail(line, col, message, expected=""):
        raise ParseError(ParseDiagnostic(line, col, message, expected))

    raw_lines = text.splitlines()
    rows = []
    for lineno, line in enumerate(raw_lines, 1):
        if not line.strip():
            continue
        fields = next(csv.reader([line]))
        rows.append((lineno, [f.strip() for f in fields], _columns(line, fields)))
    if not rows:
        fail(1, 1, "empty input", "a header row")
    hline, header, hcols = rows[0]
    if header[0] != "":
        fail(hline, hcols[0], "header must start with an empty cell", "',' then the labels")
    labels = header[1:]
    if not labels:
        fail(hline, 1, "no labels in header")
    seen = {}
    for lab, col in zip(labels, hcols[1:]):
        if not _LABEL.match(lab):
            fail(hline, col, f"bad label {lab!r}", "[A-Za-z0-9_]+")
        if lab in seen:
            fail(hline, col, f"duplicate label {lab!r}")
        seen[lab] = col
    n = len(labels)
    body = rows[1:]
    if len(body) != n:
        at = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else hline + 1)
        fail(at, 1, f"expected {n} data rows, found {len(body)}")
    values = []
    where = {}
    for i, (lineno, fields, cols) in enumerate(body):
        if len(fields) != n + 1:
            fail(lineno, cols[-1], f"row has {len(fields) - 1} entries, expected {n}")
        if fields[0] != labels[i]:
            fail(lineno, cols[0], f"row label {fields[0]!r} does not match column label {labels[i]!r}",
                 repr(labels[i]))
        row = []
        for j, (tok, col) in enumerate(zip(fields[1:], cols[1:])):
            where[(i, j)] = (lineno, col)
            if tok == "inf":
                v = INF
            else:
                try:
                    v = parse_number(tok)
                except ValueError as exc:
                    fail(lineno, col, str(exc), "a number or 'inf'")
            if i == j and v != 0:
                fail(lineno, col, f"diagonal entry ({labels[i]},{labels[i]}) is {tok}", "0")
            if i != j and v is not INF and v <= 0:
                fail(lineno, col, f"off-diagonal entry ({labels[i]},{labels[j]}) is {tok}", "a positive number or 'inf'")
            row.append(v)
        values.append(row)
    for i in range(n):
        for j in range(i + 1, n):
            if values[i][j] != values[j][i]:
                (l1, c1), (l2, c2) = where[(i, j)], where[(j, i)]
                fail(l2, c2,
                     f"asymmetric entries ({labels[i]},{labels[j]})={format_number(values[i][j])} at {l1}:{c1} "
                     f"and ({labels[j]},{labels[i]})={format_number(values[j][i])} at {l2}:{c2}")
    if all(v is not INF for r in values for v in r):
        return DistanceMatrix(labels, values)
    return PartialDistance(labels, values)


def write_matrix(d: PartialDistance) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["", *d.labels])
    for i, lab in enumerate(d.labels):
        w.writerow([lab, *(format_number(d.value(i, j)) for j in range(len(d)))])
    return buf.getvalue()
