"""Text and JSON serialization of Cayley tables and reports.

Text format: first line ``n``, then ``n`` lines of ``n`` space-separated
integers.  JSON tables look like ``{"schema": 1, "order": n, "table": [...]}``.
"""
from __future__ import annotations

import json
from pathlib import Path

from .loopcore import CayleyTable, LoopReport, TableError

SCHEMA = 1


class TableParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def table_to_text(t: CayleyTable) -> str:
    lines = [str(t.order)]
    lines += [" ".join(map(str, row)) for row in t.rows]
    return "\n".join(lines) + "\n"


def table_from_text(text: str) -> CayleyTable:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise TableParseError("empty input", 1)
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise TableParseError(f"expected the order, got {lines[0]!r}", 1, 1) from None
    if n < 1:
        raise TableParseError(f"order must be positive, got {n}", 1, 1)
    if len(lines) != n + 1:
        raise TableParseError(f"expected {n} table rows, found {len(lines) - 1}", len(lines))
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if len(tokens) != n:
            raise TableParseError(f"expected {n} entries, found {len(tokens)}", i)
        row = []
        for col, tok in enumerate(tokens, start=1):
            try:
                x = int(tok)
            except ValueError:
                raise TableParseError(f"not an integer: {tok!r}", i, col) from None
            if not 0 <= x < n:
                raise TableParseError(f"entry {x} outside 0..{n - 1}", i, col)
            row.append(x)
        rows.append(row)
    return CayleyTable(rows)


def table_to_json(t: CayleyTable) -> str:
    return json.dumps({"schema": SCHEMA, "order": t.order, "table": [list(r) for r in t.rows]})


def table_from_json(text: str) -> CayleyTable:
    try:
        data = json.loads(text)
        table = data["table"]
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise TableParseError(f"bad JSON table: {exc}", 1) from None
    try:
        t = CayleyTable(table)
    except TableError as exc:
        raise TableParseError(str(exc), 1) from None
    if "order" in data and data["order"] != t.order:
        raise TableParseError(f"order field {data['order']} != table size {t.order}", 1)
    return t


def read_table(path) -> CayleyTable:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return table_from_json(text)
    return table_from_text(text)


def write_table(t: CayleyTable, path) -> None:
    path = Path(path)
    if path.suffix == ".json":
        path.write_text(table_to_json(t) + "\n")
    else:
        path.write_text(table_to_text(t))


def report_to_json(rep: LoopReport, **extra) -> str:
    d = rep.to_dict()
    d.update(extra)
    return json.dumps(d, indent=2)
