"""Bound-table rendering: text grid, CSV, JSON and markdown."""

from __future__ import annotations

import csv
import io
import json

from .bounds import BoundTable

FORMATS = ("text", "csv", "json", "markdown")
JSON_KEYS = ("n", "k", "r", "lower", "lower_marker", "upper", "upper_marker")


def _grid(table: BoundTable, n: int) -> list[list[str]]:
    """Rows r = n-1..1, columns k = n-1..1; cells with k < r are blank."""
    ks = list(range(n - 1, 0, -1))
    out = [["r \\ k"] + [str(k) for k in ks]]
    for r in range(n - 1, 0, -1):
        out.append([str(r)] + [table.cell(n, k, r).label() if k >= r else "" for k in ks])
    return out


def render_text(table: BoundTable, n_values) -> str:
    blocks = []
    for n in n_values:
        grid = _grid(table, n)
        widths = [max(len(row[j]) for row in grid) for j in range(len(grid[0]))]
        lines = [f"Bounds on C_2({n},k,r)"]
        for row in grid:
            lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)).rstrip())
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def render_markdown(table: BoundTable, n_values) -> str:
    blocks = []
    for n in n_values:
        grid = _grid(table, n)
        lines = [f"### C_2({n},k,r)", ""]
        lines.append("| " + " | ".join(grid[0]) + " |")
        lines.append("|" + "---|" * len(grid[0]))
        for row in grid[1:]:
            lines.append("| " + " | ".join(row) + " |")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def table_records(table: BoundTable, n_values, witness_files=None) -> list[dict]:
    witness_files = witness_files or {}
    out = []
    for n in n_values:
        for c in table.layer(n):
            rec = {key: getattr(c, key) for key in JSON_KEYS}
            path = witness_files.get((c.n, c.k, c.r))
            if path is not None:
                rec["witness_file"] = str(path)
            out.append(rec)
    return out


def render_json(table: BoundTable, n_values, witness_files=None) -> str:
    return json.dumps(table_records(table, n_values, witness_files),
                      ensure_ascii=False, indent=1) + "\n"


def render_csv(table: BoundTable, n_values) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(JSON_KEYS)
    for rec in table_records(table, n_values):
        w.writerow([rec[key] for key in JSON_KEYS])
    return buf.getvalue()


def render(table: BoundTable, fmt: str = "text", n_min: int = 2) -> str:
    n_values = range(max(2, n_min), table.n_max + 1)
    if fmt == "text":
        return render_text(table, n_values)
    if fmt == "markdown":
        return render_markdown(table, n_values)
    if fmt == "json":
        return render_json(table, n_values)
    if fmt == "csv":
        return render_csv(table, n_values)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
