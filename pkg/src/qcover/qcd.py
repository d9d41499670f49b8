"""The QCD1 text format for covering designs.

    QCD1 q=2 n=<n> k=<k> r=<r> count=<c> prov=<tag>
    ann <label>=<row>,<row>,...:<count>        (zero or more)
    <row> <row> ... <row>                      (one block per line, k rows)

Rows are n-bit integers (coordinate j at bit n-j) written as lowercase hex
of width ceil(n/4).  Blocks appear in canonical order, rows in RREF order.
"""

from __future__ import annotations

import os
import re

import numpy as np

from .design import Annotation, CoveringDesign
from .subspace import Subspace, rref, rref_array

MAGIC = "QCD1"
_HEADER = re.compile(
    r"^QCD1 q=(\d+) n=(\d+) k=(\d+) r=(\d+) count=(\d+) prov=(\S*)$")
_ANN = re.compile(r"^ann ([^=\s]+)=([0-9a-f,]*):(\d+)$")


class QcdError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _width(n: int) -> int:
    return max(1, -(-n // 4))


def format_block(rows, n: int) -> str:
    w = _width(n)
    return " ".join(f"{int(v):0{w}x}" for v in rows)


def qcd_dumps(design: CoveringDesign) -> str:
    n = design.n
    out = [f"{MAGIC} q=2 n={n} k={design.k} r={design.r} "
           f"count={len(design)} prov={design.provenance or '-'}"]
    w = _width(n)
    for label, ann in sorted(design.annotations.items()):
        rows = ",".join(f"{v:0{w}x}" for v in ann.subspace.rows)
        out.append(f"ann {label}={rows}:{ann.count}")
    for row in design.rows.tolist():
        out.append(format_block(row, n))
    return "\n".join(out) + "\n"


def qcd_write(design: CoveringDesign, sink) -> None:
    """Write to a path or a text stream."""
    text = qcd_dumps(design)
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sink.write(text)


def _parse_hex(token: str, n: int, line: int) -> int:
    if len(token) != _width(n):
        raise QcdError(line, f"row {token!r} is not {_width(n)} hex digits")
    try:
        v = int(token, 16)
    except ValueError:
        raise QcdError(line, f"row {token!r} is not hexadecimal") from None
    if v >> n:
        raise QcdError(line, f"row {token!r} exceeds {n} bits")
    return v


def qcd_loads(text: str, strict_count: bool = True) -> CoveringDesign:
    """Parse a QCD1 document.

    With ``strict_count=False`` a body shorter or longer than the header's
    count is accepted (used to verify truncated files).
    """
    lines = text.splitlines()
    if not lines:
        raise QcdError(1, "empty file")
    m = _HEADER.match(lines[0].strip())
    if not m:
        raise QcdError(1, f"malformed header {lines[0]!r}")
    q, n, k, r, count = (int(g) for g in m.groups()[:5])
    prov = m.group(6)
    prov = "" if prov == "-" else prov
    if q != 2:
        raise QcdError(1, f"only q=2 is supported, got q={q}")
    if not 0 <= r <= k <= n or n > 62:
        raise QcdError(1, f"invalid parameters n={n}, k={k}, r={r}")

    idx = 1
    anns = {}
    while idx < len(lines) and lines[idx].startswith("ann "):
        lineno = idx + 1
        am = _ANN.match(lines[idx].strip())
        if not am:
            raise QcdError(lineno, f"malformed annotation {lines[idx]!r}")
        label, body, c = am.groups()
        rows = [_parse_hex(t, n, lineno) for t in body.split(",") if t]
        if tuple(rows) != rref(rows):
            raise QcdError(lineno, "annotation rows are not in RREF")
        anns[label] = (Subspace(n, tuple(rows)), int(c), lineno)
        idx += 1

    body = [(i + 1, ln) for i, ln in enumerate(lines[idx:], start=idx) if ln.strip()]
    if len(body) != count and strict_count:
        raise QcdError(len(lines), f"header says count={count}, found {len(body)} blocks")
    count = len(body)
    rows = np.zeros((count, k), dtype=np.int64)
    for j, (lineno, ln) in enumerate(body):
        tokens = ln.split()
        if len(tokens) != k:
            raise QcdError(lineno, f"expected {k} rows, found {len(tokens)}")
        rows[j] = [_parse_hex(t, n, lineno) for t in tokens]

    if count and k:
        canon, ranks = rref_array(rows, n)
        bad = np.flatnonzero((ranks != k) | (canon != rows).any(axis=1))
        if len(bad):
            raise QcdError(body[bad[0]][0], f"block is not a {k}-dimensional RREF basis")
        order = np.lexsort(rows.T[::-1])
        srt = rows[order]
        dup = np.flatnonzero((srt[1:] == srt[:-1]).all(axis=1))
        if len(dup):
            a, b = sorted((order[dup[0]], order[dup[0] + 1]))
            raise QcdError(body[b][0], f"duplicate of the block on line {body[a][0]}")
    elif count > 1:
        raise QcdError(body[1][0], "duplicate of the zero block")

    design = CoveringDesign.from_rows(n, k, r, rows, provenance=prov, canonical=True)
    checked = {}
    for label, (u, c, lineno) in anns.items():
        actual = design.count_inside(u)
        if actual != c:
            raise QcdError(lineno, f"annotation {label} claims {c} blocks inside, found {actual}")
        checked[label] = Annotation(u, c)
    return design.with_(annotations=checked)


def qcd_read(source, strict_count: bool = True) -> CoveringDesign:
    """Read from a path or a text stream."""
    if isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8") as fh:
            return qcd_loads(fh.read(), strict_count)
    if hasattr(source, "read"):
        return qcd_loads(source.read(), strict_count)
    raise TypeError("source must be a path or a readable text stream")
