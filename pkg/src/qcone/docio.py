"""Serialization: JSON documents for complexes and cone specs, and the
alist interchange format for parity-check matrices.

Documents round-trip bit-exactly: labels serialize through their string
form, differentials and blocks as sorted sparse triplets.
"""

from __future__ import annotations

import json
from typing import Any

from . import labels as lb
from .chain import BasedComplex, validate
from .cone import ConeLevel, ConeSpec
from .errors import ShapeError
from .f2linalg import BitMatrix


def complex_to_document(c: BasedComplex) -> dict[str, Any]:
    diffs = []
    for i in range(1, c.top_degree + 1):
        diffs.extend([i, r, col] for r, col in c.diff(i).entries())
    return {
        "kind": "complex",
        "degrees": [c.dim(i) for i in range(c.top_degree + 1)],
        "labels": [[lb.label_str(a) for a in c.labels(i)]
                   for i in range(c.top_degree + 1)],
        "diffs": diffs,
    }


def complex_from_document(doc: dict[str, Any], *, check: bool = True) -> BasedComplex:
    degrees = doc["degrees"]
    label_sets = [[lb.parse_label(s) for s in row] for row in doc["labels"]]
    if [len(row) for row in label_sets] != list(degrees):
        raise ShapeError("label counts disagree with declared degrees")
    entries: dict[int, list[tuple[int, int]]] = {}
    for i, r, col in doc["diffs"]:
        entries.setdefault(i, []).append((r, col))
    diffs = []
    for i in range(1, len(degrees)):
        diffs.append(BitMatrix.from_entries(degrees[i - 1], degrees[i],
                                            entries.get(i, [])))
    c = BasedComplex(label_sets, diffs)
    if check:
        validate(c)
    return c


def cone_to_document(spec: ConeSpec) -> dict[str, Any]:
    levels = []
    for pos, level in enumerate(spec.levels):
        levels.append({"offset": level.offset,
                       "complex": complex_to_document(level.complex)})
    blocks = []
    for (r, s, i) in sorted(spec.blocks):
        blocks.append({"r": r, "s": s, "i": i,
                       "entries": [[row, col]
                                   for row, col in spec.blocks[(r, s, i)].entries()]})
    return {"kind": "cone", "levels": levels, "blocks": blocks}


def cone_from_document(doc: dict[str, Any]) -> ConeSpec:
    levels = [ConeLevel(complex_from_document(entry["complex"], check=False),
                        entry["offset"])
              for entry in doc["levels"]]
    n = len(levels) - 1
    blocks = {}
    for b in doc["blocks"]:
        r, s, i = b["r"], b["s"], b["i"]
        rows = levels[n - r].dim_at(i - 1)
        cols = levels[n - s].dim_at(i)
        blocks[(r, s, i)] = BitMatrix.from_entries(
            rows, cols, [(row, col) for row, col in b["entries"]])
    return ConeSpec(levels, blocks)


def dumps(doc: dict[str, Any]) -> str:
    """Canonical JSON: sorted keys, fixed separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> dict[str, Any]:
    return json.loads(text)


# -- alist ------------------------------------------------------------------

def to_alist(parity: BitMatrix) -> str:
    """Standard alist text for an (m checks) x (n bits) parity matrix:
    header n m, max column/row degrees, degree lists, then 1-based index
    lists padded with zeros to the maxima."""
    m, n = parity.rows, parity.cols
    cols = [parity.col_nonzeros(c) for c in range(n)]
    rows = [parity.row_nonzeros(r) for r in range(m)]
    max_col = max((len(c) for c in cols), default=0)
    max_row = max((len(r) for r in rows), default=0)
    lines = [f"{n} {m}", f"{max_col} {max_row}",
             " ".join(str(len(c)) for c in cols),
             " ".join(str(len(r)) for r in rows)]
    for c in cols:
        lines.append(" ".join(str(i + 1) for i in c)
                     + " 0" * (max_col - len(c)))
    for r in rows:
        lines.append(" ".join(str(i + 1) for i in r)
                     + " 0" * (max_row - len(r)))
    return "\n".join(line.strip() for line in lines) + "\n"


def from_alist(text: str) -> BitMatrix:
    # blank lines are meaningful (degree-zero columns or rows), keep them
    rows = [[int(x) for x in line.split()] for line in text.splitlines()]
    if len(rows) < 4:
        raise ShapeError("alist needs at least four header lines")
    n, m = rows[0]
    col_deg, row_deg = rows[2], rows[3]
    if len(col_deg) != n or len(row_deg) != m:
        raise ShapeError("alist degree lists disagree with header")
    entries = []
    for c in range(n):
        for r in rows[4 + c][: col_deg[c]]:
            if not 1 <= r <= m:
                raise ShapeError(f"alist row index {r} outside 1..{m}")
            entries.append((r - 1, c))
    return BitMatrix.from_entries(m, n, entries)
