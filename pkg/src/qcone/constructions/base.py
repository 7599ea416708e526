"""Shared building blocks: repetition-code lines, string defects, toric
tensor families, and the generic checker that proves a built cone matches
its declared embedded code."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Literal, Sequence

from .. import labels as lb
from ..chain import (BasedComplex, homology, project_to_homology,
                     space_complex, tensor, transpose_complex)
from ..cone import ConeSpec, assemble, check_regular, embedded_data
from ..errors import ConstructionError, ShapeError
from ..f2linalg import BitMatrix


# -- one-dimensional lines ---------------------------------------------

def repetition(length: int) -> BasedComplex:
    """Open line: checks i+ glue qubits i, i+1; ends at 1 and L."""
    if length < 1:
        raise ShapeError(f"repetition length must be >= 1, got {length}")
    cells0 = [lb.cell(i) for i in range(1, length + 1)]
    cells1 = [lb.half(i) for i in range(1, length)]
    entries = []
    for j in range(length - 1):
        entries.append((j, j))
        entries.append((j + 1, j))
    return BasedComplex([cells0, cells1],
                        [BitMatrix.from_entries(length, length - 1, entries)])


def cyclic_repetition(length: int) -> BasedComplex:
    """Closed ring: labels add modulo the length."""
    if length < 2:
        raise ShapeError(f"cyclic repetition length must be >= 2, got {length}")
    cells0 = [lb.cell(i) for i in range(1, length + 1)]
    cells1 = [lb.half(i) for i in range(1, length + 1)]
    entries = []
    for j in range(length):
        entries.append((j, j))
        entries.append(((j + 1) % length, j))
    return BasedComplex([cells0, cells1],
                        [BitMatrix.from_entries(length, length, entries)])


def dangling_repetition(length: int) -> BasedComplex:
    """Open line whose last check hangs off the end; exact in both degrees."""
    if length < 1:
        raise ShapeError(f"dangling repetition length must be >= 1, got {length}")
    cells0 = [lb.cell(i) for i in range(1, length + 1)]
    cells1 = [lb.half(i) for i in range(1, length + 1)]
    entries = []
    for j in range(length):
        entries.append((j, j))
        if j + 1 < length:
            entries.append((j + 1, j))
    return BasedComplex([cells0, cells1],
                        [BitMatrix.from_entries(length, length, entries)])


def string_defect(length: int, ends: Sequence[int]) -> frozenset[lb.Label]:
    """Cells of the union of half-open intervals [i1,i2) u [i3,i4) u ...

    ``ends`` is an even set of integers in 1..length; each consecutive
    pair in ascending order bounds one interval, and the defect holds all
    integer and half-integer cells s with start <= s < end.
    """
    ends = sorted(set(ends))
    if len(ends) % 2:
        raise ShapeError(f"string defect needs an even set of ends, got {ends}")
    for e in ends:
        if not 1 <= e <= length:
            raise ShapeError(f"end {e} outside 1..{length}")
    cells: set[lb.Label] = set()
    for a, b in zip(ends[::2], ends[1::2]):
        for v in range(a, b):
            cells.add(lb.cell(v))
            cells.add(lb.half(v))
    return frozenset(cells)


# -- toric tensor family -------------------------------------------------

Boundary = Literal["cyclic", "smooth", "rough"]


def _line(kind: Boundary, length: int) -> BasedComplex:
    if kind == "cyclic":
        return cyclic_repetition(length)
    if kind == "smooth":
        return repetition(length)
    if kind == "rough":
        return transpose_complex(repetition(length))
    raise ShapeError(f"unknown boundary type {kind!r}")


@dataclass(frozen=True)
class ToricBase:
    """A toric code as a tensor of two lines, with label arithmetic."""

    bc_x: Boundary
    bc_y: Boundary
    lx: int
    ly: int

    @cached_property
    def x_line(self) -> BasedComplex:
        return _line(self.bc_x, self.lx)

    @cached_property
    def y_line(self) -> BasedComplex:
        return _line(self.bc_y, self.ly)

    @cached_property
    def complex(self) -> BasedComplex:
        return tensor(self.x_line, self.y_line)

    def shift_x(self, label: lb.Label, half_steps: int) -> lb.Label:
        if self.bc_x == "cyclic":
            return lb.shift_cyclic(label, half_steps, self.lx)
        return lb.shift(label, half_steps)

    def shift_y(self, label: lb.Label, half_steps: int) -> lb.Label:
        if self.bc_y == "cyclic":
            return lb.shift_cyclic(label, half_steps, self.ly)
        return lb.shift(label, half_steps)


def toric(bc_x: Boundary, bc_y: Boundary, lx: int, ly: int) -> ToricBase:
    if lx < 2 or ly < 2:
        raise ShapeError(f"toric sizes must be >= 2, got ({lx}, {ly})")
    return ToricBase(bc_x, bc_y, lx, ly)


# -- built cones and their binding checks ---------------------------------

@dataclass
class BuiltCone:
    """A cone spec plus its declared embedded code and identification.

    ``declared_reps[s]`` has one column per declared degree-s basis
    element: the representative of that class inside the level-s chain
    space at total degree s.  ``verify`` proves, numerically, that the
    construction delivers what it claims.
    """

    name: str
    spec: ConeSpec
    declared: BasedComplex
    declared_reps: dict[int, BitMatrix]
    regular_degrees: tuple[int, ...] = (1,)
    log: dict = field(default_factory=dict)

    @cached_property
    def assembled(self) -> BasedComplex:
        return assemble(self.spec)

    def verify(self, *, raise_on_fail: bool = True) -> list[str]:
        ok, transcript = _verify_built(self)
        if not ok and raise_on_fail:
            raise ConstructionError(f"{self.name}: construction checks failed",
                                    transcript)
        return transcript


def _verify_built(b: BuiltCone) -> tuple[bool, list[str]]:
    transcript = []
    ok = True

    def note(flag: bool, text: str) -> bool:
        transcript.append(f"{'PASS' if flag else 'FAIL'} {text}")
        return flag

    try:
        b.assembled
        note(True, "assemble: dd = 0")
    except Exception as exc:
        return False, transcript + [f"FAIL assemble: {exc}"]

    for m in b.regular_degrees:
        report = check_regular(b.spec, m)
        ok &= note(report.ok, f"regular at degree {m}"
                   + ("" if report.ok else f": failing {report.failures}"))

    spec = b.spec
    homs = {}
    proj = {}
    for s in range(spec.n + 1):
        level = spec.level(s)
        internal = s - level.offset
        if 0 <= internal <= level.complex.top_degree:
            homs[s] = homology(level.complex, internal)
        else:
            homs[s] = None
        reps = b.declared_reps.get(s, BitMatrix.zeros(0, 0))
        if homs[s] is None:
            flag = reps.cols == 0 and b.declared.dim(s) == 0
            ok &= note(flag, f"degree {s}: empty level matches empty declared space")
            proj[s] = BitMatrix.zeros(0, b.declared.dim(s))
            continue
        cols = []
        good = True
        for j in range(reps.cols):
            try:
                cols.append(project_to_homology(level.complex, internal,
                                                reps.column_int(j), homs[s]))
            except Exception as exc:
                transcript.append(f"FAIL degree {s}: declared rep {j} "
                                  f"is not a cycle: {exc}")
                good = False
                cols.append(0)
        m_s = BitMatrix.from_columns(cols, homs[s].dim)
        proj[s] = m_s
        square = m_s.rows == m_s.cols == b.declared.dim(s)
        invertible = square and m_s.rank() == m_s.rows
        ok &= note(good and invertible,
                   f"degree {s}: declared classes give an isomorphism onto "
                   f"H_{s} of level {s} (dim {homs[s].dim})")

    for s in range(1, spec.n + 1):
        if homs[s] is None or homs[s - 1] is None:
            continue
        block = spec.block(s - 1, s, s)
        lower = spec.level(s - 1)
        reps = b.declared_reps.get(s, BitMatrix.zeros(0, 0))
        want = proj[s - 1] @ b.declared.diff(s)
        cols = []
        good = True
        for j in range(reps.cols):
            w = block.apply(reps.column_int(j)) if block is not None else 0
            try:
                cols.append(project_to_homology(lower.complex,
                                                s - 1 - lower.offset, w,
                                                homs[s - 1]))
            except Exception as exc:
                transcript.append(f"FAIL degree {s}: glued image of declared "
                                  f"class {j} is not a cycle: {exc}")
                good = False
                cols.append(0)
        got = BitMatrix.from_columns(cols, homs[s - 1].dim)
        ok &= note(good and got == want,
                   f"degree {s}: induced gluing map matches the declared "
                   f"differential")
    return ok, transcript


class BlockBuilder:
    """Accumulates sparse block entries for a ConeSpec under construction."""

    def __init__(self, levels: Sequence):
        self.levels = list(levels)
        self._entries: dict[tuple[int, int, int], list[tuple[int, int]]] = {}

    def add(self, r: int, s: int, i: int, row: int, col: int) -> None:
        self._entries.setdefault((r, s, i), []).append((row, col))

    def finish(self) -> ConeSpec:
        n = len(self.levels) - 1
        blocks = {}
        for (r, s, i), entries in self._entries.items():
            rows = self.levels[n - r].dim_at(i - 1)
            cols = self.levels[n - s].dim_at(i)
            blocks[(r, s, i)] = BitMatrix.from_entries(rows, cols, entries)
        return ConeSpec(self.levels, blocks)
