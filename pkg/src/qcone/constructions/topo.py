"""Topological cones: re-lattice constructions for the 2D toric code and
the barycentric subdivision of an arbitrary finite simplicial complex."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .. import labels as lb
from ..chain import BasedComplex, space_complex, tensor, transpose_complex
from ..cone import ConeLevel
from ..errors import ShapeError
from ..f2linalg import BitMatrix
from .base import BlockBuilder, BuiltCone, ToricBase, repetition


def _identity_reps(c: BasedComplex, degree: int) -> BitMatrix:
    return BitMatrix.identity(c.dim(degree))


def honeycomb_cone(base: ToricBase) -> BuiltCone:
    """Re-lattice cone splitting every vertex of the square lattice in two.

    Plaquettes stay at level 2, edges at level 1; each vertex becomes a
    two-cell line whose collapse recovers the square-lattice code.  The
    homotopy block routes each plaquette to the short line cell between
    its two split corners.
    """
    tor = base.complex
    x1 = set(base.x_line.labels(1))
    line2 = repetition(2)
    level0_cpx = tensor(space_complex(tor.labels(0)), line2)
    levels = [ConeLevel(space_complex(tor.labels(2)), 2),
              ConeLevel(space_complex(tor.labels(1)), 1),
              ConeLevel(level0_cpx, 0)]
    bb = BlockBuilder(levels)

    for r, c in tor.diff(2).entries():
        bb.add(1, 2, 2, r, c)

    def deg0_index(xy: lb.Label, j: lb.Label) -> int | None:
        return level0_cpx.index_or_none(0, lb.pair(xy, j))

    for col, edge in enumerate(tor.labels(1)):
        x, y = lb.parts(edge)
        if x in x1:
            images = [(base.shift_x(x, +1), y, lb.cell(2)),
                      (base.shift_x(x, -1), y, lb.cell(1))]
        else:
            images = [(x, base.shift_y(y, +1), lb.cell(1)),
                      (x, base.shift_y(y, -1), lb.cell(2))]
        for xx, yy, j in images:
            row = deg0_index(lb.pair(xx, yy), j)
            if row is not None:
                bb.add(0, 1, 1, row, col)

    for col, plaq in enumerate(tor.labels(2)):
        x, y = lb.parts(plaq)
        for dx, dy in ((+1, +1), (-1, -1)):
            corner = lb.pair(base.shift_x(x, dx), base.shift_y(y, dy))
            row = level0_cpx.index_or_none(1, lb.pair(corner, lb.half(1)))
            if row is not None:
                bb.add(0, 2, 2, row, col)

    spec = bb.finish()
    reps0 = BitMatrix.from_columns(
        [1 << level0_cpx.index(0, lb.pair(v, lb.cell(1)))
         for v in tor.labels(0)], level0_cpx.dim(0))
    return BuiltCone(name="honeycomb", spec=spec, declared=tor,
                     declared_reps={2: _identity_reps(tor, 2),
                                    1: _identity_reps(tor, 1),
                                    0: reps0})


def triangular_cone(base: ToricBase) -> BuiltCone:
    """Re-lattice cone splitting every plaquette of the square lattice in two."""
    tor = base.complex
    line2t = transpose_complex(repetition(2))
    level2_cpx = tensor(space_complex(tor.labels(2)), line2t)
    levels = [ConeLevel(level2_cpx, 1),
              ConeLevel(space_complex(tor.labels(1)), 1),
              ConeLevel(space_complex(tor.labels(0)), 0)]
    bb = BlockBuilder(levels)

    edge_index = {lab: j for j, lab in enumerate(tor.labels(1))}
    for col, cell in enumerate(level2_cpx.labels(1)):
        plaq, j = lb.parts(cell)
        x, y = lb.parts(plaq)
        if lb.coord_int(j) == 1:
            images = [(base.shift_x(x, +1), y), (x, base.shift_y(y, -1))]
        else:
            images = [(base.shift_x(x, -1), y), (x, base.shift_y(y, +1))]
        for xx, yy in images:
            row = edge_index.get(lb.pair(xx, yy))
            if row is not None:
                bb.add(1, 2, 2, row, col)

    for r, c in tor.diff(1).entries():
        bb.add(0, 1, 1, r, c)

    vertex_index = {lab: j for j, lab in enumerate(tor.labels(0))}
    for col, cell in enumerate(level2_cpx.labels(0)):
        plaq, _ = lb.parts(cell)
        x, y = lb.parts(plaq)
        for dx, dy in ((+1, +1), (-1, -1)):
            row = vertex_index.get(lb.pair(base.shift_x(x, dx),
                                           base.shift_y(y, dy)))
            if row is not None:
                bb.add(0, 2, 1, row, col)

    spec = bb.finish()
    reps2_cols = []
    for plaq in tor.labels(2):
        vec = (1 << level2_cpx.index(1, lb.pair(plaq, lb.cell(1)))) \
            ^ (1 << level2_cpx.index(1, lb.pair(plaq, lb.cell(2))))
        reps2_cols.append(vec)
    reps2 = BitMatrix.from_columns(reps2_cols, level2_cpx.dim(1))
    return BuiltCone(name="triangular", spec=spec, declared=tor,
                     declared_reps={2: reps2,
                                    1: _identity_reps(tor, 1),
                                    0: _identity_reps(tor, 0)})


# -- simplicial complexes -------------------------------------------------

@dataclass(frozen=True)
class SimplicialComplex:
    """Finite simplicial complex: sorted vertex tuples closed under faces."""

    simplices: frozenset[tuple[int, ...]]

    @classmethod
    def from_top_simplices(cls, tops) -> "SimplicialComplex":
        closed: set[tuple[int, ...]] = set()
        for top in tops:
            vertices = tuple(sorted(set(top)))
            if len(vertices) != len(tuple(top)):
                raise ShapeError(f"simplex {top} repeats a vertex")
            for size in range(1, len(vertices) + 1):
                closed.update(itertools.combinations(vertices, size))
        return cls(frozenset(closed))

    def __post_init__(self):
        for s in self.simplices:
            if tuple(sorted(s)) != s:
                raise ShapeError(f"simplex {s} is not sorted")
            for size in range(1, len(s)):
                for face in itertools.combinations(s, size):
                    if face not in self.simplices:
                        raise ShapeError(f"face {face} of {s} is missing")

    @property
    def dimension(self) -> int:
        return max(len(s) for s in self.simplices) - 1

    def of_dimension(self, d: int) -> list[tuple[int, ...]]:
        return sorted(s for s in self.simplices if len(s) == d + 1)


def _simplex_label(simplex: tuple[int, ...]) -> lb.Label:
    return lb.tup(*(lb.cell(v) for v in simplex))


def simpl_chain(k: SimplicialComplex) -> BasedComplex:
    """Chain complex of a simplicial complex; boundaries drop one vertex."""
    dim = k.dimension
    by_degree = [k.of_dimension(d) for d in range(dim + 1)]
    label_sets = [[_simplex_label(s) for s in simplices]
                  for simplices in by_degree]
    index = [{s: j for j, s in enumerate(simplices)} for simplices in by_degree]
    diffs = []
    for d in range(1, dim + 1):
        entries = []
        for col, s in enumerate(by_degree[d]):
            for drop in range(len(s)):
                face = s[:drop] + s[drop + 1:]
                entries.append((index[d - 1][face], col))
        diffs.append(BitMatrix.from_entries(len(by_degree[d - 1]),
                                            len(by_degree[d]), entries))
    return BasedComplex(label_sets, diffs)


def _flags(k: SimplicialComplex) -> dict[int, dict[int, list[tuple]]]:
    """Flags grouped by top dimension s, then by length - 1 (the degree).

    A flag is a chain of simplices strictly decreasing in dimension, each
    a face of the previous one.
    """
    out: dict[int, dict[int, list[tuple]]] = {}
    simplices = sorted(k.simplices, key=lambda s: (len(s), s))

    def extend(chain: tuple) -> list[tuple]:
        found = [chain]
        last = chain[-1]
        for size in range(1, len(last)):
            for face in itertools.combinations(last, size):
                found.extend(extend(chain + (face,)))
        return found

    for top in simplices:
        s = len(top) - 1
        for flag in extend((top,)):
            out.setdefault(s, {}).setdefault(len(flag) - 1, []).append(flag)
    for group in out.values():
        for flags in group.values():
            flags.sort()
    return out


def _flag_label(flag: tuple) -> lb.Label:
    return lb.tup(*(_simplex_label(s) for s in flag))


def barycentric_cone(k: SimplicialComplex) -> BuiltCone:
    """Barycentric subdivision as an (n+1)-level cone.

    Level s holds the flags whose top simplex has dimension s; the level
    differential drops lower flag entries, and dropping the top entry is
    the (level-lowering) block data.  The declared embedded code is the
    original complex, identified by summing all full flags under a fixed
    simplex.
    """
    n = k.dimension
    flags = _flags(k)
    level_cpx: dict[int, BasedComplex] = {}
    for s in range(n + 1):
        group = flags.get(s, {})
        label_sets = [[_flag_label(f) for f in group.get(d, [])]
                      for d in range(s + 1)]
        index = [{f: j for j, f in enumerate(group.get(d, []))}
                 for d in range(s + 1)]
        diffs = []
        for d in range(1, s + 1):
            entries = []
            for col, flag in enumerate(group.get(d, [])):
                for drop in range(1, len(flag)):  # never the top entry
                    sub = flag[:drop] + flag[drop + 1:]
                    entries.append((index[d - 1][sub], col))
            diffs.append(BitMatrix.from_entries(len(label_sets[d - 1]),
                                                len(label_sets[d]), entries))
        level_cpx[s] = BasedComplex(label_sets, diffs)

    levels = [ConeLevel(level_cpx[s], 0) for s in range(n, -1, -1)]
    bb = BlockBuilder(levels)
    for s in range(n + 1):
        group = flags.get(s, {})
        for d in range(1, s + 1):
            for col, flag in enumerate(group.get(d, [])):
                sub = flag[1:]
                r = len(sub[0]) - 1
                row = level_cpx[r].index_or_none(d - 1, _flag_label(sub))
                if row is None:
                    raise ShapeError(f"missing flag {sub}")
                bb.add(r, s, d, row, col)
    spec = bb.finish()

    declared = simpl_chain(k)
    declared_reps: dict[int, BitMatrix] = {}
    for s in range(n + 1):
        cols = []
        full = flags.get(s, {}).get(s, [])
        full_index = {f: j for j, f in enumerate(full)}
        for simplex in k.of_dimension(s):
            vec = 0
            for flag in full:
                if flag[0] == simplex:
                    vec |= 1 << full_index[flag]
            cols.append(vec)
        declared_reps[s] = BitMatrix.from_columns(cols, len(full))
    return BuiltCone(name="barycentric", spec=spec, declared=declared,
                     declared_reps=declared_reps,
                     regular_degrees=tuple(range(n + 1)))
