"""Square complexes and their L-subdivision (a cone of cones).

A square complex is a length-2 based complex in which every adjacent
generator/cogenerator pair shares exactly two qubits.  Subdividing
replaces each such square with an L x L dangling grid patch, each
(generator, qubit) adjacency with a dangling spoke line, and each
(qubit, cogenerator) adjacency with a dangling side line; the original
cells survive as the deepest level of each piece.

Orientation of the dangling pieces is frozen as follows (the printed
per-cell gluing formulas in circulation disagree internally about which
cells sit at which degree; this assignment is the unique one, up to the
horizontal/vertical naming convention, that assembles, leaves the two
inner cones with the stated homology, keeps the outer cone regular and
reproduces the input as the embedded code -- ``l_subdivision`` re-proves
all of that on every call and the test suite shows nearby variants fail):

* every dangling line and patch factor is used in its natural
  orientation (half-integer cells one degree above integer cells);
* line index 1 anchors at the deeper original cell (the generator for
  spokes, the qubit for side lines) and index L dangles toward the
  shallower one, which enters through the gluing block at the L end;
* the horizontal qubit of a square (the shared qubit of smaller basis
  index) runs along the first patch factor.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import labels as lb
from ..chain import (BasedComplex, homology, homology_dim, space_complex,
                     tensor)
from ..cone import ConeLevel, ConeSpec, assemble
from ..css import CssCode
from ..errors import ConstructionError, ShapeError
from ..f2linalg import BitMatrix
from .base import BlockBuilder, BuiltCone, dangling_repetition


@dataclass
class SquareStructure:
    ok: bool
    # (generator, cogenerator) -> (horizontal qubit, vertical qubit)
    squares: dict[tuple[int, int], tuple[int, int]]
    counterexample: tuple[int, int, int] | None  # (a2, a0, common count)


def check_square_complex(code: CssCode) -> SquareStructure:
    """Every adjacent (a2, a0) pair must share exactly two qubits.

    The shared qubit of smaller basis index is named horizontal, the
    other vertical; any consistent naming yields a valid structure, this
    one is fixed so tests can assert exact matrices.
    """
    d2, d1 = code.complex.diff(2), code.complex.diff(1)
    squares = {}
    for a2 in range(code.num_z_generators):
        support = set(d2.col_nonzeros(a2))
        for a0 in range(code.num_x_generators):
            common = sorted(support & set(d1.row_nonzeros(a0)))
            if not common:
                continue
            if len(common) != 2:
                return SquareStructure(False, {}, (a2, a0, len(common)))
            squares[(a2, a0)] = (common[0], common[1])
    return SquareStructure(True, squares, None)


def l_subdivision(code: CssCode, subdivisions: int) -> BuiltCone:
    """The L-subdivision cone of a square complex; embedded code = input.

    Raises ConstructionError with the full check transcript if any of the
    defining claims fails (inner cone homology, outer regularity, or the
    embedded-code identification).
    """
    if subdivisions < 2:
        raise ShapeError(f"subdivision needs L >= 2, got {subdivisions}")
    structure = check_square_complex(code)
    if not structure.ok:
        a2, a0, count = structure.counterexample
        raise ConstructionError(
            f"not a square complex: generators ({a2}, {a0}) share "
            f"{count} qubits, need exactly 2")
    a = code.complex
    L = subdivisions
    line = dangling_repetition(L)
    patch = tensor(line, line)

    d2, d1 = a.diff(2), a.diff(1)
    spokes = sorted((a2, a1) for a2 in range(a.dim(2))
                    for a1 in d2.col_nonzeros(a2))
    sides = sorted((a1, a0) for a0 in range(a.dim(0))
                   for a1 in d1.row_nonzeros(a0))
    patches = sorted(structure.squares)

    spoke_cpx = _tagged_sum(line, len(spokes))
    patch_cpx = _tagged_sum(patch, len(patches))
    side_cpx = _tagged_sum(line, len(sides))
    spoke_idx = {pair: i for i, pair in enumerate(spokes)}
    patch_idx = {pair: i for i, pair in enumerate(patches)}
    side_idx = {pair: i for i, pair in enumerate(sides)}

    # inner cone for level 1: spokes glued into the original qubits
    c1_levels = [ConeLevel(spoke_cpx, 1),
                 ConeLevel(space_complex(a.labels(1)), 1)]
    bb1 = BlockBuilder(c1_levels)
    for col, lab in enumerate(spoke_cpx.labels(1)):  # half cells
        cell, t = _untag(lab)
        if lb.half_base(cell) == L:
            bb1.add(0, 1, 2, spokes[t][1], col)
    c1_spec = bb1.finish()
    c1 = assemble(c1_spec)

    # inner cone for level 0: patches -> side lines -> original cogenerators
    c0_levels = [ConeLevel(patch_cpx, 0),
                 ConeLevel(side_cpx, 0),
                 ConeLevel(space_complex(a.labels(0)), 0)]
    bb0 = BlockBuilder(c0_levels)
    for degree in (2, 1):
        for col, lab in enumerate(patch_cpx.labels(degree)):
            cell, t = _untag(lab)
            a2, a0 = patches[t]
            h, v = structure.squares[(a2, a0)]
            ci, cj = lb.parts(cell)
            # crossing the far end of the first factor lands on the
            # horizontal side line, of the second factor on the vertical
            if lb.is_half(ci) and lb.half_base(ci) == L:
                row = side_cpx.index_or_none(degree - 1,
                                             lb.tagged(cj, side_idx[(h, a0)]))
                if row is not None:
                    bb0.add(1, 2, degree, row, col)
            if lb.is_half(cj) and lb.half_base(cj) == L:
                row = side_cpx.index_or_none(degree - 1,
                                             lb.tagged(ci, side_idx[(v, a0)]))
                if row is not None:
                    bb0.add(1, 2, degree, row, col)
    for col, lab in enumerate(side_cpx.labels(1)):  # half cells
        cell, t = _untag(lab)
        if lb.half_base(cell) == L:
            bb0.add(0, 1, 1, sides[t][1], col)
    c0_spec = bb0.finish()
    c0 = assemble(c0_spec)

    # outer cone
    levels = [ConeLevel(space_complex(a.labels(2)), 2),
              ConeLevel(c1, 0), ConeLevel(c0, 0)]
    bb = BlockBuilder(levels)
    # g_{2,21}: a2 -> sum of spoke cells |1; a2 a1>
    for a2 in range(a.dim(2)):
        for a1 in d2.col_nonzeros(a2):
            row = c1.index(1, lb.tagged(lb.tagged(lb.cell(1),
                                                  spoke_idx[(a2, a1)]), 1))
            bb.add(1, 2, 2, row, a2)
    # g_{21,20}: spoke cell s -> patch cells O(s) over cogenerators of a1
    for degree in (2, 1):
        for col, lab in enumerate(c1.labels(degree)):
            inner, lvl = _untag(lab)
            if lvl != 1:
                continue
            cell, t = _untag(inner)
            a2, a1 = spokes[t]
            for a0 in d1.col_nonzeros(a1):
                h, v = structure.squares[(a2, a0)]
                oriented = lb.pair(cell, lb.cell(1)) if a1 == h \
                    else lb.pair(lb.cell(1), cell)
                row = c0.index_or_none(degree - 1,
                                       lb.tagged(lb.tagged(oriented,
                                                           patch_idx[(a2, a0)]), 2))
                if row is not None:
                    bb.add(0, 1, degree, row, col)
    # g_{1,10}: a1 -> sum of side cells |1; a1 a0>
    for col, lab in enumerate(c1.labels(1)):
        inner, lvl = _untag(lab)
        if lvl != 0:
            continue
        a1 = a.index(1, inner)
        for a0 in d1.col_nonzeros(a1):
            row = c0.index(0, lb.tagged(lb.tagged(lb.cell(1),
                                                  side_idx[(a1, a0)]), 1))
            bb.add(0, 1, 1, row, col)
    spec = bb.finish()

    reps1_cols = [1 << c1.index(1, lb.tagged(lab, 0)) for lab in a.labels(1)]
    reps0_cols = [1 << c0.index(0, lb.tagged(lab, 0)) for lab in a.labels(0)]
    built = BuiltCone(
        name=f"l_subdivision(L={L})", spec=spec, declared=a,
        declared_reps={2: BitMatrix.identity(a.dim(2)),
                       1: BitMatrix.from_columns(reps1_cols, c1.dim(1)),
                       0: BitMatrix.from_columns(reps0_cols, c0.dim(0))},
        log={"squares": len(patches), "spokes": len(spokes),
             "sides": len(sides)})

    transcript = built.verify(raise_on_fail=False)
    transcript.extend(_check_inner(c1, a.dim(1), 1, "level 1"))
    transcript.extend(_check_inner(c0, a.dim(0), 0, "level 0"))
    if any(line.startswith("FAIL") for line in transcript):
        raise ConstructionError("l_subdivision checks failed", transcript)
    built.log["transcript"] = transcript
    return built


def _check_inner(inner: BasedComplex, want_dim: int, at_degree: int,
                 name: str) -> list[str]:
    lines = []
    for i in range(inner.top_degree + 1):
        d = homology_dim(inner, i)
        expect = want_dim if i == at_degree else 0
        flag = "PASS" if d == expect else "FAIL"
        lines.append(f"{flag} inner {name}: dim H_{i} = {d}, expected {expect}")
    return lines


def _tagged_sum(piece: BasedComplex, count: int) -> BasedComplex:
    from ..chain import direct_sum
    if count == 0:
        return BasedComplex([()], [])
    return direct_sum([piece] * count, tags=list(range(count)))


def _untag(label: lb.Label) -> tuple[lb.Label, int]:
    inner, t = lb.parts(label)
    return inner, t[1]
