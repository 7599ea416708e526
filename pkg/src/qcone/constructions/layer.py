"""Layer codes: a CSS code embedded in three stacks of toric planes.

Each qubit becomes an alternating-boundary plane, each Z generator a
rough-boundary plane, each X generator a smooth-boundary plane; gluing
acts along intersections gated by the adjacency of the input code, and
string defects supply the chain homotopy where a Z and an X plane both
touch the same qubit planes.
"""

from __future__ import annotations

from fractions import Fraction

from .. import labels as lb
from ..chain import BasedComplex, direct_sum, tensor, transpose_complex
from ..cone import ConeLevel
from ..css import CssCode
from ..errors import ShapeError
from ..f2linalg import BitMatrix
from .base import BlockBuilder, BuiltCone, repetition, string_defect


def _plane_sum(plane: BasedComplex, count: int) -> BasedComplex:
    return direct_sum([plane] * count, tags=list(range(count)))


def layer_code(code: CssCode) -> BuiltCone:
    """3-level cone whose embedded code is the input CSS code.

    Degenerate inputs (no Z or no X generators) produce empty levels; the
    cone still assembles but carries no plane structure.
    """
    a = code.complex
    n, n_z, n_x = a.dim(1), a.dim(2), a.dim(0)
    for g in range(n_z):
        if not a.diff(2).col_nonzeros(g):
            raise ShapeError(f"Z generator {g} has empty support")
    for g in range(n_x):
        if not a.diff(1).row_nonzeros(g):
            raise ShapeError(f"X generator {g} has empty support")

    x_line = repetition(n_z) if n_z else None
    y_line = repetition(n) if n else None
    z_line = repetition(n_x) if n_x else None

    def rough(line):
        return transpose_complex(line)

    empty = BasedComplex([()], [])
    z_plane = tensor(rough(y_line), rough(z_line)) if n and n_x else empty
    q_plane = tensor(x_line, rough(z_line)) if n_z and n_x else empty
    x_plane = tensor(x_line, y_line) if n_z and n else empty

    c2 = _plane_sum(z_plane, n_z) if n_z and n and n_x else empty
    c1 = _plane_sum(q_plane, n) if n and n_z and n_x else empty
    c0 = _plane_sum(x_plane, n_x) if n_x and n_z and n else empty

    levels = [ConeLevel(c2, 0), ConeLevel(c1, 0), ConeLevel(c0, 0)]
    bb = BlockBuilder(levels)

    d2 = a.diff(2)  # (y0, x0) adjacency: qubit rows, Z-generator columns
    d1 = a.diff(1)  # (z0, y0) adjacency

    # g2 |y0 z_i; x0> = 1{y0 ~ x0} |x0 z_i; y0>   (degrees 2 and 1)
    for degree in (2, 1):
        for col, lab in enumerate(c2.labels(degree)):
            plane_cell, x0 = lb.parts(lab)[0], lb.parts(lab)[1][1]
            y_lab, z_lab = lb.parts(plane_cell)
            if not lb.is_int_cell(y_lab):
                continue
            y0 = lb.coord_int(y_lab) - 1
            if not d2.get(y0, x0):
                continue
            target = lb.tagged(lb.pair(lb.cell(x0 + 1), z_lab), y0)
            row = c1.index_or_none(degree - 1, target)
            if row is not None:
                bb.add(1, 2, degree, row, col)

    # g1 |x_i z0; y0> = 1{y0 ~ z0} |x_i y0; z0>   (degrees 2 and 1)
    for degree in (2, 1):
        for col, lab in enumerate(c1.labels(degree)):
            plane_cell, y0 = lb.parts(lab)[0], lb.parts(lab)[1][1]
            x_lab, z_lab = lb.parts(plane_cell)
            if not lb.is_int_cell(z_lab):
                continue
            z0 = lb.coord_int(z_lab) - 1
            if not d1.get(z0, y0):
                continue
            target = lb.tagged(lb.pair(x_lab, lb.cell(y0 + 1)), z0)
            row = c0.index_or_none(degree - 1, target)
            if row is not None:
                bb.add(0, 1, degree, row, col)

    # p |y_i z0; x0> = 1{y_i in defect(x0 /\ z0)} |x0 y_i^+; z0>
    defects: dict[tuple[int, int], frozenset] = {}
    for x0 in range(n_z):
        z_support = set(d2.col_nonzeros(x0))
        for z0 in range(n_x):
            common = sorted(z_support & set(d1.row_nonzeros(z0)))
            if common:
                defects[(x0, z0)] = string_defect(n, [q + 1 for q in common])
    for degree in (2, 1):
        for col, lab in enumerate(c2.labels(degree)):
            plane_cell, x0 = lb.parts(lab)[0], lb.parts(lab)[1][1]
            y_lab, z_lab = lb.parts(plane_cell)
            if not lb.is_int_cell(z_lab):
                continue
            z0 = lb.coord_int(z_lab) - 1
            defect = defects.get((x0, z0))
            if defect is None or y_lab not in defect:
                continue
            target = lb.tagged(lb.pair(lb.cell(x0 + 1), lb.shift(y_lab, 1)), z0)
            row = c0.index_or_none(degree - 1, target)
            if row is not None:
                bb.add(0, 2, degree, row, col)

    spec = bb.finish()

    reps2 = []
    for x0 in range(n_z):
        vec = 0
        for j, lab in enumerate(c2.labels(2)):
            if lb.parts(lab)[1][1] == x0:
                vec |= 1 << j
        reps2.append(vec)
    reps1 = []
    for y0 in range(n):
        vec = 0
        for j, lab in enumerate(c1.labels(1)):
            if lb.parts(lab)[1][1] != y0:
                continue
            x_lab, z_lab = lb.parts(lb.parts(lab)[0])
            if x_lab == lb.cell(1) and lb.is_int_cell(z_lab):
                vec |= 1 << j
        reps1.append(vec)
    reps0 = []
    for z0 in range(n_x):
        target = lb.tagged(lb.pair(lb.cell(1), lb.cell(1)), z0)
        j = c0.index_or_none(0, target)
        reps0.append(0 if j is None else 1 << j)

    return BuiltCone(name="layer", spec=spec, declared=a,
                     declared_reps={2: BitMatrix.from_columns(reps2, c2.dim(2)),
                                    1: BitMatrix.from_columns(reps1, c1.dim(1)),
                                    0: BitMatrix.from_columns(reps0, c0.dim(0))})


def layer_distance_bound(code: CssCode,
                         distance_cap: int = 24) -> tuple[Fraction | None,
                                                          Fraction | None]:
    """Exact rational lower bounds (2/w_a) d_a(A) d_a(plane) for d_Z, d_X.

    The qubit-plane distances are its side lengths: the Z distance of an
    alternating-boundary plane is the number of X generators and the X
    distance the number of Z generators.  Returns None per side when the
    input code has no logical operators on that side.
    """
    w = code.weights()
    if w.w_z < 2 or w.w_x < 2:
        raise ShapeError(f"distance bound needs w_Z, w_X >= 2, "
                         f"got ({w.w_z}, {w.w_x})")
    if code.k == 0:
        return (None, None)
    d_z = code.distance("Z", cap=distance_cap)
    d_x = code.distance("X", cap=distance_cap)
    bound_z = Fraction(2 * d_z * code.num_x_generators, w.w_z)
    bound_x = Fraction(2 * d_x * code.num_z_generators, w.w_x)
    return (bound_z, bound_x)
