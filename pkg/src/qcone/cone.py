"""Multi-level mapping cones over GF(2).

A :class:`ConeSpec` is a leveled decomposition of a chain complex: a list
of level complexes (index s descending, each placed at a degree offset)
together with strictly lower-triangular block maps.  The block keyed
``(r, s, i)`` maps level s at total degree i into level r at total degree
i - 1; sub-diagonal blocks are gluing maps, lower ones chain homotopies.
Unspecified blocks are zero.

``assemble`` builds the total complex and proves dd = 0 (the binding
check that gluing data was specified correctly).  ``check_regular``,
``embedded_complex``, ``lift_class`` and ``embedding_iso`` realize the
level-homology calculus: for a cone regular with respect to degree m,
classes of the embedded complex lift to classes of the total complex
through a level-by-level downward solve, and the induced map on homology
is an isomorphism -- which ``embedding_iso`` certifies numerically.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import labels as lb
from .chain import (BasedComplex, HomologyData, homology, homology_dim,
                    project_to_homology, validate)
from .errors import (ChainConditionError, ConeAssemblyError, IsomorphismError,
                     MalformedSpecError, RegularityError, ShapeError)
from .f2linalg import BitMatrix, LinearSolver, QuotientBasis, quotient_basis


@dataclass(frozen=True)
class ConeLevel:
    complex: BasedComplex
    offset: int = 0

    def dim_at(self, total_degree: int) -> int:
        return self.complex.dim(total_degree - self.offset)

    def labels_at(self, total_degree: int):
        return self.complex.labels(total_degree - self.offset)


class ConeSpec:
    """Levels C^n .. C^0 plus lower-triangular block maps."""

    __slots__ = ("levels", "blocks")

    def __init__(self, levels: Sequence[ConeLevel],
                 blocks: Mapping[tuple[int, int, int], BitMatrix]):
        self.levels = tuple(levels)
        n = self.n
        for (r, s, i), mat in blocks.items():
            if not 0 <= r < s <= n:
                raise ShapeError(f"block ({r}, {s}) is not strictly lower-triangular")
            want = (self.level(r).dim_at(i - 1), self.level(s).dim_at(i))
            if mat.shape != want:
                raise ShapeError(f"block ({r}, {s}, {i}) has shape {mat.shape}, "
                                 f"expected {want}")
        self.blocks = dict(blocks)

    @property
    def n(self) -> int:
        """Highest level index; the cone has n + 1 levels."""
        return len(self.levels) - 1

    def level(self, s: int) -> ConeLevel:
        """Level s, with s counted the mathematical way (n down to 0)."""
        if not 0 <= s <= self.n:
            raise ShapeError(f"level {s} outside 0..{self.n}")
        return self.levels[self.n - s]

    def block(self, r: int, s: int, i: int) -> BitMatrix | None:
        return self.blocks.get((r, s, i))

    def top_degree(self) -> int:
        return max(level.offset + level.complex.top_degree for level in self.levels)

    def layout(self, i: int) -> list[tuple[int, int, int]]:
        """Per-level slices of the total degree-i space: (s, start, dim)."""
        out = []
        start = 0
        for s in range(self.n, -1, -1):
            d = self.level(s).dim_at(i)
            out.append((s, start, d))
            start += d
        return out

    def total_dim(self, i: int) -> int:
        return sum(d for _, _, d in self.layout(i))

    def component(self, i: int, vec: int, s: int) -> int:
        """Level-s slice of an assembled degree-i vector."""
        for ls, start, d in self.layout(i):
            if ls == s:
                return (vec >> start) & ((1 << d) - 1)
        raise ShapeError(f"level {s} not present")

    def inject(self, i: int, s: int, vec: int) -> int:
        """Embed a level-s vector into the assembled degree-i space."""
        for ls, start, d in self.layout(i):
            if ls == s:
                if vec >> d:
                    raise ShapeError(f"vector does not fit level {s} at degree {i}")
                return vec << start
        raise ShapeError(f"level {s} not present")


def single_level(c: BasedComplex, offset: int = 0) -> ConeSpec:
    return ConeSpec([ConeLevel(c, offset)], {})


def assemble(spec: ConeSpec) -> BasedComplex:
    """Total complex; raises ConeAssemblyError if the chain condition fails."""
    top = spec.top_degree()
    label_sets = []
    for i in range(top + 1):
        labs = []
        for s in range(spec.n, -1, -1):
            labs.extend(lb.tagged(a, s) for a in spec.level(s).labels_at(i))
        label_sets.append(labs)

    diffs = []
    for i in range(1, top + 1):
        src_layout = spec.layout(i)
        dst_layout = {s: start for s, start, _ in spec.layout(i - 1)}
        entries = []
        for s, c_start, _ in src_layout:
            level = spec.level(s)
            internal = level.complex.diff(i - level.offset) \
                if 1 <= i - level.offset <= level.complex.top_degree else None
            if internal is not None:
                r_start = dst_layout[s]
                entries.extend((r_start + r, c_start + c) for r, c in internal.entries())
            for r_lvl in range(s - 1, -1, -1):
                block = spec.block(r_lvl, s, i)
                if block is not None:
                    r_start = dst_layout[r_lvl]
                    entries.extend((r_start + r, c_start + c)
                                   for r, c in block.entries())
        diffs.append(BitMatrix.from_entries(len(label_sets[i - 1]),
                                            len(label_sets[i]), entries))

    total = BasedComplex(label_sets, diffs)
    try:
        validate(total)
    except ChainConditionError as err:
        source_level = _level_of(spec, err.degree, err.witness_col)
        target_level = _level_of(spec, err.degree - 2, err.nonzero_row)
        raise ConeAssemblyError(err.degree, err.witness_col, err.witness_label,
                                err.nonzero_row, source_level, target_level) from None
    return total


def _level_of(spec: ConeSpec, degree: int, index: int) -> int:
    for s, start, d in spec.layout(degree):
        if start <= index < start + d:
            return s
    return -1


@dataclass
class RegularityReport:
    degree: int
    failures: list[tuple[int, int, int]]  # (level, degree, dim H)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_regular(spec: ConeSpec, m: int) -> RegularityReport:
    """Regularity with respect to degree m: the level homologies H_i(d^s)
    vanish for 0 <= s < i <= m and m <= i < s <= n."""
    failures = []
    required = set()
    for s in range(spec.n + 1):
        for i in range(s + 1, m + 1):
            required.add((s, i))
        for i in range(m, s):
            required.add((s, i))
    for s, i in sorted(required):
        level = spec.level(s)
        d = homology_dim(level.complex, i - level.offset) \
            if 0 <= i - level.offset <= level.complex.top_degree else 0
        if d:
            failures.append((s, i, d))
    return RegularityReport(m, failures)


@dataclass
class EmbeddedData:
    """Embedded complex plus the per-level homology used to induce it."""

    complex: BasedComplex
    level_homology: dict[int, HomologyData] = field(default_factory=dict)


def _level_homology(spec: ConeSpec, s: int, total_degree: int) -> HomologyData:
    level = spec.level(s)
    internal = total_degree - level.offset
    if 0 <= internal <= level.complex.top_degree:
        return homology(level.complex, internal)
    empty = BitMatrix.zeros(0, 0)
    return HomologyData(degree=internal, dim=0, reps=empty,
                        quotient=quotient_basis(empty, BitMatrix.zeros(0, 0)))


def embedded_data(spec: ConeSpec) -> EmbeddedData:
    """The embedded complex: degree s carries H_s of level s, and the
    differentials are the gluing maps induced on homology classes."""
    n = spec.n
    homs = {s: _level_homology(spec, s, s) for s in range(n + 1)}
    label_sets = []
    for s in range(n + 1):
        label_sets.append([lb.pair(lb.tag(s), lb.cell(j + 1))
                           for j in range(homs[s].dim)])
    diffs = []
    for s in range(1, n + 1):
        block = spec.block(s - 1, s, s)
        cols = []
        for j in range(homs[s].dim):
            rep = homs[s].reps.column_int(j)
            w = block.apply(rep) if block is not None else 0
            if w == 0:
                cols.append(0)
                continue
            lower = spec.level(s - 1)
            try:
                coords = project_to_homology(lower.complex, s - 1 - lower.offset,
                                             w, homs[s - 1])
            except Exception as exc:
                raise MalformedSpecError(
                    f"image of class {j} of level {s} is not a cycle of "
                    f"level {s - 1}: {exc}") from exc
            cols.append(coords)
        diffs.append(BitMatrix.from_columns(cols, homs[s - 1].dim))
    embedded = BasedComplex(label_sets, diffs)
    validate(embedded)
    return EmbeddedData(embedded, homs)


def embedded_complex(spec: ConeSpec) -> BasedComplex:
    return embedded_data(spec).complex


def lift_class(spec: ConeSpec, m: int, class_coords: int,
               data: EmbeddedData | None = None, *, recheck: bool = True) -> int:
    """Lift a class of H_m(embedded) to a cycle of the assembled complex.

    The lift sets the level-m component to the class representative and
    solves downward level by level: each lower component must kill the
    boundary contributed by everything above it.  Existence of the solves
    is exactly what regularity at m guarantees; a failed solve therefore
    signals inconsistent spec data and raises.
    """
    if not 0 <= m <= spec.n:
        raise ShapeError(f"lift degree {m} outside level range 0..{spec.n}")
    if recheck:
        report = check_regular(spec, m)
        if not report.ok:
            raise RegularityError(report.failures)
    if data is None:
        data = embedded_data(spec)
    ehd = homology(data.complex, m)
    if class_coords < 0 or class_coords >> ehd.dim:
        raise ShapeError(f"class coordinates do not fit dim {ehd.dim}")
    # representative inside E_m = H_m(level m), then inside the level-m chains
    e_vec = 0
    for j in range(ehd.dim):
        if (class_coords >> j) & 1:
            e_vec ^= ehd.reps.column_int(j)
    hm = data.level_homology[m]
    comp = {s: 0 for s in range(spec.n + 1)}
    for j in range(hm.dim):
        if (e_vec >> j) & 1:
            comp[m] ^= hm.reps.column_int(j)

    for r in range(m - 1, -1, -1):
        rhs = 0
        for s in range(r + 1, m + 1):
            block = spec.block(r, s, m)
            if block is not None and comp[s]:
                rhs ^= block.apply(comp[s])
        level = spec.level(r)
        internal = m - level.offset
        if rhs == 0:
            comp[r] = 0
            continue
        if not 1 <= internal <= level.complex.top_degree:
            raise RegularityError([(r, m, -1)])
        sol = level.complex.diff(internal).solve(rhs)
        if sol is None:
            raise RegularityError([(r, m, -1)])
        comp[r] = sol

    out = 0
    for s in range(spec.n + 1):
        if comp[s]:
            out |= spec.inject(m, s, comp[s])
    return out


def embedding_iso(spec: ConeSpec, m: int, *,
                  total: BasedComplex | None = None,
                  data: EmbeddedData | None = None) -> BitMatrix:
    """Matrix of H_m(embedded) -> H_m(total) on the deterministic bases.

    Raises IsomorphismError unless the result is square and invertible.
    """
    if not 0 <= m <= spec.n:
        raise ShapeError(f"degree {m} outside level range 0..{spec.n}")
    report = check_regular(spec, m)
    if not report.ok:
        raise RegularityError(report.failures)
    if data is None:
        data = embedded_data(spec)
    if total is None:
        total = assemble(spec)
    thd = homology(total, m)
    ehd = homology(data.complex, m)
    cols = []
    for j in range(ehd.dim):
        z = lift_class(spec, m, 1 << j, data, recheck=False)
        cols.append(project_to_homology(total, m, z, thd))
    matrix = BitMatrix.from_columns(cols, thd.dim)
    if matrix.rows != matrix.cols:
        raise IsomorphismError(f"H_{m}(total) has dim {matrix.rows} but "
                               f"H_{m}(embedded) has dim {matrix.cols}")
    if matrix.rank() != matrix.rows:
        raise IsomorphismError(f"induced map at degree {m} is singular")
    return matrix
