"""Based finite chain complexes over GF(2).

A :class:`BasedComplex` is a list of labeled basis sets, one per degree
0..top, with differentials between consecutive degrees.  Everything here
is immutable after construction and every operation is a pure function,
so complexes can be shared freely across threads.

Degree convention: complexes end at degree 0; padding with explicit zero
spaces (``pad_below`` / ``pad_above``) is used when a shorter complex
must be viewed at a different range of degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import labels as lb
from .errors import ChainConditionError, NotACycleError, ShapeError
from .f2linalg import BitMatrix, QuotientBasis, quotient_basis


class BasedComplex:
    """Finite chain complex with ordered, labeled bases per degree."""

    __slots__ = ("_labels", "_diffs", "_index")

    def __init__(self, label_sets: Sequence[Sequence[lb.Label]],
                 diffs: Sequence[BitMatrix]):
        if len(diffs) != max(len(label_sets) - 1, 0):
            raise ShapeError(f"{len(label_sets)} degrees need "
                             f"{max(len(label_sets) - 1, 0)} differentials, "
                             f"got {len(diffs)}")
        self._labels = tuple(tuple(ls) for ls in label_sets)
        for ls in self._labels:
            lb.check_labels(ls)
        self._diffs = tuple(diffs)
        for i, d in enumerate(self._diffs, start=1):
            if d.shape != (len(self._labels[i - 1]), len(self._labels[i])):
                raise ShapeError(
                    f"differential at degree {i} has shape {d.shape}, "
                    f"expected ({len(self._labels[i - 1])}, {len(self._labels[i])})")
        self._index = None

    @property
    def top_degree(self) -> int:
        return len(self._labels) - 1

    def dim(self, i: int) -> int:
        if not 0 <= i <= self.top_degree:
            return 0
        return len(self._labels[i])

    def dims(self) -> tuple[int, ...]:
        return tuple(len(ls) for ls in self._labels)

    def labels(self, i: int) -> tuple[lb.Label, ...]:
        if not 0 <= i <= self.top_degree:
            return ()
        return self._labels[i]

    def diff(self, i: int) -> BitMatrix:
        """The differential C_i -> C_{i-1}; zero matrix outside 1..top."""
        if 1 <= i <= self.top_degree:
            return self._diffs[i - 1]
        if i == self.top_degree + 1:
            return BitMatrix.zeros(self.dim(self.top_degree), 0)
        if i == 0:
            return BitMatrix.zeros(0, self.dim(0))
        raise ShapeError(f"degree {i} outside 0..{self.top_degree + 1}")

    def index(self, i: int, label: lb.Label) -> int:
        return self._index_map(i)[label]

    def index_or_none(self, i: int, label: lb.Label) -> int | None:
        """Basis position, or None for labels denoting the zero vector."""
        if not 0 <= i <= self.top_degree:
            return None
        return self._index_map(i).get(label)

    def _index_map(self, i: int) -> dict:
        if self._index is None:
            self._index = tuple({lab: j for j, lab in enumerate(ls)}
                                for ls in self._labels)
        return self._index[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, BasedComplex):
            return NotImplemented
        return self._labels == other._labels and self._diffs == other._diffs

    __hash__ = None

    def __repr__(self) -> str:
        return f"BasedComplex(dims={self.dims()})"


@dataclass
class HomologyData:
    """Dimension, representative cycles, and the coset-coordinate map."""

    degree: int
    dim: int
    reps: BitMatrix            # columns are cycle representatives
    quotient: QuotientBasis    # over ker d_i / im d_{i+1}


@dataclass
class WeightReport:
    """Parity-check weights of a length-2 complex in its CSS reading."""

    w_z: int
    w_x: int
    q_z: int
    q_x: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.w_z, self.w_x, self.q_z, self.q_x)


def validate(c: BasedComplex) -> None:
    """Check dd = 0 in every degree; raise with a witness otherwise."""
    for i in range(1, c.top_degree):
        prod = c.diff(i) @ c.diff(i + 1)
        if not prod.is_zero():
            col = min(j for j in range(prod.cols) if prod.column_int(j))
            row = prod.col_nonzeros(col)[0]
            raise ChainConditionError(i + 1, col, c.labels(i + 1)[col], row)


def homology(c: BasedComplex, i: int) -> HomologyData:
    """H_i = ker d_i / im d_{i+1} with deterministic representatives."""
    if not 0 <= i <= c.top_degree:
        raise ShapeError(f"degree {i} outside 0..{c.top_degree}")
    cycles = BitMatrix.identity(c.dim(i)) if i == 0 else c.diff(i).kernel_basis()
    if i == c.top_degree:
        image = BitMatrix.zeros(c.dim(i), 0)
    else:
        d_next = c.diff(i + 1)
        image = d_next.take_columns(_pivot_columns(d_next))
    # boundaries are cycles whenever dd = 0, so containment is structural
    quot = quotient_basis(cycles, image, assume_contained=True)
    return HomologyData(degree=i, dim=quot.dim, reps=quot.cocycle_reps, quotient=quot)


def _pivot_columns(m: BitMatrix) -> list[int]:
    """Indices of a deterministic maximal independent column subset."""
    _, pivots = m._echelon(reduced=False)
    return pivots


def homology_dim(c: BasedComplex, i: int) -> int:
    """dim H_i by rank arithmetic only (no representatives)."""
    if not 0 <= i <= c.top_degree:
        return 0
    k = c.dim(i) - (c.diff(i).rank() if i >= 1 else 0)
    b = c.diff(i + 1).rank() if i < c.top_degree else 0
    return k - b


def project_to_homology(c: BasedComplex, i: int, z: int,
                        data: HomologyData | None = None) -> int:
    """Coordinates of [z] in the homology basis; 0 iff z is a boundary."""
    if z < 0 or z >> c.dim(i):
        raise ShapeError(f"vector does not fit in dimension {c.dim(i)}")
    if i >= 1:
        boundary = c.diff(i).apply(z)
        if boundary:
            raise NotACycleError(i, boundary)
    if data is None:
        data = homology(c, i)
    return data.quotient.coordinates(z)


def transpose_complex(c: BasedComplex) -> BasedComplex:
    """Degree-reversed complex with transposed differentials.

    Old degree i becomes top - i; H_i of the input matches H_{top-i}
    of the output dimension for dimension, which is the only identification
    the rest of the package relies on.
    """
    top = c.top_degree
    label_sets = [c.labels(top - j) for j in range(top + 1)]
    diffs = [c.diff(top - j + 1).transpose() for j in range(1, top + 1)]
    return BasedComplex(label_sets, diffs)


def space_complex(cell_labels: Iterable[lb.Label]) -> BasedComplex:
    """A complex concentrated in degree 0."""
    return BasedComplex([tuple(cell_labels)], [])


def pad_below(c: BasedComplex, count: int) -> BasedComplex:
    """Shift degrees up by ``count``, inserting zero spaces at the bottom."""
    if count == 0:
        return c
    label_sets = [()] * count + [c.labels(i) for i in range(c.top_degree + 1)]
    diffs = [BitMatrix.zeros(0, 0) for _ in range(count - 1)]
    diffs.append(BitMatrix.zeros(0, c.dim(0)))
    diffs.extend(c.diff(i) for i in range(1, c.top_degree + 1))
    if c.top_degree == -1:  # unreachable; BasedComplex always has degree 0
        diffs = diffs[:count - 1]
    return BasedComplex(label_sets, diffs)


def pad_above(c: BasedComplex, count: int) -> BasedComplex:
    """Append zero spaces above the current top degree."""
    if count == 0:
        return c
    label_sets = [c.labels(i) for i in range(c.top_degree + 1)] + [()] * count
    diffs = list(c.diff(i) for i in range(1, c.top_degree + 1))
    diffs.append(BitMatrix.zeros(c.dim(c.top_degree), 0))
    diffs.extend(BitMatrix.zeros(0, 0) for _ in range(count - 1))
    return BasedComplex(label_sets, diffs)


def tensor(c: BasedComplex, d: BasedComplex) -> BasedComplex:
    """Tensor product with the fixed basis order (left degree descending,
    then left-index-major pairs), so representative vectors are reproducible."""
    top = c.top_degree + d.top_degree
    blocks: list[list[tuple[int, int]]] = []
    label_sets = []
    for m in range(top + 1):
        pairs = [(i, m - i) for i in range(min(c.top_degree, m), -1, -1)
                 if 0 <= m - i <= d.top_degree]
        blocks.append(pairs)
        labs = []
        for i, j in pairs:
            for a in c.labels(i):
                for b in d.labels(j):
                    labs.append(lb.pair(a, b))
        label_sets.append(labs)

    def offset(m: int, i: int, j: int) -> int:
        off = 0
        for bi, bj in blocks[m]:
            if (bi, bj) == (i, j):
                return off
            off += c.dim(bi) * d.dim(bj)
        raise ShapeError(f"block ({i},{j}) absent at degree {m}")

    diffs = []
    for m in range(1, top + 1):
        entries = []
        for i, j in blocks[m]:
            src = offset(m, i, j)
            if i >= 1:
                dst = offset(m - 1, i - 1, j)
                dmat = c.diff(i)
                nd = d.dim(j)
                for r, cc in dmat.entries():
                    for bidx in range(nd):
                        entries.append((dst + r * nd + bidx, src + cc * nd + bidx))
            if j >= 1:
                dst = offset(m - 1, i, j - 1)
                dmat = d.diff(j)
                nd_tgt = d.dim(j - 1)
                nd_src = d.dim(j)
                for r, cc in dmat.entries():
                    for aidx in range(c.dim(i)):
                        entries.append((dst + aidx * nd_tgt + r, src + aidx * nd_src + cc))
        diffs.append(BitMatrix.from_entries(len(label_sets[m - 1]),
                                            len(label_sets[m]), entries))
    return BasedComplex(label_sets, diffs)


def direct_sum(cs: Sequence[BasedComplex],
               tags: Sequence[int] | None = None) -> BasedComplex:
    """Block-diagonal sum; labels get per-summand tags ``|a; s>``."""
    cs = list(cs)
    if tags is None:
        tags = list(range(len(cs)))
    if len(tags) != len(cs):
        raise ShapeError("one tag per summand required")
    top = max((c.top_degree for c in cs), default=0)
    label_sets = []
    for m in range(top + 1):
        labs = []
        for c, t in zip(cs, tags):
            labs.extend(lb.tagged(a, t) for a in c.labels(m))
        label_sets.append(labs)
    diffs = []
    for m in range(1, top + 1):
        entries = []
        row_off = col_off = 0
        for c in cs:
            for r, cc in c.diff(m).entries():
                entries.append((row_off + r, col_off + cc))
            row_off += c.dim(m - 1)
            col_off += c.dim(m)
        diffs.append(BitMatrix.from_entries(len(label_sets[m - 1]),
                                            len(label_sets[m]), entries))
    return BasedComplex(label_sets, diffs)


@dataclass
class KunnethReport:
    ok: bool
    details: list[tuple[int, int, int]]  # (degree, lhs dim, rhs dim)


def kunneth_check(c: BasedComplex, d: BasedComplex) -> KunnethReport:
    """Compare dim H_m(C (x) D) against the convolution of the factors'
    homology dimensions, both sides computed independently by rank."""
    product = tensor(c, d)
    hc = [homology_dim(c, i) for i in range(c.top_degree + 1)]
    hd = [homology_dim(d, j) for j in range(d.top_degree + 1)]
    details = []
    ok = True
    for m in range(product.top_degree + 1):
        lhs = homology_dim(product, m)
        rhs = sum(hc[i] * hd[m - i] for i in range(len(hc))
                  if 0 <= m - i < len(hd))
        details.append((m, lhs, rhs))
        ok = ok and lhs == rhs
    return KunnethReport(ok, details)


def weights(c: BasedComplex) -> WeightReport:
    """w/q weights of the CSS reading of a length-2 complex."""
    if c.top_degree != 2:
        raise ShapeError(f"CSS weights need top degree 2, got {c.top_degree}")
    d2, d1 = c.diff(2), c.diff(1)
    return WeightReport(w_z=d2.max_col_weight(), w_x=d1.max_row_weight(),
                        q_z=d2.max_row_weight(), q_x=d1.max_col_weight())


def supports(c: BasedComplex, i: int, cell: int, j: int) -> frozenset[int]:
    """supp_j(c_i): all degree-j cells reachable by adjacency chains."""
    if not (0 <= i <= c.top_degree and 0 <= j <= c.top_degree):
        raise ShapeError(f"degrees ({i}, {j}) outside 0..{c.top_degree}")
    if abs(i - j) < 1:
        raise ShapeError("supports needs |i - j| >= 1")
    if not 0 <= cell < c.dim(i):
        raise ShapeError(f"cell {cell} outside degree-{i} dimension {c.dim(i)}")
    frontier = {cell}
    if j < i:
        for d in range(i, j, -1):
            mat = c.diff(d)
            frontier = {r for col in frontier for r in mat.col_nonzeros(col)}
    else:
        for d in range(i, j):
            mat = c.diff(d + 1)
            frontier = {cc for row in frontier for cc in mat.row_nonzeros(row)}
    return frozenset(frontier)


def common_qubits(c: BasedComplex, cell2: int, cell0: int) -> frozenset[int]:
    """c_2 /\\ c_0: the degree-1 cells adjacent to both."""
    return supports(c, 2, cell2, 1) & supports(c, 0, cell0, 1)
