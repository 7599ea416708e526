"""CSS-code view of a length-2 chain complex.

Qubits live at degree 1; the degree-2 differential holds the Z-type
generators as columns and the transpose of the degree-1 differential
holds the X-type generators.  Distances come from an exhaustive scan of
the relevant kernel -- slow but trustworthy, which is the point: these
numbers are the oracle everything else is checked against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from . import labels as lb
from .chain import (BasedComplex, HomologyData, WeightReport, homology,
                    space_complex, supports, transpose_complex, validate,
                    weights)
from .errors import CommutationError, DistanceCapExceeded, ShapeError
from .f2linalg import BitMatrix, LinearSolver

Side = Literal["Z", "X"]

DEFAULT_DISTANCE_CAP = 24


class CssCode:
    """A validated length-2 based complex with cached degree-1 homology."""

    __slots__ = ("complex", "_hom_z", "_hom_x", "_transpose")

    def __init__(self, complex: BasedComplex):
        if complex.top_degree != 2:
            raise ShapeError(f"CSS code needs top degree 2, got {complex.top_degree}")
        validate(complex)
        self.complex = complex
        self._hom_z: HomologyData | None = None
        self._hom_x: HomologyData | None = None
        self._transpose: BasedComplex | None = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_parity_checks(cls, h_x: BitMatrix, h_z: BitMatrix) -> "CssCode":
        """Columns of h_x / h_z are the X / Z generator supports."""
        if h_x.rows != h_z.rows:
            raise ShapeError(f"h_x has {h_x.rows} qubits but h_z has {h_z.rows}")
        product = h_x.transpose() @ h_z
        if not product.is_zero():
            col = min(j for j in range(product.cols) if product.column_int(j))
            row = product.col_nonzeros(col)[0]
            raise CommutationError(x_gen=row, z_gen=col)
        n = h_x.rows
        cpx = BasedComplex(
            [[lb.tagged(lb.cell(j + 1), 0) for j in range(h_x.cols)],
             [lb.cell(j + 1) for j in range(n)],
             [lb.tagged(lb.cell(j + 1), 2) for j in range(h_z.cols)]],
            [h_x.transpose(), h_z])
        return cls(cpx)

    # -- basic data -------------------------------------------------------

    @property
    def n(self) -> int:
        return self.complex.dim(1)

    @property
    def num_z_generators(self) -> int:
        return self.complex.dim(2)

    @property
    def num_x_generators(self) -> int:
        return self.complex.dim(0)

    @property
    def h_z(self) -> BitMatrix:
        return self.complex.diff(2)

    @property
    def h_x(self) -> BitMatrix:
        return self.complex.diff(1).transpose()

    @property
    def k(self) -> int:
        return self.n - self.complex.diff(1).rank() - self.complex.diff(2).rank()

    def weights(self) -> WeightReport:
        return weights(self.complex)

    def transpose(self) -> BasedComplex:
        if self._transpose is None:
            self._transpose = transpose_complex(self.complex)
        return self._transpose

    def homology_z(self) -> HomologyData:
        if self._hom_z is None:
            self._hom_z = homology(self.complex, 1)
        return self._hom_z

    def homology_x(self) -> HomologyData:
        # top degree 2, so old degree 1 is again degree 1 after reversal
        if self._hom_x is None:
            self._hom_x = homology(self.transpose(), 1)
        return self._hom_x

    def logical_reps(self, side: Side) -> BitMatrix:
        """k representative logical operators of the requested type."""
        hom = self.homology_z() if side == "Z" else self.homology_x()
        return hom.reps

    # -- oracles ----------------------------------------------------------

    def distance(self, side: Side, cap: int = DEFAULT_DISTANCE_CAP,
                 parts: int = 1) -> int | None:
        """Exact minimum weight of a nontrivial logical, by full enumeration.

        Enumerates every vector of the cycle kernel (Z: ker d_1, X: ker d_2^T)
        and skips those inside the corresponding image.  Returns None when
        there is no nontrivial class (k = 0).  ``parts`` >= 1 splits the scan
        into contiguous index ranges whose minima are combined -- the result
        is identical to the sequential scan by construction and by test.
        """
        if side == "Z":
            kernel_of, image_of = self.complex.diff(1), self.complex.diff(2)
        else:
            kernel_of = self.complex.diff(2).transpose()
            image_of = self.complex.diff(1).transpose()
        kernel = kernel_of.kernel_basis()
        if kernel.cols > cap:
            raise DistanceCapExceeded(kernel.cols, cap)
        if self.k == 0:
            return None
        gens = kernel.column_ints()
        echelon = _int_echelon(image_of.column_ints())
        best = None
        for lo, hi in _ranges(1 << kernel.cols, max(parts, 1)):
            found = _scan_range(gens, echelon, lo, hi, best)
            if found is not None and (best is None or found < best):
                best = found
        return best

    def parameters(self, distance_cap: int = DEFAULT_DISTANCE_CAP) -> "CssParams":
        d: dict[Side, int | None] = {}
        status: dict[Side, str] = {}
        for side in ("Z", "X"):
            try:
                value = self.distance(side, cap=distance_cap)
            except DistanceCapExceeded as exc:
                d[side] = None
                status[side] = f"capped(kernel_dim={exc.kernel_dim},cap={exc.cap})"
                continue
            d[side] = value
            status[side] = "ok" if value is not None else "no-nontrivial-logicals"
        return CssParams(n=self.n, k=self.k, d_z=d["Z"], d_x=d["X"],
                         d_z_status=status["Z"], d_x_status=status["X"],
                         weights=self.weights())

    def is_reasonable(self, generators: Iterable[int] | None = None,
                      support_cap: int = 24) -> "ReasonableReport":
        """No nontrivial Z-logical may hide inside a listed generator's support.

        For each listed degree-2 generator, every nonzero subset of its
        qubit support is tried: a subset that is a cycle of d_1 but not a
        boundary is a witness and the verdict is False.
        """
        if generators is None:
            generators = range(self.complex.dim(2))
        d1 = self.complex.diff(1)
        image_solver = LinearSolver(self.complex.diff(2))
        for g in generators:
            support = sorted(self.complex.diff(2).col_nonzeros(g))
            w = len(support)
            if w > support_cap:
                raise DistanceCapExceeded(w, support_cap)
            syndromes = [d1.column_int(q) for q in support]
            vec = 0
            syn = 0
            for code in range(1, 1 << w):
                j = (code & -code).bit_length() - 1
                vec ^= 1 << support[j]
                syn ^= syndromes[j]
                if syn == 0 and not image_solver.in_span(vec):
                    subset = frozenset(q for q in support if (vec >> q) & 1)
                    return ReasonableReport(False, g, subset)
        return ReasonableReport(True, None, None)


@dataclass
class CssParams:
    """n, k, weights, and oracle distances when they fit under the cap."""

    n: int
    k: int
    d_z: int | None
    d_x: int | None
    d_z_status: str
    d_x_status: str
    weights: WeightReport

    @property
    def d(self) -> int | None:
        if self.d_z is None or self.d_x is None:
            return None
        return min(self.d_z, self.d_x)


@dataclass
class ReasonableReport:
    ok: bool
    witness_generator: int | None
    witness_subset: frozenset[int] | None


def css_from_parity_checks(h_x: BitMatrix, h_z: BitMatrix) -> CssCode:
    return CssCode.from_parity_checks(h_x, h_z)


# -- enumeration internals (int bitmask path for speed) --------------------

def _int_echelon(columns: Sequence[int]) -> list[tuple[int, int]]:
    """(pivot bit, row) pairs spanning the given columns, fully reduced."""
    ech: list[tuple[int, int]] = []
    for col in columns:
        red = _reduce(col, ech)
        if red:
            p = (red & -red).bit_length() - 1
            ech = [(q, row ^ red if (row >> p) & 1 else row) for q, row in ech]
            ech.append((p, red))
            ech.sort()
    return ech


def _reduce(vec: int, ech: list[tuple[int, int]]) -> int:
    for p, row in ech:
        if (vec >> p) & 1:
            vec ^= row
    return vec


def _gray(i: int) -> int:
    return i ^ (i >> 1)


def _combo(gens: Sequence[int], mask: int) -> int:
    out = 0
    for j, g in enumerate(gens):
        if (mask >> j) & 1:
            out ^= g
    return out


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    step = (total + parts - 1) // parts
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _scan_range(gens, echelon, lo, hi, best) -> int | None:
    """Min weight of a non-image kernel vector with Gray index in [lo, hi)."""
    cur = _combo(gens, _gray(lo))
    local = best
    for i in range(lo, hi):
        if i != lo:
            # gray(i) differs from gray(i-1) in exactly one generator
            flip = (_gray(i) ^ _gray(i - 1)).bit_length() - 1
            cur ^= gens[flip]
        if cur == 0:
            continue
        w = cur.bit_count()
        if (local is None or w < local) and _reduce(cur, echelon):
            local = w
            if local == 1:
                break
    return local
