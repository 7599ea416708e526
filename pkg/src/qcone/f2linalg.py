"""Dense bit-packed linear algebra over GF(2).

Rows are stored as little-endian uint64 words so that row operations --
the inner loop of Gaussian elimination -- run word-parallel under numpy.
Bit vectors cross the API as plain Python ints (bit c = coordinate c),
which keeps XOR, popcount and hashing cheap during exhaustive searches.

All operations are pure: inputs are never mutated, outputs are fresh.
Elimination uses one fixed pivot rule (lowest remaining row in the
leftmost unresolved column), so ranks, kernels, solutions and quotient
representatives are reproducible bit for bit across runs.
"""

from __future__ import annotations

import numpy as np

from .errors import ContainmentError, ShapeError

_ONE = np.uint64(1)


def _words(cols: int) -> int:
    return (cols + 63) >> 6


def _pack_rows(dense: np.ndarray) -> np.ndarray:
    """0/1 array (m, n) -> packed (m, words) uint64, little-endian bits."""
    m, n = dense.shape
    w = _words(n)
    out = np.zeros((m, w * 8), dtype=np.uint8)
    if n:
        packed = np.packbits(dense.astype(np.uint8), axis=1, bitorder="little")
        out[:, : packed.shape[1]] = packed
    return np.ascontiguousarray(out).view(np.uint64)


def _int_to_row(value: int, cols: int) -> np.ndarray:
    w = _words(cols)
    if value < 0 or value >> cols:
        raise ShapeError(f"vector mask {bin(value)} does not fit in {cols} bits")
    return np.frombuffer(value.to_bytes(w * 8, "little"), dtype=np.uint64).copy()


def _row_to_int(row: np.ndarray) -> int:
    return int.from_bytes(row.tobytes(), "little")


class BitMatrix:
    """Immutable-by-convention dense matrix over GF(2)."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: np.ndarray):
        self.rows = rows
        self.cols = cols
        self._data = data

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative shape ({rows}, {cols})")
        return cls(rows, cols, np.zeros((rows, _words(cols)), dtype=np.uint64))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        m = cls.zeros(n, n)
        for i in range(n):
            m._data[i, i >> 6] |= _ONE << np.uint64(i & 63)
        return m

    @classmethod
    def from_dense(cls, array) -> "BitMatrix":
        arr = np.atleast_2d(np.asarray(array, dtype=np.uint8)) & 1
        if arr.size == 0 and arr.ndim == 2:
            return cls.zeros(arr.shape[0], arr.shape[1])
        return cls(arr.shape[0], arr.shape[1], _pack_rows(arr))

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries) -> "BitMatrix":
        """Build from (row, col) pairs; repeated pairs XOR-accumulate."""
        m = cls.zeros(rows, cols)
        for r, c in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ShapeError(f"entry ({r}, {c}) outside {rows}x{cols}")
            m._data[r, c >> 6] ^= _ONE << np.uint64(c & 63)
        return m

    @classmethod
    def from_columns(cls, columns, rows: int) -> "BitMatrix":
        """Build from int bitmask columns."""
        columns = list(columns)
        m = cls.zeros(rows, len(columns))
        for j, col in enumerate(columns):
            if col < 0 or col >> rows:
                raise ShapeError(f"column mask {bin(col)} does not fit in {rows} bits")
            v = col
            while v:
                low = v & -v
                r = low.bit_length() - 1
                m._data[r, j >> 6] ^= _ONE << np.uint64(j & 63)
                v ^= low
        return m

    # -- element access -----------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def get(self, r: int, c: int) -> int:
        if not (0 <= r < self.rows and 0 <= c < self.cols):
            raise ShapeError(f"index ({r}, {c}) outside {self.rows}x{self.cols}")
        return int((self._data[r, c >> 6] >> np.uint64(c & 63)) & _ONE)

    def row_int(self, r: int) -> int:
        return _row_to_int(self._data[r])

    def column_int(self, c: int) -> int:
        if not 0 <= c < self.cols:
            raise ShapeError(f"column {c} outside width {self.cols}")
        bits = (self._data[:, c >> 6] >> np.uint64(c & 63)) & _ONE
        out = 0
        for r in np.nonzero(bits)[0]:
            out |= 1 << int(r)
        return out

    def column_ints(self) -> list[int]:
        return [self.column_int(c) for c in range(self.cols)]

    def to_dense(self) -> np.ndarray:
        if self.cols == 0:
            return np.zeros((self.rows, 0), dtype=np.uint8)
        bits = np.unpackbits(self._data.view(np.uint8), axis=1, bitorder="little")
        return bits[:, : self.cols]

    def entries(self) -> list[tuple[int, int]]:
        rr, cc = np.nonzero(self.to_dense())
        return [(int(r), int(c)) for r, c in zip(rr, cc)]

    def row_nonzeros(self, r: int) -> list[int]:
        if self.cols == 0:
            return []
        bits = np.unpackbits(self._data[r].view(np.uint8), bitorder="little")
        return [int(c) for c in np.nonzero(bits[: self.cols])[0]]

    def col_nonzeros(self, c: int) -> list[int]:
        if not 0 <= c < self.cols:
            raise ShapeError(f"column {c} outside width {self.cols}")
        bits = (self._data[:, c >> 6] >> np.uint64(c & 63)) & _ONE
        return [int(r) for r in np.nonzero(bits)[0]]

    def take_columns(self, indices) -> "BitMatrix":
        dense = self.to_dense()
        return BitMatrix.from_dense(dense[:, list(indices)]) if self.rows else \
            BitMatrix.zeros(0, len(list(indices)))

    # -- predicates / stats -------------------------------------------

    def is_zero(self) -> bool:
        return not self._data.any()

    def row_weights(self) -> np.ndarray:
        if self._data.size == 0:
            return np.zeros(self.rows, dtype=np.int64)
        return np.bitwise_count(self._data).sum(axis=1).astype(np.int64)

    def col_weights(self) -> np.ndarray:
        return self.transpose().row_weights()

    def max_row_weight(self) -> int:
        w = self.row_weights()
        return int(w.max()) if w.size else 0

    def max_col_weight(self) -> int:
        w = self.col_weights()
        return int(w.max()) if w.size else 0

    # -- algebra -------------------------------------------------------

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.rows}x{self.cols} "
                             f"by {other.rows}x{other.cols}")
        out = BitMatrix.zeros(self.rows, other.cols)
        if self.cols == 0 or other.cols == 0 or self.rows == 0:
            return out
        for r in range(self.rows):
            idx = self.row_nonzeros(r)
            if idx:
                out._data[r] = np.bitwise_xor.reduce(other._data[idx], axis=0)
        return out

    def apply(self, x: int) -> int:
        """Matrix-vector product with an int bitmask over the columns."""
        xrow = _int_to_row(x, self.cols)
        if self._data.size == 0:
            return 0
        parities = np.bitwise_count(self._data & xrow).sum(axis=1) & 1
        out = 0
        for r in np.nonzero(parities)[0]:
            out |= 1 << int(r)
        return out

    def transpose(self) -> "BitMatrix":
        return BitMatrix.from_dense(self.to_dense().T) if self.rows and self.cols \
            else BitMatrix.zeros(self.cols, self.rows)

    def stack_beside(self, other: "BitMatrix") -> "BitMatrix":
        if self.rows != other.rows:
            raise ShapeError("row counts differ")
        dense = np.hstack([self.to_dense(), other.to_dense()])
        return BitMatrix.from_dense(dense) if self.rows else \
            BitMatrix.zeros(0, self.cols + other.cols)

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.cols, self._data.copy())

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return (self.rows == other.rows and self.cols == other.cols
                and np.array_equal(self._data, other._data))

    __hash__ = None

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols}, weight={int(self.row_weights().sum())})"

    # -- elimination ----------------------------------------------------

    def _echelon(self, reduced: bool) -> tuple[np.ndarray, list[int]]:
        """Copy of the packed data in (reduced) row echelon form, plus pivots.

        Pivot rule: scan columns left to right, pick the lowest remaining
        row with a 1.  ``pivots[j]`` is the column of pivot row j.
        """
        data = self._data.copy()
        m = self.rows
        pivots: list[int] = []
        r = 0
        for c in range(self.cols):
            if r == m:
                break
            w, b = c >> 6, np.uint64(c & 63)
            colbits = (data[r:, w] >> b) & _ONE
            nz = np.nonzero(colbits)[0]
            if nz.size == 0:
                continue
            p = r + int(nz[0])
            if p != r:
                data[[r, p]] = data[[p, r]]
            if reduced:
                hits = np.nonzero((data[:, w] >> b) & _ONE)[0]
                hits = hits[hits != r]
            else:
                hits = r + 1 + np.nonzero((data[r + 1:, w] >> b) & _ONE)[0]
            if hits.size:
                data[hits] ^= data[r]
            pivots.append(c)
            r += 1
        return data, pivots

    def rank(self) -> int:
        return len(self._echelon(reduced=False)[1])

    def kernel_basis(self) -> "BitMatrix":
        """Columns form a basis of the right kernel, ordered by free column."""
        data, pivots = self._echelon(reduced=True)
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        out = BitMatrix.zeros(self.cols, len(free))
        for j, f in enumerate(free):
            out._data[f, j >> 6] ^= _ONE << np.uint64(j & 63)
            wf, bf = f >> 6, np.uint64(f & 63)
            for i, p in enumerate(pivots):
                if (data[i, wf] >> bf) & _ONE:
                    out._data[p, j >> 6] ^= _ONE << np.uint64(j & 63)
        return out

    def solve(self, b: int) -> int | None:
        """Some x with A x = b (free variables 0), or None if inconsistent."""
        return LinearSolver(self).solve(b)


def _inverse(matrix: BitMatrix) -> BitMatrix:
    """Inverse of a square matrix; raises ShapeError if singular."""
    n = matrix.rows
    if matrix.cols != n:
        raise ShapeError(f"cannot invert {matrix.rows}x{matrix.cols}")
    wide = matrix.stack_beside(BitMatrix.identity(n))
    data, pivots = wide._echelon(reduced=True)
    if len(pivots) != n or pivots != list(range(n)):
        raise ShapeError("matrix is singular")
    aw = _words(n)
    dense = np.unpackbits(data.view(np.uint8), axis=1, bitorder="little")
    return BitMatrix.from_dense(dense[:, n:2 * n]) if n else matrix.copy()


class LinearSolver:
    """Reusable elimination state for solving A x = b repeatedly.

    Pre-selects a deterministic independent column set C (the elimination
    pivots) and an independent row set S of A[:, C], then inverts that
    square core.  Each solve reads the S-entries of b, applies the small
    inverse, scatters the result onto the pivot columns (free variables
    stay zero, matching single-shot elimination), and verifies A x = b to
    detect inconsistent systems.
    """

    __slots__ = ("matrix", "_pivot_cols", "_pivot_rows", "_inv", "_core")

    def __init__(self, matrix: BitMatrix):
        self.matrix = matrix
        _, self._pivot_cols = matrix._echelon(reduced=False)
        core_cols = matrix.take_columns(self._pivot_cols)
        _, self._pivot_rows = core_cols.transpose()._echelon(reduced=False)
        rho = len(self._pivot_cols)
        core = BitMatrix(rho, rho,
                         core_cols._data[self._pivot_rows].copy()) \
            if rho else BitMatrix.zeros(0, 0)
        self._core = core
        self._inv = _inverse(core)

    @property
    def rank(self) -> int:
        return len(self._pivot_cols)

    def solve(self, b: int) -> int | None:
        if b < 0 or b >> self.matrix.rows:
            raise ShapeError(f"vector does not fit in {self.matrix.rows} bits")
        b_s = 0
        for i, r in enumerate(self._pivot_rows):
            if (b >> r) & 1:
                b_s |= 1 << i
        y = self._inv.apply(b_s)
        x = 0
        for i, c in enumerate(self._pivot_cols):
            if (y >> i) & 1:
                x |= 1 << c
        if self.matrix.apply(x) != b:
            return None
        return x

    def in_span(self, b: int) -> bool:
        return self.solve(b) is not None


class QuotientBasis:
    """A basis of V/W given spanning data for W inside V.

    ``subspace_basis`` holds the independent columns spanning W;
    ``cocycle_reps`` extends them to a basis of V.  ``coordinates``
    maps any v in V to its coset coordinates over the representatives.
    """

    __slots__ = ("ambient_dim", "subspace_basis", "cocycle_reps", "_solver")

    def __init__(self, ambient_dim: int, subspace_basis: BitMatrix,
                 cocycle_reps: BitMatrix, solver: LinearSolver):
        self.ambient_dim = ambient_dim
        self.subspace_basis = subspace_basis
        self.cocycle_reps = cocycle_reps
        self._solver = solver

    @property
    def dim(self) -> int:
        return self.cocycle_reps.cols

    def coordinates(self, v: int) -> int:
        """Coordinates of [v] over the representatives; 0 iff v in W."""
        x = self._solver.solve(v)
        if x is None:
            raise ContainmentError(-1)
        return x >> self.subspace_basis.cols

    def contains(self, v: int) -> bool:
        return self._solver.in_span(v)


def quotient_basis(v_basis: BitMatrix, w_basis: BitMatrix, *,
                   assume_contained: bool = False) -> QuotientBasis:
    """Extend a basis of W <= V to a basis of V; representatives span V/W.

    ``w_basis`` columns must be independent and contained in span(v_basis)
    (checked by solving; the witness column index is reported on failure;
    ``assume_contained`` skips the check when inclusion is structural).
    Representatives are chosen deterministically: v columns are scanned in
    order and kept whenever independent of everything kept so far, which
    is exactly the pivot-column rule of one echelon pass over [W | V].
    """
    if v_basis.rows != w_basis.rows:
        raise ShapeError("ambient dimensions differ")
    if not assume_contained:
        v_solver = LinearSolver(v_basis)
        for j in range(w_basis.cols):
            if not v_solver.in_span(w_basis.column_int(j)):
                raise ContainmentError(j)
        if w_basis.rank() != w_basis.cols:
            raise ShapeError("subspace basis columns are dependent")
    combined = w_basis.stack_beside(v_basis)
    _, pivots = combined._echelon(reduced=False)
    if assume_contained and pivots[:w_basis.cols] != list(range(w_basis.cols)):
        raise ShapeError("subspace basis columns are dependent")
    rep_columns = [p - w_basis.cols for p in pivots if p >= w_basis.cols]
    reps_m = v_basis.take_columns(rep_columns)
    solver = LinearSolver(w_basis.stack_beside(reps_m))
    return QuotientBasis(v_basis.rows, w_basis, reps_m, solver)


# -- op-style aliases (the functional surface of this module) -----------

def multiply(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    return a @ b


def rank(a: BitMatrix) -> int:
    return a.rank()


def kernel_basis(a: BitMatrix) -> BitMatrix:
    return a.kernel_basis()


def solve(a: BitMatrix, b: int) -> int | None:
    return a.solve(b)


def transpose(a: BitMatrix) -> BitMatrix:
    return a.transpose()
