"""Shared corpus: named codes, seeded random complexes, CSS codes and
chain maps.  Everything is deterministic -- generators take explicit
seeds and the suite asserts byte-stable artifacts elsewhere."""

from __future__ import annotations

import numpy as np
import pytest

from qcone import labels as lb
from qcone.chain import BasedComplex, validate
from qcone.cone import ConeLevel, ConeSpec
from qcone.css import CssCode
from qcone.f2linalg import BitMatrix

HAMMING_743 = np.array([[0, 0, 0, 1, 1, 1, 1],
                        [0, 1, 1, 0, 0, 1, 1],
                        [1, 0, 1, 0, 1, 0, 1]], dtype=np.uint8)


def steane_code() -> CssCode:
    checks = BitMatrix.from_dense(HAMMING_743.T)
    return CssCode.from_parity_checks(checks, checks)


def xxx_ziz() -> CssCode:
    """One X generator XXX and one Z generator ZIZ on three qubits."""
    return CssCode.from_parity_checks(BitMatrix.from_dense([[1], [1], [1]]),
                                      BitMatrix.from_dense([[1], [0], [1]]))


def xix_zzz() -> CssCode:
    return CssCode.from_parity_checks(BitMatrix.from_dense([[1], [0], [1]]),
                                      BitMatrix.from_dense([[1], [1], [1]]))


def c422() -> CssCode:
    """XXXX / ZZZZ on four qubits, two logicals."""
    column = BitMatrix.from_dense([[1], [1], [1], [1]])
    return CssCode.from_parity_checks(column, column)


def two_z_one_x() -> CssCode:
    """Z1Z2, Z2Z3 and XXX on three qubits; stabilizes a unique state (k=0)."""
    return CssCode.from_parity_checks(
        BitMatrix.from_dense([[1], [1], [1]]),
        BitMatrix.from_dense([[1, 0], [1, 1], [0, 1]]))


def c4_xxxx_zz() -> CssCode:
    """XXXX and Z1Z2 on four qubits (k=2)."""
    return CssCode.from_parity_checks(
        BitMatrix.from_dense([[1], [1], [1], [1]]),
        BitMatrix.from_dense([[1], [1], [0], [0]]))


def random_css(seed: int) -> CssCode:
    """Seeded CSS code with 3..8 qubits and nonzero generators."""
    rng = np.random.default_rng(seed)
    while True:
        n = int(rng.integers(3, 9))
        n_z = int(rng.integers(1, 4))
        n_x = int(rng.integers(1, 4))
        h_z = rng.integers(0, 2, size=(n, n_z)).astype(np.uint8)
        if not all(h_z[:, j].any() for j in range(n_z)):
            continue
        kernel = BitMatrix.from_dense(h_z.T).kernel_basis()
        if kernel.cols == 0:
            continue
        cols = []
        for _ in range(n_x):
            combo = 0
            while combo == 0:
                mask = rng.integers(1, 1 << kernel.cols)
                combo = 0
                for j in range(kernel.cols):
                    if (int(mask) >> j) & 1:
                        combo ^= kernel.column_int(j)
            cols.append(combo)
        h_x = BitMatrix.from_columns(cols, n)
        try:
            return CssCode.from_parity_checks(h_x, BitMatrix.from_dense(h_z))
        except Exception:  # pragma: no cover - retry on bad draw
            continue


def random_css_corpus(count: int = 20) -> list[CssCode]:
    return [random_css(seed) for seed in range(count)]


def random_complex(rng: np.random.Generator, max_dim: int = 6,
                   top: int | None = None) -> BasedComplex:
    """A random validated complex with dims <= max_dim per degree."""
    if top is None:
        top = int(rng.integers(1, 3))
    dims = [int(rng.integers(1, max_dim + 1)) for _ in range(top + 1)]
    label_sets = [[lb.tagged(lb.cell(j + 1), d) for j in range(dims[d])]
                  for d in range(top + 1)]
    diffs = []
    prev = None  # previous differential, to constrain the next one
    for d in range(1, top + 1):
        if prev is None:
            dense = rng.integers(0, 2, size=(dims[d - 1], dims[d]))
            mat = BitMatrix.from_dense(dense)
        else:
            kernel = prev.kernel_basis()
            cols = []
            for _ in range(dims[d]):
                combo = 0
                if kernel.cols:
                    mask = int(rng.integers(0, 1 << kernel.cols))
                    for j in range(kernel.cols):
                        if (mask >> j) & 1:
                            combo ^= kernel.column_int(j)
                cols.append(combo)
            mat = BitMatrix.from_columns(cols, dims[d - 1])
        diffs.append(mat)
        prev = mat
    c = BasedComplex(label_sets, diffs)
    validate(c)
    return c


def random_two_level_cone(seed: int) -> ConeSpec:
    """A 2-level cone from a random chain map between random complexes.

    The block family g_i: A_i -> B_{i-1} is sampled uniformly from the
    solution space of the chain-map equations, so nontrivial maps appear
    whenever they exist.
    """
    rng = np.random.default_rng(seed)
    a = random_complex(rng, max_dim=4)
    b = random_complex(rng, max_dim=4)
    shapes = {}
    offsets = {}
    total = 0
    for i in range(a.top_degree + 1):
        rows, cols = b.dim(i - 1), a.dim(i)
        if rows and cols and i - 1 >= 0:
            shapes[i] = (rows, cols)
            offsets[i] = total
            total += rows * cols

    def var(i: int, r: int, c: int) -> int:
        rows, cols = shapes[i]
        return offsets[i] + r * cols + c

    constraints = []
    for i in sorted(shapes):
        if i - 2 < 0 or b.dim(i - 2) == 0:
            continue
        db = b.diff(i - 1).to_dense()
        da = a.diff(i).to_dense()
        for r in range(b.dim(i - 2)):
            for c in range(a.dim(i)):
                row = np.zeros(total, dtype=np.uint8)
                # d^B g_i + g_{i-1} d^A = 0, entry (r, c)
                for m in range(b.dim(i - 1)):
                    if db[r, m]:
                        row[var(i, m, c)] ^= 1
                if i - 1 in shapes:
                    for m in range(a.dim(i - 1)):
                        if da[m, c]:
                            row[var(i - 1, r, m)] ^= 1
                if row.any():
                    constraints.append(row)
    if total == 0:
        solution = np.zeros(0, dtype=np.uint8)
    elif constraints:
        kernel = BitMatrix.from_dense(np.array(constraints)).kernel_basis()
        combo = 0
        if kernel.cols:
            mask = int(rng.integers(0, 1 << kernel.cols))
            for j in range(kernel.cols):
                if (mask >> j) & 1:
                    combo ^= kernel.column_int(j)
        solution = np.array([(combo >> v) & 1 for v in range(total)],
                            dtype=np.uint8)
    else:
        solution = rng.integers(0, 2, size=total).astype(np.uint8)

    blocks = {}
    for i, (rows, cols) in shapes.items():
        entries = [(r, c) for r in range(rows) for c in range(cols)
                   if solution[var(i, r, c)]]
        if entries:
            blocks[(0, 1, i)] = BitMatrix.from_entries(rows, cols, entries)
    return ConeSpec([ConeLevel(a, 0), ConeLevel(b, 0)], blocks)


def simplicial_zoo():
    """Small simplicial complexes: <= 3 top simplices, dimension <= 3."""
    from qcone.constructions import SimplicialComplex

    tops = [
        [(0, 1, 2)],                          # solid triangle
        [(0, 1), (1, 2), (0, 2)],             # hollow triangle
        [(0, 1, 2), (1, 2, 3)],               # two triangles, shared edge
        [(0,), (1,), (2,)],                   # three points
        [(0, 1), (1, 2), (2, 3)],             # path
        [(0, 1, 2, 3)],                       # solid tetrahedron
        [(0, 1, 2), (0, 1, 3), (0, 2, 3)],    # tetrahedron missing one face
        [(0, 1, 2), (3, 4, 5)],               # two disjoint triangles
        [(0, 1, 2), (2, 3), (3, 0)],          # triangle with a handle
        [(0, 1, 2, 3), (3, 4, 5, 6)],         # two tetrahedra, shared vertex
        [(0, 1), (1, 2), (2, 0), (0, 3)],     # circle with a whisker
    ]
    return [SimplicialComplex.from_top_simplices(t) for t in tops]


@pytest.fixture(scope="session")
def steane() -> CssCode:
    return steane_code()


@pytest.fixture(scope="session")
def css_corpus() -> list[CssCode]:
    return random_css_corpus()
