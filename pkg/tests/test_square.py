"""Square complexes and L-subdivision, including the frozen orientation."""

from __future__ import annotations

import pytest

from conftest import steane_code, xxx_ziz
from qcone import labels as lb
from qcone.chain import homology_dim, validate
from qcone.cone import ConeSpec, assemble, check_regular, embedding_iso
from qcone.constructions import check_square_complex, l_subdivision, toric
from qcone.css import CssCode
from qcone.errors import (ChainConditionError, ConstructionError, ShapeError)
from qcone.f2linalg import BitMatrix


def torus_code(size: int) -> CssCode:
    return CssCode(toric("cyclic", "cyclic", size, size).complex)


def test_toric_torus_is_square_complex():
    structure = check_square_complex(torus_code(2))
    assert structure.ok
    assert len(structure.squares) == 16
    for h, v in structure.squares.values():
        assert h < v  # horizontal = smaller basis index


def test_xxx_ziz_square_verdict():
    # recorded oracle verdict: the single Z and X generator share exactly
    # two qubits, so the definition is satisfied
    structure = check_square_complex(xxx_ziz())
    assert structure.ok
    assert list(structure.squares.values()) == [(0, 2)]


def test_steane_square_counterexample():
    structure = check_square_complex(steane_code())
    assert not structure.ok
    a2, a0, count = structure.counterexample
    assert count == 4


def test_zero_differentials_vacuously_square():
    c = CssCode(_zero_css(3))
    assert check_square_complex(c).ok


def _zero_css(n: int):
    from qcone.chain import BasedComplex
    return BasedComplex([[], [lb.cell(j + 1) for j in range(n)], []],
                        [BitMatrix.zeros(0, n), BitMatrix.zeros(n, 0)])


@pytest.mark.parametrize("L", [2, 3])
def test_subdivision_torus_2x2(L):
    code = torus_code(2)
    built = l_subdivision(code, L)
    total = built.assembled
    # |A1| + spokes*L + patches*2L^2 + sides*L
    expect = 8 + 16 * L + 16 * 2 * L * L + 16 * L
    assert total.dim(1) == expect
    assert homology_dim(total, 1) == 2
    assert check_regular(built.spec, 1).ok
    iso = embedding_iso(built.spec, 1)
    assert iso.rank() == 2


def test_subdivision_xxx_ziz():
    built = l_subdivision(xxx_ziz(), 2)
    assert homology_dim(built.assembled, 1) == 1


def test_subdivision_rejects_l1():
    with pytest.raises(ShapeError):
        l_subdivision(torus_code(2), 1)


def test_subdivision_rejects_non_square():
    with pytest.raises(ConstructionError, match="not a square complex"):
        l_subdivision(steane_code(), 2)


def test_subdivision_transcript_records_checks():
    built = l_subdivision(torus_code(2), 2)
    transcript = built.log["transcript"]
    assert any("regular" in line for line in transcript)
    assert all(line.startswith("PASS") for line in transcript)


# -- the orientation freeze is load-bearing ------------------------------------

def _mutate_block(spec: ConeSpec, key, mutate):
    blocks = dict(spec.blocks)
    blocks[key] = mutate(blocks[key])
    return ConeSpec(spec.levels, blocks)


def test_wrong_spoke_anchor_breaks_chain_condition():
    # anchoring the qubit injection at index 1 instead of L: the inner
    # level-1 cone no longer matches the outer gluing
    code = torus_code(2)
    built = l_subdivision(code, 3)
    spec = built.spec
    # outer g_{2,21} anchored at far end L instead of 1
    key = (1, 2, 2)
    original = spec.blocks[key]

    def reanchor(block):
        level1 = spec.level(1).complex
        entries = []
        for r, c in block.entries():
            label = level1.labels(1)[r]
            inner, lvl = lb.parts(label)[0], lb.parts(label)[1][1]
            cell = lb.parts(inner)[0]
            swapped = lb.cell(3) if cell == lb.cell(1) else cell
            target = lb.tagged(lb.tagged(swapped, lb.parts(inner)[1][1]), lvl)
            entries.append((level1.index(1, target), c))
        return BitMatrix.from_entries(block.rows, block.cols, entries)

    broken = _mutate_block(spec, key, reanchor)
    with pytest.raises(ChainConditionError):
        assemble(broken)


def test_zeroing_side_line_gluing_breaks():
    built = l_subdivision(torus_code(2), 2)
    blocks = dict(built.spec.blocks)
    victim = next(k for k in blocks if k[:2] == (0, 1) and k[2] == 1)
    del blocks[victim]
    with pytest.raises(ChainConditionError):
        assemble(ConeSpec(built.spec.levels, blocks))
