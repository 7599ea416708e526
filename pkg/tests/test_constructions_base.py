"""Repetition variants, string defects, and the toric tensor family."""

from __future__ import annotations

import pytest

from qcone import labels as lb
from qcone.chain import homology_dim, validate
from qcone.constructions import (cyclic_repetition, dangling_repetition,
                                 repetition, string_defect, toric)
from qcone.errors import ShapeError


@pytest.mark.parametrize("length", [1, 2, 3, 6])
def test_repetition_structure(length):
    line = repetition(length)
    validate(line)
    assert line.dims() == (length, length - 1)
    assert homology_dim(line, 0) == 1


def test_repetition_rejects_zero():
    with pytest.raises(ShapeError):
        repetition(0)
    with pytest.raises(ShapeError):
        cyclic_repetition(1)
    with pytest.raises(ShapeError):
        dangling_repetition(0)


def test_dangling_exact():
    for length in (1, 3, 5):
        line = dangling_repetition(length)
        validate(line)
        assert homology_dim(line, 0) == 0
        assert homology_dim(line, 1) == 0


def test_string_defect_empty():
    assert string_defect(5, []) == frozenset()


def test_string_defect_single_interval():
    cells = string_defect(5, [1, 3])
    assert cells == {lb.cell(1), lb.half(1), lb.cell(2), lb.half(2)}


def test_string_defect_union_of_intervals():
    cells = string_defect(6, [1, 2, 4, 6])
    ints = {lb.coord_int(c) for c in cells if lb.is_int_cell(c)}
    halves = {lb.half_base(c) for c in cells if lb.is_half(c)}
    assert ints == {1, 4, 5}
    assert halves == {1, 4, 5}


def test_string_defect_odd_rejected():
    with pytest.raises(ShapeError):
        string_defect(5, [1, 2, 4])


def test_toric_periodic_k2():
    base = toric("cyclic", "cyclic", 3, 3)
    assert homology_dim(base.complex, 1) == 2


@pytest.mark.parametrize("a,b", [(2, 3), (3, 4)])
def test_toric_alternating_k1(a, b):
    base = toric("smooth", "rough", a, b)
    validate(base.complex)
    assert homology_dim(base.complex, 1) == 1


@pytest.mark.parametrize("bc", ["smooth", "rough"])
def test_toric_matched_boundaries_k0(bc):
    base = toric(bc, bc, 3, 3)
    assert homology_dim(base.complex, 1) == 0


def test_toric_size_guard():
    with pytest.raises(ShapeError):
        toric("cyclic", "cyclic", 1, 3)
