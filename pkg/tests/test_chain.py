"""Based complexes: validation, homology, cochains, products, weights."""

from __future__ import annotations

import numpy as np
import pytest

from conftest import random_complex, steane_code
from qcone import labels as lb
from qcone.chain import (BasedComplex, direct_sum, homology, homology_dim,
                         kunneth_check, pad_above, pad_below,
                         project_to_homology, space_complex, supports,
                         common_qubits, tensor, transpose_complex, validate,
                         weights)
from qcone.constructions import (cyclic_repetition, dangling_repetition,
                                 repetition, toric)
from qcone.errors import ChainConditionError, NotACycleError, ShapeError
from qcone.f2linalg import BitMatrix


def test_validate_padded_repetition():
    validate(pad_above(repetition(4), 1))


def test_validate_toric_tensor():
    validate(tensor(cyclic_repetition(3), cyclic_repetition(3)))


def test_validate_violation_witness():
    bad = BasedComplex(
        [[lb.cell(1), lb.cell(2)], [lb.cell(1), lb.cell(2)],
         [lb.cell(1), lb.cell(2)]],
        [BitMatrix.identity(2), BitMatrix.identity(2)])
    with pytest.raises(ChainConditionError) as err:
        validate(bad)
    assert err.value.degree == 2
    assert err.value.witness_col == 0


@pytest.mark.parametrize("length", range(2, 7))
def test_repetition_homology(length):
    assert homology_dim(repetition(length), 1) == 0
    assert homology_dim(repetition(length), 0) == 1
    assert homology_dim(cyclic_repetition(length), 1) == 1
    assert homology_dim(cyclic_repetition(length), 0) == 1
    assert homology_dim(dangling_repetition(length), 1) == 0
    assert homology_dim(dangling_repetition(length), 0) == 0


def test_cyclic_representative_is_all_ones():
    h = homology(cyclic_repetition(4), 1)
    assert h.dim == 1
    assert h.reps.column_int(0) == 0b1111


def test_project_boundary_is_zero():
    torus = tensor(cyclic_repetition(3), cyclic_repetition(3))
    h = homology(torus, 1)
    for j in range(torus.dim(2)):
        z = torus.diff(2).column_int(j)
        assert project_to_homology(torus, 1, z, h) == 0


def test_project_cyclic_all_ones_nontrivial():
    ring = cyclic_repetition(4)
    assert project_to_homology(ring, 1, 0b1111) == 1


def test_project_non_cycle_raises_with_witness():
    ring = cyclic_repetition(4)
    with pytest.raises(NotACycleError) as err:
        project_to_homology(ring, 1, 0b0001)
    assert err.value.boundary != 0


def test_transpose_involution():
    rng = np.random.default_rng(0)
    c = random_complex(rng)
    assert transpose_complex(transpose_complex(c)) == c


def test_transpose_preserves_homology_dims():
    rng = np.random.default_rng(1)
    for _ in range(10):
        c = random_complex(rng)
        t = transpose_complex(c)
        top = c.top_degree
        for i in range(top + 1):
            assert homology_dim(c, i) == homology_dim(t, top - i)


def test_transpose_repetition_dims():
    t = transpose_complex(repetition(3))
    assert t.dims() == (2, 3)
    validate(t)
    assert homology_dim(t, 1) == 1  # old degree 0
    assert homology_dim(t, 0) == 0


def test_tensor_toric_torus():
    torus = tensor(cyclic_repetition(3), cyclic_repetition(3))
    assert torus.dims() == (9, 18, 9)
    assert homology_dim(torus, 1) == 2


def test_tensor_alternating_boundaries():
    c = tensor(repetition(3), transpose_complex(repetition(4)))
    validate(c)
    assert homology_dim(c, 1) == 1


def test_direct_sum_single_summand():
    c = repetition(3)
    s = direct_sum([c])
    assert s.dims() == c.dims()
    assert s.diff(1) == c.diff(1)
    assert s.labels(0)[0] == lb.tagged(lb.cell(1), 0)


def test_direct_sum_homology_adds():
    a = pad_above(cyclic_repetition(3), 1)
    b = pad_above(cyclic_repetition(4), 1)
    s = direct_sum([a, b])
    validate(s)
    assert homology_dim(s, 1) == 2


def test_direct_sum_matches_tensor_with_point_space():
    copies = 3
    line = repetition(2)
    summed = direct_sum([line] * copies)
    tensored = tensor(space_complex([lb.cell(s + 1) for s in range(copies)]),
                      line)
    assert summed.dims() == tensored.dims()
    for i in range(1, summed.top_degree + 1):
        assert summed.diff(i) == tensored.diff(i)
    for i in range(summed.top_degree + 1):
        assert homology_dim(summed, i) == homology_dim(tensored, i)


def test_kunneth_cyclic_squares():
    report = kunneth_check(cyclic_repetition(3), cyclic_repetition(3))
    assert report.ok
    assert (1, 2, 2) in report.details


def test_kunneth_exact_factors():
    report = kunneth_check(repetition(4), dangling_repetition(4))
    assert report.ok
    for degree, lhs, _ in report.details:
        if degree >= 1:
            assert lhs == 0


def test_kunneth_point_unit():
    point = space_complex([lb.cell(1)])
    d = cyclic_repetition(5)
    report = kunneth_check(point, d)
    assert report.ok
    product = tensor(point, d)
    for i in range(d.top_degree + 1):
        assert homology_dim(product, i) == homology_dim(d, i)


@pytest.mark.parametrize("seed", range(12))
def test_kunneth_random_pairs(seed):
    rng = np.random.default_rng(100 + seed)
    assert kunneth_check(random_complex(rng), random_complex(rng)).ok


@pytest.mark.parametrize("size", [2, 3, 4])
def test_weights_toric_torus(size):
    torus = tensor(cyclic_repetition(size), cyclic_repetition(size))
    assert weights(torus).as_tuple() == (4, 4, 2, 2)


def test_weights_steane():
    assert steane_code().weights().as_tuple() == (4, 4, 3, 3)


def test_weights_zero_differentials():
    c = BasedComplex([[lb.cell(1)], [lb.cell(1), lb.cell(2)], [lb.cell(1)]],
                     [BitMatrix.zeros(1, 2), BitMatrix.zeros(2, 1)])
    assert weights(c).as_tuple() == (0, 0, 0, 0)


def test_weights_requires_length_two():
    with pytest.raises(ShapeError):
        weights(repetition(3))


def test_supports_toric_plaquette():
    torus = tensor(cyclic_repetition(3), cyclic_repetition(3))
    assert len(supports(torus, 2, 0, 1)) == 4


def test_supports_common_qubits_two_edges():
    torus = tensor(cyclic_repetition(3), cyclic_repetition(3))
    found = False
    for plaq in range(torus.dim(2)):
        for vertex in range(torus.dim(0)):
            shared = common_qubits(torus, plaq, vertex)
            if shared:
                assert len(shared) == 2
                found = True
    assert found


def test_supports_zero_boundary_empty():
    c = BasedComplex([[lb.cell(1)], [lb.cell(1)]], [BitMatrix.zeros(1, 1)])
    assert supports(c, 1, 0, 0) == frozenset()


def test_supports_range_errors():
    torus = tensor(cyclic_repetition(3), cyclic_repetition(3))
    with pytest.raises(ShapeError):
        supports(torus, 1, 0, 1)
    with pytest.raises(ShapeError):
        supports(torus, 3, 0, 1)


def test_rank_nullity_across_degrees():
    rng = np.random.default_rng(7)
    for _ in range(8):
        c = random_complex(rng)
        for i in range(c.top_degree + 1):
            r_in = c.diff(i).rank() if i >= 1 else 0
            r_out = c.diff(i + 1).rank() if i < c.top_degree else 0
            assert r_in + homology_dim(c, i) + r_out == c.dim(i)


def test_tensor_and_sum_always_validate():
    rng = np.random.default_rng(8)
    for _ in range(5):
        a, b = random_complex(rng), random_complex(rng)
        validate(tensor(a, b))
        validate(direct_sum([a, b]))


def test_pad_below_shifts_degrees():
    padded = pad_below(repetition(3), 1)
    assert padded.dims() == (0, 3, 2)
    validate(padded)
    assert homology_dim(padded, 1) == 1  # old degree 0
