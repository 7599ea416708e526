"""Acceptance suite: one test per criterion, one PASS line per criterion.

Everything here runs at its stated tolerance -- exact equality over
GF(2), exact integers and exact rationals elsewhere.  Run with
``pytest tests/test_acceptance.py -v -s`` to see the per-criterion lines.
"""

from __future__ import annotations

import time
from fractions import Fraction

import pytest

from conftest import (c4_xxxx_zz, c422, random_css_corpus, random_two_level_cone,
                      random_complex, simplicial_zoo, steane_code, xix_zzz,
                      xxx_ziz)
from qcone.chain import homology, homology_dim, kunneth_check, tensor, \
    project_to_homology, transpose_complex, validate
from qcone.cone import assemble, check_regular, embedded_data, embedding_iso, \
    lift_class
from qcone.constructions import (barycentric_cone, check_square_complex,
                                 cyclic_repetition, dangling_repetition,
                                 hastings_cone, honeycomb_cone, l_subdivision,
                                 layer_code, layer_distance_bound, repetition,
                                 simpl_chain, toric, triangular_cone,
                                 weight_reduce_stages, x_reduce, z_thicken)
from qcone.css import CssCode
from qcone.docio import complex_to_document, cone_to_document, dumps
import numpy as np


def _report(number: int, text: str) -> None:
    print(f"ACCEPTANCE {number:2d} PASS: {text}")


@pytest.fixture(scope="module")
def css_corpus_all():
    corpus = [("xxx_ziz", xxx_ziz()), ("steane", steane_code()),
              ("toric22", CssCode(toric("cyclic", "cyclic", 2, 2).complex)),
              ("toric33", CssCode(toric("cyclic", "cyclic", 3, 3).complex))]
    corpus += [(f"random{seed:02d}", code)
               for seed, code in enumerate(random_css_corpus(20))]
    return corpus


@pytest.fixture(scope="module")
def cone_corpus(css_corpus_all):
    """Every construction applied to every applicable corpus input."""
    items = []
    for bc, lx, ly in (("cyclic", 2, 2), ("cyclic", 3, 3), ("smooth", 3, 3)):
        base = toric(bc, "cyclic" if bc == "cyclic" else "rough", lx, ly)
        items.append((f"honeycomb[{bc}{lx}{ly}]", honeycomb_cone(base), 1))
        items.append((f"triangular[{bc}{lx}{ly}]", triangular_cone(base), 1))
    for name, code in css_corpus_all:
        items.append((f"layer[{name}]", layer_code(code), 1))
        items.append((f"x_reduce[{name}]", x_reduce(code), 1))
        items.append((f"z_thicken[{name}]",
                      z_thicken(code, max(3, code.complex.dim(2))), 1))
        items.append((f"hastings[{name}]",
                      hastings_cone(code, range(code.complex.dim(2))), 1))
        structure = check_square_complex(code)
        if structure.ok and code.n <= 20:
            items.append((f"subdivision[{name},L=2]",
                          l_subdivision(code, 2), 1))
    items.append(("subdivision[toric22,L=3]",
                  l_subdivision(CssCode(toric("cyclic", "cyclic", 2, 2).complex), 3), 1))
    for index, k in enumerate(simplicial_zoo()[:10]):
        items.append((f"barycentric[{index}]", barycentric_cone(k),
                      tuple(range(k.dimension + 1))))
    return items


@pytest.fixture(scope="module")
def cone_results(cone_corpus):
    """Shared heavy loop: assemble, verify, lift and project everything."""
    results = []
    for name, built, degrees in cone_corpus:
        degrees = degrees if isinstance(degrees, tuple) else (degrees,)
        total = built.assembled            # raises if dd != 0
        validate(total)
        transcript = built.verify(raise_on_fail=True)
        regs = {m: check_regular(built.spec, m).ok for m in degrees}
        data = embedded_data(built.spec)
        per_degree = {}
        for m in degrees:
            h_total = homology(total, m)
            h_emb = homology(data.complex, m)
            iso = embedding_iso(built.spec, m, total=total, data=data)
            lifts = []
            for j in range(h_emb.dim):
                z = lift_class(built.spec, m, 1 << j, data, recheck=False)
                boundary = total.diff(m).apply(z) if m >= 1 else 0
                proj = project_to_homology(total, m, z, h_total)
                lifts.append((z, boundary, proj))
            pair_ok = True
            for a in range(min(h_emb.dim, 3)):
                for b in range(a + 1, min(h_emb.dim, 3)):
                    z = lift_class(built.spec, m, (1 << a) | (1 << b), data,
                                   recheck=False)
                    combined = project_to_homology(total, m, z, h_total)
                    pair_ok &= combined == lifts[a][2] ^ lifts[b][2]
            per_degree[m] = {
                "dim_total": h_total.dim, "dim_embedded": h_emb.dim,
                "iso_invertible": iso.rows == iso.cols == iso.rank(),
                "lifts": lifts, "linearity": pair_ok,
            }
        results.append((name, regs, per_degree, transcript))
    return results


def test_criterion_01_repetition_homology():
    for length in range(2, 7):
        assert (homology_dim(repetition(length), 1),
                homology_dim(repetition(length), 0)) == (0, 1)
        assert (homology_dim(cyclic_repetition(length), 1),
                homology_dim(cyclic_repetition(length), 0)) == (1, 1)
        assert (homology_dim(dangling_repetition(length), 1),
                homology_dim(dangling_repetition(length), 0)) == (0, 0)
    _report(1, "repetition-family homology dims (0/1, 1/1, 0/0) for L=2..6")


def test_criterion_02_kunneth_and_toric_oracle():
    start = time.monotonic()
    for seed in range(50):
        rng = np.random.default_rng(10_000 + seed)
        assert kunneth_check(random_complex(rng), random_complex(rng)).ok
    code = CssCode(toric("cyclic", "cyclic", 3, 3).complex)
    assert code.k == 2
    assert code.distance("Z") == 3
    assert code.distance("X") == 3
    elapsed = time.monotonic() - start
    assert elapsed < 10.0
    _report(2, f"50 random Kunneth pairs + toric 3x3 [[18,2,3]] oracle "
               f"in {elapsed:.2f}s")


def test_criterion_03_boundary_toric_parameters():
    for a in (2, 3, 4):
        for b in (2, 3, 4):
            code = CssCode(tensor(repetition(a),
                                  transpose_complex(repetition(b))))
            assert code.k == 1
            assert code.distance("Z") == b
            assert code.distance("X") == a
    _report(3, "R(a)xR(b)^T gives k=1, d_Z=b, d_X=a for all 2<=a,b<=4")


def test_criterion_04_cone_soundness(cone_results):
    for name, regs, _, transcript in cone_results:
        assert all(regs.values()), f"{name}: regularity failed"
        assert all(line.startswith("PASS") for line in transcript), name
    _report(4, f"{len(cone_results)} construction instances assemble with "
               f"dd=0 and pass their regularity checks")


def test_criterion_05_k_preservation(cone_results):
    barycentric = 0
    for name, _, per_degree, _ in cone_results:
        for m, r in per_degree.items():
            assert r["dim_total"] == r["dim_embedded"], (name, m)
            assert r["iso_invertible"], (name, m)
        if name.startswith("barycentric"):
            barycentric += 1
    assert barycentric >= 10
    _report(5, "dim H(cone) == dim H(embedded) with invertible embedding "
               f"map everywhere, incl. {barycentric} subdivisions at all degrees")


def test_criterion_06_lift_correctness(cone_results):
    classes = 0
    for name, _, per_degree, _ in cone_results:
        for m, r in per_degree.items():
            for z, boundary, proj in r["lifts"]:
                assert boundary == 0, (name, m)
                assert proj != 0, (name, m)
                classes += 1
            assert r["linearity"], (name, m)
    _report(6, f"{classes} lifted classes are cycles with nonzero "
               f"projection; linear on basis sums")


def test_criterion_07_layer_distance_bound():
    makers = [("xxx_ziz", xxx_ziz), ("xix_zzz", xix_zzz), ("c422", c422),
              ("c4_xxxx_zz", c4_xxxx_zz)]
    for name, maker in makers:
        code = maker()
        bound_z, bound_x = layer_distance_bound(code)
        layered = CssCode(layer_code(code).assembled)
        assert Fraction(layered.distance("Z")) >= bound_z, name
        assert Fraction(layered.distance("X")) >= bound_x, name
    _report(7, f"layer-code distance bounds hold for {len(makers)} inputs "
               f"by exact integer/rational comparison")


def test_criterion_08_weight_reduction(css_corpus_all):
    reduced = 0
    for name, code in css_corpus_all:
        if not code.is_reasonable().ok:
            continue
        result = weight_reduce_stages(code)
        w_z, w_x, q_z, q_x = result.final_weights
        assert (w_z <= 10 and w_x <= 42 and q_z <= 3 and q_x <= 4), name
        assert result.k_preserved, name
        for stage in ("x_reduce", "z_thicken", "hastings_cone"):
            checks = result.stage_checks[stage]
            assert all(v is True for key, v in checks.items()
                       if not key.startswith("measured")), (name, stage)
        reduced += 1
    assert reduced >= 3  # steane and both tori are reasonable
    _report(8, f"pipeline ceilings (10, 42, 3, 4) + stage bounds + k for "
               f"{reduced} reasonable corpus codes")


def test_criterion_09_two_level_oracle_equivalence():
    from test_cone import block_matrix_dims
    for seed in range(30):
        spec = random_two_level_cone(seed)
        total = assemble(spec)
        got = [homology_dim(total, i) for i in range(total.top_degree + 1)]
        assert got == block_matrix_dims(spec), seed
    _report(9, "30 random 2-level cones match direct block-matrix rank "
               "arithmetic in every degree")


def test_criterion_10_determinism():
    def artifacts() -> bytes:
        parts = []
        built = honeycomb_cone(toric("cyclic", "cyclic", 3, 3))
        doc = cone_to_document(built.spec)
        doc["embedded"] = complex_to_document(built.declared)
        parts.append(dumps(doc))
        layer = layer_code(xxx_ziz())
        parts.append(dumps(cone_to_document(layer.spec)))
        parts.append(dumps(complex_to_document(
            weight_reduce_stages(steane_code()).final)))
        code = CssCode(toric("cyclic", "cyclic", 3, 3).complex)
        parts.append(f"{code.distance('Z')},{code.distance('X')}")
        sub = l_subdivision(CssCode(toric("cyclic", "cyclic", 2, 2).complex), 2)
        parts.append("\n".join(sub.log["transcript"]))
        return "\n".join(parts).encode()

    first = artifacts()
    second = artifacts()
    assert first == second
    _report(10, f"two runs produce byte-identical artifacts "
                f"({len(first)} bytes)")
