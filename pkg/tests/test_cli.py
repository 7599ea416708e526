"""Command-line behavior: exit codes, composition, and determinism."""

from __future__ import annotations

import subprocess
import sys

import pytest

from conftest import steane_code
from qcone.cli import main
from qcone.docio import complex_to_document, dumps, from_alist, loads


def run(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def write_steane(path) -> str:
    doc = complex_to_document(steane_code().complex)
    path.write_text(dumps(doc))
    return str(path)


def test_build_toric_and_params(tmp_path, capsys):
    out = tmp_path / "toric.json"
    code, _ = run(capsys, "build", "toric", "--bc", "cyclic,cyclic",
                  "--size", "3,3", "--out", str(out))
    assert code == 0
    code, text = run(capsys, "params", str(out))
    assert code == 0
    assert "n=18 k=2" in text
    assert "d_Z=3" in text and "d_X=3" in text


def test_build_verify_composes(tmp_path, capsys):
    for name, extra in (("honeycomb", ["--bc", "cyclic,cyclic", "--size", "3,3"]),
                        ("triangular", ["--bc", "smooth,rough", "--size", "3,3"]),
                        ("barycentric", ["--simplices", "0,1,2;1,2,3"])):
        out = tmp_path / f"{name}.json"
        code, _ = run(capsys, "build", name, *extra, "--out", str(out))
        assert code == 0
        degree = "1" if name != "barycentric" else "2"
        code, text = run(capsys, "verify", str(out), "--degree", degree)
        assert code == 0, text
        assert "FAIL" not in text


def test_build_layer_from_input(tmp_path, capsys):
    source = write_steane(tmp_path / "steane.json")
    out = tmp_path / "layer.json"
    code, text = run(capsys, "build", "layer", "--input", source,
                     "--out", str(out))
    assert code == 0
    code, text = run(capsys, "verify", str(out))
    assert code == 0


def test_build_subdivision(tmp_path, capsys):
    toric_doc = tmp_path / "t22.json"
    run(capsys, "build", "toric", "--bc", "cyclic,cyclic", "--size", "2,2",
        "--out", str(toric_doc))
    out = tmp_path / "sub.json"
    code, _ = run(capsys, "build", "subdivision", "--input", str(toric_doc),
                  "--L", "2", "--out", str(out))
    assert code == 0
    code, text = run(capsys, "verify", str(out))
    assert code == 0


def test_unknown_construction_exits_2(tmp_path, capsys):
    code = main(["build", "nonsense", "--out", str(tmp_path / "x.json")])
    assert code == 2


def test_verify_corrupted_block_fails(tmp_path, capsys):
    out = tmp_path / "hc.json"
    run(capsys, "build", "honeycomb", "--bc", "cyclic,cyclic",
        "--size", "2,2", "--out", str(out))
    doc = loads(out.read_text())
    doc["blocks"] = [b for b in doc["blocks"]
                     if not (b["r"] == 0 and b["s"] == 2)]
    out.write_text(dumps(doc))
    code, text = run(capsys, "verify", str(out))
    assert code == 1
    assert "FAIL chain condition" in text


def test_verify_non_regular_lists_failures(tmp_path, capsys):
    from qcone.chain import pad_above
    from qcone.cone import ConeLevel, ConeSpec
    from qcone.constructions import cyclic_repetition, repetition
    from qcone.docio import cone_to_document

    spec = ConeSpec([ConeLevel(pad_above(repetition(2), 1), 1),
                     ConeLevel(pad_above(cyclic_repetition(3), 1), 0)], {})
    path = tmp_path / "bad.json"
    path.write_text(dumps(cone_to_document(spec)))
    code, text = run(capsys, "verify", str(path))
    assert code == 1
    assert "FAIL regularity" in text
    assert "(0, 1" in text


def test_params_distance_cap(tmp_path, capsys):
    source = write_steane(tmp_path / "steane.json")
    code, text = run(capsys, "params", source, "--distance-cap", "2")
    assert code == 0
    assert "absent" in text and "capped" in text


def test_params_json_output(tmp_path, capsys):
    source = write_steane(tmp_path / "steane.json")
    code, text = run(capsys, "params", source, "--json")
    assert code == 0
    doc = loads(text)
    assert doc["n"] == 7 and doc["k"] == 1 and doc["d_z"] == 3


def test_weight_reduce_command(tmp_path, capsys):
    source = write_steane(tmp_path / "steane.json")
    out = tmp_path / "reduced.json"
    code, text = run(capsys, "weight-reduce", source, str(out))
    assert code == 0
    assert "preserved=True" in text
    code, text = run(capsys, "params", str(out), "--distance-cap", "2")
    assert code == 0


def test_weight_reduce_unreasonable_exit_1(tmp_path, capsys):
    from qcone import labels as lb
    from qcone.chain import BasedComplex
    from qcone.f2linalg import BitMatrix
    c = BasedComplex([[], [lb.cell(1), lb.cell(2)], [lb.atom("g")]],
                     [BitMatrix.zeros(0, 2), BitMatrix.from_dense([[1], [1]])])
    path = tmp_path / "bad.json"
    path.write_text(dumps(complex_to_document(c)))
    code = main(["weight-reduce", str(path), str(tmp_path / "out.json")])
    assert code == 1


def test_export_alist_steane(tmp_path, capsys):
    source = write_steane(tmp_path / "steane.json")
    prefix = tmp_path / "steane"
    code, _ = run(capsys, "export", source, "--format", "alist",
                  "--out", str(prefix))
    assert code == 0
    hx = from_alist((tmp_path / "steane.hx.alist").read_text())
    assert hx.shape == (3, 7)
    assert hx == steane_code().h_x.transpose()


def test_export_json_round_trip(tmp_path, capsys):
    source = write_steane(tmp_path / "steane.json")
    out = tmp_path / "copy.json"
    code, _ = run(capsys, "export", source, "--format", "json",
                  "--out", str(out))
    assert code == 0
    assert out.read_text() == (tmp_path / "steane.json").read_text()


def test_cli_output_is_deterministic(tmp_path, capsys):
    source = write_steane(tmp_path / "steane.json")
    outputs = []
    files = []
    for tag in ("a", "b"):
        out = tmp_path / f"layer_{tag}.json"
        code, text = run(capsys, "build", "layer", "--input", source,
                         "--out", str(out))
        assert code == 0
        outputs.append(text)
        files.append(out.read_bytes())
    assert outputs[0] == outputs[1]
    assert files[0] == files[1]


def test_console_entry_point_smoke(tmp_path):
    source = write_steane(tmp_path / "steane.json")
    proc = subprocess.run(
        [sys.executable, "-m", "qcone", "params", source, "--json"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert loads(proc.stdout)["k"] == 1
