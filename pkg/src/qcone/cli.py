"""Command-line surface.

Subcommands: build (named constructions to JSON), verify (cone checks),
params (CSS parameters with the exhaustive distance oracle),
weight-reduce (the full pipeline) and export (JSON / alist).

Exit codes are fixed for scripting: 0 success, 1 domain failure
(a check failed, a construction rejected its input), 2 usage or parse
errors.  All output is deterministic; randomized utilities take explicit
seeds.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import constructions as cx
from .chain import homology_dim, validate, weights
from .cone import assemble, check_regular, embedded_data, embedding_iso
from .css import DEFAULT_DISTANCE_CAP, CssCode
from .docio import (complex_from_document, complex_to_document,
                    cone_from_document, cone_to_document, dumps, loads,
                    to_alist)
from .errors import QconeError, RegularityError


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except QconeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcone",
        description="Build, verify and analyze CSS codes built as mapping cones.")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="build a named construction")
    b.add_argument("construction",
                   choices=["repetition", "cyclic", "dangling", "toric",
                            "honeycomb", "triangular", "barycentric", "layer",
                            "subdivision", "xreduce", "zthicken", "hastings"])
    b.add_argument("--L", type=int, default=None,
                   help="length / subdivision parameter")
    b.add_argument("--bc", default="cyclic,cyclic",
                   help="toric boundary types: x,y from cyclic|smooth|rough")
    b.add_argument("--size", default="3,3", help="toric sizes: Lx,Ly")
    b.add_argument("--simplices", default=None,
                   help="top simplices, e.g. '0,1,2;1,2,3'")
    b.add_argument("--input", default=None,
                   help="input complex document (length 2, CSS)")
    b.add_argument("--reduce", default="all",
                   help="generator indices to cone, comma list or 'all'")
    b.add_argument("--heights", default=None,
                   help="comma list of heights for zthicken")
    b.add_argument("--out", required=True)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="verify a cone document")
    v.add_argument("path")
    v.add_argument("--degree", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    p = sub.add_parser("params", help="CSS parameters of a complex or cone")
    p.add_argument("path")
    p.add_argument("--distance-cap", type=int, default=DEFAULT_DISTANCE_CAP)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_params)

    w = sub.add_parser("weight-reduce", help="run the weight-reduction pipeline")
    w.add_argument("input")
    w.add_argument("output")
    w.set_defaults(func=cmd_weight_reduce)

    e = sub.add_parser("export", help="export a length-2 complex")
    e.add_argument("path")
    e.add_argument("--format", choices=["json", "alist"], default="json")
    e.add_argument("--out", required=True,
                   help="output path (alist appends .hx.alist/.hz.alist)")
    e.set_defaults(func=cmd_export)
    return parser


def _load(path: str) -> dict:
    return loads(Path(path).read_text())


def _load_css(path: str) -> CssCode:
    doc = _load(path)
    if doc.get("kind") == "cone":
        return CssCode(assemble(cone_from_document(doc)))
    return CssCode(complex_from_document(doc))


def _write(path: str, doc: dict) -> None:
    Path(path).write_text(dumps(doc))


def cmd_build(args) -> int:
    name = args.construction
    if name in ("repetition", "cyclic", "dangling"):
        if args.L is None or args.L < 1:
            print("error: --L required and positive", file=sys.stderr)
            return 2
        maker = {"repetition": cx.repetition, "cyclic": cx.cyclic_repetition,
                 "dangling": cx.dangling_repetition}[name]
        c = maker(args.L)
        _write(args.out, complex_to_document(c))
        print(f"{name}: complex dims={c.dims()}")
        return 0
    if name == "toric":
        base = _toric_from_args(args)
        _write(args.out, complex_to_document(base.complex))
        print(f"toric: complex dims={base.complex.dims()}")
        return 0
    if name in ("honeycomb", "triangular"):
        base = _toric_from_args(args)
        built = (cx.honeycomb_cone if name == "honeycomb"
                 else cx.triangular_cone)(base)
    elif name == "barycentric":
        if not args.simplices:
            print("error: --simplices required", file=sys.stderr)
            return 2
        tops = [tuple(int(v) for v in group.split(","))
                for group in args.simplices.split(";")]
        built = cx.barycentric_cone(cx.SimplicialComplex.from_top_simplices(tops))
    elif name == "layer":
        built = cx.layer_code(_require_input(args))
    elif name == "subdivision":
        if args.L is None:
            print("error: --L required", file=sys.stderr)
            return 2
        built = cx.l_subdivision(_require_input(args), args.L)
    elif name == "xreduce":
        built = cx.x_reduce(_require_input(args))
    elif name == "zthicken":
        code = _require_input(args)
        length = args.L if args.L is not None else max(3, code.complex.dim(2))
        heights = None
        if args.heights:
            heights = [int(x) for x in args.heights.split(",")]
        built = cx.z_thicken(code, length, heights)
    elif name == "hastings":
        code = _require_input(args)
        if args.reduce == "all":
            reduce_set = range(code.complex.dim(2))
        else:
            reduce_set = [int(x) for x in args.reduce.split(",") if x]
        built = cx.hastings_cone(code, reduce_set)
    else:  # pragma: no cover - choices exhausts this
        return 2
    doc = cone_to_document(built.spec)
    doc["name"] = built.name
    doc["embedded"] = complex_to_document(built.declared)
    doc["regular_degrees"] = list(built.regular_degrees)
    _write(args.out, doc)
    total = built.assembled
    print(f"{built.name}: levels={len(built.spec.levels)} dims={total.dims()}")
    return 0


def _toric_from_args(args) -> "cx.ToricBase":
    bc_x, bc_y = args.bc.split(",")
    lx, ly = (int(v) for v in args.size.split(","))
    return cx.toric(bc_x.strip(), bc_y.strip(), lx, ly)


def _require_input(args) -> CssCode:
    if not args.input:
        raise ValueError("--input is required for this construction")
    return _load_css(args.input)


def cmd_verify(args) -> int:
    doc = _load(args.path)
    if doc.get("kind") != "cone":
        print("parse error: not a cone document", file=sys.stderr)
        return 2
    spec = cone_from_document(doc)
    degree = args.degree
    ok = True

    def report(flag: bool, text: str) -> bool:
        print(f"{'PASS' if flag else 'FAIL'} {text}")
        return flag

    try:
        total = assemble(spec)
        report(True, f"chain condition: dd = 0, dims={total.dims()}")
    except QconeError as exc:
        report(False, f"chain condition: {exc}")
        return 1
    reg = check_regular(spec, degree)
    ok &= report(reg.ok, f"regularity at degree {degree}"
                 + ("" if reg.ok else f": failing {reg.failures}"))
    try:
        data = embedded_data(spec)
        report(True, f"embedded complex: dims={data.complex.dims()}")
    except QconeError as exc:
        ok &= report(False, f"embedded complex: {exc}")
        return 1
    try:
        iso = embedding_iso(spec, degree, total=total, data=data)
        ok &= report(True, f"embedding isomorphism at degree {degree}: "
                     f"invertible {iso.rows}x{iso.cols}")
    except (RegularityError, QconeError) as exc:
        ok &= report(False, f"embedding isomorphism: {exc}")
    return 0 if ok else 1


def cmd_params(args) -> int:
    code = _load_css(args.path)
    params = code.parameters(distance_cap=args.distance_cap)
    if args.json:
        w = params.weights
        print(dumps({
            "n": params.n, "k": params.k,
            "d_z": params.d_z, "d_x": params.d_x,
            "d_z_status": params.d_z_status, "d_x_status": params.d_x_status,
            "w_z": w.w_z, "w_x": w.w_x, "q_z": w.q_z, "q_x": w.q_x,
        }), end="")
        return 0
    w = params.weights
    print(f"n={params.n} k={params.k}")
    print(f"w_Z={w.w_z} w_X={w.w_x} q_Z={w.q_z} q_X={w.q_x}")
    for side, value, status in (("Z", params.d_z, params.d_z_status),
                                ("X", params.d_x, params.d_x_status)):
        if value is not None:
            print(f"d_{side}={value}")
        else:
            print(f"d_{side}=absent ({status})")
    return 0


def cmd_weight_reduce(args) -> int:
    code = _load_css(args.input)
    before = code.weights()
    result = cx.weight_reduce_stages(code)
    after = result.final_weights
    _write(args.output, complex_to_document(result.final))
    print("stage      w_Z w_X q_Z q_X")
    print(f"input      {before.w_z:3d} {before.w_x:3d} "
          f"{before.q_z:3d} {before.q_x:3d}")
    rw = weights(result.reduced)
    tw = weights(result.thickened)
    print(f"x-reduced  {rw.w_z:3d} {rw.w_x:3d} {rw.q_z:3d} {rw.q_x:3d}")
    print(f"thickened  {tw.w_z:3d} {tw.w_x:3d} {tw.q_z:3d} {tw.q_x:3d}")
    print(f"final      {after[0]:3d} {after[1]:3d} {after[2]:3d} {after[3]:3d}")
    print(f"k={result.input_params[1]} preserved={result.k_preserved} "
          f"ceilings: w_Z<=10 w_X<=42 q_Z<=3 q_X<=4")
    return 0


def cmd_export(args) -> int:
    code = _load_css(args.path)
    if args.format == "json":
        _write(args.out, complex_to_document(code.complex))
        print(f"wrote {args.out}")
        return 0
    hx_path = f"{args.out}.hx.alist"
    hz_path = f"{args.out}.hz.alist"
    Path(hx_path).write_text(to_alist(code.h_x.transpose()))
    Path(hz_path).write_text(to_alist(code.h_z.transpose()))
    print(f"wrote {hx_path} and {hz_path}")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
