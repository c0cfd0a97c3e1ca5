"""Command-line front end.

Exit codes: 0 success, 1 internal failure, 2 invalid diagram or parameters,
3 parse error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .diagram import Diagram, build_diagram, parse_pd, validate_diagram
from .errors import InvalidDiagram, InvalidParameters, ParseError
from .geometry import empty_svg, realize, render_svg
from .hypvol import volp
from .split import decompose
from .weaving import w3q_volume, weaving_diagram

EXIT_OK, EXIT_INTERNAL, EXIT_INVALID, EXIT_PARSE = 0, 1, 2, 3


def _round(obj):
    """Round floats to 10 significant digits so output is stable byte for byte."""
    if isinstance(obj, float):
        return float(f"{obj:.10g}") if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), sort_keys=True, separators=(",", ":"))


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, InvalidDiagram):
        return EXIT_INVALID
    return EXIT_INTERNAL


def error_object(exc: BaseException) -> dict:
    kind = "parse" if isinstance(exc, ParseError) else "invalid" if isinstance(exc, InvalidDiagram) else "internal"
    return {"error": {"kind": kind, "type": type(exc).__name__, "message": str(exc)}}


def read_source(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    path = Path(arg)
    if path.is_file():
        return path.read_text()
    return arg


def load_diagram(arg: str) -> Diagram:
    return build_diagram(parse_pd(read_source(arg)))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def compute_report(source: str, tol: float, trace: bool) -> dict:
    report = volp(load_diagram(source), tol=tol).to_json()
    if not trace:
        report.pop("trace")
    return report


def _compute_file(args: tuple[str, float, bool]) -> tuple[str, int, dict]:
    path, tol, trace = args
    try:
        return path, EXIT_OK, compute_report(path, tol, trace)
    except Exception as exc:
        return path, exit_code(exc), error_object(exc)


def cmd_compute(ns) -> int:
    if ns.batch:
        files = sorted(str(p) for p in Path(ns.batch).glob("*.pd"))
        with ProcessPoolExecutor() as pool:
            results = list(pool.map(_compute_file, [(f, ns.tol, ns.trace) for f in files]))
        _emit(dumps({Path(p).name: rep for p, _, rep in results}), ns.output)
        return max((code for _, code, _ in results), default=EXIT_OK)
    if ns.input is None:
        raise InvalidParameters("compute needs an input or --batch DIR")
    _emit(dumps(compute_report(ns.input, ns.tol, ns.trace)), ns.output)
    return EXIT_OK


def cmd_decompose(ns) -> int:
    result = decompose(load_diagram(ns.input))
    out = {"polyhedra": [g.to_json() for g in result.polyhedra], "trace": result.trace}
    _emit(dumps(out), ns.output)
    return EXIT_OK


def cmd_render(ns) -> int:
    d = load_diagram(ns.input)
    validate_diagram(d).raise_for_failure()
    polyhedra = decompose(d).polyhedra
    if not polyhedra:
        svg = empty_svg()
    else:
        if not 0 <= ns.polyhedron < len(polyhedra):
            raise InvalidParameters(f"polyhedron index {ns.polyhedron} out of range 0..{len(polyhedra) - 1}")
        svg = render_svg(realize(polyhedra[ns.polyhedron], ns.crossing, tol=ns.tol))
    _emit(svg, ns.output)
    return EXIT_OK


def cmd_weave(ns) -> int:
    p, q = ns.p, ns.q
    if p < 2 or q < 2:
        raise InvalidParameters(f"W({p},{q}) needs p >= 2 and q >= 2")
    mode = ns.mode or ("both" if p == 3 else "generic")
    if mode in ("oracle", "both") and p != 3:
        raise InvalidParameters("the fast path only covers p = 3")
    out: dict = {"p": p, "q": q}
    if mode in ("oracle", "both"):
        out["oracle"] = w3q_volume(q)
    if mode in ("generic", "both"):
        out["generic"] = volp(weaving_diagram(p, q), tol=ns.tol).volp
    if mode == "both":
        out["difference"] = abs(out["oracle"] - out["generic"])
    _emit(dumps(out), ns.output)
    return EXIT_OK


def cmd_validate(ns) -> int:
    report = validate_diagram(load_diagram(ns.input))
    if ns.json:
        _emit(dumps(report.to_json()), ns.output)
    else:
        lines = [f"{k}: {str(v).lower()}" for k, v in report.to_json().items()]
        _emit("\n".join(lines), ns.output)
    return EXIT_OK if report.ok else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write to FILE instead of standard output")
    common.add_argument("--json", action="store_true", help="JSON output where text is the default")
    common.add_argument("--trace", action="store_true", help="include the decomposition trace")
    common.add_argument("--tol", type=float, default=1e-12, help="solver residual tolerance")

    parser = argparse.ArgumentParser(prog="ravol", description="Right-angled volumes of alternating links.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="right-angled volume of a PD code")
    p.add_argument("input", nargs="?", help="PD file, inline PD string, or - for stdin")
    p.add_argument("--batch", metavar="DIR", help="compute every *.pd file in DIR in parallel")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("decompose", parents=[common], help="Andreev polyhedra and pipeline trace")
    p.add_argument("input")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("render", parents=[common], help="SVG of a kite tiling")
    p.add_argument("input")
    p.add_argument("--polyhedron", type=int, default=0)
    p.add_argument("--crossing", type=int, default=0, help="crossing sent to infinity")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("weave", parents=[common], help="volume of the weaving link W(p,q)")
    p.add_argument("p", type=int)
    p.add_argument("q", type=int)
    mode = p.add_mutually_exclusive_group()
    for name in ("oracle", "generic", "both"):
        mode.add_argument(f"--{name}", dest="mode", action="store_const", const=name)
    p.set_defaults(func=cmd_weave)

    p = sub.add_parser("validate", parents=[common], help="check alternating, reduced, prime")
    p.add_argument("input")
    p.set_defaults(func=cmd_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        return ns.func(ns)
    except Exception as exc:
        print(dumps(error_object(exc)))
        return exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
