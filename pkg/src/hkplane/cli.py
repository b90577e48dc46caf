"""Command-line front end: ``hkplane <command> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 geometric precondition violated (coincident points, point on line, ...).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import angle as ang
from .errors import GeometryError
from .geodesic import line_through, ruler, ruler_inverse
from .incidence import ideal_endpoints, intersect, parallels_through
from .metric import distance
from .model import DEFAULT_EPS_ABS, DEFAULT_EPS_REL, INFINITY, HLine, Model, Point, Vertical
from .render import RenderSpec, parse_input_file, parse_line, parse_object, parse_point, render_svg

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_GEOMETRY = 0, 1, 2, 3


class UsageError(Exception):
    pass


def fmt(v: float) -> str:
    """12 significant digits, locale independent, no negative zero."""
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    s = format(v, ".12g")
    return "0" if s == "-0" else s


def parse_k_list(text: str) -> list[float]:
    try:
        ks = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--k expects a number or comma list, got {text!r}") from None
    if not ks:
        raise UsageError("--k needs at least one value")
    return ks


def models_from(args) -> list[Model]:
    try:
        return [Model(k, args.eps_abs, args.eps_rel) for k in parse_k_list(args.k)]
    except GeometryError as exc:
        raise UsageError(str(exc)) from None


def _point(x: str, y: str) -> Point:
    return Point(float(x), float(y))


def _endpoint(e) -> float:
    return math.inf if e is INFINITY else e.x


def describe_line(m: Model, L: HLine) -> str:
    ends = " ".join(fmt(_endpoint(e)) for e in ideal_endpoints(m, L))
    if isinstance(L, Vertical):
        return f"vertical p={fmt(L.p)} endpoints {ends}"
    return f"elliptic c={fmt(L.c)} a={fmt(L.a)} endpoints {ends}"


def line_record(m: Model, L: HLine) -> dict:
    ends = [_endpoint(e) for e in ideal_endpoints(m, L)]
    ends = [e if math.isfinite(e) else "inf" for e in ends]
    if isinstance(L, Vertical):
        return {"kind": "vertical", "p": L.p, "endpoints": ends}
    return {"kind": "elliptic", "c": L.c, "a": L.a, "endpoints": ends}


class Printer:
    def __init__(self, fmt_mode: str, multi: bool = False, out=None):
        self.mode = fmt_mode
        self.multi = multi
        self.out = out or sys.stdout

    def emit(self, command: str, m: Model, human: str, record: dict) -> None:
        if self.mode == "records":
            self.out.write(json.dumps({"command": command, "k": m.k, **record}) + "\n")
        else:
            prefix = f"k={fmt(m.k)}: " if self.multi else ""
            self.out.write(prefix + human + "\n")


# ---- commands -----------------------------------------------------------------

def cmd_line(args, printer: Printer) -> int:
    for m in models_from(args):
        L = line_through(m, _point(args.x1, args.y1), _point(args.x2, args.y2))
        printer.emit("line", m, describe_line(m, L), line_record(m, L))
    return EXIT_OK


def cmd_dist(args, printer: Printer) -> int:
    for m in models_from(args):
        d = distance(m, _point(args.x1, args.y1), _point(args.x2, args.y2))
        printer.emit("dist", m, fmt(d), {"distance": d})
    return EXIT_OK


def cmd_ruler(args, printer: Printer) -> int:
    L = parse_line(args.line)
    for m in models_from(args):
        if args.inverse is not None:
            P = ruler_inverse(m, L, args.inverse)
            printer.emit("ruler", m, f"{fmt(P.x)} {fmt(P.y)}", {"t": args.inverse, "point": [P.x, P.y]})
        else:
            if args.point is None:
                raise UsageError("ruler needs a point 'x,y' or --inverse T")
            P = parse_point(args.point)
            t = ruler(m, L, P)
            printer.emit("ruler", m, fmt(t), {"point": [P.x, P.y], "t": t})
    return EXIT_OK


def cmd_intersect(args, printer: Printer) -> int:
    L1, L2 = parse_line(args.line1), parse_line(args.line2)
    for m in models_from(args):
        X = intersect(m, L1, L2)
        if X is None:
            printer.emit("intersect", m, "none", {"point": None})
        else:
            printer.emit("intersect", m, f"point {fmt(X.x)} {fmt(X.y)}", {"point": [X.x, X.y]})
    return EXIT_OK


def cmd_parallels(args, printer: Printer) -> int:
    L = parse_line(args.line)
    for m in models_from(args):
        lines = parallels_through(m, L, _point(args.x, args.y))
        printer.emit("parallels", m, "\n".join(describe_line(m, N) for N in lines),
                     {"parallels": [line_record(m, N) for N in lines]})
    return EXIT_OK


def cmd_angle(args, printer: Printer) -> int:
    A, B, C = (parse_point(p) for p in (args.A, args.B, args.C))
    measures = [ang.Measure(args.measure)] if args.measure != "both" else list(ang.Measure)
    for m in models_from(args):
        for measure in measures:
            angles = ang.triangle_angles(m, A, B, C, measure)
            deg = [math.degrees(v) for v in angles]
            human = (f"{measure.value} A={fmt(deg[0])} B={fmt(deg[1])} C={fmt(deg[2])} "
                     f"sum={fmt(sum(deg))}")
            printer.emit("angle", m, human, {"measure": measure.value, "degrees": deg,
                                             "sum_degrees": sum(deg)})
    return EXIT_OK


def cmd_verify(args, printer: Printer) -> int:
    from . import verify

    names = [s.strip() for s in args.suite.split(",") if s.strip()] if args.suite else list(verify.SUITES)
    unknown = [n for n in names if n not in verify.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; choose from {', '.join(verify.SUITES)}")
    try:
        cfg = verify.SuiteConfig(seed=args.seed, samples=args.samples, k_values=tuple(parse_k_list(args.k)),
                                 eps_abs=args.eps_abs, eps_rel=args.eps_rel)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    reports = [verify.run_suite(n, cfg) for n in names]
    for rep in reports:
        if args.format == "records":
            printer.out.write(json.dumps({"suite": rep.suite_name, "passed": rep.passed,
                                          "failed": rep.failed}) + "\n")
        else:
            printer.out.write(rep.summary() + "\n")
            for cx in rep.counterexamples[:3]:
                printer.out.write(f"  counterexample: {cx.to_json()}\n")
    if args.report:
        from .plotting import figure_path, report_figure

        path = verify.write_report(args.report, reports)
        report_figure(reports, figure_path(path))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_VERIFY


def cmd_render(args, printer: Printer) -> int:
    try:
        spec = RenderSpec(args.xmin, args.xmax, args.ymax, args.width, args.height, args.stroke_samples)
        objects = []
        if args.input:
            objects.extend(parse_input_file(Path(args.input).read_text(encoding="utf-8")))
        for kind in ("line", "segment", "point", "triangle"):
            for text in getattr(args, kind) or []:
                objects.append(parse_object(kind, text))
    except GeometryError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not objects:
        raise UsageError("render needs at least one object (--line, --segment, --point, --triangle or --input)")
    svg = render_svg(models_from(args), objects, spec)
    if args.out == "-":
        printer.out.write(svg)
    else:
        Path(args.out).write_text(svg, encoding="utf-8")
    return EXIT_OK


# ---- parser -------------------------------------------------------------------

def common_flags(k_default: str) -> argparse.ArgumentParser:
    # a fresh parent per subcommand: set_defaults on one would mutate shared actions
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", default=k_default, help=f"squeeze factor, or a comma list (default {k_default})")
    common.add_argument("--eps-abs", type=float, default=DEFAULT_EPS_ABS)
    common.add_argument("--eps-rel", type=float, default=DEFAULT_EPS_REL)
    common.add_argument("--format", choices=("human", "records"), default="human")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = common_flags("1")

    parser = argparse.ArgumentParser(prog="hkplane", description="Geometry of the generalized half-planes H_k.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("line", parents=[common], help="h-line through two points")
    for name in ("x1", "y1", "x2", "y2"):
        p.add_argument(name)
    p.set_defaults(func=cmd_line)

    p = sub.add_parser("dist", parents=[common], help="distance between two points")
    for name in ("x1", "y1", "x2", "y2"):
        p.add_argument(name)
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("ruler", parents=[common], help="ruler coordinate of a point, or its inverse")
    p.add_argument("line", help="v:p or e:c,a")
    p.add_argument("point", nargs="?", help="x,y")
    p.add_argument("--inverse", type=float, metavar="T", help="print the point at ruler coordinate T")
    p.set_defaults(func=cmd_ruler)

    p = sub.add_parser("intersect", parents=[common], help="common point of two h-lines")
    p.add_argument("line1")
    p.add_argument("line2")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("parallels", parents=[common], help="the two parallels to a line through a point")
    p.add_argument("line")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_parallels)

    p = sub.add_parser("angle", parents=[common], help="interior angles of a triangle, in degrees")
    p.add_argument("A")
    p.add_argument("B")
    p.add_argument("C")
    p.add_argument("--measure", choices=("euclidean", "pullback", "both"), default="both")
    p.set_defaults(func=cmd_angle)

    p = sub.add_parser("verify", parents=[common_flags("0.5,1,2")], help="run randomized property suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--suite", default=None, help="comma list of suites (default: all)")
    p.add_argument("--report", default=None, help="JSON Lines report path; a summary SVG figure is written beside it")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", parents=[common], help="draw objects to an SVG file")
    p.add_argument("--line", action="append", help="v:p or e:c,a (repeatable)")
    p.add_argument("--segment", action="append", help="x,y:x,y (repeatable)")
    p.add_argument("--point", action="append", help="x,y (repeatable)")
    p.add_argument("--triangle", action="append", help="x,y:x,y:x,y (repeatable)")
    p.add_argument("--input", help="file with one '<kind> <spec>' per line")
    p.add_argument("--out", required=True, help="output SVG path, or - for stdout")
    p.add_argument("--xmin", type=float, default=-5.0)
    p.add_argument("--xmax", type=float, default=5.0)
    p.add_argument("--ymax", type=float, default=5.0)
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=400)
    p.add_argument("--stroke-samples", type=int, default=400)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = out or sys.stdout
    err = sys.stderr
    try:
        multi = args.command not in ("verify", "render") and len(parse_k_list(args.k)) > 1
        printer = Printer(args.format, multi, out)
        return args.func(args, printer)
    except UsageError as exc:
        err.write(f"hkplane: error: {exc}\n")
        return EXIT_USAGE
    except GeometryError as exc:
        err.write(f"hkplane: {type(exc).__name__}: {exc}\n")
        return EXIT_GEOMETRY
    except ValueError as exc:
        # float() on a malformed number
        err.write(f"hkplane: error: {exc}\n")
        return EXIT_USAGE
    except OSError as exc:
        err.write(f"hkplane: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
