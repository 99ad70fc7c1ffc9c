"""Command-line interface.

Commands: check, pick, decompose, certify, gen, svg.  Exit codes:
0 success / identity holds, 1 domain failure (not simple, nonzero
residual, invalid certificate), 2 malformed input, 3 internal invariant
violation, 4 generation exhausted.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from fractions import Fraction

from .certificate import (
    MalformedCertificateError,
    check_certificate,
    deserialize,
    make_certificate,
    serialize,
)
from .counting import verify_pick
from .decompose import (
    InternalInvariantViolation,
    decompose,
    leaf_count,
    tree_depth,
)
from .exact import LatticePoint, Orientation
from .generate import (
    DEFAULT_MAX_RETRIES,
    GenerationExhaustedError,
    GeneratorConfig,
    generate_polygon,
    max_retries_from_env,
)
from .polygon import (
    NotSimpleError,
    Polygon,
    PolygonError,
    extreme_point_count,
    is_convex,
)
from .render_svg import render_svg

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3
EXIT_EXHAUSTED = 4


class PolygonFileError(Exception):
    """The polygon file does not parse (distinct from failing validation)."""


def load_polygon_file(path: str) -> Polygon:
    """Read a {"vertices": [[x, y], ...]} JSON file into a Polygon.

    Integers may be JSON numbers or decimal strings.  A duplicated
    closing vertex is accepted and dropped with a warning.
    """
    try:
        with open(path, "rb") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise PolygonFileError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise PolygonFileError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "vertices" not in obj:
        raise PolygonFileError(f"{path}: expected an object with 'vertices'")
    raw = obj["vertices"]
    if not isinstance(raw, list):
        raise PolygonFileError(f"{path}: 'vertices' must be an array")
    points = []
    for i, pair in enumerate(raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise PolygonFileError(f"{path}: vertex {i} must be an [x, y] pair")
        points.append(LatticePoint(_parse_coord(pair[0], path, i), _parse_coord(pair[1], path, i)))
    if len(points) >= 2 and points[0] == points[-1]:
        print(f"warning: {path}: dropping duplicated closing vertex", file=sys.stderr)
        points.pop()
    return Polygon(tuple(points))


def _parse_coord(v, path, i) -> int:
    if isinstance(v, bool):
        raise PolygonFileError(f"{path}: vertex {i}: booleans are not coordinates")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v, 10)
        except ValueError:
            raise PolygonFileError(f"{path}: vertex {i}: bad integer {v!r}") from None
    raise PolygonFileError(f"{path}: vertex {i}: expected integer, got {type(v).__name__}")


def save_polygon_file(poly: Polygon, path: str | None, name: str | None = None) -> None:
    obj = {"vertices": [[p.x, p.y] for p in poly.vertices]}
    if name:
        obj["name"] = name
    text = json.dumps(obj) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        _atomic_write(path, text.encode("ascii"))


def _atomic_write(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix="~")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _fmt_area2(area2: int) -> str:
    return str(Fraction(area2, 2))


def cmd_check(args) -> int:
    try:
        poly = load_polygon_file(args.file)
    except PolygonFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotSimpleError as exc:
        print(f"not simple: {exc}")
        return EXIT_DOMAIN
    except PolygonError as exc:
        print(f"invalid polygon: {exc}")
        return EXIT_DOMAIN
    shape = "convex" if is_convex(poly) else "non-convex"
    orient = "ccw" if poly.orientation is Orientation.COUNTERCLOCKWISE else "cw"
    print(
        f"simple, {shape}, {orient}, {len(poly.vertices)} vertices, "
        f"E={extreme_point_count(poly)}"
    )
    return EXIT_OK


def cmd_pick(args) -> int:
    poly, err = _load_or_fail(args.file)
    if poly is None:
        return err
    report = verify_pick(poly)
    c = report.counts
    print(
        f"I={c.interior} B={c.boundary} area={_fmt_area2(c.area2)} "
        f"residual={report.residual}"
    )
    return EXIT_OK if report.residual == 0 else EXIT_DOMAIN


def cmd_decompose(args) -> int:
    poly, err = _load_or_fail(args.file)
    if poly is None:
        return err
    try:
        tree = decompose(poly)
    except InternalInvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    cert = make_certificate(poly, tree)
    data = serialize(cert)
    summary = f"leaves={leaf_count(tree)} depth={tree_depth(tree)}"
    if args.output:
        _atomic_write(args.output, data)
        print(f"{summary} wrote {args.output}")
    else:
        sys.stdout.buffer.write(data + b"\n")
        print(summary, file=sys.stderr)
    return EXIT_OK


def cmd_certify(args) -> int:
    try:
        with open(args.certificate, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        print(f"error: cannot read {args.certificate}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        cert = deserialize(data)
    except MalformedCertificateError as exc:
        print(f"malformed certificate: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = check_certificate(cert)
    c = report.root_counts
    if report.valid:
        print(
            f"valid: I={c.interior} B={c.boundary} area={_fmt_area2(c.area2)} "
            f"residual={report.residual}"
        )
        return EXIT_OK
    for v in report.violations:
        print(f"{v.path} {v.rule}: {v.message}")
    print(f"invalid: {len(report.violations)} violation(s), residual={report.residual}")
    return EXIT_DOMAIN


def cmd_gen(args) -> int:
    fallback = args.max_retries if args.max_retries is not None else DEFAULT_MAX_RETRIES
    retries = max_retries_from_env(fallback)
    config = GeneratorConfig(args.vertex_count, args.bound, args.seed, retries)
    try:
        poly = generate_polygon(config)
    except GenerationExhaustedError as exc:
        print(f"generation exhausted: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    save_polygon_file(poly, args.output, name=f"gen-n{args.vertex_count}-s{args.seed}")
    return EXIT_OK


def cmd_svg(args) -> int:
    poly, err = _load_or_fail(args.file)
    if poly is None:
        return err
    svg = render_svg(
        poly,
        show_hull=args.show_hull,
        show_pockets=args.show_pockets,
        show_decomposition=args.show_decomposition,
        show_lattice=args.show_lattice,
    )
    _atomic_write(args.output, svg.encode("ascii"))
    print(f"wrote {args.output}")
    return EXIT_OK


def _load_or_fail(path):
    try:
        return load_polygon_file(path), EXIT_OK
    except PolygonFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return None, EXIT_INPUT
    except PolygonError as exc:
        print(f"invalid polygon: {exc}", file=sys.stderr)
        return None, EXIT_DOMAIN


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lattice-pick",
        description="Exact lattice-polygon toolkit: Pick counts and certified decompositions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a polygon file and describe it")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("pick", help="count lattice points and report the Pick residual")
    p.add_argument("file")
    p.set_defaults(func=cmd_pick)

    p = sub.add_parser("decompose", help="decompose into elementary triangles")
    p.add_argument("file")
    p.add_argument("-o", "--output", help="certificate path (default: stdout)")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("certify", help="independently re-check a certificate")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("gen", help="generate a random simple lattice polygon")
    p.add_argument("-n", "--vertex-count", type=int, required=True)
    p.add_argument("-b", "--bound", type=int, required=True)
    p.add_argument("-s", "--seed", type=int, required=True)
    p.add_argument("-o", "--output", help="polygon path (default: stdout)")
    p.add_argument("--max-retries", type=int, default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("svg", help="render the polygon to an SVG file")
    p.add_argument("file")
    p.add_argument("--show-hull", action="store_true")
    p.add_argument("--show-pockets", action="store_true")
    p.add_argument("--show-decomposition", action="store_true")
    p.add_argument("--show-lattice", action="store_true")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_svg)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InternalInvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
