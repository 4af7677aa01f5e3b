"""Command line interface: ``lieshape <command> ...``.

Exit codes: 0 success, 1 invalid input, 2 numeric failure.
"""

import argparse
import json
import sys

import numpy as np

from lieshape import fileio
from lieshape.errors import LieShapeError, NumericFailure, ValidationError
from lieshape.registration import apply_warp
from lieshape.shape_ops import (
    GeodesicRequest,
    align,
    blend,
    close_curve,
    distances_along,
    forward,
    interpolate,
    on_grid,
)


def _thetas(text):
    try:
        vals = sorted(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad theta list {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("empty theta list")
    return vals


def _vector(text):
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}") from None
    if len(vals) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated numbers")
    return np.array(vals)


def _load(path, space):
    c = fileio.load_curve(path)
    if space and c.space != space:
        raise ValidationError(f"{path}: expected a {space} curve, found {c.space}")
    return c


def _fmt(x):
    return f"{x:.17g}"


def cmd_transform(args):
    c = _load(args.curve, args.space)
    sig = forward(c, args.transform)
    if args.out:
        fileio.write_signal_csv(sig, args.out)
    else:
        for row in fileio.signal_rows(sig):
            print(",".join(_fmt(x) for x in row))


def cmd_distance(args):
    c1, c2 = _load(args.curve1, args.space), _load(args.curve2, args.space)
    al = align(c1, c2, args.transform, args.register)
    print(f"pre {_fmt(al.distance_before)}")
    print(f"post {_fmt(al.distance_after)}")


def cmd_geodesic(args):
    c1, c2 = _load(args.curve1, args.space), _load(args.curve2, args.space)
    req = GeodesicRequest(c1, c2, args.transform, args.theta, args.register)
    al = align(c1, c2, req.transform, req.register, req.slopes, req.refine)
    curves = interpolate(req, al)
    dists = distances_along(al, curves)
    data = fileio.GeodesicDataset(c1.space, list(req.thetas), curves, dists,
                                  al.distance_before, al.distance_after)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            data.write_csv(fh)
    else:
        data.write_csv(sys.stdout)
    print(f"pre {_fmt(al.distance_before)}", file=sys.stderr)
    print(f"post {_fmt(al.distance_after)}", file=sys.stderr)


def _emit_curve(c, out):
    if out:
        fileio.save_curve(c, out)
    else:
        print(json.dumps(fileio.curve_to_dict(c), indent=1))


def cmd_blend(args):
    c0, c1 = _load(args.curve1, args.space), _load(args.curve2, args.space)
    _emit_curve(blend(c0, c1, args.weight, args.transform, args.register), args.out)


def cmd_register(args):
    c1, c2 = _load(args.curve1, args.space), _load(args.curve2, args.space)
    al = align(c1, c2, args.transform, True)
    warped = apply_warp(on_grid(c2, c1.times), al.warp)
    print(f"pre {_fmt(al.distance_before)}", file=sys.stderr)
    print(f"post {_fmt(al.distance_after)}", file=sys.stderr)
    _emit_curve(warped, args.out)


def cmd_close(args):
    c = _load(args.curve, args.space or "SO3")
    _emit_curve(close_curve(c, args.tol, args.max_iter), args.out)


def cmd_project(args):
    c = _load(args.curve, args.space or "SO3")
    _emit_curve(fileio.project_so3_to_s2(c, args.ref), args.out)


def build_parser():
    parser = argparse.ArgumentParser(prog="lieshape", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, two=False):
        if two:
            p.add_argument("curve1")
            p.add_argument("curve2")
        else:
            p.add_argument("curve")
        p.add_argument("--space", choices=["R3", "SO3", "S2"], help="require this curve space")
        p.add_argument("--out", help="output file (default: stdout)")
        return p

    def transform_flags(p):
        p.add_argument("--transform", choices=["euclidean", "group", "sphere", "reductive"])
        p.add_argument("--register", action="store_true", help="register curve2 onto curve1 first")

    p = common(sub.add_parser("transform", help="write the SRVT signal of a curve"))
    p.add_argument("--transform", choices=["euclidean", "group", "sphere", "reductive"])
    p.set_defaults(func=cmd_transform)

    p = common(sub.add_parser("distance", help="print pre- and post-registration distances"), two=True)
    transform_flags(p)
    p.set_defaults(func=cmd_distance)

    p = common(sub.add_parser("geodesic", help="sample the geodesic between two curves as CSV"), two=True)
    transform_flags(p)
    p.add_argument("--theta", type=_thetas, default=[0.25, 0.5, 0.75])
    p.set_defaults(func=cmd_geodesic)

    p = common(sub.add_parser("blend", help="blend two curves with weight s on curve1"), two=True)
    transform_flags(p)
    p.add_argument("--weight", "-s", type=float, default=0.5)
    p.set_defaults(func=cmd_blend)

    p = common(sub.add_parser("register", help="warp curve2 onto curve1"), two=True)
    p.add_argument("--transform", choices=["euclidean", "group", "sphere", "reductive"])
    p.set_defaults(func=cmd_register)

    p = common(sub.add_parser("close", help="remove the start/end gap of an SO3 curve"))
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--max-iter", type=int, default=50)
    p.set_defaults(func=cmd_close)

    p = common(sub.add_parser("project", help="map an SO3 curve to S2"))
    p.add_argument("--ref", type=_vector, default=fileio.REFERENCE_VECTOR,
                   help="reference vector, default (0,1,1)/sqrt(2)")
    p.set_defaults(func=cmd_project)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except NumericFailure as exc:
        print(f"lieshape: numeric failure: {exc}", file=sys.stderr)
        return 2
    except (LieShapeError, OSError) as exc:
        print(f"lieshape: error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
