"""Curve files, geodesic datasets and the SO(3) to S^2 projection.

A curve file is JSON::

    {"space": "S2", "name": "optional", "times": [...], "samples": [[x, y, z], ...]}

Rotations are stored as 9 row-major reals.  Floats are written with
``repr`` so a save/load cycle is exact.
"""

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from lieshape.curves import SPACES, make_curve
from lieshape.errors import DegenerateSegment, ParseError, ValidationError

REFERENCE_VECTOR = np.array([0.0, 1.0, 1.0]) / np.sqrt(2.0)


def curve_to_dict(c):
    n = len(c.times)
    samples = c.samples.reshape(n, -1)
    out = {"space": c.space}
    if c.name:
        out["name"] = c.name
    out["times"] = [float(t) for t in c.times]
    out["samples"] = [[float(x) for x in row] for row in samples]
    return out


def curve_from_dict(data):
    if not isinstance(data, dict):
        raise ParseError("top level must be an object", "root")
    for key in ("space", "times", "samples"):
        if key not in data:
            raise ParseError("missing field", key)
    space = data["space"]
    if space not in SPACES:
        raise ParseError(f"unknown space {space!r}", "space")
    width = 9 if space == "SO3" else 3
    try:
        times = np.array(data["times"], dtype=float)
    except (TypeError, ValueError):
        raise ParseError("times must be a list of numbers", "times") from None
    if times.ndim != 1:
        raise ParseError("times must be a flat list", "times")
    rows = data["samples"]
    if not isinstance(rows, list):
        raise ParseError("samples must be a list", "samples")
    samples = np.empty((len(rows), width))
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != width:
            raise ParseError(f"expected {width} numbers", f"samples[{i}]")
        try:
            samples[i] = [float(x) for x in row]
        except (TypeError, ValueError):
            raise ParseError("non-numeric entry", f"samples[{i}]") from None
    return make_curve(space, samples, times, name=data.get("name"))


def save_curve(c, path):
    Path(path).write_text(json.dumps(curve_to_dict(c), indent=1) + "\n", encoding="utf-8")


def load_curve(path):
    """Read and validate a curve file.

    Raises:
        ParseError: malformed JSON (with line and column) or bad fields.
        NotOnManifold, DegenerateSegment, ...: from :func:`make_curve`.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from None
    return curve_from_dict(data)


def project_so3_to_s2(c, ref=REFERENCE_VECTOR):
    """Map rotations to the sphere by applying them to a fixed unit vector."""
    if c.space != "SO3":
        raise ValidationError(f"expected an SO3 curve, got {c.space}")
    ref = np.asarray(ref, dtype=float)
    if abs(np.linalg.norm(ref) - 1.0) > 1e-15:
        ref = ref / np.linalg.norm(ref)
    pts = np.array([z @ ref for z in c.samples])
    try:
        return make_curve("S2", pts, c.times, name=c.name)
    except DegenerateSegment as exc:
        raise DegenerateSegment(f"projected curve stalls: {exc}", index=exc.index) from None


def signal_rows(signal):
    return [[float(t), *map(float, v)] for t, v in zip(signal.times[:-1], signal.values)]


def write_signal_csv(signal, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["t", "x1", "x2", "x3"])
        for row in signal_rows(signal):
            w.writerow([repr(x) for x in row])


def _columns(space):
    if space == "SO3":
        return [f"r{i}{j}" for i in range(1, 4) for j in range(1, 4)]
    return ["x", "y", "z"]


@dataclass
class GeodesicDataset:
    """Sampled curves along a geodesic, one block of rows per theta."""

    space: str
    thetas: list
    curves: list
    distances: list = field(default_factory=list)
    distance_before: float = float("nan")
    distance_after: float = float("nan")

    def __post_init__(self):
        if list(self.thetas) != sorted(self.thetas):
            raise ValidationError("theta values must be sorted ascending")

    def write_csv(self, fh):
        """Write columns ``theta, t, <point components>, distance`` to an open file."""
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["theta", "t", *_columns(self.space), "distance"])
        for k, (theta, c) in enumerate(zip(self.thetas, self.curves)):
            d = self.distances[k] if self.distances else float("nan")
            for t, p in zip(c.times, c.samples.reshape(len(c.times), -1)):
                w.writerow([repr(float(theta)), repr(float(t)), *(repr(float(x)) for x in p), repr(float(d))])


def read_geodesic_csv(path):
    """Parse a geodesic CSV into ``{theta: (times, points, distance)}``."""
    blocks = {}
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for row in reader:
            vals = [float(x) for x in row]
            blocks.setdefault(vals[0], []).append(vals[1:])
    out = {}
    for theta, rows in blocks.items():
        arr = np.array(rows)
        out[theta] = (arr[:, 0], arr[:, 1:-1], float(arr[0, -1]))
    return out
