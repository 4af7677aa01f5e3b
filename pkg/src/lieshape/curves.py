"""Discrete curves in R^3, SO(3) and S^2 with piecewise-geodesic interpolants."""

from dataclasses import dataclass

import numpy as np

from lieshape.errors import (
    AntipodalSegment,
    DegenerateSegment,
    GridNotIncreasing,
    NotOnManifold,
    OutOfRange,
    ValidationError,
)
from lieshape.so3 import exp_so3, log_so3, rotation_angle

SPACES = ("R3", "SO3", "S2")

ORTHO_TOL = 1e-9
UNIT_TOL = 1e-6
MIN_GAP = 1e-12
ANTIPODAL_TOL = 1e-9
SERIES_SWITCH = 1e-10


@dataclass(frozen=True, eq=False)
class DiscreteCurve:
    """Samples of a curve on a strictly increasing time grid.

    ``samples`` has shape ``(N+1, 3)`` for R3 and S2 curves and
    ``(N+1, 3, 3)`` for SO3 curves.  Build instances with
    :func:`make_curve`, which validates and freezes the arrays.
    """

    space: str
    times: np.ndarray
    samples: np.ndarray
    name: str = None

    @property
    def n_segments(self):
        return len(self.times) - 1

    @property
    def steps(self):
        return np.diff(self.times)

    def __len__(self):
        return len(self.times)

    def __repr__(self):
        return (f"DiscreteCurve(space={self.space!r}, nodes={len(self.times)}, "
                f"span=[{self.times[0]:g}, {self.times[-1]:g}])")


def uniform_grid(n_nodes, start=0.0, stop=1.0):
    return np.linspace(start, stop, n_nodes)


def _check_grid(times):
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or len(times) < 2:
        raise GridNotIncreasing("a time grid needs at least two nodes")
    if not np.all(np.isfinite(times)):
        raise GridNotIncreasing("time grid contains non-finite values")
    if np.any(np.diff(times) <= 0):
        bad = int(np.argmax(np.diff(times) <= 0))
        raise GridNotIncreasing(f"time grid not strictly increasing at node {bad + 1}")
    return times


def sphere_gap(a, b):
    """Great-circle angle between unit vectors, accurate for tiny angles."""
    return float(np.arctan2(np.linalg.norm(np.cross(a, b)), np.dot(a, b)))


def make_curve(space, samples, times=None, name=None):
    """Validate samples and build an immutable :class:`DiscreteCurve`.

    ``times`` defaults to the uniform grid on [0, 1].  S2 samples within
    1e-6 of unit norm are renormalized.

    Raises:
        GridNotIncreasing, NotOnManifold, DegenerateSegment, AntipodalSegment
    """
    if space not in SPACES:
        raise ValidationError(f"unknown space {space!r}; expected one of {SPACES}")
    samples = np.array(samples, dtype=float)
    n = len(samples)
    if times is None:
        times = uniform_grid(n)
    times = _check_grid(times)
    if n != len(times):
        raise ValidationError(f"{n} samples but {len(times)} grid nodes")

    if space == "SO3":
        if samples.shape[1:] == (9,):
            samples = samples.reshape(n, 3, 3)
        if samples.shape[1:] != (3, 3):
            raise ValidationError(f"SO3 samples need shape (N+1, 3, 3), got {samples.shape}")
    elif samples.shape[1:] != (3,):
        raise ValidationError(f"{space} samples need shape (N+1, 3), got {samples.shape}")
    if not np.all(np.isfinite(samples)):
        raise NotOnManifold("samples contain non-finite values")

    if space == "SO3":
        for i, R in enumerate(samples):
            if np.linalg.norm(R.T @ R - np.eye(3)) > ORTHO_TOL or np.linalg.det(R) <= 0:
                raise NotOnManifold(f"sample {i} is not a rotation matrix", index=i)
        for i in range(n - 1):
            if rotation_angle(samples[i + 1] @ samples[i].T) < MIN_GAP:
                raise DegenerateSegment(f"samples {i} and {i + 1} coincide", index=i)
    elif space == "S2":
        norms = np.linalg.norm(samples, axis=1)
        bad = np.flatnonzero(np.abs(norms - 1.0) > UNIT_TOL)
        if bad.size:
            i = int(bad[0])
            raise NotOnManifold(f"sample {i} has norm {norms[i]:.9g}, not on the unit sphere", index=i)
        # leave rounding-level deviations alone so stored data round-trips bit-exactly
        off = np.abs(norms - 1.0) > 1e-15
        samples[off] /= norms[off, None]
        for i in range(n - 1):
            a, b = samples[i], samples[i + 1]
            if np.dot(a, b) <= -1.0 + ANTIPODAL_TOL:
                raise AntipodalSegment(f"samples {i} and {i + 1} are antipodal", index=i)
            if sphere_gap(a, b) < MIN_GAP:
                raise DegenerateSegment(f"samples {i} and {i + 1} coincide", index=i)
    else:
        gaps = np.linalg.norm(np.diff(samples, axis=0), axis=1)
        bad = np.flatnonzero(gaps < MIN_GAP)
        if bad.size:
            i = int(bad[0])
            raise DegenerateSegment(f"samples {i} and {i + 1} coincide", index=i)

    times = times.copy()
    times.flags.writeable = False
    samples.flags.writeable = False
    return DiscreteCurve(space, times, samples, name)


def _locate(times, t):
    """Return ``(i, frac)`` for the segment containing ``t``, or ``(k, None)`` at a node."""
    t = float(t)
    if not times[0] <= t <= times[-1]:
        raise OutOfRange(f"t={t!r} outside [{times[0]!r}, {times[-1]!r}]")
    i = int(np.searchsorted(times, t, side="right")) - 1
    if times[i] == t:
        return i, None
    return i, (t - times[i]) / (times[i + 1] - times[i])


def eval_group_curve(c, t):
    """Evaluate ``exp(s log(z[i+1] z[i]^T)) z[i]`` with ``s`` the local fraction of the segment."""
    if c.space != "SO3":
        raise ValidationError(f"expected an SO3 curve, got {c.space}")
    i, frac = _locate(c.times, t)
    if frac is None:
        return c.samples[i].copy()
    z0, z1 = c.samples[i], c.samples[i + 1]
    return exp_so3(frac * log_so3(z1 @ z0.T)) @ z0


def _velocity_factor(a, b):
    """``(s, arccos(s) / sqrt(1 - s^2))`` for ``s = a.b``, evaluated stably.

    ``sqrt(1 - s^2)`` equals ``|b - s a|``, which keeps full relative
    precision near both s = 1 and s = -1; near s = 1 the series of the
    ratio avoids 0/0.
    """
    s = float(np.clip(np.dot(a, b), -1.0, 1.0))
    if s <= -1.0 + ANTIPODAL_TOL:
        raise AntipodalSegment("antipodal segment has no unique great circle")
    if s > 1.0 - SERIES_SWITCH:
        return s, 1.0 + (1.0 - s) / 3.0
    sine = np.linalg.norm(b - s * a)
    return s, np.arctan2(sine, s) / sine


def _segment_velocity(a, b):
    s, factor = _velocity_factor(a, b)
    return (b - s * a) * factor


def sphere_velocities(c):
    """Tangent vectors ``v[i]`` at ``c[i]`` with ``exp(v c^T - c v^T) c[i] = c[i+1]``.

    Returns an ``(N, 3)`` array; ``|v[i]|`` is the great-circle angle of
    segment ``i`` and ``v[i]`` is orthogonal to ``c[i]``.
    """
    if c.space != "S2":
        raise ValidationError(f"expected an S2 curve, got {c.space}")
    pts = c.samples
    out = np.empty((len(pts) - 1, 3))
    for i in range(len(pts) - 1):
        if sphere_gap(pts[i], pts[i + 1]) < MIN_GAP:
            raise DegenerateSegment(f"samples {i} and {i + 1} coincide", index=i)
        try:
            out[i] = _segment_velocity(pts[i], pts[i + 1])
        except AntipodalSegment as exc:
            raise AntipodalSegment(str(exc), index=i) from None
    return out


def eval_sphere_curve(c, t):
    """Great-circle interpolant of a sphere curve at time ``t``."""
    if c.space != "S2":
        raise ValidationError(f"expected an S2 curve, got {c.space}")
    i, frac = _locate(c.times, t)
    if frac is None:
        return c.samples[i].copy()
    a, b = c.samples[i], c.samples[i + 1]
    try:
        _, factor = _velocity_factor(a, b)
    except AntipodalSegment as exc:
        raise AntipodalSegment(str(exc), index=i) from None
    K = factor * (np.outer(b, a) - np.outer(a, b))
    return exp_so3(frac * K) @ a


def eval_curve(c, t):
    if c.space == "SO3":
        return eval_group_curve(c, t)
    if c.space == "S2":
        return eval_sphere_curve(c, t)
    i, frac = _locate(c.times, t)
    if frac is None:
        return c.samples[i].copy()
    return (1.0 - frac) * c.samples[i] + frac * c.samples[i + 1]


def resample(c, times):
    """Sample the piecewise-geodesic interpolant of ``c`` at new grid nodes."""
    times = _check_grid(times)
    samples = np.array([eval_curve(c, t) for t in times])
    return make_curve(c.space, samples, times, name=c.name)


def with_samples(c, samples):
    """A curve on the grid of ``c`` with replacement samples."""
    return make_curve(c.space, samples, c.times, name=c.name)
