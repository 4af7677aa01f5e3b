"""Square root velocity transforms of discrete curves and their inverses.

Every transform maps a curve with N segments to a piecewise-constant
signal with one algebra value per segment.  so(3) values are stored by
their R^3 coordinates (``hat`` recovers the skew matrix); since
``alg_norm(hat(x)) == |x|`` all norms below are plain Euclidean norms.
"""

from dataclasses import dataclass

import numpy as np

from lieshape.curves import (
    MIN_GAP,
    _segment_velocity,
    make_curve,
    sphere_gap,
    sphere_velocities,
)
from lieshape.errors import (
    AntipodalSegment,
    DegenerateSegment,
    FrameMismatch,
    GridMismatch,
    ValidationError,
    ZeroSignalSegment,
)
from lieshape.so3 import exp_vec, hat, log_vec

MIN_SIGNAL = 1e-12
FRAME_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class AlgebraSignal:
    """Piecewise-constant signal: ``values[i]`` holds on ``[times[i], times[i+1])``."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        times = np.array(self.times, dtype=float)
        values = np.array(self.values, dtype=float).reshape(-1, 3)
        if len(values) != len(times) - 1:
            raise ValidationError(f"{len(values)} values for {len(times) - 1} segments")
        norms = np.linalg.norm(values, axis=1)
        small = np.flatnonzero(norms < MIN_SIGNAL)
        if small.size:
            i = int(small[0])
            raise ZeroSignalSegment(f"signal vanishes on segment {i}", index=i)
        times.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @property
    def steps(self):
        return np.diff(self.times)

    @property
    def matrices(self):
        """The values as so(3) skew matrices, shape ``(N, 3, 3)``."""
        return np.array([hat(v) for v in self.values])

    def __len__(self):
        return len(self.values)


def _scale(eta):
    """``eta / sqrt(|eta|)`` row-wise."""
    return eta / np.sqrt(np.linalg.norm(eta, axis=1))[:, None]


def _increments(signal):
    """Per-segment displacement ``h |p| p``, the inverse of :func:`_scale` times the step."""
    p = signal.values
    return signal.steps[:, None] * np.linalg.norm(p, axis=1)[:, None] * p


def _require(c, space):
    if c.space != space:
        raise ValidationError(f"expected a {space} curve, got {c.space}")


def srvt_euclidean(c):
    """SRVT of a polygonal curve in R^3: ``eta / sqrt(|eta|)`` with ``eta`` the segment velocity."""
    _require(c, "R3")
    eta = np.diff(c.samples, axis=0) / c.steps[:, None]
    if np.any(np.linalg.norm(eta, axis=1) < MIN_SIGNAL):
        i = int(np.argmin(np.linalg.norm(eta, axis=1)))
        raise DegenerateSegment(f"segment {i} has zero length", index=i)
    return AlgebraSignal(c.times, _scale(eta))


def srvt_euclidean_inverse(signal, start):
    start = np.asarray(start, dtype=float)
    pts = start + np.vstack([np.zeros(3), np.cumsum(_increments(signal), axis=0)])
    return make_curve("R3", pts, signal.times)


def srvt_group(c):
    """SRVT of an SO(3) curve from the right-trivialized segment velocities.

    ``eta[i] = log(z[i+1] z[i]^T) / h[i]`` and ``p[i] = eta[i] / sqrt(|eta[i]|)``.

    Raises:
        AngleNearPi: a segment turns by nearly pi.
    """
    _require(c, "SO3")
    z = c.samples
    eta = np.array([log_vec(z[i + 1] @ z[i].T) for i in range(len(z) - 1)])
    eta /= c.steps[:, None]
    norms = np.linalg.norm(eta, axis=1)
    if np.any(norms < MIN_SIGNAL):
        i = int(np.argmin(norms))
        raise DegenerateSegment(f"segment {i} does not move", index=i)
    return AlgebraSignal(c.times, _scale(eta))


def srvt_group_inverse(signal, z0):
    """Rebuild an SO(3) curve by ``z[i+1] = exp(h[i] |p[i]| p[i]) z[i]`` from ``z0``."""
    z = [np.asarray(z0, dtype=float)]
    for xi in _increments(signal):
        z.append(exp_vec(xi) @ z[-1])
    return make_curve("SO3", np.array(z), signal.times)


def srvt_sphere(c):
    """SRVT of a sphere curve through the action of SO(3).

    The segment velocity ``v[i]`` acts as the skew matrix
    ``v c^T - c v^T = hat(c x v)``, so the signal is ``kappa / sqrt(|kappa|)``
    with ``kappa[i] = c[i] x v[i] / h[i]``.
    """
    _require(c, "S2")
    v = sphere_velocities(c)
    kappa = np.cross(c.samples[:-1], v) / c.steps[:, None]
    return AlgebraSignal(c.times, _scale(kappa))


def srvt_sphere_inverse(signal, c0):
    """Rebuild a sphere curve by ``c[i+1] = exp(h[i] |q[i]| q[i]) c[i]``."""
    c0 = np.asarray(c0, dtype=float)
    pts = [c0 / np.linalg.norm(c0)]
    for xi in _increments(signal):
        pts.append(exp_vec(xi) @ pts[-1])
    return make_curve("S2", np.array(pts), signal.times)


def qr_frame(c0):
    """Rotation whose first column is the unit vector ``c0`` (QR of ``c0``)."""
    c0 = np.asarray(c0, dtype=float).reshape(3, 1)
    Q, _ = np.linalg.qr(c0, mode="complete")
    if Q[:, 0] @ c0[:, 0] < 0:
        Q[:, :2] *= -1.0
    if np.linalg.det(Q) < 0:
        Q[:, 2] *= -1.0
    return Q


def _check_frame(frame0, c0):
    frame0 = np.asarray(frame0, dtype=float)
    if np.linalg.norm(frame0.T @ frame0 - np.eye(3)) > 1e-9 or np.linalg.det(frame0) <= 0:
        raise FrameMismatch("initial frame is not a rotation")
    col = frame0[:, 0]
    if min(np.linalg.norm(col - c0), np.linalg.norm(col + c0)) > FRAME_TOL:
        raise FrameMismatch("first column of the initial frame does not span c(t0)")
    return frame0


def srvt_reductive(c, frame0=None):
    """Reductive SRVT of a sphere curve with frames moved along the curve.

    Frames follow ``F[i+1] = exp(a_i) F[i]`` with ``a_i = v c^T - c v^T``.
    Segment ``i`` is pulled back by ``F[i]^T`` to a segment starting at the
    fixed point ``F[0]^T c[0]`` and transformed there, so every value lies
    in the complement of that point's stabilizer.

    Returns:
        ``(signal, frames)`` with ``frames`` of shape ``(N+1, 3, 3)``.
    """
    _require(c, "S2")
    pts = c.samples
    if frame0 is None:
        frame0 = qr_frame(pts[0])
    F = _check_frame(frame0, pts[0])
    frames = [F]
    kappa = np.empty((len(pts) - 1, 3))
    for i in range(len(pts) - 1):
        a, b = F.T @ pts[i], F.T @ pts[i + 1]
        if sphere_gap(a, b) < MIN_GAP:
            raise DegenerateSegment(f"samples {i} and {i + 1} coincide", index=i)
        try:
            v = _segment_velocity(a, b)
        except AntipodalSegment as exc:
            raise AntipodalSegment(str(exc), index=i) from None
        kappa[i] = np.cross(a, v)
        # world-frame action is F kappa, and exp(hat(F k)) F = F exp(hat(k))
        F = exp_vec(F @ kappa[i]) @ F
        frames.append(F)
    kappa /= c.steps[:, None]
    return AlgebraSignal(c.times, _scale(kappa)), np.array(frames)


def srvt_reductive_inverse(signal, c0, frame0=None):
    """Invert :func:`srvt_reductive`; returns ``(curve, frames)``."""
    c0 = np.asarray(c0, dtype=float)
    c0 = c0 / np.linalg.norm(c0)
    if frame0 is None:
        frame0 = qr_frame(c0)
    F = _check_frame(frame0, c0)
    pts, frames = [c0], [F]
    for xi in _increments(signal):
        g = exp_vec(F @ xi)
        pts.append(g @ pts[-1])
        F = g @ F
        frames.append(F)
    return make_curve("S2", np.array(pts), signal.times), np.array(frames)


def same_grid(a_times, b_times):
    a_times, b_times = np.asarray(a_times), np.asarray(b_times)
    if a_times.shape != b_times.shape:
        return False
    span = max(abs(a_times[-1] - a_times[0]), 1.0)
    return bool(np.all(np.abs(a_times - b_times) <= 1e-12 * span))


def l2_distance(a, b):
    """L^2 distance ``sqrt(sum h[i] |a[i] - b[i]|^2)`` of two signals on one grid."""
    if not same_grid(a.times, b.times):
        raise GridMismatch("signals live on different grids; resample first")
    diff = a.values - b.values
    return float(np.sqrt(np.sum(a.steps * np.sum(diff * diff, axis=1))))
