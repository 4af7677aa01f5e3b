"""Geodesics, blending, distances and curve closing in SRVT coordinates.

Transforms discard the starting point, so curves are brought to a common
start first: SO3 curves are right-translated to start at the identity,
S2 curves are rotated onto the start of the first curve, R3 curves are
translated.  Outputs are anchored at the start of the first curve.
"""

from dataclasses import dataclass, field

import numpy as np

from lieshape.curves import make_curve, resample
from lieshape.errors import NoConvergence, SpaceMismatch, ValidationError, ZeroSignalSegment
from lieshape.registration import Warp, apply_warp, coprime_slopes, dp_reparametrize
from lieshape.so3 import exp_vec, log_vec, rotation_between
from lieshape.srvt import (
    AlgebraSignal,
    l2_distance,
    qr_frame,
    same_grid,
    srvt_euclidean,
    srvt_euclidean_inverse,
    srvt_group,
    srvt_group_inverse,
    srvt_reductive,
    srvt_reductive_inverse,
    srvt_sphere,
    srvt_sphere_inverse,
)

TRANSFORMS = {"R3": ("euclidean",), "SO3": ("group",), "S2": ("sphere", "reductive")}
ZERO_SIGNAL = 1e-10
# shape-level registration: small steps alone quantize the warp slope too coarsely
REGISTRATION_SLOPES = coprime_slopes(10)
REGISTRATION_REFINE = 4


def default_transform(space):
    return TRANSFORMS[space][0]


def _resolve(space, transform):
    if transform is None:
        return default_transform(space)
    if transform not in TRANSFORMS[space]:
        raise ValidationError(f"transform {transform!r} does not apply to {space} curves")
    return transform


def forward(c, transform=None, frame0=None):
    """Transform ``c`` with the named SRVT."""
    transform = _resolve(c.space, transform)
    if transform == "euclidean":
        return srvt_euclidean(c)
    if transform == "group":
        return srvt_group(c)
    if transform == "sphere":
        return srvt_sphere(c)
    return srvt_reductive(c, frame0)[0]


def inverse(signal, start, space, transform=None, frame0=None):
    transform = _resolve(space, transform)
    if transform == "euclidean":
        return srvt_euclidean_inverse(signal, start)
    if transform == "group":
        return srvt_group_inverse(signal, start)
    if transform == "sphere":
        return srvt_sphere_inverse(signal, start)
    return srvt_reductive_inverse(signal, start, frame0)[0]


def on_grid(c, times):
    """``c`` moved onto ``times``: the parameter span is mapped affinely, then resampled."""
    if same_grid(c.times, times):
        return c
    span = (c.times - c.times[0]) / (c.times[-1] - c.times[0])
    target = times[0] + span * (times[-1] - times[0])
    moved = make_curve(c.space, c.samples, target, name=c.name)
    return resample(moved, times)


def _to_start(c, start):
    """Move ``c`` rigidly so that it starts at ``start``."""
    if c.space == "SO3":
        g = c.samples[0].T @ start
        return make_curve("SO3", c.samples @ g, c.times, name=c.name)
    if c.space == "S2":
        g = rotation_between(c.samples[0], start)
        return make_curve("S2", c.samples @ g.T, c.times, name=c.name)
    return make_curve("R3", c.samples - c.samples[0] + start, c.times, name=c.name)


def _base_point(c):
    if c.space == "SO3":
        return np.eye(3)
    return c.samples[0]


@dataclass
class Alignment:
    """Two curves on a common grid and start point, with their signals."""

    c1: object
    c2: object
    q1: AlgebraSignal
    q2: AlgebraSignal
    transform: str
    frame0: np.ndarray = None
    warp: Warp = None
    distance_before: float = float("nan")
    distance_after: float = float("nan")


def align(c1, c2, transform=None, register=False, slopes=REGISTRATION_SLOPES,
          refine=REGISTRATION_REFINE):
    """Common grid, common start point and (optionally) DP registration of ``c2``.

    The registered warp is only kept when it does not increase the
    distance of the re-transformed curve.
    """
    if c1.space != c2.space:
        raise SpaceMismatch(f"cannot compare a {c1.space} curve with a {c2.space} curve")
    transform = _resolve(c1.space, transform)
    base = _base_point(c1)
    a = _to_start(c1, base)
    b = _to_start(on_grid(c2, c1.times), base)
    frame0 = qr_frame(base) if transform == "reductive" else None
    q1 = forward(a, transform, frame0)
    q2 = forward(b, transform, frame0)
    out = Alignment(a, b, q1, q2, transform, frame0)
    out.distance_before = out.distance_after = l2_distance(q1, q2)
    if register:
        warp = dp_reparametrize(q1, q2, slopes, refine)
        out.warp = Warp.identity(c1.times)
        if not warp.is_identity():
            b_warped = apply_warp(b, warp)
            q2_warped = forward(b_warped, transform, frame0)
            d = l2_distance(q1, q2_warped)
            if d <= out.distance_before:
                out.c2, out.q2, out.warp, out.distance_after = b_warped, q2_warped, warp, d
    return out


def _restore(c, original):
    """Undo the basepoint normalization of the first curve."""
    if c.space == "SO3":
        return make_curve("SO3", c.samples @ original.samples[0], c.times, name=c.name)
    return c


@dataclass
class GeodesicRequest:
    c1: object
    c2: object
    transform: str = None
    thetas: tuple = (0.25, 0.5, 0.75)
    register: bool = False
    slopes: tuple = REGISTRATION_SLOPES
    refine: int = REGISTRATION_REFINE

    def __post_init__(self):
        self.thetas = tuple(float(t) for t in self.thetas)
        if any(not 0.0 <= t <= 1.0 for t in self.thetas):
            raise ValidationError("interpolation parameters must lie in [0, 1]")
        if self.c1.space != self.c2.space:
            raise SpaceMismatch(f"cannot interpolate {self.c1.space} and {self.c2.space} curves")


def combine(q1, q2, theta):
    """The signal ``(1 - theta) q1 + theta q2``; fails if it vanishes on a segment."""
    values = (1.0 - theta) * q1.values + theta * q2.values
    norms = np.linalg.norm(values, axis=1)
    if np.any(norms < ZERO_SIGNAL):
        i = int(np.argmin(norms))
        raise ZeroSignalSegment(f"interpolated signal vanishes on segment {i} at theta={theta}", index=i)
    return AlgebraSignal(q1.times, values)


def interpolate_aligned(al, theta):
    if theta == 0.0:
        return al.c1
    sig = combine(al.q1, al.q2, theta)
    return inverse(sig, _base_point(al.c1), al.c1.space, al.transform, al.frame0)


def interpolate(req, alignment=None):
    """Curves ``R^-1((1 - theta) R(c1) + theta R(c2))`` for every requested ``theta``.

    Raises:
        ZeroSignalSegment: the straight line between the signals crosses zero.
    """
    al = alignment or align(req.c1, req.c2, req.transform, req.register, req.slopes, req.refine)
    out = []
    for theta in req.thetas:
        if theta == 0.0:
            out.append(req.c1)
            continue
        out.append(_restore(interpolate_aligned(al, theta), req.c1))
    return out


def distances_along(al, curves):
    """Distance from the (aligned) first curve to each curve, on the common grid."""
    out = []
    for c in curves:
        q = forward(_to_start(on_grid(c, al.c1.times), _base_point(al.c1)), al.transform, al.frame0)
        out.append(l2_distance(al.q1, q))
    return out


def blend(c0, c1, s, transform=None, register=False):
    """``R^-1(s R(c0) + (1 - s) R(c1))``, anchored at the start of ``c0``."""
    if not 0.0 <= s <= 1.0:
        raise ValidationError("blend weight must lie in [0, 1]")
    req = GeodesicRequest(c0, c1, transform, (1.0 - s,), register)
    return interpolate(req)[0]


def shape_distance(c1, c2, transform=None, register=False, slopes=REGISTRATION_SLOPES,
                   refine=REGISTRATION_REFINE):
    """L^2 distance of the transformed curves; after DP registration if ``register``."""
    al = align(c1, c2, transform, register, slopes, refine)
    return al.distance_after


@dataclass
class ClosingReport:
    curve: object
    defects: list = field(default_factory=list)
    iterations: int = 0
    converged: bool = False
    signal_change: float = 0.0


def closure_defect(c):
    """Algebra vector ``log(z[0] z[N]^T)``."""
    return log_vec(c.samples[0] @ c.samples[-1].T)


def _integrate(z0, increments):
    z = [z0]
    for xi in increments:
        z.append(exp_vec(xi) @ z[-1])
    return np.array(z)


def closing_iterates(c, tol=1e-8, max_iter=50):
    """Close an SO(3) curve by spreading its closure defect over the segments.

    Each iteration moves the defect ``d = log(z0 zN^T)`` back to every
    segment through the remaining part of the curve and adds a share
    proportional to segment length to the segment increment.  A step that
    would grow the defect is halved.  The start point never moves.
    """
    if c.space != "SO3":
        raise ValidationError("curve closing works on SO3 curves")
    z0 = c.samples[0]
    increments = np.array([log_vec(c.samples[i + 1] @ c.samples[i].T) for i in range(c.n_segments)])
    samples = c.samples
    gap = float(np.linalg.norm(closure_defect(c)))
    report = ClosingReport(c, [gap])
    q_ref = srvt_group(c)

    while gap > tol and report.iterations < max_iter:
        delta = log_vec(z0 @ samples[-1].T)
        lengths = np.linalg.norm(increments, axis=1)
        weights = lengths / lengths.sum()
        zN = samples[-1]
        corr = np.array([w * (zN @ samples[i + 1].T).T @ delta
                         for i, w in enumerate(weights)])
        step = 1.0
        while True:
            trial = increments + step * corr
            trial_samples = _integrate(z0, trial)
            trial_gap = float(np.linalg.norm(log_vec(z0 @ trial_samples[-1].T)))
            if trial_gap <= gap:
                break
            step *= 0.5
            if step < 1e-6:
                raise NoConvergence("closing step cannot reduce the defect", report)
        increments, samples, gap = trial, trial_samples, trial_gap
        report.iterations += 1
        report.defects.append(gap)
        report.curve = make_curve("SO3", samples, c.times, name=c.name)

    if report.iterations:
        q = srvt_group(report.curve)
        report.signal_change = l2_distance(q, q_ref) / np.sqrt(np.sum(q_ref.steps * np.sum(q_ref.values ** 2, axis=1)))
    report.converged = gap <= tol
    if not report.converged:
        raise NoConvergence(f"closure defect {gap:.3e} above {tol:.1e} after {max_iter} iterations", report)
    return report


def close_curve(c, tol=1e-8, max_iter=50):
    """Return a copy of ``c`` whose end point matches its start within ``tol``.

    Raises:
        NoConvergence: the iteration budget ran out; ``exc.report.curve``
            holds the best iterate.
    """
    return closing_iterates(c, tol, max_iter).curve
