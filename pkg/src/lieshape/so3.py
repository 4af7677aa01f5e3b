"""Closed-form kernels on SO(3) and its Lie algebra so(3).

Algebra elements are 3x3 skew matrices; ``hat``/``vee`` convert to and
from their R^3 coordinates.  The algebra inner product is half the
Frobenius product, so that ``alg_norm(hat(x)) == norm(x)`` and the
rotation angle of ``exp_so3(hat(x))`` is ``norm(x)``.
"""

import numpy as np

from lieshape.errors import AngleNearPi

SMALL_ANGLE = 1e-4
PI_MARGIN = 1e-6
SKEW_TOL = 1e-12


def hat(v):
    """Map ``v`` in R^3 to the skew matrix with ``hat(v) @ w == cross(v, w)``."""
    x1, x2, x3 = np.asarray(v, dtype=float)
    return np.array([[0.0, -x3, x2],
                     [x3, 0.0, -x1],
                     [-x2, x1, 0.0]])


def vee(A):
    """Inverse of :func:`hat`.  Rejects matrices that are not skew."""
    A = np.asarray(A, dtype=float)
    if A.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {A.shape}")
    if np.max(np.abs(A + A.T)) > SKEW_TOL:
        raise ValueError("matrix is not skew-symmetric")
    return np.array([A[2, 1], A[0, 2], A[1, 0]])


def _rodrigues_coeffs(alpha):
    if alpha < SMALL_ANGLE:
        a2 = alpha * alpha
        return 1.0 - a2 / 6.0 + a2 * a2 / 120.0, 0.5 - a2 / 24.0 + a2 * a2 / 720.0
    return np.sin(alpha) / alpha, (1.0 - np.cos(alpha)) / (alpha * alpha)


def exp_so3(A):
    """Rodrigues' formula ``I + sin(a)/a A + (1 - cos(a))/a^2 A^2``, ``a = |vee(A)|``."""
    A = np.asarray(A, dtype=float)
    alpha = np.sqrt(0.5 * np.sum(A * A))
    s, c = _rodrigues_coeffs(alpha)
    return np.eye(3) + s * A + c * (A @ A)


def rotation_angle(R):
    """Angle in [0, pi] of the rotation ``R``, robust near 0 and pi."""
    R = np.asarray(R, dtype=float)
    y = 0.5 * np.array([R[2, 1] - R[1, 2], R[0, 2] - R[2, 0], R[1, 0] - R[0, 1]])
    return float(np.arctan2(np.linalg.norm(y), 0.5 * (np.trace(R) - 1.0)))


def log_so3(R):
    """Principal logarithm of a rotation as a skew matrix.

    Uses ``y_hat = (R - R^T)/2`` scaled by ``theta/|y|`` with the angle
    ``theta = atan2(|y|, (tr R - 1)/2)``, which agrees with the arcsine
    form near the identity and stays valid up to pi.

    Raises:
        AngleNearPi: if the rotation angle exceeds ``pi - 1e-6``; the axis
            cannot be recovered reliably from the skew part there.
    """
    R = np.asarray(R, dtype=float)
    Y = 0.5 * (R - R.T)
    sin_theta = np.sqrt(0.5 * np.sum(Y * Y))
    theta = np.arctan2(sin_theta, 0.5 * (np.trace(R) - 1.0))
    if theta > np.pi - PI_MARGIN:
        raise AngleNearPi(f"rotation angle {theta:.9f} too close to pi; refine the curve grid")
    if theta < SMALL_ANGLE:
        t2 = theta * theta
        scale = 1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0
    else:
        scale = theta / sin_theta
    return scale * Y


def exp_vec(v):
    return exp_so3(hat(v))


def log_vec(R):
    L = log_so3(R)
    return np.array([L[2, 1], L[0, 2], L[1, 0]])


def alg_inner(A, B):
    """Inner product ``tr(A^T B) / 2`` on so(3)."""
    return 0.5 * float(np.sum(np.asarray(A, dtype=float) * np.asarray(B, dtype=float)))


def alg_norm(A):
    return float(np.sqrt(max(alg_inner(A, A), 0.0)))


def rotation_between(a, b):
    """A rotation taking unit vector ``a`` to unit vector ``b`` about ``a x b``.

    For antipodal vectors a half turn about an arbitrary perpendicular axis
    is returned.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    axis = np.cross(a, b)
    s = np.linalg.norm(axis)
    c = float(np.dot(a, b))
    if s < 1e-15 and c < 0:
        # any axis perpendicular to a
        perp = np.cross(a, np.eye(3)[np.argmin(np.abs(a))])
        perp /= np.linalg.norm(perp)
        return exp_vec(np.pi * perp)
    if s < 1e-15:
        return np.eye(3)
    return exp_vec(axis / s * np.arctan2(s, c))
