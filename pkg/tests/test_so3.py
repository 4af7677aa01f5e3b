import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from lieshape import AngleNearPi, alg_inner, alg_norm, exp_so3, hat, log_so3, vee
from lieshape.so3 import SMALL_ANGLE, rotation_between

finite = st.floats(-10, 10, allow_nan=False)
vec3 = arrays(np.float64, 3, elements=finite)


def series_exp(A, terms=30):
    out, term = np.eye(3), np.eye(3)
    for k in range(1, terms):
        term = term @ A / k
        out = out + term
    return out


def axis_angle(axis, angle):
    """Rotation about a unit axis built from its outer products, independent of Rodrigues' code."""
    n = np.asarray(axis, dtype=float) / np.linalg.norm(axis)
    K = np.array([[0, -n[2], n[1]], [n[2], 0, -n[0]], [-n[1], n[0], 0]])
    return math.cos(angle) * np.eye(3) + math.sin(angle) * K + (1 - math.cos(angle)) * np.outer(n, n)


def test_hat_examples():
    assert np.array_equal(hat([0, 0, 0]), np.zeros((3, 3)))
    assert np.array_equal(hat([1, 2, 3]), [[0, -3, 2], [3, 0, -1], [-2, 1, 0]])


@given(vec3, vec3)
def test_hat_is_cross_product(v, w):
    assert np.allclose(hat(v) @ w, np.cross(v, w), atol=1e-12, rtol=0)


def test_vee_inverts_hat(rng):
    assert np.array_equal(vee(np.zeros((3, 3))), np.zeros(3))
    assert np.array_equal(vee(hat([1, 2, 3])), [1, 2, 3])
    for _ in range(20):
        M = rng.normal(size=(3, 3))
        A = M - M.T
        assert np.array_equal(hat(vee(A)), A)


def test_vee_rejects_non_skew():
    A = hat([1, 2, 3])
    A[0, 1] += 1e-9
    with pytest.raises(ValueError):
        vee(A)


def test_exp_examples():
    assert np.array_equal(exp_so3(np.zeros((3, 3))), np.eye(3))
    quarter = exp_so3(hat([np.pi / 2, 0, 0]))
    assert np.allclose(quarter, [[1, 0, 0], [0, 0, -1], [0, 1, 0]], atol=1e-15)


def test_exp_matches_power_series(rng):
    for _ in range(200):
        v = rng.normal(size=3)
        v *= rng.uniform(0, 2) / np.linalg.norm(v)
        A = hat(v)
        assert np.max(np.abs(exp_so3(A) - series_exp(A))) < 1e-12


def test_exp_branches_agree_at_switch():
    axis = np.array([0.3, -0.5, 0.8]) / np.linalg.norm([0.3, -0.5, 0.8])
    below = exp_so3(hat(axis * SMALL_ANGLE * (1 - 1e-9)))
    above = exp_so3(hat(axis * SMALL_ANGLE * (1 + 1e-9)))
    assert np.max(np.abs(below - above)) < 1e-12
    assert np.max(np.abs(below - series_exp(hat(axis * SMALL_ANGLE)))) < 1e-12


@settings(max_examples=200)
@given(vec3)
def test_exp_is_rotation(v):
    R = exp_so3(hat(v))
    assert np.linalg.norm(R.T @ R - np.eye(3)) < 1e-10
    assert abs(np.linalg.det(R) - 1) < 1e-10


@settings(max_examples=300)
@given(vec3)
def test_log_exp_round_trip(v):
    n = np.linalg.norm(v)
    if n >= np.pi - 1e-3:
        v = v / n * (n % (np.pi - 1e-3))
    assert np.allclose(vee(log_so3(exp_so3(hat(v)))), v, atol=1e-9, rtol=0)


def test_log_examples():
    assert np.array_equal(log_so3(np.eye(3)), np.zeros((3, 3)))
    x = np.array([0.1, 0.2, 0.3])
    assert np.allclose(log_so3(exp_so3(hat(x))), hat(x), atol=1e-14)
    # beyond pi/2, where the plain arcsine form would pick the wrong branch
    R = axis_angle([0, 0, 1], 2.0)
    assert np.allclose(log_so3(R), hat([0, 0, 2.0]), atol=1e-12)


def test_log_small_angle_branch():
    x = np.array([3e-5, -2e-5, 1e-5])
    assert np.allclose(vee(log_so3(axis_angle(x, np.linalg.norm(x)))), x, atol=1e-18, rtol=1e-12)


def test_log_near_pi_raises():
    with pytest.raises(AngleNearPi):
        log_so3(axis_angle([1, 1, 0], np.pi - 1e-7))
    log_so3(axis_angle([1, 1, 0], np.pi - 1e-5))


def test_alg_inner_examples(rng):
    assert alg_norm(hat([3, 4, 0])) == pytest.approx(5, abs=1e-15)
    assert alg_inner(hat([1, 0, 0]), hat([0, 1, 0])) == 0
    for _ in range(10):
        A, B = rng.normal(size=(3, 3)), rng.normal(size=(3, 3))
        A, B = A - A.T, B - B.T
        entrywise = 0.5 * sum(A[i, j] * B[i, j] for i in range(3) for j in range(3))
        assert alg_inner(A, B) == pytest.approx(entrywise, abs=1e-13)


@given(vec3)
def test_alg_norm_is_euclidean(v):
    assert abs(alg_norm(hat(v)) - np.linalg.norm(v)) < 1e-12


def test_rotation_between(rng):
    for _ in range(10):
        a, b = rng.normal(size=3), rng.normal(size=3)
        a, b = a / np.linalg.norm(a), b / np.linalg.norm(b)
        assert np.allclose(rotation_between(a, b) @ a, b, atol=1e-14)
    assert np.allclose(rotation_between([1, 0, 0], [-1, 0, 0]) @ [1, 0, 0], [-1, 0, 0])
