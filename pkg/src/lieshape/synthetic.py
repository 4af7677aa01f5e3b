"""Reproducible synthetic curves for tests, fixtures and demos.

The default seed comes from the ``LIESHAPE_SEED`` environment variable.
"""

import os

import numpy as np

from lieshape.curves import make_curve, uniform_grid
from lieshape.so3 import exp_vec


def rng(seed=None):
    if seed is None:
        seed = int(os.environ.get("LIESHAPE_SEED", "0"))
    return np.random.default_rng(seed)


def random_so3(gen, scale=np.pi):
    v = gen.normal(size=3)
    return exp_vec(v / np.linalg.norm(v) * gen.uniform(0, scale * 0.999))


def random_so3_curve(gen, n_nodes=20, step=0.4, times=None):
    """Random walk on SO(3) with increments of norm below ``step``."""
    z = [random_so3(gen)]
    for _ in range(n_nodes - 1):
        xi = gen.normal(size=3)
        xi *= gen.uniform(0.1, 1.0) * step / np.linalg.norm(xi)
        z.append(exp_vec(xi) @ z[-1])
    return make_curve("SO3", np.array(z), times)


def random_sphere_curve(gen, n_nodes=20, step=0.3, times=None):
    """Random walk on S^2 with great-circle steps of angle below ``step``."""
    p = gen.normal(size=3)
    pts = [p / np.linalg.norm(p)]
    for _ in range(n_nodes - 1):
        axis = np.cross(pts[-1], gen.normal(size=3))
        axis /= np.linalg.norm(axis)
        pts.append(exp_vec(axis * gen.uniform(0.1, 1.0) * step) @ pts[-1])
    return make_curve("S2", np.array(pts), times)


def random_grid(gen, n_nodes, start=0.0, stop=1.0):
    gaps = gen.uniform(0.5, 1.5, size=n_nodes - 1)
    return start + (stop - start) * np.concatenate([[0.0], np.cumsum(gaps) / gaps.sum()])


def smooth_sphere_curve(times, kind=0):
    """Closed-form smooth sphere curves used for registration experiments."""
    t = np.asarray(times, dtype=float)
    if kind == 0:
        lon = 2.2 * t + 0.4 * np.sin(3 * t)
        lat = 0.6 * np.sin(2.5 * t) - 0.2
    else:
        lon = 2.0 * t + 0.3 * np.cos(2 * t) - 0.3
        lat = 0.5 * np.sin(3.0 * t + 0.5) - 0.1
    pts = np.stack([np.cos(lat) * np.cos(lon), np.cos(lat) * np.sin(lon), np.sin(lat)], axis=1)
    return make_curve("S2", pts, t)


def smooth_so3_curve(times, omega=(1.0, 2.0, 0.5), wobble=0.4):
    """``exp(t hat(omega)) exp(wobble sin(2 pi t) hat(e1))`` sampled on ``times``."""
    t = np.asarray(times, dtype=float)
    omega = np.asarray(omega, dtype=float)
    z = [exp_vec(s * omega) @ exp_vec([wobble * np.sin(2 * np.pi * s), 0.0, 0.0]) for s in t]
    return make_curve("SO3", np.array(z), t)


def smooth_warp(t, strength=2.0):
    """Diffeomorphism of [0, 1]: ``(exp(a t) - 1) / (exp(a) - 1)``."""
    t = np.asarray(t, dtype=float)
    return np.expm1(strength * t) / np.expm1(strength)


def default_grid(n_nodes=64):
    return uniform_grid(n_nodes)


def open_loop_so3(n_nodes=64, gap=0.3, seed=3):
    """A closed SO(3) loop with a linear drift that leaves an end gap of ``gap`` rad."""
    t = np.linspace(0, 1, n_nodes)
    axis = np.array([0.2, 1.0, -0.4]) / np.linalg.norm([0.2, 1.0, -0.4])
    z = [exp_vec(s * gap * axis) @ exp_vec([0.8 * np.sin(2 * np.pi * s),
                                           0.5 * (1 - np.cos(2 * np.pi * s)),
                                           0.3 * np.sin(4 * np.pi * s)]) for s in t]
    return make_curve("SO3", np.array(z) @ random_so3(np.random.default_rng(seed)), t)
