"""Regenerate the bundled sphere fixtures in src/lieshape/data."""

from pathlib import Path

import numpy as np

from lieshape.curves import make_curve
from lieshape.fileio import save_curve
from lieshape.so3 import rotation_between
from lieshape.synthetic import smooth_sphere_curve, smooth_warp

DATA = Path(__file__).resolve().parents[1] / "src" / "lieshape" / "data"

t = np.linspace(0, 1, 33)
a = smooth_sphere_curve(t, 0)
b = smooth_sphere_curve(smooth_warp(t, 1.5), 1)
# common start point, so geodesic endpoints coincide with the files
g = rotation_between(b.samples[0], a.samples[0])
save_curve(make_curve("S2", a.samples, t, name="sphere_a"), DATA / "sphere_a.json")
save_curve(make_curve("S2", b.samples @ g.T, t, name="sphere_b"), DATA / "sphere_b.json")
