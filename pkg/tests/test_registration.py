
import numpy as np
import pytest

from lieshape import (
    DEFAULT_SLOPES,
    AlgebraSignal,
    EmptySlopeSet,
    GridMismatch,
    Warp,
    apply_warp,
    dp_reparametrize,
    l2_distance,
    make_curve,
    srvt_group,
    warp_signal,
)
from lieshape.registration import coprime_slopes
from lieshape.synthetic import random_so3_curve, random_sphere_curve, smooth_so3_curve, smooth_warp

SUB = 60  # divisible by every step length up to 6


def path_cost(q1, q2, path):
    """Squared L2 discrepancy of a lattice path by midpoint quadrature on a 1/SUB sub-grid.

    All breakpoints of the warped signal fall on the sub-grid, so the sum is exact.
    """
    h = q1.steps[0]
    total = 0.0
    for (i0, j0), (i1, j1) in zip(path[:-1], path[1:]):
        slope = (j1 - j0) / (i1 - i0)
        x = i0 + (np.arange((i1 - i0) * SUB) + 0.5) / SUB
        y = j0 + (x - i0) * slope
        a = q1.values[np.floor(x).astype(int)]
        b = q2.values[np.floor(y).astype(int)] * np.sqrt(slope)
        total += np.sum((a - b) ** 2) * h / SUB
    return total


def all_paths(n, slopes):
    def walk(i, j):
        if (i, j) == (n, n):
            yield [(n, n)]
            return
        for a, b in slopes:
            if i + a <= n and j + b <= n:
                for rest in walk(i + a, j + b):
                    yield [(i, j)] + rest

    return list(walk(0, 0))


def random_signal(rng, n):
    return AlgebraSignal(np.linspace(0, 1, n + 1), rng.normal(size=(n, 3)))


def test_identical_signals_identity_warp(rng):
    q = random_signal(rng, 12)
    w = dp_reparametrize(q, q)
    assert w.is_identity()
    assert w.cost == pytest.approx(0, abs=1e-14)


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_dp_matches_brute_force(rng, n):
    slopes = [(1, 1), (1, 2), (2, 1)]
    paths = all_paths(n, slopes)
    for _ in range(3):
        q1, q2 = random_signal(rng, n), random_signal(rng, n)
        best = min(path_cost(q1, q2, p) for p in paths)
        w = dp_reparametrize(q1, q2, slopes)
        assert w.cost == pytest.approx(best, rel=1e-12, abs=1e-14)
        assert path_cost(q1, q2, list(zip(w.src, w.dst))) == pytest.approx(w.cost, rel=1e-12)


def test_dp_default_slopes_brute_force(rng):
    n = 7
    paths = all_paths(n, DEFAULT_SLOPES)
    q1, q2 = random_signal(rng, n), random_signal(rng, n)
    best = min(path_cost(q1, q2, p) for p in paths)
    assert dp_reparametrize(q1, q2).cost == pytest.approx(best, rel=1e-12)


def test_dp_recovers_known_warp(rng):
    """Build q1 from q2 along the path (2,1)^4 (1,2)^4 (1,1)^4 so that the path has zero cost."""
    steps = [(2, 1)] * 4 + [(1, 2)] * 4 + [(1, 1)] * 4
    n = 16
    v2 = rng.normal(size=(n, 3))
    v1 = np.zeros((n, 3))
    i = j = 0
    for a, b in steps:
        if (a, b) == (1, 2):
            v2[j + 1] = v2[j]
        v1[i:i + a] = np.sqrt(b / a) * v2[j]
        i, j = i + a, j + b
    t = np.linspace(0, 1, n + 1)
    q1, q2 = AlgebraSignal(t, v1), AlgebraSignal(t, v2)
    w = dp_reparametrize(q1, q2, DEFAULT_SLOPES)
    assert w.steps == steps
    assert w.cost == pytest.approx(0, abs=1e-12)
    assert l2_distance(q1, warp_signal(q2, w)) < 0.1 * l2_distance(q1, q2)


def test_dp_errors(rng):
    q = random_signal(rng, 4)
    with pytest.raises(EmptySlopeSet):
        dp_reparametrize(q, q, [])
    with pytest.raises(GridMismatch):
        dp_reparametrize(q, random_signal(rng, 5))
    nonuniform = AlgebraSignal([0, 0.1, 0.5, 1.0], rng.normal(size=(3, 3)))
    with pytest.raises(GridMismatch):
        dp_reparametrize(nonuniform, nonuniform)


def test_tie_break_prefers_diagonal():
    t = np.linspace(0, 1, 5)
    q = AlgebraSignal(t, np.tile([1.0, 0, 0], (4, 1)))
    assert dp_reparametrize(q, q).is_identity()


def test_refined_lattice_keeps_endpoints(rng):
    q1, q2 = random_signal(rng, 10), random_signal(rng, 10)
    w = dp_reparametrize(q1, q2, refine=3)
    assert w(0.0) == 0.0 and w(1.0) == 1.0
    assert np.all(np.diff(w(np.linspace(0, 1, 101))) >= 0)
    assert w.cost <= dp_reparametrize(q1, q2).cost + 1e-12


def test_warp_validation():
    t = np.linspace(0, 1, 4)
    with pytest.raises(ValueError):
        Warp(t, [0, 2, 1, 3], [0, 1, 2, 3])
    with pytest.raises(ValueError):
        Warp(t, [0, 3], [0, 2])


def test_apply_warp_identity_and_endpoints(rng):
    c = random_sphere_curve(rng, 9)
    assert np.array_equal(apply_warp(c, Warp.identity(c.times)).samples, c.samples)
    w = Warp(c.times, [0, 2, 5, 8], [0, 4, 6, 8])
    warped = apply_warp(c, w)
    assert np.array_equal(warped.samples[[0, -1]], c.samples[[0, -1]])
    assert np.array_equal(warped.times, c.times)


def test_warp_then_transform_vs_rescaled_signal():
    """On fine grids both registration routes converge to the same signal."""
    errs = []
    for n in (33, 129):
        t = np.linspace(0, 1, n)
        c = smooth_so3_curve(t)
        # slopes 1/2 then 2 on the halves, realised on lattice nodes
        half = (n - 1) // 2
        src = [0, half, n - 1]
        dst = [0, half // 2, n - 1]
        w = Warp(t, src, dst)
        route_a = srvt_group(apply_warp(c, w))
        route_b = warp_signal(srvt_group(c), w)
        errs.append(l2_distance(route_a, route_b))
    assert errs[1] < 0.5 * errs[0]
    assert errs[1] < 0.05


def test_registration_non_worsening(rng):
    c1 = random_so3_curve(rng, 20, step=0.3)
    c2 = random_so3_curve(rng, 20, step=0.3)
    q1, q2 = srvt_group(c1), srvt_group(c2)
    w = dp_reparametrize(q1, q2)
    assert w.cost <= l2_distance(q1, q2) ** 2 + 1e-12


def test_smooth_warp_recovered_on_64_nodes():
    t = np.linspace(0, 1, 64)
    c1 = smooth_so3_curve(t)
    c2 = make_curve("SO3", smooth_so3_curve(smooth_warp(t, 2.0)).samples, t)
    q1, q2 = srvt_group(c1), srvt_group(c2)
    before = l2_distance(q1, q2)
    w = dp_reparametrize(q1, q2, coprime_slopes(10), refine=4)
    after = l2_distance(q1, srvt_group(apply_warp(c2, w)))
    assert after < 0.05 * before


def test_coprime_slopes():
    s = coprime_slopes(3)
    assert set(s) == {(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)}
    assert set(DEFAULT_SLOPES) == set(s)
