"""Dynamic-programming registration of SRVT signals.

A warp is a monotone lattice path from node (0, 0) to (N, N) built from
admissible steps ``(di, dj)``.  Along a step the second signal is
reparametrized linearly with slope ``dj/di`` and scaled by
``sqrt(dj/di)``, which is how an SRVT transforms under reparametrization.
The step cost is the exact squared L^2 discrepancy of the two
piecewise-constant signals over the step.
"""

from dataclasses import dataclass
from math import gcd

import numpy as np

from lieshape.curves import eval_curve, make_curve
from lieshape.errors import EmptySlopeSet, GridMismatch, OutOfRange, ValidationError
from lieshape.srvt import AlgebraSignal, same_grid

DEFAULT_SLOPES = ((1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2))


def coprime_slopes(max_step):
    """All steps ``(a, b)`` with ``a, b <= max_step`` and ``gcd(a, b) == 1``."""
    return tuple((a, b) for a in range(1, max_step + 1) for b in range(1, max_step + 1)
                 if gcd(a, b) == 1)


@dataclass(frozen=True, eq=False)
class Warp:
    """Piecewise-linear monotone map of a grid onto itself.

    The path visits lattice nodes ``(src[k], dst[k])``; ``warp(t)`` maps a
    time of the reference curve to the matching time of the warped one.
    """

    times: np.ndarray
    src: np.ndarray
    dst: np.ndarray
    cost: float = float("nan")

    def __post_init__(self):
        src = np.asarray(self.src, dtype=int)
        dst = np.asarray(self.dst, dtype=int)
        n = len(self.times) - 1
        if len(src) != len(dst) or len(src) < 2:
            raise ValidationError("warp needs at least two path nodes")
        if src[0] != 0 or dst[0] != 0 or src[-1] != n or dst[-1] != n:
            raise ValidationError("warp must fix both endpoints")
        if np.any(np.diff(src) <= 0) or np.any(np.diff(dst) <= 0):
            raise ValidationError("warp path must have positive slopes")
        object.__setattr__(self, "src", src)
        object.__setattr__(self, "dst", dst)
        object.__setattr__(self, "times", np.asarray(self.times, dtype=float))

    @classmethod
    def identity(cls, times):
        n = len(times) - 1
        return cls(times, np.arange(n + 1), np.arange(n + 1), 0.0)

    @property
    def steps(self):
        return list(zip(np.diff(self.src).tolist(), np.diff(self.dst).tolist()))

    def __call__(self, t):
        return np.interp(t, self.times[self.src], self.times[self.dst])

    def slope(self, t):
        """Right-sided derivative of the warp at ``t``."""
        k = int(np.searchsorted(self.times[self.src], t, side="right")) - 1
        k = min(max(k, 0), len(self.src) - 2)
        return (self.dst[k + 1] - self.dst[k]) / (self.src[k + 1] - self.src[k])

    def is_identity(self):
        return len(self.src) == len(self.times) and np.array_equal(self.src, self.dst)


def _step_pieces(a, b):
    """Split a step into pieces where both signals are constant.

    Returns ``(di, dj, length)`` triples in units of the grid step.
    """
    cuts = sorted(set([float(k) for k in range(a + 1)] + [k * a / b for k in range(b + 1)]))
    pieces = []
    for u0, u1 in zip(cuts[:-1], cuts[1:]):
        if u1 - u0 <= 1e-12:
            continue
        mid = 0.5 * (u0 + u1)
        pieces.append((int(np.floor(mid)), int(np.floor(mid * b / a)), u1 - u0))
    return pieces


def step_costs(q1, q2, a, b):
    """Cost of step ``(a, b)`` from every lattice node, shape ``(N-a+1, N-b+1)``."""
    v1, v2 = q1.values, q2.values
    n = len(v1)
    h = q1.steps[0]
    r = np.sqrt(b / a)
    n1 = np.sum(v1 * v1, axis=1)
    n2 = np.sum(v2 * v2, axis=1)
    gram = v1 @ v2.T
    ni, nj = n - a + 1, n - b + 1
    cost = np.zeros((ni, nj))
    for di, dj, length in _step_pieces(a, b):
        term = (n1[di:di + ni, None] + r * r * n2[None, dj:dj + nj]
                - 2.0 * r * gram[di:di + ni, dj:dj + nj])
        cost += length * term
    return np.maximum(cost, 0.0) * h


def _check_uniform(times):
    h = np.diff(times)
    if np.max(np.abs(h - h[0])) > 1e-9 * abs(h[0]):
        raise GridMismatch("registration needs a uniform grid; resample first")


def _ordered_slopes(slopes):
    slopes = [tuple(int(x) for x in s) for s in slopes]
    if not slopes:
        raise EmptySlopeSet("no admissible steps given")
    if any(a <= 0 or b <= 0 for a, b in slopes):
        raise ValidationError("steps must be positive")
    # ties go to the step closest to the diagonal, then the shorter one
    return sorted(set(slopes), key=lambda s: (abs(s[0] - s[1]), s[0], s[1]))


def refine_signal(q, k):
    """Split every segment of ``q`` into ``k`` equal pieces with the same value."""
    if k == 1:
        return q
    h = q.steps
    fine = np.concatenate([q.times[i] + h[i] * np.arange(k) / k for i in range(len(q))])
    fine = np.append(fine, q.times[-1])
    return AlgebraSignal(fine, np.repeat(q.values, k, axis=0))


def dp_reparametrize(q1, q2, slopes=DEFAULT_SLOPES, refine=1):
    """Optimal warp of ``q2`` onto ``q1`` over all lattice paths with the given steps.

    With ``refine=k`` the lattice has ``k`` nodes per grid step, which
    lets the path approximate slopes outside the step set on average.

    Raises:
        GridMismatch: the signals do not share a uniform grid.
        EmptySlopeSet: ``slopes`` is empty.
        ValidationError: no admissible path reaches (N, N).
    """
    if not same_grid(q1.times, q2.times):
        raise GridMismatch("signals live on different grids; resample first")
    _check_uniform(q1.times)
    steps = _ordered_slopes(slopes)
    q1, q2 = refine_signal(q1, refine), refine_signal(q2, refine)
    n = len(q1)
    order = [s for s in steps if s[0] <= n and s[1] <= n]
    tables = [step_costs(q1, q2, a, b) for a, b in order]

    # every predecessor of row i lies in an earlier row, so rows vectorize
    D = np.full((n + 1, n + 1), np.inf)
    back = np.full((n + 1, n + 1), -1, dtype=int)
    D[0, 0] = 0.0
    for i in range(1, n + 1):
        best = np.full(n + 1, np.inf)
        arg = np.full(n + 1, -1, dtype=int)
        for k, (a, b) in enumerate(order):
            if i < a:
                continue
            cand = np.full(n + 1, np.inf)
            cand[b:] = D[i - a, :n + 1 - b] + tables[k][i - a, :n + 1 - b]
            better = cand < best
            best[better] = cand[better]
            arg[better] = k
        D[i], back[i] = best, arg
    if not np.isfinite(D[n, n]):
        raise ValidationError("no admissible path with the given steps")

    src, dst = [n], [n]
    i = j = n
    while i or j:
        a, b = order[back[i, j]]
        i, j = i - a, j - b
        src.append(i)
        dst.append(j)
    return Warp(q1.times, src[::-1], dst[::-1], float(D[n, n]))


def apply_warp(c, w):
    """Resample ``c`` at the warped times; the grid of ``c`` is kept."""
    if abs(c.times[0] - w.times[0]) > 1e-12 or abs(c.times[-1] - w.times[-1]) > 1e-12:
        raise OutOfRange("warp span does not match the curve span")
    targets = np.clip(w(c.times), c.times[0], c.times[-1])
    samples = [c.samples[0]] + [eval_curve(c, t) for t in targets[1:-1]] + [c.samples[-1]]
    return make_curve(c.space, np.array(samples), c.times, name=c.name)


def warp_signal(q, w):
    """Left-endpoint sampling of ``sqrt(warp') * q(warp(t))`` on the grid of ``q``.

    The rescaling route of registration; :func:`apply_warp` followed by a
    fresh transform is the other.
    """
    t = q.times[:-1]
    phi = w(t)
    idx = np.clip(np.searchsorted(q.times, phi, side="right") - 1, 0, len(q) - 1)
    scale = np.sqrt([w.slope(s) for s in t])
    return AlgebraSignal(q.times, q.values[idx] * scale[:, None])
