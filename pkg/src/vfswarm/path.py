"""Reference paths: the line x = 0 and the sinusoid x = A sin(k y).

Both paths are graphs over the y axis, so every quantity here is a function
of the query ordinate. All functions broadcast over numpy arrays of x and y.
"""
from dataclasses import dataclass

import numpy as np
from scipy.special import ellipeinc

STRAIGHT = "straight"
SINUSOID = "sinusoid"

_GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class PathSpec:
    variant: str = STRAIGHT
    amplitude: float = 0.0
    frequency: float = 0.0

    def __post_init__(self):
        if self.variant == STRAIGHT:
            if self.amplitude != 0.0 or self.frequency != 0.0:
                raise ValueError("straight path takes no amplitude/frequency")
        elif self.variant == SINUSOID:
            if not (self.amplitude > 0.0 and self.frequency > 0.0):
                raise ValueError("sinusoid needs amplitude > 0 and frequency > 0")
        else:
            raise ValueError(f"unknown path variant {self.variant!r}")

    @classmethod
    def straight(cls):
        return cls(STRAIGHT)

    @classmethod
    def sinusoid(cls, amplitude, frequency):
        return cls(SINUSOID, float(amplitude), float(frequency))

    @property
    def is_straight(self):
        return self.variant == STRAIGHT

    def point_at(self, y):
        """Path point (x, y) at ordinate ``y``."""
        y = np.asarray(y, dtype=float)
        if self.is_straight:
            return np.zeros_like(y), y
        return self.amplitude * np.sin(self.frequency * y), y


def _scalar(a):
    return float(a) if np.ndim(a) == 0 else a


def cross_track_error(path, x, y):
    """Signed horizontal offset from the path; negative means left of it."""
    x = np.asarray(x, dtype=float)
    if path.is_straight:
        return _scalar(x + 0.0 * np.asarray(y, dtype=float))
    return _scalar(x - path.amplitude * np.sin(path.frequency * np.asarray(y, dtype=float)))


def tangent_direction(path, y):
    """Heading of the path tangent at ordinate ``y``, in (0, pi).

    Uses atan2(1, A k cos(k y)) so the angle stays continuous where the
    slope dx/dy vanishes.
    """
    y = np.asarray(y, dtype=float)
    if path.is_straight:
        return _scalar(np.full_like(y, np.pi / 2.0))
    slope = path.amplitude * path.frequency * np.cos(path.frequency * y)
    return _scalar(np.arctan2(1.0, slope))


def _sinusoid_arc_length(y, amplitude, frequency):
    # int_0^y sqrt(1 + a^2 cos^2(k t)) dt = sqrt(1 + a^2)/k * E(k y | a^2/(1 + a^2)), a = A k
    a2 = (amplitude * frequency) ** 2
    return np.sqrt(1.0 + a2) / frequency * ellipeinc(frequency * y, a2 / (1.0 + a2))


def arc_length(path, y):
    """Arc-length parameter s(y) measured from the ordinate y = 0."""
    y = np.asarray(y, dtype=float)
    if path.is_straight:
        return _scalar(y + 0.0)
    return _scalar(_sinusoid_arc_length(y, path.amplitude, path.frequency))


def arc_length_integrand(path, y):
    """ds/dy, the speed of the arc-length parameter along the ordinate."""
    y = np.asarray(y, dtype=float)
    if path.is_straight:
        return _scalar(np.ones_like(y))
    slope = path.amplitude * path.frequency * np.cos(path.frequency * y)
    return _scalar(np.sqrt(1.0 + slope * slope))


def distance_to_path(path, x, y, n_coarse=1024, tol=1e-8):
    """Minimum Euclidean distance from (x, y) to the path.

    For the sinusoid the foot point is searched within one spatial period
    either side of ``y``: a coarse grid of ``n_coarse`` samples followed by
    golden-section refinement of the bracketing cell down to ``tol`` metres.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if path.is_straight:
        return _scalar(np.abs(x + 0.0 * y))

    A, k = path.amplitude, path.frequency
    xb, yb = np.broadcast_arrays(x, y)
    xs = xb.reshape(-1, 1)
    ys = yb.reshape(-1, 1)

    def sqdist(yp):
        return (xs - A * np.sin(k * yp)) ** 2 + (ys - yp) ** 2

    period = 2.0 * np.pi / k
    offsets = np.linspace(-period, period, n_coarse)
    grid = ys + offsets[None, :]
    j = np.argmin(sqdist(grid), axis=1)
    rows = np.arange(len(j))
    lo = grid[rows, np.maximum(j - 1, 0)][:, None]
    hi = grid[rows, np.minimum(j + 1, n_coarse - 1)][:, None]

    while np.max(hi - lo) > tol:
        c = hi - _GOLDEN * (hi - lo)
        d = lo + _GOLDEN * (hi - lo)
        left = sqdist(c) < sqdist(d)
        hi = np.where(left, d, hi)
        lo = np.where(left, lo, c)
    best = np.sqrt(np.minimum(sqdist(0.5 * (lo + hi)), sqdist(grid[rows, j][:, None])))
    eps = np.abs(xs - A * np.sin(k * ys))
    out = np.minimum(best, eps).reshape(xb.shape)
    return _scalar(out)
