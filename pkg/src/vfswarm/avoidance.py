"""Rotational repulsion between vehicles and the two-vehicle range analysis.

The repulsion term turns vehicle i away from every neighbour j inside the
activation radius ``r_s``::

    omega_rep_i = -k_r * sum_j (1/d_ij - 1/r_s) * sin(beta_ij - psi_i)

The analysis helpers (range rate, range acceleration, critical separation
and gain bounds) assume two vehicles at a common speed ``v`` whose heading
rates are dominated by this term.
"""
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .angles import wrap_angle
from .errors import CoincidentPositions, DegenerateGeometry, DomainError, InvalidParams

COINCIDENCE_GUARD = 1e-9


@dataclass(frozen=True)
class AvoidanceParams:
    k_r: float = 11.0
    r_s: float = 1.5
    d_safe: float = 0.4

    def __post_init__(self):
        # k_r = 0 is allowed so that gain sweeps and contrast runs can switch repulsion off
        if not self.k_r >= 0:
            raise ValueError("k_r must be >= 0")
        if not self.d_safe > 0:
            raise ValueError("d_safe must be > 0")
        if not self.r_s > self.d_safe:
            raise ValueError("r_s must be greater than d_safe")


class PairGeometry(NamedTuple):
    d: float
    beta: float
    phi_i: float
    phi_j: float


def pair_geometry(state_i, state_j):
    """Range, bearing from i to j, and both lead angles (bearing minus heading)."""
    dx = state_j.x - state_i.x
    dy = state_j.y - state_i.y
    d = float(np.hypot(dx, dy))
    if d < COINCIDENCE_GUARD:
        raise CoincidentPositions(
            f"UAV {state_i.id} and UAV {state_j.id} are {d:.3e} m apart"
        )
    beta = float(np.arctan2(dy, dx))
    return PairGeometry(d, beta, wrap_angle(beta - state_i.psi), wrap_angle(beta - state_j.psi))


def repulsion_command(params, own, neighbors):
    omega = 0.0
    for other in neighbors:
        if other.id == own.id:
            continue
        g = pair_geometry(own, other)
        if g.d <= params.r_s:
            omega -= params.k_r * (1.0 / g.d - 1.0 / params.r_s) * np.sin(g.beta - own.psi)
    return float(omega)


def repulsion_commands(params, x, y, psi, ids=None):
    """Vectorised repulsion for a whole fleet.

    Returns ``(omega_rep, dist)`` where ``dist`` is the pairwise distance
    matrix with ``inf`` on the diagonal.
    """
    dx = x[None, :] - x[:, None]
    dy = y[None, :] - y[:, None]
    dist = np.hypot(dx, dy)
    np.fill_diagonal(dist, np.inf)
    if dist.min() < COINCIDENCE_GUARD:
        i, j = np.unravel_index(np.argmin(dist), dist.shape)
        if ids is not None:
            i, j = ids[i], ids[j]
        raise CoincidentPositions(f"UAV {i} and UAV {j} are {dist.min():.3e} m apart")
    active = dist <= params.r_s
    if not active.any():
        return np.zeros_like(x), dist
    beta = np.arctan2(dy, dx)
    weight = np.where(active, 1.0 / np.where(active, dist, 1.0) - 1.0 / params.r_s, 0.0)
    omega = -params.k_r * np.sum(weight * np.sin(beta - psi[:, None]), axis=1)
    return omega, dist


def total_heading_rate(omega_path, omega_rep):
    return omega_path + omega_rep


def range_rate(v, g):
    return v * (np.cos(g.phi_j) - np.cos(g.phi_i))


def bearing_rate(v, g):
    return v / g.d * (np.sin(g.phi_j) - np.sin(g.phi_i))


def range_accel(v, k_r, r_s, g):
    """Closed-form range acceleration used by the critical-separation argument.

    Written as a non-positive closing-geometry term plus a non-negative
    repulsion term. Its zero defines ``critical_separation``. The geometry
    term carries the wrong sign relative to the true kinematics; see
    ``kinematic_range_accel`` for the value a simulation actually shows.
    """
    if not 0.0 < g.d <= r_s:
        raise DomainError(f"range_accel needs 0 < d <= r_s, got d={g.d}")
    si, sj = np.sin(g.phi_i), np.sin(g.phi_j)
    omega = k_r * (1.0 / g.d - 1.0 / r_s)
    return -(v * v / g.d) * (sj - si) ** 2 + v * omega * (si * si + sj * sj)


def kinematic_range_accel(v, k_r, r_s, g):
    """Exact d'' of two equal-speed vehicles steered only by repulsion.

    The cross-line-of-sight relative velocity always bends the range upward,
    so both terms are non-negative while repulsion is active.
    """
    if not 0.0 < g.d <= r_s:
        raise DomainError(f"kinematic_range_accel needs 0 < d <= r_s, got d={g.d}")
    si, sj = np.sin(g.phi_i), np.sin(g.phi_j)
    omega = k_r * (1.0 / g.d - 1.0 / r_s)
    return (v * v / g.d) * (sj - si) ** 2 + v * omega * (si * si + sj * sj)


_DEGENERATE_SIN2 = 1e-24


def _trig_ratio(g):
    si, sj = np.sin(g.phi_i), np.sin(g.phi_j)
    den = si * si + sj * sj
    # sin(pi) is ~1e-16 in floating point, so exact zero is too strict
    if den < _DEGENERATE_SIN2:
        raise DegenerateGeometry(
            "both lead angles lie on the line of sight; repulsion vanishes identically"
        )
    return (sj - si) ** 2 / den


def critical_separation(v, k_r, r_s, g):
    """Separation below which range acceleration is positive. May be negative."""
    ratio = _trig_ratio(g)
    if k_r <= 0:
        raise InvalidParams("critical separation needs k_r > 0")
    return r_s * (1.0 - v * ratio / k_r)


def sufficient_gain(v, r_s, d_safe):
    """Gain above which the critical separation exceeds ``d_safe`` for every geometry."""
    if not r_s > d_safe:
        raise InvalidParams(f"need r_s > d_safe, got r_s={r_s}, d_safe={d_safe}")
    return 2.0 * v * r_s / (r_s - d_safe)


def geometry_gain_bound(v, r_s, d_safe, g):
    if not r_s > d_safe:
        raise InvalidParams(f"need r_s > d_safe, got r_s={r_s}, d_safe={d_safe}")
    return v * r_s / (r_s - d_safe) * _trig_ratio(g)
