"""Arcsine vector-field guidance and the proportional heading loop."""
from dataclasses import dataclass

import numpy as np

from .angles import wrap_angle
from .path import cross_track_error, tangent_direction


@dataclass(frozen=True)
class GuidanceParams:
    k_g: float = 0.05
    k_psi: float = 2.3
    max_omega: float | None = None

    def __post_init__(self):
        if not self.k_g > 0:
            raise ValueError("k_g must be > 0")
        if not self.k_psi > 0:
            raise ValueError("k_psi must be > 0")
        if self.max_omega is not None and not self.max_omega > 0:
            raise ValueError("max_omega must be > 0 when set")


def offset_angle(k_g, eps):
    """Heading offset from the path tangent as a function of cross-track error.

    Zero on the path, even in ``eps``, rising monotonically towards pi/2.
    """
    eps = np.asarray(eps, dtype=float)
    out = np.pi / 2.0 - np.arcsin(1.0 / (1.0 + k_g * eps * eps))
    return float(out) if out.ndim == 0 else out


def desired_heading(path, k_g, x, y):
    eps = np.asarray(cross_track_error(path, x, y))
    chi_p = np.asarray(tangent_direction(path, y))
    chi_o = np.asarray(offset_angle(k_g, eps))
    out = np.where(eps <= 0.0, chi_p - chi_o, chi_p + chi_o)
    return float(out) if out.ndim == 0 else out


def heading_rate_command(k_psi, psi_des, psi, max_omega=None):
    """k_psi times the heading error wrapped into (-pi, pi].

    ``max_omega`` optionally clamps the command; the default is unbounded.
    """
    omega = k_psi * np.asarray(wrap_angle(np.asarray(psi_des) - np.asarray(psi)))
    if max_omega is not None:
        omega = np.clip(omega, -max_omega, max_omega)
    return float(omega) if omega.ndim == 0 else omega
