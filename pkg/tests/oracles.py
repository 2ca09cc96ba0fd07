"""Independent reference computations used to check the package."""
import math

import numpy as np


def trapezoid_arc_length(amplitude, frequency, y, panels=10**7, chunk=10**6):
    """Brute-force composite trapezoid of sqrt(1 + (A k cos k t)^2) over [0, y]."""
    h = y / panels
    total = 0.0
    for start in range(0, panels, chunk):
        idx = np.arange(start, min(start + chunk, panels) + 1)
        f = np.sqrt(1.0 + (amplitude * frequency * np.cos(frequency * idx * h)) ** 2)
        f[0] *= 0.5
        f[-1] *= 0.5
        total += f.sum() * h
    return total


def pair_rk4(state, h, v_i, v_j, k_r, r_s):
    """Plain-Python RK4 of two unicycles steered only by repulsion."""

    def rates(s):
        xi, yi, pi, xj, yj, pj = s
        dx, dy = xj - xi, yj - yi
        d = math.hypot(dx, dy)
        b = math.atan2(dy, dx)
        om = k_r * (1 / d - 1 / r_s) if d <= r_s else 0.0
        return [
            v_i * math.cos(pi), v_i * math.sin(pi), -om * math.sin(b - pi),
            v_j * math.cos(pj), v_j * math.sin(pj), -om * math.sin(b + math.pi - pj),
        ]

    k1 = rates(state)
    k2 = rates([a + h / 2 * b for a, b in zip(state, k1)])
    k3 = rates([a + h / 2 * b for a, b in zip(state, k2)])
    k4 = rates([a + h * b for a, b in zip(state, k3)])
    return [a + h / 6 * (b + 2 * c + 2 * d + e) for a, b, c, d, e in zip(state, k1, k2, k3, k4)]


def velocity_range_rate(s, v_i, v_j):
    rx, ry = s[3] - s[0], s[4] - s[1]
    vx = v_j * math.cos(s[5]) - v_i * math.cos(s[2])
    vy = v_j * math.sin(s[5]) - v_i * math.sin(s[2])
    return (rx * vx + ry * vy) / math.hypot(rx, ry)


def fd_range_accel(state, v, k_r, r_s, h=1e-5):
    """Central difference of the velocity-derived range rate along the closed loop."""
    ahead = pair_rk4(state, h, v, v, k_r, r_s)
    behind = pair_rk4(state, -h, v, v, k_r, r_s)
    return (velocity_range_rate(ahead, v, v) - velocity_range_rate(behind, v, v)) / (2 * h)
