"""Two-vehicle engagements under pure rotational repulsion.

This is the closed loop the collision-avoidance bound is argued for: two
vehicles at constant speed, heading rates given only by the repulsion term.
Many engagements are integrated at once (one row per engagement) with
classical RK4.
"""
from dataclasses import dataclass

import numpy as np

from .avoidance import COINCIDENCE_GUARD, PairGeometry, sufficient_gain

DEGENERACY_TOL = 1e-6


def _pair_rates(state, v_i, v_j, k_r, r_s):
    xi, yi, pi_, xj, yj, pj = state.T
    dx, dy = xj - xi, yj - yi
    d = np.hypot(dx, dy)
    beta = np.arctan2(dy, dx)
    active = d <= r_s
    big_omega = np.where(active, k_r * (1.0 / np.maximum(d, COINCIDENCE_GUARD) - 1.0 / r_s), 0.0)
    w_i = -big_omega * np.sin(beta - pi_)
    # bearing from j to i is beta + pi
    w_j = -big_omega * np.sin(beta + np.pi - pj)
    return np.stack(
        [v_i * np.cos(pi_), v_i * np.sin(pi_), w_i, v_j * np.cos(pj), v_j * np.sin(pj), w_j],
        axis=1,
    )


def rk4_pair_step(state, dt, v_i, v_j, k_r, r_s):
    f = lambda s: _pair_rates(s, v_i, v_j, k_r, r_s)  # noqa: E731
    k1 = f(state)
    k2 = f(state + 0.5 * dt * k1)
    k3 = f(state + 0.5 * dt * k2)
    k4 = f(state + dt * k3)
    return state + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def separation(state):
    return np.hypot(state[:, 3] - state[:, 0], state[:, 4] - state[:, 1])


def measured_range_rate(state, v_i, v_j):
    """d' computed from positions and velocity vectors, not from lead angles."""
    rx, ry = state[:, 3] - state[:, 0], state[:, 4] - state[:, 1]
    vx = v_j * np.cos(state[:, 5]) - v_i * np.cos(state[:, 2])
    vy = v_j * np.sin(state[:, 5]) - v_i * np.sin(state[:, 2])
    return (rx * vx + ry * vy) / np.hypot(rx, ry)


def geometry_of(state):
    """Lead-angle geometry of each engagement row."""
    dx, dy = state[:, 3] - state[:, 0], state[:, 4] - state[:, 1]
    beta = np.arctan2(dy, dx)
    return PairGeometry(np.hypot(dx, dy), beta, beta - state[:, 2], beta - state[:, 5])


def initial_state(d0, beta, psi_i, psi_j):
    """Rows ``[x_i, y_i, psi_i, x_j, y_j, psi_j]`` with i at the origin."""
    beta = np.atleast_1d(np.asarray(beta, dtype=float))
    psi_i = np.broadcast_to(np.asarray(psi_i, dtype=float), beta.shape)
    psi_j = np.broadcast_to(np.asarray(psi_j, dtype=float), beta.shape)
    d0 = np.broadcast_to(np.asarray(d0, dtype=float), beta.shape)
    z = np.zeros_like(beta)
    return np.stack([z, z, psi_i, d0 * np.cos(beta), d0 * np.sin(beta), psi_j], axis=1)


def sample_closing_geometries(n, r_s, rng):
    """``n`` random engagements starting at d = r_s with the pair closing.

    Bearing and both headings are uniform on the circle; draws with a
    non-negative range rate are rejected.
    """
    rows = []
    have = 0
    while have < n:
        m = max(2 * (n - have), 16)
        beta = rng.uniform(-np.pi, np.pi, m)
        psi_i = rng.uniform(-np.pi, np.pi, m)
        psi_j = rng.uniform(-np.pi, np.pi, m)
        closing = np.cos(beta - psi_j) - np.cos(beta - psi_i) < 0.0
        batch = initial_state(r_s, beta[closing], psi_i[closing], psi_j[closing])
        rows.append(batch)
        have += len(batch)
    return np.concatenate(rows)[:n]


def simulate_min_separation(state, k_r, r_s, v_i, v_j=None, dt=1e-3, t_max=10.0):
    """Integrate every engagement until the pair leaves the activation disc.

    Returns the minimum separation reached by each row. Rows stop once they
    are separating outside ``r_s`` or have closed to the coincidence guard.
    """
    v_j = v_i if v_j is None else v_j
    state = np.array(state, dtype=float, copy=True)
    d = separation(state)
    d_min = d.copy()
    live = np.ones(len(state), dtype=bool)
    for _ in range(int(np.ceil(t_max / dt))):
        if not live.any():
            break
        state[live] = rk4_pair_step(state[live], dt, v_i, v_j, k_r, r_s)
        d = separation(state)
        d_min = np.where(live, np.minimum(d_min, d), d_min)
        leaving = (d > r_s) & (measured_range_rate(state, v_i, v_j) > 0.0)
        live &= ~(leaving | (d < COINCIDENCE_GUARD))
    return d_min


@dataclass
class CertificationReport:
    v: float
    r_s: float
    d_safe: float
    k_r: float
    bound: float
    n_samples: int
    seed: int
    n_degenerate: int
    n_violations: int
    min_separation: float
    p01_separation: float
    median_separation: float
    worst_geometry: tuple
    skew_kappa: float | None = None
    skew_min_separation: float | None = None
    skew_violations: int | None = None

    @property
    def gain_ok(self):
        return self.k_r > self.bound

    @property
    def certified(self):
        return self.gain_ok and self.min_separation > self.d_safe

    def lines(self):
        out = [
            f"sufficient gain 2 v R_s/(R_s - d_safe) = {self.bound:.10g}",
            f"k_r = {self.k_r:.10g} ({'above' if self.gain_ok else 'NOT above'} bound)",
            f"samples = {self.n_samples} (seed {self.seed}), near-degenerate = {self.n_degenerate}",
            f"min separation: worst = {self.min_separation:.6f} m, "
            f"1st pct = {self.p01_separation:.6f} m, median = {self.median_separation:.6f} m",
            f"violations (min sep <= d_safe = {self.d_safe}) = {self.n_violations}",
            "worst geometry (sin phi_i, sin phi_j) = "
            f"({self.worst_geometry[0]:.6f}, {self.worst_geometry[1]:.6f})",
        ]
        if self.skew_kappa is not None:
            out.append(
                f"speed skew v +/- {self.skew_kappa}: worst = {self.skew_min_separation:.6f} m, "
                f"violations = {self.skew_violations}"
            )
        out.append("CERTIFIED" if self.certified else "NOT CERTIFIED")
        return out


def certify(v, r_s, d_safe, k_r, n_samples, seed=0, kappa=None, dt=1e-3):
    """Check the closed-form gain bound and probe it with random engagements.

    Geometries within ``DEGENERACY_TOL`` of both lead angles lying on the
    line of sight are counted separately and excluded from the worst case.
    """
    bound = sufficient_gain(v, r_s, d_safe)
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    start = sample_closing_geometries(n_samples, r_s, rng)
    g = geometry_of(start)
    si, sj = np.sin(g.phi_i), np.sin(g.phi_j)
    degenerate = (np.abs(si) < DEGENERACY_TOL) & (np.abs(sj) < DEGENERACY_TOL)
    d_min = simulate_min_separation(start, k_r, r_s, v, dt=dt)
    ok = d_min[~degenerate] if (~degenerate).any() else d_min
    w = int(np.flatnonzero(~degenerate)[np.argmin(ok)]) if (~degenerate).any() else 0
    report = CertificationReport(
        v=v,
        r_s=r_s,
        d_safe=d_safe,
        k_r=k_r,
        bound=bound,
        n_samples=n_samples,
        seed=seed,
        n_degenerate=int(degenerate.sum()),
        n_violations=int(np.sum(ok <= d_safe)),
        min_separation=float(ok.min()),
        p01_separation=float(np.quantile(ok, 0.01)),
        median_separation=float(np.median(ok)),
        worst_geometry=(float(si[w]), float(sj[w])),
    )
    if kappa is not None:
        skew = simulate_min_separation(start, k_r, r_s, v + kappa, v - kappa, dt=dt)
        skew = skew[~degenerate] if (~degenerate).any() else skew
        report.skew_kappa = kappa
        report.skew_min_separation = float(skew.min())
        report.skew_violations = int(np.sum(skew <= d_safe))
    return report
