"""Fixed-step multi-vehicle simulation of the guidance/avoidance/spacing stack.

Each vehicle is a planar unicycle ``x' = v cos psi, y' = v sin psi,
psi' = omega``. Controls for all vehicles are computed from one frozen
snapshot of the fleet (synchronous update), so results never depend on the
order vehicles are visited in.
"""
import dataclasses
import time
from dataclasses import dataclass, field

import numpy as np

from .angles import wrap_angle
from .avoidance import AvoidanceParams, repulsion_commands
from .errors import (
    CoincidentPositions,
    CollisionDetected,
    InsufficientAgents,
    SamplingExhausted,
    VfSwarmError,
)
from .guidance import GuidanceParams, heading_rate_command, offset_angle
from .path import PathSpec, arc_length, cross_track_error, distance_to_path, tangent_direction
from .spacing import SpacingParams, chain_deltas, establish_order, lyapunov_value, predecessor_index
from .state import UavState

UNIFORM_RANDOM = "uniform_random"
PATH_TANGENT = "path_tangent"
INTEGRATORS = ("rk4", "rk4_zoh")
MAX_REJECTED_BATCHES = 10_000


@dataclass(frozen=True)
class InitRegion:
    x_min: float = -20.0
    x_max: float = 20.0
    y_min: float = -20.0
    y_max: float = 20.0

    def __post_init__(self):
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError("init region must have x_max > x_min and y_max > y_min")


@dataclass(frozen=True)
class Scenario:
    """Everything needed to reproduce one run.

    ``init_heading`` is ``"uniform_random"``, ``"path_tangent"`` or a fixed
    angle in radians. ``initial_states`` (tuples of x, y, psi) bypasses the
    random sampler when given. ``min_init_separation`` defaults to ``r_s``.
    """

    path: PathSpec = field(default_factory=PathSpec.straight)
    n_uavs: int = 15
    init_region: InitRegion = field(default_factory=InitRegion)
    init_heading: str | float = UNIFORM_RANDOM
    min_init_separation: float | None = None
    rng_seed: int = 0
    guidance: GuidanceParams = field(default_factory=GuidanceParams)
    avoidance: AvoidanceParams = field(default_factory=AvoidanceParams)
    spacing: SpacingParams = field(default_factory=SpacingParams)
    dt: float = 0.01
    t_end: float = 40.0
    spacing_gate: float | None = None
    decimation: int = 10
    integrator: str = "rk4"
    convergence_tol: float = 0.05
    initial_states: tuple | None = None

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError("dt must be > 0")
        if not self.t_end > self.dt * (1.0 - 1e-12):
            raise ValueError("t_end must be at least dt")
        if int(self.n_uavs) != self.n_uavs or self.n_uavs < 1:
            raise ValueError("n_uavs must be a positive integer")
        if self.min_init_separation is not None and self.min_init_separation < 0:
            raise ValueError("min_init_separation must be >= 0")
        if isinstance(self.init_heading, str):
            if self.init_heading not in (UNIFORM_RANDOM, PATH_TANGENT):
                raise ValueError(f"unknown init_heading {self.init_heading!r}")
        elif not np.isfinite(self.init_heading):
            raise ValueError("init_heading angle must be finite")
        if self.spacing_gate is not None and not self.spacing_gate > 0:
            raise ValueError("spacing_gate must be > 0 when set")
        if int(self.decimation) != self.decimation or self.decimation < 1:
            raise ValueError("decimation must be a positive integer")
        if self.integrator not in INTEGRATORS:
            raise ValueError(f"integrator must be one of {INTEGRATORS}")
        if not self.convergence_tol > 0:
            raise ValueError("convergence_tol must be > 0")
        if self.initial_states is not None and len(self.initial_states) != self.n_uavs:
            raise ValueError("initial_states must list exactly n_uavs entries")

    @property
    def separation_floor(self):
        if self.min_init_separation is None:
            return self.avoidance.r_s
        return self.min_init_separation

    @property
    def n_steps(self):
        return int(round(self.t_end / self.dt))

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)


@dataclass
class FrameRecord:
    """Telemetry for one logged instant; per-vehicle fields are arrays ordered by id."""

    t: float
    id: np.ndarray
    x: np.ndarray
    y: np.ndarray
    psi: np.ndarray
    v: np.ndarray
    epsilon: np.ndarray
    s: np.ndarray
    delta: np.ndarray
    omega_path: np.ndarray
    omega_rep: np.ndarray
    omega_total: np.ndarray
    dist_to_path: np.ndarray
    E_min: float
    V: float


@dataclass
class RunSummary:
    min_E_over_run: float
    final_max_abs_epsilon: float
    final_max_abs_delta: float
    time_to_path: float | None
    collision: bool
    wall_time: float
    t_final: float = 0.0
    steps: int = 0
    final_V: float = 0.0
    max_step_dV_on_path: float | None = None
    v_min: float = 0.0
    v_max: float = 0.0
    leader_speed_max_dev: float = 0.0
    final_max_dist_to_path: float = 0.0
    converged: bool = False
    error: str | None = None
    chain_order: tuple = ()

    def as_dict(self):
        return dataclasses.asdict(self)


def metrics_E(world):
    """Smallest pairwise distance in the fleet."""
    if len(world) < 2:
        raise InsufficientAgents("need at least two UAVs")
    x = np.array([s.x for s in world])
    y = np.array([s.y for s in world])
    return min_pairwise_distance(x, y)


def min_pairwise_distance(x, y):
    d = np.hypot(x[None, :] - x[:, None], y[None, :] - y[:, None])
    np.fill_diagonal(d, np.inf)
    return float(d.min())


def sample_initial_states(scenario):
    """Draw the starting fleet from the scenario's seeded RNG.

    Positions are uniform in the init region; a whole batch is redrawn until
    every pair is at least ``separation_floor`` apart.
    """
    sc = scenario
    rng = np.random.default_rng(sc.rng_seed)
    n = sc.n_uavs
    if sc.initial_states is not None:
        xy = np.array([[st[0], st[1]] for st in sc.initial_states], dtype=float)
        psi = np.array([wrap_angle(st[2]) for st in sc.initial_states], dtype=float)
    else:
        r = sc.init_region
        lo, hi = np.array([r.x_min, r.y_min]), np.array([r.x_max, r.y_max])
        for _ in range(MAX_REJECTED_BATCHES):
            xy = rng.uniform(lo, hi, size=(n, 2))
            if n < 2 or min_pairwise_distance(xy[:, 0], xy[:, 1]) >= sc.separation_floor:
                break
        else:
            raise SamplingExhausted(
                f"could not place {n} UAVs {sc.separation_floor} m apart in the init region "
                f"after {MAX_REJECTED_BATCHES} batches"
            )
        if sc.init_heading == UNIFORM_RANDOM:
            psi = wrap_angle(rng.uniform(-np.pi, np.pi, size=n))
        elif sc.init_heading == PATH_TANGENT:
            psi = np.asarray(tangent_direction(sc.path, xy[:, 1]), dtype=float).reshape(n)
        else:
            psi = np.full(n, wrap_angle(float(sc.init_heading)))
    psi = np.asarray(psi, dtype=float).reshape(n)
    return [
        UavState(i, float(xy[i, 0]), float(xy[i, 1]), float(psi[i]), sc.spacing.v_nom)
        for i in range(n)
    ]


@dataclass
class Controls:
    eps: np.ndarray
    chi_p: np.ndarray
    psi_des: np.ndarray
    omega_path: np.ndarray
    omega_rep: np.ndarray
    omega: np.ndarray
    s: np.ndarray
    delta: np.ndarray
    v: np.ndarray
    dist: np.ndarray


class FleetController:
    """Evaluates every vehicle's (v, omega) from a frozen fleet snapshot."""

    def __init__(self, scenario, ids, pred):
        self.sc = scenario
        self.ids = np.asarray(ids)
        self.pred = np.asarray(pred)
        self.is_leader = self.pred < 0

    def __call__(self, x, y, psi):
        sc = self.sc
        g = sc.guidance
        eps = np.asarray(cross_track_error(sc.path, x, y), dtype=float)
        chi_p = np.asarray(tangent_direction(sc.path, y), dtype=float)
        chi_o = np.asarray(offset_angle(g.k_g, eps), dtype=float)
        psi_des = np.where(eps <= 0.0, chi_p - chi_o, chi_p + chi_o)
        omega_path = np.asarray(heading_rate_command(g.k_psi, psi_des, psi, g.max_omega))
        omega_rep, dist = repulsion_commands(sc.avoidance, x, y, psi, self.ids)

        s = np.asarray(arc_length(sc.path, y), dtype=float)
        delta = chain_deltas(s, self.pred, sc.spacing.d_eq)
        sp = sc.spacing
        v = np.where(self.is_leader, sp.v_nom, sp.v_nom - sp.kappa * np.tanh(delta))
        if sc.spacing_gate is not None:
            v = np.where(np.abs(eps) < sc.spacing_gate, v, sp.v_nom)
        return Controls(
            eps=eps.reshape(x.shape),
            chi_p=chi_p.reshape(x.shape),
            psi_des=psi_des.reshape(x.shape),
            omega_path=omega_path.reshape(x.shape),
            omega_rep=omega_rep,
            omega=omega_path.reshape(x.shape) + omega_rep,
            s=s.reshape(x.shape),
            delta=delta,
            v=v,
            dist=dist,
        )


def _rk4(controller, x, y, psi, c0, dt, hold):
    def deriv(px, py, ppsi, c):
        return c.v * np.cos(ppsi), c.v * np.sin(ppsi), c.omega

    def stage(px, py, ppsi):
        return c0 if hold else controller(px, py, ppsi)

    k1 = deriv(x, y, psi, c0)
    x2, y2, p2 = x + 0.5 * dt * k1[0], y + 0.5 * dt * k1[1], psi + 0.5 * dt * k1[2]
    k2 = deriv(x2, y2, p2, stage(x2, y2, p2))
    x3, y3, p3 = x + 0.5 * dt * k2[0], y + 0.5 * dt * k2[1], psi + 0.5 * dt * k2[2]
    k3 = deriv(x3, y3, p3, stage(x3, y3, p3))
    x4, y4, p4 = x + dt * k3[0], y + dt * k3[1], psi + dt * k3[2]
    k4 = deriv(x4, y4, p4, stage(x4, y4, p4))
    w = dt / 6.0
    return (
        x + w * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y + w * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        wrap_angle(psi + w * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])),
    )


def _check_collision(x, y, ids, d_safe, t):
    d = np.hypot(x[None, :] - x[:, None], y[None, :] - y[:, None])
    np.fill_diagonal(d, np.inf)
    m = float(d.min()) if len(x) > 1 else np.inf
    if m <= d_safe:
        i, j = np.unravel_index(np.argmin(d), d.shape)
        raise CollisionDetected(t, (int(ids[i]), int(ids[j])), m)
    return m


def step(world, scenario, order=None):
    """Advance the fleet by one ``scenario.dt``.

    ``order`` is the frozen chain order from t = 0; when omitted it is
    recomputed from ``world``, which is only right on the first step.
    Returned states carry the speed commanded over the step.
    """
    ids = np.array([st.id for st in world])
    x = np.array([st.x for st in world], dtype=float)
    y = np.array([st.y for st in world], dtype=float)
    psi = np.array([st.psi for st in world], dtype=float)
    if order is None:
        order = establish_order(scenario.path, world)
    ctl = FleetController(scenario, ids, predecessor_index(order, list(ids)))
    c0 = ctl(x, y, psi)
    nx, ny, npsi = _rk4(ctl, x, y, psi, c0, scenario.dt, scenario.integrator == "rk4_zoh")
    _check_collision(nx, ny, ids, scenario.avoidance.d_safe, scenario.dt)
    return [
        UavState(int(ids[i]), float(nx[i]), float(ny[i]), float(npsi[i]), float(c0.v[i]))
        for i in range(len(world))
    ]


def _frame(t, ids, x, y, psi, c, path):
    n = len(x)
    E = float(c.dist.min()) if n > 1 else float("nan")
    return FrameRecord(
        t=t,
        id=ids.copy(),
        x=x.copy(),
        y=y.copy(),
        psi=psi.copy(),
        v=c.v.copy(),
        epsilon=c.eps.copy(),
        s=c.s.copy(),
        delta=c.delta.copy(),
        omega_path=c.omega_path.copy(),
        omega_rep=c.omega_rep.copy(),
        omega_total=c.omega.copy(),
        dist_to_path=np.asarray(distance_to_path(path, x, y), dtype=float).reshape(n),
        E_min=E,
        V=lyapunov_value(c.delta),
    )


def run(scenario, decimation=None):
    """Simulate from t = 0 to ``t_end``.

    Returns ``(frames, summary)``. A frame is logged at t = 0, every
    ``decimation`` steps and at the last step. Collisions and runtime errors
    halt the run; the telemetry up to that point is still returned and the
    summary records what happened.
    """
    sc = scenario
    dec = sc.decimation if decimation is None else int(decimation)
    wall0 = time.perf_counter()
    world = sample_initial_states(sc)
    ids = np.array([st.id for st in world])
    x = np.array([st.x for st in world], dtype=float)
    y = np.array([st.y for st in world], dtype=float)
    psi = np.array([st.psi for st in world], dtype=float)
    order = establish_order(sc.path, world)
    pred = predecessor_index(order, list(ids))
    leader = pred < 0
    ctl = FleetController(sc, ids, pred)
    hold = sc.integrator == "rk4_zoh"
    tol = sc.convergence_tol

    frames = []
    error = None
    collision = False
    n_steps = sc.n_steps
    t = 0.0
    n = 0
    min_E = min_pairwise_distance(x, y) if len(x) > 1 else np.inf
    time_to_path = None
    max_dV = None
    v_min, v_max = np.inf, -np.inf
    leader_dev = 0.0
    c = None
    try:
        c = ctl(x, y, psi)
        frames.append(_frame(0.0, ids, x, y, psi, c, sc.path))
        V_prev = lyapunov_value(c.delta)
        if min_E <= sc.avoidance.d_safe:
            collision = True
            error = f"initial separation {min_E:.6f} m is within d_safe"
        for n in range(1, 0 if collision else n_steps + 1):
            if time_to_path is None and np.max(np.abs(c.eps)) < tol:
                time_to_path = t
            v_min = min(v_min, float(c.v.min()))
            v_max = max(v_max, float(c.v.max()))
            leader_dev = max(leader_dev, float(np.max(np.abs(c.v[leader] - sc.spacing.v_nom))))

            x, y, psi = _rk4(ctl, x, y, psi, c, sc.dt, hold)
            t = n * sc.dt
            try:
                min_E = min(min_E, _check_collision(x, y, ids, sc.avoidance.d_safe, t))
            except CollisionDetected as exc:
                collision = True
                min_E = min(min_E, exc.distance)
                error = str(exc)
            c = ctl(x, y, psi)
            V = lyapunov_value(c.delta)
            if time_to_path is not None:
                dV = V - V_prev
                max_dV = dV if max_dV is None else max(max_dV, dV)
            V_prev = V
            if collision or n % dec == 0 or n == n_steps:
                frames.append(_frame(t, ids, x, y, psi, c, sc.path))
            if collision:
                break
        if time_to_path is None and np.max(np.abs(c.eps)) < tol:
            time_to_path = t
        v_min = min(v_min, float(c.v.min()))
        v_max = max(v_max, float(c.v.max()))
    except CoincidentPositions as exc:
        collision = True
        min_E = 0.0
        error = str(exc)
    except VfSwarmError as exc:
        error = str(exc)

    if c is not None:
        final_eps = float(np.max(np.abs(c.eps)))
        final_delta = float(np.max(np.abs(c.delta)))
        final_V = lyapunov_value(c.delta)
    else:
        final_eps = final_delta = final_V = float("nan")
    final_dist = float(np.max(frames[-1].dist_to_path)) if frames else float("nan")
    summary = RunSummary(
        min_E_over_run=float(min_E),
        final_max_abs_epsilon=final_eps,
        final_max_abs_delta=final_delta,
        time_to_path=time_to_path,
        collision=collision,
        wall_time=time.perf_counter() - wall0,
        t_final=t,
        steps=n,
        final_V=final_V,
        max_step_dV_on_path=max_dV,
        v_min=float(v_min),
        v_max=float(v_max),
        leader_speed_max_dev=leader_dev,
        final_max_dist_to_path=final_dist,
        converged=(not collision and error is None and final_eps < tol and final_delta < tol),
        error=error,
        chain_order=tuple(int(i) for i in order),
    )
    return frames, summary
