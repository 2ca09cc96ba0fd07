"""Predecessor-following spacing control along the path.

Vehicles form a chain ordered by arc length at t = 0. The leader flies at
``v_nom``; every follower sets ``v = v_nom - kappa * tanh(delta)`` from its
spacing error ``delta`` to the vehicle directly ahead.

Sign convention used by the simulator (``chain_spacing_error``)::

    delta = s_self - s_pred + d_eq = d_eq - gap

so ``delta > 0`` means the follower is too close and slows down, and the
error obeys ``d(delta)/dt = s_dot_self - s_dot_pred`` exactly as in the
textbook string argument. ``spacing_error`` is kept with the literal
``s_self - s_pred - d_eq`` form; its zero puts the follower *ahead* of its
predecessor, which the ordering here rules out.
"""
from dataclasses import dataclass

import numpy as np

from .angles import wrap_angle
from .path import arc_length


@dataclass(frozen=True)
class SpacingParams:
    v_nom: float = 3.0
    kappa: float = 1.0
    d_eq: float = 4.0

    def __post_init__(self):
        if not self.v_nom > 0:
            raise ValueError("v_nom must be > 0")
        if not 0 < self.kappa < self.v_nom:
            raise ValueError("kappa must satisfy 0 < kappa < v_nom")
        if not self.d_eq > 0:
            raise ValueError("d_eq must be > 0")


def establish_order(path, states):
    """Chain order as a tuple of ids: leader first (largest arc length), ties by id."""
    if not states:
        raise ValueError("need at least one UAV")
    keyed = [(-float(arc_length(path, st.y)), st.id) for st in states]
    return tuple(uid for _, uid in sorted(keyed))


def predecessor_index(order, ids):
    """Map each position in ``ids`` to the array index of its predecessor (-1 for the leader)."""
    where = {uid: n for n, uid in enumerate(ids)}
    pred = np.full(len(ids), -1, dtype=int)
    for ahead, behind in zip(order[:-1], order[1:]):
        pred[where[behind]] = where[ahead]
    return pred


def spacing_error(s_self, s_pred, d_eq):
    return s_self - s_pred - d_eq


def chain_spacing_error(s_self, s_pred, d_eq):
    return s_self - s_pred + d_eq


def chain_deltas(s, pred, d_eq):
    """Spacing errors for a fleet; the leader's entry is 0."""
    s = np.asarray(s, dtype=float)
    has_pred = pred >= 0
    return np.where(has_pred, s - s[np.where(has_pred, pred, 0)] + d_eq, 0.0)


def speed_command(params, delta, is_leader=False):
    """Commanded speed, strictly inside (v_nom - kappa, v_nom + kappa)."""
    v = params.v_nom - params.kappa * np.tanh(np.asarray(delta, dtype=float))
    v = np.where(is_leader, params.v_nom, v)
    return float(v) if v.ndim == 0 else v


def lyapunov_value(deltas):
    d = np.asarray(deltas, dtype=float)
    return 0.5 * float(np.dot(d, d))


def path_progress_rate(v, psi, chi_p):
    out = np.asarray(v) * np.cos(wrap_angle(np.asarray(psi) - np.asarray(chi_p)))
    return float(out) if np.ndim(out) == 0 else out
