from dataclasses import dataclass


@dataclass(frozen=True)
class UavState:
    """Kinematic state of one vehicle. ``v`` is the last commanded speed."""

    id: int
    x: float
    y: float
    psi: float
    v: float = 0.0
