"""Exception hierarchy shared by the guidance, avoidance, spacing and sim layers."""


class VfSwarmError(Exception):
    """Base class for all package errors."""


class CoincidentPositions(VfSwarmError):
    """Two vehicles closer than the coincidence guard (a collision already happened)."""


class DomainError(VfSwarmError, ValueError):
    """An analysis formula was evaluated outside the region where it holds."""


class DegenerateGeometry(VfSwarmError, ValueError):
    """Both lead angles lie on the line of sight; the repulsion direction is undefined."""


class InvalidParams(VfSwarmError, ValueError):
    pass


class CollisionDetected(VfSwarmError):
    def __init__(self, t, pair, distance):
        self.t = t
        self.pair = pair
        self.distance = distance
        super().__init__(
            f"collision at t={t:.4f} s between UAV {pair[0]} and UAV {pair[1]} "
            f"(separation {distance:.6f} m)"
        )


class SamplingExhausted(VfSwarmError):
    pass


class InsufficientAgents(VfSwarmError, ValueError):
    pass


class ConfigError(VfSwarmError, ValueError):
    pass
