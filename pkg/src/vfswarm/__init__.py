"""Multi-vehicle path following with vector-field guidance, rotational
repulsion and tanh spacing control."""
from .angles import wrap_angle
from .avoidance import (
    AvoidanceParams,
    PairGeometry,
    critical_separation,
    geometry_gain_bound,
    kinematic_range_accel,
    pair_geometry,
    range_accel,
    range_rate,
    repulsion_command,
    sufficient_gain,
    total_heading_rate,
)
from .errors import (
    CoincidentPositions,
    CollisionDetected,
    ConfigError,
    DegenerateGeometry,
    DomainError,
    InsufficientAgents,
    InvalidParams,
    SamplingExhausted,
    VfSwarmError,
)
from .guidance import GuidanceParams, desired_heading, heading_rate_command, offset_angle
from .path import (
    PathSpec,
    arc_length,
    cross_track_error,
    distance_to_path,
    tangent_direction,
)
from .sim import (
    FrameRecord,
    InitRegion,
    RunSummary,
    Scenario,
    metrics_E,
    run,
    sample_initial_states,
    step,
)
from .spacing import (
    SpacingParams,
    establish_order,
    lyapunov_value,
    path_progress_rate,
    spacing_error,
    speed_command,
)
from .state import UavState

__version__ = "0.1.0"
