"""Scenario files: INI-style sections whose keys mirror the Scenario fields.

Example::

    [path]
    variant = sinusoid
    amplitude = 5.0
    frequency = 0.075

Missing keys fall back to the Scenario defaults; unknown sections or keys
are rejected. ``none`` clears an optional field.
"""
import configparser
import warnings
from importlib import resources
from pathlib import Path

from .avoidance import AvoidanceParams
from .errors import ConfigError
from .guidance import GuidanceParams
from .path import SINUSOID, STRAIGHT, PathSpec
from .sim import PATH_TANGENT, UNIFORM_RANDOM, InitRegion, Scenario
from .spacing import SpacingParams

# section -> key -> (kind, comment). Order here is the order files are written in.
SCHEMA = {
    "path": {
        "variant": ("str", f"{STRAIGHT} (x = 0) | {SINUSOID} (x = amplitude * sin(frequency * y))"),
        "amplitude": ("float", "m, sinusoid only"),
        "frequency": ("float", "rad/m, sinusoid only"),
    },
    "guidance": {
        "k_g": ("float", "guidance gain, 1/m^2, > 0"),
        "k_psi": ("float", "heading control gain, 1/s, > 0"),
        "max_omega": ("opt_float", "rad/s clamp on the path-following turn rate, or none"),
    },
    "avoidance": {
        "k_r": ("float", "repulsion gain, m^2/s, >= 0"),
        "r_s": ("float", "activation radius, m, > d_safe"),
        "d_safe": ("float", "safety distance, m, > 0"),
    },
    "spacing": {
        "v_nom": ("float", "nominal (leader) speed, m/s, > 0"),
        "kappa": ("float", "spacing gain, m/s, 0 < kappa < v_nom"),
        "d_eq": ("float", "target arc-length gap, m, > 0"),
        "spacing_gate": ("opt_float", "|epsilon| below which followers use spacing control, m, or none"),
    },
    "sim": {
        "dt": ("float", "integration step, s"),
        "t_end": ("float", "run length, s"),
        "decimation": ("int", "log one frame every n steps"),
        "integrator": ("str", "rk4 (controls re-evaluated per stage) | rk4_zoh (controls held over the step)"),
        "convergence_tol": ("float", "|epsilon| and |delta| threshold for convergence, m"),
    },
    "init": {
        "n_uavs": ("int", "number of vehicles"),
        "x_min": ("float", "init region, m"),
        "x_max": ("float", "init region, m"),
        "y_min": ("float", "init region, m"),
        "y_max": ("float", "init region, m"),
        "init_heading": ("heading", f"{UNIFORM_RANDOM} | {PATH_TANGENT} | angle in rad"),
        "min_init_separation": ("opt_float", "m, or none for r_s"),
        "rng_seed": ("int", "seed for the initial-condition sampler"),
        "states": ("states", "optional explicit start, one 'x, y, psi' line per vehicle"),
    },
}


def numeric_fields():
    return [
        (sec, key)
        for sec, keys in SCHEMA.items()
        for key, (kind, _) in keys.items()
        if kind in ("float", "opt_float", "int")
    ]


def _parser():
    return configparser.ConfigParser(
        comment_prefixes=("#",), inline_comment_prefixes=("#",), interpolation=None
    )


def _convert(section, key, kind, raw):
    text = raw.strip()
    where = f"[{section}] {key}"
    try:
        if kind == "float":
            return float(text)
        if kind == "int":
            value = float(text)
            if value != int(value):
                raise ValueError
            return int(value)
        if kind == "opt_float":
            return None if text.lower() == "none" else float(text)
        if kind == "str":
            return text
        if kind == "heading":
            return text if text in (UNIFORM_RANDOM, PATH_TANGENT) else float(text)
        if kind == "states":
            if text.lower() in ("", "none"):
                return None
            rows = []
            for line in text.splitlines():
                if line.strip():
                    x, y, psi = (float(p) for p in line.split(","))
                    rows.append((x, y, psi))
            return tuple(rows)
    except ValueError:
        raise ConfigError(f"{where}: cannot parse {text!r} as {kind}") from None
    raise AssertionError(kind)


def _values(cp):
    for section in cp.sections():
        if section not in SCHEMA:
            raise ConfigError(f"unknown section [{section}]")
    values = {}
    for section, keys in SCHEMA.items():
        if not cp.has_section(section):
            continue
        for key, raw in cp.items(section):
            if key not in keys:
                raise ConfigError(f"[{section}] unknown key {key!r}")
            values[(section, key)] = _convert(section, key, keys[key][0], raw)
    return values


def build_scenario(values):
    """Assemble a Scenario from ``{(section, key): value}``, validating as it goes."""
    base = Scenario()
    get = lambda sec, key, default: values.get((sec, key), default)  # noqa: E731

    def make(section, factory, **kw):
        try:
            return factory(**kw)
        except ValueError as exc:
            raise ConfigError(f"[{section}] {exc}") from None

    variant = get("path", "variant", STRAIGHT)
    if variant == STRAIGHT:
        for key in ("amplitude", "frequency"):
            if get("path", key, 0.0) not in (0.0, None):
                raise ConfigError(f"[path] {key} only applies to the sinusoid")
        path = PathSpec.straight()
    else:
        path = make(
            "path", PathSpec, variant=variant,
            amplitude=get("path", "amplitude", 0.0), frequency=get("path", "frequency", 0.0),
        )
    g, a, s = base.guidance, base.avoidance, base.spacing
    guidance = make(
        "guidance", GuidanceParams,
        k_g=get("guidance", "k_g", g.k_g), k_psi=get("guidance", "k_psi", g.k_psi),
        max_omega=get("guidance", "max_omega", g.max_omega),
    )
    avoidance = make(
        "avoidance", AvoidanceParams,
        k_r=get("avoidance", "k_r", a.k_r), r_s=get("avoidance", "r_s", a.r_s),
        d_safe=get("avoidance", "d_safe", a.d_safe),
    )
    spacing = make(
        "spacing", SpacingParams,
        v_nom=get("spacing", "v_nom", s.v_nom), kappa=get("spacing", "kappa", s.kappa),
        d_eq=get("spacing", "d_eq", s.d_eq),
    )
    r = base.init_region
    region = make(
        "init", InitRegion,
        x_min=get("init", "x_min", r.x_min), x_max=get("init", "x_max", r.x_max),
        y_min=get("init", "y_min", r.y_min), y_max=get("init", "y_max", r.y_max),
    )
    states = get("init", "states", None)
    n_uavs = get("init", "n_uavs", len(states) if states else base.n_uavs)
    scenario = make(
        "sim/init", Scenario,
        path=path, n_uavs=n_uavs, init_region=region,
        init_heading=get("init", "init_heading", base.init_heading),
        min_init_separation=get("init", "min_init_separation", base.min_init_separation),
        rng_seed=get("init", "rng_seed", base.rng_seed),
        guidance=guidance, avoidance=avoidance, spacing=spacing,
        dt=get("sim", "dt", base.dt), t_end=get("sim", "t_end", base.t_end),
        spacing_gate=get("spacing", "spacing_gate", base.spacing_gate),
        decimation=get("sim", "decimation", base.decimation),
        integrator=get("sim", "integrator", base.integrator),
        convergence_tol=get("sim", "convergence_tol", base.convergence_tol),
        initial_states=states,
    )
    if scenario.n_uavs > 1 and spacing.d_eq <= avoidance.r_s:
        warnings.warn(
            f"d_eq = {spacing.d_eq} m is not above r_s = {avoidance.r_s} m: "
            "neighbours in the settled chain will keep repelling each other",
            stacklevel=2,
        )
    return scenario


def parse_scenario(text):
    cp = _parser()
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed scenario file: {exc}") from None
    return build_scenario(_values(cp))


def load_scenario(path):
    """Read a scenario file. Bare names of bundled scenarios also resolve."""
    p = Path(path)
    if not p.exists():
        bundled = resources.files("vfswarm") / "scenarios" / p.name
        if not bundled.is_file():
            raise ConfigError(f"scenario file not found: {path}")
        return parse_scenario(bundled.read_text())
    return parse_scenario(p.read_text())


def scenario_values(scenario):
    sc = scenario
    r = sc.init_region
    return {
        ("path", "variant"): sc.path.variant,
        ("path", "amplitude"): sc.path.amplitude,
        ("path", "frequency"): sc.path.frequency,
        ("guidance", "k_g"): sc.guidance.k_g,
        ("guidance", "k_psi"): sc.guidance.k_psi,
        ("guidance", "max_omega"): sc.guidance.max_omega,
        ("avoidance", "k_r"): sc.avoidance.k_r,
        ("avoidance", "r_s"): sc.avoidance.r_s,
        ("avoidance", "d_safe"): sc.avoidance.d_safe,
        ("spacing", "v_nom"): sc.spacing.v_nom,
        ("spacing", "kappa"): sc.spacing.kappa,
        ("spacing", "d_eq"): sc.spacing.d_eq,
        ("spacing", "spacing_gate"): sc.spacing_gate,
        ("sim", "dt"): sc.dt,
        ("sim", "t_end"): sc.t_end,
        ("sim", "decimation"): sc.decimation,
        ("sim", "integrator"): sc.integrator,
        ("sim", "convergence_tol"): sc.convergence_tol,
        ("init", "n_uavs"): sc.n_uavs,
        ("init", "x_min"): r.x_min,
        ("init", "x_max"): r.x_max,
        ("init", "y_min"): r.y_min,
        ("init", "y_max"): r.y_max,
        ("init", "init_heading"): sc.init_heading,
        ("init", "min_init_separation"): sc.min_init_separation,
        ("init", "rng_seed"): sc.rng_seed,
        ("init", "states"): sc.initial_states,
    }


def _fmt(value):
    if value is None:
        return "none"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple):
        return "\n" + "\n".join(f"    {x!r}, {y!r}, {p!r}" for x, y, p in value)
    return str(value)


def format_scenario(scenario, comments=True):
    """Serialise a Scenario so that ``parse_scenario`` gives it back unchanged."""
    values = scenario_values(scenario)
    lines = []
    if comments:
        lines += ["# vfswarm scenario. All quantities SI; angles in radians.", ""]
    for section, keys in SCHEMA.items():
        lines.append(f"[{section}]")
        for key, (_, note) in keys.items():
            value = values[(section, key)]
            if scenario.path.is_straight and key in ("amplitude", "frequency"):
                if comments:
                    lines.append(f"# {key} = ...  ({note})")
                continue
            if key == "states" and value is None:
                if comments:
                    lines.append(f"# {key} =  ({note})")
                continue
            if comments:
                lines.append(f"# {note}")
            text = _fmt(value)
            lines.append(f"{key} ={text}" if text.startswith("\n") else f"{key} = {text}")
        lines.append("")
    return "\n".join(lines)


def apply_override(scenario, name, value):
    """Return a copy of ``scenario`` with one numeric field replaced.

    ``name`` is a bare key (``k_r``) or ``section.key``.
    """
    fields = numeric_fields()
    if "." in name:
        target = tuple(name.split(".", 1))
        if target not in fields:
            raise ConfigError(f"unknown numeric parameter {name!r}")
    else:
        matches = [f for f in fields if f[1] == name]
        if not matches:
            raise ConfigError(f"unknown numeric parameter {name!r}")
        target = matches[0]
    values = scenario_values(scenario)
    kind = SCHEMA[target[0]][target[1]][0]
    values[target] = _convert(target[0], target[1], kind, str(value))
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return build_scenario(values)
