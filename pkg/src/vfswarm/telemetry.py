"""Telemetry serialisation: CSV (one row per vehicle per frame) and JSONL."""
import json
import math

import numpy as np

CSV_COLUMNS = (
    "t", "id", "x", "y", "psi", "v", "epsilon", "s", "delta",
    "omega_path", "omega_rep", "omega_total", "dist_to_path", "E_min", "V",
)
PER_UAV = CSV_COLUMNS[1:13]

SPACING_CONVENTION = (
    "delta = s_self - s_pred + d_eq (positive: follower too close); "
    "v = v_nom - kappa * tanh(delta); leader v = v_nom"
)


def fmt(value):
    """17 significant digits: enough for a lossless float round-trip."""
    return format(float(value), ".17g")


def write_csv(frames, fh):
    fh.write(",".join(CSV_COLUMNS) + "\n")
    for fr in frames:
        tail = f"{fmt(fr.E_min)},{fmt(fr.V)}"
        t = fmt(fr.t)
        for n in range(len(fr.id)):
            row = [t, str(int(fr.id[n]))]
            row += [fmt(getattr(fr, col)[n]) for col in PER_UAV[1:]]
            fh.write(",".join(row) + "," + tail + "\n")


def read_csv(fh):
    header = fh.readline().rstrip("\n").split(",")
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected telemetry header {header}")
    rows = [line.rstrip("\n").split(",") for line in fh if line.strip()]
    data = np.array([[float(v) for v in r] for r in rows]) if rows else np.empty((0, len(header)))
    return {name: data[:, k] for k, name in enumerate(header)}


def _json_float(x):
    x = float(x)
    return x if math.isfinite(x) else None


def write_jsonl(frames, fh):
    for fr in frames:
        obj = {"t": fr.t}
        obj["id"] = [int(i) for i in fr.id]
        for col in PER_UAV[1:]:
            obj[col] = [_json_float(v) for v in getattr(fr, col)]
        obj["E_min"] = _json_float(fr.E_min)
        obj["V"] = _json_float(fr.V)
        fh.write(json.dumps(obj, separators=(",", ":")) + "\n")


def summary_dict(summary, scenario=None):
    out = {}
    for key, value in summary.as_dict().items():
        if isinstance(value, float):
            value = _json_float(value)
        elif isinstance(value, tuple):
            value = list(value)
        out[key] = value
    out["spacing_convention"] = SPACING_CONVENTION
    if scenario is not None:
        out["rng_seed"] = scenario.rng_seed
        out["n_uavs"] = scenario.n_uavs
        out["d_safe"] = scenario.avoidance.d_safe
        out["convergence_tol"] = scenario.convergence_tol
    return out
