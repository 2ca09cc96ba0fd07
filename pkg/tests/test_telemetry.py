import io
import json
import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from vfswarm import Scenario, run
from vfswarm.telemetry import CSV_COLUMNS, fmt, read_csv, summary_dict, write_csv, write_jsonl

GOLDEN_HEADER = "t,id,x,y,psi,v,epsilon,s,delta,omega_path,omega_rep,omega_total,dist_to_path,E_min,V"


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_seventeen_digits_round_trip(x):
    assert float(fmt(x)) == x


def test_csv_header_is_golden():
    assert ",".join(CSV_COLUMNS) == GOLDEN_HEADER


def test_csv_round_trip_is_lossless():
    frames, _ = run(Scenario(n_uavs=4, t_end=0.5, decimation=10))
    buf = io.StringIO()
    write_csv(frames, buf)
    text = buf.getvalue()
    assert text.splitlines()[0] == GOLDEN_HEADER
    assert "\r" not in text and '"' not in text
    buf.seek(0)
    cols = read_csv(buf)
    assert len(cols["t"]) == 4 * len(frames)
    np.testing.assert_array_equal(cols["x"], np.concatenate([f.x for f in frames]))
    np.testing.assert_array_equal(cols["omega_total"], np.concatenate([f.omega_total for f in frames]))
    np.testing.assert_array_equal(cols["E_min"], np.repeat([f.E_min for f in frames], 4))


def test_jsonl_one_object_per_frame():
    frames, summary = run(Scenario(n_uavs=3, t_end=0.2, decimation=5))
    buf = io.StringIO()
    write_jsonl(frames, buf)
    objs = [json.loads(line) for line in buf.getvalue().splitlines()]
    assert len(objs) == len(frames)
    assert set(objs[0]) == set(CSV_COLUMNS)
    assert objs[-1]["x"] == list(frames[-1].x)
    d = summary_dict(summary, Scenario(n_uavs=3))
    json.dumps(d)
    assert d["n_uavs"] == 3 and "spacing_convention" in d


def test_single_vehicle_has_no_pairwise_distance():
    frames, _ = run(Scenario(n_uavs=1, t_end=0.02, decimation=1))
    buf = io.StringIO()
    write_jsonl(frames, buf)
    assert json.loads(buf.getvalue().splitlines()[0])["E_min"] is None
    assert math.isnan(frames[0].E_min)
