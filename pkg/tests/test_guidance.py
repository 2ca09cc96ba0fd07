import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from vfswarm import (
    GuidanceParams,
    Scenario,
    desired_heading,
    heading_rate_command,
    offset_angle,
    run,
    tangent_direction,
)

from .conftest import LINE, SINE


def test_params_validation():
    with pytest.raises(ValueError):
        GuidanceParams(k_g=0.0)
    with pytest.raises(ValueError):
        GuidanceParams(k_psi=-1.0)


def test_offset_angle_examples():
    assert offset_angle(0.05, 0.0) == 0.0
    assert offset_angle(0.05, 1e6) == pytest.approx(math.pi / 2, abs=1e-3)
    assert offset_angle(0.05, -1e6) == pytest.approx(math.pi / 2, abs=1e-3)
    expected = math.pi / 2 - math.asin(1 / 6)
    assert offset_angle(0.05, 10.0) == pytest.approx(expected, abs=1e-15)
    assert offset_angle(0.05, 10.0) == pytest.approx(1.4033, abs=1e-4)


@given(st.floats(-1e4, 1e4), st.floats(0.0, 1e4))
def test_offset_angle_even_bounded_monotone(eps, extra):
    a = offset_angle(0.05, eps)
    assert 0.0 <= a < math.pi / 2
    assert a == offset_angle(0.05, -eps)
    assert offset_angle(0.05, abs(eps) + extra) >= a


def test_desired_heading_straight_limits():
    assert desired_heading(LINE, 0.05, 0.0, 3.0) == math.pi / 2
    assert desired_heading(LINE, 0.05, -1e6, 0.0) == pytest.approx(0.0, abs=1e-3)
    assert desired_heading(LINE, 0.05, 1e6, 0.0) == pytest.approx(math.pi, abs=1e-3)


def test_desired_heading_sinusoid_on_path():
    assert desired_heading(SINE, 0.05, 0.0, 0.0) == pytest.approx(math.atan2(1, 0.375), abs=1e-15)
    y = 21.0
    chi = tangent_direction(SINE, y)
    x0, _ = SINE.point_at(y)
    assert desired_heading(SINE, 0.05, x0 - 1e7, y) == pytest.approx(chi - math.pi / 2, abs=1e-3)
    assert desired_heading(SINE, 0.05, x0 + 1e7, y) == pytest.approx(chi + math.pi / 2, abs=1e-3)


@pytest.mark.parametrize("path", [LINE, SINE], ids=["line", "sine"])
def test_desired_heading_continuous_at_zero_error(path):
    h = 1e-7
    for y in (-40.0, 0.0, 13.0, 20.94):
        x0, _ = path.point_at(y)
        jump = abs(desired_heading(path, 0.05, x0 + h, y) - desired_heading(path, 0.05, x0 - h, y))
        assert jump < 1e-6


@given(st.floats(-1e3, 1e3))
def test_straight_symmetry(eps):
    a = desired_heading(LINE, 0.05, eps, 0.0)
    b = desired_heading(LINE, 0.05, -eps, 0.0)
    assert a + b == pytest.approx(math.pi, abs=1e-12)


def test_straight_monotone_steering():
    left = desired_heading(LINE, 0.05, -np.linspace(0, 1e3, 4001), 0.0)
    right = desired_heading(LINE, 0.05, np.linspace(0, 1e3, 4001), 0.0)
    assert np.all(np.diff(left) <= 0)
    assert np.all(np.diff(right) >= 0)


def test_heading_rate_command_examples():
    assert heading_rate_command(2.3, 0.7, 0.7) == 0.0
    assert heading_rate_command(2.3, math.pi / 2, 0.0) == pytest.approx(2.3 * math.pi / 2)
    assert heading_rate_command(2.3, math.pi / 2, 0.0) == pytest.approx(3.613, abs=1e-3)
    assert heading_rate_command(2.3, 0.1, 2 * math.pi - 0.1) == pytest.approx(0.46, abs=1e-12)


@given(st.floats(-50, 50), st.floats(-50, 50))
def test_heading_rate_never_asks_for_more_than_half_a_turn(a, b):
    assert abs(heading_rate_command(1.0, a, b)) <= math.pi + 1e-12


def test_heading_rate_clamp():
    assert heading_rate_command(2.3, 3.0, 0.0, max_omega=1.0) == 1.0
    assert heading_rate_command(2.3, -3.0, 0.0, max_omega=1.0) == -1.0


@pytest.mark.parametrize("path", [LINE, SINE], ids=["line", "sine"])
@pytest.mark.parametrize("eps0", [-20.0, -7.5, 0.3, 12.0, 20.0])
def test_single_vehicle_reaches_path_within_40s(path, eps0):
    x0, _ = path.point_at(0.0)
    sc = Scenario(path=path, n_uavs=1, initial_states=((x0 + eps0, 0.0, 0.0),), t_end=40.0)
    _, summary = run(sc)
    assert summary.time_to_path is not None and summary.time_to_path < 40.0
