import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from dvppsim.dvpp import Dvpp, WindUnit, participation_factors
from dvppsim.errors import ConfigError, DivergenceError

DT = 0.01


def make_dvpp(online=(True, True)):
    units = [WindUnit(f"wt{i + 1}", online=flag) for i, flag in enumerate(online)]
    return Dvpp(units)


def settle(dvpp, sfc_mw, seconds):
    for _ in range(round(seconds / DT)):
        dvpp.step(sfc_mw, DT)


# ---------------------------------------------------------------------------
# share factors
# ---------------------------------------------------------------------------

def test_factor_examples():
    assert participation_factors([3.5, 3.5]) == [0.5, 0.5]
    assert participation_factors([3.5, 0.0]) == [1.0, 0.0]
    d = participation_factors([1.0, 2.0, 3.0])
    for got, want in zip(d, [1.0 / 6.0, 1.0 / 3.0, 0.5]):
        assert abs(got - want) < 1e-12


def test_factor_degenerate_zero_total():
    assert participation_factors([0.0, 0.0, 0.0]) == [0.0, 0.0, 0.0]
    assert participation_factors([]) == []


def test_factor_negative_power_rejected():
    with pytest.raises(ConfigError):
        participation_factors([1.0, -0.1])


powers = st.lists(st.floats(0.0, 1e6, allow_nan=False), min_size=1, max_size=6)


@settings(max_examples=200)
@given(p=powers)
def test_factor_sum_is_one(p):
    assume(sum(p) > 0.0)
    d = participation_factors(p)
    assert abs(sum(d) - 1.0) < 1e-12
    assert all(0.0 <= x <= 1.0 for x in d)


@settings(max_examples=200)
@given(p=powers, seed=st.integers(0, 2**31))
def test_factor_permutation_equivariance(p, seed):
    assume(sum(p) > 0.0)
    perm = np.random.default_rng(seed).permutation(len(p))
    direct = participation_factors(p)
    shuffled = participation_factors([p[i] for i in perm])
    for k, i in enumerate(perm):
        assert abs(shuffled[k] - direct[i]) < 1e-12


@settings(max_examples=200)
@given(p=powers, c=st.floats(1e-6, 1e6, allow_nan=False))
def test_factor_scale_invariance(p, c):
    assume(sum(p) > 0.0)
    base = participation_factors(p)
    scaled = participation_factors([c * x for x in p])
    for a, b in zip(base, scaled):
        assert abs(a - b) < 1e-12


# ---------------------------------------------------------------------------
# redispatch
# ---------------------------------------------------------------------------

def test_redispatch_equal_split_when_settled():
    dvpp = make_dvpp()
    commands = dvpp.redispatch_step(0.6, DT)
    assert commands == pytest.approx([3.8, 3.8], abs=1e-12)


def test_redispatch_zero_request_returns_schedule():
    dvpp = make_dvpp()
    assert dvpp.redispatch_step(0.0, DT) == [3.5, 3.5]


def test_redispatch_shifts_whole_share_to_survivor():
    dvpp = make_dvpp()
    settle(dvpp, 0.6, 20.0)
    dvpp.units[1].set_online(False)
    settle(dvpp, 0.6, 60.0)
    commands = dvpp.redispatch_step(0.6, DT)
    assert abs(commands[0] - 4.1) < 1e-6  # deload 3.5 + the whole 0.6 share, at rated
    assert commands[1] == 0.0
    assert abs(dvpp.d_filtered[0] - 1.0) < 1e-6


def test_filtered_factor_sum_stays_one_through_trip():
    dvpp = make_dvpp()
    worst = 0.0
    for i in range(round(60.0 / DT)):
        if i == 1000:
            dvpp.units[1].set_online(False)
        dvpp.step(0.6, DT)
        worst = max(worst, abs(sum(dvpp.d_filtered) - 1.0))
    assert worst < 1e-4


def test_identical_units_share_equally():
    units = [WindUnit(f"wt{i}") for i in range(4)]
    dvpp = Dvpp(units)
    settle(dvpp, 0.8, 30.0)
    for d in dvpp.d_filtered:
        assert abs(d - 0.25) < 1e-9


def test_trip_transition_time_matches_filter():
    # 10-90% transition of the surviving unit's factor is T*ln(9) of T = 4 s
    dvpp = make_dvpp()
    dvpp.units[1].set_online(False)
    t10 = t90 = None
    for i in range(round(60.0 / DT)):
        dvpp.step(0.6, DT)
        t = (i + 1) * DT
        d = dvpp.d_filtered[0]
        if t10 is None and d >= 0.5 + 0.1 * 0.5:
            t10 = t
        if t90 is None and d >= 0.5 + 0.9 * 0.5:
            t90 = t
    expected = 4.0 * math.log(9.0)
    assert t10 is not None and t90 is not None
    assert abs((t90 - t10) - expected) <= 0.1 * expected


def test_total_output_never_exceeds_ceilings():
    dvpp = make_dvpp()
    cap = sum(u.ceiling_mw for u in dvpp.units)
    for _ in range(round(30.0 / DT)):
        total = dvpp.step(100.0, DT)
        assert total <= cap + 1e-12


def test_all_units_offline_degenerates_to_zero():
    dvpp = make_dvpp(online=(False, False))
    assert dvpp.redispatch_step(0.6, DT) == [0.0, 0.0]
    assert dvpp.d_raw == [0.0, 0.0]
    assert dvpp.total_output_mw == 0.0


# ---------------------------------------------------------------------------
# wind units
# ---------------------------------------------------------------------------

def test_wind_unit_fixed_point():
    unit = WindUnit("wt1")
    for _ in range(100):
        assert unit.step(3.5, DT) == 3.5


def test_wind_unit_first_order_settling():
    unit = WindUnit("wt1", response_t_s=0.5)
    y = 0.0
    for _ in range(round(3.0 / DT)):
        y = unit.step(3.8, DT)
    assert abs(y - 3.8) < 0.003


def test_wind_unit_offline_is_zero():
    unit = WindUnit("wt1")
    unit.set_online(False)
    for _ in range(100):
        assert unit.step(3.8, DT) == 0.0
    assert unit.p_out_mw == 0.0


def test_wind_unit_back_online_recovers_to_command():
    unit = WindUnit("wt1")
    unit.set_online(False)
    unit.step(3.5, DT)
    unit.set_online(True)
    y = 0.0
    for _ in range(round(5.0 / DT)):
        y = unit.step(3.5, DT)
    assert abs(y - 3.5) < 0.001


def test_wind_unit_fault_forces_output_then_recovers():
    unit = WindUnit("wt1")
    unit.start_fault(0.0)
    for _ in range(10):
        assert unit.step(3.5, DT) == 0.0
    unit.clear_fault()
    y = unit.step(3.5, DT)
    assert 0.0 < y < 0.5  # recovery restarts from the collapsed level
    for _ in range(round(5.0 / DT)):
        y = unit.step(3.5, DT)
    assert abs(y - 3.5) < 0.035


def test_wind_unit_available_power_caps_output():
    unit = WindUnit("wt1", available_mw=3.6)
    for _ in range(round(10.0 / DT)):
        y = unit.step(4.1, DT)
    assert y == 3.6


def test_wind_unit_validation():
    with pytest.raises(ConfigError):
        WindUnit("wt1", rated_mw=0.0)
    with pytest.raises(ConfigError):
        WindUnit("wt1", deload_mw=5.0)
    with pytest.raises(ConfigError):
        WindUnit("wt1", available_mw=3.0)
    with pytest.raises(ConfigError):
        WindUnit("wt1", response_t_s=0.0)


def test_dvpp_validation():
    with pytest.raises(ConfigError):
        Dvpp([])
    with pytest.raises(ConfigError):
        Dvpp([WindUnit("wt1")], participation=1.5)
    with pytest.raises(ConfigError):
        Dvpp([WindUnit("wt1")], filter_t_s=0.0)


def test_non_finite_command_raises():
    dvpp = make_dvpp()
    with pytest.raises(DivergenceError):
        dvpp.redispatch_step(math.nan, DT)
    with pytest.raises(DivergenceError):
        dvpp.units[0].step(math.inf, DT)
