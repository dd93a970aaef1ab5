import copy
import math

import numpy as np
import pytest

from dvppsim.config import build_system, builtin_config, default_area1
from dvppsim.errors import ConfigError
from dvppsim.network import DEFAULT_T12, TieLine, default_bias
from dvppsim.scenario import EventEngine, LoadStep

DT = 0.01


def test_tie_line_zero_for_equal_frequencies():
    line = TieLine("a", "b")
    for _ in range(1000):
        assert line.step(-0.04, -0.04, DT) == 0.0


def test_tie_line_integral_oracle():
    # gain 2*pi*t12 = 0.5 pu/s per Hz; 0.1 Hz held for 1 s integrates to 0.05 pu
    line = TieLine("a", "b", t12=0.5 / (2.0 * math.pi))
    flow = 0.0
    for _ in range(100):
        flow = line.step(0.1, 0.0, DT)
    assert abs(flow - 0.05) < 1e-6


def test_default_synchronizing_gain():
    assert abs(2.0 * math.pi * DEFAULT_T12 - 0.5) < 1e-12


def test_tie_line_validation():
    with pytest.raises(ConfigError):
        TieLine("a", "a")
    with pytest.raises(ConfigError):
        TieLine("a", "b", t12=0.0)


def test_default_bias_combines_damping_and_droop():
    system = build_system(builtin_config("nominal"))
    a1 = system.area("area1")
    # three units at 2.4 Hz/pu plus 1 pu damping on a 50 Hz base
    assert abs(a1.agc.bias_pu_per_hz - (1.0 / 50.0 + 3.0 / 2.4)) < 1e-12


def test_export_antisymmetry():
    system = build_system(builtin_config("nominal"))
    system.tie_lines[0].delta_p_pu = 0.0123
    assert system.tie_export_pu("area1") == 0.0123
    assert system.tie_export_pu("area2") == -0.0123


def test_power_balance_examples():
    system = build_system(builtin_config("nominal"))
    a1 = system.area("area1")
    assert a1.power_balance_pu(0.0) == 0.0
    a1.load_delta_pu = 0.06
    assert a1.power_balance_pu(0.0) == -0.06


def test_power_balance_returns_to_zero_in_closed_loop():
    cfg = builtin_config("nominal")
    system = build_system(cfg)
    engine = EventEngine(cfg.events, DT, system)
    for i in range(round(150.0 / DT)):
        engine.apply(i, system)
        system.step(DT)
    a1 = system.area("area1")
    assert abs(a1.power_balance_pu(system.tie_export_pu("area1"))) < 1e-4


def test_global_power_bookkeeping_identity():
    cfg = builtin_config("two-area")
    system = build_system(cfg)
    engine = EventEngine(cfg.events, DT, system)
    for i in range(round(60.0 / DT)):
        engine.apply(i, system)
        system.step(DT)
        lhs = sum(
            a.power_balance_pu(system.tie_export_pu(a.area_id))
            + system.tie_export_pu(a.area_id)
            for a in system.areas
        )
        rhs = sum(
            sum(g.p_mech_delta_pu for g in a.generators) + a.dvpp_delta_pu() - a.load_delta_pu
            for a in system.areas
        )
        assert abs(lhs - rhs) < 1e-12


def test_identical_areas_identical_disturbance_keep_tie_at_zero():
    cfg = builtin_config("nominal")
    mirror = copy.deepcopy(default_area1())
    mirror.id = "area2"
    cfg.areas[1] = mirror
    cfg.events = [LoadStep(10.0, "area1", 6.0), LoadStep(10.0, "area2", 6.0)]
    system = build_system(cfg)
    engine = EventEngine(cfg.events, DT, system)
    for i in range(round(40.0 / DT)):
        engine.apply(i, system)
        system.step(DT)
        assert system.tie_lines[0].delta_p_pu == 0.0


def test_participation_sum_validated_at_area_construction():
    cfg = builtin_config("nominal")
    cfg.areas[0].generators[2].participation = 0.2  # sum drops to 0.9
    with pytest.raises(ConfigError):
        build_system(cfg)


def test_duplicate_and_unknown_ids_rejected():
    cfg = builtin_config("nominal")
    cfg.areas[1].id = "area1"
    with pytest.raises(ConfigError):
        build_system(cfg)
    cfg = builtin_config("nominal")
    cfg.tie_lines[0].to_area = "area9"
    with pytest.raises(ConfigError):
        build_system(cfg)
    system = build_system(builtin_config("nominal"))
    with pytest.raises(ConfigError):
        system.area("nope")
