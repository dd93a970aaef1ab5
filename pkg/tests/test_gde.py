import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dvppsim.errors import ConfigError, DivergenceError
from dvppsim.gde import GridDynamicEquivalent, three_phase_voltages

DT = 0.01
SQRT3_2 = math.sqrt(3.0) / 2.0


def test_balanced_power_is_exact_equilibrium():
    gde = GridDynamicEquivalent()
    for _ in range(2000):
        assert gde.step(0.37, 0.37, DT) == 1.0
    assert gde.integ_state == 0.0


def test_pure_inertia_ramp():
    # with damping and stabiliser off, d(omega)/dt = dP/(2H): 0.02/10 pu/s
    gde = GridDynamicEquivalent(inertia_h_s=5.0, damping_pu=0.0, k_rest_per_s=0.0)
    for _ in range(100):
        gde.step(0.02, 0.0, DT)
    assert abs((gde.omega_pu - 1.0) - 0.002) < 1e-6


def test_damping_sets_steady_offset():
    # first-order oracle: steady deviation = dP / D_u
    gde = GridDynamicEquivalent(inertia_h_s=5.0, damping_pu=1.0, k_rest_per_s=0.0)
    for _ in range(round(150.0 / DT)):
        gde.step(0.01, 0.0, DT)
    assert abs((gde.omega_pu - 1.0) - 0.01) < 1e-6


def test_stabilising_integrator_rejects_constant_imbalance():
    # with a small gain the stabiliser sets the slow pole (overdamped regime,
    # k_rest <= D^2/(8H)); a constant step is then rejected within 5/k_rest
    k_rest = 0.02
    gde = GridDynamicEquivalent(inertia_h_s=5.0, damping_pu=1.0, k_rest_per_s=k_rest)
    horizon = round(5.0 / k_rest / DT)
    for _ in range(horizon):
        gde.step(0.01, 0.0, DT)
    for _ in range(round(50.0 / DT)):
        gde.step(0.01, 0.0, DT)
        assert abs(gde.omega_pu - 1.0) < 1e-4


def test_frequency_falls_monotonically_under_deficit():
    gde = GridDynamicEquivalent(inertia_h_s=5.0, damping_pu=0.0, k_rest_per_s=0.0)
    prev = gde.omega_pu
    for _ in range(1000):
        w = gde.step(0.0, 0.01, DT)
        assert w < prev
        prev = w


def test_angle_integrates_nominal_frequency():
    gde = GridDynamicEquivalent(f0_hz=50.0, k_rest_per_s=0.0)
    n = 1000
    for _ in range(n):
        gde.step(0.0, 0.0, DT)
    expected = 2.0 * math.pi * 50.0 * n * DT
    assert abs(gde.theta_rad - expected) < 1e-9 * expected


def test_angle_is_continuous_across_steps():
    gde = GridDynamicEquivalent(k_rest_per_s=0.0)
    prev = gde.theta_rad
    for i in range(500):
        gde.step(0.01 if i > 100 else 0.0, 0.0, DT)
        inc = gde.theta_rad - prev
        assert 0.9 * 2.0 * math.pi * 50.0 * DT < inc < 1.1 * 2.0 * math.pi * 50.0 * DT
        prev = gde.theta_rad


def test_three_phase_at_zero_angle():
    va, vb, vc = three_phase_voltages(1.0, 0.0)
    assert abs(va - 0.0) < 1e-9
    assert abs(vb - (-SQRT3_2)) < 1e-9
    assert abs(vc - SQRT3_2) < 1e-9


def test_three_phase_at_quarter_turn():
    va, vb, vc = three_phase_voltages(1.0, math.pi / 2.0)
    assert abs(va - 1.0) < 1e-9
    assert abs(vb - (-0.5)) < 1e-9
    assert abs(vc - (-0.5)) < 1e-9


def test_three_phase_identities_many_angles():
    rng = np.random.default_rng(42)
    for theta in rng.uniform(-10.0 * math.pi, 10.0 * math.pi, size=10000):
        va, vb, vc = three_phase_voltages(1.0, theta)
        assert abs(va + vb + vc) < 1e-9
        assert abs(va * va + vb * vb + vc * vc - 1.5) < 1e-9


@given(
    v=st.floats(0.1, 2.0, allow_nan=False),
    theta=st.floats(-1e3, 1e3, allow_nan=False),
)
def test_three_phase_identities_property(v, theta):
    va, vb, vc = three_phase_voltages(v, theta)
    assert abs(va + vb + vc) < 1e-9
    assert abs(va * va + vb * vb + vc * vc - 1.5 * v * v) < 1e-9


def test_amplitude_constant_while_frequency_moves():
    gde = GridDynamicEquivalent(k_rest_per_s=0.0)
    for _ in range(500):
        gde.step(0.0, 0.05, DT)
        va, vb, vc = gde.three_phase()
        assert abs(va * va + vb * vb + vc * vc - 1.5) < 1e-9
    assert gde.omega_pu < 1.0
    assert gde.voltage_pu == 1.0


def test_invalid_parameters_rejected():
    with pytest.raises(ConfigError):
        GridDynamicEquivalent(inertia_h_s=0.0)
    with pytest.raises(ConfigError):
        GridDynamicEquivalent(damping_pu=-0.1)
    with pytest.raises(ConfigError):
        GridDynamicEquivalent(voltage_pu=0.0)


def test_non_finite_power_raises():
    gde = GridDynamicEquivalent()
    with pytest.raises(DivergenceError):
        gde.step(math.nan, 0.0, DT)
