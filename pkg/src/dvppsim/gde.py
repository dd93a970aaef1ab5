"""Grid dynamic equivalent: joint frequency and voltage behaviour of the bulk system.

Frequency comes from a swing equation on the equivalent inertia,

    2H dw/dt = (p_gen - p_load) - D_u*(w - 1) - q,    dq/dt = k_rest*(w - 1),

where w is per-unit frequency and q is the state of an optional stabilising
integrator standing in for frequency regulation outside the modelled control
loops (k_rest = 0 disables it; the benchmark areas model that regulation
explicitly through their own secondary controllers).  The electrical angle
integrates 2*pi*f0*w, and the bus voltage is a balanced three-phase set of
constant amplitude:

    va = V sin(theta),  vb = V sin(theta - 2pi/3),  vc = V sin(theta + 2pi/3).
"""

from __future__ import annotations

import math

from .errors import ConfigError, DivergenceError

TWO_PI = 2.0 * math.pi
_TWO_THIRDS_PI = TWO_PI / 3.0

DEFAULT_INERTIA_H_S = 5.0
DEFAULT_DAMPING_PU = 1.0
DEFAULT_K_REST_PER_S = 0.5
DEFAULT_F0_HZ = 50.0
DEFAULT_VOLTAGE_PU = 1.0


def three_phase_voltages(v_pu: float, theta_rad: float) -> tuple[float, float, float]:
    """Balanced three-phase instantaneous voltages for amplitude V and angle theta."""
    return (
        v_pu * math.sin(theta_rad),
        v_pu * math.sin(theta_rad - _TWO_THIRDS_PI),
        v_pu * math.sin(theta_rad + _TWO_THIRDS_PI),
    )


class GridDynamicEquivalent:
    def __init__(
        self,
        inertia_h_s: float = DEFAULT_INERTIA_H_S,
        damping_pu: float = DEFAULT_DAMPING_PU,
        k_rest_per_s: float = DEFAULT_K_REST_PER_S,
        f0_hz: float = DEFAULT_F0_HZ,
        voltage_pu: float = DEFAULT_VOLTAGE_PU,
    ) -> None:
        if inertia_h_s <= 0.0:
            raise ConfigError(f"equivalent inertia must be > 0, got {inertia_h_s}")
        if damping_pu < 0.0:
            raise ConfigError(f"damping factor must be >= 0, got {damping_pu}")
        if voltage_pu <= 0.0:
            raise ConfigError(f"voltage amplitude must be > 0, got {voltage_pu}")
        self.inertia_h_s = inertia_h_s
        self.damping_pu = damping_pu
        self.k_rest_per_s = k_rest_per_s
        self.f0_hz = f0_hz
        self.voltage_pu = voltage_pu
        self.omega_pu = 1.0
        self.theta_rad = 0.0  # kept unwrapped for continuity
        self.integ_state = 0.0

    @property
    def delta_f_hz(self) -> float:
        return (self.omega_pu - 1.0) * self.f0_hz

    def reset(self) -> None:
        self.omega_pu = 1.0
        self.theta_rad = 0.0
        self.integ_state = 0.0

    def step(self, p_gen_pu: float, p_load_pu: float, dt: float) -> float:
        """Advance frequency, stabiliser and angle one RK4 step; returns omega [pu]."""
        if not (math.isfinite(p_gen_pu) and math.isfinite(p_load_pu)):
            raise DivergenceError("non-finite power into grid dynamic equivalent")
        acc = p_gen_pu - p_load_pu
        two_h = 2.0 * self.inertia_h_s
        d = self.damping_pu
        kr = self.k_rest_per_s
        w = self.omega_pu
        q = self.integ_state

        dw1 = (acc - d * (w - 1.0) - q) / two_h
        dq1 = kr * (w - 1.0)
        w2 = w + 0.5 * dt * dw1
        q2 = q + 0.5 * dt * dq1
        dw2 = (acc - d * (w2 - 1.0) - q2) / two_h
        dq2 = kr * (w2 - 1.0)
        w3 = w + 0.5 * dt * dw2
        q3 = q + 0.5 * dt * dq2
        dw3 = (acc - d * (w3 - 1.0) - q3) / two_h
        dq3 = kr * (w3 - 1.0)
        w4 = w + dt * dw3
        q4 = q + dt * dq3
        dw4 = (acc - d * (w4 - 1.0) - q4) / two_h
        dq4 = kr * (w4 - 1.0)

        self.omega_pu = w + dt * (dw1 + 2.0 * (dw2 + dw3) + dw4) / 6.0
        self.integ_state = q + dt * (dq1 + 2.0 * (dq2 + dq3) + dq4) / 6.0
        # d(theta)/dt = 2*pi*f0*w, integrated with the same RK4 stages
        self.theta_rad += TWO_PI * self.f0_hz * dt * (w + 2.0 * (w2 + w3) + w4) / 6.0
        return self.omega_pu

    def three_phase(self) -> tuple[float, float, float]:
        return three_phase_voltages(self.voltage_pu, self.theta_rad)
