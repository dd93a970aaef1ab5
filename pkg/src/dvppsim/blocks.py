"""Scalar LTI primitives stepped with the classical 4th-order Runge-Kutta scheme.

Every transfer-function model in the simulator (governor chains, converter
lags, redispatch filters) is built from these blocks.  Each block holds one
internal state, advanced at a fixed step with the input held constant over
the step (zero-order hold).  States are deviation variables and start at
zero; `reset()` returns a block to that condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, DivergenceError

__all__ = ["FirstOrderLag", "Integrator", "LeadLag", "SimClock"]


@dataclass
class SimClock:
    """Fixed-step simulation clock: t advances by exactly dt per step."""

    dt: float
    t: float = 0.0

    def __post_init__(self) -> None:
        if self.dt <= 0.0:
            raise ConfigError(f"clock step must be > 0, got {self.dt}")
        self._steps = 0

    def advance(self) -> float:
        self._steps += 1
        self.t = self._steps * self.dt
        return self.t


class FirstOrderLag:
    """K / (1 + sT):  dx/dt = (K*u - x) / T,  output x."""

    def __init__(self, gain: float, time_constant: float) -> None:
        if time_constant <= 0.0:
            raise ConfigError(f"lag time constant must be > 0, got {time_constant}")
        self.gain = gain
        self.time_constant = time_constant
        self.state = 0.0
        self.output = 0.0

    def reset(self) -> None:
        self.state = 0.0
        self.output = 0.0

    def step(self, u: float, dt: float) -> float:
        if not math.isfinite(u):
            raise DivergenceError("non-finite input to first-order lag")
        x = self.state
        ku = self.gain * u
        t = self.time_constant
        k1 = (ku - x) / t
        k2 = (ku - (x + 0.5 * dt * k1)) / t
        k3 = (ku - (x + 0.5 * dt * k2)) / t
        k4 = (ku - (x + dt * k3)) / t
        x += dt * (k1 + 2.0 * (k2 + k3) + k4) / 6.0
        self.state = x
        self.output = x
        return x


class Integrator:
    """K / s:  state advances by K*u*dt.

    For an input held constant over the step all four RK4 stage slopes
    coincide, so the rectangle update is the exact RK4 step.
    """

    def __init__(self, gain: float = 1.0) -> None:
        self.gain = gain
        self.state = 0.0
        self.output = 0.0

    def reset(self) -> None:
        self.state = 0.0
        self.output = 0.0

    def step(self, u: float, dt: float) -> float:
        if not math.isfinite(u):
            raise DivergenceError("non-finite input to integrator")
        x = self.state + self.gain * u * dt
        self.state = x
        self.output = x
        return x


class LeadLag:
    """K (1 + sT1) / (1 + sT2) in controllable canonical form.

    dx/dt = (u - x) / T2,  y = K*((T1/T2)*u + (1 - T1/T2)*x).

    The explicit feedthrough term makes T1 > T2 (lead) legal, and a
    negative T1 yields the non-minimum-phase response used by the hydro
    water-column stage.  DC gain is K for any T1.
    """

    def __init__(self, gain: float, t_num: float, t_den: float) -> None:
        if t_den <= 0.0:
            raise ConfigError(f"lead-lag denominator time constant must be > 0, got {t_den}")
        self.gain = gain
        self.t_num = t_num
        self.t_den = t_den
        self._feedthrough = t_num / t_den
        self.state = 0.0
        self.output = 0.0

    def reset(self) -> None:
        self.state = 0.0
        self.output = 0.0

    def step(self, u: float, dt: float) -> float:
        if not math.isfinite(u):
            raise DivergenceError("non-finite input to lead-lag")
        x = self.state
        t = self.t_den
        k1 = (u - x) / t
        k2 = (u - (x + 0.5 * dt * k1)) / t
        k3 = (u - (x + 0.5 * dt * k2)) / t
        k4 = (u - (x + dt * k3)) / t
        x += dt * (k1 + 2.0 * (k2 + k3) + k4) / 6.0
        ft = self._feedthrough
        y = self.gain * (ft * u + (1.0 - ft) * x)
        self.state = x
        self.output = y
        return y
