"""Aggregated wind plant: deloaded units and the internal redispatch law.

The aggregate splits its secondary-control share across units in proportion
to each unit's measured output.  The raw factors pass through first-order
filters (default T = 4 s) so the redistribution is slower than primary
control transients but faster than the secondary loop itself; their sum is
preserved at 1 whenever at least one unit is producing.
"""

from __future__ import annotations

import math

from .blocks import FirstOrderLag
from .errors import ConfigError, DivergenceError

DEFAULT_RATED_MW = 4.1
DEFAULT_DELOAD_MW = 3.5
DEFAULT_RESPONSE_T_S = 0.5
DEFAULT_FILTER_T_S = 4.0
DEFAULT_DVPP_PARTICIPATION = 0.1


def participation_factors(powers_mw: list[float]) -> list[float]:
    """Output-proportional share factors d_i = p_i / sum(p).

    All powers must be non-negative.  A zero total is degenerate: every
    factor is forced to 0 and the aggregate contributes nothing (the
    area's secondary loop then shifts the effort to the classic units).
    """
    total = 0.0
    for p in powers_mw:
        if p < 0.0:
            raise ConfigError(f"participation factors need non-negative powers, got {p}")
        total += p
    if total <= 0.0:
        return [0.0] * len(powers_mw)
    return [p / total for p in powers_mw]


class WindUnit:
    """Deloaded converter-interfaced unit following its power command through a lag.

    Output is clipped each step to [0, min(rated, available)].  An active
    fault pins the output at the level captured at fault inception; on
    clearing, the unit recovers through its own lag from that level.
    """

    def __init__(
        self,
        unit_id: str,
        rated_mw: float = DEFAULT_RATED_MW,
        deload_mw: float = DEFAULT_DELOAD_MW,
        available_mw: float | None = None,
        response_t_s: float = DEFAULT_RESPONSE_T_S,
        online: bool = True,
    ) -> None:
        if rated_mw <= 0.0:
            raise ConfigError(f"{unit_id}: rated power must be > 0, got {rated_mw}")
        if not 0.0 <= deload_mw <= rated_mw:
            raise ConfigError(f"{unit_id}: deloaded set-point must be in [0, rated], got {deload_mw}")
        if available_mw is None:
            available_mw = rated_mw
        if available_mw < deload_mw:
            raise ConfigError(f"{unit_id}: available power {available_mw} below deloaded set-point {deload_mw}")
        if response_t_s <= 0.0:
            raise ConfigError(f"{unit_id}: response time constant must be > 0, got {response_t_s}")
        self.unit_id = unit_id
        self.rated_mw = rated_mw
        self.deload_mw = deload_mw
        self.available_mw = available_mw
        self.online = online
        self._lag = FirstOrderLag(1.0, response_t_s)
        self.p_out_mw = deload_mw if online else 0.0
        self._lag.state = self.p_out_mw
        self._lag.output = self.p_out_mw
        self.fault_level_mw: float | None = None

    @property
    def ceiling_mw(self) -> float:
        return min(self.rated_mw, self.available_mw)

    def set_online(self, online: bool) -> None:
        if not online:
            self.p_out_mw = 0.0
            self._lag.state = 0.0
            self._lag.output = 0.0
        self.online = online

    def start_fault(self, residual_fraction: float) -> None:
        self.fault_level_mw = residual_fraction * self.p_out_mw

    def clear_fault(self) -> None:
        self.fault_level_mw = None

    def step(self, command_mw: float, dt: float) -> float:
        if not math.isfinite(command_mw):
            raise DivergenceError(f"non-finite command to wind unit {self.unit_id}")
        if not self.online:
            self.p_out_mw = 0.0
            return 0.0
        if self.fault_level_mw is not None:
            # forced output during the fault; recovery restarts from here
            self.p_out_mw = self.fault_level_mw
            self._lag.state = self.fault_level_mw
            self._lag.output = self.fault_level_mw
            return self.p_out_mw
        y = self._lag.step(command_mw, dt)
        ceiling = self.ceiling_mw
        if y > ceiling:
            y = ceiling
        elif y < 0.0:
            y = 0.0
        self._lag.state = y
        self._lag.output = y
        self.p_out_mw = y
        return y


class Dvpp:
    """Collection of wind units operated as one dispatchable secondary-control unit."""

    def __init__(
        self,
        units: list[WindUnit],
        participation: float = DEFAULT_DVPP_PARTICIPATION,
        filter_t_s: float = DEFAULT_FILTER_T_S,
    ) -> None:
        if not units:
            raise ConfigError("a DVPP needs at least one wind unit")
        if not 0.0 <= participation <= 1.0:
            raise ConfigError(f"DVPP participation factor must be in [0, 1], got {participation}")
        if filter_t_s <= 0.0:
            raise ConfigError(f"redispatch filter time constant must be > 0, got {filter_t_s}")
        self.units = units
        self.participation = participation
        self.filter_t_s = filter_t_s
        self.d_raw = participation_factors([u.p_out_mw for u in units])
        self._filters = []
        for d0 in self.d_raw:
            f = FirstOrderLag(1.0, filter_t_s)
            # filters track an absolute signal; start settled at the raw factor
            f.state = d0
            f.output = d0
            self._filters.append(f)
        self.d_filtered = list(self.d_raw)

    @property
    def schedule_mw(self) -> float:
        """Scheduled aggregate output: the sum of all deloaded set-points."""
        return sum(u.deload_mw for u in self.units)

    @property
    def total_output_mw(self) -> float:
        return sum(u.p_out_mw for u in self.units)

    def redispatch_step(self, sfc_command_mw: float, dt: float) -> list[float]:
        """One redispatch update; returns the per-unit power commands [MW].

        Raw factors are re-evaluated from the measured unit outputs, filtered,
        and applied as ``deload_i + d_i * sfc_command``.  Each command is
        clipped to the unit's ceiling; offline units are commanded to 0.
        A unit saturating at its ceiling leaves its shortfall to the area's
        secondary loop, never re-split inside the aggregate within the step.
        """
        if not math.isfinite(sfc_command_mw):
            raise DivergenceError("non-finite secondary command to DVPP")
        self.d_raw = participation_factors([u.p_out_mw for u in self.units])
        self.d_filtered = [f.step(d, dt) for f, d in zip(self._filters, self.d_raw)]
        commands = []
        for unit, d in zip(self.units, self.d_filtered):
            if not unit.online:
                commands.append(0.0)
                continue
            cmd = unit.deload_mw + d * sfc_command_mw
            ceiling = unit.ceiling_mw
            if cmd > ceiling:
                cmd = ceiling
            elif cmd < 0.0:
                cmd = 0.0
            commands.append(cmd)
        return commands

    def step(self, sfc_command_mw: float, dt: float) -> float:
        """Redispatch and advance every unit; returns the aggregate output [MW]."""
        commands = self.redispatch_step(sfc_command_mw, dt)
        total = 0.0
        for unit, cmd in zip(self.units, commands):
            total += unit.step(cmd, dt)
        return total
