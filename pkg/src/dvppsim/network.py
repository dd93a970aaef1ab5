"""Multi-area assembly: control areas, tie-line dynamics, and power bookkeeping.

An area bundles its classic units, an optional wind aggregate, the grid
dynamic equivalent providing its frequency, and a secondary controller.
Areas exchange power over tie-lines whose flow deviation integrates the
inter-area frequency difference.  Per-area power balances are algebraic
sums of injections; there is no network solution.
"""

from __future__ import annotations

import math

from .agc import AgcController, allocate_sfc, compute_ace
from .dvpp import Dvpp
from .errors import ConfigError, DivergenceError
from .gde import TWO_PI, GridDynamicEquivalent
from .generators import GeneratorUnit

# synchronizing coefficient giving an effective 0.5 pu/s per Hz of frequency difference
DEFAULT_T12 = 0.5 / TWO_PI

FACTOR_SUM_TOL = 1e-9


class TieLine:
    """Interchange deviation between two areas, positive from -> to.

    d(dp_tie)/dt = 2*pi*t12*(df_from - df_to), with frequency deviations in Hz.
    The inputs are held over a step, so the rectangle update is the exact
    RK4 advance.
    """

    def __init__(self, from_area: str, to_area: str, t12: float = DEFAULT_T12) -> None:
        if t12 <= 0.0:
            raise ConfigError(f"tie-line synchronizing coefficient must be > 0, got {t12}")
        if from_area == to_area:
            raise ConfigError(f"tie-line endpoints must differ, got {from_area!r} twice")
        self.from_area = from_area
        self.to_area = to_area
        self.t12 = t12
        self._gain = TWO_PI * t12  # pu/s per Hz of frequency difference
        self.delta_p_pu = 0.0

    def step(self, delta_f_from_hz: float, delta_f_to_hz: float, dt: float) -> float:
        self.delta_p_pu += self._gain * (delta_f_from_hz - delta_f_to_hz) * dt
        return self.delta_p_pu


def default_bias(damping_pu: float, f0_hz: float, generators: list[GeneratorUnit]) -> float:
    """Classic frequency-response bias: damping plus aggregate droop, in pu/Hz."""
    return damping_pu / f0_hz + sum(1.0 / g.droop_hz_per_pu for g in generators)


class Area:
    """One control area; owns its units and steps them sequentially."""

    def __init__(
        self,
        area_id: str,
        gde: GridDynamicEquivalent,
        agc: AgcController,
        generators: list[GeneratorUnit],
        dvpp: Dvpp | None = None,
        base_mva: float = 100.0,
        nominal_load_mw: float = 100.0,
    ) -> None:
        if not generators and dvpp is None:
            raise ConfigError(f"area {area_id!r} has no secondary-control participants")
        if base_mva <= 0.0:
            raise ConfigError(f"area {area_id!r}: base power must be > 0, got {base_mva}")
        self.area_id = area_id
        self.gde = gde
        self.agc = agc
        self.generators = generators
        self.dvpp = dvpp
        self.base_mva = base_mva
        self.nominal_load_mw = nominal_load_mw
        self.load_delta_pu = 0.0
        self.factors = [g.participation for g in generators]
        if dvpp is not None:
            self.factors.append(dvpp.participation)
        total = sum(self.factors)
        if abs(total - 1.0) > FACTOR_SUM_TOL:
            raise ConfigError(
                f"area {area_id!r}: participation factors must sum to 1, got {total!r}"
            )

    @property
    def delta_f_hz(self) -> float:
        return self.gde.delta_f_hz

    def dvpp_delta_pu(self) -> float:
        """Wind-aggregate deviation from its schedule, on the area base."""
        if self.dvpp is None:
            return 0.0
        return (self.dvpp.total_output_mw - self.dvpp.schedule_mw) / self.base_mva

    def ace_pu(self, tie_export_pu: float) -> float:
        return compute_ace(tie_export_pu, self.agc.bias_pu_per_hz, self.delta_f_hz)

    def power_balance_pu(self, tie_export_pu: float) -> float:
        """Net accelerating power seen by the grid equivalent [pu]."""
        gen = sum(g.p_mech_delta_pu for g in self.generators) + self.dvpp_delta_pu()
        return gen - self.load_delta_pu - tie_export_pu

    def step(self, dt: float, tie_export_pu: float) -> None:
        try:
            df = self.delta_f_hz
            ace = compute_ace(tie_export_pu, self.agc.bias_pu_per_hz, df)
            command = self.agc.step(ace, dt)
            shares = allocate_sfc(command, self.factors)
            for gen, share in zip(self.generators, shares):
                gen.step(df, share, dt)
            if self.dvpp is not None:
                self.dvpp.step(shares[-1] * self.base_mva, dt)
            p_gen = sum(g.p_mech_delta_pu for g in self.generators) + self.dvpp_delta_pu()
            self.gde.step(p_gen, self.load_delta_pu + tie_export_pu, dt)
        except DivergenceError as exc:
            raise DivergenceError(f"area {self.area_id}: {exc}") from None


class MultiAreaSystem:
    """Areas plus tie-lines, stepped by one sequential loop."""

    def __init__(self, areas: list[Area], tie_lines: list[TieLine]) -> None:
        if not areas:
            raise ConfigError("a system needs at least one area")
        ids = [a.area_id for a in areas]
        if len(set(ids)) != len(ids):
            raise ConfigError(f"duplicate area ids: {ids}")
        self.areas = areas
        self._by_id = {a.area_id: a for a in areas}
        for line in tie_lines:
            for end in (line.from_area, line.to_area):
                if end not in self._by_id:
                    raise ConfigError(f"tie-line references unknown area {end!r}")
        self.tie_lines = tie_lines
        self.t = 0.0

    def area(self, area_id: str) -> Area:
        try:
            return self._by_id[area_id]
        except KeyError:
            raise ConfigError(f"unknown area {area_id!r}") from None

    def tie_export_pu(self, area_id: str) -> float:
        """Net scheduled-deviation export of an area over all its tie-lines [pu]."""
        export = 0.0
        for line in self.tie_lines:
            if line.from_area == area_id:
                export += line.delta_p_pu
            elif line.to_area == area_id:
                export -= line.delta_p_pu
        return export

    def step(self, dt: float) -> None:
        """Advance the whole system by one step of size dt."""
        exports = {a.area_id: self.tie_export_pu(a.area_id) for a in self.areas}
        for area in self.areas:
            area.step(dt, exports[area.area_id])
        for line in self.tie_lines:
            line.step(
                self._by_id[line.from_area].delta_f_hz,
                self._by_id[line.to_area].delta_f_hz,
                dt,
            )
        self.t += dt
        for area in self.areas:
            if not math.isfinite(area.gde.omega_pu):
                raise DivergenceError(f"area {area.area_id}: frequency is non-finite")
