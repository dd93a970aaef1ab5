"""Fixed-step execution of a configured multi-area run."""

from __future__ import annotations

import numpy as np

from .blocks import SimClock
from .config import SimConfig, build_system
from .errors import DivergenceError
from .gde import three_phase_voltages
from .network import MultiAreaSystem
from .output import ChannelMap, SimOutput
from .scenario import EventEngine


class Recorder:
    """Collects one row per step; all channels at full rate, in human units."""

    def __init__(self, system: MultiAreaSystem, config: SimConfig) -> None:
        self.system = system
        self.three_phase_enabled = config.output.three_phase
        self.t: list[float] = []
        self.chmap = m = ChannelMap()
        self._cols: dict[str, list[float]] = {}
        self._tp_cols: dict[str, list[float]] = {}
        for area in system.areas:
            a = area.area_id
            m.areas.append(a)
            m.delta_f[a] = self._new(f"{a}_delta_f_hz")
            m.ace[a] = self._new(f"{a}_ace_pu")
            m.load[a] = self._new(f"{a}_load_mw")
            m.v_rms[a] = self._new(f"{a}_v_rms_pu")
            m.unit_delta[a] = []
            m.classic_delta[a] = []
            for gen in area.generators:
                col = self._new(f"{a}_{gen.unit_id}_dp_mw")
                m.classic_delta[a].append(col)
                m.unit_delta[a].append((col, 0.0))
            m.wind_power[a] = []
            m.d_filtered[a] = []
            if area.dvpp is not None:
                for unit in area.dvpp.units:
                    col = self._new(f"{a}_{unit.unit_id}_p_mw")
                    m.wind_power[a].append(col)
                    m.unit_delta[a].append((col, unit.deload_mw))
                    m.d_filtered[a].append(self._new(f"{a}_{unit.unit_id}_d_filtered"))
                m.dvpp_total[a] = self._new(f"{a}_dvpp_total_mw")
                m.dvpp_schedule[a] = area.dvpp.schedule_mw
            if self.three_phase_enabled:
                for phase in ("va", "vb", "vc"):
                    self._tp_cols[f"{a}_{phase}_pu"] = []
        for line in system.tie_lines:
            m.tie[f"{line.from_area}->{line.to_area}"] = self._new(
                f"tie_{line.from_area}_{line.to_area}_dp_pu"
            )
        self.event_times = sorted({ev.time_s for ev in config.events})
        self.name = config.name
        self.dt_s = config.dt_s

    def _new(self, name: str) -> str:
        self._cols[name] = []
        return name

    def record(self, t: float, engine: EventEngine) -> None:
        system = self.system
        m = self.chmap
        cols = self._cols
        self.t.append(t)
        exports = {a.area_id: system.tie_export_pu(a.area_id) for a in system.areas}
        for area in system.areas:
            a = area.area_id
            df = area.delta_f_hz
            cols[m.delta_f[a]].append(df)
            cols[m.ace[a]].append(exports[a] + area.agc.bias_pu_per_hz * df)
            cols[m.load[a]].append(area.nominal_load_mw + area.load_delta_pu * area.base_mva)
            v_rms = engine.rms_voltage_pu(area)
            cols[m.v_rms[a]].append(v_rms)
            for gen, col in zip(area.generators, m.classic_delta[a]):
                cols[col].append(gen.p_mech_delta_pu * area.base_mva)
            if area.dvpp is not None:
                for unit, col, dcol, d in zip(
                    area.dvpp.units, m.wind_power[a], m.d_filtered[a], area.dvpp.d_filtered
                ):
                    cols[col].append(unit.p_out_mw)
                    cols[dcol].append(d)
                cols[m.dvpp_total[a]].append(area.dvpp.total_output_mw)
            if self.three_phase_enabled:
                va, vb, vc = three_phase_voltages(v_rms, area.gde.theta_rad)
                self._tp_cols[f"{a}_va_pu"].append(va)
                self._tp_cols[f"{a}_vb_pu"].append(vb)
                self._tp_cols[f"{a}_vc_pu"].append(vc)
        for line in system.tie_lines:
            cols[m.tie[f"{line.from_area}->{line.to_area}"]].append(line.delta_p_pu)

    def finish(self) -> SimOutput:
        data = {name: np.asarray(vals, dtype=float) for name, vals in self._cols.items()}
        three_phase = None
        if self.three_phase_enabled:
            three_phase = {
                name: np.asarray(vals, dtype=float) for name, vals in self._tp_cols.items()
            }
        return SimOutput(
            name=self.name,
            dt_s=self.dt_s,
            t=np.asarray(self.t, dtype=float),
            data=data,
            chmap=self.chmap,
            event_times=self.event_times,
            three_phase=three_phase,
        )


def run(config: SimConfig) -> SimOutput:
    """Step the configured system from t=0 to the configured duration.

    Returns the full-rate time series.  Raises ConfigError before stepping on
    invalid input and DivergenceError, naming the time and signal, if any
    state becomes non-finite.
    """
    system = build_system(config)
    dt = config.dt_s
    engine = EventEngine(config.events, dt, system)
    recorder = Recorder(system, config)
    clock = SimClock(dt)
    n_steps = int(round(config.duration_s / dt))
    for i in range(n_steps):
        engine.apply(i, system)
        try:
            system.step(dt)
        except DivergenceError as exc:
            raise DivergenceError(f"diverged at t={clock.t + dt:.3f} s: {exc}") from None
        recorder.record(clock.advance(), engine)
    return recorder.finish()
