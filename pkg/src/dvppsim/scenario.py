"""Timed disturbance events and the built-in experiment set.

Events are snapped to the step grid and fire exactly once, at the start of
the step whose index rounds closest to the event time.  A fault schedules
its own clearing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ConfigError
from .network import MultiAreaSystem

DEFAULT_FAULT_SAG_PU = 0.1


@dataclass(frozen=True)
class LoadStep:
    time_s: float
    area: str
    delta_mw: float


@dataclass(frozen=True)
class UnitTrip:
    time_s: float
    area: str
    unit: str
    offline: bool = True


@dataclass(frozen=True)
class Fault:
    """Temporary output collapse of wind units at a bus, with an rms voltage sag.

    The affected units are forced to residual_fraction of their pre-fault
    output for the duration, then released to recover through their own
    response lags.  The sag only affects the recorded voltage channels.
    """

    time_s: float
    area: str
    units: tuple[str, ...]
    duration_s: float = 0.1
    residual_fraction: float = 0.0
    voltage_sag_pu: float = DEFAULT_FAULT_SAG_PU


Event = LoadStep | UnitTrip | Fault


@dataclass
class Scenario:
    name: str
    description: str
    duration_s: float
    events: list = field(default_factory=list)


def builtin_scenarios() -> dict[str, Scenario]:
    """The four shipped experiments, all on the default two-area benchmark."""
    nominal_events = [LoadStep(40.0, "area1", 6.0)]
    return {
        "nominal": Scenario(
            "nominal",
            "area-1 load +6 MW at t=40 s; 90/10 split between classic units and the DVPP",
            200.0,
            list(nominal_events),
        ),
        "wt2-trip": Scenario(
            "wt2-trip",
            "nominal events plus loss of wind unit wt2 at t=80 s; redispatch shifts the share to wt1",
            200.0,
            list(nominal_events) + [UnitTrip(80.0, "area1", "wt2")],
        ),
        "two-area": Scenario(
            "two-area",
            "simultaneous load steps at t=40 s: +6 MW in area 1 and +10 MW in area 2",
            200.0,
            [LoadStep(40.0, "area1", 6.0), LoadStep(40.0, "area2", 10.0)],
        ),
        "short-circuit": Scenario(
            "short-circuit",
            "nominal events plus a 100 ms fault at the wt1 bus at t=90 s; collapse and recovery",
            200.0,
            list(nominal_events) + [Fault(90.0, "area1", ("wt1",))],
        ),
    }


def validate_events(events: list, system: MultiAreaSystem) -> None:
    """Reject events with unresolvable references or bad parameters at load time."""
    for ev in events:
        if ev.time_s < 0.0:
            raise ConfigError(f"event time must be >= 0, got {ev.time_s}")
        area = system.area(ev.area)  # raises ConfigError on unknown id
        if isinstance(ev, LoadStep):
            continue
        wind_ids = {u.unit_id for u in area.dvpp.units} if area.dvpp is not None else set()
        if isinstance(ev, UnitTrip):
            if ev.unit not in wind_ids:
                raise ConfigError(
                    f"trip references unknown wind unit {ev.unit!r} in area {ev.area!r}"
                )
        elif isinstance(ev, Fault):
            if ev.duration_s <= 0.0:
                raise ConfigError(f"fault duration must be > 0, got {ev.duration_s}")
            if not 0.0 <= ev.residual_fraction <= 1.0:
                raise ConfigError(
                    f"fault residual fraction must be in [0, 1], got {ev.residual_fraction}"
                )
            for uid in ev.units:
                if uid not in wind_ids:
                    raise ConfigError(
                        f"fault references unknown wind unit {uid!r} in area {ev.area!r}"
                    )
        else:
            raise ConfigError(f"unknown event type {type(ev).__name__}")


class EventEngine:
    """Applies a sorted event list to a system on the step grid.

    Each event fires once, at step index round(time/dt); fault clearings are
    scheduled the same way at time + duration.  Events landing at or beyond
    the end of the run never fire.
    """

    def __init__(self, events: list, dt: float, system: MultiAreaSystem) -> None:
        validate_events(events, system)
        self.dt = dt
        actions: list[tuple[int, int, object, bool]] = []
        for order, ev in enumerate(events):
            idx = round(ev.time_s / dt)
            actions.append((idx, order, ev, True))
            if isinstance(ev, Fault):
                clear_idx = round((ev.time_s + ev.duration_s) / dt)
                actions.append((clear_idx, order, ev, False))
        actions.sort(key=lambda a: (a[0], a[1]))
        self._actions = actions
        self._next = 0
        self.active_sags: dict[str, float] = {}

    def apply(self, step_index: int, system: MultiAreaSystem) -> None:
        while self._next < len(self._actions) and self._actions[self._next][0] <= step_index:
            _, _, ev, starting = self._actions[self._next]
            self._next += 1
            area = system.area(ev.area)
            if isinstance(ev, LoadStep):
                area.load_delta_pu += ev.delta_mw / area.base_mva
            elif isinstance(ev, UnitTrip):
                _wind_unit(area, ev.unit).set_online(not ev.offline)
            elif isinstance(ev, Fault):
                if starting:
                    for uid in ev.units:
                        _wind_unit(area, uid).start_fault(ev.residual_fraction)
                    self.active_sags[ev.area] = ev.voltage_sag_pu
                else:
                    for uid in ev.units:
                        _wind_unit(area, uid).clear_fault()
                    self.active_sags.pop(ev.area, None)

    def rms_voltage_pu(self, area) -> float:
        """Recorded bus rms voltage: the equivalent's amplitude, sagged during a fault."""
        sag = self.active_sags.get(area.area_id)
        return area.gde.voltage_pu if sag is None else sag


def _wind_unit(area, unit_id: str):
    for u in area.dvpp.units:
        if u.unit_id == unit_id:
            return u
    raise ConfigError(f"unknown wind unit {unit_id!r} in area {area.area_id!r}")
