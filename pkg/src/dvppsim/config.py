"""Configuration schema: dataclasses, YAML round-trip, and system assembly.

Configs use human units (MW, Hz, seconds); internals run in per-unit on the
area base.  The schema is versioned with ``schema_version`` and documented
in the README.  ``scenario: <name>`` pulls a built-in event list; an
explicit ``events:`` list is the inline alternative.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from pathlib import Path

import yaml

from . import agc as agc_mod
from . import dvpp as dvpp_mod
from . import gde as gde_mod
from . import generators as gen_mod
from .agc import AgcController
from .dvpp import Dvpp, WindUnit
from .errors import ConfigError
from .gde import GridDynamicEquivalent
from .generators import GeneratorUnit
from .network import DEFAULT_T12, Area, MultiAreaSystem, TieLine, default_bias
from .scenario import Fault, LoadStep, Scenario, UnitTrip, builtin_scenarios

SCHEMA_VERSION = 1

DEFAULT_DT_S = 0.01
DEFAULT_DURATION_S = 200.0
DEFAULT_DECIMATION = 10
DEFAULT_CHANNELS = ("frequency", "powers", "ace", "tie", "voltage")

# Benchmark grid-equivalent values, used as the config-schema defaults.  The
# explicit secondary controllers are the modelled frequency restoration, so the
# equivalents run without their internal stabiliser; the higher inertia keeps
# the hydro droop loop well damped at the primary crossover.
BENCHMARK_K_REST_PER_S = 0.0
BENCHMARK_INERTIA_H_S = 10.0


@dataclass
class GeneratorConfig:
    id: str
    tech: str
    droop_hz_per_pu: float = gen_mod.DEFAULT_DROOP_HZ_PER_PU
    participation: float = gen_mod.DEFAULT_PARTICIPATION
    headroom_pu: float = gen_mod.DEFAULT_HEADROOM_PU


@dataclass
class WindUnitConfig:
    id: str
    rated_mw: float = dvpp_mod.DEFAULT_RATED_MW
    deload_mw: float = dvpp_mod.DEFAULT_DELOAD_MW
    available_mw: float | None = None
    response_t_s: float = dvpp_mod.DEFAULT_RESPONSE_T_S


@dataclass
class DvppConfig:
    units: list[WindUnitConfig]
    participation: float = dvpp_mod.DEFAULT_DVPP_PARTICIPATION
    filter_t_s: float = dvpp_mod.DEFAULT_FILTER_T_S


@dataclass
class GdeConfig:
    inertia_h_s: float = BENCHMARK_INERTIA_H_S
    damping_pu: float = gde_mod.DEFAULT_DAMPING_PU
    k_rest_per_s: float = BENCHMARK_K_REST_PER_S
    f0_hz: float = gde_mod.DEFAULT_F0_HZ
    voltage_pu: float = gde_mod.DEFAULT_VOLTAGE_PU


@dataclass
class AgcConfig:
    kp: float = agc_mod.DEFAULT_KP
    ki_per_s: float = agc_mod.DEFAULT_KI_PER_S
    anti_windup_pu: float = agc_mod.DEFAULT_ANTI_WINDUP_PU
    bias_pu_per_hz: float | None = None  # None: damping/f0 + sum(1/droop)


@dataclass
class AreaConfig:
    id: str
    generators: list[GeneratorConfig]
    dvpp: DvppConfig | None = None
    gde: GdeConfig = field(default_factory=GdeConfig)
    agc: AgcConfig = field(default_factory=AgcConfig)
    base_mva: float = 100.0
    nominal_load_mw: float = 100.0


@dataclass
class TieLineConfig:
    from_area: str
    to_area: str
    t12: float = DEFAULT_T12


@dataclass
class OutputConfig:
    csv: str | None = None  # default: <plot_dir>/<name>.csv
    plot_dir: str = "out"
    channels: tuple[str, ...] = DEFAULT_CHANNELS
    decimation: int = DEFAULT_DECIMATION
    three_phase: bool = False


@dataclass
class SimConfig:
    name: str
    duration_s: float
    areas: list[AreaConfig]
    tie_lines: list[TieLineConfig] = field(default_factory=list)
    events: list = field(default_factory=list)
    dt_s: float = DEFAULT_DT_S
    output: OutputConfig = field(default_factory=OutputConfig)
    schema_version: int = SCHEMA_VERSION

    def csv_path(self) -> Path:
        if self.output.csv is not None:
            return Path(self.output.csv)
        return Path(self.output.plot_dir) / f"{self.name}.csv"


def default_area1() -> AreaConfig:
    """Benchmark area 1: three classic units plus a two-unit wind aggregate."""
    return AreaConfig(
        id="area1",
        generators=[
            GeneratorConfig("thermal", "thermal"),
            GeneratorConfig("hydro", "hydro"),
            GeneratorConfig("gas", "gas"),
        ],
        dvpp=DvppConfig(units=[WindUnitConfig("wt1"), WindUnitConfig("wt2")]),
    )


def default_area2() -> AreaConfig:
    """Benchmark area 2: three classic units only, equal participation."""
    third = 1.0 / 3.0
    return AreaConfig(
        id="area2",
        generators=[
            GeneratorConfig("thermal", "thermal", participation=third),
            GeneratorConfig("hydro", "hydro", participation=third),
            GeneratorConfig("gas", "gas", participation=third),
        ],
    )


def builtin_config(name: str) -> SimConfig:
    """Complete runnable config for a built-in scenario name."""
    scenarios = builtin_scenarios()
    if name not in scenarios:
        raise ConfigError(f"unknown scenario {name!r}; available: {sorted(scenarios)}")
    sc = scenarios[name]
    return SimConfig(
        name=sc.name,
        duration_s=sc.duration_s,
        areas=[default_area1(), default_area2()],
        tie_lines=[TieLineConfig("area1", "area2")],
        events=list(sc.events),
    )


# ---------------------------------------------------------------------------
# system assembly
# ---------------------------------------------------------------------------

def build_system(cfg: SimConfig) -> MultiAreaSystem:
    """Instantiate the runtime system from a config; raises ConfigError on bad input."""
    if cfg.duration_s < 0.0:
        raise ConfigError(f"duration must be >= 0, got {cfg.duration_s}")
    if cfg.dt_s <= 0.0:
        raise ConfigError(f"dt must be > 0, got {cfg.dt_s}")
    if cfg.output.decimation < 1:
        raise ConfigError(f"decimation must be >= 1, got {cfg.output.decimation}")
    areas = []
    for ac in cfg.areas:
        gens = [
            GeneratorUnit(g.id, g.tech, g.droop_hz_per_pu, g.participation, g.headroom_pu)
            for g in ac.generators
        ]
        gen_ids = [g.unit_id for g in gens]
        if len(set(gen_ids)) != len(gen_ids):
            raise ConfigError(f"area {ac.id!r}: duplicate generator ids {gen_ids}")
        dvpp = None
        if ac.dvpp is not None:
            units = [
                WindUnit(w.id, w.rated_mw, w.deload_mw, w.available_mw, w.response_t_s)
                for w in ac.dvpp.units
            ]
            wind_ids = [u.unit_id for u in units]
            if len(set(wind_ids)) != len(wind_ids):
                raise ConfigError(f"area {ac.id!r}: duplicate wind unit ids {wind_ids}")
            dvpp = Dvpp(units, ac.dvpp.participation, ac.dvpp.filter_t_s)
        gde = GridDynamicEquivalent(
            ac.gde.inertia_h_s, ac.gde.damping_pu, ac.gde.k_rest_per_s,
            ac.gde.f0_hz, ac.gde.voltage_pu,
        )
        bias = ac.agc.bias_pu_per_hz
        if bias is None:
            bias = default_bias(ac.gde.damping_pu, ac.gde.f0_hz, gens)
        agc = AgcController(bias, ac.agc.kp, ac.agc.ki_per_s, ac.agc.anti_windup_pu)
        areas.append(Area(ac.id, gde, agc, gens, dvpp, ac.base_mva, ac.nominal_load_mw))
    ties = [TieLine(t.from_area, t.to_area, t.t12) for t in cfg.tie_lines]
    return MultiAreaSystem(areas, ties)


# ---------------------------------------------------------------------------
# YAML round-trip
# ---------------------------------------------------------------------------

_EVENT_KINDS = {"load_step": LoadStep, "unit_trip": UnitTrip, "fault": Fault}


def _event_to_dict(ev) -> dict:
    if isinstance(ev, LoadStep):
        return {"kind": "load_step", "time_s": ev.time_s, "area": ev.area, "delta_mw": ev.delta_mw}
    if isinstance(ev, UnitTrip):
        return {
            "kind": "unit_trip", "time_s": ev.time_s, "area": ev.area,
            "unit": ev.unit, "offline": ev.offline,
        }
    if isinstance(ev, Fault):
        return {
            "kind": "fault", "time_s": ev.time_s, "area": ev.area, "units": list(ev.units),
            "duration_s": ev.duration_s, "residual_fraction": ev.residual_fraction,
            "voltage_sag_pu": ev.voltage_sag_pu,
        }
    raise ConfigError(f"unknown event type {type(ev).__name__}")


def _event_from_dict(d: dict) -> LoadStep | UnitTrip | Fault:
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError(f"event entries need a 'kind' field, got {d!r}")
    kind = d["kind"]
    try:
        if kind == "load_step":
            return LoadStep(float(d["time_s"]), str(d["area"]), float(d["delta_mw"]))
        if kind == "unit_trip":
            return UnitTrip(
                float(d["time_s"]), str(d["area"]), str(d["unit"]),
                bool(d.get("offline", True)),
            )
        if kind == "fault":
            return Fault(
                float(d["time_s"]), str(d["area"]), tuple(str(u) for u in d["units"]),
                float(d.get("duration_s", 0.1)), float(d.get("residual_fraction", 0.0)),
                float(d.get("voltage_sag_pu", 0.1)),
            )
    except KeyError as exc:
        raise ConfigError(f"event of kind {kind!r} is missing field {exc}") from None
    raise ConfigError(f"unknown event kind {kind!r}; expected one of {sorted(_EVENT_KINDS)}")


def config_to_dict(cfg: SimConfig) -> dict:
    d = {
        "schema_version": cfg.schema_version,
        "name": cfg.name,
        "duration_s": cfg.duration_s,
        "dt_s": cfg.dt_s,
        "areas": [],
        "tie_lines": [
            {"from": t.from_area, "to": t.to_area, "t12": t.t12} for t in cfg.tie_lines
        ],
        "events": [_event_to_dict(ev) for ev in cfg.events],
        "output": {
            "csv": cfg.output.csv,
            "plot_dir": cfg.output.plot_dir,
            "channels": list(cfg.output.channels),
            "decimation": cfg.output.decimation,
            "three_phase": cfg.output.three_phase,
        },
    }
    for ac in cfg.areas:
        ad = {
            "id": ac.id,
            "base_mva": ac.base_mva,
            "nominal_load_mw": ac.nominal_load_mw,
            "gde": asdict(ac.gde),
            "agc": asdict(ac.agc),
            "generators": [asdict(g) for g in ac.generators],
        }
        if ac.dvpp is not None:
            ad["dvpp"] = {
                "participation": ac.dvpp.participation,
                "filter_t_s": ac.dvpp.filter_t_s,
                "units": [asdict(w) for w in ac.dvpp.units],
            }
        d["areas"].append(ad)
    return d


def _parse_area(d: dict) -> AreaConfig:
    if "id" not in d:
        raise ConfigError("area entries need an 'id' field")
    gens = [
        GeneratorConfig(
            str(g["id"]), str(g["tech"]),
            float(g.get("droop_hz_per_pu", gen_mod.DEFAULT_DROOP_HZ_PER_PU)),
            float(g.get("participation", gen_mod.DEFAULT_PARTICIPATION)),
            float(g.get("headroom_pu", gen_mod.DEFAULT_HEADROOM_PU)),
        )
        for g in d.get("generators", [])
    ]
    dvpp = None
    if d.get("dvpp") is not None:
        dd = d["dvpp"]
        units = [
            WindUnitConfig(
                str(w["id"]),
                float(w.get("rated_mw", dvpp_mod.DEFAULT_RATED_MW)),
                float(w.get("deload_mw", dvpp_mod.DEFAULT_DELOAD_MW)),
                None if w.get("available_mw") is None else float(w["available_mw"]),
                float(w.get("response_t_s", dvpp_mod.DEFAULT_RESPONSE_T_S)),
            )
            for w in dd.get("units", [])
        ]
        dvpp = DvppConfig(
            units,
            float(dd.get("participation", dvpp_mod.DEFAULT_DVPP_PARTICIPATION)),
            float(dd.get("filter_t_s", dvpp_mod.DEFAULT_FILTER_T_S)),
        )
    gd = d.get("gde", {}) or {}
    gde = GdeConfig(
        float(gd.get("inertia_h_s", BENCHMARK_INERTIA_H_S)),
        float(gd.get("damping_pu", gde_mod.DEFAULT_DAMPING_PU)),
        float(gd.get("k_rest_per_s", BENCHMARK_K_REST_PER_S)),
        float(gd.get("f0_hz", gde_mod.DEFAULT_F0_HZ)),
        float(gd.get("voltage_pu", gde_mod.DEFAULT_VOLTAGE_PU)),
    )
    agd = d.get("agc", {}) or {}
    bias = agd.get("bias_pu_per_hz")
    agc = AgcConfig(
        float(agd.get("kp", agc_mod.DEFAULT_KP)),
        float(agd.get("ki_per_s", agc_mod.DEFAULT_KI_PER_S)),
        float(agd.get("anti_windup_pu", agc_mod.DEFAULT_ANTI_WINDUP_PU)),
        None if bias is None else float(bias),
    )
    return AreaConfig(
        id=str(d["id"]),
        generators=gens,
        dvpp=dvpp,
        gde=gde,
        agc=agc,
        base_mva=float(d.get("base_mva", 100.0)),
        nominal_load_mw=float(d.get("nominal_load_mw", 100.0)),
    )


def config_from_dict(d: dict) -> SimConfig:
    if not isinstance(d, dict):
        raise ConfigError(f"config root must be a mapping, got {type(d).__name__}")
    version = d.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {version!r} (supported: {SCHEMA_VERSION})")
    if "scenario" in d and d.get("events"):
        raise ConfigError("give either 'scenario' (built-in name) or 'events', not both")
    if "scenario" in d:
        base = builtin_config(str(d["scenario"]))
        events = base.events
        name = d.get("name", base.name)
        duration = float(d.get("duration_s", base.duration_s))
    else:
        events = [_event_from_dict(e) for e in d.get("events", [])]
        name = d.get("name", "run")
        if "duration_s" not in d:
            raise ConfigError("config needs a 'duration_s' field")
        duration = float(d["duration_s"])
    if "areas" not in d or not d["areas"]:
        raise ConfigError("config needs a non-empty 'areas' list")
    areas = [_parse_area(a) for a in d["areas"]]
    ties = [
        TieLineConfig(str(t["from"]), str(t["to"]), float(t.get("t12", DEFAULT_T12)))
        for t in d.get("tie_lines", [])
    ]
    od = d.get("output", {}) or {}
    output = OutputConfig(
        csv=od.get("csv"),
        plot_dir=str(od.get("plot_dir", "out")),
        channels=tuple(od.get("channels", DEFAULT_CHANNELS)),
        decimation=int(od.get("decimation", DEFAULT_DECIMATION)),
        three_phase=bool(od.get("three_phase", False)),
    )
    return SimConfig(
        name=str(name),
        duration_s=duration,
        areas=areas,
        tie_lines=ties,
        events=events,
        dt_s=float(d.get("dt_s", DEFAULT_DT_S)),
        output=output,
        schema_version=int(version),
    )


def load_config(path: str | Path) -> SimConfig:
    path = Path(path)
    try:
        raw = yaml.safe_load(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from None
    return config_from_dict(raw)


def save_config(cfg: SimConfig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(yaml.safe_dump(config_to_dict(cfg), sort_keys=False))
    return path


def scenario_of(cfg: SimConfig) -> Scenario:
    """Scenario view of a config (used by the recorder for event metadata)."""
    return Scenario(cfg.name, "", cfg.duration_s, list(cfg.events))
