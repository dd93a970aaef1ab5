"""Multi-area power-system frequency simulator with a dynamic virtual power
plant participating directly in secondary frequency control."""

from .agc import AgcController, allocate_sfc, compute_ace
from .blocks import FirstOrderLag, Integrator, LeadLag, SimClock
from .config import SimConfig, build_system, builtin_config, load_config, save_config
from .dvpp import Dvpp, WindUnit, participation_factors
from .errors import ConfigError, DivergenceError
from .gde import GridDynamicEquivalent, three_phase_voltages
from .generators import GeneratorUnit, default_unit
from .network import Area, MultiAreaSystem, TieLine
from .output import RunSummary, SimOutput, emit_outputs, summarize
from .scenario import Fault, LoadStep, Scenario, UnitTrip, builtin_scenarios
from .simulate import run

__version__ = "0.1.0"

__all__ = [
    "AgcController",
    "Area",
    "ConfigError",
    "DivergenceError",
    "Dvpp",
    "Fault",
    "FirstOrderLag",
    "GeneratorUnit",
    "GridDynamicEquivalent",
    "Integrator",
    "LeadLag",
    "LoadStep",
    "MultiAreaSystem",
    "RunSummary",
    "Scenario",
    "SimClock",
    "SimConfig",
    "SimOutput",
    "TieLine",
    "UnitTrip",
    "WindUnit",
    "allocate_sfc",
    "build_system",
    "builtin_config",
    "builtin_scenarios",
    "compute_ace",
    "default_unit",
    "emit_outputs",
    "load_config",
    "participation_factors",
    "run",
    "save_config",
    "summarize",
    "three_phase_voltages",
]
