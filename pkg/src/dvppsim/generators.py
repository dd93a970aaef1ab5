"""Classic equivalent generating units: primary droop plus governor-turbine dynamics.

The transfer-function chains are the standard reduced load-frequency models
for each technology.  Every chain has unity DC gain, so with frequency at
nominal a unit settles exactly at its secondary-control command.
"""

from __future__ import annotations

import math

from .blocks import FirstOrderLag, LeadLag
from .errors import ConfigError, DivergenceError

TECHS = ("thermal", "hydro", "gas")

DEFAULT_DROOP_HZ_PER_PU = 2.4
DEFAULT_PARTICIPATION = 0.3
DEFAULT_HEADROOM_PU = 0.2


def make_chain(tech: str) -> list:
    """Governor-turbine block chain for a technology (unity DC gain)."""
    if tech == "thermal":
        # governor, reheat stage, steam turbine
        return [FirstOrderLag(1.0, 0.08), LeadLag(1.0, 2.5, 10.0), FirstOrderLag(1.0, 0.3)]
    if tech == "hydro":
        # governor, transient-droop compensation, water column (non-minimum phase)
        return [FirstOrderLag(1.0, 0.2), LeadLag(1.0, 5.0, 25.0), LeadLag(1.0, -1.0, 0.5)]
    if tech == "gas":
        # valve positioner, fuel system, combustor lag
        return [FirstOrderLag(1.0, 0.05), LeadLag(1.0, 0.6, 1.0), FirstOrderLag(1.0, 0.4)]
    raise ConfigError(f"unknown generator tech {tech!r}; expected one of {TECHS}")


class GeneratorUnit:
    """One classic equivalent unit participating in primary and secondary control.

    The governor reference is ``sfc_command - delta_f / droop``; it propagates
    through the chain one block at a time each step, and the resulting
    incremental mechanical power is clipped to the unit's headroom.
    """

    def __init__(
        self,
        unit_id: str,
        tech: str,
        droop_hz_per_pu: float = DEFAULT_DROOP_HZ_PER_PU,
        participation: float = DEFAULT_PARTICIPATION,
        headroom_pu: float = DEFAULT_HEADROOM_PU,
        chain: list | None = None,
    ) -> None:
        if tech not in TECHS:
            raise ConfigError(f"unknown generator tech {tech!r}; expected one of {TECHS}")
        if droop_hz_per_pu <= 0.0:
            raise ConfigError(f"{unit_id}: droop must be > 0, got {droop_hz_per_pu}")
        if not 0.0 <= participation <= 1.0:
            raise ConfigError(f"{unit_id}: participation factor must be in [0, 1], got {participation}")
        if headroom_pu <= 0.0:
            raise ConfigError(f"{unit_id}: headroom must be > 0, got {headroom_pu}")
        self.unit_id = unit_id
        self.tech = tech
        self.droop_hz_per_pu = droop_hz_per_pu
        self.participation = participation
        self.headroom_pu = headroom_pu
        self.chain = chain if chain is not None else make_chain(tech)
        self.p_mech_delta_pu = 0.0

    def dc_gain(self) -> float:
        """Product of the chain's block DC gains (1.0 for the standard chains)."""
        g = 1.0
        for block in self.chain:
            g *= block.gain
        return g

    def reset(self) -> None:
        for block in self.chain:
            block.reset()
        self.p_mech_delta_pu = 0.0

    def step(self, delta_f_hz: float, sfc_command_pu: float, dt: float) -> float:
        """Advance one step; returns the new incremental mechanical power [pu]."""
        if not (math.isfinite(delta_f_hz) and math.isfinite(sfc_command_pu)):
            raise DivergenceError(f"non-finite input to generator {self.unit_id}")
        x = sfc_command_pu - delta_f_hz / self.droop_hz_per_pu
        for block in self.chain:
            x = block.step(x, dt)
        lim = self.headroom_pu
        if x > lim:
            x = lim
        elif x < -lim:
            x = -lim
        self.p_mech_delta_pu = x
        return x


def default_unit(tech: str, unit_id: str | None = None) -> GeneratorUnit:
    """Unit with the canonical parameter set for its technology."""
    return GeneratorUnit(unit_id if unit_id is not None else tech, tech)
