"""Secondary frequency control: area control error, PI regulator, command allocation.

The area control error combines the tie-line interchange deviation with the
biased frequency deviation, ``ace = dp_tie + bias * df``.  A PI regulator
acting on -ace produces the total secondary command, which is split across
participants by fixed factors summing to 1.
"""

from __future__ import annotations

from .errors import ConfigError

DEFAULT_KP = 0.1
DEFAULT_KI_PER_S = 0.2
DEFAULT_ANTI_WINDUP_PU = 0.3

FACTOR_SUM_TOL = 1e-9


def compute_ace(delta_p_tie_pu: float, bias_pu_per_hz: float, delta_f_hz: float) -> float:
    return delta_p_tie_pu + bias_pu_per_hz * delta_f_hz


class AgcController:
    """PI regulator on the area control error with integrator anti-windup.

    The command convention is ``dp_sc = -(kp*ace + integ)`` so that a positive
    error (over-frequency or excess export) lowers the generation request.
    """

    def __init__(
        self,
        bias_pu_per_hz: float,
        kp: float = DEFAULT_KP,
        ki_per_s: float = DEFAULT_KI_PER_S,
        anti_windup_pu: float = DEFAULT_ANTI_WINDUP_PU,
    ) -> None:
        if bias_pu_per_hz <= 0.0:
            raise ConfigError(f"frequency bias must be > 0, got {bias_pu_per_hz}")
        if ki_per_s <= 0.0:
            raise ConfigError(f"integral gain must be > 0, got {ki_per_s}")
        if anti_windup_pu <= 0.0:
            raise ConfigError(f"anti-windup limit must be > 0, got {anti_windup_pu}")
        self.bias_pu_per_hz = bias_pu_per_hz
        self.kp = kp
        self.ki_per_s = ki_per_s
        self.anti_windup_pu = anti_windup_pu
        self.integ = 0.0

    def reset(self) -> None:
        self.integ = 0.0

    def step(self, ace_pu: float, dt: float) -> float:
        """Advance the integrator and return the total secondary command [pu]."""
        integ = self.integ + self.ki_per_s * ace_pu * dt
        lim = self.anti_windup_pu
        if integ > lim:
            integ = lim
        elif integ < -lim:
            integ = -lim
        self.integ = integ
        return -(self.kp * ace_pu + integ)


def allocate_sfc(command_pu: float, factors: list[float]) -> list[float]:
    """Split a secondary command across participants by their factors.

    The factors must lie in [0, 1] and sum to 1; the last participant takes
    the residual so the allocations sum to the command exactly.
    """
    if not factors:
        raise ConfigError("allocation needs at least one participation factor")
    total = 0.0
    for k in factors:
        if not 0.0 <= k <= 1.0:
            raise ConfigError(f"participation factor must be in [0, 1], got {k}")
        total += k
    if abs(total - 1.0) > FACTOR_SUM_TOL:
        raise ConfigError(f"participation factors must sum to 1, got {total!r}")
    shares = [command_pu * k for k in factors[:-1]]
    shares.append(command_pu - sum(shares))
    return shares
