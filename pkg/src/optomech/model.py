"""
Physical parameters of two photon-hopping-coupled optomechanical cavities,
each holding a degenerate parametric amplifier.

Every rate and frequency is expressed in units of the mechanical frequency,
so the mirror frequency is 1 throughout the package.
"""

import enum
import math
import numbers
from dataclasses import dataclass, fields, replace

from scipy import constants

from .errors import InvalidParam

__all__ = [
    "DetuningMode",
    "PhysicalParams",
    "validate",
    "thermal_occupancy",
    "OMEGA_M",
]

#: mechanical frequency; the unit of every rate in the package
OMEGA_M = 1.0

TWO_PI = 2.0 * math.pi


class DetuningMode(enum.Enum):
    """Which detuning the caller supplies."""

    EFFECTIVE = "delta_eff"  # radiation-pressure-shifted detuning
    BARE = "delta0"  # laser-cavity detuning before the static shift


@dataclass(frozen=True)
class PhysicalParams:
    """System parameters in units of the mechanical frequency.

    Exactly one of ``delta_eff`` (effective detuning) and ``delta0`` (bare
    laser detuning) must be given. ``opa_phase`` is reduced modulo 2*pi on
    construction.

    Parameters
    ----------
    kappa : float
        Cavity amplitude decay rate.
    gamma_m : float
        Mechanical damping rate.
    g : float
        Single-photon optomechanical coupling.
    lambda_hop : float
        Cavity-cavity photon-hopping rate.
    drive_E : float
        Laser drive amplitude.
    opa_gain : float
        Parametric gain of each amplifier.
    opa_phase : float
        Pump phase in radians.
    delta_eff, delta0 : float or None
        Effective or bare detuning.
    n_a, n_m : float
        Thermal photon and phonon occupancies.
    """

    kappa: float
    gamma_m: float
    g: float
    lambda_hop: float
    drive_E: float
    opa_gain: float = 0.0
    opa_phase: float = 0.0
    delta_eff: float | None = None
    delta0: float | None = None
    n_a: float = 0.0
    n_m: float = 0.0

    def __post_init__(self):
        # plain floats keep results bit-identical whatever numeric type came in
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, numbers.Real) and not isinstance(value, bool):
                object.__setattr__(self, f.name, float(value))
        phase = float(self.opa_phase)
        if math.isfinite(phase) and not 0.0 <= phase < TWO_PI:
            phase = phase % TWO_PI
            if phase == TWO_PI:  # tiny negative inputs round up
                phase = 0.0
        object.__setattr__(self, "opa_phase", phase)

    @property
    def detuning_mode(self) -> DetuningMode:
        if self.delta_eff is not None:
            return DetuningMode.EFFECTIVE
        return DetuningMode.BARE

    @property
    def detuning(self) -> float:
        """The detuning value the caller supplied, whichever mode."""
        return self.delta_eff if self.delta_eff is not None else self.delta0

    def replace(self, **changes) -> "PhysicalParams":
        """Copy with fields changed; switching detuning key clears the other one."""
        if "delta_eff" in changes and "delta0" not in changes:
            changes["delta0"] = None
        elif "delta0" in changes and "delta_eff" not in changes:
            changes["delta_eff"] = None
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_POSITIVE = ("kappa", "gamma_m")
_NONNEGATIVE = ("g", "lambda_hop", "drive_E", "opa_gain", "n_a", "n_m")


def validate(params: PhysicalParams) -> PhysicalParams:
    """Check every parameter constraint and return ``params`` unchanged.

    Raises
    ------
    InvalidParam
        Listing every violated bound.
    """
    bad = []
    for f in fields(params):
        value = getattr(params, f.name)
        if value is None:
            continue
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            bad.append((f.name, value, "must be a real number"))
        elif not math.isfinite(value):
            bad.append((f.name, value, "must be finite"))
    if bad:
        raise InvalidParam(*bad[0], violations=bad)

    for name in _POSITIVE:
        value = getattr(params, name)
        if not value > 0:
            bad.append((name, value, "> 0"))
    for name in _NONNEGATIVE:
        value = getattr(params, name)
        if not value >= 0:
            bad.append((name, value, ">= 0"))
    if (params.delta_eff is None) == (params.delta0 is None):
        bad.append(("delta_eff/delta0", (params.delta_eff, params.delta0),
                    "exactly one must be given"))
    if bad:
        raise InvalidParam(*bad[0], violations=bad)
    return params


def thermal_occupancy(freq, temp):
    """Bose-Einstein occupancy of a mode at angular frequency ``freq`` (rad/s)
    in a bath at ``temp`` kelvin. Returns 0 at zero temperature."""
    if not freq > 0:
        raise InvalidParam("freq", freq, "> 0")
    if not temp >= 0:
        raise InvalidParam("temp", temp, ">= 0")
    if temp == 0:
        return 0.0
    x = constants.hbar * freq / (constants.k * temp)
    if x > 700.0:  # expm1 overflows; occupancy underflows to 0 anyway
        return 0.0
    return 1.0 / math.expm1(x)
