"""
Reference parameter sets and marked operating points.

All values are in units of the mechanical frequency. The single-photon
coupling is set so that g * drive_E = 80: with that product the Lambda = 0
drive-induced instability sits at drive_E = 1.70e7 for lambda_hop = 18 and the
lambda_hop stability edges at drive_E = 2e7 fall at 20.4 (delta_eff = +3) and
26.4 (delta_eff = -3). The nominal coupling 4e-4 with the same drive puts every
reference point deep inside the unstable region; it is kept as
``NOMINAL_COUPLING`` for comparison.
"""

import math

import numpy as np

from .model import PhysicalParams
from .sweep import evaluate_point

__all__ = [
    "NOMINAL_COUPLING",
    "REFERENCE_COUPLING",
    "PHASE_SCAN_BASE",
    "GAIN_DETUNING_BASE",
    "GAIN_DETUNING_MARKERS",
    "marker_params",
    "resolve_marker",
]

NOMINAL_COUPLING = 4e-4
REFERENCE_COUPLING = 4e-6

#: kappa, gamma_m, lambda_hop, drive_E, detuning and pump phase of the phase/gain scans
PHASE_SCAN_BASE = PhysicalParams(
    kappa=0.01,
    gamma_m=2e-3,
    g=REFERENCE_COUPLING,
    lambda_hop=20.0,
    drive_E=2e7,
    opa_gain=1.3,
    opa_phase=math.pi / 2,
    delta_eff=3.0,
    n_a=0.0,
    n_m=0.0,
)

#: gain/detuning map and thermal scans run at the weaker hopping rate
GAIN_DETUNING_BASE = PHASE_SCAN_BASE.replace(lambda_hop=18.0)

#: (opa_gain, delta_eff, E_N) of the marked maxima along the stability edge
GAIN_DETUNING_MARKERS = (
    (0.0, 5.48, 0.066),
    (1.18, 3.03, 0.091),
    (2.71, 0.0, 0.106),
    (4.19, -2.99, 0.115),
    (4.83, -4.25, 0.117),
)


def marker_params(gain, delta, base=GAIN_DETUNING_BASE, **changes):
    return base.replace(opa_gain=gain, delta_eff=delta, **changes)


def resolve_marker(gain, delta, base=GAIN_DETUNING_BASE, decimals=2, n=101, **changes):
    """Nearest stable point to a marker quoted to ``decimals`` places.

    The markers sit on the stability edge, so the quoted detuning may round
    onto the unstable side. The detuning is searched within half a unit of the
    last quoted digit; the quoted value itself is returned when already stable.

    Returns
    -------
    params : PhysicalParams
    record : PointRecord
    """
    params = marker_params(gain, delta, base, **changes)
    rec = evaluate_point(params)
    if rec.stable:
        return params, rec
    half = 0.5 * 10.0 ** (-decimals)
    offsets = np.linspace(-half, half, n)
    for off in sorted(offsets, key=abs):
        trial = marker_params(gain, delta + float(off), base, **changes)
        rec = evaluate_point(trial)
        if rec.stable:
            return trial, rec
    return params, evaluate_point(params)
