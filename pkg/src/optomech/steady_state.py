"""
Classical operating point of the driven, parametrically pumped cavities.

Both cavities and both mirrors share one steady state, so a single copy of
each amplitude is stored.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import Polynomial
from scipy.optimize import brentq

from .errors import DenominatorSingular, NoRealRoot, RootFindFailure
from .model import DetuningMode, OMEGA_M, PhysicalParams, validate

__all__ = [
    "SteadyState",
    "EPS_DEN",
    "steady_state",
    "steady_state_given_delta",
    "steady_state_given_delta0",
    "cavity_amplitude",
]

#: smallest admissible |denominator| of the cavity amplitude
EPS_DEN = 1e-9


@dataclass(frozen=True)
class SteadyState:
    """Mean-field fixed point.

    ``stable`` is filled in only by :func:`steady_state_given_delta0`, which
    classifies each branch it returns.
    """

    a_s: complex
    q_s: float
    delta_eff: float
    delta0: float
    G: complex
    p_s: float = 0.0
    stable: bool | None = None

    @property
    def G_x(self) -> float:
        return self.G.real

    @property
    def G_y(self) -> float:
        return self.G.imag

    @property
    def photon_number(self) -> float:
        return abs(self.a_s) ** 2


def _denominator(params, delta):
    s = delta + params.lambda_hop
    return params.kappa ** 2 + s * s - 4.0 * params.opa_gain ** 2


def cavity_amplitude(params: PhysicalParams, delta: float) -> complex:
    """Intracavity amplitude at effective detuning ``delta``.

    Raises DenominatorSingular on the parametric-oscillation threshold.
    """
    den = _denominator(params, delta)
    if abs(den) <= EPS_DEN:
        raise DenominatorSingular(
            f"kappa^2 + (delta + lambda)^2 - 4 Lambda^2 = {den:.3e} at delta={delta!r}"
        )
    pump = 2.0 * params.opa_gain * cmath.exp(1j * params.opa_phase)
    num = params.kappa - 1j * (delta + params.lambda_hop) + pump
    return num * params.drive_E / den


def _build(params, a_s, delta, stable=None):
    q_s = params.g * abs(a_s) ** 2 / OMEGA_M
    return SteadyState(
        a_s=complex(a_s),
        q_s=q_s,
        delta_eff=float(delta),
        delta0=float(delta + params.g * q_s),
        G=math.sqrt(2.0) * params.g * complex(a_s),
        stable=stable,
    )


def steady_state_given_delta(params: PhysicalParams) -> SteadyState:
    """Fixed point when the effective detuning is prescribed.

    The implied bare detuning is reported in ``SteadyState.delta0``.
    """
    validate(params)
    if params.detuning_mode is not DetuningMode.EFFECTIVE:
        raise ValueError("params must carry delta_eff")
    delta = params.delta_eff
    return _build(params, cavity_amplitude(params, delta), delta)


def _fixed_point_poly(params):
    """Quintic in s = delta + lambda whose real roots are the fixed points.

    Uses u = |a_s|^2 = (delta0 + lambda - s) / g^2 to clear denominators:
    (delta0 + lambda - s) * den(s)^2 - g^2 E^2 * |numerator(s)|^2 = 0.
    """
    k, lam, gain, th = params.kappa, params.lambda_hop, params.opa_gain, params.opa_phase
    c = params.delta0 + lam
    den = Polynomial([k * k - 4.0 * gain * gain, 0.0, 1.0])
    num_sq = Polynomial([(2.0 * gain * math.sin(th)) ** 2 + (k + 2.0 * gain * math.cos(th)) ** 2,
                         -4.0 * gain * math.sin(th), 1.0])
    gE2 = (params.g * params.drive_E) ** 2
    return Polynomial([c, -1.0]) * den ** 2 - gE2 * num_sq


def _refine(f, x0, scale, max_expand=60):
    """Bracket a sign change of ``f`` around ``x0`` and bisect it."""
    fx = f(x0)
    if fx == 0.0:
        return x0
    step = max(abs(x0), scale) * 1e-9
    for _ in range(max_expand):
        lo, hi = x0 - step, x0 + step
        flo, fhi = f(lo), f(hi)
        if flo == 0.0:
            return lo
        if fhi == 0.0:
            return hi
        if np.sign(flo) != np.sign(fx):
            hi = x0
            break
        if np.sign(fhi) != np.sign(fx):
            lo = x0
            break
        step *= 2.0
    else:
        return None
    try:
        return brentq(f, lo, hi, xtol=1e-300, rtol=1e-14, maxiter=500)
    except RuntimeError as exc:
        raise RootFindFailure(str(exc)) from exc


def steady_state_given_delta0(params: PhysicalParams) -> list[SteadyState]:
    """All fixed points compatible with a prescribed bare detuning.

    The static mirror displacement shifts the detuning by g^2 |a_s|^2, which
    in turn depends on the detuning; the self-consistent branches are returned
    sorted by ascending photon number, each tagged with its linear stability.
    """
    from .dynamics import build_drift
    from .stability import is_stable

    validate(params)
    if params.detuning_mode is not DetuningMode.BARE:
        raise ValueError("params must carry delta0")

    lam = params.lambda_hop
    if params.g == 0.0 or params.drive_E == 0.0:
        candidates = [params.delta0]
    else:
        poly = _fixed_point_poly(params)
        c = params.delta0 + lam
        scale = max(1.0, abs(c), params.kappa, 2.0 * params.opa_gain)
        roots = poly.roots()
        candidates = []
        for r in roots:
            if abs(r.imag) > 1e-6 * max(1.0, abs(r.real)):
                continue
            s = _refine(poly, float(r.real), scale)
            if s is None or c - s < -1e-12 * scale:
                continue
            candidates.append(s - lam)
        # drop candidates that collapse onto one root
        candidates = sorted(set(candidates))

    branches = []
    singular = False
    for delta in candidates:
        try:
            a_s = cavity_amplitude(params, delta)
        except DenominatorSingular:
            singular = True
            continue
        ss = _build(params, a_s, delta)
        if params.g > 0 and params.drive_E > 0:
            # discard spurious roots: the fixed point must satisfy delta = delta0 - g q_s
            mismatch = abs(ss.delta0 - params.delta0)
            if mismatch > 1e-8 * max(1.0, abs(params.delta0), params.g * ss.q_s):
                continue
        branches.append(ss)

    if not branches:
        if singular:
            raise DenominatorSingular("every fixed-point candidate sits on the threshold")
        raise NoRealRoot(f"no self-consistent steady state for delta0={params.delta0!r}")

    out = []
    for ss in branches:
        eff = params.replace(delta_eff=ss.delta_eff)
        report = is_stable(build_drift(eff, ss).m)
        out.append(SteadyState(ss.a_s, ss.q_s, ss.delta_eff, ss.delta0, ss.G,
                               stable=report.stable))
    out.sort(key=lambda s: s.photon_number)
    return out


def steady_state(params: PhysicalParams) -> SteadyState:
    """Operating point for either detuning mode.

    With a bare detuning and several branches, the lowest-photon-number stable
    branch is chosen, falling back to the lowest branch when none is stable.
    """
    if params.detuning_mode is DetuningMode.EFFECTIVE:
        return steady_state_given_delta(params)
    branches = steady_state_given_delta0(params)
    for ss in branches:
        if ss.stable:
            return ss
    return branches[0]
