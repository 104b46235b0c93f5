"""
Linearized fluctuation dynamics and the nonlinear mean-field flow.

Fluctuation vector ordering is (dq1, dp1, dq2, dp2, dx1, dy1, dx2, dy2), with
cavity quadratures dx = (da^+ + da)/sqrt(2) and dy = i(da^+ - da)/sqrt(2), so
the vacuum variance is 1/2.

The mean-field state is (q1, p1, q2, p2, Re a1, Im a1, Re a2, Im a2).
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonFinite
from .model import DetuningMode, OMEGA_M, PhysicalParams, validate
from .steady_state import SteadyState, steady_state, steady_state_given_delta

__all__ = [
    "DriftMatrix",
    "DiffusionMatrix",
    "build_drift",
    "build_diffusion",
    "quadrature_scaling",
    "mean_field_rhs",
    "mean_field_jacobian",
    "mean_field_trajectory",
    "fixed_point_state",
    "default_dt",
]

SQRT2 = math.sqrt(2.0)


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class DriftMatrix:
    m: np.ndarray

    def blocks(self):
        """The four 4x4 blocks (mech-mech, mech-opt, opt-mech, opt-opt)."""
        m = self.m
        return m[:4, :4], m[:4, 4:], m[4:, :4], m[4:, 4:]


@dataclass(frozen=True)
class DiffusionMatrix:
    d: np.ndarray


def build_drift(params: PhysicalParams, ss: SteadyState) -> DriftMatrix:
    """8x8 drift matrix of the linearized fluctuations about ``ss``."""
    validate(params)
    wm, gm = OMEGA_M, params.gamma_m
    k, lam, delta = params.kappa, params.lambda_hop, ss.delta_eff
    gx, gy = ss.G.real, ss.G.imag
    two_gain = 2.0 * params.opa_gain
    c, s = two_gain * math.cos(params.opa_phase), two_gain * math.sin(params.opa_phase)

    m = np.zeros((8, 8))
    for j in (0, 2):
        # mirror j: oscillator block and radiation-pressure drive
        m[j, j + 1] = wm
        m[j + 1, j] = -wm
        m[j + 1, j + 1] = -gm
        o = 4 + j
        m[j + 1, o] = gx
        m[j + 1, o + 1] = gy
        # back-action of mirror j on cavity j
        m[o, j] = -gy
        m[o + 1, j] = gx
        # cavity j with parametric pump
        m[o, o] = -k + c
        m[o, o + 1] = delta + s
        m[o + 1, o] = -delta + s
        m[o + 1, o + 1] = -k - c
    # photon hopping
    m[4, 7] = lam
    m[5, 6] = -lam
    m[6, 5] = lam
    m[7, 4] = -lam
    return DriftMatrix(_frozen(m))


def build_diffusion(params: PhysicalParams) -> DiffusionMatrix:
    """Diagonal diffusion matrix of the delta-correlated noise inputs."""
    validate(params)
    mech = params.gamma_m * (2.0 * params.n_m + 1.0)
    opt = params.kappa * (2.0 * params.n_a + 1.0)
    return DiffusionMatrix(_frozen(np.diag([0.0, mech, 0.0, mech, opt, opt, opt, opt])))


def quadrature_scaling():
    """Diagonal map from mean-field coordinates to the fluctuation basis."""
    return np.array([1.0, 1.0, 1.0, 1.0, SQRT2, SQRT2, SQRT2, SQRT2])


def _bare_detuning(params):
    if params.detuning_mode is DetuningMode.BARE:
        return params.delta0
    return steady_state_given_delta(params).delta0


def _flow(x, params, delta0):
    q1, p1, q2, p2, b1, c1, b2, c2 = x
    wm, gm, g = OMEGA_M, params.gamma_m, params.g
    k, lam, E = params.kappa, params.lambda_hop, params.drive_E
    wr = 2.0 * params.opa_gain * math.cos(params.opa_phase)
    wi = 2.0 * params.opa_gain * math.sin(params.opa_phase)
    return (
        wm * p1,
        -wm * q1 - gm * p1 + g * (b1 * b1 + c1 * c1),
        wm * p2,
        -wm * q2 - gm * p2 + g * (b2 * b2 + c2 * c2),
        -k * b1 + delta0 * c1 - g * q1 * c1 + E + wr * b1 + wi * c1 + lam * c2,
        -k * c1 - delta0 * b1 + g * q1 * b1 + wi * b1 - wr * c1 - lam * b2,
        -k * b2 + delta0 * c2 - g * q2 * c2 + E + wr * b2 + wi * c2 + lam * c1,
        -k * c2 - delta0 * b2 + g * q2 * b2 + wi * b2 - wr * c2 - lam * b1,
    )


def mean_field_rhs(params: PhysicalParams, state, delta0=None):
    """Time derivative of the noise-free nonlinear equations of motion.

    ``state`` may carry extra trailing axes (evaluated column-wise).
    """
    if delta0 is None:
        delta0 = _bare_detuning(params)
    return np.array(_flow(np.asarray(state, dtype=float), params, delta0))


def fixed_point_state(ss: SteadyState) -> np.ndarray:
    """Mean-field state vector of a steady state (both subsystems identical)."""
    a = ss.a_s
    return np.array([ss.q_s, ss.p_s, ss.q_s, ss.p_s, a.real, a.imag, a.real, a.imag])


def mean_field_jacobian(params: PhysicalParams, state, rel_step=1e-6, delta0=None):
    """Central-difference Jacobian of the mean-field flow, mapped into the
    fluctuation basis so it is directly comparable with the drift matrix.

    The step is ``rel_step`` times the largest state component for every
    coordinate: the flow is at most quadratic, so central differences carry no
    truncation error and a large uniform step only suppresses cancellation in
    coordinates that sit at zero (the momenta).
    """
    if delta0 is None:
        delta0 = _bare_detuning(params)
    x = np.asarray(state, dtype=float)
    h = np.full(x.shape, rel_step * max(1.0, float(np.max(np.abs(x)))))
    step = np.diag(h)
    plus = mean_field_rhs(params, x[:, None] + step, delta0)
    minus = mean_field_rhs(params, x[:, None] - step, delta0)
    jac = (plus - minus) / (2.0 * h[None, :])
    t = quadrature_scaling()
    return t[:, None] * jac / t[None, :]


def default_dt(params: PhysicalParams, ss: SteadyState | None = None) -> float:
    if ss is None:
        ss = steady_state(params)
    fastest = max(1.0, abs(ss.G), params.lambda_hop, abs(ss.delta_eff), 2.0 * params.opa_gain)
    return 1e-3 / fastest


def mean_field_trajectory(params: PhysicalParams, init, t_max, dt=None, record_every=1,
                          delta0=None):
    """Integrate the mean-field equations with classical fourth-order Runge-Kutta.

    Parameters
    ----------
    params : PhysicalParams
    init : array_like, shape (8,)
        Initial (q1, p1, q2, p2, Re a1, Im a1, Re a2, Im a2).
    t_max : float
        Final time in units of 1/omega_m.
    dt : float, optional
        Step size; defaults to :func:`default_dt`.
    record_every : int
        Keep every n-th sample (the final state is always kept).

    Returns
    -------
    times : ndarray
    states : ndarray, shape (len(times), 8)

    Raises
    ------
    NonFinite
        When the state overflows, which signals an unstable operating point.
    """
    validate(params)
    if delta0 is None:
        delta0 = _bare_detuning(params)
    if dt is None:
        dt = default_dt(params)
    if not dt > 0 or not t_max >= dt:
        raise ValueError("need dt > 0 and t_max >= dt")
    n_steps = int(round(t_max / dt))

    x = tuple(float(v) for v in init)
    if len(x) != 8:
        raise ValueError("init must have 8 components")
    times, states = [0.0], [x]
    h, h2, h6 = dt, 0.5 * dt, dt / 6.0
    f = _flow
    for n in range(1, n_steps + 1):
        k1 = f(x, params, delta0)
        k2 = f([a + h2 * b for a, b in zip(x, k1)], params, delta0)
        k3 = f([a + h2 * b for a, b in zip(x, k2)], params, delta0)
        k4 = f([a + h * b for a, b in zip(x, k3)], params, delta0)
        x = tuple(a + h6 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)
                  for a, b1, b2, b3, b4 in zip(x, k1, k2, k3, k4))
        if not math.isfinite(sum(x)):
            raise NonFinite(f"mean-field state overflowed at t={n * dt:.6g}")
        if n % record_every == 0 or n == n_steps:
            times.append(n * dt)
            states.append(x)
    return np.array(times), np.array(states)
