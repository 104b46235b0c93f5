"""
Independent consistency checks of the pipeline at a single parameter point.

Each check returns a :class:`Check` with status "pass", "fail" or "skip".
"""

import math
from dataclasses import dataclass

import numpy as np

from .dynamics import (
    _bare_detuning,
    build_diffusion,
    build_drift,
    fixed_point_state,
    mean_field_jacobian,
    mean_field_rhs,
    mean_field_trajectory,
    quadrature_scaling,
)
from .entanglement import log_negativity, reduce_mechanical
from .errors import NonFinite
from .lyapunov import lyapunov_residual, residual_tolerance, solve_lyapunov, symplectic_eigenvalues
from .model import PhysicalParams, validate
from .stability import is_stable
from .steady_state import steady_state

__all__ = ["Check", "JACOBIAN_TOL", "run_checks", "mean_field_oracle", "fixed_point_residual"]

JACOBIAN_TOL = 1e-5
PHYSICALITY_TOL = 1e-8


@dataclass(frozen=True)
class Check:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"


def fixed_point_residual(params, ss, delta0=None):
    """(max |rhs|, magnitude of the largest term) of the mean-field flow at ``ss``."""
    if delta0 is None:
        delta0 = _bare_detuning(params)
    x = fixed_point_state(ss)
    rhs = mean_field_rhs(params, x, delta0)
    a, q = abs(ss.a_s), abs(ss.q_s)
    rates = params.kappa + abs(delta0) + params.g * q + 2.0 * params.opa_gain + params.lambda_hop
    scale = max(1.0, params.drive_E, rates * a, q, params.g * a * a)
    return float(np.max(np.abs(rhs))), scale


def mean_field_oracle(params: PhysicalParams, ss=None, rel_perturbation=1e-3, t_max=None,
                      dt=None, horizon=3.0, t_cap=5000.0):
    """Integrate the nonlinear flow from a perturbed fixed point.

    Returns
    -------
    ratio : float
        Final over initial deviation norm (``inf`` if the state overflowed).
    t_end : float
    """
    if ss is None:
        ss = steady_state(params)
    delta0 = ss.delta0
    drift = build_drift(params, ss)
    report = is_stable(drift.m)
    if t_max is None:
        t_max = min(max(horizon / max(abs(report.margin), 1e-12), 20.0), t_cap)
    if dt is None:
        fastest = max(1.0, abs(ss.G), params.lambda_hop, abs(ss.delta_eff),
                      2.0 * params.opa_gain, params.kappa)
        dt = 0.2 / fastest
    x0 = fixed_point_state(ss)
    signs = np.array([1, -1, 1, 1, -1, 1, 1, -1], dtype=float)
    delta = rel_perturbation * signs * np.maximum(1.0, np.abs(x0))
    try:
        _, states = mean_field_trajectory(params, x0 + delta, t_max, dt,
                                          record_every=max(1, int(t_max / dt)), delta0=delta0)
    except NonFinite:
        return math.inf, t_max
    t = quadrature_scaling()
    ratio = float(np.linalg.norm(t * (states[-1] - x0)) / np.linalg.norm(t * delta))
    return ratio, t_max


def run_checks(params: PhysicalParams, ode=True):
    """Run the oracle suite at one point; returns a list of :class:`Check`."""
    validate(params)
    checks = []
    ss = steady_state(params)
    delta0 = ss.delta0
    drift = build_drift(params, ss)
    report = is_stable(drift.m)

    res, scale = fixed_point_residual(params, ss, delta0)
    checks.append(Check("fixed_point", "pass" if res <= 1e-9 * scale else "fail",
                        f"max|rhs|={res:.3e} scale={scale:.3e}"))

    jac = mean_field_jacobian(params, fixed_point_state(ss), delta0=delta0)
    err = float(np.max(np.abs(jac - drift.m)))
    checks.append(Check("jacobian_vs_drift", "pass" if err <= JACOBIAN_TOL else "fail",
                        f"max|J-M|={err:.3e}"))

    if report.routh_stable is None:
        checks.append(Check("routh_hurwitz", "skip", "degenerate Routh pivot"))
    else:
        checks.append(Check("routh_hurwitz", "pass" if report.routh_agrees else "fail",
                            f"eigen={report.stable} routh={report.routh_stable} "
                            f"margin={report.margin:.3e}"))

    if report.stable:
        diff = build_diffusion(params)
        cm = solve_lyapunov(drift, diff, check_stability=False)
        r = lyapunov_residual(drift, cm, diff)
        tol = residual_tolerance(diff)
        checks.append(Check("lyapunov_residual", "pass" if r <= tol else "fail",
                            f"residual={r:.3e} tol={tol:.3e}"))
        nu = symplectic_eigenvalues(cm)
        checks.append(Check("physicality", "pass" if nu.min() >= 0.5 - PHYSICALITY_TOL else "fail",
                            f"min symplectic eigenvalue={nu.min():.12g}"))
        ent = log_negativity(reduce_mechanical(cm))
        checks.append(Check("entanglement", "pass", f"e_n={ent.e_n:.12g}"))
    else:
        checks.append(Check("lyapunov_residual", "skip", "drift matrix unstable"))
        checks.append(Check("physicality", "skip", "drift matrix unstable"))

    if ode:
        ratio, t_end = mean_field_oracle(params, ss)
        if report.stable:
            status = "pass" if ratio < 1.0 else "fail"
            what = "contracts"
        else:
            status = "pass" if ratio > 1.0 else "fail"
            what = "diverges"
        checks.append(Check("mean_field_oracle", status,
                            f"expected: {what}; deviation ratio={ratio:.3e} at t={t_end:.4g}"))
    return checks
