"""
Cross-checking one operating point
==================================

Every number the pipeline produces at a point can be checked by a route that
shares no code with it. This runs those checks and shows a failing one.
"""

# %%
from optomech import build_diffusion, build_drift, solve_lyapunov, steady_state, symplectic_eigenvalues
from optomech.presets import PHASE_SCAN_BASE, resolve_marker
from optomech.validation import mean_field_oracle, run_checks

for check in run_checks(PHASE_SCAN_BASE):
    print(f"{check.status.upper():4s} {check.name}: {check.detail}")

# %%
# The nonlinear flow, integrated from a kicked fixed point, agrees with the
# linear verdict: the kick decays at a stable point and grows at an unstable one.
for gain in (1.3, 0.0):
    ratio, t = mean_field_oracle(PHASE_SCAN_BASE.replace(opa_gain=gain), t_cap=200.0)
    print(f"gain {gain}: deviation ratio {ratio:.3g} after t = {t:g}")

# %%
# Momentum-only mechanical damping with white noise is a high-Q model. On the
# zero-gain edge of the gain-detuning map the hybridized mirror mode is soft
# (frequency ~0.03, Q ~15), and the stationary state dips just below the
# uncertainty bound.
params, _ = resolve_marker(0.0, 5.48)
ss = steady_state(params)
v = solve_lyapunov(build_drift(params, ss), build_diffusion(params)).v
print("smallest symplectic eigenvalue:", symplectic_eigenvalues(v).min())
