"""
How hard can the cavities be driven?
====================================

Without the parametric pump, a strong enough drive pushes the linearized
dynamics past the stability edge. The pump moves that edge.
"""

# %%
import numpy as np

from optomech import AxisSpec, evaluate_point, sweep
from optomech.presets import GAIN_DETUNING_BASE

base = GAIN_DETUNING_BASE.replace(opa_gain=0.0, delta_eff=3.0)

# %%
# Scan the drive amplitude and look for the first unstable cell.
res = sweep(base, AxisSpec("drive_E", 1.0e7, 2.5e7, 201))
drive, stable = res.values(), res.stable
edge = drive[np.argmin(stable)]
print(f"no pump: unstable from E = {edge:.4g}")
print("most negative margin in the scan:", np.nanmin(res.field("margin")))

# %%
# With the pump on, a drive beyond the old edge is stable again and the
# mirrors are entangled.
for gain in (0.0, 1.0, 2.0):
    rec = evaluate_point(GAIN_DETUNING_BASE.replace(opa_gain=gain, drive_E=2.2e7))
    e_n = "-" if rec.e_n is None else f"{rec.e_n:.4f}"
    print(f"gain {gain}: E = 2.2e7 stable={rec.stable} margin={rec.margin:+.2e} E_N={e_n}")
