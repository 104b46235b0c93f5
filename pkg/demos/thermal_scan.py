"""
Thermal phonons wash out the entanglement
=========================================

At each edge point of the gain-detuning map, raise the mechanical bath
occupancy until the entanglement is gone.
"""

# %%
import numpy as np

from optomech import AxisSpec, sweep
from optomech.output import write_csv
from optomech.presets import GAIN_DETUNING_MARKERS, resolve_marker

from _paths import out

axis = AxisSpec("n_m", 0.0, 0.12, 121)

# %%
# The drop is close to linear, so a straight-line fit gives a decent
# estimate of the occupancy that kills the entanglement.
for gain, delta, _ in GAIN_DETUNING_MARKERS:
    params, _ = resolve_marker(gain, delta)
    res = sweep(params, axis)
    e_n = np.nan_to_num(res.field("e_n"))
    n = res.values()
    fit = e_n > 0.02
    slope, icpt = np.polyfit(n[fit], e_n[fit], 1)
    print(f"gain {gain:4.2f}: E_N(0) = {e_n[0]:.4f}, slope {slope:+.3f} per phonon, "
          f"extrapolated zero at n_m = {-icpt / slope:.4f}, last entangled n_m = {n[e_n > 0].max():.3f}")
    write_csv(res, out(f"thermal_gain_{gain:.2f}.csv"))
