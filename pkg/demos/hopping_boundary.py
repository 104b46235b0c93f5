"""
Stability against the photon hopping rate
=========================================

With no pump, the hopping rate has to exceed a detuning-dependent minimum
before the steady state can be used at all.
"""

# %%
from optomech import AxisSpec, sweep
from optomech.output import write_svg
from optomech.presets import GAIN_DETUNING_BASE

from _paths import out

base = GAIN_DETUNING_BASE.replace(opa_gain=0.0)
axis = AxisSpec("lambda_hop", 15.0, 35.0, 201)

# %%
for delta in (3.0, -3.0):
    res = sweep(base.replace(delta_eff=delta), axis)
    lam = res.values()[res.stable]
    print(f"detuning {delta:+g}: stable from hopping rate {lam.min():.2f}")

# %%
# The full hopping-detuning plane shows the tilted edge.
plane = sweep(base, (AxisSpec("delta_eff", -6.0, 6.0, 61), AxisSpec("lambda_hop", 15.0, 35.0, 101)))
write_svg(plane, out("hopping_detuning.svg"), title="E_N over detuning (rows) and hopping (columns)")
print("stable fraction:", plane.stable.mean())
