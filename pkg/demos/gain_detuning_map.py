"""
Gain-detuning map with its best points
======================================

A 101x101 map of mirror entanglement over pump gain and detuning. For every
gain the best stable detuning sits right on the stability edge; five of
those edge points are evaluated below.
"""

# %%
import time

from optomech import AxisSpec, sweep
from optomech.output import write_csv, write_svg
from optomech.presets import GAIN_DETUNING_BASE, GAIN_DETUNING_MARKERS, resolve_marker

from _paths import out

start = time.perf_counter()
grid = sweep(GAIN_DETUNING_BASE, (AxisSpec("opa_gain", 0.0, 5.0, 101),
                                  AxisSpec("delta_eff", -6.0, 6.0, 101)), workers=None)
print(f"{grid.cells.size} cells in {time.perf_counter() - start:.1f} s, "
      f"{grid.stable.sum()} stable")
write_csv(grid, out("gain_detuning.csv"))
write_svg(grid, out("gain_detuning.svg"), cell=4, title="E_N over gain (rows) and detuning (columns)")

# %%
# Edge points. A printed detuning rounded to two decimals can land just
# past the edge; ``resolve_marker`` then takes the nearest stable detuning
# within half a rounding step.
for gain, delta, quoted in GAIN_DETUNING_MARKERS:
    params, rec = resolve_marker(gain, delta)
    print(f"gain {gain:4.2f} detuning {params.delta_eff:+.4f}: E_N = {rec.e_n:.4f} (quoted {quoted})")
