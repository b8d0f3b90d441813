"""Photon statistics of each line and the effect of a finite detection bandwidth.

The g-e line is antibunched and the two-photon line is superbunched. A
detector with a 12 MHz bandwidth averages the correlation over its response
time, which pulls both values toward one.
"""
import numpy as np

from tprf import (LadderParams, boxcar_kernel, correlation_g2, delay_grid, filter_g2, line_operators,
                  liouvillian, steady_state)

p = LadderParams.from_mhz(3, -233.0, 0.0, 30.0, 2.2)
L = liouvillian(p)
rho = steady_state(L)
_, ops = line_operators(p)
d = delay_grid(p.gamma)
kernel = boxcar_kernel(12e6, d[1] - d[0])

for label in ("GE", "TPRF"):
    trace = correlation_g2(L, rho, ops[label], d)
    filtered = filter_g2(trace, kernel)
    print(f"{label:>5}: g2(0) = {trace.values[0]:.4f}, filtered {filtered.values[0]:.4f}, "
          f"g2(tau_max) = {trace.values[-1]:.4f}")

i = np.searchsorted(d, 100e-9)
print("GE line g2 at 0, 25, 50, 75, 100 ns:",
      np.round(correlation_g2(L, rho, ops["GE"], d).values[np.linspace(0, i, 5).astype(int)], 3))
