"""Splitting the emission into spectral lines.

The lowering operator is rewritten in the dressed basis and its terms are
grouped by the frequency they oscillate at. This gives three line operators:
emission at the drive frequency (two-photon fluorescence) and the two
single-photon lines near the g-e and e-f transitions. Their spectra add up to
the full one.
"""
import numpy as np

from tprf import (LadderParams, delay_grid, emission_spectrum, line_operators, liouvillian,
                  lowering_operator, spectral_peaks, steady_state, to_mhz)

p = LadderParams.from_mhz(3, -233.0, 0.0, 70.0, 2.5)
L = liouvillian(p)
rho = steady_state(L)
d = delay_grid(p.gamma)
g = np.sqrt(p.gamma)

full = emission_spectrum(L, rho, g * lowering_operator(3), d)
peaks, _ = spectral_peaks(full)
print("full spectrum peaks (MHz):", np.round(to_mhz(peaks), 1))

_, ops = line_operators(p)
total = 0.0
for label, op in ops.items():
    s = emission_spectrum(L, rho, g * op, d)
    line_peaks, _ = spectral_peaks(s)
    total += s.integrated()
    print(f"{label:>5}: power {s.integrated() / p.gamma:.5f} Gamma, peaks {np.round(to_mhz(line_peaks), 1)} MHz")
print(f"sum of lines / full = {total / full.integrated():.5f}")
