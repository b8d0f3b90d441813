"""A resonantly driven two-level emitter: the Mollow triplet.

The two-level ladder is driven on its single transition. The inelastic
spectrum has a central peak and two sidebands at plus and minus the Rabi rate,
and the emitted photons are perfectly antibunched.
"""
import numpy as np

from tprf import (LadderParams, delay_grid, emission_spectrum, g2_zero, liouvillian, lowering_operator,
                  spectral_peaks, steady_state, to_mhz)

# resonant for n=2 means delta = -alpha/2 (the drive frame sits at the two-photon midpoint)
p = LadderParams.from_mhz(2, alpha=-233.0, delta=116.5, omega=20.0, gamma=2.5)
L = liouvillian(p)
rho = steady_state(L)
F = np.sqrt(p.gamma) * lowering_operator(2)

spectrum = emission_spectrum(L, rho, F, delay_grid(p.gamma))
peaks, heights = spectral_peaks(spectrum)

print("steady-state excited population:", rho[1, 1].real)
print("peaks (MHz from drive):", np.round(to_mhz(peaks), 3))
print("relative heights:", np.round(heights / heights.max(), 3))
print("g2(0):", g2_zero(rho, F))
