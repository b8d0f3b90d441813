"""Drive-strength and detuning sweeps of the two-photon line.

The superbunching is strongest at a weak drive and decays as the drive grows.
Detuning the drive from the two-photon resonance shifts the flux maximum to
negative detuning and makes the statistics asymmetric.
"""
import numpy as np

from tprf import LadderParams, g2max_point, mhz
from tprf.scenario import sweep_point

alpha, gamma = mhz(-233.0), mhz(2.5)
scale = np.sqrt(abs(alpha) * gamma)

print("Omega sweep at delta = 0")
for x in (0.2, 0.4, 0.537, 0.8, 1.2, 2.0, 3.0):
    f, g2 = sweep_point(LadderParams(3, alpha, 0.0, x * scale, gamma))
    print(f"  Omega = {x:5.3f} sqrt(|alpha| Gamma): flux {f:.5f} Gamma, g2(0) {g2:.4f}")
omega_star, g2_star = g2max_point(alpha, gamma)
print(f"  closed form: maximum {g2_star:.4f} at {omega_star / scale:.4f} sqrt(|alpha| Gamma)")

print("delta sweep at Omega = 0.15 |alpha|")
for s in (-10, -4, -2, -1, -0.5, 0, 0.5, 1, 2, 4):
    f, g2 = sweep_point(LadderParams(3, alpha, s * gamma, 0.15 * abs(alpha), gamma))
    print(f"  delta = {s:+5.1f} Gamma: flux {f:.5f} Gamma, g2(0) {g2:.4f}")
