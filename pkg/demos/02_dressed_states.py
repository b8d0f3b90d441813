"""Dressed states of the two-photon driven three-level ladder.

Diagonalizing the rotating-frame Hamiltonian gives three dressed levels. At
two-photon resonance one of them stays pinned at zero, and the other two repel
quadratically in the drive strength. The steady state piles up in the pinned
level once the drive is strong.
"""
import numpy as np

from tprf import (LadderParams, diagonalize, hamiltonian, liouvillian, resonant_dressed_frequencies,
                  steady_state, to_mhz)
from tprf.dressed import approximate_dressed_frequencies

alpha = -233.0
print(f"{'Omega/MHz':>10} {'eigensolver (MHz)':>30} {'quadratic (MHz)':>22} {'populations':>24}")
for omega in (5.0, 20.0, 40.0, 70.0):
    p = LadderParams.from_mhz(3, alpha, 0.0, omega, 2.5)
    basis = diagonalize(hamiltonian(p))
    approx = approximate_dressed_frequencies(p.alpha, p.omega)
    pops = basis.populations(steady_state(liouvillian(p)))
    print(f"{omega:10.1f} {np.array2string(to_mhz(basis.eigenvalues), precision=2):>30} "
          f"{np.array2string(to_mhz(np.array(approx)), precision=2):>22} "
          f"{np.array2string(pops, precision=3):>24}")

closed = resonant_dressed_frequencies(p.alpha, p.omega)
print("closed form at 70 MHz:", np.round(to_mhz(np.array(closed)), 6))
