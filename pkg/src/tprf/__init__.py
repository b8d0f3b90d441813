"""Two-photon resonance fluorescence of a driven, damped transmon ladder."""
from .analytic import AnalyticParams, analytic_flux, analytic_g2zero, g2max_point
from .correlations import (CorrelationTrace, Spectrum, correlation_g1, correlation_g2, delay_grid,
                           emission_spectrum, flux, g2_zero, power_spectrum, spectral_peaks)
from .detection import (FilterKernel, PowerCalibration, boxcar_kernel, delta_kernel, filter_g2,
                        fit_calibration, load_kernel, omega_from_power, raised_cosine_kernel)
from .dressed import (DressedBasis, LineOperator, decompose, diagonalize, line_operators,
                      resonant_dressed_frequencies)
from .ladder import LadderParams, hamiltonian, lowering_operator, mhz, output_field, to_mhz
from .lindblad import (dissipator_apply, liouvillian, liouvillian_matrix, propagate, steady_state,
                       unvec, vec)

__version__ = "0.1.0"
