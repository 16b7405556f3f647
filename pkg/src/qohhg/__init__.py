"""Quantized-field high-harmonic numerics.

Submodules
----------
fock          truncated single-mode Fock space, the brute-force layer
special       Laguerre and Bessel functions
dressing      per-mode squeeze/displacement elimination and CGS estimates
displacement  number-state and coherent-state displacement elements
lattice       von Neumann lattice frames
potential     1D model atom and photon-sector effective potential
kh            Kramers-Heisenberg harmonic amplitudes
cli           command-line front end
"""

__version__ = "0.1.0"

from .exceptions import (ConditioningError, DimensionMismatchError, LaguerreOverflowError,
                         NotNormalizedError, NumericalDomainError, TruncationError)
from .fock import (FockVector, OperatorMatrix, coherent_vector, displacement_matrix,
                   overlap, photon_statistics, quadrature_variances, squeeze_matrix)
from .special import bessel_j, laguerre_assoc, laguerre_generating_check, log_factorial_ratio
from .dressing import (DressedMode, FieldConfig, beta_param, diagonalize_mode,
                       dressed_frequency, intensity_mu, mode_count, oscillation_amplitude,
                       ponderomotive_shift, squeeze_angle)
from .displacement import (ElementQuery, SuperpositionQuery, d_element,
                           fourier_trajectory_element, satellite_exponent,
                           semiclassical_element, superposition_bruteforce, superposition_closed)
from .lattice import LatticeFrame, build_frame, completeness_residual, project_state
from .potential import (ModelAtom, PhotonSectorPotential, build_model_atom, fourier_potential,
                        photon_sector_potential, semiclassical_veff)
from .kh import (KHQuery, SpectrumRow, amplitude_A, amplitude_B, dipole_elements,
                 hhg_spectrum, transition_amplitude)
