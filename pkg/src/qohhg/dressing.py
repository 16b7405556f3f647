"""Per-mode elimination of the minimal-coupling terms.

One laser mode coupled to an electron in the dipole approximation gives the
quadratic form

    K / (hbar omega) = c (a + a+) + beta/2 (a^2 + a+^2) + (1 + beta)(a+ a + 1/2),

with c = sqrt(beta / (m hbar omega)) (p . eps).  A squeeze S(theta) removes
the a^2 terms and a displacement D(sigma) removes the linear term, leaving
hbar omega~ (a+ a + 1/2 - sigma^2).  The functions here return the
parameters of that transformation and check it on a Fock matrix.

Units are Gaussian CGS, with eV, microns and fs at the edges, because the
reference numbers for these relations are quoted that way.
"""

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from . import units
from .fock import annihilation, displacement_matrix, padded_block, squeeze_matrix

__all__ = [
    "FieldConfig",
    "DressedMode",
    "ModeCount",
    "plasma_frequency",
    "beta_param",
    "squeeze_angle",
    "squeeze_residual",
    "dressed_frequency",
    "harmonic_blue_shift",
    "intensity_mu",
    "ponderomotive_shift",
    "oscillation_amplitude",
    "mode_count",
    "sigma_scale",
    "sigma_scale_dressed",
    "quadratic_form_matrix",
    "conjugated_form",
    "conjugation_check",
    "density_for_beta",
    "diagonalize_mode",
    "ponderomotive_expectation",
    "mu_from_occupation",
    "mu_from_photon_number",
]


@dataclass(frozen=True)
class FieldConfig:
    """Laser and target parameters.

    intensity in W/cm^2, wavelength in microns, pulse_duration in fs,
    electron_density in cm^-3, target_area in cm^2, solid_angle in sr.
    """

    intensity: float = 3e13
    wavelength: float = 0.8
    pulse_duration: float = 35.0
    electron_density: float = 1e18
    target_area: float = 0.5e-2
    solid_angle: float = 1.24e-3

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not value > 0:
                raise ValueError(f"{name} must be strictly positive, got {value!r}")


@dataclass(frozen=True)
class DressedMode:
    omega: float  # rad/s
    beta: float
    theta: float
    omega_tilde: float  # rad/s
    sigma_scale: float  # sigma per unit (p . eps), (g cm/s)^-1
    alpha0: float  # classical oscillation amplitude, cm
    mu: float

    def to_dict(self):
        return asdict(self)


class ModeCount(NamedTuple):
    spatial: int
    temporal: int


def _round_half_up(x):
    return int(math.floor(x + 0.5))


def plasma_frequency(electron_density):
    """omega_p = sqrt(4 pi n_e e^2 / m) in rad/s."""
    return math.sqrt(4.0 * math.pi * electron_density * units.E_CHARGE ** 2 / units.M_ELECTRON)


def beta_param(omega, electron_density):
    """Dimensionless coupling beta = omega_p^2 / (2 omega^2)."""
    if not omega > 0:
        raise ValueError("omega must be positive")
    return plasma_frequency(electron_density) ** 2 / (2.0 * omega ** 2)


def density_for_beta(omega, beta):
    """Electron density (cm^-3) that gives coupling ``beta`` at frequency ``omega``."""
    return 2.0 * beta * omega ** 2 * units.M_ELECTRON / (4.0 * math.pi * units.E_CHARGE ** 2)


def squeeze_residual(beta, theta):
    """beta cosh(2 theta) - (1 + beta) sinh(2 theta); zero at the right angle."""
    return beta * math.cosh(2.0 * theta) - (1.0 + beta) * math.sinh(2.0 * theta)


def squeeze_angle(beta):
    """Squeeze angle theta = ln(1 + 2 beta) / 4 that cancels the a^2 terms."""
    if beta < 0:
        raise ValueError("beta must be non-negative")
    return 0.25 * math.log1p(2.0 * beta)


def dressed_frequency(omega, beta):
    """Plasmon-dressed frequency omega sqrt(1 + 2 beta)."""
    if not omega > 0:
        raise ValueError("omega must be positive")
    return omega * math.sqrt(1.0 + 2.0 * beta)


def harmonic_blue_shift(omega, beta, order=1):
    """Energy shift (eV) of the ``order``-th harmonic, order * hbar (omega~ - omega)."""
    return order * units.ev_from_omega(dressed_frequency(omega, beta) - omega)


def intensity_mu(intensity, wavelength):
    """mu = 8.5e-10 sqrt(I) lambda, I in W/cm^2 and lambda in microns."""
    if intensity < 0 or wavelength <= 0:
        raise ValueError("intensity must be >= 0 and wavelength > 0")
    return 8.5e-10 * math.sqrt(intensity) * wavelength


def ponderomotive_shift(mu):
    """U_p = mu^2 m c^2 / 4 in eV."""
    if mu < 0:
        raise ValueError("mu must be non-negative")
    return 0.25 * mu ** 2 * units.MC2_EV


def oscillation_amplitude(mu, wavelength):
    """Quiver amplitude mu lambda / 2 pi in cm (wavelength in microns)."""
    return mu * wavelength * units.MICRON_CM / (2.0 * math.pi)


def mode_count(config):
    """Transverse and longitudinal mode counts in the interaction volume.

    spatial = (f / lambda^2) dOmega and temporal = tau c / lambda, each
    rounded half up.
    """
    lam = config.wavelength * units.MICRON_CM
    spatial = config.target_area / lam ** 2 * config.solid_angle
    cycles = config.pulse_duration * units.FS * units.C_LIGHT / lam
    return ModeCount(_round_half_up(spatial), _round_half_up(cycles))


def sigma_scale(omega, beta):
    """-sqrt(beta / (m hbar omega)) e^(-3 theta): sigma per unit p . eps."""
    theta = squeeze_angle(beta)
    return -math.sqrt(beta / (units.M_ELECTRON * units.HBAR * omega)) * math.exp(-3.0 * theta)


def sigma_scale_dressed(omega, beta):
    """The same factor written with dressed quantities, -sqrt(beta~ / (m hbar omega~)).

    beta~ = omega_p^2 / (2 omega~^2) = beta / (1 + 2 beta).
    """
    omega_t = dressed_frequency(omega, beta)
    beta_t = beta / (1.0 + 2.0 * beta)
    return -math.sqrt(beta_t / (units.M_ELECTRON * units.HBAR * omega_t))


def quadratic_form_matrix(beta, coupling, dim):
    """K / (hbar omega) on a truncated Fock space.

    ``coupling`` is the c-number c = sqrt(beta / m hbar omega) (p . eps).
    """
    a = annihilation(dim)
    ad = a.T
    eye = np.eye(dim)
    return (coupling * (a + ad) + 0.5 * beta * (a @ a + ad @ ad)
            + (1.0 + beta) * (ad @ a + 0.5 * eye))


def conjugated_form(beta, sigma, dim=64, pad=64):
    """D(sigma)+ S(theta)+ K S(theta) D(sigma) / (hbar omega) on a ``dim`` block.

    The product is formed in a space of ``dim + pad`` levels and then cut
    to the leading ``dim x dim`` block, so the truncation edge stays out of
    the checked region.  The coupling is chosen so the displacement that
    cancels the linear term is exactly ``sigma``.

    Returns
    -------
    numpy.ndarray
        the transformed block, expected to equal
        e^(2 theta) diag(n + 1/2 - sigma^2)
    """
    theta = squeeze_angle(beta)
    coupling = -sigma * math.exp(3.0 * theta)
    work = dim + pad
    k_mat = quadratic_form_matrix(beta, coupling, work)
    s_mat = squeeze_matrix(theta, work).entries
    d_mat = displacement_matrix(sigma, work).entries
    u = s_mat @ d_mat
    return padded_block(u.conj().T @ k_mat @ u, dim)


def conjugation_check(beta, sigma, dim=64):
    """Deviation of the conjugated form from e^(2 theta) diag(n + 1/2 - sigma^2).

    Returns
    -------
    dict
        ``matrix_offdiag_max``, ``matrix_diag_max_dev`` and ``matrix_dim``
    """
    theta = squeeze_angle(beta)
    block = conjugated_form(beta, sigma, dim)
    expected = math.exp(2.0 * theta) * (np.arange(dim) + 0.5 - sigma ** 2)
    offdiag = block - np.diag(np.diag(block))
    return {
        "matrix_offdiag_max": float(np.max(np.abs(offdiag))),
        "matrix_diag_max_dev": float(np.max(np.abs(np.diag(block) - expected))),
        "matrix_dim": dim,
    }


def diagonalize_mode(omega, electron_density, p_eps, intensity=0.0, matrix_check=True):
    """Dress one mode and verify the diagonalization.

    Parameters
    ----------
    omega : float
        angular frequency, rad/s
    electron_density : float
        cm^-3
    p_eps : float
        momentum component along the polarization, g cm/s (a c-number)
    intensity : float, optional
        W/cm^2, only used for ``mu`` and ``alpha0``
    matrix_check : bool
        also conjugate the Fock matrix of K and report its off-diagonal part

    Returns
    -------
    mode : DressedMode
    diagnostics : dict
        ``squeeze_residual`` (a^2 coefficient after S), ``linear_residual``
        (a + a+ coefficient after D), ``sigma``, ``constant_shift``
        (-omega~ sigma^2 / omega, in units of hbar omega), the relative
        difference between the bare and dressed forms of the sigma
        prefactor, and the matrix-check entries
    """
    beta = beta_param(omega, electron_density)
    theta = squeeze_angle(beta)
    omega_t = dressed_frequency(omega, beta)
    scale = sigma_scale(omega, beta)
    sigma = scale * p_eps
    wavelength = 2.0 * math.pi * units.C_LIGHT / omega / units.MICRON_CM
    mu = intensity_mu(intensity, wavelength) if intensity > 0 else 0.0
    mode = DressedMode(
        omega=omega, beta=beta, theta=theta, omega_tilde=omega_t,
        sigma_scale=scale, alpha0=oscillation_amplitude(mu, wavelength), mu=mu,
    )
    coupling = math.sqrt(beta / (units.M_ELECTRON * units.HBAR * omega)) * p_eps
    # after S the linear coefficient is coupling e^-theta and the number term e^(2 theta)
    linear = coupling * math.exp(-theta) + math.exp(2.0 * theta) * sigma
    dressed = sigma_scale_dressed(omega, beta)
    diagnostics = {
        "squeeze_residual": squeeze_residual(beta, theta),
        "linear_residual": linear,
        "sigma": sigma,
        "constant_shift": -math.exp(2.0 * theta) * sigma ** 2,
        "sigma_form_rel_diff": abs(scale - dressed) / abs(dressed) if dressed else 0.0,
    }
    if matrix_check:
        diagnostics.update(conjugation_check(beta, sigma))
    return mode, diagnostics


def ponderomotive_expectation(omega, electron_density, nbar):
    """hbar omega beta (nbar + 1/2) for one mode, in eV."""
    beta = beta_param(omega, electron_density)
    return units.HBAR * omega * beta * (nbar + 0.5) / units.EV


def mu_from_photon_number(omega, electron_density, photons):
    """Intensity parameter e F / (m c omega) of one mode of volume 1/n_e.

    The field strength follows from F^2 / 8 pi = n_e hbar omega * photons.
    """
    f2 = 8.0 * math.pi * electron_density * units.HBAR * omega * photons
    return units.E_CHARGE * math.sqrt(f2) / (units.M_ELECTRON * units.C_LIGHT * omega)


def mu_from_occupation(omega, electron_density, nbar):
    """mu of a mode holding nbar photons plus the half quantum of the vacuum."""
    return mu_from_photon_number(omega, electron_density, nbar + 0.5)
