"""Physical constants in Gaussian-CGS units and conversion helpers.

Values derive from CODATA via :mod:`scipy.constants`; the six-figure
numbers in the comments are for reference.
"""

import math

from scipy import constants as _sc

# elementary charge, statC (4.80320e-10)
E_CHARGE = _sc.e * _sc.c * 10.0
# electron mass, g (9.10938e-28)
M_ELECTRON = _sc.m_e * 1e3
# speed of light, cm/s (2.99792e10)
C_LIGHT = _sc.c * 1e2
# reduced Planck constant, erg s (1.05457e-27)
HBAR = _sc.hbar * 1e7
# one electron volt in erg (1.60218e-12)
EV = _sc.e * 1e7
# electron rest energy, eV (510999)
MC2_EV = _sc.m_e * _sc.c ** 2 / _sc.e
# Bohr radius, cm (5.29177e-9)
BOHR_CM = _sc.physical_constants["Bohr radius"][0] * 1e2
# Hartree energy, eV (27.2114)
HARTREE_EV = _sc.physical_constants["Hartree energy in eV"][0]
# fine-structure constant inverse (137.036), i.e. c in atomic units
C_AU = 1.0 / _sc.alpha
# atomic unit of time, s (2.41888e-17)
AU_TIME = _sc.physical_constants["atomic unit of time"][0]

MICRON_CM = 1e-4
FS = 1e-15


def omega_from_ev(energy_ev):
    """Angular frequency (rad/s) of a photon with the given energy in eV."""
    return energy_ev * EV / HBAR


def ev_from_omega(omega):
    return HBAR * omega / EV


def omega_from_wavelength(wavelength_um):
    """Angular frequency (rad/s) for a vacuum wavelength in microns."""
    return 2.0 * math.pi * C_LIGHT / (wavelength_um * MICRON_CM)


def omega_to_au(omega):
    """rad/s -> atomic units of angular frequency."""
    return omega * AU_TIME


def cm_to_au(length_cm):
    return length_cm / BOHR_CM
