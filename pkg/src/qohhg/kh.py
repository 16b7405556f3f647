"""Kramers-Heisenberg amplitudes for harmonic emission in a quantized mode.

For a laser mode going from n0 to n1 = n0 - order photons while the atom
goes from psi_0 to psi_1 and one harmonic photon of frequency omega' is
emitted,

    A = sum_r <1|p|r> <r|W|0> / (E_r - E_0 - order*omega~ + i Gamma_r/2)
    B = sum_r <1|W|r> <r|p|0> / (E_r - E_0 + omega' + i Gamma_r/2)

with W the photon-sector potential <n1|V_a|n0> and
omega' = order*omega~ + E_0 - E_1.  Atomic units throughout.
"""

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import units
from .dressing import beta_param, dressed_frequency, intensity_mu, oscillation_amplitude
from .potential import photon_sector_potential, scale_from_amplitude
from .units import C_AU

__all__ = [
    "KHQuery",
    "SpectrumRow",
    "GAMMA_CONTINUUM",
    "GAMMA_BOUND",
    "DEFAULT_OMEGA_TILDE",
    "DEFAULT_SCALE",
    "DEFAULT_ALPHA0",
    "threshold_order",
    "dipole_elements",
    "position_elements",
    "sector_matrix_columns",
    "widths",
    "amplitude_A",
    "amplitude_B",
    "transition_amplitude",
    "hhg_spectrum",
    "plateau_diagnostic",
    "intensity_prefactor",
]

GAMMA_CONTINUUM = 0.005
GAMMA_BOUND = 1e-8
DEFAULT_N0 = 400


def _default_omega_tilde():
    # 1.5 eV photons dressed by 1e18 cm^-3 free electrons
    omega = units.omega_from_ev(1.5)
    return units.omega_to_au(dressed_frequency(omega, beta_param(omega, 1e18)))


def _default_alpha0():
    # quiver amplitude at 3e13 W/cm^2 and 0.8 um, in Bohr radii
    return units.cm_to_au(oscillation_amplitude(intensity_mu(3e13, 0.8), 0.8))


DEFAULT_OMEGA_TILDE = _default_omega_tilde()
DEFAULT_ALPHA0 = _default_alpha0()
DEFAULT_SCALE = scale_from_amplitude(DEFAULT_ALPHA0, DEFAULT_N0)


@dataclass(frozen=True)
class KHQuery:
    atom: object
    n0: int = DEFAULT_N0
    n1: int = DEFAULT_N0 - 1
    laser_omega_tilde: float = DEFAULT_OMEGA_TILDE
    scale: float = DEFAULT_SCALE
    gamma_width: float = GAMMA_CONTINUUM
    initial_state_index: int = 0
    final_state_index: int = 0

    def __post_init__(self):
        if not self.n0 >= self.n1 >= 0:
            raise ValueError("need n0 >= n1 >= 0")
        if not self.gamma_width > 0:
            raise ValueError("gamma_width must be positive")
        if not self.laser_omega_tilde > 0:
            raise ValueError("laser_omega_tilde must be positive")

    @property
    def order(self):
        return self.n0 - self.n1


@dataclass(frozen=True)
class SpectrumRow:
    order: int
    omega_prime: float
    a_term: complex
    b_term: complex
    total: complex
    intensity: float
    radiative: bool = True

    def as_dict(self):
        return {
            "order": self.order, "omega_prime": self.omega_prime,
            "reA": self.a_term.real, "imA": self.a_term.imag,
            "reB": self.b_term.real, "imB": self.b_term.imag,
            "intensity": self.intensity,
        }


def _centered_derivative(states, h):
    d = np.zeros_like(states)
    d[1:-1] = (states[2:] - states[:-2]) / (2.0 * h)
    d[0] = states[1] / (2.0 * h)
    d[-1] = -states[-2] / (2.0 * h)
    return d


def dipole_elements(atom):
    """Real antisymmetric matrix M_ab = <a|d/dx|b> (centered differences).

    The momentum matrix is p = -i M.  With the three-point Laplacian the
    commutator [H, x] equals -d/dx on the grid, so <a|p|b> = i (E_a - E_b) <a|x|b>
    holds up to round-off.
    """
    m = atom.states.T @ _centered_derivative(atom.states, atom.h) * atom.h
    return 0.5 * (m - m.T)


def position_elements(atom):
    """<a|x|b> under grid quadrature."""
    return atom.states.T @ (atom.x[:, None] * atom.states) * atom.h


def sector_matrix_columns(atom, values, idx):
    """<r|W|idx> for all r, where W is multiplication by ``values``."""
    return atom.states.T @ (values * atom.states[:, idx]) * atom.h


def widths(atom, gamma_width=GAMMA_CONTINUUM):
    """Gamma_r: ``gamma_width`` for continuum states, 1e-8 for bound ones."""
    return np.where(atom.energies > 0, gamma_width, GAMMA_BOUND)


def intensity_prefactor(omega_prime):
    """(2 pi)^2 (1/c)^2 (2 pi / omega') with unit quantization volume, atomic units."""
    return (2.0 * math.pi / C_AU) ** 2 * (2.0 * math.pi / omega_prime)


class _Tables:
    """Shared read-only tables for one (atom, n0, n1, scale)."""

    def __init__(self, q, dipole=None, sector=None):
        atom = q.atom
        self.dipole = dipole_elements(atom) if dipole is None else dipole
        if sector is None:
            sector = photon_sector_potential(atom, q.n1, q.n0, q.scale).values
        self.sector = sector
        i0, i1 = q.initial_state_index, q.final_state_index
        self.w_r0 = sector_matrix_columns(atom, sector, i0)
        # <1|W|r> = sum_x psi_1 W psi_r, i.e. the same column for index 1
        self.w_1r = sector_matrix_columns(atom, sector, i1)
        self.width = widths(atom, q.gamma_width)


def _omega_prime(q):
    e = q.atom.energies
    # parenthesized so the elastic case is exactly order * omega~
    return q.order * q.laser_omega_tilde + (e[q.initial_state_index] - e[q.final_state_index])


def _a_terms(q, t, n_states=None):
    e = q.atom.energies
    i0, i1 = q.initial_state_index, q.final_state_index
    sl = slice(0, n_states)
    p_1r = -1j * t.dipole[i1, sl]
    den = e[sl] - e[i0] - q.order * q.laser_omega_tilde + 0.5j * t.width[sl]
    return p_1r * t.w_r0[sl] / den


def _b_terms(q, t, n_states=None):
    e = q.atom.energies
    i0 = q.initial_state_index
    sl = slice(0, n_states)
    p_r0 = -1j * t.dipole[sl, i0]
    den = e[sl] - e[i0] + _omega_prime(q) + 0.5j * t.width[sl]
    return t.w_1r[sl] * p_r0 / den


def amplitude_A(q, tables=None, n_states=None):
    """Resonant term, summed over the lowest ``n_states`` eigenstates (default all)."""
    t = tables or _Tables(q)
    return complex(np.sum(_a_terms(q, t, n_states)))


def amplitude_B(q, tables=None, n_states=None):
    """Non-resonant term, summed over the lowest ``n_states`` eigenstates (default all)."""
    t = tables or _Tables(q)
    return complex(np.sum(_b_terms(q, t, n_states)))


def transition_amplitude(q, tables=None, n_states=None, diagnostics=False):
    """A, B, their sum and the emitted intensity for one order.

    Rows with omega' <= 0 cannot radiate and get intensity 0.  With
    ``diagnostics=True`` a second value is returned holding the per-state
    moduli |<1|p|r> <r|W|0>| of the A-term numerators.
    """
    t = tables or _Tables(q)
    a = amplitude_A(q, t, n_states)
    b = amplitude_B(q, t, n_states)
    wp = _omega_prime(q)
    total = a + b
    if wp > 0:
        row = SpectrumRow(q.order, wp, a, b, total, intensity_prefactor(wp) * abs(total) ** 2)
    else:
        row = SpectrumRow(q.order, wp, a, b, total, 0.0, radiative=False)
    if diagnostics:
        i1 = q.final_state_index
        numer = np.abs(t.dipole[i1, :] * t.w_r0)
        return row, {"energies": q.atom.energies.copy(), "a_numerators": numer,
                     "dipole_row": t.dipole[i1, :].copy()}
    return row


def hhg_spectrum(q_base, max_order, n_states=None, diagnostics=False):
    """Rows for orders 1..max_order, with n1 = n0 - order.

    Warns when max_order * omega~ goes past the highest box eigenvalue.
    """
    atom = q_base.atom
    ceiling = atom.energies[-1] - atom.energies[q_base.initial_state_index]
    if max_order * q_base.laser_omega_tilde > ceiling:
        warnings.warn("max_order * omega~ exceeds the discretized spectrum", RuntimeWarning,
                      stacklevel=2)
    if max_order > q_base.n0:
        raise ValueError("max_order exceeds n0")
    dipole = dipole_elements(atom)
    rows, diags = [], []
    for order in range(1, max_order + 1):
        q = replace(q_base, n1=q_base.n0 - order)
        t = _Tables(q, dipole=dipole)
        out = transition_amplitude(q, t, n_states, diagnostics)
        if diagnostics:
            rows.append(out[0])
            diags.append(out[1])
        else:
            rows.append(out)
    if diagnostics:
        return rows, diags
    return rows


def threshold_order(atom, omega_tilde, initial_state_index=0):
    """Lowest order with E_0 + order * omega~ > 0."""
    e0 = atom.energies[initial_state_index]
    return int(math.floor(-e0 / omega_tilde)) + 1


def plateau_diagnostic(rows, threshold_order):
    """Per-order decades of decay of odd orders below and above threshold.

    The threshold order is the first order with E_0 + order*omega~ > 0.
    Decay per order between consecutive odd orders k and k+2 is
    log10(I_k / I_(k+2)) / 2.

    Returns
    -------
    dict
        ``below`` and ``above`` lists of (order, decades per order), and
        ``plateau_ratio``: max above-threshold intensity over the intensity
        of the last row
    """
    odd = [r for r in rows if r.order % 2 == 1 and r.intensity > 0]
    below, above = [], []
    for r0, r1 in zip(odd, odd[1:]):
        rate = math.log10(r0.intensity / r1.intensity) / (r1.order - r0.order)
        (above if r0.order >= threshold_order else below).append((r0.order, rate))
    plateau = [r.intensity for r in odd if r.order >= threshold_order]
    ratio = max(plateau) / odd[-1].intensity if plateau and odd[-1].intensity > 0 else float("nan")
    return {"below": below, "above": above, "plateau_ratio": ratio}
