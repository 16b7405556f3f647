"""One-dimensional model atom and the photon-sector effective potential.

The atom is a soft-core well V(x) = -1/sqrt(x^2 + a^2) on a symmetric
Dirichlet grid, in atomic units.  The photon-sector potential is the
matrix element <n1| V(x + a_hat) - V(x) |n0> of the displaced potential,
obtained by multiplying each Fourier component of V by the number-state
element of D(s q).
"""

import functools
import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import eigh

from .displacement import d_element_real_array
from .exceptions import NumericalDomainError
from .special import laguerre_log_sequence, log_factorial_ratio

__all__ = [
    "ModelAtom",
    "PhotonSectorPotential",
    "soft_core",
    "build_model_atom",
    "fourier_potential",
    "inverse_fourier",
    "photon_sector_potential",
    "coherent_sector_potential",
    "semiclassical_veff",
    "semiclassical_phase_coefficient",
    "scale_from_amplitude",
    "GAMMA_MAX",
]

GAMMA_MAX = 50.0


def soft_core(x, a=1.0):
    """-1 / sqrt(x^2 + a^2)."""
    return -1.0 / np.sqrt(np.asarray(x, dtype=float) ** 2 + a * a)


@dataclass(frozen=True)
class ModelAtom:
    """Grid, potential and eigenbasis of the model atom.

    ``states[:, r]`` is the r-th eigenvector, normalized so that
    sum_i states[i, r]^2 * h = 1.  ``parity[r]`` is +1 or -1.
    """

    x: np.ndarray
    h: float
    box_half_width: float
    softening: float
    potential: np.ndarray
    energies: np.ndarray
    states: np.ndarray
    parity: np.ndarray
    potential_fn: Callable

    @property
    def n_points(self):
        return self.x.shape[0]

    @property
    def n_bound(self):
        return int(np.sum(self.energies < 0))

    def orthonormality_error(self):
        gram = self.states.T @ self.states * self.h
        return float(np.max(np.abs(gram - np.eye(gram.shape[0]))))

    def parity_leakage(self):
        """Largest cross-parity component of any eigenvector."""
        mirrored = self.states[::-1, :] * self.parity[None, :]
        return float(np.max(np.abs(self.states - mirrored)) * math.sqrt(self.h))


@dataclass(frozen=True)
class PhotonSectorPotential:
    n1: int
    n0: int
    scale: float
    values: np.ndarray


def _parity_basis(n):
    """Orthonormal even and odd combinations of mirrored grid points."""
    half = n // 2
    idx = np.arange(half)
    even = np.zeros((n, half + n % 2))
    odd = np.zeros((n, half))
    c = 1.0 / math.sqrt(2.0)
    even[idx, idx] = c
    even[n - 1 - idx, idx] = c
    odd[idx, idx] = c
    odd[n - 1 - idx, idx] = -c
    if n % 2:
        even[half, half] = 1.0
    return even, odd


def _fix_sign(vecs):
    # first component above 1e-3 of the column maximum made positive
    mags = np.abs(vecs)
    first = np.argmax(mags > 1e-3 * mags.max(axis=0, keepdims=True), axis=0)
    signs = np.sign(vecs[first, np.arange(vecs.shape[1])])
    return vecs * signs[None, :]


def build_model_atom(box_half_width=60.0, n_points=1200, softening=1.0, potential_fn=None):
    """Diagonalize the finite-difference Hamiltonian of the model atom.

    Grid points are x_j = -L + (j + 1) h with h = 2L / (N + 1) and
    psi = 0 assumed at +-L.  The Hamiltonian -1/2 d^2/dx^2 + V uses the
    three-point Laplacian.  It is split into even and odd blocks, so every
    eigenvector has exact parity when V is even.

    Parameters
    ----------
    potential_fn : callable, optional
        even potential V(x); default soft-core with the given softening

    Raises
    ------
    NumericalDomainError
        if no eigenvalue is negative
    """
    n = int(n_points)
    L = float(box_half_width)
    if not 200 <= n <= 8000:
        raise ValueError("n_points must be in [200, 8000]")
    if L < 20:
        raise ValueError("box_half_width must be >= 20")
    if potential_fn is None:
        potential_fn = functools.partial(soft_core, a=float(softening))
    h = 2.0 * L / (n + 1)
    x = -L + h * np.arange(1, n + 1)
    v = potential_fn(x)
    ham = (np.diag(v + 1.0 / h ** 2)
           + np.diag(np.full(n - 1, -0.5 / h ** 2), 1)
           + np.diag(np.full(n - 1, -0.5 / h ** 2), -1))
    blocks = []
    for basis, tag in zip(_parity_basis(n), (1, -1)):
        e, u = eigh(basis.T @ ham @ basis)
        blocks.append((e, basis @ u, np.full(e.shape, tag)))
    energies = np.concatenate([b[0] for b in blocks])
    states = np.concatenate([b[1] for b in blocks], axis=1)
    parity = np.concatenate([b[2] for b in blocks])
    order = np.argsort(energies, kind="stable")
    energies, states, parity = energies[order], states[:, order], parity[order]
    if not energies[0] < 0:
        raise NumericalDomainError("no bound state: lowest eigenvalue is not negative")
    states = _fix_sign(states) / math.sqrt(h)
    for arr in (x, v, energies, states, parity):
        arr.setflags(write=False)
    return ModelAtom(x, h, L, float(softening), v, energies, states, parity, potential_fn)


def _q_grid(n, h):
    dq = 2.0 * math.pi / (n * h)
    return np.fft.fftfreq(n, d=1.0 / n) * dq, dq


def fourier_potential(atom):
    """Fourier samples Vt(q) = sum_j V(x_j) e^(-i q x_j) h on the dual grid.

    Returns
    -------
    q, vt : numpy.ndarray
        q in FFT order (0, dq, ..., then negative values); the inverse is
        :func:`inverse_fourier`
    """
    q, _ = _q_grid(atom.n_points, atom.h)
    vt = atom.h * np.exp(-1j * q * atom.x[0]) * np.fft.fft(atom.potential)
    # remove imaginary round-off for the real even default
    return q, vt


def inverse_fourier(atom, q, coeffs):
    """sum_q coeffs(q) e^(i q x_j) dq / 2 pi on the atom grid."""
    dq = q[1] - q[0]
    n = atom.n_points
    return np.fft.ifft(coeffs * np.exp(1j * q * atom.x[0])) * n * dq / (2.0 * math.pi)


def _check_scale(q, scale):
    gmax = abs(scale) * np.max(np.abs(q))
    if gmax > GAMMA_MAX:
        raise NumericalDomainError(
            f"|gamma(q_max)| = {gmax:.3g} exceeds {GAMMA_MAX:g}; reduce scale or grid resolution")


def photon_sector_potential(atom, n1, n0, scale):
    """<n1| V(x + a_hat) - V(x) |n0> on the grid, with gamma(q) = scale * q.

    Raises
    ------
    NumericalDomainError
        if scale * q_max exceeds 50
    """
    if scale < 0:
        raise ValueError("scale must be non-negative")
    n1, n0 = int(n1), int(n0)
    q, vt = fourier_potential(atom)
    _check_scale(q, scale)
    factor = d_element_real_array(n1, n0, scale * q) - float(n1 == n0)
    values = inverse_fourier(atom, q, vt * factor)
    values.setflags(write=False)
    return PhotonSectorPotential(n1, n0, float(scale), values)


def scale_from_amplitude(alpha0, nbar):
    """s = alpha0 / (2 sqrt(nbar)), so <a_hat> in a coherent state oscillates with amplitude alpha0."""
    return alpha0 / (2.0 * math.sqrt(nbar))


def _coherent_weights(nbar, lo, hi):
    n = np.arange(lo, hi)
    logc = -0.5 * nbar + 0.5 * n * math.log(nbar) - 0.5 * np.array([math.lgamma(k + 1) for k in n])
    return np.exp(logc)


def coherent_sector_potential(atom, nbar, m, scale):
    """Coherent-state average sum_n c_(n+m) c_n <n+m|V_a|n> for real alpha = sqrt(nbar).

    The Poisson window n in [nbar - 14 sqrt(nbar) - 20, nbar + 14 sqrt(nbar) + 20]
    leaves out less than 1e-14 of the weight.
    """
    m = int(m)
    q, vt = fourier_potential(atom)
    _check_scale(q, scale)
    width = 14.0 * math.sqrt(nbar) + 20.0
    lo = max(0, int(nbar - width), -m)
    hi = int(nbar + width) + 1
    weights = _coherent_weights(nbar, lo + m, hi + m) * _coherent_weights(nbar, lo, hi)
    g = scale * q
    x2 = g ** 2
    mm = abs(m)
    sign, log_l = laguerre_log_sequence(hi + min(m, 0), mm, x2)
    acc = np.zeros_like(q)
    nz = g != 0
    for idx, n in enumerate(range(lo, hi)):
        k = n + m
        low = min(n, k)
        gpow = g if m >= 0 else -g
        term = np.zeros_like(q)
        if mm == 0:
            term[~nz] = 1.0
        logmag = (0.5 * log_factorial_ratio(low, low + mm) + mm * np.log(np.abs(gpow[nz]))
                  + log_l[low][nz] - 0.5 * x2[nz])
        term[nz] = sign[low][nz] * np.sign(gpow[nz]) ** mm * np.exp(logmag)
        acc += weights[idx] * term
    if m == 0:
        acc -= np.sum(weights)
    return inverse_fourier(atom, q, vt * acc)


def semiclassical_veff(atom, alpha0, phase, envelope=1.0):
    """V(x + envelope * alpha0 * sin(phase)) - V(x) on the grid.

    The displaced well sits at x = -envelope * alpha0 * sin(phase).
    Displaced positions beyond the box are clamped to the box edge, with a
    warning.
    """
    if not 0.0 <= envelope <= 1.0:
        raise ValueError("envelope must be in [0, 1]")
    shift = envelope * alpha0 * math.sin(phase)
    y = atom.x + shift
    lo, hi = -atom.box_half_width, atom.box_half_width
    if np.any(y < lo) or np.any(y > hi):
        warnings.warn(f"displaced grid leaves the box by {abs(shift):.3g}; clamping", RuntimeWarning,
                      stacklevel=2)
        y = np.clip(y, lo, hi)
    return atom.potential_fn(y) - atom.potential


def semiclassical_phase_coefficient(atom, alpha0, m, nodes=256):
    """(1/2 pi) int dphi e^(-i m phi) [V(x + alpha0 sin phi) - V(x)], by trapezoid in phi.

    Uses the potential function directly, not the grid transform, so it is an
    independent check of :func:`coherent_sector_potential`.
    """
    phi = 2.0 * math.pi * np.arange(nodes) / nodes
    y = atom.x[None, :] + alpha0 * np.sin(phi)[:, None]
    vals = atom.potential_fn(y) - atom.potential[None, :]
    return np.mean(np.exp(-1j * m * phi)[:, None] * vals, axis=0)
