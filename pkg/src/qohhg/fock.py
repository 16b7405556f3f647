"""Truncated single-mode Fock space.

States are amplitude vectors over |0>, ..., |dim-1>; operators are dense
``dim x dim`` matrices with row = output photon number.  Everything here
is deliberately brute force, because the closed-form matrix elements in
:mod:`qohhg.displacement` are checked against it.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .exceptions import DimensionMismatchError, NotNormalizedError, TruncationError

__all__ = [
    "FockVector",
    "OperatorMatrix",
    "PhotonStatistics",
    "default_dim",
    "annihilation",
    "creation",
    "number_state",
    "coherent_amplitudes",
    "coherent_vector",
    "expm_generator",
    "displacement_matrix",
    "squeeze_matrix",
    "overlap",
    "photon_statistics",
    "quadrature_variances",
    "apply_annihilation",
    "apply_creation",
    "INTERIOR_MARGIN",
    "padded_block",
]

# rows/columns excluded at the truncation edge in algebra checks
INTERIOR_MARGIN = 8
TAIL_WIDTH = 5


def default_dim(*scales):
    """Truncation size ceil((sum |s| + 6)^2) for complex scale parameters."""
    total = sum(abs(complex(s)) for s in scales)
    return int(math.ceil((total + 6.0) ** 2))


def _tail_mass(amps):
    return float(np.sum(np.abs(amps[-TAIL_WIDTH:]) ** 2))


@dataclass(frozen=True)
class FockVector:
    """Amplitudes of a single-mode state in a truncated number basis.

    Attributes
    ----------
    amps : numpy.ndarray
        complex amplitude of |n> at index n
    tail_mass : float
        probability carried by the last five basis states
    """

    amps: np.ndarray
    tail_mass: float = field(default=float("nan"))

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        if math.isnan(self.tail_mass):
            object.__setattr__(self, "tail_mass", _tail_mass(amps))

    @property
    def dim(self):
        return self.amps.shape[0]

    @property
    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.amps) ** 2)))

    def __len__(self):
        return self.dim


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense operator on the truncated space with a leakage estimate.

    ``leakage`` is the probability the vacuum column puts into the last
    ``INTERIOR_MARGIN`` rows, i.e. how much of the generated state the
    truncation edge cuts into.  Higher columns spread further; algebra on
    them should be done in a padded space (see :func:`padded_block`).
    """

    entries: np.ndarray
    leakage: float = 0.0

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def dim(self):
        return self.entries.shape[0]

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            return OperatorMatrix(self.entries @ other.entries, max(self.leakage, other.leakage))
        if isinstance(other, FockVector):
            return FockVector(self.entries @ other.amps)
        return self.entries @ other

    def interior(self, margin=INTERIOR_MARGIN):
        k = self.dim - margin
        return self.entries[:k, :k]


def padded_block(mat, dim):
    """Top-left ``dim x dim`` block of a matrix computed in a larger space."""
    return np.asarray(mat)[:dim, :dim]


class PhotonStatistics(NamedTuple):
    distribution: np.ndarray
    mean: float
    mandel_q: float  # nan when the mean photon number is below 1e-15


def annihilation(dim):
    """Matrix of a on the truncated space."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), 1).astype(complex)


def creation(dim):
    """Matrix of a^dagger on the truncated space."""
    return annihilation(dim).T.copy()


def number_state(n, dim):
    amps = np.zeros(dim, dtype=complex)
    amps[n] = 1.0
    return FockVector(amps)


def coherent_amplitudes(alpha, dim):
    """exp(-|alpha|^2/2) alpha^n / sqrt(n!) for n < dim, assembled in log domain.

    No truncation check; see :func:`coherent_vector` for the guarded version.
    """
    alpha = complex(alpha)
    n = np.arange(dim)
    if alpha == 0:
        amps = np.zeros(dim, dtype=complex)
        amps[0] = 1.0
        return amps
    lg = np.array([math.lgamma(k + 1) for k in range(dim)])
    logmag = -0.5 * abs(alpha) ** 2 + n * math.log(abs(alpha)) - 0.5 * lg
    return np.exp(logmag + 1j * n * np.angle(alpha))


def coherent_vector(alpha, dim=None):
    """Coherent state |alpha> truncated to ``dim`` number states.

    Raises
    ------
    TruncationError
        if |alpha|^2 > dim, where the Poisson tail would not fit
    """
    if dim is None:
        dim = default_dim(alpha)
    if dim < 1:
        raise ValueError("dim must be >= 1")
    if abs(complex(alpha)) ** 2 > dim:
        raise TruncationError(
            f"|alpha|^2 = {abs(complex(alpha)) ** 2:.4g} exceeds dim = {dim}; "
            f"use dim >= {default_dim(alpha)}")
    return FockVector(coherent_amplitudes(alpha, dim))


def expm_generator(gen):
    """exp(gen) by scaling and squaring with a Taylor series.

    The generator is scaled by 2^-s so that its 1-norm drops below 0.5, the
    series is summed until terms fall under machine precision, and the
    result is squared s times.
    """
    gen = np.asarray(gen, dtype=complex)
    dim = gen.shape[0]
    norm = np.max(np.sum(np.abs(gen), axis=0)) if dim else 0.0
    s = 0
    if norm > 0.5:
        s = int(math.ceil(math.log2(norm / 0.5)))
    scaled = gen / 2.0 ** s
    result = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for k in range(1, 60):
        term = term @ scaled / k
        result = result + term
        if np.max(np.abs(term)) < 1e-18:
            break
    for _ in range(s):
        result = result @ result
    return result


def _edge_leakage(mat):
    dim = mat.shape[0]
    if dim <= INTERIOR_MARGIN:
        return 0.0
    return float(np.sum(np.abs(mat[dim - INTERIOR_MARGIN:, 0]) ** 2))


def displacement_matrix(alpha, dim=None):
    """D(alpha) = exp(alpha a^dagger - conj(alpha) a) on the truncated space."""
    alpha = complex(alpha)
    if dim is None:
        dim = default_dim(alpha)
    a = annihilation(dim)
    gen = alpha * a.T - alpha.conjugate() * a
    mat = expm_generator(gen)
    return OperatorMatrix(mat, _edge_leakage(mat))


def squeeze_matrix(theta, dim=64, tol=1e-6):
    """S(theta) = exp[-theta/2 (a^dagger^2 - a^2)] for real theta.

    Raises
    ------
    TruncationError
        if the vacuum-column edge leakage exceeds ``tol``
    """
    theta = float(theta)
    a = annihilation(dim)
    ad = a.T
    gen = -0.5 * theta * (ad @ ad - a @ a)
    mat = expm_generator(gen)
    leak = _edge_leakage(mat)
    if leak > tol:
        raise TruncationError(
            f"squeeze leakage {leak:.3g} > {tol:g} at dim={dim}; increase dim")
    return OperatorMatrix(mat, leak)


def overlap(u, v):
    """<u|v> = sum conj(u_n) v_n."""
    if u.dim != v.dim:
        raise DimensionMismatchError(f"dims differ: {u.dim} vs {v.dim}")
    return complex(np.vdot(u.amps, v.amps))


def apply_annihilation(amps):
    amps = np.asarray(amps, dtype=complex)
    out = np.zeros_like(amps)
    out[:-1] = np.sqrt(np.arange(1, amps.shape[0])) * amps[1:]
    return out


def apply_creation(amps):
    amps = np.asarray(amps, dtype=complex)
    out = np.zeros_like(amps)
    out[1:] = np.sqrt(np.arange(1, amps.shape[0])) * amps[:-1]
    return out


def _check_normalized(v, tol=1e-9):
    if abs(v.norm - 1.0) > tol:
        raise NotNormalizedError(f"state norm {v.norm:.12g} deviates from 1 by more than {tol:g}")


def photon_statistics(v):
    """Photon-number distribution, mean and Mandel Q of a normalized state."""
    _check_normalized(v)
    p = np.abs(v.amps) ** 2
    n = np.arange(v.dim)
    mean = float(np.sum(n * p))
    var = float(np.sum((n - mean) ** 2 * p))
    q = (var - mean) / mean if mean >= 1e-15 else float("nan")
    return PhotonStatistics(p, mean, q)


def quadrature_variances(v):
    """Variances of X = (a + a^dagger)/2 and Y = (a - a^dagger)/2i.

    Returns
    -------
    (float, float)
    """
    psi = v.amps
    a_psi = apply_annihilation(psi)
    ad_psi = apply_creation(psi)
    x_psi = 0.5 * (a_psi + ad_psi)
    y_psi = (a_psi - ad_psi) / 2j
    mean_x = np.vdot(psi, x_psi).real
    mean_y = np.vdot(psi, y_psi).real
    var_x = np.vdot(x_psi, x_psi).real - mean_x ** 2
    var_y = np.vdot(y_psi, y_psi).real - mean_y ** 2
    return float(var_x), float(var_y)
