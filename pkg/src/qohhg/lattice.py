"""Finite von Neumann lattice frames of coherent states.

Lattice points are alpha = sqrt(pi) (n + i m), one per Planck cell.  A
finite square patch max(|n|, |m|) <= radius is linearly independent, so its
Gram matrix M is positive definite and the dual frame A = M^-1 turns
sum_kl |alpha_k> A_kl <alpha_l| into the projector onto the patch span.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .exceptions import ConditioningError, DimensionMismatchError
from .fock import FockVector, coherent_amplitudes

__all__ = [
    "LatticeFrame",
    "MAX_RADIUS",
    "spiral_indices",
    "build_frame",
    "frame_vectors",
    "completeness_residual",
    "project_state",
    "reconstruct",
    "overlap_magnitudes",
]

MAX_RADIUS = 6
RCOND_MIN = 1e-14
SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class LatticeFrame:
    """Lattice coherent states with Gram matrix and dual.

    Attributes
    ----------
    indices : tuple of (int, int)
        lattice labels (n, m) in spiral order; ``indices[k]`` labels point k
    points : numpy.ndarray
        sqrt(pi) (n + i m) for each label
    gram, dual : numpy.ndarray
        M_kl = <alpha_k|alpha_l> and A = M^-1
    eig_range : (float, float)
        smallest and largest eigenvalue of M
    biorthogonality : float
        max |A M - I|
    """

    radius: int
    indices: tuple
    points: np.ndarray
    gram: np.ndarray
    dual: np.ndarray
    eig_range: tuple
    biorthogonality: float

    @property
    def size(self):
        return len(self.indices)

    @property
    def rcond(self):
        return self.eig_range[0] / self.eig_range[1]

    def index_of(self, n, m):
        return self.indices.index((n, m))


def spiral_indices(radius):
    """Labels (n, m) with max(|n|, |m|) <= radius, counterclockwise from the origin.

    Ring k starts at (k, 1 - k), climbs to (k, k), runs left to (-k, k),
    down to (-k, -k) and right to (k, -k), so consecutive labels are
    always lattice neighbours.

    >>> spiral_indices(1)[:4]
    [(0, 0), (1, 0), (1, 1), (0, 1)]
    """
    out = [(0, 0)]
    for k in range(1, radius + 1):
        out += [(k, m) for m in range(1 - k, k + 1)]
        out += [(n, k) for n in range(k - 1, -k - 1, -1)]
        out += [(-k, m) for m in range(k - 1, -k - 1, -1)]
        out += [(n, -k) for n in range(1 - k, k + 1)]
    return out


def _gram(points):
    a = points
    mag = np.abs(a) ** 2
    return np.exp(-0.5 * mag[:, None] - 0.5 * mag[None, :] + np.conj(a)[:, None] * a[None, :])


def build_frame(radius):
    """Build the spiral-ordered frame of a square lattice patch.

    Raises
    ------
    ValueError
        if radius is negative or above 6
    ConditioningError
        if the Gram matrix reciprocal condition number is below 1e-14
    """
    radius = int(radius)
    if not 0 <= radius <= MAX_RADIUS:
        raise ValueError(f"radius must be in [0, {MAX_RADIUS}], got {radius}")
    idx = spiral_indices(radius)
    points = np.array([SQRT_PI * complex(n, m) for n, m in idx])
    gram = _gram(points)
    # exact Hermitian symmetry and unit diagonal, free of exp round-off
    gram = 0.5 * (gram + gram.conj().T)
    np.fill_diagonal(gram, 1.0)
    eig = np.linalg.eigvalsh(gram)
    lo, hi = float(eig[0]), float(eig[-1])
    if lo <= 0 or lo / hi < RCOND_MIN:
        raise ConditioningError(
            f"Gram reciprocal condition {lo / hi:.3g} below {RCOND_MIN:g}; use radius < {radius}")
    factor = cho_factor(gram, lower=True)
    eye = np.eye(len(idx))
    dual = cho_solve(factor, eye)
    dual = 0.5 * (dual + dual.conj().T)
    bio = float(np.max(np.abs(dual @ gram - eye)))
    for arr in (points, gram, dual):
        arr.setflags(write=False)
    return LatticeFrame(radius, tuple(idx), points, gram, dual, (lo, hi), bio)


def frame_vectors(frame, dim):
    """Truncated amplitudes of the frame states as the columns of a dim x K matrix."""
    return np.array([coherent_amplitudes(a, dim) for a in frame.points]).T


def completeness_residual(frame, dim):
    """max-norm distance between the frame resolution and the span projector.

    The resolution sum_kl |alpha_k> A_kl <alpha_l| uses the exact Gram
    inverse, so on the first ``dim`` number states it is the compression of
    the projector onto the infinite-space span.  P is the projector onto
    the span of the truncated frame vectors.  The residual therefore
    measures how much of the low number states the patch fails to reach.
    """
    if not 1 <= dim <= 40:
        raise ValueError("dim must be in [1, 40]")
    v = frame_vectors(frame, dim)
    resolution = v @ frame.dual @ v.conj().T
    u, s, _ = np.linalg.svd(v, full_matrices=False)
    rank = int(np.sum(s > 1e-12 * s[0]))
    proj = u[:, :rank] @ u[:, :rank].conj().T
    return float(np.max(np.abs(resolution - proj)))


def project_state(frame, v):
    """Dual-frame coefficients c = A (<alpha_k|v>) of a Fock-space state.

    sum_k c_k |alpha_k> reproduces the component of v in the frame span.
    """
    if not isinstance(v, FockVector):
        v = FockVector(v)
    w = frame_vectors(frame, v.dim)
    return frame.dual @ (w.conj().T @ v.amps)


def reconstruct(frame, coeffs, dim):
    """sum_k c_k |alpha_k> truncated to ``dim`` number states."""
    coeffs = np.asarray(coeffs, dtype=complex)
    if coeffs.shape != (frame.size,):
        raise DimensionMismatchError(f"expected {frame.size} coefficients, got {coeffs.shape}")
    return FockVector(frame_vectors(frame, dim) @ coeffs)


def overlap_magnitudes(dn, dm):
    """|<alpha'|alpha>| for lattice separation (dn, dm), and the squared value.

    |<alpha'|alpha>| = exp(-pi (dn^2 + dm^2) / 2).  The squared magnitude
    exp(-pi (dn^2 + dm^2)) is sometimes quoted in its place; both are
    returned so the two can be compared.
    """
    d2 = dn * dn + dm * dm
    return {"magnitude": math.exp(-0.5 * math.pi * d2), "magnitude_squared": math.exp(-math.pi * d2)}
