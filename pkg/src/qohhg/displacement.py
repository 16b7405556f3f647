"""Matrix elements of displacement operators between number states and
their coherent-state superpositions.

Three routes to the same superposition amplitude

    S_m = sum_n conj(<n+m|beta>) <n+m|D(gamma)|n> <n|alpha>

are provided: the direct sum (:func:`superposition_bruteforce`), the
Bessel closed form (:func:`superposition_closed`) and the trajectory
Fourier integral (:func:`fourier_trajectory_element`).  m > 0 is emission
into the mode, m < 0 absorption.
"""

import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy.special import gammaincc

from . import units
from .dressing import beta_param, dressed_frequency, mu_from_photon_number
from .exceptions import NumericalDomainError, TruncationError
from .special import (bessel_j_complex, bessel_j_recurrence, laguerre_log,
                      laguerre_log_sequence, laurent_coefficient, log_factorial_ratio)

__all__ = [
    "ElementQuery",
    "SuperpositionQuery",
    "d_element",
    "displacement_element",
    "d_element_real_array",
    "branch_pair",
    "superposition_bruteforce",
    "superposition_closed",
    "semiclassical_element",
    "fourier_trajectory_element",
    "trajectory_exponent",
    "satellite_exponent",
    "poisson_tail",
    "default_terms",
    "bessel_argument_closure",
    "overlap_prefactor",
]

TAIL_TOL = 1e-14
# sum |terms| / |sum| above which the direct sum is redone in extended precision
CANCELLATION_LIMIT = 1e4


@dataclass(frozen=True)
class ElementQuery:
    k: int
    n: int
    gamma: complex

    def __post_init__(self):
        if self.k < 0 or self.n < 0:
            raise ValueError("photon numbers must be non-negative")


@dataclass(frozen=True)
class SuperpositionQuery:
    alpha: complex
    beta: complex
    gamma: complex
    m: int = 0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma"):
            if not cmath.isfinite(complex(getattr(self, name))):
                raise ValueError(f"{name} must be finite")


def displacement_element(k, n, gamma):
    """<k|D(gamma)|n> from the Laguerre closed form, in log-magnitude + phase.

    For k >= n the element is sqrt(n!/k!) gamma^(k-n) L_n^(k-n)(|gamma|^2)
    e^(-|gamma|^2/2); for k < n gamma is replaced by -conj(gamma) and the
    roles of k and n swap.

    Examples
    --------
    >>> round(displacement_element(1, 0, 0.5).real, 9)
    0.441248451
    """
    k = int(k)
    n = int(n)
    gamma = complex(gamma)
    if gamma == 0:
        return complex(k == n)
    if k >= n:
        lo, hi, g = n, k, gamma
    else:
        lo, hi, g = k, n, -gamma.conjugate()
    m = hi - lo
    x = abs(g) ** 2
    sign, log_l = laguerre_log(lo, m, x)
    if sign == 0:
        return 0j
    logmag = 0.5 * log_factorial_ratio(lo, hi) + m * math.log(abs(g)) + log_l - 0.5 * x
    return float(sign) * cmath.exp(complex(logmag, m * cmath.phase(g)))


def d_element(q):
    """<k|D(gamma)|n> for an :class:`ElementQuery`."""
    return displacement_element(q.k, q.n, q.gamma)


def d_element_real_array(k, n, gammas):
    """<k|D(g)|n> for an array of real g, vectorized over g.

    Used for the photon-sector potential, where g = s q runs over a whole
    momentum grid.
    """
    g = np.asarray(gammas, dtype=float)
    lo, hi = min(k, n), max(k, n)
    m = hi - lo
    x = g ** 2
    sign, log_l = laguerre_log_sequence(lo, m, x)
    sign, log_l = sign[lo], log_l[lo]
    out = np.zeros_like(g)
    nz = g != 0
    if m == 0:
        out[~nz] = 1.0
    gnz = g[nz]
    if k < n:
        gnz = -gnz
    logmag = 0.5 * log_factorial_ratio(lo, hi) + m * np.log(np.abs(gnz)) + log_l[nz] - 0.5 * x[nz]
    out[nz] = sign[nz] * np.sign(gnz) ** m * np.exp(logmag)
    return out


def poisson_tail(mean, start):
    """P(N >= start) for N ~ Poisson(mean)."""
    if start <= 0:
        return 1.0
    if mean == 0:
        return 0.0
    # P(N >= s) = P(s, mean), the regularized lower incomplete gamma
    return float(1.0 - gammaincc(start, mean))


def default_terms(q):
    """Number of summed terms that leaves both Poisson tails below 1e-14."""
    lam = max(abs(q.alpha), abs(q.beta)) ** 2
    return int(lam + 12.0 * math.sqrt(lam) + abs(q.m) + 40)


def _log_coherent(alpha, n):
    """log of <n|alpha> (complex), -inf magnitude handled by the caller."""
    return complex(-0.5 * abs(alpha) ** 2 + n * math.log(abs(alpha)) - 0.5 * math.lgamma(n + 1),
                   n * cmath.phase(alpha))


def _coherent_amp(alpha, n):
    if alpha == 0:
        return complex(n == 0)
    return cmath.exp(_log_coherent(alpha, n))


def _bruteforce_terms(q, n_terms):
    alpha, beta, gamma, m = complex(q.alpha), complex(q.beta), complex(q.gamma), q.m
    terms = []
    for n in range(max(0, -m), n_terms):
        k = n + m
        terms.append(_coherent_amp(beta, k).conjugate() * displacement_element(k, n, gamma)
                     * _coherent_amp(alpha, n))
    return terms


def _bruteforce_mp(q, n_terms, dps):
    with mpmath.workdps(dps):
        alpha = mpmath.mpc(q.alpha)
        beta = mpmath.mpc(q.beta)
        gamma = mpmath.mpc(q.gamma)
        m = q.m
        x = abs(gamma) ** 2
        pref_a = mpmath.exp(-abs(alpha) ** 2 / 2)
        pref_b = mpmath.exp(-abs(beta) ** 2 / 2)
        pref_g = mpmath.exp(-x / 2)
        total = mpmath.mpc(0)
        for n in range(max(0, -m), n_terms):
            k = n + m
            if k >= n:
                d = (mpmath.sqrt(mpmath.factorial(n) / mpmath.factorial(k)) * gamma ** (k - n)
                     * mpmath.laguerre(n, k - n, x))
            else:
                d = (mpmath.sqrt(mpmath.factorial(k) / mpmath.factorial(n))
                     * (-mpmath.conj(gamma)) ** (n - k) * mpmath.laguerre(k, n - k, x))
            cb = pref_b * beta ** k / mpmath.sqrt(mpmath.factorial(k))
            ca = pref_a * alpha ** n / mpmath.sqrt(mpmath.factorial(n))
            total += mpmath.conj(cb) * d * ca
        total *= pref_g
        return complex(total)


def superposition_bruteforce(q, n_terms=None, precision="auto"):
    """Direct sum of coherent weights times number-state elements.

    Parameters
    ----------
    q : SuperpositionQuery
    n_terms : int, optional
        number of initial photon numbers summed; default from
        :func:`default_terms`
    precision : {"auto", "double"} or int
        ``"double"`` sums in floating point.  An integer sums with that many
        decimal digits.  ``"auto"`` (default) sums in floating point and
        repeats the sum at 40 digits when cancellation between terms
        exceeds 1e4, which happens when |beta - alpha| is large.

    Raises
    ------
    TruncationError
        if the Poisson tail beyond ``n_terms`` exceeds 1e-14
    """
    if n_terms is None:
        n_terms = default_terms(q)
    m = q.m
    tail = max(poisson_tail(abs(q.alpha) ** 2, n_terms),
               poisson_tail(abs(q.beta) ** 2, n_terms + m))
    if tail > TAIL_TOL:
        raise TruncationError(
            f"Poisson tail {tail:.3g} beyond n_terms={n_terms} exceeds {TAIL_TOL:g}; "
            f"use at least {default_terms(q)}")
    if isinstance(precision, int) and not isinstance(precision, bool):
        return _bruteforce_mp(q, n_terms, precision)
    terms = _bruteforce_terms(q, n_terms)
    total = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    if precision == "auto":
        scale = math.fsum(abs(t) for t in terms)
        if scale > 0 and scale > CANCELLATION_LIMIT * abs(total):
            return _bruteforce_mp(q, n_terms, 40)
    elif precision != "double":
        raise ValueError(f"unknown precision {precision!r}")
    return total


def branch_pair(alpha, beta, gamma):
    """Return (t, z) with t^k J_k(z) equal to the k-th trajectory coefficient.

    z = 2|gamma| s with s the principal sqrt(conj(beta) alpha), and
    t = e^(i chi) conj(beta) / s.  Then (z/2) t = gamma conj(beta) and
    (z/2) / t = conj(gamma) alpha hold exactly, which fixes the relative
    branch of the two square roots.
    """
    alpha, beta, gamma = complex(alpha), complex(beta), complex(gamma)
    if alpha == 0:
        raise NumericalDomainError("alpha = 0: the branch of sqrt(conj(beta)/alpha) is undefined")
    chi = cmath.phase(gamma) if gamma != 0 else 0.0
    s = cmath.sqrt(beta.conjugate() * alpha)
    z = 2.0 * abs(gamma) * s
    if s == 0:
        return 0j, 0j
    t = cmath.exp(1j * chi) * beta.conjugate() / s
    return t, z


def overlap_prefactor(alpha, beta, gamma):
    """e^(-|gamma|^2/2) <beta|alpha>, the factor shared by all three evaluation routes."""
    alpha, beta, gamma = complex(alpha), complex(beta), complex(gamma)
    # -|b|^2/2 - |a|^2/2 + conj(b) a = -|b - a|^2/2 + i Im(conj(b) a), without cancellation
    return cmath.exp(complex(-0.5 * abs(gamma) ** 2 - 0.5 * abs(beta - alpha) ** 2,
                             (beta.conjugate() * alpha).imag))


def superposition_closed(q):
    """Bessel closed form of the superposition amplitude.

    e^(-|gamma|^2/2) e^(-|beta|^2/2 - |alpha|^2/2 + conj(beta) alpha) t^m J_m(z)
    with (t, z) from :func:`branch_pair`.  J_m of a complex argument is taken
    from the contour integral.  beta = 0 is handled as the limit
    t^m J_m(z) -> (-conj(gamma) alpha)^(-m) / (-m)! for m <= 0.

    Raises
    ------
    NumericalDomainError
        if alpha = 0
    """
    alpha, beta, gamma, m = complex(q.alpha), complex(q.beta), complex(q.gamma), int(q.m)
    if alpha == 0:
        raise NumericalDomainError("alpha = 0: the branch of sqrt(conj(beta)/alpha) is undefined")
    pref = overlap_prefactor(alpha, beta, gamma)
    if gamma == 0:
        return pref * (m == 0)
    if beta == 0:
        if m > 0:
            return 0j
        l = -m
        return pref * (-gamma.conjugate() * alpha) ** l / math.factorial(l)
    t, z = branch_pair(alpha, beta, gamma)
    if z.imag == 0 and z.real >= 0:
        jm = bessel_j_recurrence(m, z.real)
    else:
        jm = bessel_j_complex(m, z)
    return pref * t ** m * jm


def semiclassical_element(alpha, gamma, m):
    """The beta = alpha case, e^(-|gamma|^2/2) e^(i m (chi - phi)) J_m(2|alpha gamma|).

    phi = arg(alpha), chi = arg(gamma).
    """
    alpha, gamma = complex(alpha), complex(gamma)
    phi = cmath.phase(alpha) if alpha != 0 else 0.0
    chi = cmath.phase(gamma) if gamma != 0 else 0.0
    return (math.exp(-0.5 * abs(gamma) ** 2) * cmath.exp(1j * m * (chi - phi))
            * bessel_j_recurrence(m, 2.0 * abs(alpha * gamma)))


def trajectory_exponent(q, phi):
    """General trajectory exponent gamma conj(beta) e^(i phi) - conj(gamma) alpha e^(-i phi)."""
    e = np.exp(1j * np.asarray(phi, dtype=float))
    return (complex(q.gamma) * complex(q.beta).conjugate() * e
            - complex(q.gamma).conjugate() * complex(q.alpha) / e)


def satellite_exponent(q, phi):
    """Trajectory exponent for collinear alpha and beta.

    i|gamma| [ i(|alpha| - |beta|) cos(psi) + (|alpha| + |beta|) sin(psi) ] with
    psi = phi + chi - arg(alpha).  Its real part is nonzero only when
    |beta| != |alpha|.

    Raises
    ------
    NumericalDomainError
        if arg(beta) and arg(alpha) differ by more than 1e-12; use
        :func:`trajectory_exponent` then
    """
    alpha, beta, gamma = complex(q.alpha), complex(q.beta), complex(q.gamma)
    phi0 = cmath.phase(alpha) if alpha != 0 else cmath.phase(beta)
    if alpha != 0 and beta != 0:
        mismatch = abs(cmath.phase(beta / alpha))
        if mismatch > 1e-12:
            raise NumericalDomainError(
                f"arg(beta) - arg(alpha) = {mismatch:.3g}; use trajectory_exponent")
    chi = cmath.phase(gamma) if gamma != 0 else 0.0
    psi = np.asarray(phi, dtype=float) + chi - phi0
    a, b, g = abs(alpha), abs(beta), abs(gamma)
    return 1j * g * (1j * (a - b) * np.cos(psi) + (a + b) * np.sin(psi))


def fourier_trajectory_element(q, k, nodes=None):
    """k-th Fourier coefficient of exp(trajectory exponent), by trapezoidal quadrature.

    Equals t^k J_k(z) of the closed form, without the overlap prefactor.
    """
    if nodes is not None and nodes < 64:
        raise ValueError("nodes must be >= 64")
    u = complex(q.gamma) * complex(q.beta).conjugate()
    v = complex(q.gamma).conjugate() * complex(q.alpha)
    return laurent_coefficient(k, u, v, nodes=nodes)


def bessel_argument_closure(omega, electron_density, photons, p_eps, dressed=False):
    """Both sides of 2|alpha gamma| = (mu / hbar k)(p . eps).

    gamma = sqrt(beta / (hbar m omega)) (p . eps) for one mode and mu from
    the energy density hbar omega |alpha|^2 / L^3 with |alpha|^2 = photons.
    ``dressed=True`` uses beta~ and omega~ in gamma.

    Returns
    -------
    quantum, classical : float
    """
    beta = beta_param(omega, electron_density)
    w = omega
    if dressed:
        w = dressed_frequency(omega, beta)
        beta = beta / (1.0 + 2.0 * beta)
    gamma = math.sqrt(beta / (units.HBAR * units.M_ELECTRON * w)) * p_eps
    quantum = 2.0 * math.sqrt(photons) * abs(gamma)
    mu = mu_from_photon_number(omega, electron_density, photons)
    k_wave = omega / units.C_LIGHT
    classical = mu / (units.HBAR * k_wave) * abs(p_eps)
    return quantum, classical
