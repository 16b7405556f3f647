"""Special functions: associated Laguerre polynomials, Bessel functions of
the first kind, and log-factorial helpers.

Bessel values come from two independent evaluators, a Miller downward
recurrence and a periodic trapezoidal quadrature of the Jacobi-Anger
integral, so either can be used to check the other.
"""

import math

import numpy as np
from scipy.optimize import minimize_scalar

from .exceptions import LaguerreOverflowError

__all__ = [
    "log_factorial",
    "log_factorial_ratio",
    "laguerre_assoc",
    "laguerre_sequence",
    "laguerre_log_sequence",
    "laguerre_log",
    "laurent_coefficient",
    "bessel_j",
    "bessel_j_recurrence",
    "bessel_j_quadrature",
    "bessel_j_complex",
    "laguerre_generating_check",
]

LAGUERRE_OVERFLOW = 1e280

# rescaling threshold for the log-tracked recurrences
_RESCALE = 1e200
_LOG_RESCALE = math.log(_RESCALE)


def log_factorial(n):
    """ln(n!) via log-gamma."""
    return math.lgamma(n + 1)


def log_factorial_ratio(a, b):
    """Return ln(a!) - ln(b!).

    Short ranges are summed term by term, which keeps full relative
    precision where the two log-gammas would nearly cancel.
    """
    a = int(a)
    b = int(b)
    if a == b:
        return 0.0
    if abs(a - b) <= 64:
        lo, hi = sorted((a, b))
        s = math.fsum(math.log(k) for k in range(lo + 1, hi + 1))
        return s if a > b else -s
    return math.lgamma(a + 1) - math.lgamma(b + 1)


def laguerre_sequence(nmax, m, x):
    """Associated Laguerre values L_0^m(x) ... L_nmax^m(x).

    Parameters
    ----------
    nmax : int
        highest degree
    m : int or float
        order (m > -1)
    x : float or numpy.ndarray
        evaluation points

    Returns
    -------
    numpy.ndarray
        shape ``(nmax + 1,) + np.shape(x)``

    Raises
    ------
    LaguerreOverflowError
        if any value exceeds 1e280 in magnitude
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 1.0 + m - x
    for k in range(1, nmax):
        out[k + 1] = ((2 * k + 1 + m - x) * out[k] - (k + m) * out[k - 1]) / (k + 1)
        if np.any(np.abs(out[k + 1]) > LAGUERRE_OVERFLOW):
            raise LaguerreOverflowError(
                f"L_{k + 1}^{m}(x) exceeds {LAGUERRE_OVERFLOW:g}; use laguerre_log")
    return out


def laguerre_assoc(n, m, x):
    """Associated Laguerre polynomial L_n^m(x) by upward recurrence in n.

    Uses L_0^m = 1, L_1^m = 1 + m - x and
    (k+1) L_{k+1} = (2k + 1 + m - x) L_k - (k + m) L_{k-1}.

    Examples
    --------
    >>> laguerre_assoc(2, 0, 1.0)
    -0.5
    """
    vals = laguerre_sequence(int(n), m, x)[-1]
    if vals.ndim == 0:
        return float(vals)
    return vals


def laguerre_log_sequence(nmax, m, x):
    """Sign and log-magnitude of L_k^m(x) for k = 0..nmax.

    Same recurrence as :func:`laguerre_sequence`, but the running pair is
    rescaled whenever it grows past 1e200 so no overflow can occur.

    Returns
    -------
    sign, logabs : numpy.ndarray
        each of shape ``(nmax + 1,) + np.shape(x)``; ``sign`` is -1, 0 or 1
        and ``logabs`` is ``-inf`` where the polynomial vanishes exactly
    """
    x = np.asarray(x, dtype=float)
    sign = np.empty((nmax + 1,) + x.shape)
    logabs = np.empty((nmax + 1,) + x.shape)
    prev = np.ones_like(x)
    cur = 1.0 + m - x
    offset = np.zeros_like(x)  # log of the common scale of (prev, cur)

    def store(k, val):
        sign[k] = np.sign(val)
        with np.errstate(divide="ignore"):
            logabs[k] = np.log(np.abs(val)) + offset

    store(0, prev)
    if nmax >= 1:
        store(1, cur)
    for k in range(1, nmax):
        nxt = ((2 * k + 1 + m - x) * cur - (k + m) * prev) / (k + 1)
        prev, cur = cur, nxt
        big = np.abs(cur) > _RESCALE
        if np.any(big):
            prev = np.where(big, prev / _RESCALE, prev)
            cur = np.where(big, cur / _RESCALE, cur)
            offset = offset + np.where(big, _LOG_RESCALE, 0.0)
        store(k + 1, cur)
    return sign, logabs


def laguerre_log(n, m, x):
    """Sign and log-magnitude of a single L_n^m(x); never overflows.

    Scalar x runs the recurrence on plain floats; arrays go through
    :func:`laguerre_log_sequence`.
    """
    n = int(n)
    if np.ndim(x) != 0:
        sign, logabs = laguerre_log_sequence(n, m, x)
        return sign[-1], logabs[-1]
    x = float(x)
    prev, cur = 1.0, 1.0 + m - x
    offset = 0.0
    if n == 0:
        cur = prev
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + m - x) * cur - (k + m) * prev) / (k + 1)
        if abs(cur) > _RESCALE:
            prev /= _RESCALE
            cur /= _RESCALE
            offset += _LOG_RESCALE
    if cur == 0.0:
        return 0.0, -math.inf
    return math.copysign(1.0, cur), math.log(abs(cur)) + offset


def _saddle_log_radius(k, u, v):
    """Log of the contour radius minimizing the integrand peak of exp(u z - v/z) z^-k.

    On |z| = r the peak of the real exponent is |u r - conj(v)/r|, so the
    radius minimizes -k ln r + |u r - conj(v)/r| (unimodal in ln r).
    """
    lu, lv = math.log(abs(u)), math.log(abs(v))
    c = (u * v).real

    def peak(s):
        a, b = math.exp(lu + s), math.exp(lv - s)
        return -k * s + math.sqrt(max(a * a + b * b - 2 * c, 0.0))

    # search around the balance point |u| r = |v| / r
    center = 0.5 * (lv - lu)
    span = 0.5 * abs(lu + lv) + math.log(abs(k) + 2.0) + 5.0
    res = minimize_scalar(peak, bounds=(center - span, center + span), method="bounded",
                          options={"xatol": 1e-10})
    return float(res.x)


def laurent_coefficient(k, u, v, nodes=None, radius="saddle"):
    """k-th Laurent coefficient of exp(u*zeta - v/zeta).

    Evaluates

        (1/2pi) * integral_0^{2pi} exp(-i k phi) exp(u e^{i phi} - v e^{-i phi}) dphi

    by the periodic trapezoidal rule.  The integrand is analytic and
    periodic, so the contour may be moved to any circle |zeta| = r; the
    default places it at the saddle radius, where the integrand no longer
    oscillates around a much smaller result.  ``radius=1`` gives the plain
    integral on the unit circle.

    For u = v = z/2 this is J_k(z); for u = gamma*conj(beta),
    v = conj(gamma)*alpha it is the depletion Fourier coefficient t^k J_k(z).
    """
    k = int(k)
    u = complex(u)
    v = complex(v)
    if u == 0 and v == 0:
        return complex(k == 0)
    if v == 0:
        # exp(u zeta): coefficients u^k / k!
        return complex(0.0) if k < 0 else u ** k / math.factorial(k)
    if u == 0:
        return complex(0.0) if k > 0 else (-v) ** (-k) / math.factorial(-k)
    # work with log r so extreme |u|, |v| cannot overflow the radius itself
    lr = _saddle_log_radius(k, u, v) if radius == "saddle" else math.log(float(radius))
    ur = u / abs(u) * math.exp(math.log(abs(u)) + lr)
    vr = v / abs(v) * math.exp(math.log(abs(v)) - lr)
    amp = abs(ur) + abs(vr)
    if nodes is None:
        nodes = max(64, int(2 * (abs(k) + 3.0 * amp) + 64))
    j = np.arange(nodes)
    e = np.exp(2j * np.pi * j / nodes)
    # k*phi reduced mod 2 pi in integers keeps the phase exact for large |k|
    e_k = np.exp(-2j * np.pi * ((k * j) % nodes) / nodes)
    vals = np.exp(-k * lr + ur * e - vr / e) * e_k
    return complex(math.fsum(vals.real), math.fsum(vals.imag)) / nodes


def bessel_j_quadrature(m, z, nodes=None):
    """J_m(z) for real z from the Jacobi-Anger integral.

    J_m(z) = (1/2pi) * integral exp(-i m phi) exp(i z sin phi) dphi, summed with
    the periodic trapezoidal rule on a saddle-shifted contour.
    """
    m = int(m)
    z = float(z)
    sign = 1.0
    if m < 0:
        m = -m
        sign = -1.0 if m % 2 else 1.0
    if z < 0:
        z = -z
        sign = -sign if m % 2 else sign
    if z == 0.0:
        return sign * float(m == 0)
    if m > z:
        # evanescent side: the shifted contour has no cancellation
        return sign * laurent_coefficient(m, z / 2.0, z / 2.0, nodes=nodes).real
    # oscillatory side: the unit circle is optimal but the mean cancels
    # heavily near zeros of J_m, so sum the cosine form in extended precision
    if nodes is None:
        nodes = int(2 * (m + 3.0 * z) + 64)
    j = np.arange(nodes)
    two_pi = 2 * np.longdouble("3.14159265358979323846264338327950288")
    phi = two_pi * j / nodes
    mphi = two_pi * ((m * j) % nodes) / nodes
    vals = np.cos(np.longdouble(z) * np.sin(phi) - mphi)
    return sign * float(np.sum(vals) / nodes)


def bessel_j_complex(m, z, nodes=None):
    """J_m(z) for complex z, by quadrature only."""
    z = complex(z)
    return laurent_coefficient(m, z / 2.0, z / 2.0, nodes=nodes)


def bessel_j_recurrence(m, z):
    """J_m(z) for real z by Miller's downward recurrence.

    The recurrence starts well above max(|m|, |z|) and is normalized with
    J_0 + 2 * sum_k J_{2k} = 1.
    """
    m = int(m)
    z = float(z)
    sign = 1.0
    if m < 0:
        m = -m
        sign = -1.0 if m % 2 else 1.0
    if z < 0:
        z = -z
        if m % 2:
            sign = -sign
    if z == 0.0:
        return sign * float(m == 0)
    if z < 1e-3:
        # the recurrence would overflow for tiny z; the series converges at once
        lead = 1.0 if m == 0 else math.exp(m * (math.log(z) - math.log(2.0)) - math.lgamma(m + 1.0))
        w = -(z / 2.0) ** 2
        return sign * lead * (1.0 + w / (m + 1) * (1.0 + w / (2 * (m + 2)) * (1.0 + w / (3 * (m + 3)))))
    top = max(m, z)
    start = int(top + 40 + 10 * top ** (1.0 / 3.0))
    start += start % 2
    j_next = 0.0
    j_cur = 1e-300
    norm = 0.0
    result = 0.0
    two_over_z = 2.0 / z
    for k in range(start, 0, -1):
        j_prev = k * two_over_z * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        # j_cur now holds the (unnormalized) value of order k - 1
        if abs(j_cur) > _RESCALE:
            j_cur /= _RESCALE
            j_next /= _RESCALE
            norm /= _RESCALE
            result /= _RESCALE
        if k - 1 == m:
            result = j_cur
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j_cur
    norm += j_cur
    return sign * result / norm


def bessel_j(m, z, method="recurrence"):
    """Bessel function of the first kind of integer order, real argument.

    Parameters
    ----------
    m : int
        order; negative orders use J_{-m} = (-1)^m J_m
    z : float
        argument, |z| <= 1e4
    method : {"recurrence", "quadrature"}
        which of the two evaluators to use
    """
    if method == "recurrence":
        return bessel_j_recurrence(m, z)
    if method == "quadrature":
        return bessel_j_quadrature(m, z)
    raise ValueError(f"unknown method {method!r}")


def laguerre_generating_check(m, x, z, n_terms=None):
    """Both sides of the Laguerre generating formula.

        J_m(2 sqrt(xz)) e^z (xz)^(-m/2) = sum_n z^n L_n^m(x) / Gamma(n + m + 1)

    Returns
    -------
    lhs, rhs : complex
    """
    m = int(m)
    x = float(x)
    z = complex(z)
    w = x * z
    if w == 0:
        lhs = np.exp(z) / math.factorial(m)
    elif w.imag == 0 and w.real > 0:
        s = math.sqrt(w.real)
        lhs = np.exp(z) * bessel_j_recurrence(m, 2.0 * s) / s ** m
    else:
        # J_m(2s) s^-m is the m-th Laurent coefficient of exp(zeta - w/zeta)
        lhs = np.exp(z) * laurent_coefficient(m, 1.0, w)
    if n_terms is None:
        n_terms = int(4 * abs(z) + 4 * x + 60)
    lag = laguerre_sequence(n_terms - 1, m, x)
    logs = np.array([-math.lgamma(n + m + 1) for n in range(n_terms)])
    powers = np.array([z ** n for n in range(n_terms)])
    terms = powers * lag * np.exp(logs)
    rhs = complex(math.fsum(terms.real), math.fsum(terms.imag))
    return complex(lhs), rhs
