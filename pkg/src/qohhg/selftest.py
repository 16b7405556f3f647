"""Oracle-equivalence checks grouped by module, for ``qohhg selftest``.

Each check compares two independent evaluation routes and reports the
largest deviation against its tolerance.
"""

import math
import sys
import time

import numpy as np


def _fock():
    from .fock import coherent_vector, displacement_matrix, squeeze_matrix, photon_statistics
    from .fock import quadrature_variances, padded_block
    out = []
    d = displacement_matrix(0.5, 32).entries
    out.append(("D(0.5)[1,0] closed form", abs(d[1, 0] - 0.5 * math.exp(-0.125)), 1e-12))
    big = 64 + 64
    lhs = padded_block(displacement_matrix(0.3, big).entries @ displacement_matrix(0.4, big).entries, 56)
    rhs = padded_block(displacement_matrix(0.7, big).entries, 56)
    out.append(("displacement group law", float(np.max(np.abs(lhs - rhs))), 1e-8))
    theta = 0.2
    vx, vy = quadrature_variances(squeeze_matrix(theta, 64) @ coherent_vector(0, 64))
    out.append(("squeezed variances", max(abs(vx - math.exp(-2 * theta) / 4),
                                          abs(vy - math.exp(2 * theta) / 4)), 1e-9))
    out.append(("coherent Mandel Q", abs(photon_statistics(coherent_vector(2, 64)).mandel_q), 1e-9))
    return out


def _special():
    from .special import bessel_j_quadrature, bessel_j_recurrence, laguerre_generating_check
    worst = 0.0
    for m in range(-60, 61, 7):
        for z in (0.5, 3.0, 17.0, 50.0):
            a, b = bessel_j_recurrence(m, z), bessel_j_quadrature(m, z)
            worst = max(worst, abs(a - b) / max(abs(a), 1e-300))
    gen = max(abs(l - r) for l, r in (laguerre_generating_check(m, x, z)
                                     for m in (0, 1, 3) for x in (0.5, 1.0, 2.0)
                                     for z in (0.8, 1.5, 2.5)))
    return [("Bessel recurrence vs quadrature (rel)", worst, 1e-12),
            ("Laguerre generating formula", gen, 1e-11)]


def _dressing():
    from .dressing import conjugation_check, squeeze_angle, squeeze_residual
    res = max(abs(squeeze_residual(b, squeeze_angle(b))) for b in np.logspace(-8, 0, 40))
    chk = conjugation_check(0.05, 0.3)
    return [("squeeze-angle residual", res, 1e-13),
            ("conjugated form off-diagonal", chk["matrix_offdiag_max"], 1e-8)]


def _displacement(quick):
    from .displacement import (SuperpositionQuery, fourier_trajectory_element, overlap_prefactor,
                               superposition_bruteforce, superposition_closed)
    import cmath
    rng = np.random.default_rng(1)
    worst = 0.0
    for _ in range(10 if quick else 50):
        def draw(r):
            return complex(r * math.sqrt(rng.uniform()) * cmath.exp(2j * math.pi * rng.uniform()))
        q = SuperpositionQuery(draw(3), draw(3), draw(1), int(rng.integers(-6, 7)))
        b = superposition_bruteforce(q)
        c = superposition_closed(q)
        pref = overlap_prefactor(q.alpha, q.beta, q.gamma)
        f = pref * fourier_trajectory_element(q, q.m)
        if abs(c) > 1e-12:
            worst = max(worst, max(abs(b - c), abs(b - f), abs(c - f)) / abs(c))
    return [("oracle triangle (rel)", worst, 1e-9)]


def _lattice():
    from .lattice import build_frame
    f = build_frame(4)
    nn = abs(f.gram[f.index_of(0, 0), f.index_of(1, 0)])
    return [("dual frame A M = I", f.biorthogonality, 1e-10),
            ("nearest-neighbour overlap", abs(nn - math.exp(-math.pi / 2)), 1e-12)]


def _potential_kh(quick):
    from .kh import KHQuery, hhg_spectrum
    from .potential import build_model_atom, fourier_potential, inverse_fourier
    atom = build_model_atom(60.0, 400 if quick else 1200)
    q, vt = fourier_potential(atom)
    rt = float(np.max(np.abs(inverse_fourier(atom, q, vt) - atom.potential)))
    rows = hhg_spectrum(KHQuery(atom), 6)
    ratio = max(rows[k].intensity / rows[k - 1].intensity for k in (1, 3, 5))
    return [("Fourier round trip", rt, 1e-12), ("even/odd harmonic ratio", ratio, 1e-10)]


def run_selftest(quick=False, stream=None):
    """Run all groups, print one line per check, return True if all pass."""
    stream = stream or sys.stdout
    groups = [("fock", _fock), ("special", _special), ("dressing", _dressing),
              ("displacement", lambda: _displacement(quick)), ("lattice", _lattice),
              ("potential+kh", lambda: _potential_kh(quick))]
    ok = True
    for name, fn in groups:
        t0 = time.perf_counter()
        checks = fn()
        dt = time.perf_counter() - t0
        for label, value, tol in checks:
            passed = bool(value < tol)
            ok &= passed
            stream.write(f"[{'PASS' if passed else 'FAIL'}] {name}: {label} = {value:.3e} "
                         f"(tol {tol:.0e})\n")
        stream.write(f"       {name} took {dt:.2f} s\n")
    stream.write(f"selftest {'passed' if ok else 'FAILED'}\n")
    return ok
