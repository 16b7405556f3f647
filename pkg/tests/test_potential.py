import math
import warnings

import numpy as np
import pytest

from qohhg.exceptions import NumericalDomainError
from qohhg.potential import (build_model_atom, coherent_sector_potential, fourier_potential,
                             inverse_fourier, photon_sector_potential, scale_from_amplitude,
                             semiclassical_phase_coefficient, semiclassical_veff)


def test_ground_energy(atom):
    assert abs(atom.energies[0] + 0.6698) < 1e-3
    assert atom.parity[0] == 1
    assert atom.n_bound >= 1


def test_ground_energy_converged():
    fine = build_model_atom(90.0, 3600)
    coarse = build_model_atom(60.0, 1200)
    assert abs(fine.energies[0] - coarse.energies[0]) < 1e-3
    assert abs(fine.energies[0] + 0.6698) < 1e-3


def test_eigenbasis_quality(atom):
    assert atom.orthonormality_error() < 1e-10
    assert atom.parity_leakage() < 1e-8
    assert np.all(np.diff(atom.energies) >= 0)
    # parities alternate through the bound levels
    nb = atom.n_bound
    assert np.array_equal(atom.parity[:nb], np.array([(-1) ** r for r in range(nb)]))


def test_build_validation():
    with pytest.raises(ValueError):
        build_model_atom(60.0, 100)
    with pytest.raises(ValueError):
        build_model_atom(10.0, 400)
    with pytest.raises(NumericalDomainError):
        build_model_atom(40.0, 400, potential_fn=lambda x: np.zeros_like(x))


def _spacing_near(at, energy):
    e = at.energies[at.energies > 0]
    i = int(np.argmin(np.abs(e - energy)))
    return e[i + 1] - e[i]


def test_continuum_spacing_scales_inverse_box():
    a = build_model_atom(40.0, 800)
    b = build_model_atom(80.0, 1600)
    ratio = _spacing_near(a, 0.5) / _spacing_near(b, 0.5)
    assert abs(ratio - 2.0) < 0.1


def test_fourier_round_trip(atom):
    q, vt = fourier_potential(atom)
    back = inverse_fourier(atom, q, vt)
    assert np.max(np.abs(back - atom.potential)) < 1e-12


def test_fourier_real_even(atom):
    q, vt = fourier_potential(atom)
    assert np.max(np.abs(vt.imag)) < 1e-12
    order = np.argsort(q)
    qs, vs = q[order], vt[order]
    # FFT grids of even length carry one unpaired Nyquist sample
    sym = vs[1:] if atom.n_points % 2 == 0 else vs
    assert np.max(np.abs(sym - sym[::-1])) < 1e-12


def test_parseval(atom):
    q, vt = fourier_potential(atom)
    dq = q[1] - q[0]
    lhs = np.sum(atom.potential ** 2) * atom.h
    rhs = np.sum(np.abs(vt) ** 2) * dq / (2 * math.pi)
    assert abs(lhs - rhs) < 1e-10 * lhs


def test_sector_zero_scale(small_atom):
    v = photon_sector_potential(small_atom, 3, 3, 0.0)
    assert np.max(np.abs(v.values)) == 0


def test_sector_scale_limit(small_atom):
    with pytest.raises(NumericalDomainError):
        photon_sector_potential(small_atom, 1, 0, 10.0)
    with pytest.raises(ValueError):
        photon_sector_potential(small_atom, 1, 0, -0.1)


@pytest.mark.parametrize("n1,n0", [(0, 0), (1, 0), (0, 3), (5, 2), (10, 10), (12, 7)])
def test_sector_parity(small_atom, n1, n0):
    v = photon_sector_potential(small_atom, n1, n0, 0.3).values
    sign = (-1) ** (n1 - n0)
    assert np.max(np.abs(v[::-1] - sign * v)) < 1e-8


@pytest.mark.parametrize("n1,n0", [(1, 0), (4, 2), (3, 8)])
def test_sector_hermiticity(small_atom, n1, n0):
    # V_a(x) is a Hermitian photon operator at every x
    a = photon_sector_potential(small_atom, n1, n0, 0.3).values
    b = photon_sector_potential(small_atom, n0, n1, 0.3).values
    assert np.max(np.abs(a - np.conj(b))) < 1e-10


def test_sector_values_read_only(small_atom):
    v = photon_sector_potential(small_atom, 1, 0, 0.2)
    with pytest.raises(ValueError):
        v.values[0] = 1


def test_sector_small_scale_gradient(small_atom):
    # real gamma = s q makes D(s q) = exp(i q a_hat) with a_hat = -i s (a+ - a),
    # so <1|V(x + a_hat)|0> -> -i s V'(x) as s -> 0
    s = 1e-4
    v = photon_sector_potential(small_atom, 1, 0, s).values
    x = small_atom.x
    dv = x / (x ** 2 + 1) ** 1.5
    inner = np.abs(x) < 20
    assert np.max(np.abs(v.real)) < 1e-15
    assert np.max(np.abs(v[inner] / s + 1j * dv[inner])) < 1e-4


def test_coherent_sector_vs_semiclassical(small_atom):
    nbar, alpha0 = 400, 4.0
    s = scale_from_amplitude(alpha0, nbar)
    assert s == pytest.approx(0.1)
    for m in (0, 1, 2, 3):
        quantum = coherent_sector_potential(small_atom, nbar, m, s)
        classical = semiclassical_phase_coefficient(small_atom, alpha0, m)
        dev = np.max(np.abs(quantum - classical)) / np.max(np.abs(classical))
        assert dev < 0.02, m


def test_semiclassical_veff_examples(atom):
    assert np.max(np.abs(semiclassical_veff(atom, 9.0, 1.0, envelope=0.0))) == 0
    assert np.max(np.abs(semiclassical_veff(atom, 9.0, 0.0))) == 0
    with pytest.warns(RuntimeWarning):
        prof = semiclassical_veff(atom, 9.0, math.pi / 2)
    # the displaced well bottom is 9 from the origin, the bare well leaves a bump at 0
    assert abs(abs(atom.x[np.argmin(prof)]) - 9.0) < atom.h
    assert abs(atom.x[np.argmax(prof)]) < atom.h


def test_semiclassical_veff_clamps(small_atom):
    with pytest.warns(RuntimeWarning):
        prof = semiclassical_veff(small_atom, 30.0, math.pi / 2)
    assert np.all(np.isfinite(prof))
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        semiclassical_veff(small_atom, 0.0, 1.0)


def test_semiclassical_veff_envelope_range(small_atom):
    with pytest.raises(ValueError):
        semiclassical_veff(small_atom, 1.0, 1.0, envelope=1.5)
