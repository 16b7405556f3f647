import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import expm

from qohhg.exceptions import DimensionMismatchError, NotNormalizedError, TruncationError
from qohhg.fock import (FockVector, annihilation, coherent_vector, default_dim,
                        displacement_matrix, number_state, overlap, padded_block,
                        photon_statistics, quadrature_variances, squeeze_matrix)

small = st.floats(-1.0, 1.0, allow_nan=False)


def test_vacuum_coherent():
    v = coherent_vector(0, 8)
    assert np.array_equal(v.amps, np.eye(8)[0])


def test_coherent_p0():
    v = coherent_vector(1, 32)
    assert abs(abs(v.amps[0]) ** 2 - math.exp(-1)) < 1e-15


def test_coherent_mean_photon_number():
    p = photon_statistics(coherent_vector(2 + 1j, 64))
    assert abs(p.mean - 5.0) < 1e-10


def test_coherent_rejects_small_dim():
    with pytest.raises(TruncationError):
        coherent_vector(5, 20)


def test_coherent_tail_mass_reported():
    v = coherent_vector(2, default_dim(2))
    assert v.tail_mass < 1e-12
    assert abs(v.norm - 1) < 1e-12


def test_amps_read_only():
    v = coherent_vector(1, 16)
    with pytest.raises(ValueError):
        v.amps[0] = 0


def test_displacement_identity():
    assert np.allclose(displacement_matrix(0, 16).entries, np.eye(16), atol=0)


def test_displacement_entry_10():
    d = displacement_matrix(0.5, 32).entries
    assert abs(d[1, 0] - 0.5 * math.exp(-0.125)) < 1e-14


def test_displacement_matches_scipy_expm():
    alpha = 0.7 - 0.4j
    a = annihilation(40)
    ref = expm(alpha * a.T - np.conj(alpha) * a)
    assert np.max(np.abs(displacement_matrix(alpha, 40).entries - ref)) < 1e-12


def test_displacement_column_is_coherent():
    d = displacement_matrix(1.1j, 64)
    assert np.max(np.abs(d.entries[:, 0] - coherent_vector(1.1j, 64).amps)) < 1e-12
    assert d.leakage < 1e-12


def test_group_law_real_args():
    work = 128
    lhs = displacement_matrix(0.3, work).entries @ displacement_matrix(0.4, work).entries
    rhs = displacement_matrix(0.7, work).entries
    assert np.max(np.abs(padded_block(lhs - rhs, 56))) < 1e-12


@settings(max_examples=25, deadline=None)
@given(small, small, small, small)
def test_group_law_phase(ar, ai, br, bi):
    a, b = complex(ar, ai), complex(br, bi)
    work = 128
    lhs = displacement_matrix(a, work).entries @ displacement_matrix(b, work).entries
    rhs = np.exp(1j * (a * b.conjugate()).imag) * displacement_matrix(a + b, work).entries
    assert np.max(np.abs(padded_block(lhs - rhs, 56))) < 1e-8


@settings(max_examples=15, deadline=None)
@given(small, small)
def test_displacement_unitary_interior(ar, ai):
    d = displacement_matrix(complex(ar, ai), 64)
    u = d.entries
    assert np.max(np.abs(padded_block(u.conj().T @ u, 56) - np.eye(56))) < 1e-8


def test_squeeze_identity():
    assert np.allclose(squeeze_matrix(0, 16).entries, np.eye(16))


def test_squeeze_leakage_error():
    with pytest.raises(TruncationError):
        squeeze_matrix(1.5, 16)


@pytest.mark.parametrize("theta", [0.0, 0.1, 0.2, 0.3])
def test_squeezed_vacuum_variances(theta):
    v = squeeze_matrix(theta, 128) @ number_state(0, 128)
    vx, vy = quadrature_variances(v)
    assert abs(vx - math.exp(-2 * theta) / 4) < 1e-9
    assert abs(vy - math.exp(2 * theta) / 4) < 1e-9
    assert abs(vx * vy - 1 / 16) < 1e-9


def test_squeezed_vacuum_variance_value():
    v = squeeze_matrix(0.2, 64) @ number_state(0, 64)
    assert abs(quadrature_variances(v)[0] - 0.167580) < 1e-6


@settings(max_examples=15, deadline=None)
@given(st.floats(-0.3, 0.3, allow_nan=False))
def test_bogoliubov_conjugation(theta):
    work, keep = 192, 64
    s = squeeze_matrix(theta, work).entries
    a = annihilation(work)
    lhs = s.conj().T @ a @ s
    rhs = a * math.cosh(theta) - a.T * math.sinh(theta)
    assert np.max(np.abs(padded_block(lhs - rhs, keep))) < 1e-8


def test_overlap_normalized():
    v = coherent_vector(0.5, 32)
    assert abs(overlap(v, v) - 1) < 1e-12


def test_overlap_values():
    a, b = coherent_vector(1, 64), coherent_vector(2, 64)
    assert abs(abs(overlap(a, b)) ** 2 - math.exp(-1)) < 1e-12
    c, d = coherent_vector(1j, 64), coherent_vector(-1j, 64)
    assert abs(abs(overlap(c, d)) ** 2 - math.exp(-4)) < 1e-12


def test_overlap_dim_mismatch():
    with pytest.raises(DimensionMismatchError):
        overlap(number_state(0, 4), number_state(0, 5))


def test_statistics():
    assert abs(photon_statistics(coherent_vector(2, 64)).mandel_q) < 1e-9
    assert photon_statistics(number_state(3, 10)).mandel_q == -1.0
    assert math.isnan(photon_statistics(number_state(0, 10)).mandel_q)


def test_squeezed_q_positive():
    theta = 0.2
    q = photon_statistics(squeeze_matrix(theta, 64) @ number_state(0, 64)).mandel_q
    # Var n = 2 sinh^2 cosh^2 and <n> = sinh^2 give Q = cosh(2 theta)
    assert q > 0
    assert abs(q - math.cosh(2 * theta)) < 1e-9


def test_statistics_rejects_unnormalized():
    with pytest.raises(NotNormalizedError):
        photon_statistics(FockVector(np.array([1.0, 1.0])))


def test_vacuum_and_coherent_variances():
    for v in (number_state(0, 16), coherent_vector(1.3 - 0.2j, 64)):
        vx, vy = quadrature_variances(v)
        assert abs(vx - 0.25) < 1e-10 and abs(vy - 0.25) < 1e-10


def test_coherent_eigenvector():
    v = coherent_vector(1.2, 64)
    a = annihilation(64)
    err = np.linalg.norm(a @ v.amps - 1.2 * v.amps)
    # only the top component misses its partner; the rest is round-off
    assert err <= 1.2 * math.sqrt(v.tail_mass) + 1e-14
