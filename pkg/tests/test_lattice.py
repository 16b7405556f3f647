import math

import numpy as np
import pytest

from qohhg.exceptions import DimensionMismatchError
from qohhg.fock import FockVector, coherent_vector, number_state
from qohhg.lattice import (MAX_RADIUS, build_frame, completeness_residual, frame_vectors,
                           overlap_magnitudes, project_state, reconstruct, spiral_indices)


@pytest.fixture(scope="module")
def frames():
    return {r: build_frame(r) for r in range(MAX_RADIUS + 1)}


def test_radius_zero(frames):
    f = frames[0]
    assert f.size == 1 and f.points[0] == 0
    assert f.gram[0, 0] == 1 and f.dual[0, 0] == 1


def test_radius_bounds():
    with pytest.raises(ValueError):
        build_frame(-1)
    with pytest.raises(ValueError):
        build_frame(MAX_RADIUS + 1)


def test_spiral_covers_square():
    for r in range(5):
        idx = spiral_indices(r)
        assert len(idx) == (2 * r + 1) ** 2 == len(set(idx))
        assert all(max(abs(n), abs(m)) <= r for n, m in idx)
        # consecutive labels are lattice neighbours
        assert all(abs(a[0] - b[0]) + abs(a[1] - b[1]) == 1 for a, b in zip(idx, idx[1:]))


def test_nearest_neighbour_overlaps(frames):
    f = frames[2]
    g = f.gram
    assert abs(abs(g[f.index_of(0, 0), f.index_of(1, 0)]) - math.exp(-math.pi / 2)) < 1e-13
    assert abs(abs(g[f.index_of(0, 0), f.index_of(2, 0)]) - math.exp(-2 * math.pi)) < 1e-13
    assert abs(abs(g[f.index_of(0, 0), f.index_of(2, 0)]) - 0.00187) < 1e-5


def test_overlap_decay_all_pairs(frames):
    f = frames[4]
    idx = np.array(f.indices)
    d2 = ((idx[:, None, :] - idx[None, :, :]) ** 2).sum(-1)
    assert np.max(np.abs(np.abs(f.gram) - np.exp(-0.5 * math.pi * d2))) < 1e-13


def test_overlap_magnitudes_both_reported():
    o = overlap_magnitudes(1, 0)
    assert abs(o["magnitude"] - math.exp(-math.pi / 2)) < 1e-15
    assert abs(o["magnitude_squared"] - o["magnitude"] ** 2) < 1e-15


def test_gram_matches_truncated_overlaps(frames):
    f = frames[1]
    w = frame_vectors(f, 60)
    assert np.max(np.abs(w.conj().T @ w - f.gram)) < 1e-12


@pytest.mark.parametrize("r", range(MAX_RADIUS + 1))
def test_frame_invariants(frames, r):
    f = frames[r]
    assert np.array_equal(np.diag(f.gram), np.ones(f.size))
    assert np.max(np.abs(f.gram - f.gram.conj().T)) == 0
    assert f.eig_range[0] > 0
    assert f.biorthogonality < 1e-10


def test_frame_read_only(frames):
    with pytest.raises(ValueError):
        frames[1].gram[0, 0] = 2


def test_completeness_small_cases(frames):
    assert completeness_residual(frames[0], 1) < 1e-12
    with pytest.raises(ValueError):
        completeness_residual(frames[0], 41)


def test_completeness_monotone(frames):
    res = [completeness_residual(frames[r], 8) for r in range(1, 5)]
    assert all(b <= a + 1e-12 for a, b in zip(res, res[1:]))


def test_project_frame_point(frames):
    f = frames[1]
    j = f.index_of(1, 1)
    c = project_state(f, coherent_vector(f.points[j], 40))
    e = np.zeros(f.size)
    e[j] = 1
    assert np.max(np.abs(c - e)) < 1e-9


def test_vacuum_reconstruction(frames):
    f = frames[2]
    v = number_state(0, 40)
    rec = reconstruct(f, project_state(f, v), 40)
    assert np.max(np.abs(rec.amps - v.amps)) < 1e-6


def test_reconstruction_is_span_projection(frames):
    # radius 1 is fully resolved in 40 levels, so W A W+ is the span projector
    f = frames[1]
    rng = np.random.default_rng(2)
    x = rng.normal(size=40) + 1j * rng.normal(size=40)
    v = FockVector(x / np.linalg.norm(x))
    rec = reconstruct(f, project_state(f, v), 40).amps
    u, s, _ = np.linalg.svd(frame_vectors(f, 40), full_matrices=False)
    ref = u @ (u.conj().T @ v.amps)
    assert np.max(np.abs(rec - ref)) < 1e-9
    assert np.linalg.norm(rec) < 1.0


def test_reconstruct_shape_check(frames):
    with pytest.raises(DimensionMismatchError):
        reconstruct(frames[1], np.zeros(3), 10)
