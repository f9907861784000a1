"""
Klein-Model Oracle Tests
Realization from the Gram matrix and direct integration of the volume form
"""

import numpy as np
import pytest

from hyptet.core.coords import DihedralAngles
from hyptet.core.errors import ConvergenceError, DomainError, RealizationError
from hyptet.core.my_engine import volume_my
from hyptet.core.oracle import (
    KleinTetrahedron,
    minkowski,
    monte_carlo_volume,
    numeric_volume,
    oracle_volume,
    realize,
)

from conftest import SPHERICAL_ANGLES

BASELINE_ORACLE_AGREEMENT = 1e-6
SMALL_REGULAR = [1.2] * 6


# ==================== Realization ====================

def test_realization_reproduces_angles(finite_samples):
    for a in finite_samples:
        k = realize(a)
        assert np.all(np.sum(k.vertices ** 2, axis=1) < 1.0)
        back = k.dihedral_angles().as_array()
        assert np.max(np.abs(back - a.as_array())) < 1e-9, f"angles {back} vs {a.values}"


def test_hyperboloid_points_are_unit_timelike(finite_samples):
    points = realize(finite_samples[0]).hyperboloid()
    for p in points:
        assert abs(minkowski(p, p) + 1.0) < 1e-10
        assert p[3] > 0


def test_edge_lengths_positive_and_symmetric():
    """A regular tetrahedron has six equal edges"""
    lengths = realize(SMALL_REGULAR).edge_lengths()
    assert np.all(lengths > 0)
    assert np.ptp(lengths) < 1e-9


def test_boost_is_an_isometry(finite_samples):
    k = realize(finite_samples[0])
    moved = k.boosted(0.4, axis=1)
    assert np.max(np.abs(moved.edge_lengths() - k.edge_lengths())) < 1e-9
    assert np.max(np.abs(moved.dihedral_angles().as_array() - k.dihedral_angles().as_array())) < 1e-9


def test_realize_rejects_non_finite():
    with pytest.raises(RealizationError):
        realize(SPHERICAL_ANGLES)
    with pytest.raises(RealizationError):
        realize([np.pi / 3] * 6)


def test_klein_tetrahedron_validation():
    with pytest.raises(DomainError):
        KleinTetrahedron(np.zeros((3, 3)))


# ==================== Integration ====================

def test_flat_tetrahedron_has_zero_volume():
    flat = KleinTetrahedron(np.array([[0, 0, 0], [0.3, 0, 0], [0, 0.3, 0], [0.2, 0.2, 0]]))
    assert numeric_volume(flat) == 0.0


def test_vertex_outside_ball_rejected():
    k = KleinTetrahedron(np.array([[0, 0, 0], [1.5, 0, 0], [0, 0.3, 0], [0, 0, 0.3]]))
    with pytest.raises(ConvergenceError):
        numeric_volume(k)


def test_shrinking_reduces_volume():
    k = realize(SMALL_REGULAR)
    assert numeric_volume(k.scaled(0.5), tol=1e-8) < numeric_volume(k, tol=1e-8)


def test_monte_carlo_brackets_quadrature(rng):
    k = realize(SMALL_REGULAR)
    exact = numeric_volume(k, tol=1e-8)
    estimate, stderr = monte_carlo_volume(k, 20000, rng)
    print(f"\nMonte Carlo: {estimate:.6f} ± {stderr:.2g} (quadrature {exact:.6f})")
    assert abs(estimate - exact) < 5 * stderr + 1e-12


@pytest.mark.slow
def test_oracle_matches_closed_form(finite_samples):
    """Independent integration agrees with the dilogarithm formula"""
    for a in finite_samples[:3]:
        expected = volume_my(a)
        got = oracle_volume(a, tol=1e-9)
        print(f"\nOracle {got:.10f} vs closed form {expected:.10f}")
        assert abs(got - expected) < BASELINE_ORACLE_AGREEMENT


@pytest.mark.slow
def test_oracle_is_boost_invariant(finite_samples):
    k = realize(finite_samples[1])
    assert abs(numeric_volume(k.boosted(0.3, axis=2), tol=1e-9) - numeric_volume(k, tol=1e-9)) < 1e-6


@pytest.mark.slow
def test_default_tolerance_meets_agreement_target(finite_samples):
    """The default 1e-7 relative tolerance is enough for 1e-6 agreement"""
    for a in finite_samples:
        assert abs(oracle_volume(a) - volume_my(a)) < 1e-6


def test_parallel_cells_match_serial():
    """Cells refined in worker processes sum to the serial result"""
    k = realize(SMALL_REGULAR)
    serial = numeric_volume(k, tol=1e-8, workers=0)
    parallel = numeric_volume(k, tol=1e-8, workers=2)
    print(f"\nSerial {serial!r} vs parallel {parallel!r}")
    assert parallel == serial


def test_convergence_failure_reported():
    k = realize(SMALL_REGULAR)
    with pytest.raises(ConvergenceError):
        numeric_volume(k, tol=1e-30, max_depth=1)


def test_angles_input_types():
    a = DihedralAngles(tuple(SMALL_REGULAR))
    assert np.allclose(realize(a).vertices, realize(SMALL_REGULAR).vertices)


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
