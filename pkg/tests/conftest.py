"""
Shared fixtures for the hyptet test suite
"""

import numpy as np
import pytest

from hyptet.core.coords import DihedralAngles
from hyptet.core.sampling import random_finite_angles
from hyptet.core.symmetry import enumerate_group

REGULAR_IDEAL_VOLUME = 1.0149416064096536
SPHERICAL_ANGLES = (1.5, 1.6, 1.55, 1.45, 1.65, 1.52)


def pytest_configure(config):
    """Register custom markers"""
    config.addinivalue_line("markers", "benchmark: mark test as benchmark test")
    config.addinivalue_line("markers", "regression: mark test as regression test")
    config.addinivalue_line("markers", "slow: enumerates the full group or runs the oracle")


def euclidean_angles(rng: np.random.Generator) -> DihedralAngles:
    """Dihedral angles of a random Euclidean tetrahedron, in A..F order."""
    points = rng.normal(size=(4, 3))
    normals = []
    for i in range(4):
        face = [points[j] for j in range(4) if j != i]
        n = np.cross(face[1] - face[0], face[2] - face[0])
        if np.dot(n, points[i] - face[0]) > 0:
            n = -n
        normals.append(n / np.linalg.norm(n))
    pairs = ((0, 1), (0, 2), (1, 2), (2, 3), (1, 3), (0, 3))
    return DihedralAngles(tuple(np.arccos(-np.dot(normals[i], normals[j])) for i, j in pairs))


@pytest.fixture
def rng():
    """Seeded generator so every run draws the same samples"""
    return np.random.default_rng(20240611)


@pytest.fixture
def finite_samples(rng):
    """A handful of finite, generic dihedral-angle sextuples"""
    return [random_finite_angles(rng) for _ in range(5)]


ORBIT_SAMPLE_COUNT = 10
ORBIT_OBTUSE_COUNT = 3


@pytest.fixture(scope="session")
def orbit_samples():
    """Finite generic inputs for orbit checks; the last few have one obtuse angle"""
    gen = np.random.default_rng(31337)
    acute = [random_finite_angles(gen) for _ in range(ORBIT_SAMPLE_COUNT - ORBIT_OBTUSE_COUNT)]
    obtuse = [random_finite_angles(gen, obtuse=True) for _ in range(ORBIT_OBTUSE_COUNT)]
    return acute + obtuse


@pytest.fixture(scope="session")
def group_table():
    return enumerate_group()
