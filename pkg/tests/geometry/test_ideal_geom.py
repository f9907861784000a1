"""
Ideal Tetrahedra and Octahedron Tests
"""

import numpy as np
import pytest

from hyptet.core.coords import b_from_angles, s_from_b
from hyptet.core.errors import (
    ConstraintViolationError,
    DegenerateTetrahedronError,
    HolonomyViolationError,
)
from hyptet.core.ideal_geom import (
    O_EDGE_NAMES,
    O_VERTICES,
    O_WAISTS,
    IdealTet,
    IdealTetList,
    OctahedronCoords,
    holonomy,
    isosceles_split,
    my_octahedron_list,
    o_coords_round_trip,
    o_from_s,
    octahedral_roots,
    octahedron_from_s,
    octahedron_shapes,
    volume_ideal,
    volume_ideal_lobachevsky,
    waist_list,
    z_from_clinants,
)
from hyptet.core.sampling import random_ideal_tet
from hyptet.core.special_fn import bloch_wigner, dilog

from conftest import REGULAR_IDEAL_VOLUME

TOL = 1e-10


def regular_ideal() -> IdealTet:
    x = np.exp(2j * np.pi / 3)
    return IdealTet(x, x, x)


# ==================== Ideal tetrahedra ====================

def test_regular_ideal_volume():
    t = regular_ideal()
    assert abs(volume_ideal(t) - REGULAR_IDEAL_VOLUME) < TOL
    assert abs(volume_ideal_lobachevsky(t) - REGULAR_IDEAL_VOLUME) < TOL
    assert abs(z_from_clinants(t) - np.exp(1j * np.pi / 3)) < TOL


def test_bloch_wigner_and_lobachevsky_agree(rng):
    """B(z) equals the sum of Λ over the three dihedral angles"""
    for _ in range(25):
        t = random_ideal_tet(rng)
        assert abs(volume_ideal(t) - volume_ideal_lobachevsky(t)) < TOL


def test_shape_parameters_cycle(rng):
    """z₁ = 1/(1 − z₀) and z₂ = 1 − 1/z₀"""
    for _ in range(10):
        t = random_ideal_tet(rng)
        z0 = z_from_clinants(t, 0)
        assert abs(z_from_clinants(t, 1) - 1 / (1 - z0)) < TOL
        assert abs(z_from_clinants(t, 2) - (1 - 1 / z0)) < TOL


def test_isosceles_split_doubles_volume(rng):
    for _ in range(10):
        t = random_ideal_tet(rng)
        assert abs(isosceles_split(t).volume() - 2 * volume_ideal(t)) < TOL


def test_conjugate_negates_volume(rng):
    t = random_ideal_tet(rng)
    assert abs(volume_ideal(t.conjugate()) + volume_ideal(t)) < TOL
    entries = IdealTetList((np.exp(0.3j), np.exp(2.1j)))
    assert abs(entries.conjugate().volume() + entries.volume()) < TOL
    assert len(entries) == 2


def test_ideal_tet_validation():
    with pytest.raises(ConstraintViolationError):
        IdealTet(1j, 1j, 1j)
    with pytest.raises(DegenerateTetrahedronError):
        IdealTet(1.0, -1.0, -1.0)
    with pytest.raises(ConstraintViolationError):
        IdealTetList((2.0,))


# ==================== Octahedron coordinates ====================

@pytest.fixture
def super_sample(finite_samples):
    return [s_from_b(b_from_angles(a)) for a in finite_samples]


def test_o_form_tables_are_consistent():
    assert len(O_EDGE_NAMES) == 12
    for name, idx in O_VERTICES.items():
        for k in idx:
            assert name in O_EDGE_NAMES[k].split("_"), f"edge {k} does not meet vertex {name}"
    for name, idx in O_WAISTS.items():
        avoided = set(name.split("|"))
        for k in idx:
            assert not avoided & set(O_EDGE_NAMES[k].split("_")), f"waist {name} uses edge {k}"


def test_o_from_s_satisfies_vertex_and_waist_products(super_sample):
    for s in super_sample:
        octa = OctahedronCoords(edges=o_from_s(s))
        assert max(octa.vertex_residuals().values()) < TOL
        assert max(octa.waist_residuals().values()) < TOL


def test_o_coords_round_trip(super_sample):
    for s in super_sample:
        back = o_coords_round_trip(o_from_s(s))
        assert np.max(np.abs(back.as_array() - s.as_array())) < TOL


def test_round_trip_rejects_bad_o_coords(super_sample):
    o = list(o_from_s(super_sample[0]))
    o[0] *= np.exp(0.1j)
    with pytest.raises(ConstraintViolationError):
        o_coords_round_trip(o)


def test_holonomy_roots(super_sample):
    """Both roots close the holonomy and give an octahedron"""
    for s in super_sample:
        for z in octahedral_roots(s):
            assert abs(holonomy(s, z)) < 1e-9, f"holonomy residual {abs(holonomy(s, z)):.3g}"
            octa = octahedron_from_s(s, z)
            assert octa.holonomy_residual() < 1e-9


def test_non_root_rejected(super_sample):
    s = super_sample[0]
    roots = octahedral_roots(s)
    off_root = np.exp(1j * (np.angle(roots[0]) + 0.3))
    with pytest.raises(HolonomyViolationError):
        octahedron_from_s(s, off_root)


def test_waist_identity(super_sample, rng):
    """2 Σ B(wᵢ) = Σ Im 𝓛₂ over the octahedron list and the waist list, for any unit z"""
    for s in super_sample:
        z = np.exp(1j * rng.uniform(0, 2 * np.pi))
        lhs = 2 * float(np.sum(bloch_wigner(np.array(octahedron_shapes(s, z)))))
        rhs = float(np.sum(np.imag(dilog(my_octahedron_list(s, z))))
                    + np.sum(np.imag(dilog(waist_list(s)))))
        assert abs(lhs - rhs) < 1e-9, f"waist identity off by {abs(lhs - rhs):.3g}"


def test_octahedron_needs_some_form():
    with pytest.raises(ConstraintViolationError):
        OctahedronCoords()
    octa = OctahedronCoords(shapes=(0.5j, 1 + 1j, 2.0 - 0.5j, 0.3 - 0.2j))
    with pytest.raises(ConstraintViolationError):
        octa.vertex_residuals()
    assert abs(octa.conjugate().volume() + octa.volume()) < TOL


if __name__ == "__main__":
    pytest.main([__file__, "-v", "--tb=short"])
