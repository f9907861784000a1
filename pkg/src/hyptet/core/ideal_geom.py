"""
Ideal tetrahedra, isosceles lists and octahedron coordinates
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from hyptet.config.settings import get_settings
from hyptet.core.coords import SuperCoords, _complex_tuple, _check_unit
from hyptet.core.errors import (
    ConstraintViolationError,
    DegenerateTetrahedronError,
    HolonomyViolationError,
    SingularConfigurationError,
)
from hyptet.core.special_fn import bloch_wigner, dilog, lobachevsky

logger = logging.getLogger(__name__)

# o-form vertices of the octahedron, keyed by the plane pair they stand for
O_VERTICES = {
    "12": (0, 1, 2, 3),
    "34": (4, 5, 6, 7),
    "13": (0, 4, 8, 9),
    "24": (3, 7, 10, 11),
    "14": (1, 5, 8, 10),
    "23": (2, 6, 9, 11),
}

# 4-cycles of edges avoiding one opposite vertex pair
O_WAISTS = {
    "12|34": (8, 10, 11, 9),
    "13|24": (1, 5, 6, 2),
    "14|23": (0, 4, 7, 3),
}

O_EDGE_NAMES = (
    "12_13", "12_14", "12_23", "12_24", "34_13", "34_14",
    "34_23", "34_24", "13_14", "13_23", "14_24", "23_24",
)


# ==================== Ideal tetrahedra ====================

@dataclass(frozen=True)
class IdealTet:
    """Edge clinants (a, b, c) = (e^{2i𝒜}, e^{2iℬ}, e^{2i𝒞}) with abc = 1."""

    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        vals = _complex_tuple((self.a, self.b, self.c), 3, "IdealTet")
        _check_unit(vals, "IdealTet", tol=1e-10)
        for name, value in zip("abc", vals):
            object.__setattr__(self, name, value)
        if abs(vals[0] * vals[1] * vals[2] - 1.0) > 1e-10:
            raise ConstraintViolationError("ideal tetrahedron clinants must multiply to 1")
        tol = get_settings().degeneracy_tol
        if min(abs(x - 1.0) for x in vals) < tol:
            raise DegenerateTetrahedronError(f"flat ideal tetrahedron: clinants {vals}")

    @property
    def clinants(self) -> Tuple[complex, complex, complex]:
        return (self.a, self.b, self.c)

    def angles(self) -> np.ndarray:
        return np.angle(np.array(self.clinants)) / 2.0

    def conjugate(self) -> "IdealTet":
        return IdealTet(self.a.conjugate(), self.b.conjugate(), self.c.conjugate())


@dataclass(frozen=True)
class IdealTetList:
    """Unit entries d; each is the isosceles tetrahedron (d², −1/d, −1/d)."""

    entries: Tuple[complex, ...]

    def __post_init__(self):
        vals = _complex_tuple(self.entries, len(tuple(self.entries)), "IdealTetList")
        _check_unit(vals, "IdealTetList", tol=1e-10)
        object.__setattr__(self, "entries", vals)

    def volume(self) -> float:
        return float(np.sum(np.imag(dilog(np.array(self.entries)))))

    def conjugate(self) -> "IdealTetList":
        return IdealTetList(tuple(d.conjugate() for d in self.entries))

    def __len__(self) -> int:
        return len(self.entries)


def z_from_clinants(t: IdealTet, k: int = 0) -> complex:
    """Shape parameter at edge k: (1 − conj x_{k+1})/(1 − x_{k+2})."""
    x = t.clinants
    return (1.0 - x[(k + 1) % 3].conjugate()) / (1.0 - x[(k + 2) % 3])


def volume_ideal(t: IdealTet) -> float:
    return bloch_wigner(z_from_clinants(t, 0))


def volume_ideal_lobachevsky(t: IdealTet) -> float:
    return float(np.sum(lobachevsky(t.angles())))


def isosceles_split(t: IdealTet) -> IdealTetList:
    return IdealTetList(t.clinants)


# ==================== Octahedra ====================

@dataclass(frozen=True)
class OctahedronCoords:
    shapes: Optional[Tuple[complex, ...]] = None
    edges: Optional[Tuple[complex, ...]] = None

    def __post_init__(self):
        if self.shapes is None and self.edges is None:
            raise ConstraintViolationError("octahedron needs shapes, edge clinants or both")
        if self.shapes is not None:
            object.__setattr__(self, "shapes", _complex_tuple(self.shapes, 4, "octahedron shapes"))
        if self.edges is not None:
            edges = _complex_tuple(self.edges, 12, "octahedron edges")
            _check_unit(edges, "octahedron edges", tol=1e-10)
            object.__setattr__(self, "edges", edges)

    def holonomy_residual(self) -> float:
        if self.shapes is None:
            raise ConstraintViolationError("holonomy needs the shape form")
        return abs(np.prod(np.array(self.shapes)) - 1.0)

    def vertex_residuals(self) -> dict:
        edges = self._edges()
        return {name: abs(np.prod(edges[list(idx)]) - 1.0) for name, idx in O_VERTICES.items()}

    def waist_residuals(self) -> dict:
        edges = self._edges()
        return {name: abs(np.prod(edges[list(idx)]) - 1.0) for name, idx in O_WAISTS.items()}

    def volume(self) -> float:
        if self.shapes is None:
            raise ConstraintViolationError("volume needs the shape form")
        return float(np.sum(bloch_wigner(np.array(self.shapes))))

    def conjugate(self) -> "OctahedronCoords":
        conj = lambda xs: None if xs is None else tuple(x.conjugate() for x in xs)  # noqa: E731
        return OctahedronCoords(conj(self.shapes), conj(self.edges))

    def _edges(self) -> np.ndarray:
        if self.edges is None:
            raise ConstraintViolationError("residuals need the edge-clinant form")
        return np.array(self.edges)


def my_octahedron_list(s: SuperCoords, z: complex) -> np.ndarray:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return np.array([
        1 / z, z / r2, b / z, z * c / r4,
        r3 * r4 / (z * c), z / r4, a * r2 / (z * r1), z * f / r2,
    ])


def waist_list(s: SuperCoords) -> np.ndarray:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return np.array([r2, a / r4, c / r3, e / r1])


def octahedron_shapes(s: SuperCoords, z: complex) -> Tuple[complex, ...]:
    """wᵢ = (1 − conj e_{2i})/(1 − e_{2i−1}) over the list (s, z)."""
    entries = my_octahedron_list(s, z)
    numer = 1.0 - np.conj(entries[1::2])
    denom = 1.0 - entries[0::2]
    if np.min(np.abs(denom)) < get_settings().degeneracy_tol:
        raise DegenerateTetrahedronError(f"octahedron piece is flat at z = {z}")
    return tuple(complex(w) for w in numer / denom)


def holonomy(s: SuperCoords, z: complex) -> complex:
    entries = my_octahedron_list(s, z)
    return complex(np.prod(1.0 - np.conj(entries[1::2])) - np.prod(1.0 - entries[0::2]))


def octahedral_roots(s: SuperCoords) -> Tuple[complex, complex]:
    """Roots of the holonomy; z⁴k(z) is z times a quadratic on the unit circle."""
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    k_roots = np.conj([1 / r2, c / r4, 1 / r4, f / r2])
    l_roots = np.array([1.0, b, r3 * r4 / c, a * r2 / r1])
    coeffs = np.poly(k_roots) - np.poly(l_roots)
    quadratic = coeffs[1:4]
    if abs(quadratic[0]) < 1e-14:
        raise SingularConfigurationError("holonomy quadratic has vanishing leading coefficient")
    roots = np.roots(quadratic)
    roots = sorted(roots, key=lambda w: np.angle(w))
    return complex(roots[0]), complex(roots[1])


def o_from_s(s: SuperCoords) -> Tuple[complex, ...]:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return (b / r4, r1, c / r4, a / r1, r3, d / r3,
            b / r2, f / r2, c / r3, a / r4, e / r1, r2)


def octahedron_from_s(s: SuperCoords, z: complex, tol: Optional[float] = None) -> OctahedronCoords:
    tol = get_settings().holonomy_tol if tol is None else tol
    octa = OctahedronCoords(octahedron_shapes(s, z), o_from_s(s))
    residual = octa.holonomy_residual()
    if residual > tol:
        raise HolonomyViolationError(f"z = {z:.6g} is not a holonomy root (residual {residual:.3g})")
    return octa


def o_coords_round_trip(o) -> SuperCoords:
    octa = OctahedronCoords(edges=tuple(o))
    worst = max(max(octa.vertex_residuals().values()), max(octa.waist_residuals().values()))
    if worst > 1e-9:
        raise ConstraintViolationError(f"o-coordinates violate vertex/waist products by {worst:.3g}")
    o = octa.edges
    return SuperCoords((
        o[3] * o[1], o[6] * o[11], o[8] * o[4], o[5] * o[4], o[10] * o[1], o[7] * o[11],
        o[1], o[11], o[4], 1.0 / (o[0] * o[9] * o[2]),
    ))


__all__ = [
    "O_VERTICES",
    "O_WAISTS",
    "O_EDGE_NAMES",
    "IdealTet",
    "IdealTetList",
    "OctahedronCoords",
    "z_from_clinants",
    "volume_ideal",
    "volume_ideal_lobachevsky",
    "isosceles_split",
    "my_octahedron_list",
    "waist_list",
    "octahedron_shapes",
    "holonomy",
    "octahedral_roots",
    "o_from_s",
    "octahedron_from_s",
    "o_coords_round_trip",
]
