"""
Coordinate systems on generalized tetrahedra.

Edges are labelled by the pair of face planes meeting there:
A={12}, B={13}, C={23}, D={34}, E={24}, F={14}. The triples ABC, AEF, BDF
and CDE meet at the four vertices.

Circulants are c = e^{iθ}. Super coordinates and balanced coordinates are
monomials in the circulants; both forget the sign ambiguity of the deck
group K4 ∪ Neg.
"""

import logging
from dataclasses import dataclass, field
from typing import ClassVar, Iterable, List, Sequence, Tuple, Union

import numpy as np

from hyptet.core.errors import ConstraintViolationError, DomainError

logger = logging.getLogger(__name__)

EDGE_NAMES: Tuple[str, ...] = ("A", "B", "C", "D", "E", "F")
BALANCED_NAMES: Tuple[str, ...] = ("t", "u", "v", "T", "U", "V", "r")
SUPER_NAMES: Tuple[str, ...] = ("a", "b", "c", "d", "e", "f", "r1", "r2", "r3", "r4")

UNIT_TOL = 1e-12
CONSTRAINT_TOL = 1e-10
TWO_PI = 2.0 * np.pi


def _complex_tuple(values: Iterable, size: int, kind: str) -> Tuple[complex, ...]:
    arr = np.asarray(list(values), dtype=np.complex128).ravel()
    if arr.shape != (size,):
        raise DomainError(f"{kind} needs {size} entries, got {arr.size}")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{kind} has non-finite entries")
    return tuple(complex(x) for x in arr)


def _check_unit(values: Sequence[complex], kind: str, tol: float = UNIT_TOL):
    worst = max(abs(abs(x) - 1.0) for x in values)
    if worst > tol:
        raise ConstraintViolationError(f"{kind} entries must be unit complex (off by {worst:.3g})")


# ==================== Angles and circulants ====================

@dataclass(frozen=True)
class DihedralAngles:
    """Six dihedral angles in radians, ordered A..F and reduced to [0, 2π)."""

    values: Tuple[float, ...]

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64).ravel()
        if arr.shape != (6,):
            raise DomainError(f"expected 6 dihedral angles, got {arr.size}")
        if not np.all(np.isfinite(arr)):
            raise DomainError("dihedral angles must be finite")
        object.__setattr__(self, "values", tuple(float(x) for x in np.mod(arr, TWO_PI)))

    @classmethod
    def from_degrees(cls, degrees: Sequence[float]) -> "DihedralAngles":
        return cls(tuple(np.radians(np.asarray(degrees, dtype=np.float64))))

    @classmethod
    def from_array(cls, arr: Sequence[float]) -> "DihedralAngles":
        return cls(tuple(arr))

    def as_array(self) -> np.ndarray:
        return np.array(self.values)

    def degrees(self) -> np.ndarray:
        return np.degrees(self.as_array())


@dataclass(frozen=True)
class TetCirculants:
    values: Tuple[complex, ...]

    def __post_init__(self):
        vals = _complex_tuple(self.values, 6, "TetCirculants")
        _check_unit(vals, "TetCirculants")
        object.__setattr__(self, "values", vals)

    @property
    def clinants(self) -> Tuple[complex, ...]:
        return tuple(x * x for x in self.values)

    def conjugate(self) -> "TetCirculants":
        return TetCirculants(tuple(x.conjugate() for x in self.values))

    @classmethod
    def from_array(cls, arr) -> "TetCirculants":
        return cls(tuple(arr))

    def as_array(self) -> np.ndarray:
        return np.array(self.values)


@dataclass(frozen=True)
class SuperCoords:
    """(a, b, c, d, e, f; r1, r2, r3, r4), one square root per vertex triple."""

    values: Tuple[complex, ...]

    def __post_init__(self):
        vals = _complex_tuple(self.values, 10, "SuperCoords")
        object.__setattr__(self, "values", vals)
        worst = max(self.constraint_residuals())
        if worst > CONSTRAINT_TOL:
            raise ConstraintViolationError(f"super coordinate constraints off by {worst:.3g}")

    def __getattr__(self, name: str):
        if name in SUPER_NAMES:
            return self.values[SUPER_NAMES.index(name)]
        raise AttributeError(name)

    def constraint_residuals(self) -> Tuple[float, ...]:
        a, b, c, d, e, f, r1, r2, r3, r4 = self.values
        return (
            abs(r1 * r1 - a * e * f),
            abs(r2 * r2 - b * d * f),
            abs(r3 * r3 - c * d * e),
            abs(r4 * r4 - a * b * c),
            abs(r1 * r2 * r3 * r4 - a * b * c * d * e * f),
        )

    def conjugate(self) -> "SuperCoords":
        return SuperCoords(tuple(x.conjugate() for x in self.values))

    @classmethod
    def from_array(cls, arr) -> "SuperCoords":
        return cls(tuple(arr))

    def as_array(self) -> np.ndarray:
        return np.array(self.values)


@dataclass(frozen=True)
class BalancedCoords:
    """(t, u, v, T, U, V; r) with r² = tuv/(TUV)."""

    values: Tuple[complex, ...]

    def __post_init__(self):
        vals = _complex_tuple(self.values, 7, "BalancedCoords")
        object.__setattr__(self, "values", vals)
        if self.constraint_residual() > CONSTRAINT_TOL:
            raise ConstraintViolationError(
                f"balanced constraint r² = tuv/TUV off by {self.constraint_residual():.3g}"
            )

    def __getattr__(self, name: str):
        if name in BALANCED_NAMES:
            return self.values[BALANCED_NAMES.index(name)]
        raise AttributeError(name)

    def constraint_residual(self) -> float:
        t, u, v, T, U, V, r = self.values
        return abs(r * r - t * u * v / (T * U * V))

    def conjugate(self) -> "BalancedCoords":
        return BalancedCoords(tuple(x.conjugate() for x in self.values))

    def monomial(self, exponents: Sequence[int]) -> complex:
        """Evaluate Π bᵢ^{eᵢ} over (t, u, v, T, U, V, r)."""
        arr = self.as_array()
        return complex(np.prod(arr ** np.asarray(exponents, dtype=np.float64)))

    @classmethod
    def from_array(cls, arr) -> "BalancedCoords":
        return cls(tuple(arr))

    def as_array(self) -> np.ndarray:
        return np.array(self.values)


AngleLike = Union[DihedralAngles, Sequence[float]]


def _angles(a: AngleLike) -> DihedralAngles:
    return a if isinstance(a, DihedralAngles) else DihedralAngles(tuple(a))


# ==================== Deck group ====================

@dataclass(frozen=True)
class DeckElement:
    """A sign pattern on the circulants (K4, NEG) or on balanced t..V (D)."""

    tag: str
    signs: Tuple[int, ...]
    name: str = field(default="", compare=False)

    TAGS: ClassVar[Tuple[str, ...]] = ("K4", "NEG", "D")

    def __post_init__(self):
        if self.tag not in self.TAGS:
            raise DomainError(f"unknown deck tag {self.tag!r}")
        if len(self.signs) != 6 or any(s not in (1, -1) for s in self.signs):
            raise DomainError(f"deck signs must be six ±1 values, got {self.signs}")

    def __matmul__(self, other: "DeckElement") -> "DeckElement":
        if "D" in (self.tag, other.tag):
            raise DomainError("D acts on balanced coordinates and does not compose with K4/NEG")
        signs = tuple(x * y for x, y in zip(self.signs, other.signs))
        tag = "NEG" if signs.count(-1) == 3 else "K4"
        return DeckElement(tag, signs)


def _signs(negated: str) -> Tuple[int, ...]:
    return tuple(-1 if name in negated else 1 for name in EDGE_NAMES)


# non-identity elements keep one opposite pair
K4_ELEMENTS: Tuple[DeckElement, ...] = (
    DeckElement("K4", _signs(""), "id"),
    DeckElement("K4", _signs("BCEF"), "AD"),
    DeckElement("K4", _signs("ACDF"), "BE"),
    DeckElement("K4", _signs("ABDE"), "CF"),
)

# one per face triple
NEG_ELEMENTS: Tuple[DeckElement, ...] = (
    DeckElement("NEG", _signs("ABF"), "ABF"),
    DeckElement("NEG", _signs("ACE"), "ACE"),
    DeckElement("NEG", _signs("BCD"), "BCD"),
    DeckElement("NEG", _signs("DEF"), "DEF"),
)

DECK_D = DeckElement("D", (-1,) * 6, "D")


def apply_deck(element: DeckElement, c: TetCirculants) -> TetCirculants:
    if element.tag == "D":
        raise DomainError("D acts on balanced coordinates; use apply_deck_to_balanced")
    return TetCirculants(tuple(s * x for s, x in zip(element.signs, c.values)))


def apply_deck_to_balanced(element: DeckElement, b: BalancedCoords) -> BalancedCoords:
    """K4 fixes b; NEG and D both negate t..V and fix r."""
    if element.tag == "K4":
        return b
    vals = b.as_array()
    vals[:6] = -vals[:6]
    return BalancedCoords.from_array(vals)


# ==================== Maps ====================

def circulants_from_angles(a: AngleLike) -> TetCirculants:
    return TetCirculants(tuple(np.exp(1j * _angles(a).as_array())))


def angles_from_circulants(c: TetCirculants) -> DihedralAngles:
    return DihedralAngles(tuple(np.angle(c.as_array())))


def s_from_c(c: TetCirculants) -> SuperCoords:
    A, B, C, D, E, F = c.values
    return SuperCoords((A * A, B * B, C * C, D * D, E * E, F * F,
                        -A * E * F, -B * D * F, -C * D * E, -A * B * C))


def b_from_c(c: TetCirculants) -> BalancedCoords:
    A, B, C, D, E, F = c.values
    return BalancedCoords((A * D, B * E, C * F, D / A, E / B, F / C, -A * B * C))


def s_from_b(b: BalancedCoords) -> SuperCoords:
    t, u, v, T, U, V, r = b.values
    return SuperCoords((t / T, u / U, v / V, t * T, u * U, v * V,
                        U * V * r, T * V * r, T * U * r, r))


def b_from_angles(a: AngleLike) -> BalancedCoords:
    return b_from_c(circulants_from_angles(a))


LIFT_BRANCH = "principal: arg B, C in (-pi/2, pi/2]; A principal up to the sign that matches r, D = t/A"


def principal_sqrt(w: complex) -> complex:
    """Square root with argument in (−π/2, π/2]; a signed-zero imaginary part counts as +0."""
    w = complex(w)
    return complex(np.sqrt(complex(w.real, w.imag + 0.0)))


def lift_c_from_b(b: BalancedCoords) -> TetCirculants:
    """A circulant preimage of b; the K4 orbit of the result is the full fibre."""
    t, u, v, T, U, V, r = b.values
    A, B, C = principal_sqrt(t / T), principal_sqrt(u / U), principal_sqrt(v / V)
    D, E, F = t / A, u / B, v / C
    if abs(-A * B * C - r) > abs(A * B * C - r):
        A, D = -A, -D
    return TetCirculants((A, B, C, D, E, F))


def preimages(b: BalancedCoords) -> List[TetCirculants]:
    base = lift_c_from_b(b)
    return [apply_deck(k, base) for k in K4_ELEMENTS]


__all__ = [
    "EDGE_NAMES",
    "BALANCED_NAMES",
    "SUPER_NAMES",
    "DihedralAngles",
    "TetCirculants",
    "SuperCoords",
    "BalancedCoords",
    "AngleLike",
    "DeckElement",
    "K4_ELEMENTS",
    "NEG_ELEMENTS",
    "DECK_D",
    "apply_deck",
    "apply_deck_to_balanced",
    "circulants_from_angles",
    "angles_from_circulants",
    "s_from_c",
    "b_from_c",
    "s_from_b",
    "b_from_angles",
    "LIFT_BRANCH",
    "principal_sqrt",
    "lift_c_from_b",
    "preimages",
]
