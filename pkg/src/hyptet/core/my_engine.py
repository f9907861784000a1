"""
Murakami–Yano volume engine.

The volume of a generalized hyperbolic tetrahedron is a sum of eight
dilogarithms evaluated at ρ·γⱼ, where ρ is a unit root of the quadratic
h(z) = αz² + 2βz + ᾱ built from the edge circulants. Everything here works in
circulant (c) or balanced (b) coordinates; the two agree on b = b(c).
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from hyptet.config.settings import get_settings
from hyptet.core import metrics
from hyptet.core.coords import (
    AngleLike,
    BalancedCoords,
    TetCirculants,
    b_from_c,
    circulants_from_angles,
    lift_c_from_b,
    s_from_b,
    _angles,
)
from hyptet.core.errors import NonGenericError, NonHyperbolicError
from hyptet.core.ideal_geom import IdealTetList, OctahedronCoords, octahedron_from_s
from hyptet.core.symmetry import genericity

logger = logging.getLogger(__name__)

# planes meeting at each vertex; the 3x3 minor drops the remaining plane
VERTEX_PLANES = {"ABC": (0, 1, 2), "AEF": (0, 1, 3), "BDF": (0, 2, 3), "CDE": (1, 2, 3)}


# ==================== Quadratic data ====================

@dataclass(frozen=True)
class MYData:
    alpha: complex
    beta: float
    delta: float
    rho: Optional[complex] = None

    @property
    def sqrt_delta(self) -> float:
        return float(np.sqrt(self.delta))

    def other_root(self) -> complex:
        """(−β + i√δ)/α, which is conj(ρ) of the conjugate input."""
        return (-self.beta + 1j * self.sqrt_delta) / self.alpha


def _finish(alpha: complex, beta: float, strict: bool, tol: Optional[float]) -> MYData:
    delta = abs(alpha) ** 2 - beta ** 2
    tol = get_settings().euclidean_tol if tol is None else tol
    if delta <= 0 or abs(delta) < tol:
        if strict:
            raise NonHyperbolicError(delta, euclidean=abs(delta) < tol)
        return MYData(alpha, beta, delta, None)
    rho = (-beta - 1j * np.sqrt(delta)) / alpha
    return MYData(alpha, beta, delta, complex(rho))


def quadratic_coefficients(c: TetCirculants) -> Tuple[complex, float, float]:
    A, B, C, D, E, F = c.values
    p, q = A * B * C, D * E * F
    alpha = 2 * (A * D + B * E + C * F + p * q + p * (D / A + E / B + F / C + q / p))
    beta = ((D / A + E / B + F / C + A / D + B / E + C / F)
            - (A * D + B * E + C * F + 1 / (A * D) + 1 / (B * E) + 1 / (C * F)))
    beta = float(beta.real)
    return complex(alpha), beta, abs(alpha) ** 2 - beta ** 2


def my_data(c: TetCirculants, *, strict: bool = True, tol: Optional[float] = None) -> MYData:
    alpha, beta, _ = quadratic_coefficients(c)
    return _finish(alpha, beta, strict, tol)


def balanced_my_data(b: BalancedCoords, *, strict: bool = True, tol: Optional[float] = None) -> MYData:
    t, u, v, T, U, V, r = b.values
    alpha = 2 * (t + u + v + t * u * v - r * (T + U + V + T * U * V))
    beta = (T + U + V + 1 / T + 1 / U + 1 / V) - (t + u + v + 1 / t + 1 / u + 1 / v)
    return _finish(complex(alpha), float(beta.real), strict, tol)


def hat_data(b: BalancedCoords, *, strict: bool = True, tol: Optional[float] = None) -> MYData:
    """Octahedral data α̂, β̂, δ̂; equal to balanced_my_data of g_o⁻¹·b."""
    t, u, v, T, U, V, r = b.values
    alpha_bar = 2 * (1 / U + t + u + t * u / U - r * (V + 1 / v + T + T * V / v))
    beta = (T + 1 / T + V + 1 / V + v + 1 / v) - (t + 1 / t + U + 1 / U + u + 1 / u)
    return _finish(complex(alpha_bar).conjugate(), float(beta.real), strict, tol)


def quadratic_roots(alpha: complex, beta: float) -> Tuple[complex, complex]:
    root = np.sqrt(complex(abs(alpha) ** 2 - beta ** 2))
    return complex((-beta - 1j * root) / alpha), complex((-beta + 1j * root) / alpha)


def gamma_vec(c: TetCirculants) -> np.ndarray:
    A, B, C, D, E, F = c.values
    return np.array([1, -C * D * E, B * C * E * F, -A * E * F,
                     A * C * D * F, -A * B * C, A * B * D * E, -B * D * F], dtype=np.complex128)


def gamma_vec_balanced(b: BalancedCoords) -> np.ndarray:
    t, u, v, T, U, V, r = b.values
    return np.array([1, r * T * U, u * v, r * U * V, t * v, r, t * u, r * T * V], dtype=np.complex128)


def h_poly(c: TetCirculants, z):
    alpha, beta, _ = quadratic_coefficients(c)
    return alpha * z * z + 2 * beta * z + alpha.conjugate()


def h_factored(c: TetCirculants, z):
    gamma = gamma_vec(c)
    z = np.asarray(z, dtype=np.complex128)[..., None]
    odd = np.prod(1.0 - gamma[0::2] * z, axis=-1)
    even = np.prod(1.0 - gamma[1::2] * z, axis=-1)
    value = -(2.0 / (np.prod(c.as_array()) * z[..., 0])) * (odd - even)
    return complex(value) if value.ndim == 0 else value


# ==================== Volume ====================

def my_list(c: TetCirculants, data: Optional[MYData] = None) -> IdealTetList:
    data = my_data(c) if data is None else data
    entries = data.rho * gamma_vec(c)
    entries[0::2] = np.conj(entries[0::2])
    return IdealTetList(tuple(entries))


def _require_generic(b: BalancedCoords):
    report = genericity(b)
    if not report.generic:
        raise NonGenericError(report.violated, report.ideal_vertex)


@metrics.track_time(metrics.volume_computation_seconds, {'method': 'my'})
def volume_my_circulants(c: TetCirculants, *, require_generic: bool = True) -> float:
    data = my_data(c)
    if require_generic:
        _require_generic(b_from_c(c))
    c_bar = c.conjugate()
    volume = 0.25 * (my_list(c, data).volume() + my_list(c_bar).volume())
    metrics.record_evaluation('my')
    return volume


def volume_my_balanced(b: BalancedCoords, *, require_generic: bool = True) -> float:
    return volume_my_circulants(lift_c_from_b(b), require_generic=require_generic)


def volume_my(a: AngleLike, *, require_generic: bool = True) -> float:
    return volume_my_circulants(circulants_from_angles(a), require_generic=require_generic)


# ==================== Octahedral buddies ====================

@dataclass(frozen=True)
class OctahedralBuddies:
    first: OctahedronCoords
    second: OctahedronCoords

    def total_bloch_wigner(self) -> float:
        return self.first.volume() + self.second.volume()

    def volume(self) -> float:
        return 0.5 * self.total_bloch_wigner()


def buddies(c: TetCirculants) -> OctahedralBuddies:
    b = b_from_c(c)
    b_bar = b.conjugate()
    first = octahedron_from_s(s_from_b(b), hat_data(b).rho)
    second = octahedron_from_s(s_from_b(b_bar), hat_data(b_bar).rho)
    return OctahedralBuddies(first, second)


# ==================== Gram matrix ====================

@dataclass(frozen=True)
class GramMatrix:
    matrix: np.ndarray

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    @property
    def delta(self) -> float:
        return -16.0 * self.det

    @property
    def vertex_minors(self) -> dict:
        return {name: float(np.linalg.det(self.matrix[np.ix_(idx, idx)]))
                for name, idx in VERTEX_PLANES.items()}

    def is_hyperbolic(self) -> bool:
        return self.det < 0

    def is_finite(self) -> bool:
        return self.is_hyperbolic() and all(m > 0 for m in self.vertex_minors.values())


def gram(a: AngleLike) -> GramMatrix:
    cA, cB, cC, cD, cE, cF = np.cos(_angles(a).as_array())
    matrix = np.array([
        [1.0, -cA, -cB, -cF],
        [-cA, 1.0, -cC, -cE],
        [-cB, -cC, 1.0, -cD],
        [-cF, -cE, -cD, 1.0],
    ])
    return GramMatrix(matrix)


__all__ = [
    "MYData",
    "OctahedralBuddies",
    "GramMatrix",
    "quadratic_coefficients",
    "my_data",
    "balanced_my_data",
    "hat_data",
    "quadratic_roots",
    "gamma_vec",
    "gamma_vec_balanced",
    "h_poly",
    "h_factored",
    "my_list",
    "volume_my",
    "volume_my_circulants",
    "volume_my_balanced",
    "buddies",
    "gram",
]
