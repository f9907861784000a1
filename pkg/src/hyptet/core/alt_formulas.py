"""
Alternate volume formulas: the z-list, the H and 𝓕 forms, the magic clinant
and one volume formula per coset of H in the symmetry group.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from hyptet.config.settings import get_settings
from hyptet.core import metrics
from hyptet.core.coords import BalancedCoords, TetCirculants, _complex_tuple, b_from_c
from hyptet.core.errors import (
    DegenerateTetrahedronError,
    NeedsLogCorrectionError,
    SingularConfigurationError,
)
from hyptet.core.my_engine import (
    MYData,
    balanced_my_data,
    gamma_vec,
    gamma_vec_balanced,
    hat_data,
    my_data,
)
from hyptet.core.special_fn import aitch, ell, fcal
from hyptet.core.symmetry import MonomialMap, formula_cosets, g_o

logger = logging.getLogger(__name__)

# (−1)^i for i = 1..8
ALTERNATING = np.array([-1, 1, -1, 1, -1, 1, -1, 1], dtype=np.float64)


# ==================== z-lists ====================

@dataclass(frozen=True)
class ZList:
    values: Tuple[complex, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _complex_tuple(self.values, 8, "ZList"))

    def _arr(self) -> np.ndarray:
        return np.array(self.values)

    @property
    def odd(self) -> np.ndarray:
        return self._arr()[0::2]

    @property
    def even(self) -> np.ndarray:
        return self._arr()[1::2]

    def dt_residuals(self) -> Tuple[float, float]:
        ratio = np.prod(self.odd / self.even)
        shifted = np.prod((1.0 - self.odd) / (1.0 - self.even))
        return float(abs(ratio - 1.0)), float(abs(shifted - 1.0))

    @property
    def common_clinant(self) -> complex:
        z = self.values[0]
        return z / z.conjugate()

    def clinant_residual(self) -> float:
        z = self._arr()
        return float(np.max(np.abs(z / np.conj(z) - self.common_clinant)))

    def in_dt(self, tol: float = 1e-9) -> bool:
        return max(self.dt_residuals()) <= tol and self.clinant_residual() <= tol

    def in_ft(self, tol: Optional[float] = None, dt_tol: float = 1e-9) -> bool:
        """In 𝒟𝒯 and every z₁/zⱼ is a positive real."""
        tol = get_settings().ft_tol if tol is None else tol
        if not self.in_dt(dt_tol):
            return False
        ratios = self.values[0] / self._arr()
        return bool(np.all(ratios.real > tol) and np.all(np.abs(ratios.imag) <= dt_tol * np.abs(ratios)))

    def permute(self, odd_perm: Sequence[int], even_perm: Sequence[int]) -> "ZList":
        z = self._arr()
        z[0::2] = self.odd[list(odd_perm)]
        z[1::2] = self.even[list(even_perm)]
        return ZList(tuple(z))

    def inverse_conjugate(self) -> "ZList":
        return ZList(tuple(1.0 / np.conj(self._arr())))

    def swap_parity(self) -> "ZList":
        z = np.conj(self._arr())
        z[0::2], z[1::2] = z[1::2].copy(), z[0::2].copy()
        return ZList(tuple(z))


def _z_from_roots(gamma: np.ndarray, rho: complex, rho_prime: complex) -> ZList:
    denom = 1.0 - gamma * rho_prime
    if np.min(np.abs(denom)) < get_settings().degeneracy_tol:
        raise DegenerateTetrahedronError("z-list denominator vanishes")
    z = (1.0 - gamma * rho) / denom
    if np.min(np.abs(z)) < get_settings().degeneracy_tol:
        raise DegenerateTetrahedronError("z-list entry vanishes")
    return ZList(tuple(z))


def z_list(b: BalancedCoords, *, octahedral: bool = False) -> ZList:
    """zⱼ = (1 − γⱼρ)/(1 − γⱼρ') with ρ' = conj ρ(b̄); hatted roots when ``octahedral``."""
    if octahedral:
        data = hat_data(b)
        b = g_o().inverse()(b)
    else:
        data = balanced_my_data(b)
    return _z_from_roots(gamma_vec_balanced(b), data.rho, data.other_root())


# ==================== Weights and the H form ====================

def c_weights(c: TetCirculants, data: Optional[MYData] = None) -> np.ndarray:
    data = my_data(c) if data is None else data
    gamma = gamma_vec(c)
    denom = data.alpha + gamma * data.beta
    if np.min(np.abs(denom)) < get_settings().degeneracy_tol:
        raise SingularConfigurationError("α + γᵢβ vanishes")
    return -1j * gamma / denom


def _require_ft(b: BalancedCoords, what: str) -> ZList:
    zl = z_list(b)
    if not zl.in_ft():
        raise NeedsLogCorrectionError(f"{what}: z-list is outside the positivity set")
    return zl


def hnice_sum(c: TetCirculants) -> complex:
    data = my_data(c)
    weights = c_weights(c, data)
    return complex(np.sum(ALTERNATING * np.asarray(aitch(weights * data.sqrt_delta))))


@metrics.track_time(metrics.volume_computation_seconds, {'method': 'hnice'})
def volume_hnice(c: TetCirculants) -> float:
    _require_ft(b_from_c(c), "hnice")
    metrics.record_evaluation('hnice')
    return 0.5 * hnice_sum(c).imag


@metrics.track_time(metrics.volume_computation_seconds, {'method': 'nicev'})
def volume_nicev(c: TetCirculants) -> float:
    _require_ft(b_from_c(c), "nicev")
    data = my_data(c)
    weights = c_weights(c, data)
    total = np.sum(ALTERNATING * weights * np.asarray(fcal(data.delta * weights ** 2)))
    metrics.record_evaluation('nicev')
    return float((0.5 * data.sqrt_delta * total).imag)


# ==================== Magic clinant ====================

def magic_clinant_from(alpha_sq: float, beta: float, delta: float) -> complex:
    root = np.sqrt(delta)
    return complex((beta * beta - delta) - 2j * beta * root) / alpha_sq


def magic_clinant(b: BalancedCoords) -> complex:
    data = balanced_my_data(b)
    return magic_clinant_from(abs(data.alpha) ** 2, data.beta, data.delta)


# ==================== Coset volumes ====================

def coset_volume(b: BalancedCoords, g: Optional[MonomialMap] = None) -> float:
    image = b if g is None else g(b)
    zl = z_list(image)
    if not zl.in_ft():
        raise NeedsLogCorrectionError(f"coset {g or 'identity'}: z-list is outside the positivity set")
    metrics.record_evaluation('coset')
    return 0.5 * float(np.sum(ALTERNATING * np.imag(np.asarray(ell(np.array(zl.values))))))


def coset_volumes(b: BalancedCoords) -> Dict[str, float]:
    return {rep.name: coset_volume(b, rep.map) for rep in formula_cosets()}


__all__ = [
    "ALTERNATING",
    "ZList",
    "z_list",
    "c_weights",
    "hnice_sum",
    "volume_hnice",
    "volume_nicev",
    "magic_clinant_from",
    "magic_clinant",
    "coset_volume",
    "coset_volumes",
]
