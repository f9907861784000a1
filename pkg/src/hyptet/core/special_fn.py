"""
Dilogarithm family used by every volume formula.

All functions accept Python scalars or numpy arrays and return a scalar for
scalar input. Branch cuts follow the principal branch of ``log``; points that
lie exactly on the cut of ``dilog`` take the limit from the lower half-plane.
"""

import logging
from typing import Union

import mpmath
import numpy as np
from scipy import integrate, special

from hyptet.core.errors import BranchCutError, DegenerateTetrahedronError, DomainError

logger = logging.getLogger(__name__)

ComplexValue = Union[complex, np.ndarray]

PI2_6 = np.pi ** 2 / 6


def _as_complex(z) -> np.ndarray:
    arr = np.asarray(z, dtype=np.complex128)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"non-finite argument: {z!r}")
    return arr


def _unwrap(value: np.ndarray, real: bool = False):
    if np.ndim(value) == 0:
        return float(np.real(value)) if real else complex(value)
    return np.real(value) if real else value


def dilog(z) -> ComplexValue:
    """Principal dilogarithm 𝓛₂(z) = −∫₀ᶻ log(1−s)/s ds, cut along [1, ∞).

    ``scipy.special.spence(w)`` is 𝓛₂(1 − w); on the cut we return the value
    approached from Im z < 0, i.e. Im 𝓛₂(x) = −π log x for real x > 1.
    """
    arr = _as_complex(z)
    with np.errstate(invalid="ignore", divide="ignore"):
        value = special.spence(1.0 - arr)
        on_cut = (arr.imag == 0.0) & (arr.real > 1.0)
        if np.any(on_cut):
            x = np.where(on_cut, arr.real, 2.0)
            logx = np.log(x)
            inverted = special.spence(1.0 - 1.0 / x)
            below = (np.pi ** 2 / 3 - 0.5 * logx ** 2 - inverted) - 1j * np.pi * logx
            value = np.where(on_cut, below, value)
    return _unwrap(value)


def dilog_reference(z, dps: int = 30) -> complex:
    """mpmath polylog at raised precision; slow reference path."""
    arr = _as_complex(z)
    if arr.ndim:
        return np.array([dilog_reference(item, dps) for item in arr.ravel()]).reshape(arr.shape)
    with mpmath.workdps(dps):
        return complex(mpmath.polylog(2, mpmath.mpc(float(arr.real), float(arr.imag))))


def dilog_quadrature(z) -> complex:
    """Direct quadrature of the defining integral along the segment [0, z]."""
    w = complex(_as_complex(z))
    if w.imag == 0.0 and w.real > 1.0:
        raise BranchCutError(f"quadrature path runs along the cut for z = {w}")

    def integrand(t: float) -> complex:
        return -np.log(1.0 - w * t) / t

    opts = dict(epsabs=1e-15, epsrel=1e-13, limit=200)
    re, _ = integrate.quad(lambda t: integrand(t).real, 0.0, 1.0, **opts)
    im, _ = integrate.quad(lambda t: integrand(t).imag, 0.0, 1.0, **opts)
    return complex(re, im)


def bloch_wigner(z) -> Union[float, np.ndarray]:
    """B(z) = Im 𝓛₂(z) + arg(1−z)·log|z|; continuous on C∖{0,1}, zero on the real line."""
    arr = _as_complex(z)
    if np.any((arr == 0) | (arr == 1)):
        raise DegenerateTetrahedronError(f"Bloch–Wigner argument in {{0, 1}}: {z!r}")
    with np.errstate(invalid="ignore", divide="ignore"):
        value = np.imag(dilog(arr)) + np.angle(1.0 - arr) * np.log(np.abs(arr))
        value = np.where(arr.imag == 0.0, 0.0, value)
    return _unwrap(value, real=True)


def lobachevsky(x) -> Union[float, np.ndarray]:
    """Λ(x) = ½ Im 𝓛₂(e^{2ix}); odd and π-periodic."""
    theta = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(theta)):
        raise DomainError(f"non-finite argument: {x!r}")
    return _unwrap(0.5 * np.imag(dilog(np.exp(2j * theta))), real=True)


def _reject_negative_axis(arr: np.ndarray, name: str):
    if np.any((arr.imag == 0.0) & (arr.real <= 0.0)):
        raise BranchCutError(f"{name} evaluated on its cut (-inf, 0]")


def ell(z) -> ComplexValue:
    """𝓛(z) = 𝓛₂(1−z) + ¼ log²z, cut along (−∞, 0]; 𝓛(1) = 0 and 𝓛(1/z) = −𝓛(z)."""
    arr = _as_complex(z)
    _reject_negative_axis(arr, "ell")
    return _unwrap(np.asarray(dilog(1.0 - arr)) + 0.25 * np.log(arr) ** 2)


def kay(z) -> ComplexValue:
    """𝒦(z) = (𝓛₂(1−z) − 𝓛₂(1−1/z))/2, which coincides with 𝓛 off the cut."""
    arr = _as_complex(z)
    _reject_negative_axis(arr, "kay")
    return _unwrap(0.5 * (np.asarray(dilog(1.0 - arr)) - np.asarray(dilog(1.0 - 1.0 / arr))))


def aitch(w) -> ComplexValue:
    """H(w) = 𝓛((1−w)/(1+w)); odd, H(0) = 0, cuts (−∞,−1] ∪ [1,∞)."""
    arr = _as_complex(w)
    if np.any((arr.imag == 0.0) & (np.abs(arr.real) >= 1.0)):
        raise BranchCutError("aitch evaluated on its cut |Re w| >= 1")
    return ell((1.0 - arr) / (1.0 + arr))


def fcal(u, small: float = 1e-12) -> ComplexValue:
    """𝓕(u) = H(√u)/√u, even in the root so the branch of √u is immaterial; 𝓕(0) = 2."""
    arr = _as_complex(u)
    root = np.sqrt(arr)
    tiny = np.abs(root) < small
    safe = np.where(tiny, 0.5, root)
    value = np.asarray(aitch(safe)) / safe
    return _unwrap(np.where(tiny, 2.0 + 0j, value))


__all__ = [
    "ComplexValue",
    "dilog",
    "dilog_reference",
    "dilog_quadrature",
    "bloch_wigner",
    "lobachevsky",
    "ell",
    "kay",
    "aitch",
    "fcal",
]
