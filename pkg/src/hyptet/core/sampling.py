"""
Seeded samplers for tests, verification runs and benchmarks
"""

import logging
from typing import Optional

import numpy as np

from hyptet.core.coords import BalancedCoords, DihedralAngles, b_from_angles
from hyptet.core.errors import ConvergenceError
from hyptet.core.ideal_geom import IdealTet
from hyptet.core.my_engine import gram
from hyptet.core.symmetry import genericity

logger = logging.getLogger(__name__)

FINITE_CENTER = 1.2
FINITE_SPREAD = 0.3
# one edge in OBTUSE_RANGE, the other five held just above pi/3
OBTUSE_RANGE = (1.6, 1.9)
OBTUSE_CENTER = 1.1
OBTUSE_SPREAD = 0.05


def random_angles(rng: np.random.Generator) -> DihedralAngles:
    return DihedralAngles(tuple(rng.uniform(0.05, np.pi - 0.05, size=6)))


def random_finite_angles(rng: np.random.Generator, *, generic: bool = True, obtuse: bool = False,
                         center: Optional[float] = None, spread: Optional[float] = None,
                         max_tries: int = 10_000) -> DihedralAngles:
    """Rejection-sample angles near ``center`` until the tetrahedron is finite (and generic).

    With ``obtuse`` one randomly chosen edge is drawn from ``OBTUSE_RANGE``.
    """
    if center is None:
        center = OBTUSE_CENTER if obtuse else FINITE_CENTER
    if spread is None:
        spread = OBTUSE_SPREAD if obtuse else FINITE_SPREAD
    for attempt in range(max_tries):
        values = rng.uniform(center - spread, center + spread, size=6)
        if obtuse:
            values[rng.integers(6)] = rng.uniform(*OBTUSE_RANGE)
        angles = DihedralAngles(tuple(values))
        if not gram(angles).is_finite():
            continue
        if generic and not genericity(b_from_angles(angles)).generic:
            continue
        if attempt > 100:
            logger.debug(f"finite sample accepted after {attempt + 1} draws")
        return angles
    raise ConvergenceError(f"no finite sample in {max_tries} draws around {center}")


def random_balanced(rng: np.random.Generator) -> BalancedCoords:
    t, u, v, T, U, V = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=6))
    r = np.sqrt(t * u * v / (T * U * V)) * rng.choice([-1.0, 1.0])
    return BalancedCoords((t, u, v, T, U, V, r))


def random_ideal_tet(rng: np.random.Generator) -> IdealTet:
    angles = rng.dirichlet(np.ones(3)) * np.pi
    a, b, _ = np.exp(2j * angles)
    return IdealTet(a, b, 1.0 / (a * b))


__all__ = [
    "random_angles",
    "random_finite_angles",
    "random_balanced",
    "random_ideal_tet",
]
