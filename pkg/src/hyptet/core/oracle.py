"""
Klein-model volume oracle.

A finite tetrahedron is realized from its Gram matrix and its volume is the
integral of (1 − |x|²)⁻² over the Euclidean tetrahedron spanned by the Klein
vertices. Nothing here uses dilogarithms, so it is an independent check on
every closed-form volume.
"""

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, Tuple

import numpy as np

from hyptet.config.settings import get_settings
from hyptet.core import metrics
from hyptet.core.coords import AngleLike, DihedralAngles
from hyptet.core.errors import ConvergenceError, DomainError, RealizationError
from hyptet.core.my_engine import gram
from hyptet.utils.pool import ordered_map

logger = logging.getLogger(__name__)

MINKOWSKI = np.diag([1.0, 1.0, 1.0, -1.0])

# face-plane pair of each edge, A..F
EDGE_PLANES: Tuple[Tuple[int, int], ...] = ((0, 1), (0, 2), (1, 2), (2, 3), (1, 3), (0, 3))

# children of an 8-way split over [p0, p1, p2, p3, m01, m02, m03, m12, m13, m23]
_CHILDREN = (
    (0, 4, 5, 6), (1, 4, 7, 8), (2, 5, 7, 9), (3, 6, 8, 9),
    (5, 8, 4, 6), (5, 8, 6, 9), (5, 8, 9, 7), (5, 8, 7, 4),
)


def minkowski(x: np.ndarray, y: np.ndarray) -> float:
    return float(x @ MINKOWSKI @ y)


# ==================== Klein tetrahedra ====================

@dataclass(frozen=True)
class KleinTetrahedron:
    """Vertex k lies opposite face plane k."""

    vertices: np.ndarray

    def __post_init__(self):
        verts = np.array(self.vertices, dtype=np.float64)
        if verts.shape != (4, 3) or not np.all(np.isfinite(verts)):
            raise DomainError(f"expected four finite points in R^3, got shape {verts.shape}")
        verts.setflags(write=False)
        object.__setattr__(self, "vertices", verts)

    def euclidean_volume(self) -> float:
        return _simplex_volume(self.vertices)

    def hyperboloid(self) -> np.ndarray:
        norms = np.sum(self.vertices ** 2, axis=1)
        if np.any(norms >= 1.0):
            raise RealizationError("vertex on or outside the sphere at infinity")
        lifted = np.hstack([self.vertices, np.ones((4, 1))])
        return lifted / np.sqrt(1.0 - norms)[:, None]

    def edge_lengths(self) -> np.ndarray:
        """Lengths in edge order A..F; the edge between planes i, j joins the other two vertices."""
        points = self.hyperboloid()
        lengths = []
        for i, j in EDGE_PLANES:
            k, l = sorted(set(range(4)) - {i, j})
            lengths.append(np.arccosh(max(1.0, -minkowski(points[k], points[l]))))
        return np.array(lengths)

    def face_normals(self) -> np.ndarray:
        points = self.hyperboloid()
        normals = np.empty((4, 4))
        for k in range(4):
            rows = np.array([MINKOWSKI @ points[l] for l in range(4) if l != k])
            n = np.linalg.svd(rows)[2][-1]
            n = n / np.sqrt(minkowski(n, n))
            if minkowski(n, points[k]) > 0:
                n = -n
            normals[k] = n
        return normals

    def dihedral_angles(self) -> DihedralAngles:
        normals = self.face_normals()
        return DihedralAngles(tuple(
            np.arccos(np.clip(-minkowski(normals[i], normals[j]), -1.0, 1.0))
            for i, j in EDGE_PLANES
        ))

    def boosted(self, rapidity: float, axis: int = 0) -> "KleinTetrahedron":
        boost = np.eye(4)
        ch, sh = np.cosh(rapidity), np.sinh(rapidity)
        boost[axis, axis] = boost[3, 3] = ch
        boost[axis, 3] = boost[3, axis] = sh
        moved = self.hyperboloid() @ boost.T
        return KleinTetrahedron(moved[:, :3] / moved[:, 3:])

    def scaled(self, factor: float) -> "KleinTetrahedron":
        return KleinTetrahedron(self.vertices * factor)


# ==================== Realization ====================

def realize(a: AngleLike) -> KleinTetrahedron:
    """Klein vertices of the finite tetrahedron with the given dihedral angles."""
    G = gram(a).matrix
    eigvals, Q = np.linalg.eigh(G)
    tol = 1e-12 * max(1.0, np.max(np.abs(eigvals)))
    if np.sum(eigvals < -tol) != 1 or np.any(np.abs(eigvals) <= tol):
        raise RealizationError(f"Gram matrix is not of signature (3,1): eigenvalues {eigvals}")
    order = [1, 2, 3, 0]
    normals = (Q[:, order] * np.sqrt(np.abs(eigvals[order])))
    vertices = -np.linalg.inv(normals @ MINKOWSKI)
    points = vertices.T
    norms = np.array([minkowski(p, p) for p in points])
    if np.any(norms >= -tol):
        raise RealizationError("ideal or hyperideal vertex: the tetrahedron is not finite")
    times = points[:, 3]
    if not (np.all(times > 0) or np.all(times < 0)):
        raise RealizationError("vertices have inconsistent time orientation")
    klein = points[:, :3] / times[:, None]
    if not np.all(np.isfinite(klein)):
        raise RealizationError("non-finite Klein vertex")
    return KleinTetrahedron(klein)


# ==================== Integration ====================

@lru_cache(maxsize=8)
def _conical_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    """Collapsed Gauss–Legendre rule on the unit simplex {ξ ≥ 0, Σξ ≤ 1}."""
    x, w = np.polynomial.legendre.leggauss(order)
    x, w = 0.5 * (x + 1.0), 0.5 * w
    u, v, s = np.meshgrid(x, x, x, indexing="ij")
    wu, wv, ws = np.meshgrid(w, w, w, indexing="ij")
    xi = np.stack([u, (1 - u) * v, (1 - u) * (1 - v) * s], axis=-1).reshape(-1, 3)
    weights = (wu * wv * ws * (1 - u) ** 2 * (1 - v)).reshape(-1)
    return xi, weights


def _simplex_volume(cell: np.ndarray) -> float:
    return abs(float(np.linalg.det(cell[1:] - cell[0]))) / 6.0


def _integrand(points: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 - np.sum(points ** 2, axis=-1)) ** 2


def _cell_integral(cell: np.ndarray, rule: Tuple[np.ndarray, np.ndarray]) -> float:
    xi, weights = rule
    edges = cell[1:] - cell[0]
    jac = abs(float(np.linalg.det(edges)))
    return jac * float(weights @ _integrand(cell[0] + xi @ edges))


def _subdivide(cell: np.ndarray) -> List[np.ndarray]:
    p = cell
    mids = [(p[i] + p[j]) / 2 for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))]
    pts = np.vstack([p, np.array(mids)])
    return [pts[list(idx)] for idx in _CHILDREN]


@dataclass(frozen=True)
class CellTask:
    cell: np.ndarray
    depth: int
    estimate: float
    tol: float
    root_volume: float
    max_depth: int
    order: int


@dataclass(frozen=True)
class CellResult:
    accepted: Tuple[float, ...]
    cells: int
    failed: bool = False


def _refine(task: CellTask) -> CellResult:
    """Depth-first adaptive refinement of one cell."""
    rule = _conical_rule(task.order)
    accepted: List[float] = []
    cells = 0
    stack = [(task.cell, task.depth, task.estimate)]
    while stack:
        cell, depth, estimate = stack.pop()
        children = _subdivide(cell)
        values = [_cell_integral(child, rule) for child in children]
        cells += len(children)
        refined = math.fsum(values)
        if abs(refined - estimate) <= task.tol * _simplex_volume(cell) / task.root_volume:
            accepted.append(refined)
            continue
        if depth + 1 >= task.max_depth:
            return CellResult(tuple(accepted), cells, failed=True)
        stack.extend(reversed([(child, depth + 1, value) for child, value in zip(children, values)]))
    return CellResult(tuple(accepted), cells)


@metrics.track_time(metrics.oracle_integration_seconds)
def numeric_volume(k: KleinTetrahedron, tol: Optional[float] = None,
                   max_depth: int = 9, order: int = 6, workers: Optional[int] = None) -> float:
    """Adaptive cubature of the Klein volume form.

    The root cell is split once and its eight children are refined
    independently, in parallel when ``workers`` > 0. Accepted pieces are summed
    with ``math.fsum`` in child order, so the result does not depend on workers.
    """
    tol = get_settings().oracle_tol if tol is None else tol
    if np.any(np.sum(k.vertices ** 2, axis=1) >= 1.0):
        raise ConvergenceError("integrand is unbounded: vertex on or outside the sphere")
    root_volume = k.euclidean_volume()
    if root_volume == 0.0:
        return 0.0
    rule = _conical_rule(order)
    children = _subdivide(k.vertices)
    values = [_cell_integral(child, rule) for child in children]
    refined = math.fsum(values)
    if abs(refined - _cell_integral(k.vertices, rule)) <= tol:
        metrics.oracle_cells_total.inc(len(children))
        return refined
    tasks = [CellTask(child, 1, value, tol, root_volume, max_depth, order)
             for child, value in zip(children, values)]
    results = ordered_map(_refine, tasks, workers)
    cells = len(children) + sum(r.cells for r in results)
    metrics.oracle_cells_total.inc(cells)
    if any(r.failed for r in results):
        raise ConvergenceError(f"no convergence within depth {max_depth} (tol {tol:g})")
    accepted = [x for r in results for x in r.accepted]
    logger.debug(f"oracle integration: {cells} cells, {len(accepted)} accepted")
    return math.fsum(accepted)


def monte_carlo_volume(k: KleinTetrahedron, samples: int,
                       rng: np.random.Generator) -> Tuple[float, float]:
    """Uniform Dirichlet sampling; returns the estimate and its standard error."""
    if np.any(np.sum(k.vertices ** 2, axis=1) >= 1.0):
        raise ConvergenceError("integrand is unbounded: vertex on or outside the sphere")
    weights = rng.dirichlet(np.ones(4), size=samples)
    values = _integrand(weights @ k.vertices) * k.euclidean_volume()
    return float(np.mean(values)), float(np.std(values, ddof=1) / np.sqrt(samples))


def oracle_volume(a: AngleLike, tol: Optional[float] = None, workers: Optional[int] = None) -> float:
    volume = numeric_volume(realize(a), tol, workers=workers)
    metrics.record_evaluation('oracle')
    return volume


__all__ = [
    "MINKOWSKI",
    "EDGE_PLANES",
    "KleinTetrahedron",
    "CellTask",
    "CellResult",
    "minkowski",
    "realize",
    "numeric_volume",
    "monte_carlo_volume",
    "oracle_volume",
]
