"""
The 23040-element symmetry group acting on balanced coordinates.

Elements are monomial maps on (t, u, v, T, U, V; r). Each one is a signed
permutation of the six letters with an even number of conjugations; the
image of r is then forced by r² = tuv/(TUV), and we always take the root
r·b^m with m read off the permutation. Words like ``"T~uvt~UV"`` list the
image of each output slot, ``~`` marking conjugation.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import groupby
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from hyptet.config.settings import get_settings
from hyptet.core import metrics
from hyptet.core.coords import BalancedCoords, SuperCoords
from hyptet.core.errors import ConstraintViolationError, DomainError

logger = logging.getLogger(__name__)

LETTERS = "tuvTUV"
E_WEIGHTS = np.array([1, 1, 1, -1, -1, -1])

Key = Tuple[int, ...]


def parse_word(word: str) -> Key:
    key: List[int] = []
    i = 0
    while i < len(word):
        idx = LETTERS.find(word[i])
        if idx < 0:
            raise DomainError(f"unknown letter {word[i]!r} in {word!r}")
        sign = 1
        if i + 1 < len(word) and word[i + 1] == "~":
            sign = -1
            i += 1
        key.append(sign * (idx + 1))
        i += 1
    return tuple(key)


def _compose(g: Key, h: Key) -> Key:
    return tuple(h[x - 1] if x > 0 else -h[-x - 1] for x in g)


def _r_row(key: Key) -> np.ndarray:
    m6 = np.zeros((6, 6), dtype=int)
    for i, k in enumerate(key):
        m6[i, abs(k) - 1] = 1 if k > 0 else -1
    m = (E_WEIGHTS @ m6 - E_WEIGHTS) // 2
    return np.append(m, 1)


# ==================== Monomial maps ====================

@dataclass(frozen=True, order=True)
class MonomialMap:
    key: Key

    def __post_init__(self):
        key = tuple(int(k) for k in self.key)
        if sorted(abs(k) for k in key) != [1, 2, 3, 4, 5, 6]:
            raise ConstraintViolationError(f"not a signed permutation of six letters: {key}")
        if sum(k < 0 for k in key) % 2:
            raise ConstraintViolationError(f"odd number of conjugations: {key}")
        object.__setattr__(self, "key", key)

    @classmethod
    def identity(cls) -> "MonomialMap":
        return cls((1, 2, 3, 4, 5, 6))

    @classmethod
    def from_letters(cls, word: str) -> "MonomialMap":
        return cls(parse_word(word))

    @classmethod
    def from_matrix(cls, matrix) -> "MonomialMap":
        M = np.asarray(matrix, dtype=int)
        if M.shape != (7, 7) or np.any(M[:6, 6] != 0):
            raise ConstraintViolationError("expected a 7x7 monomial matrix with r only in the last row")
        key = []
        for row in M[:6, :6]:
            nz = np.flatnonzero(row)
            if len(nz) != 1 or abs(row[nz[0]]) != 1:
                raise ConstraintViolationError(f"row {row} is not a signed unit vector")
            key.append(int(row[nz[0]]) * (int(nz[0]) + 1))
        g = cls(tuple(key))
        if not np.array_equal(M[6], g.r_row):
            raise ConstraintViolationError(f"r-row {M[6]} disagrees with the balanced constraint")
        return g

    @property
    def letters(self) -> str:
        return "".join(LETTERS[abs(k) - 1] + ("~" if k < 0 else "") for k in self.key)

    @property
    def r_row(self) -> np.ndarray:
        return _r_row(self.key)

    @property
    def matrix(self) -> np.ndarray:
        M = np.zeros((7, 7), dtype=int)
        for i, k in enumerate(self.key):
            M[i, abs(k) - 1] = 1 if k > 0 else -1
        M[6] = self.r_row
        return M

    @property
    def is_identity(self) -> bool:
        return self.key == (1, 2, 3, 4, 5, 6)

    def permutation(self) -> Key:
        return tuple(abs(k) for k in self.key)

    def __matmul__(self, other: "MonomialMap") -> "MonomialMap":
        return MonomialMap(_compose(self.key, other.key))

    def inverse(self) -> "MonomialMap":
        inv = [0] * 6
        for i, k in enumerate(self.key):
            inv[abs(k) - 1] = (i + 1) if k > 0 else -(i + 1)
        return MonomialMap(tuple(inv))

    def __call__(self, b: BalancedCoords) -> BalancedCoords:
        vals = b.as_array()
        out = np.empty(7, dtype=np.complex128)
        for i, k in enumerate(self.key):
            x = vals[abs(k) - 1]
            out[i] = x if k > 0 else np.conj(x)
        m = self.r_row[:6]
        out[6] = vals[6] * np.prod(np.where(m == 1, vals[:6], np.where(m == -1, 1.0 / vals[:6], 1.0)))
        return BalancedCoords.from_array(out)

    def __str__(self) -> str:
        return self.letters


def apply(g: MonomialMap, b: BalancedCoords) -> BalancedCoords:
    return g(b)


# ==================== Group tables ====================

@dataclass(frozen=True)
class GroupTable:
    elements: Tuple[MonomialMap, ...]
    words: Tuple[str, ...]
    _positions: Dict[Key, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_positions", {g.key: i for i, g in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def contains(self, g: MonomialMap) -> bool:
        return g.key in self._positions

    def index(self, g: MonomialMap) -> int:
        try:
            return self._positions[g.key]
        except KeyError:
            raise DomainError(f"{g} is not in this table") from None

    def word(self, g: MonomialMap) -> str:
        return self.words[self.index(g)]

    def to_csv(self, path) -> int:
        """Write one row of 49 integers (the flattened 7x7 matrix) per element."""
        rows = np.array([g.matrix.ravel() for g in self.elements], dtype=int)
        np.savetxt(path, rows, fmt="%d", delimiter=",")
        return len(rows)


@metrics.track_time(metrics.group_enumeration_seconds)
def closure(gens: Iterable[MonomialMap], names: Optional[Sequence[str]] = None) -> GroupTable:
    gens = list(gens)
    names = list(names) if names is not None else [f"g{i + 1}" for i in range(len(gens))]
    identity = MonomialMap.identity().key
    words: Dict[Key, str] = {identity: ""}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for name, g in zip(names, gens):
            y = _compose(g.key, x)
            if y not in words:
                words[y] = f"{name} {words[x]}".strip()
                queue.append(y)
                if len(words) % 4096 == 0:
                    logger.debug(f"closure reached {len(words)} elements")
    keys = sorted(words)
    logger.debug(f"closure of {len(gens)} generators has {len(keys)} elements")
    return GroupTable(tuple(MonomialMap(k) for k in keys), tuple(words[k] for k in keys))


# ==================== Generators ====================

@dataclass(frozen=True)
class GeneratorSpec:
    """A generator in letter notation with its tabulated r-multiplier."""

    letters: str
    multiplier: str
    shaded: bool

    @property
    def map(self) -> MonomialMap:
        return MonomialMap.from_letters(self.letters)


SHADED_GENERATORS: Tuple[GeneratorSpec, ...] = (
    GeneratorSpec("T~uvt~UV", "r", True),
    GeneratorSpec("TuvtUV", "Tt~r", True),
    GeneratorSpec("tUvTuV", "Uu~r", True),
    GeneratorSpec("tuVTUv", "Vv~r", True),
    GeneratorSpec("tU~vTu~V", "r", True),
    GeneratorSpec("tuV~TUv~", "r", True),
)

UNSHADED_GENERATORS: Tuple[GeneratorSpec, ...] = (
    GeneratorSpec("UuvTtV", "Ut~r", False),
    GeneratorSpec("U~uvTt~V", "r", False),
    GeneratorSpec("tVvTUu", "Vu~r", False),
    GeneratorSpec("tV~vTUu~", "u~V~r", False),
    GeneratorSpec("tuTvUV", "Tv~r", False),
    GeneratorSpec("tuT~v~UV", "v~T~r", False),
)


def multiplier_exponents(word: str) -> np.ndarray:
    """Exponent vector over (t, u, v, T, U, V, r) of a word such as ``"Tt~r"``."""
    vec = np.zeros(7, dtype=int)
    i = 0
    while i < len(word):
        ch = word[i]
        sign = -1 if i + 1 < len(word) and word[i + 1] == "~" else 1
        if ch == "r":
            vec[6] += sign
        elif ch in LETTERS:
            vec[LETTERS.index(ch)] += sign
        else:
            raise DomainError(f"unknown letter {ch!r} in multiplier {word!r}")
        i += 2 if sign < 0 else 1
    return vec


def stated_multiplier_consistent(gen: GeneratorSpec) -> bool:
    return bool(np.array_equal(multiplier_exponents(gen.multiplier), gen.map.r_row))


def generators() -> List[MonomialMap]:
    return [gen.map for gen in SHADED_GENERATORS + UNSHADED_GENERATORS]


@lru_cache(maxsize=1)
def enumerate_group() -> GroupTable:
    table = closure(generators())
    logger.info(f"enumerated symmetry group: {len(table)} elements")
    return table


def is_d6_shaped(table: GroupTable) -> bool:
    """720 underlying permutations, each carrying all 32 even sign patterns."""
    perms = sorted(table, key=lambda g: g.permutation())
    sizes = [len(list(grp)) for _, grp in groupby(perms, key=lambda g: g.permutation())]
    return len(sizes) == 720 and all(n == 32 for n in sizes)


# ==================== Named elements and subgroups ====================

def g_o() -> MonomialMap:
    """(t, u, v, T, U, V) -> (t̄, v̄, V, T̄, u, Ū); sends r to 1/r."""
    return MonomialMap.from_letters("t~v~VT~uU~")


def g_r() -> MonomialMap:
    """The Regge move; its r-multiplier is UV."""
    return MonomialMap.from_letters("tvuTU~V~")


ALL_PAIRS_SWAP = "TUVtuv"
MIRROR = "utvUTV"

_LOWER_PERMS = ["utvTUV", "tvuTUV"]
_UPPER_PERMS = ["tuvUTV", "tuvTVU"]
_UPPER_EVEN_CONJ = ["tuvT~U~V", "tuvTU~V~"]

SUBGROUP_GENERATORS: Dict[str, List[str]] = {
    "shaded": [gen.letters for gen in SHADED_GENERATORS],
    "tetrahedral": ["utvUTV", "tvuTVU"] + _UPPER_EVEN_CONJ,
    "Regge": _LOWER_PERMS + _UPPER_PERMS + _UPPER_EVEN_CONJ,
    "H0": _LOWER_PERMS + _UPPER_PERMS + ["t~u~vTUV", "tu~v~TUV", "tuv~T~UV"] + _UPPER_EVEN_CONJ,
}
SUBGROUP_GENERATORS["W"] = SUBGROUP_GENERATORS["shaded"] + SUBGROUP_GENERATORS["tetrahedral"]
SUBGROUP_GENERATORS["P"] = SUBGROUP_GENERATORS["shaded"] + ["uvtUVT"] + _UPPER_EVEN_CONJ
SUBGROUP_GENERATORS["H"] = SUBGROUP_GENERATORS["H0"] + [ALL_PAIRS_SWAP]

SUBGROUP_ORDERS = {"shaded": 64, "tetrahedral": 24, "W": 1536, "Regge": 144,
                   "P": 768, "H0": 1152, "H": 2304}


@lru_cache(maxsize=None)
def subgroup(name: str) -> GroupTable:
    if name not in SUBGROUP_GENERATORS:
        raise DomainError(f"unknown subgroup {name!r}")
    words = SUBGROUP_GENERATORS[name]
    return closure([MonomialMap.from_letters(w) for w in words], words)


def subgroups() -> Dict[str, GroupTable]:
    return {name: subgroup(name) for name in SUBGROUP_ORDERS}


# ==================== Cosets ====================

@dataclass(frozen=True)
class CosetRep:
    name: str
    kind: str
    map: MonomialMap


SR_WORDS = ("tuvTUV", "tuvTVU", "tuvUTV", "tuvUVT", "tuvVTU", "tuvVUT")
# the last trio swaps t and u in the first one
SN_WORDS = ("tuTvVU", "tuTvUV", "tuUvTV", "tvTuVU", "tvTuUV", "tvUuTV",
            "utTvVU", "utTvUV", "utUvTV")
FORMULA_WORDS = ("tuvTUV", "TuvtUV", "tUvTuV", "tuVTUv", "tvVTuU",
                 "tTVuUv", "tTuUvV", "tTUuvV", "tuUTvV", "tTvuUV")


def pairing(g: MonomialMap) -> FrozenSet[FrozenSet[int]]:
    """Invariant of the right coset W·g: which inputs feed each (x, X) slot pair."""
    p = g.permutation()
    return frozenset(frozenset((p[i], p[i + 3])) for i in range(3))


def lower_split(g: MonomialMap) -> FrozenSet[FrozenSet[int]]:
    """Invariant of the right coset H·g: the inputs in the lower slots, up to complement."""
    lower = frozenset(g.permutation()[:3])
    return frozenset((lower, frozenset(range(1, 7)) - lower))


def scissors_cosets(mirrored: bool = False) -> List[CosetRep]:
    reps = [CosetRep(w, "SR", MonomialMap.from_letters(w)) for w in SR_WORDS]
    reps += [CosetRep(w, "SN", MonomialMap.from_letters(w)) for w in SN_WORDS]
    if mirrored:
        m = MonomialMap.from_letters(MIRROR)
        reps += [CosetRep(f"m·{rep.name}", rep.kind, m @ rep.map) for rep in reps]
    return reps


def formula_cosets() -> List[CosetRep]:
    return [CosetRep(w, "formula", MonomialMap.from_letters(w)) for w in FORMULA_WORDS]


# ==================== Super-coordinate moves ====================

def s_one(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((1 / a, 1 / b, c, 1 / d, 1 / e, f,
                        r1 / (a * e), r2 / (b * d), r3 / (d * e), r4 / (a * b)))


def s_two(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((a, b, 1 / c, d, 1 / e, f, r1 / e, r2, r3 / (c * e), r4 / c))


def p_u34(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((a, r2 / r3, c * r2 / (b * r3), d, e * r2 / (b * r3), r2 * r3 / d,
                        r1, r2, r2 / b, r1 / e))


def g_o_super(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((1 / a, d / (r2 * r3), e * r2 / (b * r3), 1 / d, b * r3 / (c * r2),
                        r2 / r3, b / r4, 1 / r3, e / r3, 1 / r4))


# ==================== Octahedral vertex moves ====================
# The twelve generators in super coordinates, one shaded and one unshaded
# move per octahedron vertex. Each satisfies s(g·b) = move(s(b)).

def p_s12(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((1 / a, b, c, d, e, f, r1 / a, r2, r3, r4 / a))


def p_s34(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((a, b, c, 1 / d, e, f, r1, r2 / d, r3 / d, r4))


def p_s23(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((a, 1 / b, c, d, e, f, r1, r2 / b, r3, r4 / b))


def p_s14(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((a, b, c, d, 1 / e, f, r1 / e, r2, r3 / e, r4))


def p_s13(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((a, b, 1 / c, d, e, f, r1, r2, r3 / c, r4 / c))


def p_s24(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((a, b, c, d, e, 1 / f, r1 / f, r2 / f, r3, r4))


def p_u12(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((a, r4 / r1, r1 * r4 / a, d, e * r4 / (b * r1), f * r4 / (b * r1),
                        r4 / b, r3 / e, r3, r4))


def p_u23(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((r2 * r4 / b, b, r4 / r2, d * r4 / (c * r2), e, f * r4 / (c * r2),
                        r1, r4 / c, r1 / f, r4))


def p_u14(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((a * r3 / (c * r1), b, r3 / r1, r1 * r3 / e, e, f * r3 / (c * r1),
                        r3 / c, r2, r3, r2 / f))


def p_u13(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((r4 / r3, r3 * r4 / c, c, d * r4 / (a * r3), e * r4 / (a * r3), f,
                        r2 / d, r2, r4 / a, r4))


def p_u24(s: SuperCoords) -> SuperCoords:
    a, b, c, d, e, f, r1, r2, r3, r4 = s.values
    return SuperCoords((r1 / r2, b * r1 / (a * r2), c, d * r1 / (a * r2), r1 * r2 / f, f,
                        r1, r1 / a, r3, r3 / d))


@dataclass(frozen=True)
class VertexMove:
    """Super-coordinate form of one generator, keyed by octahedron vertex and shade.

    ``correction`` names the entry that differs from the commonly quoted form.
    """

    vertex: str
    shaded: bool
    letters: str
    action: Callable[[SuperCoords], SuperCoords]
    correction: str = ""

    @property
    def map(self) -> MonomialMap:
        return MonomialMap.from_letters(self.letters)

    @property
    def name(self) -> str:
        return f"P{self.vertex}{'s' if self.shaded else 'u'}"

    def __call__(self, s: SuperCoords) -> SuperCoords:
        return self.action(s)


VERTEX_MOVES: Tuple[VertexMove, ...] = (
    VertexMove("12", True, "TuvtUV", p_s12),
    VertexMove("34", True, "T~uvt~UV", p_s34),
    VertexMove("23", True, "tUvTuV", p_s23),
    VertexMove("14", True, "tU~vTu~V", p_s14, "r1/e and r2 are separate entries"),
    VertexMove("13", True, "tuVTUv", p_s13),
    VertexMove("24", True, "tuV~TUv~", p_s24),
    VertexMove("12", False, "tV~vTUu~", p_u12),
    VertexMove("34", False, "tVvTUu", p_u34),
    VertexMove("23", False, "tuT~v~UV", p_u23, "first entry is r2·r4/b, not r2·r3/b"),
    VertexMove("14", False, "tuTvUV", p_u14, "ten comma-separated entries"),
    VertexMove("13", False, "U~uvTt~V", p_u13),
    VertexMove("24", False, "UuvTtV", p_u24, "b·r1/(a·r2) and c are separate entries"),
)


def vertex_move(vertex: str, shaded: bool) -> VertexMove:
    for move in VERTEX_MOVES:
        if move.vertex == vertex and move.shaded == shaded:
            return move
    raise DomainError(f"no {'shaded' if shaded else 'unshaded'} move at vertex {vertex!r}")


# ==================== Genericity ====================

VERTEX_MONOMIALS = ("r", "rTU", "rUV", "rTV")


def monomial_name(vec: Sequence[int]) -> str:
    head = "r" if vec[6] == 1 else ""
    body = "".join(
        LETTERS[i] + ("~" * (-int(x))) if x < 0 else LETTERS[i] * int(x)
        for i, x in enumerate(vec[:6]) if x
    )
    return head + body


def _canonical(vec: Tuple[int, ...]) -> Tuple[int, ...]:
    """Pick one of a monomial and its inverse; r-rows invert to (−m−e, 1)."""
    if vec[6] == 1:
        other = tuple(int(x) for x in (-np.asarray(vec[:6]) - E_WEIGHTS)) + (1,)
    else:
        other = tuple(-x for x in vec)
    return max(vec, other)


@lru_cache(maxsize=1)
def genericity_classes() -> Tuple[Tuple[Tuple[int, ...], ...], Tuple[Tuple[int, ...], ...]]:
    """Orbit representatives of r (16 classes) and tT (30 classes) under the group."""
    group = enumerate_group()
    r_orbit = {_canonical(tuple(int(x) for x in g.r_row)) for g in group}
    tt_orbit = set()
    for g in group:
        M = g.matrix
        tt_orbit.add(_canonical(tuple(int(x) for x in (M[0] + M[3]))))
    return tuple(sorted(r_orbit)), tuple(sorted(tt_orbit))


@dataclass(frozen=True)
class GenericityReport:
    generic: bool
    violated: Tuple[str, ...]
    ideal_vertex: bool
    min_distance: float
    checked: int


def genericity(b: BalancedCoords, tol: Optional[float] = None) -> GenericityReport:
    tol = get_settings().generic_tol if tol is None else tol
    r_classes, tt_classes = genericity_classes()
    vertex_keys = {_canonical(tuple(int(x) for x in multiplier_exponents(w))) for w in VERTEX_MONOMIALS}
    violated: List[str] = []
    ideal_vertex = False
    min_distance = np.inf
    for vec in r_classes + tt_classes:
        distance = abs(b.monomial(vec) - 1.0)
        min_distance = min(min_distance, distance)
        if distance < tol:
            violated.append(monomial_name(vec))
            ideal_vertex = ideal_vertex or vec in vertex_keys
    return GenericityReport(
        generic=not violated,
        violated=tuple(violated),
        ideal_vertex=ideal_vertex,
        min_distance=float(min_distance),
        checked=len(r_classes) + len(tt_classes),
    )


__all__ = [
    "LETTERS",
    "MonomialMap",
    "GroupTable",
    "GeneratorSpec",
    "CosetRep",
    "GenericityReport",
    "SHADED_GENERATORS",
    "UNSHADED_GENERATORS",
    "SUBGROUP_GENERATORS",
    "SUBGROUP_ORDERS",
    "SR_WORDS",
    "SN_WORDS",
    "FORMULA_WORDS",
    "ALL_PAIRS_SWAP",
    "MIRROR",
    "VERTEX_MONOMIALS",
    "parse_word",
    "apply",
    "closure",
    "generators",
    "multiplier_exponents",
    "stated_multiplier_consistent",
    "enumerate_group",
    "is_d6_shaped",
    "g_o",
    "g_r",
    "subgroup",
    "subgroups",
    "pairing",
    "lower_split",
    "scissors_cosets",
    "formula_cosets",
    "s_one",
    "s_two",
    "p_u34",
    "g_o_super",
    "p_s12",
    "p_s34",
    "p_s23",
    "p_s14",
    "p_s13",
    "p_s24",
    "p_u12",
    "p_u23",
    "p_u14",
    "p_u13",
    "p_u24",
    "VertexMove",
    "VERTEX_MOVES",
    "vertex_move",
    "monomial_name",
    "genericity_classes",
    "genericity",
]
