"""
hyptet: volumes of generalized hyperbolic tetrahedra and the symmetries of
their Murakami–Yano data.
"""

__version__ = "0.1.1"

from hyptet.core.alt_formulas import (  # noqa: E402
    ZList,
    coset_volume,
    coset_volumes,
    magic_clinant,
    volume_hnice,
    volume_nicev,
    z_list,
)
from hyptet.core.coords import (  # noqa: E402
    BalancedCoords,
    DihedralAngles,
    SuperCoords,
    TetCirculants,
    b_from_c,
    circulants_from_angles,
    s_from_b,
    s_from_c,
)
from hyptet.core.errors import HyptetError, NonGenericError, NonHyperbolicError  # noqa: E402
from hyptet.core.my_engine import buddies, gram, my_data, volume_my  # noqa: E402
from hyptet.core.oracle import oracle_volume, realize  # noqa: E402
from hyptet.core.symmetry import MonomialMap, enumerate_group, genericity  # noqa: E402

__all__ = [
    "__version__",
    "ZList",
    "coset_volume",
    "coset_volumes",
    "magic_clinant",
    "volume_hnice",
    "volume_nicev",
    "z_list",
    "BalancedCoords",
    "DihedralAngles",
    "SuperCoords",
    "TetCirculants",
    "b_from_c",
    "circulants_from_angles",
    "s_from_b",
    "s_from_c",
    "HyptetError",
    "NonGenericError",
    "NonHyperbolicError",
    "buddies",
    "gram",
    "my_data",
    "volume_my",
    "oracle_volume",
    "realize",
    "MonomialMap",
    "enumerate_group",
    "genericity",
]
