"""Finite-quotient tower analysis.

Permutation groups with deterministic stabilizer chains, normal-subgroup
lattices, chief factors and narrowness, and verifiers for the tower
conditions that certify just-infinite behaviour of an inverse limit.
"""

__version__ = "0.1.0"

from .config import Caps, CapExceeded, DEFAULT_CAPS, InvalidHom
from .perms import Permutation
from .groups import FiniteGroup, SubgroupHandle, direct_product, group_from_generators
from .homs import GroupHom, hom_from_images, identity_hom, quotient_by

__all__ = [
    "Caps",
    "CapExceeded",
    "DEFAULT_CAPS",
    "InvalidHom",
    "Permutation",
    "FiniteGroup",
    "SubgroupHandle",
    "direct_product",
    "group_from_generators",
    "GroupHom",
    "hom_from_images",
    "identity_hom",
    "quotient_by",
    "__version__",
]
