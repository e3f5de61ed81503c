"""Exact computer algebra for NCS systems: five coupled generating functions
over an associative algebra, with the universal system over noncommutative
symmetric functions, the rooted-tree system over the Grossman-Larson algebra
and the system attached to a formal automorphism of polynomial maps.
"""
from .algebra import QQ, FreeAlgebra, PolyRing, Tensor, TruncSeries
from .ncs import (
    Component,
    NcsSystem,
    complete_from,
    flip,
    map_system,
    system_from_json,
    system_to_json,
    tensor,
    trivial_system,
    verify_ncs,
)

__version__ = "0.1.0"

__all__ = [
    "QQ", "FreeAlgebra", "PolyRing", "Tensor", "TruncSeries",
    "Component", "NcsSystem", "complete_from", "flip", "map_system", "system_from_json",
    "system_to_json", "tensor", "trivial_system", "verify_ncs",
]
