"""Ordered spaces with tail-presented topologies, Priestley duality for finite
lattices, rings of upsets and order-compactifications."""

from .compactify import classify_pair, compare_compactifications, eta0_finite, lift
from .dlat import FinDLat
from .maps import SpaceMap
from .pair import CompactificationPair
from .rings import UpsetRing
from .setalg import Block, Carrier, RSet
from .space import SpacePresentation, classify_space
from .verdict import EngineBug, InvalidInput, Verdict

__all__ = [
    "Block", "Carrier", "RSet", "SpacePresentation", "classify_space", "FinDLat", "SpaceMap",
    "CompactificationPair", "UpsetRing", "classify_pair", "compare_compactifications",
    "eta0_finite", "lift", "Verdict", "EngineBug", "InvalidInput",
]
