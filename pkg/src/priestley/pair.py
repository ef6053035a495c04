from __future__ import annotations

from dataclasses import dataclass

from .maps import SpaceMap
from .space import SpacePresentation
from .verdict import InvalidInput


@dataclass(frozen=True)
class CompactificationPair:
    """A candidate compactification ``e : X -> Y``; nothing is assumed until classified."""

    X: SpacePresentation
    Y: SpacePresentation
    e: SpaceMap
    name: str = ""

    def __post_init__(self):
        if self.e.source != self.X or self.e.target != self.Y:
            raise InvalidInput("e must map X to Y")

    @classmethod
    def identity(cls, x: SpacePresentation, name: str = "") -> "CompactificationPair":
        return cls(x, x, SpaceMap.identity(x), name)

    @property
    def image(self):
        return self.e.image(self.X.full)
