"""Pointed sets: finite carriers with a distinguished basepoint."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DitraceError


class Star:
    """Default basepoint sentinel; one shared instance, printed as ``*``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "*"


STAR = Star()


@dataclass(frozen=True)
class PointedSet:
    elements: tuple
    basepoint: object

    def __post_init__(self):
        if self.basepoint not in self.elements:
            raise DitraceError("basepoint must belong to the carrier")
        if len(set(self.elements)) != len(self.elements):
            raise DitraceError("carrier elements must be distinct")

    def __contains__(self, x):
        return x in self.elements

    def __len__(self):
        return len(self.elements)

    @property
    def others(self):
        """Elements except the basepoint, in carrier order."""
        return tuple(x for x in self.elements if x != self.basepoint)


def pointed(*others, basepoint=STAR) -> PointedSet:
    return PointedSet((basepoint,) + tuple(others), basepoint)
