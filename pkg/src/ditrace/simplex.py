"""Numeric points of standard simplices and the face/degeneracy maps."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DitraceError

TOLERANCE = 1e-12


@dataclass(frozen=True)
class SimplexPoint:
    """A point of the standard simplex: nonnegative coordinates summing to 1."""

    coords: tuple

    def __post_init__(self):
        if not self.coords:
            raise DitraceError("a simplex point needs at least one coordinate")
        if any(t < -TOLERANCE for t in self.coords):
            raise DitraceError(f"negative coordinate in {self.coords}")
        if abs(sum(self.coords) - 1.0) > TOLERANCE:
            raise DitraceError(f"coordinates of {self.coords} do not sum to 1")

    @property
    def dimension(self) -> int:
        return len(self.coords) - 1

    def distance(self, other: "SimplexPoint") -> float:
        if len(self.coords) != len(other.coords):
            raise DitraceError("points live in different simplices")
        return max(abs(a - b) for a, b in zip(self.coords, other.coords))


def face_map(k: int, x: SimplexPoint) -> SimplexPoint:
    """Inclusion of the (n-1)-simplex as the kth face: insert 0 at slot k."""
    n = x.dimension + 1
    if not 0 <= k <= n:
        raise DitraceError(f"face index {k} out of range 0..{n}")
    c = x.coords
    return SimplexPoint(c[:k] + (0.0,) + c[k:])


def degeneracy_map(k: int, x: SimplexPoint) -> SimplexPoint:
    """Surjection merging coordinates k and k+1 by addition."""
    n = x.dimension
    if not 0 <= k < n:
        raise DitraceError(f"degeneracy index {k} out of range 0..{n - 1}")
    c = x.coords
    return SimplexPoint(c[:k] + (c[k] + c[k + 1],) + c[k + 2:])


def random_simplex_point(rng, n: int) -> SimplexPoint:
    """A pseudo-random point of the n-simplex (normalized positive weights)."""
    raw = [rng.random() + 1e-9 for _ in range(n + 1)]
    s = sum(raw)
    coords = [t / s for t in raw]
    coords[-1] = 1.0 - sum(coords[:-1])  # absorb rounding into the last slot
    return SimplexPoint(tuple(coords))
