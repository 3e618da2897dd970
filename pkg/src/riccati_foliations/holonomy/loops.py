"""Piecewise loops in the base: circle arcs and straight segments.

Every piece is parametrized by ``t`` in ``[0, 1]``.  Loops concatenate
left to right, so the holonomy of ``alpha * beta`` is ``H(beta) H(alpha)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

TAU = 2.0 * math.pi


@dataclass(frozen=True)
class Arc:
    """``center + radius * exp(i theta)``, ``theta`` from ``theta0`` to ``theta1``.

    ``theta1 < theta0`` means clockwise.
    """
    center: complex
    radius: float
    theta0: float
    theta1: float

    kind = "arc"

    def point(self, t):
        th = self.theta0 + np.asarray(t) * (self.theta1 - self.theta0)
        return self.center + self.radius * np.exp(1j * th)

    def velocity(self, t):
        return 1j * (self.theta1 - self.theta0) * (self.point(t) - self.center)

    @property
    def start(self) -> complex:
        return complex(self.point(0.0))

    @property
    def end(self) -> complex:
        return complex(self.point(1.0))

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.theta1, self.theta0)

    def _covers_angle(self, phi: float) -> bool:
        d = self.theta1 - self.theta0
        if abs(d) >= TAU:
            return True
        if d >= 0:
            return (phi - self.theta0) % TAU <= d
        return (self.theta0 - phi) % TAU <= -d

    def distance_to(self, p: complex) -> float:
        w = complex(p) - self.center
        if w != 0 and self._covers_angle(cmath.phase(w)):
            return abs(abs(w) - self.radius)
        if w == 0:
            return self.radius
        return min(abs(p - self.start), abs(p - self.end))

    def length(self) -> float:
        return abs(self.theta1 - self.theta0) * self.radius


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex

    kind = "segment"

    def __post_init__(self):
        object.__setattr__(self, "start", complex(self.start))
        object.__setattr__(self, "end", complex(self.end))

    def point(self, t):
        return self.start + np.asarray(t) * (self.end - self.start)

    def velocity(self, t):
        return (self.end - self.start) * np.ones_like(np.asarray(t, dtype=float))

    def reversed(self) -> "Segment":
        return Segment(self.end, self.start)

    def distance_to(self, p: complex) -> float:
        d = self.end - self.start
        if d == 0:
            return abs(p - self.start)
        s = ((complex(p) - self.start) * d.conjugate()).real / abs(d) ** 2
        s = min(1.0, max(0.0, s))
        return abs(p - (self.start + s * d))

    def length(self) -> float:
        return abs(self.end - self.start)


Piece = Union[Arc, Segment]


@dataclass(frozen=True)
class LoopPath:
    """Closed piecewise path starting and ending at ``base_point``.

    ``clearance`` is the distance the loop promises to keep from the
    forbidden set it was built around (0 when undeclared).
    """
    segments: tuple[Piece, ...]
    base_point: complex
    clearance: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "base_point", complex(self.base_point))
        if not self.segments:
            raise ValueError("a loop needs at least one piece")
        pts = [self.base_point]
        for s in self.segments:
            if abs(s.start - pts[-1]) > 1e-12 * (1 + abs(pts[-1])):
                raise ValueError("loop pieces are not contiguous")
            pts.append(s.end)
        if abs(pts[-1] - self.base_point) > 1e-12 * (1 + abs(self.base_point)):
            raise ValueError("loop is not closed")

    @classmethod
    def circle(cls, center: complex, radius: float, theta0: float = 0.0,
               turns: int = 1) -> "LoopPath":
        """Positive circle starting at angle ``theta0`` (negative turns: clockwise)."""
        arc = Arc(complex(center), float(radius), theta0, theta0 + TAU * turns)
        return cls((arc,), arc.start)

    def reversed(self) -> "LoopPath":
        return LoopPath(tuple(s.reversed() for s in reversed(self.segments)),
                        self.base_point, self.clearance)

    def __mul__(self, other: "LoopPath") -> "LoopPath":
        """Concatenation: traverse ``self`` then ``other``."""
        if abs(other.base_point - self.base_point) > 1e-12 * (1 + abs(self.base_point)):
            raise ValueError("loops have different base points")
        c = min(self.clearance, other.clearance)
        return LoopPath(self.segments + other.segments, self.base_point, c)

    def distance_to(self, p: complex) -> float:
        return min(s.distance_to(p) for s in self.segments)

    def min_distance(self, points: Iterable[complex]) -> float:
        return min((self.distance_to(p) for p in points), default=math.inf)

    def sample(self, per_piece: int = 64) -> np.ndarray:
        t = np.linspace(0.0, 1.0, per_piece)
        return np.concatenate([np.atleast_1d(s.point(t)) for s in self.segments])

    def winding_number(self, p: complex, per_piece: int = 400) -> int:
        z = self.sample(per_piece) - p
        ang = np.unwrap(np.angle(z))
        return int(round((ang[-1] - ang[0]) / TAU))

    def length(self) -> float:
        return sum(s.length() for s in self.segments)


def segment_with_detours(a: complex, b: complex, obstacles: Sequence[complex],
                         radius: float) -> list[Piece]:
    """Straight path ``a -> b`` bent around obstacles closer than ``radius``.

    An obstacle at signed distance ``h`` (positive to the left) from the line
    is bypassed along an arc of ``radius`` that keeps it on the same side as
    the straight line would: clockwise when it is on the right or on the line,
    counterclockwise when it is on the left.  Endpoints must be at least
    ``radius`` away from every obstacle.
    """
    a, b = complex(a), complex(b)
    length = abs(b - a)
    if length == 0:
        return []
    d = (b - a) / length
    hits = []
    for x in obstacles:
        rel = (complex(x) - a) * d.conjugate()
        s, h = rel.real, rel.imag
        if 0.0 < s < length and abs(h) < radius:
            hits.append((s, h, complex(x)))
    hits.sort()
    pieces: list[Piece] = []
    cur = a
    for s, h, x in hits:
        w = math.sqrt(radius * radius - h * h)
        p1 = a + (s - w) * d
        p2 = a + (s + w) * d
        if abs(p1 - cur) > 0:
            pieces.append(Segment(cur, p1))
        phi1 = cmath.phase(p1 - x)
        phi2 = cmath.phase(p2 - x)
        if h > 0:
            sweep = (phi2 - phi1) % TAU
        else:
            sweep = -((phi1 - phi2) % TAU)
        arc = Arc(x, radius, phi1, phi1 + sweep)
        pieces.append(arc)
        cur = arc.end
    if abs(b - cur) > 0:
        pieces.append(Segment(cur, b))
    return pieces


def reverse_pieces(pieces: Sequence[Piece]) -> list[Piece]:
    return [p.reversed() for p in reversed(pieces)]
