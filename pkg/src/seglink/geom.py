"""Exact rational geometry kernel.

Every predicate here works on :class:`fractions.Fraction` coordinates (plain
``int`` works too) and never rounds.  The ``*_xy`` helpers take bare
coordinates so hot loops elsewhere can call them on Python ints.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rat = Fraction
Number = Union[int, Fraction]

_RAT_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")


def parse_rat(text: str) -> Fraction:
    """Parse ``"7"``, ``"-3/4"`` or ``"6/2"``; no decimals, no exponents."""
    if not _RAT_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    if "/" in text and int(text.split("/")[1]) == 0:
        raise ZeroDivisionError(f"zero denominator in {text!r}")
    return Fraction(text)


def format_rat(value: Number) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))

    def __add__(self, other: "Point") -> "Point":
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point") -> "Point":
        return Point(self.x - other.x, self.y - other.y)

    def scaled(self, k: Number) -> "Point":
        return Point(self.x * k, self.y * k)

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def __repr__(self):
        return f"({format_rat(self.x)}, {format_rat(self.y)})"


@dataclass(frozen=True)
class Segment:
    """Closed segment between two distinct points.

    ``p`` and ``q`` are stored in the given order because linkings refer to
    segment ends by flag (0 for ``p``, 1 for ``q``); geometrically the pair is
    unordered, see :meth:`key`.
    """

    p: Point
    q: Point

    def __post_init__(self):
        if self.p == self.q:
            raise ValueError(f"zero-length segment at {self.p}")

    def end(self, flag: int) -> Point:
        return self.q if flag else self.p

    def key(self) -> frozenset:
        return frozenset((self.p, self.q))

    def is_horizontal(self) -> bool:
        return self.p.y == self.q.y

    def is_vertical(self) -> bool:
        return self.p.x == self.q.x

    def scaled(self, k: Number) -> "Segment":
        return Segment(self.p.scaled(k), self.q.scaled(k))

    def __repr__(self):
        return f"Segment({self.p!r}-{self.q!r})"


def sign(v: Number) -> int:
    return (v > 0) - (v < 0)


def cross_xy(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of (b - a) x (c - a): +1 counterclockwise, -1 clockwise, 0 collinear."""
    return sign(cross_xy(a.x, a.y, b.x, b.y, c.x, c.y))


def _between_closed(px, py, qx, qy, rx, ry) -> bool:
    # r is known to be collinear with p, q
    return min(px, qx) <= rx <= max(px, qx) and min(py, qy) <= ry <= max(py, qy)


def open_closed_hit_xy(px, py, qx, qy, ax, ay, bx, by) -> bool:
    """Does the open segment pq meet the closed segment ab?"""
    d1 = cross_xy(px, py, qx, qy, ax, ay)
    d2 = cross_xy(px, py, qx, qy, bx, by)
    dx, dy = qx - px, qy - py
    if d1 == 0 and d2 == 0:
        length2 = dx * dx + dy * dy
        ta = (ax - px) * dx + (ay - py) * dy
        tb = (bx - px) * dx + (by - py) * dy
        return max(ta, tb) > 0 and min(ta, tb) < length2
    if (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0):
        return False
    if d1 == 0:
        t = (ax - px) * dx + (ay - py) * dy
        return 0 < t < dx * dx + dy * dy
    if d2 == 0:
        t = (bx - px) * dx + (by - py) * dy
        return 0 < t < dx * dx + dy * dy
    # ab crosses line pq at an interior point of ab; it lies on open pq iff
    # p and q are strictly on opposite sides of line ab
    d3 = cross_xy(ax, ay, bx, by, px, py)
    d4 = cross_xy(ax, ay, bx, by, qx, qy)
    return (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)


def closed_closed_hit_xy(px, py, qx, qy, ax, ay, bx, by) -> bool:
    d1 = cross_xy(px, py, qx, qy, ax, ay)
    d2 = cross_xy(px, py, qx, qy, bx, by)
    d3 = cross_xy(ax, ay, bx, by, px, py)
    d4 = cross_xy(ax, ay, bx, by, qx, qy)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if d1 == 0 and _between_closed(px, py, qx, qy, ax, ay):
        return True
    if d2 == 0 and _between_closed(px, py, qx, qy, bx, by):
        return True
    if d3 == 0 and _between_closed(ax, ay, bx, by, px, py):
        return True
    if d4 == 0 and _between_closed(ax, ay, bx, by, qx, qy):
        return True
    return False


CLOSED = "closed-closed"
OPEN = "open-closed"


def segments_intersect(s1: Segment, s2: Segment, mode: str = CLOSED) -> bool:
    """Exact intersection test.

    In ``OPEN`` mode ``s1`` is treated as an open segment (its endpoints do
    not count) while ``s2`` stays closed.
    """
    args = (s1.p.x, s1.p.y, s1.q.x, s1.q.y, s2.p.x, s2.p.y, s2.q.x, s2.q.y)
    if mode == CLOSED:
        return closed_closed_hit_xy(*args)
    if mode == OPEN:
        return open_closed_hit_xy(*args)
    raise ValueError(f"unknown intersection mode {mode!r}")


def on_segment(r: Point, s: Segment) -> bool:
    return orientation(s.p, s.q, r) == 0 and _between_closed(
        s.p.x, s.p.y, s.q.x, s.q.y, r.x, r.y
    )


def intersection_witness(s1: Segment, s2: Segment) -> Point | None:
    """Some common point of two closed segments, or None when disjoint."""
    if not segments_intersect(s1, s2):
        return None
    for r, s in ((s2.p, s1), (s2.q, s1), (s1.p, s2), (s1.q, s2)):
        if on_segment(r, s):
            return r
    # proper crossing: solve p + t (q - p) on line s2
    d = s1.q - s1.p
    e = s2.q - s2.p
    denom = d.x * e.y - d.y * e.x
    w = s2.p - s1.p
    t = (w.x * e.y - w.y * e.x) / denom
    return Point(s1.p.x + t * d.x, s1.p.y + t * d.y)


def _angle_key(u: Point, a: Point, b: Point):
    x, y = a - u, b - u
    if (x.x == 0 and x.y == 0) or (y.x == 0 and y.y == 0):
        raise ValueError("degenerate ray: angle arm has zero length")
    dot = x.x * y.x + x.y * y.y
    norms = (x.x * x.x + x.y * x.y) * (y.x * y.x + y.y * y.y)
    return dot, norms


def angle_less(u: Point, a: Point, b: Point, v: Point, c: Point, d: Point) -> bool:
    """Exactly decide whether the angle aub is smaller than the angle cvd.

    Both angles are unsigned, in [0, pi].  The comparison is done on the
    cosines: cos = dot / sqrt(norms), so signs are compared first and the
    magnitudes are compared squared and cross-multiplied.
    """
    dot1, n1 = _angle_key(u, a, b)
    dot2, n2 = _angle_key(v, c, d)
    s1, s2 = sign(dot1), sign(dot2)
    if s1 != s2:
        # larger cosine means smaller angle
        return s1 > s2
    if s1 == 0:
        return False
    lhs = dot1 * dot1 * n2
    rhs = dot2 * dot2 * n1
    if s1 > 0:
        return lhs > rhs
    return lhs < rhs


def bounding_box(points: Iterable[Point]) -> tuple[Point, Point]:
    pts = list(points)
    if not pts:
        raise ValueError("bounding box of an empty point list")
    xs = [p.x for p in pts]
    ys = [p.y for p in pts]
    return Point(min(xs), min(ys)), Point(max(xs), max(ys))


def slope(p: Point, q: Point) -> Fraction | None:
    """Slope of line pq, None for vertical."""
    if p.x == q.x:
        return None
    return (q.y - p.y) / (q.x - p.x)
