"""Segment families, their disjointness classes, incidences and the .segs format."""
from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .geom import (
    Point,
    Segment,
    format_rat,
    intersection_witness,
    orientation,
    parse_rat,
)


class FamilyClass(enum.Enum):
    DISJOINT = "disjoint"
    INTERIOR_DISJOINT = "interior-disjoint"


class Variant(enum.Enum):
    """Quadrant occupied by the two segments meeting at a shared endpoint."""

    RIGHT_UP = "right-up"
    LEFT_UP = "left-up"
    RIGHT_DOWN = "right-down"
    LEFT_DOWN = "left-down"


class FamilyError(ValueError):
    """Structurally broken family (zero-length or duplicate segment, bad incidence)."""


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class SegmentFamily:
    segments: tuple[Segment, ...]
    declared_class: FamilyClass = FamilyClass.DISJOINT

    def __init__(self, segments: Iterable[Segment], declared_class=FamilyClass.DISJOINT):
        object.__setattr__(self, "segments", tuple(segments))
        object.__setattr__(self, "declared_class", FamilyClass(declared_class))

    def __len__(self):
        return len(self.segments)

    def __getitem__(self, i):
        return self.segments[i]

    def __iter__(self):
        return iter(self.segments)

    def points(self) -> list[Point]:
        return [pt for s in self.segments for pt in (s.p, s.q)]

    def scaled(self, k) -> "SegmentFamily":
        return SegmentFamily([s.scaled(k) for s in self.segments], self.declared_class)


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    point: Point
    reason: str

    def __str__(self):
        return f"segments {self.i} and {self.j} {self.reason} at {self.point!r}"


@dataclass(frozen=True)
class Incidence:
    o: Point
    h_index: int
    v_index: int
    variant: Variant


def _bbox(s: Segment):
    return (
        min(s.p.x, s.q.x),
        max(s.p.x, s.q.x),
        min(s.p.y, s.q.y),
        max(s.p.y, s.q.y),
    )


def _candidate_pairs(segments: Sequence[Segment]):
    """Pairs (i, j), i < j, whose bounding boxes overlap; sweep over x."""
    boxes = [_bbox(s) for s in segments]
    order = sorted(range(len(segments)), key=lambda k: boxes[k][0])
    active: list[int] = []
    for k in order:
        x0, _, y0, y1 = boxes[k]
        active = [a for a in active if boxes[a][1] >= x0]
        for a in active:
            if boxes[a][2] <= y1 and y0 <= boxes[a][3]:
                yield (a, k) if a < k else (k, a)
        active.append(k)


def _check_structure(family: SegmentFamily):
    seen = {}
    for i, s in enumerate(family.segments):
        if s.p == s.q:
            raise FamilyError(f"segment {i} has zero length")
        key = s.key()
        if key in seen:
            raise FamilyError(f"segment {i} duplicates segment {seen[key]}")
        seen[key] = i


def _shared_endpoint_ok(s1: Segment, s2: Segment) -> Point | None:
    """The single shared endpoint if s1 and s2 meet only there, else None."""
    shared = s1.key() & s2.key()
    if len(shared) != 1:
        return None
    (o,) = shared
    u = s1.q if s1.p == o else s1.p
    w = s2.q if s2.p == o else s2.p
    if orientation(o, u, w) == 0 and (u - o).x * (w - o).x + (u - o).y * (w - o).y > 0:
        return None  # collinear overlap beyond o
    return o


def validate(family: SegmentFamily) -> Violation | None:
    """Check the declared class; return the first violation or None.

    Raises FamilyError for zero-length or duplicate segments.
    """
    _check_structure(family)
    segs = family.segments
    interior = family.declared_class is FamilyClass.INTERIOR_DISJOINT
    bad = []
    for i, j in _candidate_pairs(segs):
        w = intersection_witness(segs[i], segs[j])
        if w is None:
            continue
        if interior and _shared_endpoint_ok(segs[i], segs[j]) is not None:
            continue
        bad.append(Violation(i, j, w, "intersect"))
    if bad:
        return min(bad, key=lambda v: (v.i, v.j))
    if interior:
        at = defaultdict(list)
        for i, s in enumerate(segs):
            at[s.p].append(i)
            at[s.q].append(i)
        for pt, idx in sorted(at.items(), key=lambda kv: kv[1]):
            if len(idx) > 2:
                return Violation(idx[0], idx[1], pt, "share an endpoint with a third segment")
            if len(idx) == 2:
                a, b = segs[idx[0]], segs[idx[1]]
                if (a.is_horizontal() and b.is_horizontal()) or (
                    a.is_vertical() and b.is_vertical()
                ):
                    return Violation(idx[0], idx[1], pt, "are parallel and share an endpoint")
    return None


def endpoints(family: SegmentFamily) -> list[tuple[Point, tuple[int, ...]]]:
    """Distinct endpoints in first-appearance order with their incident segments."""
    index: dict[Point, list[int]] = {}
    for i, s in enumerate(family.segments):
        for pt in (s.p, s.q):
            index.setdefault(pt, []).append(i)
    return [(pt, tuple(idx)) for pt, idx in index.items()]


def find_incidences(family: SegmentFamily) -> list[Incidence]:
    segs = family.segments
    for i, s in enumerate(segs):
        if not (s.is_horizontal() or s.is_vertical()):
            raise FamilyError(f"segment {i} is not axis-parallel")
    out = []
    for o, idx in endpoints(family):
        if len(idx) < 2:
            continue
        if len(idx) > 2:
            raise FamilyError(f"more than two segments meet at {o!r}")
        a, b = (segs[k] for k in idx)
        if a.is_horizontal() == b.is_horizontal():
            raise FamilyError(f"parallel segments {idx[0]} and {idx[1]} share endpoint {o!r}")
        h, v = idx if a.is_horizontal() else idx[::-1]
        far_h = segs[h].q if segs[h].p == o else segs[h].p
        far_v = segs[v].q if segs[v].p == o else segs[v].p
        right = far_h.x > o.x
        up = far_v.y > o.y
        variant = {
            (True, True): Variant.RIGHT_UP,
            (False, True): Variant.LEFT_UP,
            (True, False): Variant.RIGHT_DOWN,
            (False, False): Variant.LEFT_DOWN,
        }[(right, up)]
        out.append(Incidence(o, h, v, variant))
    return out


# -- .segs text format -------------------------------------------------------

HEADER = "segs v1"


def parse(text: str) -> SegmentFamily:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if not lines or lines[0][1] != HEADER:
        raise ParseError(f"missing {HEADER!r} header")
    if len(lines) < 2 or not lines[1][1].startswith("class "):
        raise ParseError("missing class line")
    lineno, cls_line = lines[1]
    tag = cls_line[len("class "):].strip()
    try:
        cls = FamilyClass(tag)
    except ValueError:
        raise ParseError(f"line {lineno}: unknown class {tag!r}") from None
    segments = []
    for lineno, line in lines[2:]:
        fields = line.split()
        if len(fields) != 4:
            raise ParseError(f"line {lineno}: expected 4 coordinates, got {len(fields)}")
        try:
            x1, y1, x2, y2 = (parse_rat(f) for f in fields)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if (x1, y1) == (x2, y2):
            raise ParseError(f"line {lineno}: zero-length segment")
        segments.append(Segment(Point(x1, y1), Point(x2, y2)))
    return SegmentFamily(segments, cls)


def serialize(family: SegmentFamily) -> str:
    out = [HEADER, f"class {family.declared_class.value}"]
    for s in family.segments:
        out.append(" ".join(format_rat(c) for c in (s.p.x, s.p.y, s.q.x, s.q.y)))
    return "\n".join(out) + "\n"


def read_family(path) -> SegmentFamily:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def write_family(path, family: SegmentFamily) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(family))
