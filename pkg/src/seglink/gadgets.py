"""Compile interior-disjoint axis-parallel families into disjoint gadget instances.

Every horizontal/vertical incidence ``o`` is replaced by a gadget built from
a fixed template in the right-up frame (``o`` at the origin, the ``o'`` side
along +x, the ``o''`` side along +y).  The other three quadrants use a frame
map chosen so that the narrow sightline through each gadget's gap has a
different slope band per quadrant: roughly 1/4, -1/4, -4 and 4.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .geom import Point, Segment, bounding_box, format_rat, parse_rat
from .instance import (
    FamilyClass,
    Incidence,
    SegmentFamily,
    Variant,
    find_incidences,
    validate,
)

CIRCUIT_SCALE = 40
PATH_SCALE = 80

# right-up template, units relative to o
O1 = (-4, 0)
O2 = (0, 1)
A1_LOW = (8, 3)

BASIC = {
    "A'1": ((8, 3), (8, 7)),
    "B1": ((9, 4), (9, 5)),
    "a'b'": ((16, 1), (1, 16)),
    "B2": ((4, 9), (5, 9)),
    "A2": ((3, 8), (7, 8)),
}
EXTENDED = {
    "A3": ((10, 9), (15, 9)),
    "B3": ((12, 8), (13, 8)),
    "A4": ((9, 10), (9, 15)),
    "B4": ((8, 12), (8, 13)),
    "A5": ((16, 10), (16, 15)),
    "B5": ((17, 12), (17, 13)),
    "A6": ((10, 16), (15, 16)),
    "B6": ((12, 17), (13, 17)),
    "a''b''": ((32, 1), (1, 32)),
}
INNER_BASIC = ("A'1", "B1", "A2", "B2")
INNER_EXTENDED = ("A3", "B3", "A4", "B4", "A5", "B5", "A6", "B6")
FORCED_SEQUENCE = ("o'a", "A'1", "B1", "a'b'", "B2", "A2", "o''b")

# (x, y) -> (a x + b y, c x + d y)
FRAMES = {
    Variant.RIGHT_UP: (1, 0, 0, 1),
    Variant.LEFT_UP: (-1, 0, 0, 1),
    Variant.RIGHT_DOWN: (0, 1, -1, 0),
    Variant.LEFT_DOWN: (0, -1, -1, 0),
}


class TransformError(ValueError):
    pass


def frame_map(variant: Variant, x, y) -> Point:
    a, b, c, d = FRAMES[Variant(variant)]
    return Point(a * x + b * y, c * x + d * y)


def o1_side_is_horizontal(variant: Variant) -> bool:
    """Whether the segment displaced to o' is the horizontal one."""
    a, _, c, _ = FRAMES[Variant(variant)]
    return c == 0


@dataclass
class BuiltGadget:
    variant: Variant
    anchor: Point
    delta: Fraction
    extended: bool
    segments: dict[str, Segment]
    o1: Point
    o2: Point
    a1: Point
    a1_prime: Point


def _build(variant, anchor: Point, delta, extended: bool) -> BuiltGadget:
    delta = Fraction(delta)

    def put(x, y):
        return anchor + frame_map(variant, x, y)

    roles = dict(BASIC)
    if extended:
        roles.update(EXTENDED)
    segs = {}
    for name, ((x0, y0), (x1, y1)) in roles.items():
        if name == "A'1":
            y0 = y0 - delta
        segs[name] = Segment(put(x0, y0), put(x1, y1))
    return BuiltGadget(
        Variant(variant),
        anchor,
        delta,
        extended,
        segs,
        put(*O1),
        put(*O2),
        put(*A1_LOW),
        put(A1_LOW[0], A1_LOW[1] - delta),
    )


def build_gadget(variant, anchor: Point, delta, extended: bool = False) -> BuiltGadget:
    """Instantiate the gadget template at ``anchor`` in the frame of ``variant``.

    ``A'1`` is ``A1`` with its low end pushed ``delta`` further along the
    segment.  The extended template adds A3..A6, B3..B6 and a''b''.
    """
    if Fraction(delta) <= 0:
        raise ValueError("delta must be positive")
    return _build(variant, anchor, delta, extended)


def delta_bound(extent) -> Fraction:
    """Largest admissible delta for a box with width + height = ``extent``.

    The gap o'o'' is shorter than 5 and every lattice point p sits within
    ``extent`` of o'', so sin(angle o'o''p) > 1 / (5 extent); a delta with
    delta / 8 at most that keeps the sightline from a'1 clear of p.
    """
    return Fraction(8, 5 * extent)


def delta_for_extent(extent) -> Fraction:
    bound = delta_bound(extent)
    return Fraction(1, math.ceil(1 / bound))


def choose_delta(family: SegmentFamily) -> Fraction:
    """delta = 1/K with K the least positive integer such that 1/K <= 8/(5 (W + H))."""
    if len(family) == 0:
        raise ValueError("cannot choose delta for an empty family")
    lo, hi = bounding_box(family.points())
    extent = (hi.x - lo.x) + (hi.y - lo.y)
    if extent.denominator != 1:
        raise ValueError("choose_delta expects integer coordinates")
    return delta_for_extent(int(extent))


@dataclass
class TransformParams:
    mode: str
    initial_scale: int
    delta: Fraction
    final_scale: int
    bound: tuple[Point, Point]


@dataclass
class GadgetInstance:
    index: int
    anchor: Point
    variant: Variant
    extended: bool
    delta: Fraction
    segments: dict[str, int]
    o1: Point
    o2: Point
    a1: Point
    a1_prime: Point

    def created(self) -> list[str]:
        return [k for k in self.segments if k not in ("o'a", "o''b")]

    def inner(self) -> tuple[str, ...]:
        return INNER_BASIC + (INNER_EXTENDED if self.extended else ())


@dataclass
class TransformReport:
    params: TransformParams
    gadgets: list[GadgetInstance] = field(default_factory=list)
    carry_map: list[int] = field(default_factory=list)


def _require_integral(family: SegmentFamily):
    for i, s in enumerate(family.segments):
        if not (s.p.is_integral() and s.q.is_integral()):
            raise TransformError(f"segment {i} has non-integer coordinates")


def _transform(family: SegmentFamily, mode: str, delta=None, check=True):
    if family.declared_class is not FamilyClass.INTERIOR_DISJOINT:
        family = SegmentFamily(family.segments, FamilyClass.INTERIOR_DISJOINT)
    v = validate(family)
    if v is not None:
        raise TransformError(f"input is not interior-disjoint: {v}")
    _require_integral(family)
    try:
        incidences = find_incidences(family)
    except ValueError as exc:
        raise TransformError(str(exc)) from None
    if mode == "path" and not incidences:
        raise TransformError("path transform needs at least one incidence")
    scale = PATH_SCALE if mode == "path" else CIRCUIT_SCALE

    ends = [[s.p.scaled(scale), s.q.scaled(scale)] for s in family.segments]
    incidences = sorted(incidences, key=lambda inc: (inc.o.x, inc.o.y))
    hosts = []
    for inc in incidences:
        o = inc.o.scaled(scale)
        if o1_side_is_horizontal(inc.variant):
            first, second = inc.h_index, inc.v_index
        else:
            first, second = inc.v_index, inc.h_index
        for seg, offset in ((first, O1), (second, O2)):
            k = 0 if ends[seg][0] == o else 1
            ends[seg][k] = o + frame_map(inc.variant, *offset)
        hosts.append((o, first, second))

    carried = []
    for i, s in enumerate(family.segments):
        new = ends[i]
        d_old = s.q - s.p
        d_new = new[1] - new[0]
        # same direction and positive length, i.e. the host did not collapse
        if d_old.x * d_new.y != d_old.y * d_new.x or d_old.x * d_new.x + d_old.y * d_new.y <= 0:
            raise TransformError(f"segment {i} is too short to host its gadgets")
        carried.append(Segment(new[0], new[1]))

    extended_at = 0 if mode == "path" else None
    drafts = [
        _build(inc.variant, o, 0, idx == extended_at)
        for idx, (inc, (o, _, _)) in enumerate(zip(incidences, hosts))
    ]
    # a1 is still in place here, so every coordinate is an integer
    pre = SegmentFamily(carried + [s for g in drafts for s in g.segments.values()])
    bound = bounding_box(pre.points())
    if delta is None:
        chosen = choose_delta(pre)
    else:
        chosen = Fraction(delta)
        if chosen <= 0:
            raise TransformError("delta must be positive")
    final = chosen.denominator

    out = [s.scaled(final) for s in carried]
    gadgets = []
    for idx, (inc, (o, first, second)) in enumerate(zip(incidences, hosts)):
        g = _build(inc.variant, o, chosen, idx == extended_at)
        roles = {"o'a": first, "o''b": second}
        for name, seg in g.segments.items():
            roles[name] = len(out)
            out.append(seg.scaled(final))
        gadgets.append(
            GadgetInstance(
                idx,
                o.scaled(final),
                inc.variant,
                g.extended,
                chosen,
                roles,
                g.o1.scaled(final),
                g.o2.scaled(final),
                g.a1.scaled(final),
                g.a1_prime.scaled(final),
            )
        )
    result = SegmentFamily(out, FamilyClass.DISJOINT)
    params = TransformParams(mode, scale, chosen, final, bound)
    report = TransformReport(params, gadgets, list(range(len(family))))
    if check and delta is None:
        v = validate(result)
        if v is not None:
            raise TransformError(f"transform output is not disjoint: {v}")
    return result, report


def transform_circuit(family: SegmentFamily, delta=None, check=True):
    """Scale by 40 and replace every incidence by a basic gadget.

    ``delta`` overrides the automatic choice (negative controls use this);
    the disjointness self-check only runs for the automatic choice.
    """
    return _transform(family, "circuit", delta, check)


def transform_path(family: SegmentFamily, delta=None, check=True):
    """As :func:`transform_circuit` with scale 80 and the least anchor extended."""
    return _transform(family, "path", delta, check)


# -- report sidecar ----------------------------------------------------------

REPORT_FORMAT = "seglink-report v1"


def _pt(p: Point):
    return [format_rat(p.x), format_rat(p.y)]


def _unpt(v) -> Point:
    return Point(parse_rat(v[0]), parse_rat(v[1]))


def report_to_json(report: TransformReport) -> str:
    p = report.params
    doc = {
        "format": REPORT_FORMAT,
        "mode": p.mode,
        "initial_scale": p.initial_scale,
        "delta": format_rat(p.delta),
        "final_scale": p.final_scale,
        "bound": [_pt(p.bound[0]), _pt(p.bound[1])],
        "carry_map": report.carry_map,
        "gadgets": [
            {
                "index": g.index,
                "anchor": _pt(g.anchor),
                "variant": g.variant.value,
                "extended": g.extended,
                "delta": format_rat(g.delta),
                "segments": g.segments,
                "o1": _pt(g.o1),
                "o2": _pt(g.o2),
                "a1": _pt(g.a1),
                "a1_prime": _pt(g.a1_prime),
            }
            for g in report.gadgets
        ],
    }
    return json.dumps(doc, indent=1) + "\n"


def report_from_json(text: str) -> TransformReport:
    doc = json.loads(text)
    if doc.get("format") != REPORT_FORMAT:
        raise ValueError(f"not a {REPORT_FORMAT} document")
    params = TransformParams(
        doc["mode"],
        int(doc["initial_scale"]),
        parse_rat(doc["delta"]),
        int(doc["final_scale"]),
        (_unpt(doc["bound"][0]), _unpt(doc["bound"][1])),
    )
    gadgets = [
        GadgetInstance(
            int(g["index"]),
            _unpt(g["anchor"]),
            Variant(g["variant"]),
            bool(g["extended"]),
            parse_rat(g["delta"]),
            {k: int(v) for k, v in g["segments"].items()},
            _unpt(g["o1"]),
            _unpt(g["o2"]),
            _unpt(g["a1"]),
            _unpt(g["a1_prime"]),
        )
        for g in doc["gadgets"]
    ]
    return TransformReport(params, gadgets, [int(i) for i in doc["carry_map"]])
