from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from seglink.corpus import l_instance, nested_loops, rectangle, staircase
from seglink.gadgets import (
    TransformError,
    build_gadget,
    choose_delta,
    delta_bound,
    delta_for_extent,
    frame_map,
    report_from_json,
    report_to_json,
    transform_circuit,
    transform_path,
)
from seglink.geom import Point, Segment, orientation, slope
from seglink.instance import FamilyClass, SegmentFamily, Variant, validate

P = Point
D = Fraction(1, 800)


def test_right_up_template_at_origin():
    g = build_gadget(Variant.RIGHT_UP, P(0, 0), D)
    s = g.segments
    assert s["A'1"] == Segment(P(8, 3 - D), P(8, 7))
    assert s["B1"] == Segment(P(9, 4), P(9, 5))
    assert s["A2"] == Segment(P(3, 8), P(7, 8))
    assert s["B2"] == Segment(P(4, 9), P(5, 9))
    assert s["a'b'"] == Segment(P(16, 1), P(1, 16))
    assert (g.o1, g.o2, g.a1, g.a1_prime) == (P(-4, 0), P(0, 1), P(8, 3), P(8, 3 - D))


def test_extended_template():
    g = build_gadget(Variant.RIGHT_UP, P(0, 0), D, extended=True)
    assert len(g.segments) == 14
    assert g.segments["B6"] == Segment(P(12, 17), P(13, 17))
    assert g.segments["a''b''"] == Segment(P(32, 1), P(1, 32))


def test_delta_must_be_positive():
    with pytest.raises(ValueError):
        build_gadget(Variant.RIGHT_UP, P(0, 0), 0)


def test_left_down_frame():
    g = build_gadget(Variant.LEFT_DOWN, P(0, 0), D)
    assert (g.o1, g.o2) == (P(0, 4), P(-1, 0))


@pytest.mark.parametrize("variant", list(Variant))
@pytest.mark.parametrize("extended", [False, True])
def test_template_disjoint_and_collinear(variant, extended):
    g = build_gadget(variant, P(5, -3), D, extended)
    assert orientation(g.o1, g.o2, g.a1) == 0
    fam = SegmentFamily(list(g.segments.values()), FamilyClass.DISJOINT)
    assert validate(fam) is None


@pytest.mark.parametrize(
    "variant, target", [
        (Variant.RIGHT_UP, Fraction(1, 4)),
        (Variant.LEFT_UP, Fraction(-1, 4)),
        (Variant.RIGHT_DOWN, Fraction(-4)),
        (Variant.LEFT_DOWN, Fraction(4)),
    ],
)
def test_sightline_slopes_per_variant(variant, target):
    g = build_gadget(variant, P(0, 0), D)
    s1, s2 = slope(g.a1_prime, g.o1), slope(g.a1_prime, g.o2)
    assert abs(s1 - target) < Fraction(1, 10) and abs(s2 - target) < Fraction(1, 10)


@given(st.sampled_from(list(Variant)), st.integers(-50, 50), st.integers(-50, 50))
def test_frames_preserve_lengths(variant, x, y):
    p = frame_map(variant, x, y)
    assert p.x * p.x + p.y * p.y == x * x + y * y


def test_delta_formula():
    assert delta_bound(160) == Fraction(1, 100)
    assert delta_for_extent(160) == Fraction(1, 100)
    assert delta_for_extent(150) == Fraction(1, 94)
    # scaled box 100 x 60: K = ceil(5 * 160 / 8) = 100
    box = SegmentFamily([Segment(P(0, 0), P(100, 60))])
    assert choose_delta(box) == Fraction(1, 100)
    assert delta_for_extent(161) == Fraction(1, 101)
    with pytest.raises(ValueError):
        choose_delta(SegmentFamily([]))


@pytest.mark.parametrize(
    "make, n_circuit, n_path",
    [(l_instance, 7, 16), (rectangle, 24, 33), (nested_loops, 48, 57)],
)
def test_output_sizes(make, n_circuit, n_path):
    out, rep = transform_circuit(make())
    assert len(out) == n_circuit
    assert rep.carry_map == list(range(len(make())))
    out, rep = transform_path(make())
    assert len(out) == n_path
    assert sum(g.extended for g in rep.gadgets) == 1


def test_extended_gadget_at_least_anchor():
    _, rep = transform_path(rectangle())
    ext = [g for g in rep.gadgets if g.extended]
    assert ext[0].anchor == min(g.anchor for g in rep.gadgets)
    anchors = [(g.anchor.x, g.anchor.y) for g in rep.gadgets]
    assert anchors == sorted(anchors)


def test_carried_segments_first():
    f = rectangle()
    out, _ = transform_circuit(f)
    for i, s in enumerate(f):
        t = out[i]
        # same line, same direction, only the ends moved
        assert (s.q - s.p).x * (t.q - t.p).y == (s.q - s.p).y * (t.q - t.p).x


def test_path_needs_an_incidence():
    f = SegmentFamily([Segment(P(0, 0), P(1, 0))], FamilyClass.INTERIOR_DISJOINT)
    with pytest.raises(TransformError):
        transform_path(f)
    out, rep = transform_circuit(f)
    assert len(out) == 1 and not rep.gadgets


def test_rejects_non_axis_and_invalid():
    with pytest.raises(TransformError):
        transform_circuit(SegmentFamily([Segment(P(0, 0), P(1, 1))]))
    with pytest.raises(TransformError):
        transform_circuit(SegmentFamily([Segment(P(0, 0), P(2, 0)), Segment(P(1, -1), P(1, 1))]))
    with pytest.raises(TransformError):
        transform_circuit(SegmentFamily([Segment(P(0, 0), P(Fraction(1, 2), 0))]))


def test_report_json_roundtrip():
    _, rep = transform_path(rectangle())
    again = report_from_json(report_to_json(rep))
    assert again == rep
    with pytest.raises(ValueError):
        report_from_json('{"format": "other"}')


def _check_output(out):
    assert validate(out) is None
    for s in out:
        assert s.p.is_integral() and s.q.is_integral()
        assert slope(s.p, s.q) in (None, 0, 1, -1)


@st.composite
def rectilinear_loops(draw):
    """A random axis-parallel closed loop: a staircase polygon."""
    k = draw(st.integers(1, 4))
    xs = sorted(draw(st.sets(st.integers(0, 12), min_size=k + 1, max_size=k + 1)))
    ys = sorted(draw(st.sets(st.integers(0, 12), min_size=k + 1, max_size=k + 1)))
    top = max(ys) + draw(st.integers(1, 3))
    right = max(xs) + draw(st.integers(1, 3))
    # lower-right staircase from (xs[0], ys[0]) going right/up, closed via the top-left
    pts = [P(xs[0], ys[0])]
    for i in range(1, k + 1):
        pts.append(P(xs[i], ys[i - 1]))
        pts.append(P(xs[i], ys[i]))
    pts.append(P(right, ys[-1]))
    pts.append(P(right, top))
    pts.append(P(xs[0], top))
    segs = [Segment(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]
    return SegmentFamily(segs, FamilyClass.INTERIOR_DISJOINT)


@given(rectilinear_loops())
def test_random_loops_transform_cleanly(f):
    assert validate(f) is None
    for fn in (transform_circuit, transform_path):
        out, _ = fn(f)
        _check_output(out)


@given(st.integers(1, 30))
def test_staircases_transform_cleanly(k):
    out, rep = transform_circuit(staircase(k))
    assert len(out) == k + 1 + 5 * k
    _check_output(out)
