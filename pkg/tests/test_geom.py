from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import points, segments
from seglink.geom import (
    CLOSED,
    OPEN,
    Point,
    Segment,
    angle_less,
    bounding_box,
    format_rat,
    intersection_witness,
    on_segment,
    orientation,
    parse_rat,
    segments_intersect,
    slope,
)

P = Point


def _param_hits(s1, s2, open_first):
    """Reference intersection test by solving p + t d = a + u e directly."""
    p, d = s1.p, s1.q - s1.p
    a, e = s2.p, s2.q - s2.p
    den = d.x * e.y - d.y * e.x
    w = a - p
    lo_ok = (lambda t: 0 < t < 1) if open_first else (lambda t: 0 <= t <= 1)
    if den != 0:
        t = Fraction(w.x * e.y - w.y * e.x, 1) / den
        u = Fraction(w.x * d.y - w.y * d.x, 1) / den
        return lo_ok(t) and 0 <= u <= 1
    if w.x * d.y - w.y * d.x != 0:
        return False  # parallel, distinct lines
    dd = d.x * d.x + d.y * d.y
    ta = Fraction((a.x - p.x) * d.x + (a.y - p.y) * d.y) / dd
    tb = Fraction((s2.q.x - p.x) * d.x + (s2.q.y - p.y) * d.y) / dd
    lo, hi = min(ta, tb), max(ta, tb)
    if open_first:
        return hi > 0 and lo < 1
    return hi >= 0 and lo <= 1


def test_parse_and_format():
    assert parse_rat("7") == 7
    assert parse_rat("-3/4") == Fraction(-3, 4)
    assert parse_rat("6/2") == 3
    assert format_rat(Fraction(6, 2)) == "3"
    assert format_rat(Fraction(-3, 4)) == "-3/4"


@pytest.mark.parametrize("bad", ["1.5", "1e3", "", "a", "1/", "/2", "1/-2"])
def test_parse_rejects(bad):
    with pytest.raises(ValueError):
        parse_rat(bad)


def test_parse_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_rat("1/0")


@given(st.fractions())
def test_format_parse_roundtrip(x):
    assert parse_rat(format_rat(x)) == x


def test_orientation_gadget_collinearity():
    assert orientation(P(-4, 0), P(0, 1), P(8, 3)) == 0
    assert orientation(P(0, 0), P(1, 0), P(0, 1)) == 1
    assert orientation(P(0, 0), P(0, 1), P(1, 0)) == -1


@given(points, points, points)
def test_orientation_antisymmetric_and_cyclic(a, b, c):
    o = orientation(a, b, c)
    assert orientation(b, a, c) == -o
    assert orientation(b, c, a) == o


def test_segment_rejects_zero_length():
    with pytest.raises(ValueError):
        Segment(P(1, 1), P(1, 1))


def test_touching_and_crossing():
    h = Segment(P(0, 0), P(4, 0))
    assert segments_intersect(h, Segment(P(4, 0), P(4, 3)))
    assert segments_intersect(h, Segment(P(2, -1), P(2, 1)))
    assert not segments_intersect(h, Segment(P(5, 0), P(6, 0)))
    # open first segment: a shared endpoint alone is not a hit
    assert not segments_intersect(h, Segment(P(4, 0), P(4, 3)), OPEN)
    assert segments_intersect(Segment(P(0, 0), P(4, 0)), Segment(P(2, 0), P(2, 3)), OPEN)
    with pytest.raises(ValueError):
        segments_intersect(h, h, "half-open")


@given(segments(), segments())
def test_closed_intersection_matches_parametric(s1, s2):
    assert segments_intersect(s1, s2, CLOSED) == _param_hits(s1, s2, False)


@given(segments(), segments())
def test_open_closed_matches_parametric(s1, s2):
    assert segments_intersect(s1, s2, OPEN) == _param_hits(s1, s2, True)


@given(segments(), segments())
def test_closed_intersection_symmetric(s1, s2):
    assert segments_intersect(s1, s2) == segments_intersect(s2, s1)


@given(segments(), segments())
def test_witness_lies_on_both(s1, s2):
    w = intersection_witness(s1, s2)
    if w is None:
        assert not segments_intersect(s1, s2)
    else:
        assert on_segment(w, s1) and on_segment(w, s2)


def _mp(x):
    return mpmath.mpf(x.numerator) / x.denominator


def _angle(u, a, b):
    mpmath.mp.dps = 60
    x1, y1 = _mp(a.x - u.x), _mp(a.y - u.y)
    x2, y2 = _mp(b.x - u.x), _mp(b.y - u.y)
    return abs(mpmath.atan2(x1 * y2 - y1 * x2, x1 * x2 + y1 * y2))


@given(points, points, points, points, points, points)
def test_angle_less_matches_high_precision(u, a, b, v, c, d):
    assume(a != u and b != u and c != v and d != v)
    x, y = _angle(u, a, b), _angle(v, c, d)
    assume(abs(x - y) > mpmath.mpf(10) ** -40)
    assert angle_less(u, a, b, v, c, d) == (x < y)


@given(points, points, points)
def test_angle_less_irreflexive(u, a, b):
    assume(a != u and b != u)
    assert not angle_less(u, a, b, u, a, b)


@given(st.lists(st.tuples(points, points, points), min_size=3, max_size=3))
def test_angle_less_transitive(triples):
    for u, a, b in triples:
        assume(a != u and b != u)
    (u, a, b), (v, c, d), (w, e, f) = triples
    if angle_less(u, a, b, v, c, d) and angle_less(v, c, d, w, e, f):
        assert angle_less(u, a, b, w, e, f)


def test_angle_less_tiny_sliver():
    # the delta sliver: a1 o'' a'1 against a right angle
    o2, a1, a1p = P(0, 1), P(8, 3), P(8, Fraction(3) - Fraction(1, 800))
    assert angle_less(o2, a1, a1p, o2, P(1, 1), P(0, 2))
    assert not angle_less(o2, a1, a1p, o2, a1, a1p)


def test_angle_degenerate_arm():
    with pytest.raises(ValueError):
        angle_less(P(0, 0), P(0, 0), P(1, 0), P(0, 0), P(1, 0), P(0, 1))


def test_bounding_box_and_slope():
    lo, hi = bounding_box([P(3, -1), P(-2, 5), P(0, 0)])
    assert (lo, hi) == (P(-2, -1), P(3, 5))
    with pytest.raises(ValueError):
        bounding_box([])
    assert slope(P(0, 0), P(0, 3)) is None
    assert slope(P(0, 0), P(4, 1)) == Fraction(1, 4)
