from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import disjoint_families
from seglink.corpus import rectangle
from seglink.gadgets import build_gadget, transform_circuit
from seglink.geom import Point, Segment
from seglink.instance import SegmentFamily, Variant, endpoints
from seglink.visibility import points_see, segments_see, visibility_graph

P = Point


def fam(*coords):
    return SegmentFamily([Segment(P(a, b), P(c, d)) for a, b, c, d in coords])


def _blocked(p, q, s):
    """Independent check: sample-free exact test via parametric coordinates.

    The open segment pq meets closed s iff some point p + t(q - p),
    0 < t < 1, equals s.p + u(s.q - s.p), 0 <= u <= 1.
    """
    d, e, w = q - p, s.q - s.p, s.p - p
    den = d.x * e.y - d.y * e.x
    if den != 0:
        t = Fraction(w.x * e.y - w.y * e.x) / den
        u = Fraction(w.x * d.y - w.y * d.x) / den
        return 0 < t < 1 and 0 <= u <= 1
    if w.x * d.y - w.y * d.x != 0:
        return False
    dd = d.x * d.x + d.y * d.y
    ts = [Fraction((r.x - p.x) * d.x + (r.y - p.y) * d.y) / dd for r in (s.p, s.q)]
    return max(ts) > 0 and min(ts) < 1


def _reference_edges(family):
    verts = [p for p, _ in endpoints(family)]
    out = set()
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            if not any(_blocked(verts[i], verts[j], s) for s in family):
                out.add((i, j))
    return out


def test_single_segment_has_no_edges():
    g = visibility_graph(fam((0, 0, 1, 0)))
    assert len(g.vertices) == 2 and not g.edges


def test_blocked_by_middle_segment():
    f = fam((0, 0, 0, 4), (2, 1, 2, 3), (4, 0, 4, 4))
    assert points_see(P(0, 0), P(4, 0), f)
    assert not points_see(P(0, 4), P(4, 0), f)
    assert points_see(P(0, 4), P(4, 4), f)


def test_grazing_an_endpoint_blocks():
    # the sightline passes exactly through (1, 1), an endpoint of the middle segment
    f = fam((0, 0, -1, 0), (1, 1, 1, 5), (2, 2, 3, 2))
    assert not points_see(P(0, 0), P(2, 2), f)


def test_self_and_errors():
    f = fam((0, 0, 1, 0), (0, 1, 1, 1))
    with pytest.raises(ValueError):
        points_see(P(0, 0), P(0, 0), f)
    with pytest.raises(IndexError):
        segments_see(0, 5, f)
    with pytest.raises(ValueError):
        segments_see(1, 1, f)
    assert segments_see(0, 1, f)


def test_gadget_sliver_is_visible():
    g = build_gadget(Variant.RIGHT_UP, P(0, 0), Fraction(1, 800))
    segs = list(g.segments.values()) + [Segment(g.o1, P(40, 0)), Segment(g.o2, P(0, 40))]
    assert points_see(g.a1_prime, g.o1, SegmentFamily(segs))


def test_transformed_rectangle_matches_reference():
    out, _ = transform_circuit(rectangle())
    g = visibility_graph(out)
    assert set(g.edges) == _reference_edges(out)


@given(disjoint_families(max_size=5))
def test_graph_matches_reference(f):
    assert set(visibility_graph(f).edges) == _reference_edges(f)


@given(disjoint_families(max_size=5))
def test_kernel_equals_exact(f):
    assert visibility_graph(f, "kernel") == visibility_graph(f, "exact")


@given(disjoint_families(max_size=5))
def test_segment_never_sees_own_other_end(f):
    g = visibility_graph(f)
    index = {p: i for i, p in enumerate(g.vertices)}
    for s in f:
        assert (min(index[s.p], index[s.q]), max(index[s.p], index[s.q])) not in g.edges


@given(disjoint_families(min_size=2, max_size=5), st.data())
def test_removing_a_segment_only_adds_sightlines(f, data):
    k = data.draw(st.integers(0, len(f) - 1))
    smaller = SegmentFamily([s for i, s in enumerate(f) if i != k])
    for p, q in [(a, b) for s in smaller for t in smaller for a in (s.p, s.q) for b in (t.p, t.q)]:
        if p != q and points_see(p, q, f):
            assert points_see(p, q, smaller)


def test_large_coordinates_fall_back_to_exact():
    big = 2**40
    f = fam((0, 0, big, 0), (0, 1, big, 1))
    g = visibility_graph(f)
    with pytest.raises(ValueError):
        visibility_graph(f, "kernel")
    assert g == visibility_graph(f, "exact")
    with pytest.raises(ValueError):
        visibility_graph(f, "magic")
