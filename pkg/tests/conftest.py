import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from seglink.geom import Point, Segment, segments_intersect
from seglink.instance import FamilyClass, SegmentFamily

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

coords = st.integers(min_value=-6, max_value=6)
points = st.builds(Point, coords, coords)


@st.composite
def segments(draw, c=coords):
    p = draw(st.builds(Point, c, c))
    q = draw(st.builds(Point, c, c).filter(lambda q: q != p))
    return Segment(p, q)


@st.composite
def disjoint_families(draw, min_size=1, max_size=4, box=5):
    """Pairwise disjoint integer segments, built greedily from random draws."""
    c = st.integers(min_value=0, max_value=box)
    want = draw(st.integers(min_value=min_size, max_value=max_size))
    segs = []
    for _ in range(want * 6):
        if len(segs) == want:
            break
        s = draw(segments(c))
        if not any(segments_intersect(s, t) for t in segs):
            segs.append(s)
    if len(segs) < min_size:
        from hypothesis import reject

        reject()
    return SegmentFamily(segs, FamilyClass.DISJOINT)


@pytest.fixture
def tmp_segs(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


# acceptance criteria report: tests/test_acceptance.py records one entry per criterion
CRITERIA: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
