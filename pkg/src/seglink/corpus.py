"""Small instance generators used by the tests, scripts and ``seglink gen``."""
from __future__ import annotations

import random

from .geom import Point, Segment, segments_intersect
from .instance import FamilyClass, SegmentFamily


def _family(coords, cls=FamilyClass.INTERIOR_DISJOINT) -> SegmentFamily:
    return SegmentFamily([Segment(Point(a, b), Point(c, d)) for a, b, c, d in coords], cls)


def l_instance() -> SegmentFamily:
    """Two unit segments meeting at the origin: a single incidence."""
    return _family([(0, 0, 2, 0), (0, 0, 0, 2)])


def rectangle() -> SegmentFamily:
    """The boundary of a 4 x 3 rectangle, one incidence per corner."""
    return _family([(0, 0, 4, 0), (4, 0, 4, 3), (4, 3, 0, 3), (0, 3, 0, 0)])


def nested_loops() -> SegmentFamily:
    """Two rectilinear loops, one inside the other (no simple circuit)."""
    return _family(
        [
            (0, 0, 10, 0), (10, 0, 10, 6), (10, 6, 0, 6), (0, 6, 0, 0),
            (4, 1, 6, 1), (6, 1, 6, 3), (6, 3, 4, 3), (4, 3, 4, 1),
        ]
    )


def staircase(incidences: int, step: int = 2) -> SegmentFamily:
    """Open staircase alternating right and up; ``incidences + 1`` segments."""
    x = y = 0
    coords = []
    for k in range(incidences + 1):
        if k % 2 == 0:
            coords.append((x, y, x + step, y))
            x += step
        else:
            coords.append((x, y, x, y + step))
            y += step
    return _family(coords)


def random_disjoint(n: int, seed: int, box: int = 6, max_tries: int = 100_000) -> SegmentFamily:
    """``n`` pairwise disjoint segments with integer endpoints in [0, box]^2.

    Rejection sampling with :class:`random.Random` seeded by ``seed``, so the
    output depends only on the arguments.
    """
    rng = random.Random(seed)
    segs: list[Segment] = []
    tries = 0
    while len(segs) < n:
        tries += 1
        if tries > max_tries:
            raise RuntimeError(f"could not place {n} disjoint segments in a box of {box}")
        p = Point(rng.randint(0, box), rng.randint(0, box))
        q = Point(rng.randint(0, box), rng.randint(0, box))
        if p == q:
            continue
        s = Segment(p, q)
        if any(segments_intersect(s, t) for t in segs):
            continue
        segs.append(s)
    return SegmentFamily(segs, FamilyClass.DISJOINT)


CORPUS = {
    "l": l_instance,
    "rect": rectangle,
    "nested": nested_loops,
}
