"""Endpoint visibility: predicates and the bulk visibility graph.

Two points see each other when the open segment between them misses every
closed segment of the family.  The bulk graph is computed naively over all
(pair, segment) combinations.  When every coordinate, after clearing
denominators, fits comfortably in int64 a compiled kernel does the work;
otherwise an exact Python-int loop is used.  Both paths evaluate the same
exact predicate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit

from .geom import Point, open_closed_hit_xy
from .instance import SegmentFamily, endpoints

# int64 is exact for cross products when |coord| < 2**29: differences stay
# below 2**30, products below 2**60, sums of two products below 2**61.
INT64_SAFE = 2**29


@dataclass(frozen=True)
class VisibilityGraph:
    vertices: tuple[Point, ...]
    incidence: tuple[tuple[int, ...], ...]
    edges: frozenset[tuple[int, int]]

    def neighbors(self, i: int) -> list[int]:
        return sorted(j for e in self.edges if i in e for j in e if j != i)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in self.vertices]
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def edge_list(self) -> str:
        return "".join(f"{i} {j}\n" for i, j in sorted(self.edges))


def integer_coords(points) -> tuple[int, list[tuple[int, int]]]:
    """Scale by the lcm of all denominators; returns (scale, int points)."""
    scale = 1
    for p in points:
        scale = math.lcm(scale, Fraction(p.x).denominator, Fraction(p.y).denominator)
    return scale, [(int(p.x * scale), int(p.y * scale)) for p in points]


def points_see(p: Point, q: Point, family: SegmentFamily) -> bool:
    if p == q:
        raise ValueError("a point does not see itself")
    lo_x, hi_x = min(p.x, q.x), max(p.x, q.x)
    lo_y, hi_y = min(p.y, q.y), max(p.y, q.y)
    for s in family.segments:
        if max(s.p.x, s.q.x) < lo_x or min(s.p.x, s.q.x) > hi_x:
            continue
        if max(s.p.y, s.q.y) < lo_y or min(s.p.y, s.q.y) > hi_y:
            continue
        if open_closed_hit_xy(p.x, p.y, q.x, q.y, s.p.x, s.p.y, s.q.x, s.q.y):
            return False
    return True


def segments_see(a: int, b: int, family: SegmentFamily) -> bool:
    n = len(family)
    if not (0 <= a < n and 0 <= b < n):
        raise IndexError(f"segment index out of range: {a}, {b} (family has {n})")
    if a == b:
        raise ValueError("a segment is not compared with itself")
    sa, sb = family[a], family[b]
    return any(
        points_see(x, y, family) for x in (sa.p, sa.q) for y in (sb.p, sb.q) if x != y
    )


@njit(cache=True)
def _visible_matrix(px, py, sx0, sy0, sx1, sy1):  # pragma: no cover - compiled
    m = px.shape[0]
    n = sx0.shape[0]
    out = np.zeros((m, m), dtype=np.bool_)
    for i in range(m):
        for j in range(i + 1, m):
            x0, y0, x1, y1 = px[i], py[i], px[j], py[j]
            lox, hix = min(x0, x1), max(x0, x1)
            loy, hiy = min(y0, y1), max(y0, y1)
            dx, dy = x1 - x0, y1 - y0
            len2 = dx * dx + dy * dy
            ok = True
            for k in range(n):
                ax, ay, bx, by = sx0[k], sy0[k], sx1[k], sy1[k]
                if max(ax, bx) < lox or min(ax, bx) > hix:
                    continue
                if max(ay, by) < loy or min(ay, by) > hiy:
                    continue
                d1 = dx * (ay - y0) - dy * (ax - x0)
                d2 = dx * (by - y0) - dy * (bx - x0)
                hit = False
                if d1 == 0 and d2 == 0:
                    ta = (ax - x0) * dx + (ay - y0) * dy
                    tb = (bx - x0) * dx + (by - y0) * dy
                    hit = max(ta, tb) > 0 and min(ta, tb) < len2
                elif (d1 > 0 and d2 > 0) or (d1 < 0 and d2 < 0):
                    hit = False
                elif d1 == 0:
                    t = (ax - x0) * dx + (ay - y0) * dy
                    hit = 0 < t < len2
                elif d2 == 0:
                    t = (bx - x0) * dx + (by - y0) * dy
                    hit = 0 < t < len2
                else:
                    ex, ey = bx - ax, by - ay
                    d3 = ex * (y0 - ay) - ey * (x0 - ax)
                    d4 = ex * (y1 - ay) - ey * (x1 - ax)
                    hit = (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
                if hit:
                    ok = False
                    break
            out[i, j] = ok
            out[j, i] = ok
    return out


def _exact_edges(pts, segs) -> set[tuple[int, int]]:
    edges = set()
    for i in range(len(pts)):
        x0, y0 = pts[i]
        for j in range(i + 1, len(pts)):
            x1, y1 = pts[j]
            lox, hix = min(x0, x1), max(x0, x1)
            loy, hiy = min(y0, y1), max(y0, y1)
            for ax, ay, bx, by in segs:
                if max(ax, bx) < lox or min(ax, bx) > hix:
                    continue
                if max(ay, by) < loy or min(ay, by) > hiy:
                    continue
                if open_closed_hit_xy(x0, y0, x1, y1, ax, ay, bx, by):
                    break
            else:
                edges.add((i, j))
    return edges


def visibility_graph(family: SegmentFamily, method: str = "auto") -> VisibilityGraph:
    """All visibility edges among the distinct endpoints of ``family``.

    ``method`` is ``"auto"`` (compiled kernel when int64-safe), ``"exact"``
    (Python ints only) or ``"kernel"`` (force the compiled kernel).
    """
    ends = endpoints(family)
    vertices = tuple(p for p, _ in ends)
    incidence = tuple(idx for _, idx in ends)
    scale, pts = integer_coords(vertices)
    segs = [
        (int(s.p.x * scale), int(s.p.y * scale), int(s.q.x * scale), int(s.q.y * scale))
        for s in family.segments
    ]
    fits = all(abs(c) < INT64_SAFE for pt in pts for c in pt)
    if method == "kernel" and not fits:
        raise ValueError("coordinates too large for the int64 kernel")
    if method == "exact" or (method == "auto" and not fits):
        edges = _exact_edges(pts, segs)
    elif method in ("auto", "kernel"):
        arr = np.array(pts, dtype=np.int64).reshape(-1, 2)
        sarr = np.array(segs, dtype=np.int64).reshape(-1, 4)
        mat = _visible_matrix(arr[:, 0], arr[:, 1], sarr[:, 0], sarr[:, 1], sarr[:, 2], sarr[:, 3])
        ii, jj = np.nonzero(np.triu(mat, 1))
        edges = set(zip(ii.tolist(), jj.tolist()))
    else:
        raise ValueError(f"unknown method {method!r}")
    return VisibilityGraph(vertices, incidence, frozenset(edges))
