"""Instance-level checks of the structural claims behind the gadget transforms.

Each check recomputes visibility exactly on the transformed family and
returns one :class:`CheckResult` per (gadget, check).  A failure here means
the transform or a predicate is wrong for that instance.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .gadgets import FORCED_SEQUENCE, GadgetInstance, TransformReport
from .geom import Point, angle_less, orientation, slope
from .instance import SegmentFamily
from .linker import Linking, Mode
from .visibility import VisibilityGraph, visibility_graph


class ReportMismatch(ValueError):
    """The report does not describe this family."""


@dataclass
class CheckResult:
    gadget: int
    check: str
    ok: bool
    detail: str = ""
    points: list[Point] = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        pts = " ".join(repr(p) for p in self.points)
        text = f"gadget {self.gadget} {self.check} {status}"
        if self.detail:
            text += f" {self.detail}"
        if pts:
            text += f" at {pts}"
        return text


def format_results(results: list[CheckResult]) -> str:
    return "".join(r.line() + "\n" for r in results)


def _check_report(family: SegmentFamily, report: TransformReport):
    n = len(family)
    for g in report.gadgets:
        for role, idx in g.segments.items():
            if not 0 <= idx < n:
                raise ReportMismatch(f"gadget {g.index}: {role} index {idx} out of range")
        ends = lambda role: {family[g.segments[role]].p, family[g.segments[role]].q}
        if g.o1 not in ends("o'a") or g.o2 not in ends("o''b"):
            raise ReportMismatch(f"gadget {g.index}: o'/o'' are not endpoints of its hosts")
        if g.a1_prime not in ends("A'1"):
            raise ReportMismatch(f"gadget {g.index}: a'1 is not an endpoint of A'1")


class _Sight:
    """Segment-level view of a visibility graph."""

    def __init__(self, family: SegmentFamily, graph: VisibilityGraph):
        self.family = family
        self.graph = graph
        self.index = {p: i for i, p in enumerate(graph.vertices)}
        self.adj = graph.adjacency()

    def seen_points(self, seg: int) -> set[Point]:
        s = self.family[seg]
        verts = self.graph.vertices
        return {verts[j] for p in (s.p, s.q) for j in self.adj[self.index[p]]}

    def seen_segments(self, seg: int) -> set[int]:
        s = self.family[seg]
        out = set()
        for p in (s.p, s.q):
            for j in self.adj[self.index[p]]:
                out.update(self.graph.incidence[j])
        out.discard(seg)
        return out

    def sees(self, p: Point, q: Point) -> bool:
        return self.index[q] in self.adj[self.index[p]]


def _sight(family, report, sight):
    _check_report(family, report)
    return sight if sight is not None else _Sight(family, visibility_graph(family))


def _own_points(family: SegmentFamily, g: GadgetInstance) -> set[Point]:
    pts = {g.o1, g.o2}
    for role in g.created():
        s = family[g.segments[role]]
        pts.update((s.p, s.q))
    return pts


def verify_invisibility(family: SegmentFamily, report: TransformReport, sight=None):
    """Inner gadget segments see nothing outside their own gadget, and the
    local visibility claims hold (B's see only their A and the connectors,
    A2 misses o'a and meets o''b only at o'', A'1 meets o'a only at o')."""
    sight = _sight(family, report, sight)
    results = []
    for g in report.gadgets:
        seg = g.segments
        own = _own_points(family, g)
        fails: list[tuple[str, list[Point]]] = []
        for role in g.inner():
            stray = sorted(sight.seen_points(seg[role]) - own)
            if stray:
                fails.append((f"{role} sees outside its gadget", stray[:1]))
        allowed = {"B1": ("A'1", "a'b'"), "B2": ("A2", "a'b'")}
        if g.extended:
            for i in (3, 4, 5, 6):
                allowed[f"B{i}"] = (f"A{i}", "a'b'", "a''b''")
        for role, ok_roles in allowed.items():
            extra = sight.seen_segments(seg[role]) - {seg[r] for r in ok_roles}
            if extra:
                fails.append((f"{role} sees segment {min(extra)}", []))
        a2_sees = sight.seen_points(seg["A2"])
        host1, host2 = family[seg["o'a"]], family[seg["o''b"]]
        hit = sorted(a2_sees & {host1.p, host1.q})
        if hit:
            fails.append(("A2 sees o'a", hit[:1]))
        hit = sorted(a2_sees & ({host2.p, host2.q} - {g.o2}))
        if hit:
            fails.append(("A2 sees o''b away from o''", hit[:1]))
        a1_sees = sight.seen_points(seg["A'1"])
        hit = sorted(a1_sees & ({host1.p, host1.q} - {g.o1}))
        if hit:
            fails.append(("A'1 sees o'a away from o'", hit[:1]))
        if not sight.sees(g.a1_prime, g.o1):
            fails.append(("a'1 does not see o'", [g.a1_prime, g.o1]))
        results.append(_result(g.index, "invisibility", fails))
    return results


def _result(index, check, fails):
    if not fails:
        return CheckResult(index, check, True)
    detail, pts = fails[0]
    more = f" (+{len(fails) - 1} more)" if len(fails) > 1 else ""
    return CheckResult(index, check, False, detail + more, pts)


def verify_angle_bound(family: SegmentFamily, report: TransformReport):
    """The sliver opened by delta is thinner than the angle to any endpoint.

    For every endpoint p on the far side of the gap (strictly on the other
    side of line o''o' from a'1) the angle a1 o'' a'1 must be smaller than
    o' o'' p; and no such p may lie inside the cone at a'1 spanned by o' and
    o''.
    """
    _check_report(family, report)
    skip = {g.a1_prime for g in report.gadgets}
    pts = sorted({p for p in family.points() if p not in skip})
    results = []
    for g in report.gadgets:
        o1, o2, a1, a1p = g.o1, g.o2, g.a1, g.a1_prime
        side = orientation(o2, o1, a1p)
        fails = []
        for p in pts:
            if p in (o1, o2) or orientation(o2, o1, p) != -side:
                continue
            if not angle_less(o2, a1, a1p, o2, o1, p):
                fails.append(("angle a1 o'' a'1 not below o' o'' p", [p]))
                break
            if orientation(a1p, o1, p) == orientation(a1p, o1, o2) and orientation(
                a1p, o2, p
            ) == orientation(a1p, o2, o1):
                fails.append(("endpoint inside the sightline cone of a'1", [p]))
                break
        results.append(_result(g.index, "angle-bound", fails))
    return results


def slope_interval(g: GadgetInstance):
    """Closed range of slopes of lines through a'1 and the gap between o' and o''."""
    s1, s2 = slope(g.a1_prime, g.o1), slope(g.a1_prime, g.o2)
    if s1 is None or s2 is None:
        raise ValueError(f"gadget {g.index}: vertical sightline")
    return min(s1, s2), max(s1, s2)


def verify_slope_ranges(family: SegmentFamily, report: TransformReport, sight=None):
    """Gadgets of different variants have disjoint sightline slope ranges,
    and no two a'1 endpoints see each other."""
    sight = _sight(family, report, sight)
    ranges = {g.index: slope_interval(g) for g in report.gadgets}
    results = []
    for g in report.gadgets:
        lo, hi = ranges[g.index]
        fails = []
        for h in report.gadgets:
            if h.index == g.index:
                continue
            lo2, hi2 = ranges[h.index]
            if h.variant != g.variant and lo <= hi2 and lo2 <= hi:
                fails.append((f"slope range overlaps gadget {h.index}", []))
            if sight.sees(g.a1_prime, h.a1_prime):
                fails.append((f"a'1 sees a'1 of gadget {h.index}", [g.a1_prime, h.a1_prime]))
        results.append(_result(g.index, "slope-ranges", fails))
    return results


def verify_forced_sequence(family: SegmentFamily, report: TransformReport, witness: Linking):
    """Each basic gadget appears as o'a, A'1, B1, a'b', B2, A2, o''b (or its
    reversal) in the witness; a path's two ends lie in the extended gadget."""
    _check_report(family, report)
    seq = witness.segment_sequence()
    if sorted(seq) != list(range(len(family))):
        raise ReportMismatch("witness does not cover the family")
    pos = {s: k for k, s in enumerate(seq)}
    m = len(seq)
    cyclic = witness.mode is Mode.CIRCUIT
    results = []
    for g in report.gadgets:
        fails = []
        if not g.extended:
            want = [g.segments[r] for r in FORCED_SEQUENCE]
            start = pos[want[0]]
            ok = False
            for step in (1, -1):
                got = []
                for k in range(len(want)):
                    j = start + step * k
                    if cyclic:
                        j %= m
                    elif not 0 <= j < m:
                        break
                    got.append(seq[j])
                ok = ok or got == want
            if not ok:
                fails.append(("gadget segments are not consecutive in order", []))
        elif witness.mode is Mode.PATH:
            inside = {g.segments[r] for r in g.created()}
            for end in (seq[0], seq[-1]):
                if end not in inside:
                    fails.append((f"chain end segment {end} outside the extended gadget", []))
        results.append(_result(g.index, "forced-sequence", fails))
    return results


def verify_all(family: SegmentFamily, report: TransformReport, witness: Linking | None = None):
    """Every applicable check, ordered by gadget index then check."""
    sight = _sight(family, report, None)
    results = (
        verify_invisibility(family, report, sight)
        + verify_angle_bound(family, report)
        + verify_slope_ranges(family, report, sight)
    )
    if witness is not None:
        results += verify_forced_sequence(family, report, witness)
    order = ["invisibility", "angle-bound", "slope-ranges", "forced-sequence"]
    return sorted(results, key=lambda r: (r.gadget, order.index(r.check)))
