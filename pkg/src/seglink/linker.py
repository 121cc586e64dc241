"""Deciding Simple Circuit / Simple Path with verifiable witnesses.

Endpoints are referred to as ``(segment, end)`` with ``end`` 0 for
``segment.p`` and 1 for ``segment.q``; internally a reference is the flat
index ``2 * segment + end`` so that ``r ^ 1`` is the other end of the same
segment.

Two endpoints sharing a point (only possible in interior-disjoint families)
must be joined to each other by a zero-length "junction": any other choice
makes the polygon pass through that point twice.
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass, field
from typing import Optional

from .geom import closed_closed_hit_xy, cross_xy, orientation, segments_intersect, Segment
from .instance import SegmentFamily, validate
from .visibility import integer_coords, points_see, visibility_graph

Ref = tuple[int, int]


class Mode(enum.Enum):
    CIRCUIT = "circuit"
    PATH = "path"


@dataclass(frozen=True)
class Linking:
    mode: Mode
    order: tuple[Ref, ...]

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        object.__setattr__(self, "order", tuple(tuple(r) for r in self.order))

    @property
    def added_edges(self) -> list[tuple[Ref, Ref]]:
        o = self.order
        out = [(o[k], o[k + 1]) for k in range(1, len(o) - 1, 2)]
        if self.mode is Mode.CIRCUIT and o:
            out.append((o[-1], o[0]))
        return out

    def segment_sequence(self) -> list[int]:
        return [r[0] for r in self.order[::2]]


@dataclass
class LinkReport:
    ok: bool
    problems: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _fold_back(u, v, w) -> bool:
    """Do consecutive edges uv and vw overlap beyond v?"""
    d = (u.x - v.x) * (w.x - v.x) + (u.y - v.y) * (w.y - v.y)
    return orientation(u, v, w) == 0 and d > 0


def verify_linking(family: SegmentFamily, w: Linking) -> LinkReport:
    """Check a witness against the family using only the exact predicates."""
    problems: list[str] = []
    n = len(family)
    order = list(w.order)
    if len(order) != 2 * n:
        return LinkReport(False, [f"order has {len(order)} entries, expected {2 * n}"])
    for s, e in order:
        if not (0 <= s < n and e in (0, 1)):
            return LinkReport(False, [f"bad endpoint reference ({s},{e})"])
    if len(set(order)) != 2 * n:
        return LinkReport(False, ["an endpoint appears twice"])
    for k in range(n):
        a, b = order[2 * k], order[2 * k + 1]
        if a[0] != b[0]:
            problems.append(f"steps {2 * k},{2 * k + 1} are not the two ends of one segment")
    if problems:
        return LinkReport(False, problems)

    pts = [family[s].end(e) for s, e in order]
    for a, b in w.added_edges:
        pa, pb = family[a[0]].end(a[1]), family[b[0]].end(b[1])
        if pa == pb:
            continue
        if not points_see(pa, pb, family):
            problems.append(f"added edge {a}-{b} is not a visibility edge")

    verts = []
    for p in pts:
        if not verts or verts[-1] != p:
            verts.append(p)
    circuit = w.mode is Mode.CIRCUIT
    if circuit and len(verts) > 1 and verts[0] == verts[-1]:
        verts.pop()
    if len(set(verts)) != len(verts):
        problems.append("a vertex is visited twice")
        return LinkReport(False, problems)
    if circuit and len(verts) < 3:
        problems.append("a polygon needs at least three vertices")
        return LinkReport(False, problems)

    m = len(verts)
    edges = [(verts[i], verts[i + 1]) for i in range(m - 1)]
    if circuit:
        edges.append((verts[-1], verts[0]))
    ne = len(edges)
    for i in range(ne):
        for j in range(i + 1, ne):
            adjacent = j == i + 1 or (circuit and i == 0 and j == ne - 1)
            if adjacent:
                (u, v), (v2, x) = (edges[i], edges[j]) if j == i + 1 else (edges[j], edges[i])
                if _fold_back(u, v, x):
                    problems.append(f"edges {i} and {j} overlap at {v!r}")
            elif segments_intersect(Segment(*edges[i]), Segment(*edges[j])):
                problems.append(f"non-adjacent edges {i} and {j} intersect")
    return LinkReport(not problems, problems)


# -- exact search ------------------------------------------------------------


class _Search:
    """Backtracking over added edges.

    A virtual segment (refs ``2n`` and ``2n + 1``) that sees everything and
    crosses nothing turns the path problem into the circuit problem: its two
    added edges mark the chain ends.

    Every ref keeps a domain of still-admissible partners; placing an edge
    removes partners that are taken, crossing, or would close a cycle too
    early.  A ref with an empty domain kills the branch; a ref with a single
    partner is linked immediately.  Branching picks the ref with the fewest
    partners.  The reported witness is grown one chain step at a time in
    ascending partner order, so it is the lexicographically least order.
    """

    def __init__(self, pts, cand, n_segments, virtual):
        self.pts = pts
        self.n_real = 2 * (n_segments - (1 if virtual else 0))
        self.total = n_segments
        self.dom = [set(c) for c in cand]
        self.all_edges = sorted({(min(r, s), max(r, s)) for r, c in enumerate(cand) for s in c})
        self.mate = [-1] * (2 * n_segments)
        self.other = [r ^ 1 for r in range(2 * n_segments)]
        self.length = [1] * (2 * n_segments)
        self.trail: list[tuple] = []
        self._conflicts: dict[tuple[int, int], list[tuple[int, int]]] = {}
        self.nodes = 0
        self.solution: list[int] = []

    def _geometric(self, r, s):
        nr = self.n_real
        return r < nr and s < nr and self.pts[r] != self.pts[s]

    def conflicts(self, r, s):
        key = (min(r, s), max(r, s))
        hit = self._conflicts.get(key)
        if hit is None:
            hit = []
            if self._geometric(*key):
                (ax, ay), (bx, by) = self.pts[key[0]], self.pts[key[1]]
                lox, hix, loy, hiy = min(ax, bx), max(ax, bx), min(ay, by), max(ay, by)
                for e in self.all_edges:
                    if e == key or not self._geometric(*e):
                        continue
                    (cx, cy), (dx, dy) = self.pts[e[0]], self.pts[e[1]]
                    if max(cx, dx) < lox or min(cx, dx) > hix:
                        continue
                    if max(cy, dy) < loy or min(cy, dy) > hiy:
                        continue
                    if closed_closed_hit_xy(ax, ay, bx, by, cx, cy, dx, dy):
                        hit.append(e)
            self._conflicts[key] = hit
        return hit

    def _drop(self, r, s, queue):
        if s in self.dom[r]:
            self.dom[r].discard(s)
            self.dom[s].discard(r)
            self.trail.append(("d", r, s))
            queue.append(r)
            queue.append(s)

    def _place(self, r, s, queue):
        mate, other, length = self.mate, self.other, self.length
        a, b = other[r], other[s]
        self.trail.append(("m", r, s, a, b, other[a], other[b], length[a], length[b]))
        mate[r], mate[s] = s, r
        total_len = length[r] + length[s]
        other[a], other[b] = b, a
        length[a] = length[b] = total_len
        for x in list(self.dom[r]):
            self._drop(r, x, queue)
        for x in list(self.dom[s]):
            self._drop(s, x, queue)
        for x, y in self.conflicts(r, s):
            self._drop(x, y, queue)
        if a != s and total_len < self.total:
            self._drop(a, b, queue)

    def place(self, r, s) -> bool:
        queue: list[int] = []
        self._place(r, s, queue)
        return self._propagate(queue)

    def undo(self, mark):
        trail, dom = self.trail, self.dom
        while len(trail) > mark:
            op = trail.pop()
            if op[0] == "d":
                _, r, s = op
                dom[r].add(s)
                dom[s].add(r)
            else:
                _, r, s, a, b, oa, ob, la, lb = op
                self.mate[r] = self.mate[s] = -1
                self.other[a], self.other[b] = oa, ob
                self.length[a], self.length[b] = la, lb

    def initial(self) -> bool:
        return self._propagate(list(range(len(self.dom))))

    def frontier(self, start):
        x = start
        for _ in range(len(self.mate)):
            if self.mate[x] == -1:
                return x
            x = self.mate[x] ^ 1
        return None  # cycle closed

    def connected(self) -> bool:
        """Can the pieces still be joined into one cycle?

        Union of segment edges, placed edges and live candidate edges must
        span every ref.
        """
        parent = list(range(len(self.mate)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        comps = len(parent)
        for r in range(len(parent)):
            for s in (r ^ 1, self.mate[r], *self.dom[r]):
                if s < 0:
                    continue
                a, b = find(r), find(s)
                if a != b:
                    parent[a] = b
                    comps -= 1
        return comps == 1

    def degree_flow(self) -> bool:
        """Flow relaxation of the remaining linking problem.

        Every open chain must take two ends from other chains, at most one
        from any single chain (two links between the same pair of chains
        would close a short cycle), and each open end is taken once.  This
        is what rules out, e.g., six small segments that each can only reach
        their partner segment or four shared connector ends.
        """
        mate, other, dom = self.mate, self.other, self.dom
        chain = {}
        for r in range(len(mate)):
            if mate[r] == -1:
                chain[r] = min(r, other[r])
        chains = sorted(set(chain.values()))
        if len(chains) <= 2:
            return True
        cid = {c: i for i, c in enumerate(chains)}
        ends = sorted(chain)
        eid = {r: i for i, r in enumerate(ends)}
        nc, ne = len(chains), len(ends)
        pairs: dict[tuple[int, int], set[int]] = {}
        for r in ends:
            x = cid[chain[r]]
            for f in dom[r]:
                pairs.setdefault((x, cid[chain[f]]), set()).add(eid[f])
        # nodes: 0 source, 1 sink, chains, pair nodes, ends
        base_pair = 2 + nc
        base_end = base_pair + len(pairs)
        g = _Flow(base_end + ne)
        for x in range(nc):
            g.add(0, 2 + x, 2)
        for k, ((x, _), fs) in enumerate(sorted(pairs.items())):
            g.add(2 + x, base_pair + k, 1)
            for f in fs:
                g.add(base_pair + k, base_end + f, 1)
        for f in range(ne):
            g.add(base_end + f, 1, 1)
        return g.maxflow(0, 1) == 2 * nc

    def probe(self) -> bool:
        """Failed-edge probing: drop every candidate edge whose placement is
        refuted by propagation plus the connectivity and flow checks.

        Repeats until nothing changes.  Much more work per node than plain
        propagation, but it turns the deep refutations that otherwise
        dominate the search into a handful of probes.
        """
        mate, dom = self.mate, self.dom
        changed = True
        while changed:
            changed = False
            for r in range(len(mate)):
                if mate[r] != -1:
                    continue
                for x in sorted(dom[r]):
                    if mate[r] != -1 or x not in dom[r]:
                        continue
                    mark = len(self.trail)
                    ok = self.place(r, x) and self.connected() and self.degree_flow()
                    self.undo(mark)
                    if ok:
                        continue
                    changed = True
                    queue: list[int] = []
                    self._drop(r, x, queue)
                    if not self._propagate(queue):
                        return False
        return self.connected() and self.degree_flow()

    def _propagate(self, queue) -> bool:
        mate, dom = self.mate, self.dom
        while queue:
            x = queue.pop()
            if mate[x] != -1:
                continue
            d = dom[x]
            if not d:
                return False
            if len(d) == 1:
                (y,) = d
                self._place(x, y, queue)
        return True

    def feasible(self) -> bool:
        """Most-constrained-first search; leaves the state untouched.

        On success the completed matching is kept in ``self.solution``.
        """
        mark = len(self.trail)
        ok = self._mrv()
        self.undo(mark)
        return ok

    def _mrv(self) -> bool:
        if not self.probe():
            return False
        best, size = -1, None
        for r, d in enumerate(self.dom):
            if self.mate[r] == -1 and (size is None or len(d) < size):
                best, size = r, len(d)
                if size <= 2:
                    break
        if best < 0:
            self.solution = list(self.mate)
            return True
        self.nodes += 1
        for s in sorted(self.dom[best]):
            if s not in self.dom[best]:
                continue
            mark = len(self.trail)
            if self.place(best, s) and self._mrv():
                return True
            self.undo(mark)
        return False

    def lex_witness(self, start) -> bool:
        """Grow the chain from ``start`` taking the least completable partner.

        Each step is committed only when a completion is known: either the
        last solution found already uses that step, or :meth:`feasible`
        finds a new one.  The result is the lexicographically least order
        among all solutions.
        """
        if not self.feasible():
            return False
        f = self.frontier(start)
        while f is not None:
            for s in sorted(self.dom[f]):
                mark = len(self.trail)
                if s == self.solution[f]:
                    placed = self.place(f, s)
                    assert placed, "propagation contradicted a known solution"
                    break
                if self.place(f, s) and self.feasible():
                    break
                self.undo(mark)
            else:  # pragma: no cover - a completion was known to exist
                raise AssertionError("no completable partner after a feasible prefix")
            f = self.frontier(start)
        return True


class _Flow:
    """Dinic max-flow on a small integer-capacity graph."""

    def __init__(self, n):
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add(self, u, v, c):
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def maxflow(self, s, t) -> int:
        to, cap, adj = self.to, self.cap, self.adj
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = [s]
            for u in queue:
                for e in adj[u]:
                    if cap[e] > 0 and level[to[e]] < 0:
                        level[to[e]] = level[u] + 1
                        queue.append(to[e])
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def push(u, f):
                if u == t:
                    return f
                while it[u] < len(adj[u]):
                    e = adj[u][it[u]]
                    v = to[e]
                    if cap[e] > 0 and level[v] == level[u] + 1:
                        got = push(v, min(f, cap[e]))
                        if got:
                            cap[e] -= got
                            cap[e ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                f = push(s, 1 << 30)
                if not f:
                    break
                flow += f


def _prepare(family: SegmentFamily, mode: Mode):
    v = validate(family)
    if v is not None:
        raise ValueError(f"invalid family: {v}")
    n = len(family)
    graph = visibility_graph(family)
    index = {p: i for i, p in enumerate(graph.vertices)}
    ref_point = [index[family[r >> 1].end(r & 1)] for r in range(2 * n)]
    _, ipts = integer_coords(graph.vertices)
    adj = graph.adjacency()
    by_point: dict[int, list[int]] = {}
    for r in range(2 * n):
        by_point.setdefault(ref_point[r], []).append(r)
    virtual = mode is Mode.PATH
    cand: list[list[int]] = []
    for r in range(2 * n):
        sharing = [x for x in by_point[ref_point[r]] if x != r]
        if sharing:
            cand.append(sharing)
            continue
        c = [x for q in adj[ref_point[r]] for x in by_point[q] if x != r ^ 1]
        if virtual:
            c.append(2 * n)
            c.append(2 * n + 1)
        cand.append(c)
    if virtual:
        cand.append([r for r in range(2 * n) if 2 * n in cand[r]])
        cand.append([r for r in range(2 * n) if 2 * n + 1 in cand[r]])
    # a shared endpoint only pairs with its junction partner, so keep an
    # edge only when both sides list it
    listed = [set(c) for c in cand]
    cand = [[x for x in c if r in listed[x]] for r, c in enumerate(cand)]
    pts = [ipts[ref_point[r]] for r in range(2 * n)]
    return _Search(pts, cand, n + (1 if virtual else 0), virtual)


def _decide(family: SegmentFamily, mode: Mode) -> Optional[Linking]:
    n = len(family)
    if n == 0:
        return None
    search = _prepare(family, mode)
    start = 1 if mode is Mode.CIRCUIT else 2 * n + 1
    if not (search.initial() and search.lex_witness(start)):
        return None
    order: list[Ref] = []
    x = start
    if mode is Mode.CIRCUIT:
        order = [(0, 0), (0, 1)]
        x = search.mate[1]
        while x != 0:
            order += [(x >> 1, x & 1), (x >> 1, (x & 1) ^ 1)]
            x = search.mate[x ^ 1]
    else:
        x = search.mate[start]
        while x != 2 * n:
            order += [(x >> 1, x & 1), (x >> 1, (x & 1) ^ 1)]
            x = search.mate[x ^ 1]
    w = Linking(mode, tuple(order))
    report = verify_linking(family, w)
    assert report.ok, f"search produced an invalid witness: {report.problems}"
    return w


def decide_circuit(family: SegmentFamily) -> Optional[Linking]:
    """A simple polygon through all segments, or None if none exists."""
    return _decide(family, Mode.CIRCUIT)


def decide_path(family: SegmentFamily) -> Optional[Linking]:
    """A simple polygonal chain through all segments, or None if none exists."""
    return _decide(family, Mode.PATH)


def decide(family: SegmentFamily, mode) -> Optional[Linking]:
    return _decide(family, Mode(mode))


# -- brute-force oracle ------------------------------------------------------

ORACLE_CAP = 7


def oracle_decide(family: SegmentFamily, mode, cap: int = ORACLE_CAP) -> Optional[Linking]:
    """Enumerate every segment order and end-flag assignment.

    For circuits, segment 0 is pinned first with flag 0 (every cycle can be
    rotated and reversed into that form).  Orders whose added edges are not
    all visible are skipped before the full ``verify_linking`` check.
    """
    mode = Mode(mode)
    n = len(family)
    if n > cap:
        raise ValueError(f"oracle is capped at {cap} segments, family has {n}")
    if n == 0:
        return None
    pts = [[s.p, s.q] for s in family.segments]
    seen: dict[tuple[Ref, Ref], bool] = {}

    def linkable(a: Ref, b: Ref) -> bool:
        key = (a, b) if a <= b else (b, a)
        ok = seen.get(key)
        if ok is None:
            pa, pb = pts[a[0]][a[1]], pts[b[0]][b[1]]
            ok = pa == pb or points_see(pa, pb, family)
            seen[key] = ok
        return ok

    if mode is Mode.CIRCUIT:
        perms = ((0,) + p for p in itertools.permutations(range(1, n)))
    else:
        perms = itertools.permutations(range(n))
    for perm in perms:
        flag_sets = itertools.product((0, 1), repeat=n - 1 if mode is Mode.CIRCUIT else n)
        for flags in flag_sets:
            if mode is Mode.CIRCUIT:
                flags = (0,) + flags
            order = []
            for s, f in zip(perm, flags):
                order.append((s, f))
                order.append((s, 1 - f))
            w = Linking(mode, tuple(order))
            if all(linkable(a, b) for a, b in w.added_edges) and verify_linking(family, w):
                return w
    return None


# -- witness text format -----------------------------------------------------

_TOKEN = re.compile(r"^\((\d+),([01])\)$")


def format_witness(w: Linking) -> str:
    return w.mode.value + "\n" + "".join(f"({s},{e})\n" for s, e in w.order)


def parse_witness(text: str) -> Linking:
    tokens = text.split()
    if not tokens or tokens[0] not in ("circuit", "path"):
        raise ValueError("witness must start with 'circuit' or 'path'")
    order = []
    for tok in tokens[1:]:
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"bad witness token {tok!r}")
        order.append((int(m.group(1)), int(m.group(2))))
    return Linking(Mode(tokens[0]), tuple(order))
