"""Labeled Schreier graphs and Sierpinski gasket approximants.

Vertices are words over ``{0,1}`` or ``{0,1,2}`` (first letter = top level of
the tree).  Edges come from acting with the generators on every word; faces are
emitted from the recursive structure of each family, as vertex walks, and are
oriented clockwise with respect to the stored planar coordinates.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import MalformedGraphError, UnsupportedLevelError

Point = Tuple[Fraction, Fraction]

FAMILIES = ("grigorchuk", "basilica", "hanoi", "gasket")
GASKET_LABELINGS = ("schreier", "rotation", "directional")


@dataclass(frozen=True)
class Edge:
    id: int
    u: str
    v: str
    label: str

    def other(self, w: str) -> str:
        return self.v if w == self.u else self.u


@dataclass(frozen=True)
class Face:
    """Bounded face: ``edges[i]`` joins ``vertices[i]`` to ``vertices[i+1]`` (cyclically)."""

    vertices: Tuple[str, ...]
    edges: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    family: str
    level: int
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    loops: Tuple[Tuple[str, str], ...] = ()
    coords: Dict[str, Point] = field(default_factory=dict)
    faces: Tuple[Face, ...] = ()
    labeling: Optional[str] = None
    corners: Tuple[str, ...] = ()
    layout: str = ""

    @property
    def index(self) -> Dict[str, int]:
        return {w: i for i, w in enumerate(self.vertices)}

    def incident(self) -> Dict[str, List[Edge]]:
        inc: Dict[str, List[Edge]] = {w: [] for w in self.vertices}
        for e in self.edges:
            inc[e.u].append(e)
            inc[e.v].append(e)
        return inc

    def degree(self, w: str, count_loops: bool = True) -> int:
        d = sum((e.u == w) + (e.v == w) for e in self.edges)
        if count_loops:
            d += sum(1 for v, _ in self.loops if v == w)
        return d

    def edge(self, edge_id: int) -> Edge:
        return self.edges[edge_id]

    def label_counts(self) -> Counter:
        return Counter(e.label for e in self.edges)

    def structure_key(self):
        """Vertex list plus sorted labeled edge multiset; equal keys mean equal labeled graphs."""
        return (
            tuple(self.vertices),
            tuple(sorted((min(e.u, e.v), max(e.u, e.v), e.label) for e in self.edges)),
            tuple(sorted(self.loops)),
        )

    def face_census(self) -> Counter:
        return Counter(len(f) for f in self.faces)

    def to_dict(self) -> dict:
        d = {
            "level": self.level,
            "family": self.family,
        }
        if self.labeling is not None:
            d["labeling"] = self.labeling
        d["vertices"] = list(self.vertices)
        d["edges"] = [[e.u, e.v, e.label, e.id] for e in self.edges]
        d["loops"] = [[v, lab] for v, lab in self.loops]
        d["coords"] = {w: [str(x), str(y)] for w, (x, y) in sorted(self.coords.items())}
        d["faces"] = [list(f.edges) for f in self.faces]
        if self.corners:
            d["corners"] = list(self.corners)
        if self.layout:
            d["layout"] = self.layout
        return d

    def to_json(self, indent: Optional[int] = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)


# ---------------------------------------------------------------------------
# generator actions (wreath recursions)


def grigorchuk_action(gen: str, w: str) -> str:
    """a = eps(id, id), b = e(a, c), c = e(a, d), d = e(id, b)."""
    out = []
    i = 0
    while i < len(w):
        x = w[i]
        if gen == "a":
            out.append("1" if x == "0" else "0")
            out.append(w[i + 1:])
            return "".join(out)
        out.append(x)
        if gen == "b":
            gen = "a" if x == "0" else "c"
        elif gen == "c":
            gen = "a" if x == "0" else "d"
        elif gen == "d":
            if x == "0":
                out.append(w[i + 1:])
                return "".join(out)
            gen = "b"
        else:
            raise ValueError(f"unknown Grigorchuk generator {gen!r}")
        i += 1
    return "".join(out)


def basilica_action(gen: str, w: str) -> str:
    """a = e(b, id), b = eps(a, id)."""
    out = []
    i = 0
    while i < len(w):
        x = w[i]
        if gen == "a":
            if x == "1":
                out.append(w[i:])
                return "".join(out)
            out.append("0")
            gen = "b"
        elif gen == "b":
            if x == "1":
                out.append("0")
                out.append(w[i + 1:])
                return "".join(out)
            out.append("1")
            gen = "a"
        else:
            raise ValueError(f"unknown Basilica generator {gen!r}")
        i += 1
    return "".join(out)


_HANOI_MOVES = {"a": ("0", "1", "2"), "b": ("0", "2", "1"), "c": ("1", "2", "0")}


def hanoi_action(gen: str, w: str) -> str:
    """a = (01)(id, id, a), b = (02)(id, b, id), c = (12)(c, id, id)."""
    x, y, fixed = _HANOI_MOVES[gen]
    for i, ch in enumerate(w):
        if ch != fixed:
            return w[:i] + (y if ch == x else x) + w[i + 1:]
    return w


def words(alphabet: str, n: int) -> List[str]:
    return ["".join(t) for t in itertools.product(alphabet, repeat=n)]


# ---------------------------------------------------------------------------
# geometry helpers


def _signed_area2(points: Sequence[Point]) -> Fraction:
    s = Fraction(0)
    k = len(points)
    for i in range(k):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % k]
        s += x1 * y2 - x2 * y1
    return s


def _clockwise(walk: List[str], coords: Dict[str, Point]) -> List[str]:
    if len(walk) >= 3 and _signed_area2([coords[w] for w in walk]) > 0:
        return [walk[0]] + walk[:0:-1]
    return walk


def _walk_to_face(walk: List[str], lookup: Callable[[str, str], int]) -> Face:
    k = len(walk)
    return Face(tuple(walk), tuple(lookup(walk[i], walk[(i + 1) % k]) for i in range(k)))


_CORNERS: Tuple[Point, Point, Point] = (
    (Fraction(0), Fraction(0)),  # letter 0: left
    (Fraction(1), Fraction(2)),  # letter 1: top
    (Fraction(2), Fraction(0)),  # letter 2: right
)


def _swap_others(bary: Tuple[Fraction, ...], x: int) -> Tuple[Fraction, ...]:
    # reflection through the bisector at corner x
    b = list(bary)
    i, j = [k for k in range(3) if k != x]
    b[i], b[j] = b[j], b[i]
    return tuple(b)


def _bary(w: str, scale: Fraction) -> Tuple[Fraction, ...]:
    """Barycentric position: copy at corner ``w[-1]``, reflected, shrunk by ``scale``."""
    x = int(w[-1])
    e = [Fraction(0)] * 3
    e[x] = Fraction(1)
    if len(w) == 1:
        return tuple(e)
    inner = _swap_others(_bary(w[:-1], scale), x)
    return tuple((1 - scale) * e[k] + scale * inner[k] for k in range(3))


def _to_xy(bary: Sequence[Fraction]) -> Point:
    x = sum(l * c[0] for l, c in zip(bary, _CORNERS))
    y = sum(l * c[1] for l, c in zip(bary, _CORNERS))
    return (x, y)


HANOI_SCALE = Fraction(2, 5)
GASKET_SCALE = Fraction(1, 2)


def _number_edges(raw: Iterable[Tuple[str, str, str, str]]) -> Tuple[Edge, ...]:
    """Sort ``(u, v, label, source)`` tuples (u < v) and assign stable ids."""
    ordered = sorted(raw)
    return tuple(Edge(i, u, v, lab) for i, (u, v, lab, _src) in enumerate(ordered))


def _pair_lookup(edges: Sequence[Edge]) -> Callable[[str, str], int]:
    by_pair: Dict[frozenset, List[int]] = defaultdict(list)
    for e in edges:
        by_pair[frozenset((e.u, e.v))].append(e.id)

    def lookup(u: str, v: str) -> int:
        ids = by_pair.get(frozenset((u, v)))
        if not ids or len(ids) != 1:
            raise MalformedGraphError(f"expected exactly one edge between {u} and {v}")
        return ids[0]

    return lookup


def _check_level(n: int, minimum: int = 1) -> None:
    if not isinstance(n, int) or n < minimum:
        raise UnsupportedLevelError(f"level must be an integer >= {minimum}, got {n!r}")


# ---------------------------------------------------------------------------
# Grigorchuk


def build_grigorchuk(n: int) -> LabeledGraph:
    """Loopless Schreier graph of the first Grigorchuk group on level ``n``."""
    _check_level(n)
    verts = words("01", n)
    raw = []
    for u in verts:
        for s in "abcd":
            v = grigorchuk_action(s, u)
            if u < v:
                raw.append((u, v, s, u))
    edges = _number_edges(raw)

    # linear layout: walk the path from the degree-one vertex 1^{n-1}0
    adj: Dict[str, set] = defaultdict(set)
    for e in edges:
        adj[e.u].add(e.v)
        adj[e.v].add(e.u)
    start = "1" * (n - 1) + "0"
    order = [start]
    prev = None
    cur = start
    while True:
        nxt = [w for w in adj[cur] if w != prev]
        if not nxt:
            break
        prev, cur = cur, nxt[0]
        order.append(cur)
    if len(order) != len(verts):
        raise MalformedGraphError("Grigorchuk Schreier graph is not a path")
    pos = {w: i for i, w in enumerate(order)}
    coords = {w: (Fraction(pos[w]), Fraction(0)) for w in verts}

    by_pair: Dict[Tuple[str, str], List[Edge]] = defaultdict(list)
    for e in edges:
        by_pair[(e.u, e.v)].append(e)
    faces = []
    for (u, v), es in sorted(by_pair.items(), key=lambda kv: min(pos[kv[0][0]], pos[kv[0][1]])):
        if len(es) == 2:
            left, right = (u, v) if pos[u] < pos[v] else (v, u)
            # upper arc (first label) left-to-right, lower arc back: clockwise
            faces.append(Face((left, right), (es[0].id, es[1].id)))
    return LabeledGraph(
        family="grigorchuk", level=n, vertices=tuple(verts), edges=edges,
        coords=coords, faces=tuple(faces),
        layout="collinear: vertices on the x-axis in path order; parallel pairs drawn as upper/lower arcs",
    )


# ---------------------------------------------------------------------------
# Basilica


def build_basilica(n: int) -> LabeledGraph:
    """Loopless Schreier graph of the Basilica group on level ``n`` (a cactus)."""
    _check_level(n)
    verts = words("01", n)
    raw = []
    for u in verts:
        for s in "ab":
            v = basilica_action(s, u)
            if v != u:
                raw.append((min(u, v), max(u, v), s, u))
    ordered = sorted(raw)
    edges = tuple(Edge(i, u, v, lab) for i, (u, v, lab, _) in enumerate(ordered))
    edge_from = {(src, lab): i for i, (_, _, lab, src) in enumerate(ordered)}

    cycles: List[Tuple[str, List[str]]] = []
    seen = set()
    for s in "ab":
        for u in verts:
            if (u, s) in seen or basilica_action(s, u) == u:
                continue
            orbit = [u]
            seen.add((u, s))
            w = basilica_action(s, u)
            while w != u:
                orbit.append(w)
                seen.add((w, s))
                w = basilica_action(s, w)
            cycles.append((s, orbit))

    coords = _cactus_layout(verts, [c for _, c in cycles])
    faces = []
    for s, orbit in cycles:
        walk = _clockwise(list(orbit), coords)
        if walk != orbit:
            # reversed traversal: the edge from walk[i] to walk[i+1] has source walk[i+1]
            k = len(walk)
            eids = tuple(edge_from[(walk[(i + 1) % k], s)] for i in range(k))
        else:
            k = len(walk)
            eids = tuple(edge_from[(walk[i], s)] for i in range(k))
        faces.append(Face(tuple(walk), eids))
    faces.sort(key=lambda f: (len(f), f.vertices))
    return LabeledGraph(
        family="basilica", level=n, vertices=tuple(verts), edges=edges,
        coords=coords, faces=tuple(faces),
        layout=("balloon cactus: root 0^n at the origin; each cycle is a regular polygon "
                "hanging off its attachment vertex; child cycles fan out away from the parent "
                "polygon centre at 0.45x radius; coordinates rounded to denominators <= 10^6"),
    )


def _cactus_layout(verts: List[str], cycles: List[List[str]]) -> Dict[str, Point]:
    member: Dict[str, List[int]] = defaultdict(list)
    for ci, cyc in enumerate(cycles):
        for w in cyc:
            member[w].append(ci)
    pos: Dict[str, Tuple[float, float]] = {}
    placed = set()
    root = verts[0]
    pos[root] = (0.0, 0.0)
    # (vertex, direction, spread, radius)
    stack = [(root, 0.0, 2 * math.pi, 1.0)]
    while stack:
        v, theta, spread, r = stack.pop()
        pending = [ci for ci in member[v] if ci not in placed]
        if not pending:
            continue
        step = spread / len(pending)
        for j, ci in enumerate(pending):
            placed.add(ci)
            phi = theta - spread / 2 + step * (j + 0.5)
            cyc = cycles[ci]
            k = len(cyc)
            start = cyc.index(v)
            ring = cyc[start:] + cyc[:start]
            vx, vy = pos[v]
            cx, cy = vx + r * math.cos(phi), vy + r * math.sin(phi)
            for t, w in enumerate(ring[1:], start=1):
                ang = phi + math.pi - 2 * math.pi * t / k
                pos[w] = (cx + r * math.cos(ang), cy + r * math.sin(ang))
                out_dir = math.atan2(pos[w][1] - cy, pos[w][0] - cx)
                stack.append((w, out_dir, min(spread, math.pi) * 0.9, r * 0.45))
    return {w: (Fraction(x).limit_denominator(10 ** 6), Fraction(y).limit_denominator(10 ** 6))
            for w, (x, y) in pos.items()}


def basilica_cycle_census(g: LabeledGraph) -> Dict[str, Dict[int, int]]:
    """Count cycles (blocks) of each label by length, from the edge set alone."""
    census: Dict[str, Dict[int, int]] = {}
    for lab in sorted({e.label for e in g.edges}):
        es = [e for e in g.edges if e.label == lab]
        adj: Dict[str, List[Edge]] = defaultdict(list)
        for e in es:
            adj[e.u].append(e)
            adj[e.v].append(e)
        seen = set()
        counts: Counter = Counter()
        for start in sorted(adj):
            if start in seen:
                continue
            comp, stack, n_edges = set(), [start], set()
            while stack:
                w = stack.pop()
                if w in comp:
                    continue
                comp.add(w)
                for e in adj[w]:
                    n_edges.add(e.id)
                    stack.append(e.other(w))
            seen |= comp
            if len(n_edges) != len(comp) or any(len(adj[w]) != 2 for w in comp):
                raise MalformedGraphError(f"{lab}-edges do not form disjoint cycles")
            counts[len(comp)] += 1
        census[lab] = dict(sorted(counts.items()))
    return census


def basilica_census_closed(n: int) -> Dict[str, Dict[int, int]]:
    """Cycle counts by label and length predicted for n >= 4."""
    if n < 4:
        raise UnsupportedLevelError("closed cycle census holds for n >= 4")
    a: Dict[int, int] = {}
    b: Dict[int, int] = {}
    if n % 2:
        top = (n - 1) // 2
        for k in range(1, top):
            a[2 ** k] = 2 ** (n - 2 * k - 1)
            b[2 ** k] = 2 ** (n - 2 * k)
        a[2 ** top] = 2
        b[2 ** top] = 2
        b[2 ** (top + 1)] = 1
    else:
        top = n // 2
        for k in range(1, top):
            a[2 ** k] = 2 ** (n - 2 * k - 1)
            b[2 ** k] = 2 ** (n - 2 * k)
        a[2 ** top] = 1
        b[2 ** top] = 2
    return {"a": a, "b": b}


# ---------------------------------------------------------------------------
# Hanoi towers group H^(3)


def _third(y: str, z: str) -> str:
    return ({"0", "1", "2"} - {y, z}).pop()


def _side(m: int, y: str, z: str) -> List[str]:
    """Boundary path of the level-m graph from corner y^m to corner z^m."""
    if m == 1:
        return [y, z]
    u = _third(y, z)
    return [w + y for w in _side(m - 1, y, u)] + [w + z for w in _side(m - 1, u, z)]


def hanoi_face_walks(n: int) -> List[List[str]]:
    """Elementary triangles and the central cycles of every sub-copy, as vertex walks."""
    walks = []
    for m in range(1, n + 1):
        for suffix in words("012", n - m):
            if m == 1:
                walks.append(["0" + suffix, "1" + suffix, "2" + suffix])
            else:
                walk = ([w + "0" for w in _side(m - 1, "2", "1")]
                        + [w + "2" for w in _side(m - 1, "1", "0")]
                        + [w + "1" for w in _side(m - 1, "0", "2")])
                walks.append([w + suffix for w in walk])
    return walks


def hanoi_coords(w: str) -> Point:
    return _to_xy(_bary(w, HANOI_SCALE))


def build_hanoi(n: int) -> LabeledGraph:
    """Schreier graph of H^(3) on level ``n``, keeping its three loops."""
    _check_level(n)
    verts = words("012", n)
    raw = []
    loops = []
    for u in verts:
        for s in "abc":
            v = hanoi_action(s, u)
            if v == u:
                loops.append((u, s))
            elif u < v:
                raw.append((u, v, s, u))
    edges = _number_edges(raw)
    coords = {w: hanoi_coords(w) for w in verts}
    lookup = _pair_lookup(edges)
    faces = [_walk_to_face(_clockwise(walk, coords), lookup) for walk in hanoi_face_walks(n)]
    return LabeledGraph(
        family="hanoi", level=n, vertices=tuple(verts), edges=edges,
        loops=tuple(sorted(loops)), coords=coords, faces=tuple(faces),
        corners=("0" * n, "1" * n, "2" * n),
        layout="triangular: corners 0^n=(0,0), 1^n=(1,2), 2^n=(2,0); sub-copies reflected and scaled by 2/5",
    )


# ---------------------------------------------------------------------------
# Sierpinski gasket


def gasket_coords(w: str) -> Point:
    return _to_xy(_bary(w, GASKET_SCALE))


def _gasket_triangles(n: int) -> Tuple[List[Tuple[str, str, str, str]], Dict[str, str]]:
    """Elementary triangles ``(suffix, v0, v1, v2)`` built from three copies of level n-1.

    Vertices are named by the lexicographically smaller word of each identified pair.
    Also returns the renaming from level-n words to representatives (identified words only).
    """
    if n == 1:
        return [("", "0", "1", "2")], {}
    prev, _ = _gasket_triangles(n - 1)
    ident = {}
    for y, z in (("0", "1"), ("0", "2"), ("1", "2")):
        u = _third(y, z)
        lo, hi = u * (n - 1) + y, u * (n - 1) + z
        ident[hi] = lo
    tris = []
    for x in "012":
        for suffix, v0, v1, v2 in prev:
            tris.append((suffix + x,) + tuple(ident.get(v + x, v + x) for v in (v0, v1, v2)))
    return tris, ident


def gasket_representative(w: str) -> str:
    """Canonical name of the gasket vertex obtained from Hanoi word ``w``."""
    k = 1
    while k < len(w) and w[k] == w[0]:
        k += 1
    if k == len(w):
        return w
    partner = w[:k] + _third(w[0], w[k]) + w[k + 1:]
    return min(w, partner)


def _label_triangle(labeling: str, suffix: str, tri: Tuple[str, str, str]) -> List[Tuple[str, str, str]]:
    v0, v1, v2 = tri
    if labeling == "schreier":
        return [(v0, v1, "a"), (v0, v2, "b"), (v1, v2, "c")]
    bary = {v: _bary(v, GASKET_SCALE) for v in tri}
    # geometric corners of the (upward) elementary triangle
    rel = {k: max(tri, key=lambda v: bary[v][k]) for k in range(3)}
    if labeling == "directional":
        return [(rel[0], rel[2], "a"), (rel[0], rel[1], "b"), (rel[1], rel[2], "c")]
    # rotation: position of this triangle inside its level-2 block
    block = suffix[1:]
    block_corners = [_bary(y + y + block, GASKET_SCALE) for y in "012"]
    centre_b = [sum(c[k] for c in block_corners) / 3 for k in range(3)]
    centre_t = [sum(bary[v][k] for v in tri) / 3 for k in range(3)]
    k = max(range(3), key=lambda i: centre_t[i] - centre_b[i])
    ccw_next = {0: 2, 2: 1, 1: 0}
    prev_corner = {v: u for u, v in ccw_next.items()}
    j, i = ccw_next[k], prev_corner[k]
    return [(rel[j], rel[i], "c"), (rel[k], rel[j], "a"), (rel[k], rel[i], "b")]


def _gasket_faces(n: int, verts: Iterable[str], edges: Sequence[Edge], coords) -> List[Face]:
    lookup = _pair_lookup(edges)
    faces = []
    for walk in hanoi_face_walks(n):
        mapped = [gasket_representative(w) for w in walk]
        collapsed = [w for i, w in enumerate(mapped) if w != mapped[i - 1]]
        faces.append(_walk_to_face(_clockwise(collapsed, coords), lookup))
    return faces


def build_sierpinski(n: int, labeling: str = "schreier") -> LabeledGraph:
    """Gasket approximant with ``(3/2)(3^(n-1)+1)`` vertices and the chosen edge labeling."""
    if labeling not in GASKET_LABELINGS:
        raise ValueError(f"unknown gasket labeling {labeling!r}")
    _check_level(n)
    if labeling == "rotation" and n < 2:
        raise UnsupportedLevelError("the rotation-invariant labeling starts at level 2")
    tris, _ = _gasket_triangles(n)
    raw = []
    for suffix, v0, v1, v2 in tris:
        for u, v, lab in _label_triangle(labeling, suffix, (v0, v1, v2)):
            raw.append((min(u, v), max(u, v), lab, ""))
    edges = _number_edges(raw)
    verts = sorted({w for _, *vs in tris for w in vs})
    coords = {w: gasket_coords(w) for w in verts}
    return LabeledGraph(
        family="gasket", level=n, vertices=tuple(verts), edges=edges,
        coords=coords, faces=tuple(_gasket_faces(n, verts, edges, coords)),
        labeling=labeling, corners=("0" * n, "1" * n, "2" * n),
        layout="sierpinski: corners 0^n=(0,0), 1^n=(1,2), 2^n=(2,0); copies scaled by 1/2",
    )


def contract_to_gasket(h: LabeledGraph) -> LabeledGraph:
    """Drop the loops of a Hanoi graph and contract every edge joining two elementary triangles."""
    if h.family != "hanoi":
        raise MalformedGraphError("contract_to_gasket expects a Hanoi graph")
    n = h.level
    if len(h.loops) != 3 or h.face_census().get(3, 0) != 3 ** (n - 1):
        raise MalformedGraphError("graph lacks the Hanoi loop/triangle structure")
    parent = {w: w for w in h.vertices}

    def find(w):
        while parent[w] != w:
            parent[w] = parent[parent[w]]
            w = parent[w]
        return w

    triangle_edges = []
    for e in h.edges:
        if e.u[1:] == e.v[1:]:
            triangle_edges.append(e)
        else:
            ru, rv = find(e.u), find(e.v)
            lo, hi = min(ru, rv), max(ru, rv)
            parent[hi] = lo
    if len(triangle_edges) != 3 ** n:
        raise MalformedGraphError("unexpected number of elementary-triangle edges")
    rep = {w: find(w) for w in h.vertices}
    raw = []
    for e in triangle_edges:
        u, v = rep[e.u], rep[e.v]
        raw.append((min(u, v), max(u, v), e.label, ""))
    edges = _number_edges(raw)
    verts = sorted(set(rep.values()))
    coords = {w: gasket_coords(w) for w in verts}
    lookup = _pair_lookup(edges)
    faces = []
    for f in h.faces:
        mapped = [rep[w] for w in f.vertices]
        collapsed = [w for i, w in enumerate(mapped) if w != mapped[i - 1]]
        faces.append(_walk_to_face(_clockwise(collapsed, coords), lookup))
    return LabeledGraph(
        family="gasket", level=n, vertices=tuple(verts), edges=edges,
        coords=coords, faces=tuple(faces), labeling="schreier",
        corners=("0" * n, "1" * n, "2" * n),
        layout="sierpinski: corners 0^n=(0,0), 1^n=(1,2), 2^n=(2,0); copies scaled by 1/2",
    )


def build(family: str, n: int, labeling: Optional[str] = None) -> LabeledGraph:
    if family == "grigorchuk":
        return build_grigorchuk(n)
    if family == "basilica":
        return build_basilica(n)
    if family == "hanoi":
        return build_hanoi(n)
    if family == "gasket":
        return build_sierpinski(n, labeling or "schreier")
    raise ValueError(f"unknown family {family!r}")
