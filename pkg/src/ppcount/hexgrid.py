"""Triangulated hexagons and their matching graphs.

H(a,b,c) is the hexagon with angles 2*pi/3 and opposite sides a, b, c, tiled
by unit equilateral triangles.  Each unit triangle is addressed by an integer
triple (x, y, z): the three coordinates index the strips of the three lattice
line families containing the triangle, so

    0 <= x <= b+c-1,   0 <= y <= a+c-1,   0 <= z <= a+b-1,

with x+y+z = a+b+c-1 for one orientation class ("up") and a+b+c-2 for the
other ("down").  A down triangle is adjacent to the up triangles obtained by
adding 1 to a single coordinate.  Perfect matchings of the adjacency graph
Z(a,b,c) are exactly the lozenge tilings of the hexagon, i.e. the plane
partitions in an a x b x c box.

The coordinates are chosen so the box symmetries act affinely: rotation by
2*pi/3 is the cyclic shift (x,y,z) -> (z,x,y), and the point reflection
through the center is (x,y,z) -> (b+c-1-x, a+c-1-y, a+b-1-z).

All objects are immutable after construction.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from .exactalg import QPoly


class Triangle(NamedTuple):
    x: int
    y: int
    z: int


class Edge(NamedTuple):
    eid: int
    u: object
    v: object
    weight: object = 1


#: axis index -> unit vector added to a down triangle to reach its up neighbor
AXES = (Triangle(1, 0, 0), Triangle(0, 1, 0), Triangle(0, 0, 1))


class RegionError(ValueError):
    pass


class EmbeddingError(RuntimeError):
    """A rotation system failed the face-tracing / Euler consistency check."""


class HexRegion:
    """The triangle set of H(a,b,c), with containment and adjacency queries."""

    __slots__ = ("a", "b", "c", "bounds", "up_sum", "triangles", "ups", "downs")

    def __init__(self, a: int, b: int, c: int):
        if a < 0 or b < 0 or c < 0:
            raise RegionError(f"negative side length in H({a},{b},{c})")
        self.a, self.b, self.c = a, b, c
        self.bounds = (b + c - 1, a + c - 1, a + b - 1)
        self.up_sum = a + b + c - 1
        ups, downs = [], []
        X, Y, Z = self.bounds
        for x in range(X + 1):
            for y in range(Y + 1):
                z = self.up_sum - x - y
                if 0 <= z <= Z:
                    ups.append(Triangle(x, y, z))
                if 0 <= z - 1 <= Z:
                    downs.append(Triangle(x, y, z - 1))
        self.ups = tuple(sorted(ups))
        self.downs = tuple(sorted(downs))
        self.triangles = tuple(sorted(ups + downs))

    @property
    def abc(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def __contains__(self, t) -> bool:
        if not isinstance(t, tuple) or len(t) != 3:
            return False
        x, y, z = t
        X, Y, Z = self.bounds
        return (
            0 <= x <= X
            and 0 <= y <= Y
            and 0 <= z <= Z
            and x + y + z in (self.up_sum, self.up_sum - 1)
        )

    def __repr__(self):
        return f"HexRegion({self.a},{self.b},{self.c})"


def build_hexagon(a: int, b: int, c: int) -> HexRegion:
    """All unit triangles of H(a,b,c), in deterministic (sorted) order."""
    return HexRegion(a, b, c)


def orientation(t: Triangle, region: HexRegion) -> str:
    if t not in region:
        raise RegionError(f"{t} is not a triangle of {region}")
    return "up" if sum(t) == region.up_sum else "down"


def neighbors(t: Triangle, region: HexRegion) -> List[Triangle]:
    """Adjacent triangles: +e_i from a down triangle, -e_i from an up one."""
    if t not in region:
        raise RegionError(f"{t} is not a triangle of {region}")
    step = 1 if sum(t) == region.up_sum - 1 else -1
    out = []
    for d in AXES:
        u = Triangle(t.x + step * d.x, t.y + step * d.y, t.z + step * d.z)
        if u in region:
            out.append(u)
    return out


def position2(t: Triangle) -> Tuple[int, int]:
    """Exact planar position of the triangle center, doubled coordinates.

    Returns (u, v) meaning the point (u/2, v*sqrt(3)/2); centers of adjacent
    triangles differ by one of six fixed lattice directions, so rotation
    systems and axis geometry can be computed with integer arithmetic only.
    """
    x, y, z = t
    return (2 * x - y - z, y - z)


def center2(region: HexRegion) -> Tuple[int, int]:
    """Doubled position of the hexagon center (fixed point of the flip)."""
    X, Y, Z = region.bounds
    return (2 * X - Y - Z, Y - Z)


# ---------------------------------------------------------------------------
# planar multigraphs with rotation systems
# ---------------------------------------------------------------------------

Dart = Tuple[int, int]  # (edge id, side); side 0 sits at edge.u, side 1 at edge.v


class PlanarMultigraph:
    """Vertices, parallel-capable edges, and a rotation system.

    rotation[v] lists the darts at v in counterclockwise order; a dart is
    (edge id, side) with side 0 at the edge's u endpoint.  The rotation
    system defines the embedding: faces are traced from it and validated
    against Euler's formula per connected component.
    """

    def __init__(
        self,
        vertices: Iterable,
        edges: Iterable[Edge],
        rotation: Dict[object, List[Dart]],
        bipartition: Optional[Tuple[frozenset, frozenset]] = None,
        bachelor=None,
        meta: Optional[dict] = None,
    ):
        self.vertices = list(vertices)
        self.edges = list(edges)
        self.edge_by_id = {e.eid: e for e in self.edges}
        if len(self.edge_by_id) != len(self.edges):
            raise ValueError("duplicate edge ids")
        self.rotation = {v: list(ds) for v, ds in rotation.items()}
        self.bipartition = bipartition
        self.bachelor = bachelor
        self.meta = meta or {}
        if bipartition is not None:
            blk, wht = bipartition
            for e in self.edges:
                if not ((e.u in blk and e.v in wht) or (e.u in wht and e.v in blk)):
                    raise ValueError(f"edge {e} does not join the two classes")

    # -- basic queries ------------------------------------------------------

    @property
    def n_vertices(self):
        return len(self.vertices)

    @property
    def n_edges(self):
        return len(self.edges)

    def dart_tail(self, d: Dart):
        e = self.edge_by_id[d[0]]
        return e.u if d[1] == 0 else e.v

    def dart_head(self, d: Dart):
        e = self.edge_by_id[d[0]]
        return e.v if d[1] == 0 else e.u

    def edges_at(self, v) -> List[Edge]:
        return [self.edge_by_id[eid] for eid, _ in self.rotation.get(v, [])]

    def other_end(self, e: Edge, v):
        if e.u == v:
            return e.v
        if e.v == v:
            return e.u
        raise ValueError(f"{v} is not an endpoint of {e}")

    def neighbors(self, v) -> List[object]:
        return [self.other_end(e, v) for e in self.edges_at(v)]

    def degree(self, v) -> int:
        return len(self.rotation.get(v, []))

    def components(self) -> List[set]:
        seen = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                w = stack.pop()
                for u in self.neighbors(w):
                    if u not in comp:
                        comp.add(u)
                        stack.append(u)
            seen |= comp
            comps.append(comp)
        return comps

    def subgraph(self, keep) -> "PlanarMultigraph":
        keep = set(keep)
        edges = [e for e in self.edges if e.u in keep and e.v in keep]
        eids = {e.eid for e in edges}
        rot = {
            v: [d for d in self.rotation.get(v, []) if d[0] in eids]
            for v in self.vertices
            if v in keep
        }
        bip = None
        if self.bipartition is not None:
            blk, wht = self.bipartition
            bip = (blk & keep, wht & keep)
        bach = self.bachelor if self.bachelor in keep else None
        return PlanarMultigraph(
            [v for v in self.vertices if v in keep], edges, rot, bip, bach
        )

    # -- embedding ----------------------------------------------------------

    def faces(self) -> List[List[Dart]]:
        """Orbits of the next-dart permutation; each dart lies in one face."""
        pos: Dict[Dart, Tuple[object, int]] = {}
        for v, darts in self.rotation.items():
            for i, d in enumerate(darts):
                if d in pos:
                    raise EmbeddingError(f"dart {d} appears twice in the rotation")
                pos[d] = (v, i)
        for e in self.edges:
            for side in (0, 1):
                if (e.eid, side) not in pos:
                    raise EmbeddingError(f"edge {e.eid} missing a rotation slot")
        unused = set(pos)
        out = []
        while unused:
            d0 = min(unused)
            face = []
            d = d0
            while True:
                face.append(d)
                unused.discard(d)
                twin = (d[0], 1 - d[1])
                v, i = pos[twin]
                ring = self.rotation[v]
                d = ring[(i + 1) % len(ring)]
                if d == d0:
                    break
                if d not in unused:
                    raise EmbeddingError("face tracing revisited a dart")
            out.append(face)
        return out

    def assert_valid_embedding(self):
        """Face-trace and check V - E + F = 2 on every connected component."""
        faces = self.faces()
        comp_of = {}
        for ci, comp in enumerate(self.components()):
            for v in comp:
                comp_of[v] = ci
        nv = [0] * (max(comp_of.values()) + 1 if comp_of else 0)
        ne = [0] * len(nv)
        nf = [0] * len(nv)
        for v in self.vertices:
            nv[comp_of[v]] += 1
        for e in self.edges:
            ne[comp_of[e.u]] += 1
        for f in faces:
            nf[comp_of[self.dart_tail(f[0])]] += 1
        for ci in range(len(nv)):
            if ne[ci] == 0:
                continue  # an isolated vertex embeds trivially
            if nv[ci] - ne[ci] + nf[ci] != 2:
                raise EmbeddingError(
                    f"component {ci}: V-E+F = {nv[ci]}-{ne[ci]}+{nf[ci]} != 2"
                )
        return faces


# ---------------------------------------------------------------------------
# Z(a,b,c) and its q-weighting
# ---------------------------------------------------------------------------

# exact ccw angle ranks of edge directions around a vertex:
# at a down triangle the edge along axis i points at angle 120*i degrees;
# at an up triangle the reverse directions sort ccw as z, x, y.
_DOWN_ORDER = (0, 1, 2)
_UP_ORDER = (2, 0, 1)


def _edge_axis(e: Edge) -> int:
    """Which coordinate changes across the edge (0, 1, or 2)."""
    du = e.u
    dv = e.v
    for i in range(3):
        if du[i] != dv[i]:
            return i
    raise ValueError(f"degenerate edge {e}")


def build_graph(region: HexRegion, q_weights: bool = False) -> PlanarMultigraph:
    """The adjacency graph Z(a,b,c) with its planar rotation system.

    Edges always run from a down triangle (edge.u) to an up one (edge.v).
    With q_weights=True the edges whose z-coordinate changes get weight q^x;
    those matched edges are the "column top" lozenges, and x counts the
    column steps, so the weight of a matching is q^(partition volume) times
    a constant absorbed by normalization against the empty partition.
    """
    edges: List[Edge] = []
    at_down: Dict[Triangle, Dict[int, int]] = {}
    at_up: Dict[Triangle, Dict[int, int]] = {}
    for t in region.downs:
        for ax, d in enumerate(AXES):
            u = Triangle(t.x + d.x, t.y + d.y, t.z + d.z)
            if u in region:
                w: object = 1
                if q_weights and ax == 2:
                    w = QPoly.q_power(t.x)
                elif q_weights:
                    w = QPoly.const(1)
                eid = len(edges)
                edges.append(Edge(eid, t, u, w))
                at_down.setdefault(t, {})[ax] = eid
                at_up.setdefault(u, {})[ax] = eid
    rotation: Dict[object, List[Dart]] = {}
    for t in region.downs:
        slots = at_down.get(t, {})
        rotation[t] = [(slots[ax], 0) for ax in _DOWN_ORDER if ax in slots]
    for t in region.ups:
        slots = at_up.get(t, {})
        rotation[t] = [(slots[ax], 1) for ax in _UP_ORDER if ax in slots]
    g = PlanarMultigraph(
        region.triangles,
        edges,
        rotation,
        bipartition=(frozenset(region.ups), frozenset(region.downs)),
    )
    g.assert_valid_embedding()
    return g


def q_weight_graph(region: HexRegion) -> PlanarMultigraph:
    """Z(a,b,c) with the q-weighting of the column-top edge class."""
    return build_graph(region, q_weights=True)


# ---------------------------------------------------------------------------
# exact angular order helpers (used by the quotient embedding)
# ---------------------------------------------------------------------------


def angle_half(p: Tuple[int, int]) -> int:
    """0 for angles in [0, pi), 1 for [pi, 2*pi); the origin is invalid."""
    u, v = p
    if u == 0 and v == 0:
        raise ValueError("zero vector has no angle")
    return 0 if (v > 0 or (v == 0 and u > 0)) else 1


def angle_cmp(p: Tuple[int, int], q: Tuple[int, int]) -> int:
    """Exact ccw comparison of doubled-coordinate directions from angle 0."""
    ha, hb = angle_half(p), angle_half(q)
    if ha != hb:
        return -1 if ha < hb else 1
    cr = p[0] * q[1] - p[1] * q[0]
    if cr == 0:
        return 0
    return -1 if cr > 0 else 1


def radius2(p: Tuple[int, int]) -> int:
    """Squared distance (times 4) of a doubled-coordinate point."""
    u, v = p
    return u * u + 3 * v * v


def primitive_dir(p: Tuple[int, int]) -> Tuple[int, int]:
    u, v = p
    g = math.gcd(abs(u), abs(v))
    if g == 0:
        raise ValueError("zero vector has no direction")
    return (u // g, v // g)
