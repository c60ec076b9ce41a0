"""Flat signings, flat orientations, and matching counts by determinant/Pfaffian.

A signing of an embedded planar bipartite graph is *flat* when every face
with 4k sides carries an odd number of negative edges and every face with
4k+2 sides an even number; then the determinant of the signed bipartite
adjacency matrix equals the permanent of the unsigned one up to sign, i.e.
the weighted matching count.

An orientation is *flat* (Pfaffian/Kasteleyn orientation) when every face,
with at most one exception per component, has an odd number of edges
directed against a fixed face-tracing sense; then the Pfaffian of the
antisymmetric incidence matrix counts matchings.  The orientation is built
by directing a spanning tree arbitrarily and then fixing the co-tree edges
face by face, leaf-to-root in the interdigitating dual tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .exactalg import ExactMatrix, QPoly, det, pfaffian_abs
from .hexgrid import EmbeddingError, PlanarMultigraph


class FlatnessError(RuntimeError):
    pass


@dataclass(frozen=True)
class SignedGraph:
    graph: PlanarMultigraph
    signs: dict  # edge id -> +1 / -1


@dataclass(frozen=True)
class OrientedGraph:
    graph: PlanarMultigraph
    heads: dict  # edge id -> head vertex label


@dataclass(frozen=True)
class FaceReport:
    sides: int
    parity_count: int  # negative edges (signing) / against-trace darts (orientation)
    flat: bool


@dataclass(frozen=True)
class FlatReport:
    faces: Tuple[FaceReport, ...]
    flat: bool


def two_coloring(g: PlanarMultigraph) -> Optional[Tuple[frozenset, frozenset]]:
    """BFS 2-coloring; None if an odd cycle exists."""
    if g.bipartition is not None:
        return g.bipartition
    color: Dict[object, int] = {}
    for start in g.vertices:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u in g.neighbors(v):
                if u not in color:
                    color[u] = 1 - color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    return None
    blk = frozenset(v for v, c in color.items() if c == 0)
    return (blk, frozenset(set(g.vertices) - blk))


def _face_signing_flat(face, signs, g) -> Tuple[int, int, bool]:
    sides = len(face)
    neg = sum(1 for d in face if signs[d[0]] < 0)
    want_odd = sides % 4 == 0
    return sides, neg, (neg % 2 == 1) == want_odd


def flat_signing(g: PlanarMultigraph) -> SignedGraph:
    """A flat edge signing, found by pairing off non-flat faces along dual paths."""
    if g.n_vertices % 2:
        raise ValueError("flat signing needs an even number of vertices")
    if two_coloring(g) is None:
        raise ValueError("flat signing requires a bipartite graph")
    faces = g.assert_valid_embedding()
    signs = {e.eid: 1 for e in g.edges}

    face_of_dart = {}
    for fi, f in enumerate(faces):
        for d in f:
            face_of_dart[d] = fi

    def face_state(fi):
        return _face_signing_flat(faces[fi], signs, g)

    # dual adjacency through edges with two distinct incident faces
    dual: Dict[int, List[Tuple[int, int]]] = {fi: [] for fi in range(len(faces))}
    for e in g.edges:
        f0, f1 = face_of_dart[(e.eid, 0)], face_of_dart[(e.eid, 1)]
        if f0 != f1:
            dual[f0].append((f1, e.eid))
            dual[f1].append((f0, e.eid))

    def nonflat_set():
        return {fi for fi in range(len(faces)) if not face_state(fi)[2]}

    bad = nonflat_set()
    guard = 0
    while bad:
        guard += 1
        if guard > 4 * len(faces) + 8:
            raise FlatnessError("flat signing failed to converge")
        start = min(bad)
        # BFS to the nearest other non-flat face
        prev = {start: (None, None)}
        queue = [start]
        target = None
        while queue and target is None:
            nxt = []
            for fi in queue:
                for fj, eid in dual[fi]:
                    if fj not in prev:
                        prev[fj] = (fi, eid)
                        if fj != start and fj in bad:
                            target = fj
                            break
                        nxt.append(fj)
                if target is not None:
                    break
            queue = nxt
        if target is None:
            raise FlatnessError("non-flat faces cannot be paired in the dual graph")
        fi = target
        while prev[fi][0] is not None:
            _, eid = prev[fi]
            signs[eid] = -signs[eid]
            fi = prev[fi][0]
        bad = nonflat_set()
    return SignedGraph(g, signs)


def check_flat_signing(sg: SignedGraph) -> FlatReport:
    faces = sg.graph.assert_valid_embedding()
    reports = []
    for f in faces:
        sides, neg, ok = _face_signing_flat(f, sg.signs, sg.graph)
        reports.append(FaceReport(sides, neg, ok))
    return FlatReport(tuple(reports), all(r.flat for r in reports))


def flat_orientation(g: PlanarMultigraph) -> OrientedGraph:
    """A Pfaffian orientation: spanning tree free, co-tree edges fixed by faces."""
    if g.n_vertices % 2:
        raise ValueError("flat orientation needs an even number of vertices")
    faces = g.assert_valid_embedding()
    heads = {e.eid: e.v for e in g.edges}  # start with the stored direction

    face_of_dart = {}
    for fi, f in enumerate(faces):
        for d in f:
            face_of_dart[d] = fi

    for comp in g.components():
        comp_edges = [e for e in g.edges if e.u in comp]
        if not comp_edges:
            continue
        # primal spanning tree (BFS)
        root = min(comp, key=lambda v: str(v))
        seen = {root}
        tree: set = set()
        frontier = [root]
        while frontier:
            nxt = []
            for v in frontier:
                for e in g.edges_at(v):
                    w = g.other_end(e, v)
                    if w not in seen:
                        seen.add(w)
                        tree.add(e.eid)
                        nxt.append(w)
            frontier = nxt
        cotree = [e for e in comp_edges if e.eid not in tree]
        # dual tree on the component's faces through co-tree edges
        comp_faces = sorted(
            {face_of_dart[(e.eid, 0)] for e in comp_edges}
            | {face_of_dart[(e.eid, 1)] for e in comp_edges}
        )
        dual: Dict[int, List[Tuple[int, int]]] = {fi: [] for fi in comp_faces}
        for e in cotree:
            f0, f1 = face_of_dart[(e.eid, 0)], face_of_dart[(e.eid, 1)]
            if f0 == f1:
                raise EmbeddingError("co-tree edge with a single incident face")
            dual[f0].append((f1, e.eid))
            dual[f1].append((f0, e.eid))
        root_face = comp_faces[0]
        order = [root_face]
        parent_edge: Dict[int, Optional[int]] = {root_face: None}
        qi = 0
        while qi < len(order):
            fi = order[qi]
            qi += 1
            for fj, eid in dual[fi]:
                if fj not in parent_edge:
                    parent_edge[fj] = eid
                    order.append(fj)
        if len(order) != len(comp_faces):
            raise EmbeddingError("dual co-tree does not span the faces")

        def against(face_idx) -> int:
            n = 0
            for eid, side in faces[face_idx]:
                e = g.edge_by_id[eid]
                traversed_head = e.v if side == 0 else e.u
                if heads[eid] != traversed_head:
                    n += 1
            return n

        for fi in reversed(order[1:]):  # leaves towards the root face
            if against(fi) % 2 == 0:
                eid = parent_edge[fi]
                e = g.edge_by_id[eid]
                heads[eid] = e.u if heads[eid] == e.v else e.v
    return OrientedGraph(g, heads)


def check_flat_orientation(og: OrientedGraph) -> FlatReport:
    g = og.graph
    faces = g.assert_valid_embedding()
    face_of_dart = {}
    for fi, f in enumerate(faces):
        for d in f:
            face_of_dart[d] = fi
    comp_of = {}
    for ci, comp in enumerate(g.components()):
        for v in comp:
            comp_of[v] = ci
    reports = []
    evens_per_comp: Dict[int, int] = {}
    for f in faces:
        n = 0
        for eid, side in f:
            e = g.edge_by_id[eid]
            traversed_head = e.v if side == 0 else e.u
            if og.heads[eid] != traversed_head:
                n += 1
        ok = n % 2 == 1
        reports.append(FaceReport(len(f), n, ok))
        if not ok:
            ci = comp_of[g.dart_tail(f[0])]
            evens_per_comp[ci] = evens_per_comp.get(ci, 0) + 1
    flat = all(k <= 1 for k in evens_per_comp.values())
    return FlatReport(tuple(reports), flat)


def bipartite_matrix(sg: SignedGraph) -> Optional[ExactMatrix]:
    """Signed bipartite adjacency matrix; None signals zero matchings
    (unequal color classes make the matrix non-square)."""
    g = sg.graph
    coloring = two_coloring(g)
    if coloring is None:
        raise ValueError("bipartite matrix of a non-bipartite graph")
    blk, wht = coloring
    if g.vertices and min(map(str, g.vertices)) not in set(map(str, blk)):
        blk, wht = wht, blk
    rows = sorted(blk, key=str)
    cols = sorted(wht, key=str)
    if len(rows) != len(cols):
        return None
    ri = {v: i for i, v in enumerate(rows)}
    ci = {v: i for i, v in enumerate(cols)}
    poly = any(isinstance(e.weight, QPoly) for e in g.edges)
    zero = QPoly() if poly else 0
    m = [[zero for _ in cols] for _ in rows]
    for e in g.edges:
        r, c = (e.u, e.v) if e.u in ri else (e.v, e.u)
        m[ri[r]][ci[c]] = m[ri[r]][ci[c]] + sg.signs[e.eid] * e.weight
    return ExactMatrix.from_rows(m, tuple(rows), tuple(cols))


def unsigned_bipartite_matrix(g: PlanarMultigraph) -> Optional[ExactMatrix]:
    return bipartite_matrix(SignedGraph(g, {e.eid: 1 for e in g.edges}))


def skew_matrix(og: OrientedGraph) -> ExactMatrix:
    """Antisymmetric incidence matrix: entry (i,j) sums w over edges i->j
    minus w over edges j->i."""
    g = og.graph
    vs = sorted(g.vertices, key=str)
    idx = {v: i for i, v in enumerate(vs)}
    poly = any(isinstance(e.weight, QPoly) for e in g.edges)
    zero = QPoly() if poly else 0
    m = [[zero for _ in vs] for _ in vs]
    for e in g.edges:
        head = og.heads[e.eid]
        tail = e.u if head == e.v else e.v
        i, j = idx[tail], idx[head]
        m[i][j] = m[i][j] + e.weight
        m[j][i] = m[j][i] - e.weight
    return ExactMatrix.from_rows(m, tuple(vs), tuple(vs))


def symmetric_matrix(g: PlanarMultigraph) -> ExactMatrix:
    """Plain symmetric weighted adjacency matrix (Hafnian oracle input)."""
    vs = sorted(g.vertices, key=str)
    idx = {v: i for i, v in enumerate(vs)}
    poly = any(isinstance(e.weight, QPoly) for e in g.edges)
    zero = QPoly() if poly else 0
    m = [[zero for _ in vs] for _ in vs]
    for e in g.edges:
        i, j = idx[e.u], idx[e.v]
        m[i][j] = m[i][j] + e.weight
        m[j][i] = m[j][i] + e.weight
    return ExactMatrix.from_rows(m, tuple(vs), tuple(vs))


def weighted_matching_sum(g: PlanarMultigraph):
    """Total weight of perfect matchings via flat signing/orientation.

    Bipartite-flagged graphs go through the determinant; everything else
    through the Pfaffian.  Connected components multiply.
    """
    poly = any(isinstance(e.weight, QPoly) for e in g.edges)
    total = QPoly.const(1) if poly else 1
    for comp in g.components():
        if len(comp) % 2:
            return QPoly() if poly else 0
        if len(comp) == 0:
            continue
        sub = g.subgraph(comp)
        if sub.n_edges == 0:
            return QPoly() if poly else 0
        if g.bipartition is not None:
            m = bipartite_matrix(flat_signing(sub))
            if m is None:
                return QPoly() if poly else 0
            total = total * det(m)
        else:
            total = total * pfaffian_abs(skew_matrix(flat_orientation(sub)))
    if isinstance(total, QPoly):
        total = total.sign_normalized()
    return total
