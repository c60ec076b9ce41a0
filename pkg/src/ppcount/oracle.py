"""Brute-force ground truth: partition enumeration, symmetry filtering,
q-sums, matching enumeration, and the matching <-> partition bijection.

Everything in this module is deliberately naive; it is the independent
reference the formula and determinant routes are checked against.
"""

from __future__ import annotations

from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from .exactalg import QPoly
from .hexgrid import HexRegion, PlanarMultigraph, build_graph
from .symmetry import CLASSES, act_partition

Heights = Tuple[Tuple[int, ...], ...]


class SizeLimitError(ValueError):
    pass


def _rows_at_most(bound: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
    """Weakly decreasing rows r with r[j] <= bound[j], ascending lex order."""
    b = len(bound)

    def rec(j: int, prev: int, acc: List[int]) -> Iterator[Tuple[int, ...]]:
        if j == b:
            yield tuple(acc)
            return
        for v in range(0, min(prev, bound[j]) + 1):
            acc.append(v)
            yield from rec(j + 1, v, acc)
            acc.pop()

    yield from rec(0, bound[0] if b else 0, [])


def enumerate_partitions(a: int, b: int, c: int) -> Iterator[Heights]:
    """Every plane partition in the a x b x c box exactly once, sorted."""
    if a < 0 or b < 0 or c < 0:
        raise ValueError("negative box side")
    if a == 0:
        yield ()
        return
    if b == 0:
        yield ((),) * a
        return

    def rec(i: int, prev: Tuple[int, ...], acc: List[Tuple[int, ...]]):
        if i == a:
            yield tuple(acc)
            return
        for row in _rows_at_most(prev):
            acc.append(row)
            yield from rec(i + 1, row, acc)
            acc.pop()

    yield from rec(0, (c,) * b, [])


def count_partitions(a: int, b: int, c: int) -> int:
    return sum(1 for _ in enumerate_partitions(a, b, c))


def volume(heights: Heights) -> int:
    return sum(sum(r) for r in heights)


def partition_json(heights: Heights) -> str:
    """Height matrix as a JSON array of arrays."""
    import json

    return json.dumps([list(r) for r in heights])


def count_symmetric(class_id: int, a: int, b: int, c: int) -> int:
    """Number of partitions invariant under every generator of the class."""
    cls = CLASSES[class_id]
    box = (a, b, c)
    if not cls.box_fixed(box):
        return 0
    gens = cls.generators
    n = 0
    for pp in enumerate_partitions(a, b, c):
        if all(act_partition(g, pp, box) == pp for g in gens):
            n += 1
    return n


def q_sum(a: int, b: int, c: int) -> QPoly:
    """Sum of q^(volume) over all plane partitions in the box."""
    coeffs = [0] * (a * b * c + 1)
    for pp in enumerate_partitions(a, b, c):
        coeffs[volume(pp)] += 1
    return QPoly(coeffs)


# ---------------------------------------------------------------------------
# matchings
# ---------------------------------------------------------------------------


def enumerate_matchings(
    g: PlanarMultigraph, with_bachelors: bool = False, max_vertices: int = 34
) -> Iterator[FrozenSet[int]]:
    """All (perfect or bachelor-exempt) matchings, as frozensets of edge ids.

    Backtracks on the lowest uncovered non-bachelor vertex.  The bachelorhood
    vertex, when flagged, may be matched to any subset of its edges.
    """
    if g.n_vertices > max_vertices:
        raise SizeLimitError(f"{g.n_vertices} vertices exceeds limit {max_vertices}")
    bach = g.bachelor if with_bachelors else None
    order = sorted((v for v in g.vertices if v != bach), key=str)
    covered: set = set()
    chosen: List[int] = []

    def rec(pos: int) -> Iterator[FrozenSet[int]]:
        while pos < len(order) and order[pos] in covered:
            pos += 1
        if pos == len(order):
            yield frozenset(chosen)
            return
        v = order[pos]
        for e in g.edges_at(v):
            if e.u == e.v:
                continue
            w = g.other_end(e, v)
            if w == bach:
                covered.add(v)
                chosen.append(e.eid)
                yield from rec(pos + 1)
                chosen.pop()
                covered.discard(v)
            elif w not in covered:
                covered.update((v, w))
                chosen.append(e.eid)
                yield from rec(pos + 1)
                chosen.pop()
                covered.difference_update((v, w))

    yield from rec(0)


def count_perfect_matchings(g: PlanarMultigraph) -> int:
    """Fast bitmask backtracking count of perfect matchings (no bachelor)."""
    n = g.n_vertices
    if n == 0:
        return 1
    if n % 2:
        return 0
    vs = sorted(g.vertices, key=str)
    idx = {v: i for i, v in enumerate(vs)}
    adj = [0] * n
    mult: Dict[Tuple[int, int], int] = {}
    for e in g.edges:
        if e.u == e.v:
            continue
        i, j = idx[e.u], idx[e.v]
        adj[i] |= 1 << j
        adj[j] |= 1 << i
        key = (min(i, j), max(i, j))
        mult[key] = mult.get(key, 0) + 1

    full = (1 << n) - 1

    def rec(uncov: int) -> int:
        if uncov == 0:
            return 1
        v = (uncov & -uncov).bit_length() - 1
        total = 0
        m = adj[v] & uncov
        rest = uncov & ~(1 << v)
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            total += mult[(min(v, u), max(v, u))] * rec(rest & ~(1 << u))
        return total

    return rec(full)


def weighted_matching_sum_brute(g: PlanarMultigraph, max_vertices: int = 34):
    """Sum of edge-weight products over perfect matchings (oracle route)."""
    poly = any(isinstance(e.weight, QPoly) for e in g.edges)
    total = QPoly() if poly else 0
    for m in enumerate_matchings(g, max_vertices=max_vertices):
        w = QPoly.const(1) if poly else 1
        for eid in m:
            w = w * g.edge_by_id[eid].weight
        total = total + w
    return total


# ---------------------------------------------------------------------------
# matching -> plane partition
# ---------------------------------------------------------------------------


def matching_to_partition(
    matching, region: HexRegion, graph: Optional[PlanarMultigraph] = None
) -> Heights:
    """Heights of the plane partition drawn by a perfect matching of Z(a,b,c).

    The edges whose z-coordinate changes are the column-top lozenges; within
    the diagonal d = a-1-z they are assigned to the box columns (i, i-d) in
    order of decreasing x, and the height follows from x = b-1-j+k.
    """
    g = graph if graph is not None else build_graph(region)
    a, b, c = region.abc
    eids = set(matching)
    covered: set = set()
    for eid in eids:
        e = g.edge_by_id[eid]
        if e.u in covered or e.v in covered:
            raise ValueError("edge set is not a matching")
        covered.update((e.u, e.v))
    if len(covered) != len(region.triangles):
        raise ValueError("matching is not perfect")

    by_diag: Dict[int, List[int]] = {}
    for eid in eids:
        e = g.edge_by_id[eid]
        if e.u.z != e.v.z:  # column-top class
            d = a - 1 - e.u.z
            by_diag.setdefault(d, []).append(e.u.x)
    heights = [[0] * b for _ in range(a)]
    tops = 0
    for d, xs in by_diag.items():
        xs.sort(reverse=True)
        i0 = max(d, 0)
        cols = [(i, i - d) for i in range(i0, min(a, b + d))]
        if len(cols) != len(xs):
            raise ValueError("column-top lozenges do not match the diagonal")
        for (i, j), x in zip(cols, xs):
            k = x - b + 1 + j
            if not 0 <= k <= c:
                raise ValueError("reconstructed height out of range")
            heights[i][j] = k
            tops += 1
    if tops != a * b:
        raise ValueError("wrong number of column-top lozenges")
    out = tuple(tuple(r) for r in heights)
    for i in range(a):
        for j in range(b):
            v = out[i][j]
            if (j + 1 < b and out[i][j + 1] > v) or (i + 1 < a and out[i + 1][j] > v):
                raise ValueError("reconstructed heights are not monotone")
    return out


def hexagon_flip_moves(g: PlanarMultigraph) -> List[Tuple[FrozenSet[int], FrozenSet[int]]]:
    """Pairs of alternating edge triples around six-sided faces (one move each)."""
    faces = g.assert_valid_embedding()
    moves = []
    for f in faces:
        if len(f) != 6:
            continue
        ids = [d[0] for d in f]
        s0, s1 = frozenset(ids[0::2]), frozenset(ids[1::2])
        if len(s0) == 3 and len(s1) == 3:
            moves.append((s0, s1))
    return moves
