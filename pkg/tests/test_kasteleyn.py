import random

import pytest

from conftest import graph_from_points, grid_graph, random_planar_bipartite, random_planar_graph, wheel_graph

from ppcount.exactalg import det, hafnian, permanent, pfaffian_abs
from ppcount.hexgrid import build_graph, build_hexagon
from ppcount.kasteleyn import (
    SignedGraph,
    bipartite_matrix,
    check_flat_orientation,
    check_flat_signing,
    flat_orientation,
    flat_signing,
    skew_matrix,
    symmetric_matrix,
    unsigned_bipartite_matrix,
    weighted_matching_sum,
)
from ppcount.oracle import count_perfect_matchings
from ppcount.symmetry import CLASSES, quotient_graph


def cycle_graph(k, bipartite=True):
    import math

    points = {i: (math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k)) for i in range(k)}
    pairs = [(i, (i + 1) % k) for i in range(k)]
    bip = None
    if bipartite and k % 2 == 0:
        bip = (frozenset(range(0, k, 2)), frozenset(range(1, k, 2)))
    return graph_from_points(points, pairs, bipartition=bip)


def test_all_positive_six_cycle_is_flat():
    g = cycle_graph(6)
    report = check_flat_signing(SignedGraph(g, {e.eid: 1 for e in g.edges}))
    assert report.flat


def test_all_positive_four_cycle_is_not_flat():
    g = cycle_graph(4)
    report = check_flat_signing(SignedGraph(g, {e.eid: 1 for e in g.edges}))
    assert not report.flat
    assert sum(1 for f in report.faces if not f.flat) == 2  # both sides of the square


def test_flat_signing_four_cycle_flips_an_odd_number():
    g = cycle_graph(4)
    sg = flat_signing(g)
    assert check_flat_signing(sg).flat
    assert sum(1 for s in sg.signs.values() if s < 0) in (1, 3)


def test_flat_signing_z_graph_keeps_all_positive():
    # every bounded face is a hexagon, so the trivial signing is already flat
    g = build_graph(build_hexagon(2, 2, 2))
    sg = flat_signing(g)
    assert all(s == 1 for s in sg.signs.values())
    assert check_flat_signing(sg).flat


def test_flat_signing_quotient_with_doubled_edge():
    q = quotient_graph(build_hexagon(2, 2, 2), CLASSES[3])
    sg = flat_signing(q)
    assert check_flat_signing(sg).flat
    m = bipartite_matrix(sg)
    assert det(m) == 5


def test_nonflat_face_count_is_even_on_random_bipartite(rng):
    for _ in range(25):
        g = random_planar_bipartite(rng)
        report = check_flat_signing(SignedGraph(g, {e.eid: 1 for e in g.edges}))
        assert sum(1 for f in report.faces if not f.flat) % 2 == 0


def test_det_equals_matching_count_z_graphs():
    for a in range(4):
        for b in range(4):
            for c in range(4):
                g = build_graph(build_hexagon(a, b, c))
                assert weighted_matching_sum(g) == count_perfect_matchings(g)


def test_det_equals_permanent_random_bipartite(rng):
    for _ in range(25):
        g = random_planar_bipartite(rng)
        sg = flat_signing(g)
        m_signed = bipartite_matrix(sg)
        m_plain = unsigned_bipartite_matrix(g)
        brute = count_perfect_matchings(g)
        assert det(m_signed) == permanent(m_plain) == brute


def test_single_edge_orientation():
    g = grid_graph(1, 2, flag_bipartite=False)
    og = flat_orientation(g)
    assert pfaffian_abs(skew_matrix(og)) == 1


def test_six_cycle_orientation():
    g = cycle_graph(6, bipartite=False)
    og = flat_orientation(g)
    assert check_flat_orientation(og).flat
    assert pfaffian_abs(skew_matrix(og)) == 2


def test_odd_path_has_no_matchings():
    from ppcount.kasteleyn import OrientedGraph

    g = grid_graph(1, 3, flag_bipartite=False)
    og = OrientedGraph(g, {e.eid: e.v for e in g.edges})
    assert pfaffian_abs(skew_matrix(og)) == 0  # odd size: zero matchings
    assert hafnian(symmetric_matrix(g)) == 0
    even = skew_matrix(flat_orientation(grid_graph(1, 4, flag_bipartite=False)))
    assert pfaffian_abs(even) == 1


def test_six_cycle_bipartite_matrix():
    g = cycle_graph(6)
    m = unsigned_bipartite_matrix(g)
    assert m.nrows == m.ncols == 3
    assert permanent(m) == 2
    assert det(m) == 2  # the trivial signing is already flat here


def test_wheel_orientations_count_matchings():
    for k in [3, 5, 7]:  # odd wheels are non-bipartite with even vertex count
        g = wheel_graph(k)
        og = flat_orientation(g)
        assert check_flat_orientation(og).flat
        assert pfaffian_abs(skew_matrix(og)) == count_perfect_matchings(g)


def test_pfaffian_counts_on_random_planar(rng):
    for _ in range(25):
        g = random_planar_graph(rng)
        if g.n_vertices % 2:
            continue
        og = flat_orientation(g)
        assert check_flat_orientation(og).flat
        assert pfaffian_abs(skew_matrix(og)) == count_perfect_matchings(g)


def test_hafnian_equals_matching_count(rng):
    for _ in range(10):
        g = random_planar_graph(rng)
        assert hafnian(symmetric_matrix(g)) == count_perfect_matchings(g)


def test_class5_quotient_pfaffian():
    q = quotient_graph(build_hexagon(2, 2, 2), CLASSES[5])
    og = flat_orientation(q)
    assert check_flat_orientation(og).flat
    assert pfaffian_abs(skew_matrix(og)) == 4


def test_quotient_counts_match_formulas_medium():
    # beyond the brute-force range: quotients with gadgets of up to ten
    # attachments, determinants/Pfaffians of ~40x40 exact matrices
    from ppcount.formulas import n_class

    for cid in CLASSES:
        for a in range(6):
            for b in range(6):
                for c in range(6):
                    if not CLASSES[cid].box_fixed((a, b, c)):
                        continue
                    q = quotient_graph(build_hexagon(a, b, c), CLASSES[cid])
                    assert weighted_matching_sum(q) == n_class(cid, (a, b, c)), (
                        cid,
                        (a, b, c),
                    )


def test_pf_squared_equals_det_on_produced_matrices(rng):
    for _ in range(10):
        g = random_planar_graph(rng)
        if g.n_vertices % 2:
            continue
        m = skew_matrix(flat_orientation(g))
        assert pfaffian_abs(m) ** 2 == det(m)


def test_bridged_graph_counts():
    # two squares joined by a bridge: both square faces need a sign flip and
    # the dual path between them must route around the bridge
    points = {
        "a0": (0, 0), "a1": (1, 0), "a2": (1, 1), "a3": (0, 1),
        "b0": (3, 0), "b1": (4, 0), "b2": (4, 1), "b3": (3, 1),
    }
    pairs = [
        ("a0", "a1"), ("a1", "a2"), ("a2", "a3"), ("a3", "a0"),
        ("b0", "b1"), ("b1", "b2"), ("b2", "b3"), ("b3", "b0"),
        ("a1", "b0"),
    ]
    blk = frozenset({"a0", "a2", "b0", "b2"})
    g = graph_from_points(points, pairs, bipartition=(blk, frozenset(set(points) - blk)))
    assert count_perfect_matchings(g) == 4
    sg = flat_signing(g)
    assert check_flat_signing(sg).flat
    assert det(bipartite_matrix(sg)) == 4
    og = flat_orientation(g)
    assert check_flat_orientation(og).flat
    assert pfaffian_abs(skew_matrix(og)) == 4


def test_flat_signing_rejects_bad_inputs():
    with pytest.raises(ValueError):
        flat_signing(wheel_graph(3))  # non-bipartite
    with pytest.raises(ValueError):
        flat_signing(grid_graph(1, 3, flag_bipartite=False))  # odd vertex count


def test_unequal_classes_signal_no_matchings():
    # a path on three vertices: 2 vs 1 color classes
    g = grid_graph(1, 3)
    assert bipartite_matrix(SignedGraph(g, {e.eid: 1 for e in g.edges})) is None
    assert weighted_matching_sum(grid_graph(2, 3)) == count_perfect_matchings(grid_graph(2, 3))
