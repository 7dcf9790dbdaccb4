import itertools
import random

import pytest

from streamnd import (
    ConnectivityMode,
    Graph,
    build_spqr,
    canonical_form,
    enumerate_two_cuts,
    find_separation_pair,
    remerged_edges,
    split,
    to_debug_lines,
)
from streamnd.spqr import REAL, VIRTUAL

from conftest import connected_after_removal, random_two_connected

V = ConnectivityMode.VERTEX


def cycle(n):
    return Graph.build(n, [(i, (i + 1) % n) for i in range(n)])


K4 = Graph.build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])

# the worked SPQR figure: a dipole hub {0,1} carrying two short cycles and a
# longer cycle whose far side opens into a 3-connected block (K33 minus an edge)
FIG_EDGES = [
    (0, 2), (2, 1),
    (0, 3), (3, 1),
    (0, 4), (5, 1),
    (4, 7), (4, 9), (6, 5), (6, 7), (6, 9), (8, 5), (8, 7), (8, 9),
]
FIG = Graph.build(10, FIG_EDGES)


def brute_two_cuts(g):
    cuts = set()
    for a, b in itertools.combinations(range(g.n), 2):
        if not connected_after_removal(g, {a, b}):
            cuts.add(frozenset((a, b)))
    return cuts


def test_separation_pair_none_for_k4():
    assert find_separation_pair(K4) is None


def test_separation_pair_two_triangles():
    g = Graph.build(4, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 1)])
    a, b, classes = find_separation_pair(g)
    assert (a, b) == (0, 1)
    assert sorted(sorted(c) for c in classes) == [[0, 1], [2, 3], [4]]


def test_separation_pair_rejects_low_connectivity():
    with pytest.raises(ValueError):
        find_separation_pair(Graph.build(3, [(0, 1), (1, 2)]))


def test_separation_pair_classes_partition_random():
    from streamnd.graph import pair_connectivity

    for seed in range(10):
        g = random_two_connected(seed, 6 + seed % 3)
        hit = find_separation_pair(g)
        if hit is None:
            continue
        a, b, classes = hit
        ids = sorted(i for cls in classes for i in cls)
        assert ids == list(range(len(g.edges)))  # exact partition
        # removing the pair separates distinct classes (or they are parallels)
        assert not connected_after_removal(g, {a, b}) or any(
            {g.edges[i][0], g.edges[i][1]} == {a, b} for i in classes[-1]
        )


def test_split_cycle_into_triangles():
    c4 = cycle(4)
    a, b, classes = find_separation_pair(c4)
    g1, g2, = split(c4, (a, b), classes[0])
    assert len(g1.edges) + len(g2.edges) == len(c4.edges) + 2
    tri1 = {x for u, v, _ in g1.edges for x in (u, v)}
    tri2 = {x for u, v, _ in g2.edges for x in (u, v)}
    assert len(tri1) == len(tri2) == 3


def test_split_rules_enforced():
    c4 = cycle(4)
    with pytest.raises(ValueError):
        split(c4, (0, 2), [0])  # single-edge side
    tri = cycle(3)
    with pytest.raises(ValueError):
        split(tri, (0, 1), [0, 1])  # too few edges overall


def test_split_parts_stay_two_connected():
    from streamnd.graph import pair_connectivity

    for seed in range(8):
        g = random_two_connected(seed + 50, 7)
        hit = find_separation_pair(g)
        if hit is None:
            continue
        a, b, classes = hit
        side = classes[0] if len(classes[0]) >= 2 else classes[1]
        g1, g2 = split(g, (a, b), side)
        for part in (g1, g2):
            touched = sorted({x for u, v, _ in part.edges for x in (u, v)})
            for x, y in itertools.combinations(touched, 2):
                assert pair_connectivity(part, x, y, V) >= 2


def test_cycle_collapses_to_single_s_node():
    for n in (3, 4, 6, 9):
        tree = build_spqr(cycle(n))
        assert [node.kind for node in tree.nodes] == ["S"]
        assert len(tree.nodes[0].vertices) == n


def test_k4_is_single_r_node():
    tree = build_spqr(K4)
    assert [node.kind for node in tree.nodes] == ["R"]


def test_figure_graph_node_kinds_and_skeletons():
    tree = build_spqr(FIG)
    assert sorted(node.kind for node in tree.nodes) == ["P", "R", "S", "S", "S"]
    by_kind = {}
    for node in tree.nodes:
        by_kind.setdefault(node.kind, []).append(node)
    assert by_kind["P"][0].vertices == frozenset({0, 1})
    assert by_kind["R"][0].vertices == frozenset({4, 5, 6, 7, 8, 9})
    s_vertex_sets = sorted(sorted(node.vertices) for node in by_kind["S"])
    assert s_vertex_sets == [[0, 1, 2], [0, 1, 3], [0, 1, 4, 5]]
    # every copy set of a vertex spans a connected piece of the tree with a
    # unique highest node
    assert tree.h_map[0] == tree.h_map[1]
    assert tree.nodes[tree.h_map[4]].kind in "SR"


def test_build_rejects_bad_inputs():
    with pytest.raises(ValueError):
        build_spqr(Graph.build(3, [(0, 1), (1, 2)]))
    with pytest.raises(ValueError):
        build_spqr(Graph.build(4, [(0, 1), (0, 1), (1, 2), (2, 3), (3, 0)]))


def test_two_cuts_examples():
    assert enumerate_two_cuts(build_spqr(cycle(5))) == {
        frozenset(p) for p in ((0, 2), (0, 3), (1, 3), (1, 4), (2, 4))
    }
    assert enumerate_two_cuts(build_spqr(K4)) == set()


def test_two_cuts_match_brute_force():
    for seed in range(40):
        g = random_two_connected(seed, 5 + seed % 5)
        tree = build_spqr(g)
        assert enumerate_two_cuts(tree) == brute_two_cuts(g), seed


def test_structure_invariants_on_random_graphs():
    for seed in range(25):
        g = random_two_connected(seed + 200, 5 + seed % 5)
        tree = build_spqr(g)
        # real edges: each input edge in exactly one skeleton
        real_refs = [e.ref for node in tree.nodes for e in node.edges if e.kind == REAL]
        assert sorted(real_refs) == list(range(len(g.edges)))
        # virtual edges: each in exactly two skeletons, tied to one tree edge
        virt_refs = [e.ref for node in tree.nodes for e in node.edges if e.kind == VIRTUAL]
        assert sorted(set(virt_refs)) == sorted(vid for _, _, vid in tree.tree_edges)
        assert all(virt_refs.count(vid) == 2 for vid in set(virt_refs))
        # size bound and remerge identity
        assert tree.skeleton_edge_total() <= 3 * len(g.edges) - 6
        assert remerged_edges(tree) == sorted(
            (min(u, v), max(u, v)) for u, v, _ in g.edges
        )
        # no adjacent S-S or P-P survived postprocessing
        for x, y, _ in tree.tree_edges:
            kx, ky = tree.nodes[x].kind, tree.nodes[y].kind
            assert not (kx == ky and kx in "SP")
        # node classification law
        for node in tree.nodes:
            if node.kind == "P":
                assert len(node.vertices) == 2 and len(node.edges) >= 3
            elif node.kind == "S":
                order, edges = node.cycle_order()
                assert len(order) == len(node.vertices) == len(edges)
            else:
                skel = Graph.build(
                    g.n, [(e.u, e.v) for e in node.edges]
                )
                touched = sorted(node.vertices)
                assert len(touched) >= 4
                from streamnd.graph import pair_connectivity

                for a, b in itertools.combinations(touched, 2):
                    assert pair_connectivity(skel, a, b, V) >= 3
        # copies of a vertex form a connected subtree with a unique top
        for x, nids in tree.nodes_of_vertex.items():
            tops = [nid for nid in nids if tree.parent[nid] not in nids or nid == tree.root]
            assert len(tops) == 1
            assert tops[0] == tree.h_map[x]


def test_canonical_form_is_order_insensitive():
    g = random_two_connected(7, 8)
    shuffled = list(g.edges)
    random.Random(1).shuffle(shuffled)
    other = Graph.build(g.n, shuffled)
    assert canonical_form(build_spqr(g)) == canonical_form(build_spqr(other))


def test_debug_serializer_shape():
    lines = to_debug_lines(build_spqr(FIG))
    assert len(lines) == 5
    for line in lines:
        head, reals, virts = line.split(" | ")
        nid, kind, verts = head.split(" ")
        assert kind in "SPR"
        assert all("-" in item for item in reals.split(",") if item)
