from fractions import Fraction

import pytest

from streamnd import (
    BucketScheme,
    Cap2State,
    ConnectivityMode,
    Family,
    Graph,
    InstanceGenerator,
    RequirementMap,
    brute_optimal,
    build_spqr,
    canonical_form,
    generate,
    is_k_connected,
)
from streamnd.errors import InfeasibleError

V = ConnectivityMode.VERTEX
HALF = Fraction(1, 2)


def cycle(n):
    return Graph.build(n, [(i, (i + 1) % n) for i in range(n)])


def scheme(w=4):
    return BucketScheme(HALF, w)


def test_preprocess_cycle_base():
    state = Cap2State.from_base(cycle(5), scheme())
    assert [n.kind for n in state.tree.nodes] == ["S"]
    assert len(state.base.edges) == 5
    data = state._snodes[0]
    assert len(data.points) == 5  # no virtual edges, no dummies
    assert all(pt[0] == "v" for pt in data.points)


def test_preprocess_removes_chord_and_matches_minimal_tree():
    g = Graph.build(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
    state = Cap2State.from_base(g, scheme())
    assert len(state.base.edges) == 4
    stored = state.stored_links()
    assert [(r.u, r.v, r.w, r.synthetic) for r in stored] == [(0, 2, 0, True)]
    assert canonical_form(state.tree) == canonical_form(build_spqr(state.base))


def test_preprocess_minimality_bound():
    for seed in range(10):
        gen = InstanceGenerator(
            seed=seed, family=Family.TWO_CONNECTED, n=8, chords=4, link_count=0,
            ensure_augmentable=False,
        )
        inst = generate(gen)
        state = Cap2State.from_base(inst.base, scheme(8))
        assert len(state.base.edges) <= 2 * inst.base.n - 2
        assert is_k_connected(state.base, 2, V)


def test_preprocess_rejects_bad_base():
    with pytest.raises(ValueError):
        Cap2State.from_base(Graph.build(4, [(0, 1), (1, 2), (2, 3)]), scheme())
    with pytest.raises(ValueError):
        Cap2State.from_base(cycle(3), scheme())


def test_dummy_positions_cover_virtual_edges():
    # C4 with a pendant triangle forces a split and dummies on both sides
    g = Graph.build(5, [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 2)])
    state = Cap2State.from_base(g, scheme())
    for nid, data in state._snodes.items():
        node = state.tree.nodes[nid]
        dummies = {pt[1] for pt in data.points if pt[0] == "d"}
        assert dummies == {e.ref for e in node.virtual_edges()}
        # position map is total over the base vertices
        assert set(data.fmap) == set(range(g.n))


def test_single_s_node_minmax_updates():
    state = Cap2State.from_base(cycle(5), scheme())
    state.process_link(1, 3, 1)
    j = state.scheme.bucket_of(1)
    lo, hi = state._minmax[(0, ("v", 1), j)]
    assert lo[0].triple() == (1, 3, 1) and hi[0].triple() == (1, 3, 1)
    lo, hi = state._minmax[(0, ("v", 3), j)]
    assert lo[0].triple() == (1, 3, 1)


def test_minmax_tie_keeps_incumbent():
    state = Cap2State.from_base(cycle(5), scheme())
    state.process_link(1, 3, 1)
    state.process_link(3, 1, 1)  # same positions on the cycle, later arrival
    j = state.scheme.bucket_of(1)
    lo, hi = state._minmax[(0, ("v", 1), j)]
    assert lo[0].lid == hi[0].lid == 0


def test_dict_tie_keeps_incumbent():
    state = Cap2State.from_base(cycle(5), scheme())
    state.process_link(0, 2, 1)
    state.process_link(0, 3, 1)  # same tree node, same lca depth
    j = state.scheme.bucket_of(1)
    assert state._dict[(0, j)][0].lid == 0


def test_finalize_c4_needs_both_diagonals():
    state = Cap2State.from_base(cycle(4), scheme())
    state.process_link(0, 2, 1)
    state.process_link(1, 3, 1)
    res = state.finalize()
    assert sorted(r.triple() for r in res.solution) == [(0, 2, 1), (1, 3, 1)]
    assert res.weight == 2


def test_finalize_k4_base_is_free():
    k4 = Graph.build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    res = Cap2State.from_base(k4, scheme()).finalize()
    assert res.solution == () and res.weight == 0


def test_finalize_infeasible_reports():
    state = Cap2State.from_base(cycle(4), scheme())
    state.process_link(0, 2, 1)
    with pytest.raises(InfeasibleError):
        state.finalize()


def test_sol_from_opt_trivial():
    k4 = Graph.build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    state = Cap2State.from_base(k4, scheme())
    assert state.sol_from_opt([]) == ()


def test_sol_from_opt_c4_diagonals():
    state = Cap2State.from_base(cycle(4), scheme())
    opt = [(0, 2, 1), (1, 3, 1)]
    for link in opt:
        state.process_link(*link)
    sol = state.sol_from_opt(opt)
    aug = Graph.build(4, list(cycle(4).edges) + [r.triple() for r in sol])
    assert is_k_connected(aug, 3, V)


def test_corpus_bounds_and_mirror():
    eps = HALF
    for seed in range(25):
        gen = InstanceGenerator(
            seed=seed, family=Family.TWO_CONNECTED, n=8, chords=2, link_count=3,
            max_links=10,
        )
        inst = generate(gen)
        sch = BucketScheme(eps, max(w for _, _, w in inst.links))
        state = Cap2State.from_base(inst.base, sch)
        for link in inst.links:
            state.process_link(*link)
        res = state.finalize()
        # retention chain: slot count, skeleton size, minimal-base sparsity
        B = sch.bucket_count()
        skel = state.tree.skeleton_edge_total()
        assert len(res.stored) <= 7 * B * skel
        assert skel <= 3 * len(state.base.edges) - 6
        assert len(state.base.edges) <= 2 * inst.base.n - 2
        aug = Graph.build(
            inst.base.n, list(inst.base.edges) + [r.triple() for r in res.solution]
        )
        assert is_k_connected(aug, 3, V)
        opt_ids, opt = brute_optimal(
            inst.base, inst.links, RequirementMap.uniform(inst.base.n, 3), V
        )
        assert res.weight <= (7 + eps) * opt
        sol = state.sol_from_opt([inst.links[i] for i in opt_ids])
        aug = Graph.build(
            inst.base.n, list(inst.base.edges) + [r.triple() for r in sol]
        )
        assert is_k_connected(aug, 3, V)
        # chained ratio: exact solve on the store never loses to the mirror
        assert res.weight <= sum(r.w for r in sol) <= (7 + 6 * eps) * opt
