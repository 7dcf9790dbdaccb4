import itertools
from fractions import Fraction

import pytest

from streamnd import (
    FaultMode,
    FtConfig,
    FtSpannerState,
    Graph,
    TestKind,
    extract_disjoint_paths,
    ft_test_exact,
    ft_test_peeling_eft,
    ft_test_sampled_vft,
    verify_ft_spanner,
)
from streamnd.errors import ContractViolationError, ResourceLimitError
from streamnd.spanner import HopGraph

from conftest import seeded_graph

VF, EF = FaultMode.VERTEX, FaultMode.EDGE
THIRD = Fraction(1, 3)


def _naive_exact(g, u, v, f, threshold, mode):
    """Independent re-implementation: all fault subsets up to size f, checked
    in a different enumeration order with a plain BFS."""
    adj = [[] for _ in range(g.n)]
    for eid, (a, b, _) in enumerate(g.edges):
        adj[a].append((b, eid))
        adj[b].append((a, eid))

    def dist_ok(banned_v, banned_e):
        frontier, seen = {u}, {u}
        for _ in range(threshold):
            frontier = {
                y
                for x in frontier
                for y, eid in adj[x]
                if eid not in banned_e and y not in banned_v and y not in seen
            }
            if v in frontier:
                return True
            seen |= frontier
        return False

    if mode is VF:
        pool = [x for x in range(g.n) if x not in (u, v)]
    else:
        pool = list(range(len(g.edges)))
    for size in range(min(f, len(pool)), -1, -1):
        for fault in itertools.combinations(pool, size):
            banned_v = set(fault) if mode is VF else set()
            banned_e = set(fault) if mode is EF else set()
            if not dist_ok(banned_v, banned_e):
                return True
    return False


def _hop(edges, n):
    h = HopGraph(n)
    for u, v in edges:
        h.add_edge(u, v)
    return h


def test_exact_path_with_cut_vertex():
    h = _hop([(0, 2), (2, 1)], 3)
    assert ft_test_exact(h, 0, 1, 1, 1, VF)


def test_exact_pigeonhole_refutation():
    # f+1 = 3 vertex-disjoint 2-hop paths: no 2-vertex fault can stretch 0-1
    edges = [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]
    h = _hop(edges, 5)
    assert not ft_test_exact(h, 0, 1, 2, 2, VF)
    assert not ft_test_peeling_eft(h, 0, 1, 2, 2)


def test_exact_agrees_with_independent_enumeration():
    for seed in range(25):
        g = seeded_graph(seed, 5 + seed % 4, p=0.5)
        h = HopGraph.of(g)
        plain = Graph.build(g.n, [(u, v) for u, v, _ in g.edges])
        for mode in (VF, EF):
            for f in (0, 1, 2):
                for threshold in (1, 3):
                    got = ft_test_exact(h, 0, g.n - 1, f, threshold, mode)
                    want = _naive_exact(plain, 0, g.n - 1, f, threshold, mode)
                    assert got == want, (seed, mode, f, threshold)


def test_sampled_trivial_cases():
    h = _hop([(0, 1)], 2)
    assert not ft_test_sampled_vft(h, 0, 1, 2, 3, rng_seed=5)
    far = _hop([], 2)
    assert ft_test_sampled_vft(far, 0, 1, 2, 3, rng_seed=5)


def test_sampled_builders_usually_verify():
    passes = 0
    for seed in range(100):
        g = seeded_graph(seed, 7 + seed % 4, p=0.6)
        f = 1 + seed % 2
        cfg = FtConfig(f=f, t=2, mode=VF, eps=THIRD, test_kind=TestKind.SAMPLED_VFT, seed=seed)
        state = FtSpannerState(g.n, cfg, 1)
        for u, v, w in g.edges:
            state.process_edge(u, v, w)
        if verify_ft_spanner(g, state.kept_ids(), cfg):
            passes += 1
    assert passes >= 95, passes


def test_peeling_trivial_cases():
    h = _hop([], 2)
    assert ft_test_peeling_eft(h, 0, 1, 2, 3)


def test_peeling_builders_always_verify():
    for seed in range(30):
        g = seeded_graph(seed + 50, 8, p=0.6)
        cfg = FtConfig(f=2, t=2, mode=EF, eps=THIRD, test_kind=TestKind.PEELING_EFT)
        state = FtSpannerState(g.n, cfg, 1)
        for u, v, w in g.edges:
            state.process_edge(u, v, w)
        assert verify_ft_spanner(g, state.kept_ids(), cfg)


def test_config_validation():
    with pytest.raises(ValueError):
        FtConfig(f=-1, t=2, mode=VF)
    with pytest.raises(ValueError):
        FtConfig(f=1, t=0, mode=VF)
    with pytest.raises(ValueError):
        FtConfig(f=1, t=2, mode=EF, test_kind=TestKind.SAMPLED_VFT)
    with pytest.raises(ValueError):
        FtConfig(f=1, t=2, mode=VF, test_kind=TestKind.PEELING_EFT)
    with pytest.raises(ValueError):
        FtSpannerState(40, FtConfig(f=5, t=2, mode=VF), 1)


def test_process_edge_threshold_one_is_plain_adjacency():
    cfg = FtConfig(f=0, t=1, mode=VF, eps=1, test_kind=TestKind.EXACT)
    state = FtSpannerState(3, cfg, 5)
    assert state.process_edge(0, 1, 1)
    assert not state.process_edge(0, 1, 1)  # same bucket, already adjacent
    assert state.process_edge(0, 1, 4)  # different bucket keeps its own copy


def test_process_edge_cycle_cases():
    cfg = FtConfig(f=0, t=2, mode=VF, eps=THIRD, test_kind=TestKind.EXACT)
    state = FtSpannerState(4, cfg, 1)
    kept = [state.process_edge(*e) for e in [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]]
    assert kept == [True, True, True, False]

    cfg = FtConfig(f=1, t=2, mode=VF, eps=THIRD, test_kind=TestKind.EXACT)
    state = FtSpannerState(4, cfg, 1)
    kept = [state.process_edge(*e) for e in [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]]
    assert kept == [True, True, True, True]


def test_extraction_single_path():
    h = _hop([(0, 1), (1, 2), (2, 3)], 4)
    paths = extract_disjoint_paths(h, 0, 3, 1, 3)
    assert paths == [[0, 1, 2, 3]]
    with pytest.raises(ContractViolationError):
        extract_disjoint_paths(h, 0, 3, 2, 3)


def test_extraction_after_rejection():
    cfg = FtConfig(f=0, t=2, mode=VF, eps=THIRD, test_kind=TestKind.EXACT)
    state = FtSpannerState(4, cfg, 1)
    for e in [(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)]:
        state.process_edge(*e)
    rec = state.rejected[0]
    paths = extract_disjoint_paths(state.buckets[rec.bucket], rec.u, rec.v, 1, 3)
    assert len(paths) == 1 and len(paths[0]) - 1 <= 3


def test_rejections_certify_disjoint_paths():
    # per-bucket soundness: every rejection leaves floor(f/(2t-2))+1 disjoint
    # short paths in its bucket
    for seed in range(10):
        g = seeded_graph(seed + 500, 9, p=0.85)
        for f in (1, 2):
            cfg = FtConfig(f=f, t=2, mode=VF, eps=THIRD, test_kind=TestKind.EXACT)
            state = FtSpannerState(g.n, cfg, 1)
            for u, v, w in g.edges:
                state.process_edge(u, v, w)
            want = f // 2 + 1
            for rec in state.rejected:
                paths = extract_disjoint_paths(
                    state.buckets[rec.bucket], rec.u, rec.v, want, 3
                )
                assert all(len(p) - 1 <= 3 for p in paths)


def test_verify_identity_and_broken_spanner():
    g = Graph.build(4, [(0, 1, 2), (1, 2, 1), (2, 3, 3), (0, 3, 9)])
    cfg = FtConfig(f=1, t=2, mode=VF, eps=THIRD)
    assert verify_ft_spanner(g, range(4), cfg)
    # dropping the bridge-ish heavy edge breaks stretch for f=0 already
    bridge = Graph.build(2, [(0, 1, 1)])
    cfg0 = FtConfig(f=0, t=2, mode=VF, eps=THIRD)
    assert not verify_ft_spanner(bridge, [], cfg0)


def test_verify_guard():
    g = seeded_graph(1, 30, p=0.3)
    cfg = FtConfig(f=4, t=2, mode=VF, eps=THIRD)
    with pytest.raises(ResourceLimitError):
        verify_ft_spanner(g, range(len(g.edges)), cfg)


def test_exact_built_spanners_always_verify():
    for seed in range(15):
        g = seeded_graph(seed + 900, 8, p=0.7, wmax=6)
        for mode in (VF, EF):
            cfg = FtConfig(f=2, t=2, mode=mode, eps=THIRD, test_kind=TestKind.EXACT)
            state = FtSpannerState(g.n, cfg, 6)
            for u, v, w in g.edges:
                state.process_edge(u, v, w)
            assert verify_ft_spanner(g, state.kept_ids(), cfg), (seed, mode)
            # bookkeeping: the counter equals the bucket contents, and every
            # bucket holds only edges of its own weight class
            assert state.stored_edge_count == sum(
                len(h.edges) for h in state.buckets.values()
            )
            for rec in state.kept:
                assert state.scheme.bucket_of(rec.w) == rec.bucket
