"""Greedy fault-tolerant spanners built one edge at a time.

Each weight bucket holds an independent unweighted spanner: an arriving edge
is kept iff removing some small set of vertices (or edges) from the bucket
spanner would push its endpoints further apart than the hop threshold 2t-1.
Three addition tests are provided: an exhaustive one, a sampled polynomial
one for vertex faults, and a path-peeling one for edge faults.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import comb

from .errors import ContractViolationError, ResourceLimitError
from .graph import Graph
from .streams import BucketScheme


class FaultMode(Enum):
    VERTEX = "vertex"
    EDGE = "edge"


class TestKind(Enum):
    __test__ = False  # not a pytest collection target

    EXACT = "exact"
    SAMPLED_VFT = "sampled"
    PEELING_EFT = "peeling"


SAMPLED_VFT_SAMPLE_FACTOR = 16  # samples = 16 * ceil(log2 n)
SAMPLED_VFT_ACCEPT_NUM = 1  # accept when >= 1/4 of samples look far
SAMPLED_VFT_ACCEPT_DEN = 4


@dataclass(frozen=True)
class FtConfig:
    """Parameters of a fault-tolerant spanner build.

    The per-bucket hop threshold is 2t-1; with bucketing eps the whole
    spanner has weighted stretch (1+eps)(2t-1).  test_kind None lets the
    builder pick: exhaustive for f <= 3 or n <= 12, otherwise the caller must
    choose one of the polynomial tests explicitly.
    """

    f: int
    t: int
    mode: FaultMode
    eps: object = Fraction(1, 3)
    test_kind: TestKind | None = None
    seed: int = 0

    def __post_init__(self):
        if self.f < 0:
            raise ValueError("fault budget f must be nonnegative")
        if self.t < 1:
            raise ValueError("stretch parameter t must be at least 1")
        if self.test_kind is TestKind.SAMPLED_VFT and self.mode is not FaultMode.VERTEX:
            raise ValueError("the sampled test applies to vertex faults only")
        if self.test_kind is TestKind.PEELING_EFT and self.mode is not FaultMode.EDGE:
            raise ValueError("the peeling test applies to edge faults only")
        if Fraction(self.eps) <= 0:
            raise ValueError("eps must be positive")

    @property
    def threshold(self):
        return 2 * self.t - 1


class HopGraph:
    """Unweighted multigraph used for hop-distance queries inside buckets."""

    def __init__(self, n):
        self.n = n
        self.edges = []
        self.adj = [[] for _ in range(n)]

    @staticmethod
    def of(g):
        if isinstance(g, HopGraph):
            return g
        h = HopGraph(g.n)
        for u, v, *_ in g.edges:
            h.add_edge(u, v)
        return h

    def add_edge(self, u, v):
        eid = len(self.edges)
        self.edges.append((u, v))
        self.adj[u].append((v, eid))
        self.adj[v].append((u, eid))
        return eid

    def within_hops(self, u, v, limit, banned_vertices=(), banned_edges=()):
        """True iff a u-v path of at most `limit` edges avoids the bans."""
        bv = set(banned_vertices)
        be = set(banned_edges)
        if u in bv or v in bv:
            return False
        if u == v:
            return True
        frontier = {u}
        seen = {u}
        for _ in range(limit):
            nxt = set()
            for x in frontier:
                for y, eid in self.adj[x]:
                    if eid in be or y in bv or y in seen:
                        continue
                    if y == v:
                        return True
                    nxt.add(y)
            seen |= nxt
            frontier = nxt
            if not frontier:
                return False
        return False

    def short_path(self, u, v, limit, banned_vertices=(), banned_edges=()):
        """A shortest u-v path within the hop limit, as (vertices, edge ids)."""
        bv = set(banned_vertices)
        be = set(banned_edges)
        if u in bv or v in bv:
            return None
        parent = {u: None}
        frontier = [u]
        for _ in range(limit):
            nxt = []
            for x in frontier:
                for y, eid in self.adj[x]:
                    if eid in be or y in bv or y in parent:
                        continue
                    parent[y] = (x, eid)
                    if y == v:
                        verts, eids = [v], []
                        z = v
                        while parent[z] is not None:
                            pz, peid = parent[z]
                            eids.append(peid)
                            verts.append(pz)
                            z = pz
                        return verts[::-1], eids[::-1]
                    nxt.append(y)
            frontier = nxt
            if not frontier:
                return None
        return None


def _bfs_hops(h, src):
    dist = [None] * h.n
    dist[src] = 0
    queue = [src]
    while queue:
        nxt = []
        for x in queue:
            for y, _ in h.adj[x]:
                if dist[y] is None:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        queue = nxt
    return dist


def _useful_candidates(h, u, v, threshold, mode):
    """Fault candidates that lie on some u-v path of at most `threshold` hops.

    Faulting anything else can never raise the u-v distance past the
    threshold, so restricting the exhaustive search to these candidates is
    lossless.
    """
    du = _bfs_hops(h, u)
    dv = _bfs_hops(h, v)
    if mode is FaultMode.VERTEX:
        return [
            x
            for x in range(h.n)
            if x not in (u, v)
            and du[x] is not None
            and dv[x] is not None
            and du[x] + dv[x] <= threshold
        ]
    out = []
    for eid, (a, b) in enumerate(h.edges):
        if du[a] is None or du[b] is None or dv[a] is None or dv[b] is None:
            continue
        if min(du[a] + 1 + dv[b], du[b] + 1 + dv[a]) <= threshold:
            out.append(eid)
    return out


def _greedy_disjoint_short_paths(h, u, v, threshold, mode, want):
    """Peel up to `want` mutually disjoint short u-v paths; returns the count."""
    banned_v = set()
    banned_e = set()
    found = 0
    while found < want:
        hit = h.short_path(u, v, threshold, banned_vertices=banned_v, banned_edges=banned_e)
        if hit is None:
            return found
        verts, eids = hit
        found += 1
        if mode is FaultMode.VERTEX:
            banned_v.update(verts[1:-1])
            banned_e.update(eids)  # blocks reuse of a parallel (u,v) edge
        else:
            banned_e.update(eids)
    return found


def ft_test_exact(h, u, v, f, t_threshold, mode):
    """Exhaustive addition test: is there a fault set of size at most f whose
    removal pushes u and v more than t_threshold hops apart?"""
    h = HopGraph.of(h)
    if not h.within_hops(u, v, t_threshold):
        return True
    if f == 0:
        return False
    candidates = _useful_candidates(h, u, v, t_threshold, mode)
    f_eff = min(f, len(candidates))
    if f_eff == 0:
        return False
    # pigeonhole shortcut: f_eff+1 disjoint short paths survive any fault set
    if _greedy_disjoint_short_paths(h, u, v, t_threshold, mode, f_eff + 1) > f_eff:
        return False
    if mode is FaultMode.VERTEX:
        for fault in combinations(candidates, f_eff):
            if not h.within_hops(u, v, t_threshold, banned_vertices=fault):
                return True
    else:
        for fault in combinations(candidates, f_eff):
            if not h.within_hops(u, v, t_threshold, banned_edges=fault):
                return True
    return False


def ft_test_sampled_vft(h, u, v, f, t_threshold, rng_seed):
    """Randomized vertex-fault test: sample induced subgraphs keeping u, v and
    each other vertex with probability 1/(2f); report far if at least a
    quarter of the samples have distance above the threshold."""
    h = HopGraph.of(h)
    if f == 0:
        return not h.within_hops(u, v, t_threshold)
    rng = random.Random(rng_seed)
    n = h.n
    samples = SAMPLED_VFT_SAMPLE_FACTOR * max(1, (n - 1).bit_length())
    keep_p = 1.0 / (2 * f)
    far = 0
    for _ in range(samples):
        banned = [
            x for x in range(n) if x != u and x != v and rng.random() >= keep_p
        ]
        if not h.within_hops(u, v, t_threshold, banned_vertices=banned):
            far += 1
    return far * SAMPLED_VFT_ACCEPT_DEN >= samples * SAMPLED_VFT_ACCEPT_NUM


def ft_test_peeling_eft(h, u, v, f, t_threshold):
    """Edge-fault test by path peeling: repeatedly find a short u-v path and
    ban its edges; keep the edge iff some attempt (out of f+1) finds none."""
    h = HopGraph.of(h)
    banned = set()
    for _ in range(f + 1):
        hit = h.short_path(u, v, t_threshold, banned_edges=banned)
        if hit is None:
            return True
        banned.update(hit[1])
    return False


@dataclass(frozen=True)
class KeptEdge:
    stream_index: int
    u: int
    v: int
    w: int
    bucket: int


class FtSpannerState:
    """Per-bucket partial spanners fed by a single pass over weighted edges."""

    def __init__(self, n, config, max_weight):
        if config.test_kind is None:
            if config.f <= 3 or n <= 12:
                config = FtConfig(
                    config.f, config.t, config.mode, config.eps, TestKind.EXACT, config.seed
                )
            else:
                raise ValueError(
                    "exhaustive test would be too slow here; pick the sampled "
                    "or peeling test explicitly"
                )
        self.n = n
        self.config = config
        self.scheme = BucketScheme(config.eps, max_weight)
        self.buckets = {}
        self.kept = []
        self.rejected = []
        self.stored_edge_count = 0
        self._index = 0

    def bucket(self, j):
        h = self.buckets.get(j)
        if h is None:
            h = self.buckets[j] = HopGraph(self.n)
        return h

    def process_edge(self, u, v, w):
        """Run the configured addition test; keep and return True iff it passes."""
        cfg = self.config
        idx = self._index
        self._index += 1
        j = self.scheme.bucket_of(w)
        h = self.bucket(j)
        if cfg.test_kind is TestKind.EXACT:
            keep = ft_test_exact(h, u, v, cfg.f, cfg.threshold, cfg.mode)
        elif cfg.test_kind is TestKind.SAMPLED_VFT:
            call_seed = cfg.seed * 1_000_003 + idx
            keep = ft_test_sampled_vft(h, u, v, cfg.f, cfg.threshold, call_seed)
        else:
            keep = ft_test_peeling_eft(h, u, v, cfg.f, cfg.threshold)
        rec = KeptEdge(idx, u, v, w, j)
        if keep:
            h.add_edge(u, v)
            self.kept.append(rec)
            self.stored_edge_count += 1
        else:
            self.rejected.append(rec)
        return keep

    def spanner_graph(self, reliable=None):
        """The union of all bucket spanners as a weighted graph."""
        return Graph.build(self.n, [(e.u, e.v, e.w) for e in self.kept], reliable)

    def kept_ids(self):
        """Stream positions of the kept edges (ids into the streamed graph)."""
        return tuple(e.stream_index for e in self.kept)


def build_spanner(stream, config, max_weight=None):
    """Feed a whole edge stream through a fresh spanner state.

    When max_weight is not given the stream is materialized first to find it;
    that is a harness convenience, not part of the streaming space accounting.
    """
    n = stream.n
    items = stream
    if max_weight is None:
        items = list(stream)
        max_weight = max((w for _, _, w in items), default=0)
    state = FtSpannerState(n, config, max_weight)
    for u, v, w in items:
        state.process_edge(u, v, w)
    return state


def extract_disjoint_paths(h, u, v, count, hop_bound):
    """Peel `count` internally-vertex-disjoint u-v paths of at most
    `hop_bound` hops each; raises ContractViolationError when peeling fails,
    which signals a broken spanner."""
    h = HopGraph.of(h)
    banned_v = set()
    banned_e = set()
    paths = []
    for i in range(count):
        hit = h.short_path(u, v, hop_bound, banned_vertices=banned_v, banned_edges=banned_e)
        if hit is None:
            raise ContractViolationError(
                f"only {i} of {count} disjoint paths of <= {hop_bound} hops "
                f"exist between {u} and {v}"
            )
        verts, eids = hit
        paths.append(verts)
        banned_v.update(verts[1:-1])
        banned_e.update(eids)
    return paths


# ---------------------------------------------------------------------------
# brute-force verification


def _dijkstra(n, adj, src, banned_vertices, banned_edges):
    dist = {src: 0}
    heap = [(0, src)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for y, w, eid in adj[x]:
            if eid in banned_edges or y in banned_vertices:
                continue
            nd = d + w
            if y not in dist or nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def _weighted_adj(g, edge_ids):
    adj = [[] for _ in range(g.n)]
    for eid in edge_ids:
        u, v, w = g.edges[eid]
        adj[u].append((v, w, eid))
        adj[v].append((u, w, eid))
    return adj


def verify_ft_spanner(g, kept_ids, config, guard=10_000_000):
    """Exhaustively check the fault-tolerant stretch contract.

    For every fault set of size at most f and every surviving pair, the
    spanner distance must be at most (2t-1)(1+eps) times the distance in the
    faulted input graph (weighted distances).  `kept_ids` are edge ids of g.
    """
    n = g.n
    f = config.f
    kept = set(kept_ids)
    if config.mode is FaultMode.VERTEX:
        universe = list(range(n))
    else:
        universe = list(range(len(g.edges)))
    f_eff = min(f, len(universe))
    pairs = n * (n - 1) // 2
    total = sum(comb(len(universe), s) for s in range(f_eff + 1))
    if total * pairs > guard:
        raise ResourceLimitError(
            f"fault-set enumeration too large: {total} sets x {pairs} pairs"
        )
    stretch = (2 * config.t - 1) * (1 + Fraction(config.eps))
    g_adj = _weighted_adj(g, range(len(g.edges)))
    h_adj = _weighted_adj(g, sorted(kept))

    for size in range(f_eff + 1):
        for fault in combinations(universe, size):
            if config.mode is FaultMode.VERTEX:
                bv, be = set(fault), frozenset()
                survivors = [x for x in range(n) if x not in bv]
            else:
                bv, be = set(), frozenset(fault)
                survivors = list(range(n))
            for i, u in enumerate(survivors):
                dg = _dijkstra(n, g_adj, u, bv, be)
                dh = _dijkstra(n, h_adj, u, bv, be)
                for v in survivors[i + 1 :]:
                    if v not in dg:
                        continue
                    if v not in dh:
                        return False
                    if dh[v] > stretch * dg[v]:
                        return False
    return True
