"""Single-pass edge streams, geometric weight bucketing, and streaming MSTs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .graph import parse_graph_file


class BucketScheme:
    """Geometric weight classes: bucket 0 holds weight 0, bucket i >= 1 holds
    weights in [(1+eps)^(i-1), (1+eps)^i).

    Boundaries are evaluated in exact rational arithmetic, so integer weights
    never straddle a bucket edge due to float rounding.
    """

    def __init__(self, eps, max_weight):
        self.eps = Fraction(eps)
        if self.eps <= 0:
            raise ValueError("eps must be positive")
        if max_weight < 0:
            raise ValueError("max weight must be nonnegative")
        self.max_weight = int(max_weight)
        # upper boundaries of buckets 1.. covering weights up to max_weight
        self._uppers = []
        hi = 1 + self.eps
        while self.max_weight >= 1 and hi <= self.max_weight:
            self._uppers.append(hi)
            hi *= 1 + self.eps
        self._uppers.append(hi)

    def bucket_of(self, w):
        if w < 0 or w > self.max_weight:
            raise ValueError(f"weight {w} outside [0, {self.max_weight}]")
        if w == 0:
            return 0
        for i, hi in enumerate(self._uppers, start=1):
            if w < hi:
                return i
        raise AssertionError("bucket table does not cover the weight range")

    def bucket_count(self):
        """Number of distinct buckets for weights in {0, ..., max_weight}."""
        if self.max_weight == 0:
            return 1
        return self.bucket_of(self.max_weight) + 1

    def bounds(self, i):
        """Half-open weight interval [lo, hi) of bucket i (exact Fractions)."""
        if i == 0:
            return Fraction(0), Fraction(0)
        return (1 + self.eps) ** (i - 1), (1 + self.eps) ** i


class EdgeStream:
    """Ordered sequence of weighted edges, consumable exactly once."""

    def __init__(self, n, items):
        self.n = n
        self._items = list(items)
        self.position = 0
        self._consumed = False

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        if self._consumed:
            raise RuntimeError("single-pass stream cannot be replayed")
        self._consumed = True
        for item in self._items:
            self.position += 1
            yield item

    @staticmethod
    def from_edges(n, edges, shuffle_seed=None):
        items = list(edges)
        if shuffle_seed is not None:
            random.Random(shuffle_seed).shuffle(items)
        return EdgeStream(n, items)


def open_stream(path, shuffle_seed=None):
    """Stream a graph file's edges in file order, or a seeded permutation.

    Materializing the permutation is a harness convenience and is not part of
    any streaming-space accounting.
    """
    n, edges = parse_graph_file(path)
    return EdgeStream.from_edges(n, edges, shuffle_seed=shuffle_seed)


@dataclass(frozen=True)
class MstEdge:
    a: object
    b: object
    w: int
    seq: int
    payload: object = None


class StreamingMst:
    """Minimum spanning forest of links inserted one at a time.

    Nodes may be any hashable ids, fixed at construction.  Inserting an edge
    that closes a cycle evicts the maximum-weight cycle edge; among equal
    weights the most recently inserted edge is evicted, so the stored forest
    is deterministic in the arrival order.
    """

    def __init__(self, nodes):
        self.nodes = set(nodes)
        self._adj = {x: [] for x in self.nodes}
        self._seq = 0

    def edges(self):
        seen = {}
        for recs in self._adj.values():
            for rec in recs:
                seen[rec.seq] = rec
        return [seen[s] for s in sorted(seen)]

    def edge_count(self):
        return sum(len(v) for v in self._adj.values()) // 2

    def total_weight(self):
        return sum(rec.w for rec in self.edges())

    def _path(self, a, b):
        """Tree path a..b as a list of records, or None if disconnected."""
        parent = {a: None}
        stack = [a]
        while stack:
            x = stack.pop()
            if x == b:
                break
            for rec in self._adj[x]:
                y = rec.b if rec.a == x else rec.a
                if y not in parent:
                    parent[y] = (x, rec)
                    stack.append(y)
        if b not in parent:
            return None
        path = []
        x = b
        while parent[x] is not None:
            px, rec = parent[x]
            path.append(rec)
            x = px
        return path

    def insert(self, a, b, w, payload=None):
        """Insert a link; returns the evicted record, or None if none."""
        if a not in self.nodes or b not in self.nodes:
            raise ValueError(f"link endpoint outside the node universe: ({a!r},{b!r})")
        if a == b:
            raise ValueError("self-loops cannot join a spanning forest")
        rec = MstEdge(a, b, w, self._seq, payload)
        self._seq += 1
        cycle = self._path(a, b)
        if cycle is None:
            self._adj[a].append(rec)
            self._adj[b].append(rec)
            return None
        worst = max(cycle + [rec], key=lambda r: (r.w, r.seq))
        if worst is rec:
            return rec
        self._adj[worst.a].remove(worst)
        self._adj[worst.b].remove(worst)
        self._adj[a].append(rec)
        self._adj[b].append(rec)
        return worst
