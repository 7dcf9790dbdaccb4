"""Undirected multigraphs with integer weights plus Menger-style connectivity queries.

Connectivity between a vertex pair is the maximum number of pairwise disjoint
paths: edge-disjoint, internally-vertex-disjoint, or element-disjoint (paths
may share reliable vertices but not edges or non-reliable vertices).  All
three are computed as unit-capacity max-flow after the appropriate vertex
splitting, so they agree with the cut-side statements of Menger's theorem.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .errors import ParseError


class ConnectivityMode(Enum):
    """Which objects disjoint paths must not share."""

    EDGE = "edge"
    VERTEX = "vertex"
    ELEMENT = "element"


@dataclass(frozen=True)
class Graph:
    """Immutable multigraph on vertices 0..n-1.

    ``edges`` is an ordered tuple of (u, v, w) with integer w >= 0; parallel
    edges are allowed and keep their position (the position is the edge id).
    ``reliable`` marks vertices for element connectivity; all True by default.
    """

    n: int
    edges: tuple
    reliable: tuple

    @staticmethod
    def build(n, edges, reliable=None):
        """Normalize and validate edge data; self-loops are dropped."""
        if n < 1:
            raise ValueError("graph needs at least one vertex")
        norm = []
        for e in edges:
            if len(e) == 2:
                u, v, w = e[0], e[1], 1
            else:
                u, v, w = e
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if not isinstance(w, int) or w < 0:
                raise ValueError(f"edge ({u},{v}) has invalid weight {w!r}")
            if u == v:
                continue
            norm.append((u, v, w))
        if reliable is None:
            rel = (True,) * n
        else:
            rel = tuple(bool(b) for b in reliable)
            if len(rel) != n:
                raise ValueError("reliability flags must cover every vertex")
        return Graph(n, tuple(norm), rel)

    def adjacency(self):
        """List of (neighbour, edge id) per vertex, in edge order."""
        adj = [[] for _ in range(self.n)]
        for eid, (u, v, _) in enumerate(self.edges):
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        return adj

    def subgraph(self, edge_ids):
        """Same vertex set, edges restricted to the given ids (order kept)."""
        keep = sorted(set(edge_ids))
        return Graph(self.n, tuple(self.edges[i] for i in keep), self.reliable)

    def total_weight(self):
        return sum(w for _, _, w in self.edges)

    def max_weight(self):
        return max((w for _, _, w in self.edges), default=0)


@dataclass(frozen=True)
class RequirementMap:
    """Symmetric integer connectivity requirements on unordered vertex pairs."""

    entries: tuple  # ((u, v), r) with u < v, r >= 0

    @staticmethod
    def from_pairs(pairs):
        seen = {}
        for u, v, r in pairs:
            if u == v:
                raise ValueError(f"requirement on a single vertex {u} is undefined")
            if r < 0 or not isinstance(r, int):
                raise ValueError(f"requirement r({u},{v})={r!r} must be a nonnegative integer")
            key = (min(u, v), max(u, v))
            if key in seen and seen[key] != r:
                raise ValueError(f"conflicting requirements for pair {key}")
            seen[key] = r
        return RequirementMap(tuple(sorted(seen.items())))

    @staticmethod
    def uniform(n, r):
        """r(uv) = r for every pair of distinct vertices."""
        return RequirementMap(
            tuple(((u, v), r) for u in range(n) for v in range(u + 1, n))
        )

    @property
    def k(self):
        """Maximum requirement."""
        return max((r for _, r in self.entries), default=0)

    def pairs(self):
        for (u, v), r in self.entries:
            yield u, v, r

    def get(self, u, v):
        key = (min(u, v), max(u, v))
        for pair, r in self.entries:
            if pair == key:
                return r
        return 0


@dataclass(frozen=True)
class Biset:
    """A nested vertex-set pair (inner, outer) with inner a subset of outer."""

    inner: frozenset
    outer: frozenset

    def __post_init__(self):
        if not self.inner <= self.outer:
            raise ValueError("biset inner set must be contained in the outer set")


def biset_crossing(g, biset):
    """Edges with one endpoint in the inner set and the other outside the outer set."""
    return sum(
        1
        for u, v, _ in g.edges
        if (u in biset.inner and v not in biset.outer)
        or (v in biset.inner and u not in biset.outer)
    )


def biset_value(g, biset):
    """Crossing edges plus the vertices sandwiched between inner and outer set."""
    return biset_crossing(g, biset) + len(biset.outer - biset.inner)


# ---------------------------------------------------------------------------
# unit-capacity max-flow


class _FlowNet:
    """Flat-array residual network with unit capacities; reverse arcs pair up
    at index ^1, and capacities can be reset for repeated pair queries."""

    def __init__(self, size):
        self.to = []
        self.cap = []
        self.adj = [[] for _ in range(size)]
        self._cap0 = None

    def add_arc(self, a, b, cap):
        self.adj[a].append(len(self.to))
        self.to.append(b)
        self.cap.append(cap)
        self.adj[b].append(len(self.to))
        self.to.append(a)
        self.cap.append(0)

    def freeze(self):
        self._cap0 = self.cap[:]

    def reset(self):
        self.cap[:] = self._cap0

    def max_flow(self, s, t, limit=None):
        to, cap, adj = self.to, self.cap, self.adj
        size = len(adj)
        flow = 0
        while limit is None or flow < limit:
            parent = [-2] * size
            parent[s] = -1
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for ai in adj[x]:
                    if cap[ai] > 0:
                        y = to[ai]
                        if parent[y] == -2:
                            parent[y] = ai
                            if y == t:
                                queue.clear()
                                break
                            queue.append(y)
            if parent[t] == -2:
                break
            ai = parent[t]
            while ai != -1:
                cap[ai] -= 1
                cap[ai ^ 1] += 1
                ai = parent[to[ai ^ 1]]
            flow += 1
        return flow


def _check_pair(g, u, v):
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"vertex out of range: ({u},{v}) with n={g.n}")
    if u == v:
        raise ValueError("pair connectivity needs two distinct vertices")


def _build_net(g, mode):
    """Residual network reusable for every pair query of the given mode.

    Split vertices carry an internal unit arc in(x) -> out(x); a query for
    the pair (u, v) runs flow from out(u) to in(v), which bypasses the
    endpoints' own internal arcs, so one network serves all pairs.
    """
    if mode is ConnectivityMode.EDGE:
        split = ()
    elif mode is ConnectivityMode.VERTEX:
        split = tuple(range(g.n))
    else:
        split = tuple(x for x in range(g.n) if not g.reliable[x])
    out_id = list(range(g.n))
    size = g.n
    for x in split:
        out_id[x] = size
        size += 1
    net = _FlowNet(size)
    for x in split:
        net.add_arc(x, out_id[x], 1)
    for a, b, _ in g.edges:
        net.add_arc(out_id[a], b, 1)
        net.add_arc(out_id[b], a, 1)
    net.freeze()
    return net, out_id


def _pair_flow(g, u, v, mode, limit=None):
    net, out_id = _build_net(g, mode)
    return net.max_flow(out_id[u], v, limit=limit)


def pair_connectivity(g, u, v, mode):
    """Maximum number of pairwise disjoint u-v paths under the given mode."""
    _check_pair(g, u, v)
    return _pair_flow(g, u, v, mode)


def check_feasible(g, req, mode):
    """True iff every required pair reaches its requirement in this graph."""
    needed = []
    for u, v, r in req.pairs():
        if r == 0:
            continue
        if mode is ConnectivityMode.ELEMENT and not (g.reliable[u] and g.reliable[v]):
            raise ValueError(
                f"element-connectivity requirement on non-reliable pair ({u},{v})"
            )
        _check_pair(g, u, v)
        needed.append((u, v, r))
    # a pair can never exceed its smaller endpoint degree; screen before flows
    deg = [0] * g.n
    for a, b, _ in g.edges:
        deg[a] += 1
        deg[b] += 1
    for u, v, r in needed:
        if min(deg[u], deg[v]) < r:
            return False
    needed.sort(key=lambda t: min(deg[t[0]], deg[t[1]]))
    if not needed:
        return True
    net, out_id = _build_net(g, mode)
    first = True
    for u, v, r in needed:
        if not first:
            net.reset()
        first = False
        if net.max_flow(out_id[u], v, limit=r) < r:
            return False
    return True


def is_k_connected(g, k, mode):
    """True iff every vertex pair is at least k-connected under the mode.

    Vertex mode additionally requires n >= k + 1.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return True
    if mode is ConnectivityMode.VERTEX and g.n < k + 1:
        return False
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if _pair_flow(g, u, v, mode, limit=k) < k:
                return False
    return True


# ---------------------------------------------------------------------------
# file formats
#
# Graph file: first line "n m", then m lines "u v w" (w optional, default 1),
# 0-indexed.  Reliability file: one vertex id per line marking it non-reliable.
# Requirements file: lines "u v r".


def _data_lines(path):
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            yield lineno, line


def parse_graph_file(path):
    """Return (n, edges-in-file-order); self-loops are dropped."""
    lines = _data_lines(path)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError(path, 1, "missing 'n m' header line") from None
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(path, lineno, f"expected 'n m' header, got {header!r}")
    try:
        n, m = int(parts[0]), int(parts[1])
    except ValueError:
        raise ParseError(path, lineno, f"non-integer header {header!r}") from None
    if n < 1 or m < 0:
        raise ParseError(path, lineno, f"invalid sizes n={n} m={m}")
    edges = []
    count = 0
    for lineno, line in lines:
        if count == m:
            raise ParseError(path, lineno, f"more than the declared {m} edge lines")
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(path, lineno, f"expected 'u v [w]', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
            w = int(parts[2]) if len(parts) == 3 else 1
        except ValueError:
            raise ParseError(path, lineno, f"non-integer edge line {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(path, lineno, f"edge ({u},{v}) out of range for n={n}")
        if w < 0:
            raise ParseError(path, lineno, f"negative weight {w}")
        count += 1
        if u == v:
            continue
        edges.append((u, v, w))
    if count != m:
        raise ParseError(path, 0, f"declared {m} edges but found {count}")
    return n, edges


def load_graph(path, reliability_path=None):
    n, edges = parse_graph_file(path)
    reliable = None
    if reliability_path is not None:
        reliable = load_reliability(reliability_path, n)
    return Graph.build(n, edges, reliable)


def save_graph(g, path):
    with open(path, "w") as fh:
        fh.write(f"{g.n} {len(g.edges)}\n")
        for u, v, w in g.edges:
            fh.write(f"{u} {v} {w}\n")


def load_reliability(path, n):
    """Reliability flags from a file listing the non-reliable vertex ids."""
    flags = [True] * n
    for lineno, line in _data_lines(path):
        try:
            x = int(line)
        except ValueError:
            raise ParseError(path, lineno, f"expected a vertex id, got {line!r}") from None
        if not 0 <= x < n:
            raise ParseError(path, lineno, f"vertex {x} out of range for n={n}")
        flags[x] = False
    return tuple(flags)


def load_requirements(path):
    pairs = []
    seen = set()
    for lineno, line in _data_lines(path):
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(path, lineno, f"expected 'u v r', got {line!r}")
        try:
            u, v, r = int(parts[0]), int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(path, lineno, f"non-integer line {line!r}") from None
        if u == v:
            raise ParseError(path, lineno, f"requirement on a single vertex {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(path, lineno, f"duplicate requirement for pair {key}")
        seen.add(key)
        pairs.append((u, v, r))
    return RequirementMap.from_pairs(pairs)
