"""Augmenting a spanning tree to a 2-vertex-connected graph from a link stream.

Per vertex and weight bucket the stream keeps the incident link whose lowest
common ancestor sits closest to the root, plus, per vertex, a streaming MST
over its child subtrees (contracted to supernodes).  After the stream, an
exact solver picks the cheapest feasible subset of the retained links.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfeasibleError
from .framework import exact_solve
from .graph import ConnectivityMode, Graph, RequirementMap
from .streams import StreamingMst


@dataclass(frozen=True)
class RootedTree:
    """Rooted spanning tree given by parent pointers (root is self-parented)."""

    n: int
    root: int
    parent: tuple
    depth: tuple
    children: tuple

    @staticmethod
    def from_graph(g, root=0):
        tree, extras = RootedTree.spanning(g, root)
        if extras:
            raise ValueError("graph is not a tree; it has cycle edges")
        return tree

    @staticmethod
    def spanning(g, root=0):
        """BFS spanning tree plus the ids of the non-tree edges."""
        if not 0 <= root < g.n:
            raise ValueError("root out of range")
        adj = g.adjacency()
        parent = [None] * g.n
        depth = [0] * g.n
        parent[root] = root
        order = [root]
        tree_edge_ids = set()
        head = 0
        while head < len(order):
            x = order[head]
            head += 1
            for y, eid in adj[x]:
                if parent[y] is None:
                    parent[y] = x
                    depth[y] = depth[x] + 1
                    tree_edge_ids.add(eid)
                    order.append(y)
        if any(p is None for p in parent):
            raise ValueError("base graph must be connected")
        children = [[] for _ in range(g.n)]
        for x in range(g.n):
            if x != root:
                children[parent[x]].append(x)
        tree = RootedTree(
            g.n,
            root,
            tuple(parent),
            tuple(depth),
            tuple(tuple(c) for c in children),
        )
        extras = tuple(i for i in range(len(g.edges)) if i not in tree_edge_ids)
        return tree, extras

    def edges(self):
        return tuple(
            (self.parent[x], x) for x in range(self.n) if x != self.root
        )

    def lca(self, u, v):
        """Deepest vertex whose subtree contains both u and v (naive walk)."""
        while self.depth[u] > self.depth[v]:
            u = self.parent[u]
        while self.depth[v] > self.depth[u]:
            v = self.parent[v]
        while u != v:
            u = self.parent[u]
            v = self.parent[v]
        return u

    def is_ancestor(self, a, x):
        """True iff x lies in the subtree rooted at a (a counts)."""
        while self.depth[x] > self.depth[a]:
            x = self.parent[x]
        return x == a

    def child_toward(self, x, u):
        """The child of x whose subtree contains u; u must be below x."""
        while self.depth[u] > self.depth[x] + 1:
            u = self.parent[u]
        if self.parent[u] != x:
            raise ValueError(f"{u} is not below {x}")
        return u


def lca(tree, u, v):
    return tree.lca(u, v)


@dataclass(frozen=True)
class LinkRec:
    u: int
    v: int
    w: int
    lid: int
    synthetic: bool = False  # a base edge re-entering as a weight-0 link

    def triple(self):
        return (self.u, self.v, self.w)


@dataclass(frozen=True)
class Cap1Result:
    stored: tuple  # every retained link
    solution: tuple  # chosen links, base re-entries filtered out
    weight: int


class Cap1State:
    """Stream state for tree augmentation: per-vertex link dictionaries plus
    per-vertex contracted-children MSTs."""

    def __init__(self, tree, scheme):
        self.tree = tree
        self.scheme = scheme
        self._dict = {}  # (vertex, bucket) -> LinkRec
        self._msts = {}  # vertex -> StreamingMst over its children
        self._next_lid = 0

    @staticmethod
    def from_base(g, scheme, root=0):
        """Accept any connected base: fix a spanning tree, then replay the
        remaining base edges as weight-0 links ahead of the stream."""
        tree, extras = RootedTree.spanning(g, root)
        state = Cap1State(tree, scheme)
        for eid in extras:
            u, v, _ = g.edges[eid]
            state._ingest(u, v, 0, synthetic=True)
        return state

    def _mst_for(self, x):
        mst = self._msts.get(x)
        if mst is None:
            mst = self._msts[x] = StreamingMst(self.tree.children[x])
        return mst

    def _ingest(self, u, v, w, synthetic):
        rec = LinkRec(u, v, w, self._next_lid, synthetic)
        self._next_lid += 1
        if u == v:
            return
        tree = self.tree
        j = self.scheme.bucket_of(w)
        anchor = tree.lca(u, v)
        for x in (u, v):
            key = (x, j)
            cur = self._dict.get(key)
            if cur is None:
                self._dict[key] = rec
            else:
                other = cur.v if cur.u == x else cur.u
                if tree.depth[anchor] < tree.depth[tree.lca(x, other)]:
                    self._dict[key] = rec
        if u != anchor and v != anchor:
            a = tree.child_toward(anchor, u)
            b = tree.child_toward(anchor, v)
            if a != b:
                self._mst_for(anchor).insert(a, b, w, payload=rec)

    def process_link(self, u, v, w):
        self._ingest(u, v, w, synthetic=False)

    def stored_links(self):
        """The retained link set F, deduplicated, in arrival order."""
        by_lid = {rec.lid: rec for rec in self._dict.values()}
        for mst in self._msts.values():
            for edge in mst.edges():
                by_lid[edge.payload.lid] = edge.payload
        return tuple(by_lid[lid] for lid in sorted(by_lid))

    def space_bound(self):
        """Retention ceiling: one dictionary slot per vertex and bucket plus
        two MST slots per tree edge."""
        n = self.tree.n
        return n * self.scheme.bucket_count() + 2 * (n - 1)

    def _solve(self, links):
        tree = self.tree
        base_edges = [(p, c, 0) for p, c in tree.edges()]
        all_edges = base_edges + [rec.triple() for rec in links]
        g = Graph.build(tree.n, all_edges)
        fixed = range(len(base_edges))
        req = RequirementMap.uniform(tree.n, 2)
        ids, weight = exact_solve(
            g, req, ConnectivityMode.VERTEX, fixed=fixed, max_branch_edges=len(links)
        )
        chosen = [links[i - len(base_edges)] for i in ids if i >= len(base_edges)]
        return chosen, weight

    def finalize(self):
        """Solve exactly on the retained links; base re-entries are free and
        filtered from the reported solution."""
        stored = self.stored_links()
        try:
            chosen, weight = self._solve(stored)
        except InfeasibleError:
            raise InfeasibleError(
                "the retained links cannot 2-connect the tree"
            ) from None
        solution = tuple(rec for rec in chosen if not rec.synthetic)
        return Cap1Result(stored, solution, weight)

    def sol_from_opt(self, opt):
        """Mirror an optimal solution inside the retained set: dictionary
        picks per optimal link plus per-vertex MSTs with the subtrees already
        covered by the optimum contracted together.  Test oracle only."""
        tree = self.tree
        picked = {}

        def pick(rec):
            picked[rec.lid] = rec

        opt = [link if isinstance(link, tuple) else link.triple() for link in opt]
        for u, v, w in opt:
            j = self.scheme.bucket_of(w)
            for x in (u, v):
                rec = self._dict.get((x, j))
                if rec is None:
                    raise ValueError(
                        f"dictionary has no entry for vertex {x} bucket {j}; "
                        "the optimum must be part of the processed stream"
                    )
                pick(rec)

        for x in range(tree.n):
            mst = self._msts.get(x)
            if mst is None:
                continue
            good = set()
            for c in tree.children[x]:
                for u, v, _ in opt:
                    for a, b in ((u, v), (v, u)):
                        if tree.is_ancestor(c, a) and not tree.is_ancestor(x, b):
                            good.add(c)
                            break
                    if c in good:
                        break
            # Kruskal over the stored supernode edges with all good children
            # contracted into a single node
            def node_of(c):
                return "good" if c in good else c

            parent = {}

            def find(z):
                while parent.setdefault(z, z) != z:
                    parent[z] = parent[parent[z]]
                    z = parent[z]
                return z

            for edge in sorted(mst.edges(), key=lambda e: (e.w, e.seq)):
                ra, rb = find(node_of(edge.a)), find(node_of(edge.b))
                if ra != rb:
                    parent[ra] = rb
                    pick(edge.payload)
        return tuple(picked[lid] for lid in sorted(picked))
