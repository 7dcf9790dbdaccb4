"""Augmenting a 2-vertex-connected base to 3-connectivity from a link stream.

The base is first thinned to an edge-minimal 2-connected subgraph (removed
edges re-enter the stream as weight-0 links) and decomposed into an SPQR
tree.  The stream keeps, per tree node and weight bucket, the link whose
tree-LCA sits closest to the root; per P node, a streaming MST over its child
subtrees; and per S node, the extreme links seen from every cycle position,
with dummy positions standing for whole subtrees hanging off virtual edges.
An exact solver then picks the cheapest feasible subset of what was kept.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InfeasibleError
from .framework import exact_solve
from .graph import ConnectivityMode, Graph, RequirementMap, is_k_connected
from .spqr import VIRTUAL, build_spqr
from .streams import StreamingMst

from .cap1 import LinkRec


@dataclass(frozen=True)
class Cap2Result:
    stored: tuple
    solution: tuple  # chosen links, base re-entries filtered out
    weight: int


class _SNodeData:
    """Cycle positions of one S node: original vertices interleaved with one
    dummy per virtual edge; the anchor dummy (parent edge, or the lowest
    virtual edge on the root cycle) takes position 0."""

    def __init__(self, tree, node):
        anchor_ref = tree.parent_vid[node.nid]
        if anchor_ref is None:
            virts = node.virtual_edges()
            anchor_ref = min((e.ref for e in virts), default=None)
        order, edges = node.cycle_order(anchor_ref)
        pts = []
        if anchor_ref is not None:
            pts.append(("d", anchor_ref))
        for i, vert in enumerate(order):
            pts.append(("v", vert))
            if i < len(order) - 1 and edges[i].kind == VIRTUAL:
                pts.append(("d", edges[i].ref))
        self.points = pts
        self.pos = {pt: i for i, pt in enumerate(pts)}
        self.fmap = self._build_fmap(tree, node)

    def _build_fmap(self, tree, node):
        fmap = {x: ("v", x) for x in node.vertices}
        parent_vid = tree.parent_vid[node.nid]
        for e in node.virtual_edges():
            if e.ref == parent_vid:
                continue
            x, y = tree.virtual_nodes(e.ref)
            child = y if x == node.nid else x
            for vert in tree.subtree_vertices(child) - node.vertices:
                if vert in fmap and fmap[vert] != ("d", e.ref):
                    raise AssertionError("vertex claimed by two child subtrees")
                fmap[vert] = ("d", e.ref)
        if parent_vid is not None:
            below = tree.subtree_vertices(node.nid)
            for vert in tree.h_map:
                if vert not in below and vert not in fmap:
                    fmap[vert] = ("d", parent_vid)
        if set(fmap) != set(tree.h_map):
            raise AssertionError("cycle position map must cover every vertex")
        return fmap


class Cap2State:
    """Stream state for 2-to-3 connectivity augmentation."""

    def __init__(self, original_base, minimal_base, removed, tree, scheme):
        self.original_base = original_base
        self.base = minimal_base
        self.tree = tree
        self.scheme = scheme
        self._dict = {}  # (nid, bucket) -> (LinkRec, lca depth)
        self._minmax = {}  # (nid, point, bucket) -> [min (rec,pos), max (rec,pos)]
        self._snodes = {}
        self._pnodes = {}  # nid -> (supernode map, StreamingMst)
        self._next_lid = 0
        for node in tree.nodes:
            if node.kind == "S":
                self._snodes[node.nid] = _SNodeData(tree, node)
            elif node.kind == "P":
                smap = {}
                for child in tree.children[node.nid]:
                    for vert in tree.subtree_vertices(child) - node.vertices:
                        smap[vert] = child
                self._pnodes[node.nid] = (smap, StreamingMst(tree.children[node.nid]))
        for u, v, _ in removed:
            self._ingest(u, v, 0, synthetic=True)

    @staticmethod
    def from_base(g, scheme):
        """Validate, thin to an edge-minimal 2-connected subgraph, decompose,
        and replay the removed base edges as weight-0 links."""
        if g.n < 4:
            raise ValueError("need at least 4 vertices to aim for 3-connectivity")
        if not is_k_connected(g, 2, ConnectivityMode.VERTEX):
            raise ValueError("base graph must be 2-vertex-connected")
        keep = list(range(len(g.edges)))
        for eid in sorted(keep, reverse=True):
            trial = [i for i in keep if i != eid]
            if is_k_connected(g.subgraph(trial), 2, ConnectivityMode.VERTEX):
                keep = trial
        minimal = g.subgraph(keep)
        removed = [g.edges[i] for i in range(len(g.edges)) if i not in set(keep)]
        tree = build_spqr(minimal)
        return Cap2State(g, minimal, removed, tree, scheme)

    # -- stream phase

    def _update_dict(self, nid, j, rec, key):
        cur = self._dict.get((nid, j))
        if cur is None or key < cur[1]:
            self._dict[(nid, j)] = (rec, key)

    def _update_minmax(self, nid, pt, j, rec, other_pos):
        slot = self._minmax.get((nid, pt, j))
        if slot is None:
            self._minmax[(nid, pt, j)] = [(rec, other_pos), (rec, other_pos)]
            return
        if other_pos < slot[0][1]:
            slot[0] = (rec, other_pos)
        if other_pos > slot[1][1]:
            slot[1] = (rec, other_pos)

    def _ingest(self, u, v, w, synthetic):
        rec = LinkRec(u, v, w, self._next_lid, synthetic)
        self._next_lid += 1
        if u == v:
            return
        tree = self.tree
        j = self.scheme.bucket_of(w)
        for a, b in ((u, v), (v, u)):
            x = tree.h_map[a]
            key = tree.depth[tree.lca(x, tree.l_map[b])]
            self._update_dict(x, j, rec, key)
        for nid, (smap, mst) in self._pnodes.items():
            su, sv = smap.get(u), smap.get(v)
            if su is not None and sv is not None and su != sv:
                mst.insert(su, sv, w, payload=rec)
        for nid, data in self._snodes.items():
            pu, pv = data.fmap[u], data.fmap[v]
            if pu == pv:
                continue
            self._update_minmax(nid, pu, j, rec, data.pos[pv])
            self._update_minmax(nid, pv, j, rec, data.pos[pu])

    def process_link(self, u, v, w):
        self._ingest(u, v, w, synthetic=False)

    # -- accounting

    def stored_links(self):
        by_lid = {}
        for rec, _ in self._dict.values():
            by_lid[rec.lid] = rec
        for _, mst in self._pnodes.values():
            for edge in mst.edges():
                by_lid[edge.payload.lid] = edge.payload
        for lo, hi in self._minmax.values():
            by_lid[lo[0].lid] = lo[0]
            by_lid[hi[0].lid] = hi[0]
        return tuple(by_lid[lid] for lid in sorted(by_lid))

    def space_bound(self):
        """Retention ceiling from the per-structure slot counts."""
        return 7 * self.scheme.bucket_count() * self.tree.skeleton_edge_total()

    # -- postprocessing

    def _solve(self, links):
        base_edges = [(u, v, 0) for u, v, _ in self.base.edges]
        all_edges = base_edges + [rec.triple() for rec in links]
        g = Graph.build(self.base.n, all_edges)
        req = RequirementMap.uniform(self.base.n, 3)
        ids, weight = exact_solve(
            g,
            req,
            ConnectivityMode.VERTEX,
            fixed=range(len(base_edges)),
            max_branch_edges=len(links),
        )
        chosen = [links[i - len(base_edges)] for i in ids if i >= len(base_edges)]
        return chosen, weight

    def finalize(self):
        stored = self.stored_links()
        try:
            chosen, weight = self._solve(stored)
        except InfeasibleError:
            raise InfeasibleError(
                "the retained links cannot 3-connect the base"
            ) from None
        solution = tuple(rec for rec in chosen if not rec.synthetic)
        return Cap2Result(stored, solution, weight)

    def sol_from_opt(self, opt):
        """Mirror an optimal solution inside the retained set; test oracle.

        Per optimal link: the two tree-node dictionary picks, the Min/Max
        picks on the S node where the link's deepest copies meet, and the Min
        pick on the (at most one) S node holding an endpoint off its parent
        edge while the other endpoint leaves its subtree.  Per P node, the
        stored MST restricted to supernodes the optimum does not already tie
        to the outside.
        """
        tree = self.tree
        picked = {}

        def pick(rec):
            picked[rec.lid] = rec

        def lookup_minmax(nid, pt, j, which):
            slot = self._minmax.get((nid, pt, j))
            if slot is None:
                raise ValueError(
                    f"no stored extreme link at node {nid} point {pt} bucket {j}; "
                    "the optimum must be part of the processed stream"
                )
            return slot[0][0] if which == "min" else slot[1][0]

        opt = [link if isinstance(link, tuple) else link.triple() for link in opt]
        for u, v, w in opt:
            j = self.scheme.bucket_of(w)
            for a, b in ((u, v), (v, u)):
                x = tree.h_map[a]
                got = self._dict.get((x, j))
                if got is None:
                    raise ValueError(
                        f"dictionary has no entry for node {x} bucket {j}; "
                        "the optimum must be part of the processed stream"
                    )
                pick(got[0])
            meet = tree.lca(tree.l_map[u], tree.l_map[v])
            if tree.nodes[meet].kind == "S":
                data = self._snodes[meet]
                pu, pv = data.pos[data.fmap[u]], data.pos[data.fmap[v]]
                if pu < pv:
                    pick(lookup_minmax(meet, data.fmap[v], j, "min"))
                    pick(lookup_minmax(meet, data.fmap[u], j, "max"))
                elif pv < pu:
                    pick(lookup_minmax(meet, data.fmap[u], j, "min"))
                    pick(lookup_minmax(meet, data.fmap[v], j, "max"))
            for a, b in ((u, v), (v, u)):
                for nid, data in self._snodes.items():
                    node = tree.nodes[nid]
                    if a not in node.vertices:
                        continue
                    ppair = tree.parent_pair(nid)
                    if ppair is not None and a in ppair:
                        continue
                    if tree.in_subtree(tree.l_map[b], nid):
                        continue
                    pick(lookup_minmax(nid, ("v", a), j, "min"))

        for nid, (smap, mst) in self._pnodes.items():
            good = set()
            for child in tree.children[nid]:
                for u, v, _ in opt:
                    hit = False
                    for a, b in ((u, v), (v, u)):
                        if tree.in_subtree(tree.h_map[a], child) and not tree.in_subtree(
                            tree.l_map[b], nid
                        ):
                            hit = True
                            break
                    if hit:
                        good.add(child)
                        break

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
