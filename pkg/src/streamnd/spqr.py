"""SPQR trees: a 2-connected graph decomposed into cycle (S), dipole (P) and
3-connected (R) skeletons joined by shared virtual edges.

Construction splits recursively on separation pairs until no skeleton has
one, then merges adjacent dipole pairs and adjacent cycle pairs to a fixed
point.  Correctness is the contract here; the construction is quadratic-ish,
not linear-time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count

from .graph import ConnectivityMode, Graph, is_k_connected, pair_connectivity

REAL = "real"
VIRTUAL = "virtual"


@dataclass(frozen=True)
class SkelEdge:
    u: int
    v: int
    kind: str  # REAL or VIRTUAL
    ref: int  # original edge id for REAL, virtual-edge id for VIRTUAL

    def pair(self):
        return (min(self.u, self.v), max(self.u, self.v))


@dataclass(frozen=True)
class SpqrNode:
    nid: int
    kind: str  # 'S', 'P' or 'R'
    vertices: frozenset
    edges: tuple  # SkelEdge

    def real_edges(self):
        return tuple(e for e in self.edges if e.kind == REAL)

    def virtual_edges(self):
        return tuple(e for e in self.edges if e.kind == VIRTUAL)

    def cycle_order(self, anchor_ref=None):
        """For an S node: vertices in cycle order and the edge between each
        consecutive pair; the edge closing the cycle (last vertex back to the
        first) comes last.  With an anchor edge given, the walk starts at its
        smaller endpoint and the anchor is the closing edge."""
        if self.kind != "S":
            raise ValueError("cycle order is defined for S nodes only")
        adj = {x: [] for x in self.vertices}
        for e in self.edges:
            adj[e.u].append((e.v, e))
            adj[e.v].append((e.u, e))
        if anchor_ref is not None:
            anchor = next(e for e in self.edges if e.kind == VIRTUAL and e.ref == anchor_ref)
            start = min(anchor.u, anchor.v)
            last = max(anchor.u, anchor.v)
            first = next(y for y, e in adj[start] if e is not anchor)
        else:
            start = min(self.vertices)
            first = min(y for y, _ in adj[start])
            last = None
            anchor = None
        order = [start]
        edges = []
        prev, cur = start, first
        edge = next(e for y, e in adj[start] if y == first and (anchor is None or e is not anchor))
        while cur != start:
            order.append(cur)
            edges.append(edge)
            nxt, nedge = next((y, e) for y, e in adj[cur] if e is not edge)
            prev, cur, edge = cur, nxt, nedge
        edges.append(edge)
        if anchor is not None and (order[-1] != last or edges[-1] is not anchor):
            raise AssertionError("anchored cycle walk must close on the anchor edge")
        return order, edges


@dataclass
class SpqrTree:
    """Rooted SPQR tree; immutable by convention once built."""

    nodes: tuple  # SpqrNode, indexed by nid
    tree_edges: tuple  # (x, y, vid) with x < y
    root: int
    parent: tuple  # parent nid per node; root maps to itself
    parent_vid: tuple  # virtual edge toward the root; None for the root
    depth: tuple
    children: tuple
    h_map: dict  # vertex -> nid of its copy closest to the root
    l_map: dict  # vertex -> nid of its copy furthest from the root
    nodes_of_vertex: dict  # vertex -> tuple of nids containing a copy
    _subtree_vertices: dict = field(default_factory=dict, repr=False)

    def virtual_endpoints(self, vid):
        for node in self.nodes:
            for e in node.edges:
                if e.kind == VIRTUAL and e.ref == vid:
                    return e.pair()
        raise KeyError(f"no virtual edge {vid}")

    def virtual_nodes(self, vid):
        """The two tree nodes sharing the given virtual edge."""
        for x, y, v in self.tree_edges:
            if v == vid:
                return x, y
        raise KeyError(f"no virtual edge {vid}")

    def lca(self, x, y):
        while self.depth[x] > self.depth[y]:
            x = self.parent[x]
        while self.depth[y] > self.depth[x]:
            y = self.parent[y]
        while x != y:
            x = self.parent[x]
            y = self.parent[y]
        return x

    def in_subtree(self, z, x):
        """True iff tree node z lies in the subtree rooted at node x."""
        while self.depth[z] > self.depth[x]:
            z = self.parent[z]
        return z == x

    def subtree_vertices(self, x):
        """All graph vertices with a copy in the subtree rooted at x."""
        cached = self._subtree_vertices.get(x)
        if cached is None:
            verts = set(self.nodes[x].vertices)
            for c in self.children[x]:
                verts |= self.subtree_vertices(c)
            cached = self._subtree_vertices[x] = frozenset(verts)
        return cached

    def parent_pair(self, x):
        """Endpoints of the virtual edge between x and its parent."""
        vid = self.parent_vid[x]
        if vid is None:
            return None
        return self.virtual_endpoints(vid)

    def skeleton_edge_total(self):
        return sum(len(node.edges) for node in self.nodes)


# ---------------------------------------------------------------------------
# separation pairs and splits


def _components(vertices, endpoint_pairs, banned):
    adj = {x: set() for x in vertices if x not in banned}
    for u, v in endpoint_pairs:
        if u in banned or v in banned or u == v:
            continue
        adj[u].add(v)
        adj[v].add(u)
    comps = []
    seen = set()
    for start in sorted(adj):
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(comp)
    return comps


def _find_pair(vertices, endpoint_pairs):
    """First separation pair in lexicographic order, with its separation
    classes as index lists into endpoint_pairs, or None."""
    verts = sorted(vertices)
    for ia, a in enumerate(verts):
        for b in verts[ia + 1 :]:
            comps = _components(verts, endpoint_pairs, {a, b})
            if len(comps) >= 2:
                classes = []
                for comp in comps:
                    cls = [
                        i
                        for i, (u, v) in enumerate(endpoint_pairs)
                        if u in comp or v in comp
                    ]
                    classes.append(cls)
                ab = [
                    i
                    for i, (u, v) in enumerate(endpoint_pairs)
                    if {u, v} == {a, b}
                ]
                if ab:
                    classes.append(ab)
                return a, b, classes
            parallel = [
                i for i, (u, v) in enumerate(endpoint_pairs) if {u, v} == {a, b}
            ]
            if len(parallel) >= 2 and len(verts) > 2:
                rest = [i for i in range(len(endpoint_pairs)) if i not in parallel]
                return a, b, [parallel, rest]
    return None


def _check_two_connected(g, touched):
    for i, u in enumerate(touched):
        for v in touched[i + 1 :]:
            if pair_connectivity(g, u, v, ConnectivityMode.VERTEX) < 2:
                raise ValueError("graph is not 2-vertex-connected")


def find_separation_pair(g):
    """Some separation pair of g with its separation-class partition of the
    edge ids, or None when g has none.  Vertices without edges are ignored."""
    if not g.edges:
        raise ValueError("graph has no edges")
    touched = sorted({u for u, v, _ in g.edges} | {v for u, v, _ in g.edges})
    _check_two_connected(g, touched)
    pairs = [(u, v) for u, v, _ in g.edges]
    hit = _find_pair(touched, pairs)
    if hit is None:
        return None
    a, b, classes = hit
    return a, b, tuple(tuple(cls) for cls in classes)


def _choose_side(classes):
    """Isolate the smallest class of size >= 2 against everything else."""
    eligible = sorted(
        (cls for cls in classes if len(cls) >= 2), key=lambda c: (len(c), min(c))
    )
    if not eligible:
        raise AssertionError("a separation pair always yields a class of >= 2 edges")
    return list(eligible[0])


def split(g, pair, side_ids):
    """Split g at the separation pair into (g1, g2); each part keeps its side
    of the edge bipartition plus a fresh shared virtual edge, appended last
    with weight 0.  Both sides must contain at least two edges."""
    a, b = pair
    if len(g.edges) < 4:
        raise ValueError("split needs a graph with at least four edges")
    side = sorted(set(side_ids))
    other = [i for i in range(len(g.edges)) if i not in set(side)]
    if len(side) < 2 or len(other) < 2:
        raise ValueError("both sides of a split must keep at least two edges")
    g1 = Graph(g.n, tuple(g.edges[i] for i in side) + ((a, b, 0),), g.reliable)
    g2 = Graph(g.n, tuple(g.edges[i] for i in other) + ((a, b, 0),), g.reliable)
    return g1, g2


# ---------------------------------------------------------------------------
# construction


def _classify(vertices, edges):
    if len(vertices) == 2:
        return "P"
    deg = {x: 0 for x in vertices}
    for e in edges:
        deg[e.u] += 1
        deg[e.v] += 1
    if all(d == 2 for d in deg.values()):
        return "S"
    return "R"


def _is_dipole(vertices, edges):
    return len(vertices) == 2


def _is_cycle(vertices, edges):
    if len(vertices) < 3 or len(edges) != len(vertices):
        return False
    deg = {x: 0 for x in vertices}
    for e in edges:
        deg[e.u] += 1
        deg[e.v] += 1
    return all(d == 2 for d in deg.values())


def build_spqr(g):
    """SPQR tree of a simple 2-connected graph on at least 3 vertices.

    The root is the node holding the lowest-id real edge; h/l maps give, per
    vertex, its copy closest to and furthest from the root (ties to the
    lowest node id).
    """
    if g.n < 3:
        raise ValueError("SPQR trees need at least 3 vertices")
    seen_pairs = set()
    for u, v, _ in g.edges:
        key = (min(u, v), max(u, v))
        if key in seen_pairs:
            raise ValueError("input graph must be simple")
        seen_pairs.add(key)
    if not is_k_connected(g, 2, ConnectivityMode.VERTEX):
        raise ValueError("graph is not 2-vertex-connected")

    vid_counter = count()
    skeletons = {}  # working nid -> list of SkelEdge
    vmap = {}  # vid -> [nid, nid]
    next_nid = count()

    def recurse(edges):
        pairs = [(e.u, e.v) for e in edges]
        verts = sorted({x for p in pairs for x in p})
        hit = _find_pair(verts, pairs)
        if hit is None:
            nid = next(next_nid)
            skeletons[nid] = list(edges)
            for e in edges:
                if e.kind == VIRTUAL:
                    vmap.setdefault(e.ref, []).append(nid)
            return
        a, b, classes = hit
        side = set(_choose_side(classes))
        vid = next(vid_counter)
        virt = SkelEdge(a, b, VIRTUAL, vid)
        recurse([e for i, e in enumerate(edges) if i in side] + [virt])
        recurse([e for i, e in enumerate(edges) if i not in side] + [virt])

    recurse([SkelEdge(u, v, REAL, eid) for eid, (u, v, _) in enumerate(g.edges)])

    # merge adjacent dipole pairs and adjacent cycle pairs to a fixed point
    def vertices_of(nid):
        return {x for e in skeletons[nid] for x in (e.u, e.v)}

    def mergeable(x, y):
        vx, vy = vertices_of(x), vertices_of(y)
        if _is_dipole(vx, skeletons[x]) and _is_dipole(vy, skeletons[y]):
            return True
        return _is_cycle(vx, skeletons[x]) and _is_cycle(vy, skeletons[y])

    while True:
        candidate = None
        for vid in sorted(vmap):
            x, y = vmap[vid]
            if mergeable(x, y):
                candidate = (vid, min(x, y), max(x, y))
                break
        if candidate is None:
            break
        vid, keep, drop = candidate
        merged = [e for e in skeletons[keep] if not (e.kind == VIRTUAL and e.ref == vid)]
        merged += [e for e in skeletons[drop] if not (e.kind == VIRTUAL and e.ref == vid)]
        skeletons[keep] = merged
        del skeletons[drop]
        del vmap[vid]
        for other, members in vmap.items():
            vmap[other] = [keep if nid == drop else nid for nid in members]

    # freeze nodes with compacted ids in construction order
    order = sorted(skeletons)
    remap = {old: new for new, old in enumerate(order)}
    nodes = []
    for old in order:
        edges = tuple(
            sorted(skeletons[old], key=lambda e: (e.kind != REAL, e.ref))
        )
        verts = frozenset(x for e in edges for x in (e.u, e.v))
        nodes.append(SpqrNode(remap[old], _classify(verts, edges), verts, edges))
    tree_edges = tuple(
        sorted(
            (min(remap[x], remap[y]), max(remap[x], remap[y]), vid)
            for vid, (x, y) in vmap.items()
        )
    )

    # root at the node holding the lowest-id real edge
    lowest_real = min(e.ref for node in nodes for e in node.edges if e.kind == REAL)
    root = next(
        node.nid
        for node in nodes
        if any(e.kind == REAL and e.ref == lowest_real for e in node.edges)
    )
    adj = {node.nid: [] for node in nodes}
    for x, y, vid in tree_edges:
        adj[x].append((y, vid))
        adj[y].append((x, vid))
    parent = [None] * len(nodes)
    parent_vid = [None] * len(nodes)
    depth = [0] * len(nodes)
    parent[root] = root
    frontier = [root]
    while frontier:
        nxt = []
        for x in frontier:
            for y, vid in sorted(adj[x]):
                if parent[y] is None:
                    parent[y] = x
                    parent_vid[y] = vid
                    depth[y] = depth[x] + 1
                    nxt.append(y)
        frontier = nxt
    if any(p is None for p in parent):
        raise AssertionError("SPQR tree must be connected")
    children = [
        tuple(sorted(y for y in range(len(nodes)) if parent[y] == x and y != x))
        for x in range(len(nodes))
    ]

    nodes_of_vertex = {}
    for node in nodes:
        for x in node.vertices:
            nodes_of_vertex.setdefault(x, []).append(node.nid)
    h_map, l_map = {}, {}
    for x, nids in nodes_of_vertex.items():
        top = sorted(nids, key=lambda nid: (depth[nid], nid))
        h_map[x] = top[0]
        if len(top) > 1 and depth[top[0]] == depth[top[1]]:
            raise AssertionError("copies of a vertex must have a unique highest node")
        l_map[x] = sorted(nids, key=lambda nid: (-depth[nid], nid))[0]
        nodes_of_vertex[x] = tuple(sorted(nids))

    return SpqrTree(
        nodes=tuple(nodes),
        tree_edges=tree_edges,
        root=root,
        parent=tuple(parent),
        parent_vid=tuple(parent_vid),
        depth=tuple(depth),
        children=tuple(children),
        h_map=h_map,
        l_map=l_map,
        nodes_of_vertex=nodes_of_vertex,
    )


# ---------------------------------------------------------------------------
# queries and serialization


def enumerate_two_cuts(tree):
    """The exact 2-vertex-cut set of the decomposed graph, assembled from
    P-node poles, virtual edges on R-R or R-S tree edges, and non-adjacent
    vertex pairs on each S-node cycle."""
    cuts = set()
    for node in tree.nodes:
        if node.kind == "P":
            cuts.add(frozenset(node.vertices))
    for x, y, vid in tree.tree_edges:
        kinds = {tree.nodes[x].kind, tree.nodes[y].kind}
        if "R" in kinds and kinds <= {"R", "S"}:
            cuts.add(frozenset(tree.virtual_endpoints(vid)))
    for node in tree.nodes:
        if node.kind != "S":
            continue
        order, _ = node.cycle_order()
        k = len(order)
        for i in range(k):
            for j in range(i + 2, k):
                if i == 0 and j == k - 1:
                    continue  # adjacent around the wrap
                cuts.add(frozenset((order[i], order[j])))
    return cuts


def remerged_edges(tree):
    """Undo every split bottom-up; returns the reconstructed multiset of
    (u, v) pairs, which must match the input graph's edges exactly."""
    rep = {node.nid: node.nid for node in tree.nodes}

    def find(x):
        while rep[x] != x:
            rep[x] = rep[rep[x]]
            x = rep[x]
        return x

    skeletons = {node.nid: list(node.edges) for node in tree.nodes}
    deepest_first = sorted(
        tree.tree_edges, key=lambda t: (-max(tree.depth[t[0]], tree.depth[t[1]]), t[2])
    )
    for x, y, vid in deepest_first:
        rx, ry = find(x), find(y)
        if rx == ry:
            raise AssertionError("tree edges must join distinct components")
        merged = [e for e in skeletons[rx] if not (e.kind == VIRTUAL and e.ref == vid)]
        merged += [e for e in skeletons[ry] if not (e.kind == VIRTUAL and e.ref == vid)]
        target, gone = min(rx, ry), max(rx, ry)
        rep[gone] = target
        skeletons[target] = merged
        del skeletons[gone]
    (final,) = skeletons.values()
    if any(e.kind != REAL for e in final):
        raise AssertionError("a full remerge must eliminate every virtual edge")
    return sorted(e.pair() for e in final)


def to_debug_lines(tree):
    """One node per line: 'id kind vertices | real-edges | virtual-edges(peer-id)'."""
    peer = {}
    for x, y, vid in tree.tree_edges:
        peer[(x, vid)] = y
        peer[(y, vid)] = x
    lines = []
    for node in tree.nodes:
        verts = ",".join(str(x) for x in sorted(node.vertices))
        reals = ",".join(f"{u}-{v}" for u, v in sorted(e.pair() for e in node.real_edges()))
        virts = ",".join(
            f"{e.pair()[0]}-{e.pair()[1]}({peer[(node.nid, e.ref)]})"
            for e in sorted(node.virtual_edges(), key=lambda e: e.ref)
        )
        lines.append(f"{node.nid} {node.kind} {verts} | {reals} | {virts}")
    return lines


def canonical_form(tree):
    """Serialization that is stable under node renumbering, for tree equality
    up to isomorphism in tests."""

    def describe(node):
        verts = ",".join(map(str, sorted(node.vertices)))
        reals = ",".join(f"{u}-{v}" for u, v in sorted(e.pair() for e in node.real_edges()))
        virts = ",".join(f"{u}-{v}" for u, v in sorted(e.pair() for e in node.virtual_edges()))
        return f"{node.kind}[{verts}|{reals}|{virts}]"

    descs = {node.nid: describe(node) for node in tree.nodes}
    node_part = sorted(descs.values())
    edge_part = sorted(
        "--".join(sorted((descs[x], descs[y]))) for x, y, _ in tree.tree_edges
    )
    return ";".join(node_part) + "//" + ";".join(edge_part)
