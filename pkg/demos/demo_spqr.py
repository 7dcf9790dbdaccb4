"""Decomposing a 2-connected graph into its SPQR tree.

The skeletons come in three shapes: S nodes are cycles, P nodes are dipoles
(two vertices, parallel edges), R nodes are 3-connected blocks.  Virtual
edges stitch the skeletons together, and every 2-vertex cut of the input can
be read off the tree without touching the input graph again.
"""

from streamnd import Graph, build_spqr, enumerate_two_cuts, to_debug_lines

# a dipole hub {0,1} carrying two short cycles and a longer cycle that opens
# into a 3-connected block (a complete bipartite 3x3 minus one edge)
edges = [
    (0, 2), (2, 1),
    (0, 3), (3, 1),
    (0, 4), (5, 1),
    (4, 7), (4, 9), (6, 5), (6, 7), (6, 9), (8, 5), (8, 7), (8, 9),
]
g = Graph.build(10, edges)
tree = build_spqr(g)

print("skeletons (id kind vertices | real edges | virtual edges(peer)):")
for line in to_debug_lines(tree):
    print(" ", line)

print("tree edges (node, node, shared virtual edge):", tree.tree_edges)
print("rooted at node", tree.root)

print("vertex copies: highest/lowest node per vertex")
for x in sorted(tree.h_map):
    print(f"  vertex {x}: h={tree.h_map[x]} l={tree.l_map[x]}")

cuts = sorted(tuple(sorted(c)) for c in enumerate_two_cuts(tree))
print("all 2-vertex cuts, assembled from the tree:", cuts)
