"""Tour of the connectivity primitives.

Builds a small graph and asks, for a few vertex pairs, how many disjoint
paths survive under the three disjointness notions: edge-disjoint,
internally-vertex-disjoint, and element-disjoint (paths may share reliable
vertices but not edges or non-reliable ones).
"""

from streamnd import (
    ConnectivityMode,
    Graph,
    RequirementMap,
    check_feasible,
    is_k_connected,
    pair_connectivity,
)

# two triangles sharing an edge, plus a pendant path
edges = [(0, 1), (1, 2), (2, 0), (1, 3), (3, 2), (3, 4), (4, 5)]
g = Graph.build(6, edges)

print("graph:", edges)
for u, v in [(0, 3), (0, 5), (1, 2)]:
    row = {
        mode.value: pair_connectivity(g, u, v, mode) for mode in ConnectivityMode
    }
    print(f"disjoint {u}-{v} paths per mode: {row}")

# mark vertex 3 unreliable: element-disjoint paths may no longer share it
weak = Graph.build(6, edges, reliable=[True, True, True, False, True, True])
print(
    "with vertex 3 unreliable, element connectivity of (1, 2):",
    pair_connectivity(weak, 1, 2, ConnectivityMode.ELEMENT),
)

req = RequirementMap.from_pairs([(0, 2, 2), (0, 4, 1)])
print("requirements satisfied:", check_feasible(g, req, ConnectivityMode.VERTEX))
print("graph is 2-vertex-connected:", is_k_connected(g, 2, ConnectivityMode.VERTEX))
print("...but its core triangle pair (1,2) is 3-edge-connected:",
      pair_connectivity(g, 1, 2, ConnectivityMode.EDGE) >= 3)
