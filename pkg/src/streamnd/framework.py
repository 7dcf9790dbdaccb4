"""End-to-end network design on a stream: build a fault-tolerant spanner with
requirement-derived parameters, then solve the instance exactly on the kept
edges."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InfeasibleError, ResourceLimitError
from .graph import ConnectivityMode, Graph, check_feasible
from .spanner import FaultMode, FtConfig, FtSpannerState, TestKind


class Analysis(Enum):
    INTEGRAL = "integral"
    FRACTIONAL = "fractional"


@dataclass(frozen=True)
class FrameworkConfig:
    """Stretch parameter, connectivity mode, and the analysis flavour that
    fixes the fault budget.  eps is always 1/(2t-1)."""

    t: int
    mode: ConnectivityMode
    analysis: Analysis = Analysis.FRACTIONAL

    def __post_init__(self):
        if self.t < 1:
            raise ValueError("t must be at least 1")

    @property
    def eps(self):
        return Fraction(1, 2 * self.t - 1)

    def fault_budget(self, k):
        """Fault-tolerance parameter for maximum requirement k."""
        t = self.t
        if self.mode is ConnectivityMode.EDGE:
            return max(0, (2 * t - 1) * (2 * k - 1))
        if self.mode is ConnectivityMode.VERTEX and self.analysis is Analysis.INTEGRAL:
            return max(0, (2 * t - 2) * (k - 1))
        return max(0, (2 * t - 2) * (2 * k - 1))

    def fault_mode(self):
        if self.mode is ConnectivityMode.EDGE:
            return FaultMode.EDGE
        return FaultMode.VERTEX

    def factor_bound(self, k):
        """Certified approximation ceiling for this configuration, if any."""
        if self.mode is ConnectivityMode.EDGE or self.mode is ConnectivityMode.ELEMENT:
            return 8 * self.t
        if self.analysis is Analysis.INTEGRAL:
            return 2 * self.t * max(k, 1)
        return 8 * self.t if k <= 2 else None


def exact_solve(g, req, mode, fixed=(), max_branch_edges=40):
    """Minimum-weight feasible edge subset by branch and bound.

    Branching edges are ordered by decreasing weight; a branch is cut when it
    cannot beat the incumbent, when it is already feasible (supersets cost at
    least as much), or when even keeping every remaining edge is infeasible.
    Edges in `fixed` are forced into every solution.
    """
    fixed = frozenset(fixed)
    free = [i for i in range(len(g.edges)) if i not in fixed]
    if len(free) > max_branch_edges:
        raise ResourceLimitError(
            f"{len(free)} branching edges exceeds the solver guard {max_branch_edges}"
        )
    free.sort(key=lambda i: (-g.edges[i][2], i))
    weights = [g.edges[i][2] for i in free]
    fixed_weight = sum(g.edges[i][2] for i in fixed)

    # feasibility is monotone in the edge set; cache minimal feasible and
    # maximal infeasible subsets to spare repeated flow computations
    known_good = []
    known_bad = []

    def feasible(ids):
        fs = frozenset(ids)
        if any(good <= fs for good in known_good):
            return True
        if any(fs <= bad for bad in known_bad):
            return False
        ok = check_feasible(g.subgraph(fs), req, mode)
        if ok:
            known_good[:] = [g_ for g_ in known_good if not fs <= g_]
            known_good.append(fs)
        else:
            known_bad[:] = [b_ for b_ in known_bad if not b_ <= fs]
            known_bad.append(fs)
        return ok

    base_ids = sorted(fixed)
    if not feasible(base_ids + free):
        raise InfeasibleError("no feasible edge subset exists in this graph")

    best = [None, None]

    def rec(i, chosen, weight, rest_known_good):
        if best[0] is not None and weight >= best[0]:
            return
        if feasible(base_ids + chosen):
            best[0] = weight
            best[1] = sorted(base_ids + chosen)
            return
        if i == len(free):
            return
        # the include branch keeps chosen+rest identical to this node's, so
        # only the exclude branch has to re-prove the remainder feasible
        if not rest_known_good and not feasible(base_ids + chosen + free[i:]):
            return
        rec(i + 1, chosen, weight, False)
        rec(i + 1, chosen + [free[i]], weight + weights[i], True)

    rec(0, [], fixed_weight, True)
    if best[0] is None:
        raise InfeasibleError("no feasible edge subset exists in this graph")
    return tuple(best[1]), best[0]


@dataclass(frozen=True)
class FrameworkResult:
    spanner: Graph
    stored_edges: int
    solution: tuple  # (u, v, w) triples from the spanner
    weight: int


def run_framework(stream, req, cfg, reliable=None, max_weight=None, seed=0):
    """Single pass: keep a fault-tolerant spanner sized for the requirements,
    then solve exactly on it.  Raises InfeasibleError when even the full
    spanner cannot meet the requirements (only possible if the input cannot)."""
    k = req.k
    ft = FtConfig(
        f=cfg.fault_budget(k),
        t=cfg.t,
        mode=cfg.fault_mode(),
        eps=cfg.eps,
        test_kind=TestKind.EXACT,
        seed=seed,
    )
    n = stream.n
    items = stream
    if max_weight is None:
        items = list(stream)
        max_weight = max((w for _, _, w in items), default=0)
    state = FtSpannerState(n, ft, max_weight)
    for u, v, w in items:
        state.process_edge(u, v, w)
    spanner = state.spanner_graph(reliable=reliable)
    ids, weight = exact_solve(spanner, req, cfg.mode)
    solution = tuple(spanner.edges[i] for i in ids)
    return FrameworkResult(spanner, state.stored_edge_count, solution, weight)
