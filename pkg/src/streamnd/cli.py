"""Command-line front end: stream algorithms, oracles, and JSON reports.

Exit codes: 0 success, 1 usage or parse error, 2 infeasible instance,
3 a size guard was exceeded.  Reports are single JSON objects (one per line
for bench); stored-edge counts are exactly the edges a streaming algorithm
retains, never process memory.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .cap1 import Cap1State
from .cap2 import Cap2State
from .errors import InfeasibleError, ParseError, ResourceLimitError
from .framework import Analysis, FrameworkConfig, run_framework
from .graph import (
    ConnectivityMode,
    Graph,
    RequirementMap,
    load_graph,
    load_reliability,
    load_requirements,
    pair_connectivity,
    parse_graph_file,
    save_graph,
)
from .oracle import (
    Family,
    InstanceGenerator,
    brute_optimal,
    generate,
    max_disjoint_paths,
    offline_mst_weight,
)
from .spanner import FaultMode, FtConfig, FtSpannerState, TestKind, verify_ft_spanner
from .streams import BucketScheme, EdgeStream, StreamingMst, open_stream

MODES = {
    "ec": ConnectivityMode.EDGE,
    "vc": ConnectivityMode.VERTEX,
    "elc": ConnectivityMode.ELEMENT,
}
FAULT_MODES = {"vft": FaultMode.VERTEX, "eft": FaultMode.EDGE}
TESTS = {
    "exact": TestKind.EXACT,
    "sampled": TestKind.SAMPLED_VFT,
    "peeling": TestKind.PEELING_EFT,
}


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _ratio(sol_weight, opt_weight):
    if opt_weight == 0:
        return 1.0 if sol_weight == 0 else None
    return sol_weight / opt_weight


def _emit(report, pretty, stream=None):
    out = stream or sys.stdout
    text = json.dumps(report, sort_keys=True, indent=2 if pretty else None)
    out.write(text + "\n")


class _Timer:
    def __enter__(self):
        self.t0 = time.monotonic()
        return self

    def __exit__(self, *exc):
        self.ms = int((time.monotonic() - self.t0) * 1000)
        return False


def _build_parser():
    top = argparse.ArgumentParser(prog="streamnd")
    top.add_argument("--seed", type=int, default=0)
    top.add_argument("--json-pretty", action="store_true")
    # the global flags are also accepted after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--json-pretty", action="store_true", default=argparse.SUPPRESS)
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spanner", help="build a fault-tolerant spanner from a stream", parents=[common])
    p.add_argument("--mode", choices=FAULT_MODES, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--eps", type=_fraction, required=True)
    p.add_argument("--test", choices=TESTS, default=None)
    p.add_argument("--shuffle-seed", type=int, default=None)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("sndp", help="spanner-then-exact-solve for a requirement map", parents=[common])
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--analysis", choices=[a.value for a in Analysis], default="fractional")
    p.add_argument("--graph", required=True)
    p.add_argument("--req", required=True)
    p.add_argument("--reliability", default=None)
    p.add_argument("--shuffle-seed", type=int, default=None)
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("cap1", help="augment a tree to 2-vertex-connectivity", parents=[common])
    p.add_argument("--base", required=True)
    p.add_argument("--links", required=True)
    p.add_argument("--eps", type=_fraction, required=True)
    p.add_argument("--shuffle-seed", type=int, default=None)
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("cap2", help="augment a 2-connected base to 3-connectivity", parents=[common])
    p.add_argument("--base", required=True)
    p.add_argument("--links", required=True)
    p.add_argument("--eps", type=_fraction, required=True)
    p.add_argument("--shuffle-seed", type=int, default=None)
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("oracle", help="optimal solution by brute-force enumeration", parents=[common])
    p.add_argument("--base", required=True)
    p.add_argument("--links", required=True)
    p.add_argument("--req", required=True)
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--reliability", default=None)

    p = sub.add_parser("verify-spanner", help="exhaustive fault-tolerance check", parents=[common])
    p.add_argument("--graph", required=True)
    p.add_argument("--spanner", required=True)
    p.add_argument("--mode", choices=FAULT_MODES, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--eps", type=_fraction, required=True)

    p = sub.add_parser("bench", help="seeded suite runs, one JSON line per seed", parents=[common])
    p.add_argument("--suite", choices=["spanner", "sndp", "cap1", "cap2", "mst", "menger"], required=True)
    p.add_argument("--seeds", required=True, help="inclusive range, e.g. 1..100")
    p.add_argument("--eps", type=_fraction, default=Fraction(1, 2))
    return top


def _scan_max_weight(path):
    _, edges = parse_graph_file(path)
    return max((w for _, _, w in edges), default=0)


def _cmd_spanner(args):
    max_weight = _scan_max_weight(args.input)
    stream = open_stream(args.input, shuffle_seed=args.shuffle_seed)
    config = FtConfig(
        f=args.f,
        t=args.t,
        mode=FAULT_MODES[args.mode],
        eps=args.eps,
        test_kind=TESTS[args.test] if args.test else None,
        seed=args.seed,
    )
    with _Timer() as timer:
        state = FtSpannerState(stream.n, config, max_weight)
        for u, v, w in stream:
            state.process_edge(u, v, w)
    save_graph(state.spanner_graph(), args.output)
    sidecar = {
        "stored_edges": state.stored_edge_count,
        "buckets": sorted(state.buckets),
        "params": {
            "mode": args.mode,
            "f": args.f,
            "t": args.t,
            "eps": str(config.eps),
            "test": state.config.test_kind.value,
        },
    }
    with open(args.output + ".json", "w") as fh:
        json.dump(sidecar, fh, sort_keys=True)
        fh.write("\n")
    report = dict(sidecar, wall_time_ms=timer.ms)
    _emit(report, args.json_pretty)
    return 0


def _cmd_sndp(args):
    req = load_requirements(args.req)
    max_weight = _scan_max_weight(args.graph)
    stream = open_stream(args.graph, shuffle_seed=args.shuffle_seed)
    reliable = None
    if args.reliability:
        reliable = load_reliability(args.reliability, stream.n)
    cfg = FrameworkConfig(t=args.t, mode=MODES[args.mode], analysis=Analysis(args.analysis))
    with _Timer() as timer:
        result = run_framework(
            stream, req, cfg, reliable=reliable, max_weight=max_weight, seed=args.seed
        )
    report = {
        "params": {
            "mode": args.mode,
            "t": args.t,
            "analysis": args.analysis,
            "f": cfg.fault_budget(req.k),
            "eps": str(cfg.eps),
            "k": req.k,
        },
        "stored_edges": result.stored_edges,
        "sol_weight": result.weight,
        "factor_bound": cfg.factor_bound(req.k),
        "wall_time_ms": timer.ms,
    }
    if args.oracle:
        g = load_graph(args.graph, args.reliability)
        empty = Graph.build(g.n, (), g.reliable)
        _, opt_weight = brute_optimal(empty, g.edges, req, MODES[args.mode])
        report["opt_weight"] = opt_weight
        report["ratio"] = _ratio(result.weight, opt_weight)
    _emit(report, args.json_pretty)
    return 0


def _cap_common(args, build_state, augment_k):
    base = load_graph(args.base)
    max_weight = max(_scan_max_weight(args.links), 0)
    scheme = BucketScheme(args.eps, max_weight)
    links_stream = open_stream(args.links, shuffle_seed=args.shuffle_seed)
    if links_stream.n != base.n:
        raise ParseError(args.links, 1, f"links declare n={links_stream.n}, base has n={base.n}")
    with _Timer() as timer:
        state = build_state(base, scheme)
        links = []
        for u, v, w in links_stream:
            links.append((u, v, w))
            state.process_link(u, v, w)
        result = state.finalize()
    report = {
        "params": {"eps": str(Fraction(args.eps)), "n": base.n},
        "stored_links": len(result.stored),
        "sol_weight": result.weight,
        "wall_time_ms": timer.ms,
    }
    if args.oracle:
        req = RequirementMap.uniform(base.n, augment_k)
        _, opt_weight = brute_optimal(base, links, req, ConnectivityMode.VERTEX)
        report["opt_weight"] = opt_weight
        report["ratio"] = _ratio(result.weight, opt_weight)
    return state, result, report


def _cmd_cap1(args):
    state, result, report = _cap_common(
        args, lambda base, scheme: Cap1State.from_base(base, scheme), 2
    )
    _emit(report, args.json_pretty)
    return 0


def _cmd_cap2(args):
    state, result, report = _cap_common(
        args, lambda base, scheme: Cap2State.from_base(base, scheme), 3
    )
    report["spqr_nodes"] = len(state.tree.nodes)
    _emit(report, args.json_pretty)
    return 0


def _cmd_oracle(args):
    base = load_graph(args.base, args.reliability)
    _, links = parse_graph_file(args.links)
    req = load_requirements(args.req)
    with _Timer() as timer:
        ids, weight = brute_optimal(base, links, req, MODES[args.mode])
    report = {
        "opt_weight": weight,
        "opt_links": [list(links[i]) for i in ids],
        "wall_time_ms": timer.ms,
    }
    _emit(report, args.json_pretty)
    return 0


def _cmd_verify_spanner(args):
    g = load_graph(args.graph)
    h = load_graph(args.spanner)
    # map spanner edges onto g edge ids by value
    pool = {}
    for eid, (u, v, w) in enumerate(g.edges):
        pool.setdefault((min(u, v), max(u, v), w), []).append(eid)
    kept = []
    for u, v, w in h.edges:
        bucket = pool.get((min(u, v), max(u, v), w))
        if not bucket:
            raise ParseError(args.spanner, 0, f"edge ({u},{v},{w}) is not in the graph")
        kept.append(bucket.pop())
    config = FtConfig(f=args.f, t=args.t, mode=FAULT_MODES[args.mode], eps=args.eps)
    with _Timer() as timer:
        ok = verify_ft_spanner(g, kept, config)
    _emit({"ok": ok, "wall_time_ms": timer.ms}, args.json_pretty)
    return 0 if ok else 2


# -- bench suites; every line is deterministic for a fixed seed


def _bench_cap1(seed, eps):
    gen = InstanceGenerator(seed=seed, family=Family.TREE, n=8, link_count=4)
    inst = generate(gen)
    scheme = BucketScheme(eps, max((w for _, _, w in inst.links), default=0))
    state = Cap1State.from_base(inst.base, scheme)
    for u, v, w in inst.links:
        state.process_link(u, v, w)
    result = state.finalize()
    req = RequirementMap.uniform(inst.base.n, 2)
    _, opt = brute_optimal(inst.base, inst.links, req, ConnectivityMode.VERTEX)
    return {
        "seed": seed,
        "stored_links": len(result.stored),
        "sol_weight": result.weight,
        "opt_weight": opt,
        "ratio": _ratio(result.weight, opt),
    }


def _bench_cap2(seed, eps):
    gen = InstanceGenerator(seed=seed, family=Family.TWO_CONNECTED, n=7, link_count=3, chords=2)
    inst = generate(gen)
    scheme = BucketScheme(eps, max((w for _, _, w in inst.links), default=0))
    state = Cap2State.from_base(inst.base, scheme)
    for u, v, w in inst.links:
        state.process_link(u, v, w)
    result = state.finalize()
    req = RequirementMap.uniform(inst.base.n, 3)
    _, opt = brute_optimal(inst.base, inst.links, req, ConnectivityMode.VERTEX)
    return {
        "seed": seed,
        "stored_links": len(result.stored),
        "spqr_nodes": len(state.tree.nodes),
        "sol_weight": result.weight,
        "opt_weight": opt,
        "ratio": _ratio(result.weight, opt),
    }


def _bench_sndp(seed, eps):
    import random

    gen = InstanceGenerator(seed=seed, family=Family.CYCLE_PLUS_CHORDS, n=8, chords=3)
    inst = generate(gen)
    rng = random.Random(seed * 7_919 + 1)
    chosen = {}
    for _ in range(3):
        u = rng.randrange(inst.base.n)
        v = rng.randrange(inst.base.n)
        if u == v or (min(u, v), max(u, v)) in chosen:
            continue
        cap = pair_connectivity(inst.base, u, v, ConnectivityMode.VERTEX)
        if cap == 0:
            continue
        chosen[(min(u, v), max(u, v))] = min(2, cap)
    if not chosen:
        chosen[(0, 1)] = 1
    req = RequirementMap.from_pairs([(u, v, r) for (u, v), r in chosen.items()])
    cfg = FrameworkConfig(t=2, mode=ConnectivityMode.VERTEX, analysis=Analysis.INTEGRAL)
    stream = EdgeStream.from_edges(inst.base.n, inst.base.edges)
    result = run_framework(stream, req, cfg, max_weight=inst.base.max_weight(), seed=seed)
    empty = Graph.build(inst.base.n, ())
    _, opt = brute_optimal(empty, inst.base.edges, req, ConnectivityMode.VERTEX)
    return {
        "seed": seed,
        "stored_edges": result.stored_edges,
        "sol_weight": result.weight,
        "opt_weight": opt,
        "ratio": _ratio(result.weight, opt),
        "factor_bound": cfg.factor_bound(req.k),
    }


def _bench_spanner(seed, eps):
    gen = InstanceGenerator(seed=seed, family=Family.GNP, n=16, edge_prob=0.3)
    inst = generate(gen)
    config = FtConfig(f=1, t=2, mode=FaultMode.VERTEX, eps=eps, test_kind=TestKind.EXACT)
    state = FtSpannerState(inst.base.n, config, inst.base.max_weight())
    for u, v, w in inst.base.edges:
        state.process_edge(u, v, w)
    return {
        "seed": seed,
        "input_edges": len(inst.base.edges),
        "stored_edges": state.stored_edge_count,
    }


def _bench_mst(seed, eps):
    import random

    rng = random.Random(seed)
    n = 9
    links = [
        (rng.randrange(n), rng.randrange(n), rng.randint(1, 20)) for _ in range(16)
    ]
    links = [(u, v, w) for u, v, w in links if u != v]
    mst = StreamingMst(range(n))
    for u, v, w in links:
        mst.insert(u, v, w)
    stored = mst.total_weight()
    offline = offline_mst_weight(range(n), links)
    return {"seed": seed, "stored_weight": stored, "offline_weight": offline, "ratio": _ratio(stored, offline)}


def _bench_menger(seed, eps):
    gen = InstanceGenerator(seed=seed, family=Family.GNP, n=6, edge_prob=0.5)
    inst = generate(gen)
    agree = 0
    total = 0
    for mode in ConnectivityMode:
        for u, v in ((0, 1), (0, inst.base.n - 1)):
            total += 1
            flow = pair_connectivity(inst.base, u, v, mode)
            if flow == max_disjoint_paths(inst.base, u, v, mode):
                agree += 1
    return {"seed": seed, "checked": total, "agree": agree}


_SUITES = {
    "cap1": _bench_cap1,
    "cap2": _bench_cap2,
    "sndp": _bench_sndp,
    "spanner": _bench_spanner,
    "mst": _bench_mst,
    "menger": _bench_menger,
}


def _cmd_bench(args):
    try:
        lo, hi = args.seeds.split("..")
        lo, hi = int(lo), int(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed range {args.seeds!r}") from None
    runner = _SUITES[args.suite]
    max_ratio = None
    for seed in range(lo, hi + 1):
        report = runner(seed, args.eps)
        ratio = report.get("ratio")
        if ratio is not None:
            max_ratio = ratio if max_ratio is None else max(max_ratio, ratio)
        _emit(report, args.json_pretty)
    _emit({"suite": args.suite, "seeds": args.seeds, "max_ratio": max_ratio}, args.json_pretty)
    return 0


_COMMANDS = {
    "spanner": _cmd_spanner,
    "sndp": _cmd_sndp,
    "cap1": _cmd_cap1,
    "cap2": _cmd_cap2,
    "oracle": _cmd_oracle,
    "verify-spanner": _cmd_verify_spanner,
    "bench": _cmd_bench,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return 3
    except argparse.ArgumentTypeError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
