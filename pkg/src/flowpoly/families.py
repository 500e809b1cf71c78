"""Graph and interval families, plus the sweep harness that runs checks over them."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Callable, Iterable, Iterator

from ._config import thread_count
from .errors import ValidationError
from .graphmat import SpinalGraph, intervals_to_graph, is_non_nested, is_non_redundant

Interval = tuple[int, int]


def catalan(d: int) -> int:
    return comb(2 * d, d) // (d + 1)


def enumerate_interval_collections(d: int) -> list[tuple[Interval, ...]]:
    """Non-redundant interval collections covering [d]; there are Cat(d) of them.

    Each comes from an antichain of intervals of length >= 2 (none contains
    another), completed by the singletons it leaves uncovered.
    """
    if d < 1:
        raise ValidationError(f"d must be >= 1, got {d}")
    out = []

    # non-nesting intervals sorted by left end have strictly increasing right ends
    def grow(chosen: list[Interval], min_left: int, min_right: int):
        yield list(chosen)
        for lo in range(min_left, d):
            for hi in range(max(lo + 1, min_right), d + 1):
                chosen.append((lo, hi))
                yield from grow(chosen, lo + 1, hi + 1)
                chosen.pop()

    for antichain in grow([], 1, 2):
        covered = {c for lo, hi in antichain for c in range(lo, hi + 1)}
        singles = [(c, c) for c in range(1, d + 1) if c not in covered]
        out.append(tuple(sorted(antichain + singles)))
    return sorted(out)


def _candidate_edges(vertex_count: int, simple: bool) -> list[tuple[int, int]]:
    gap = 2 if simple else 1
    return [(i, j) for i in range(1, vertex_count + 1) for j in range(i + gap, vertex_count + 1)]


def enumerate_spinal_graphs(max_vertices: int, max_nonslack: int | None = None,
                            simple_only: bool = False, min_vertices: int = 2) -> Iterator[SpinalGraph]:
    """Every spinal graph in canonical form, by vertex count, then edge count, then edges.

    Simple graphs have no repeated edge and no edge parallel to the spine;
    without ``simple_only`` a bound on non-slack edges is required.
    """
    if max_nonslack is None and not simple_only:
        raise ValidationError("multigraph enumeration needs max_nonslack")
    for v in range(max(1, min_vertices), max_vertices + 1):
        cands = _candidate_edges(v, simple_only)
        top = len(cands) if max_nonslack is None else max_nonslack
        if simple_only:
            top = min(top, len(cands))
        for size in range(0, top + 1):
            picker = combinations if simple_only else combinations_with_replacement
            for edges in picker(cands, size):
                yield SpinalGraph(v, edges)


def nonnested_nonredundant_graphs(d: int) -> list[SpinalGraph]:
    """Non-nested, non-redundant graphs with exactly d non-slack edges."""
    out = []
    for v in range(2, d + 2):
        for edges in combinations_with_replacement(_candidate_edges(v, False), d):
            g = SpinalGraph(v, edges)
            if is_non_nested(g) and is_non_redundant(g):
                out.append(g)
    return out


def graphs_from_collections(d: int) -> list[SpinalGraph]:
    return [intervals_to_graph(c, d) for c in enumerate_interval_collections(d)]


# ---------------------------------------------------------------- checks


def _poly(p) -> list[str]:
    return [str(c) for c in p.coefficients]


def check_volume_triple(g: SpinalGraph) -> tuple[bool, dict]:
    from .hstar import ehrhart_normalized_leading
    from .volume import volume_compact, volume_unit

    a, b, c = volume_compact(g), volume_unit(g), ehrhart_normalized_leading(g)
    return a == b == c, {"compact": str(a), "general": str(b), "ehrhart": str(c)}


def check_conjecture_case(g: SpinalGraph) -> tuple[bool, dict]:
    from .hstar import check_conjecture

    report = check_conjecture(g)
    return report.passed, report.to_dict()


def check_hstar_descents(g: SpinalGraph) -> tuple[bool, dict]:
    from .hstar import hstar_polynomial, hstar_via_descents

    a, b = hstar_polynomial(g), hstar_via_descents(g)
    return a == b, {"ehrhart": _poly(a), "descents": _poly(b)}


def check_upper_lower(g: SpinalGraph) -> tuple[bool, dict]:
    from .cyclic import enumerate_orders

    up = {o.reading for o in enumerate_orders(g, "upper")}
    low = {o.reading for o in enumerate_orders(g, "lower")}
    only_up = sorted(up - low)[:3]
    only_low = sorted(low - up)[:3]
    return up == low, {"upper": len(up), "lower": len(low),
                       "only_upper": [list(r) for r in only_up], "only_lower": [list(r) for r in only_low]}


def check_cyclic_bijection(g: SpinalGraph) -> tuple[bool, dict]:
    from .cyclic import classify_order, flow_to_order, is_g_compatible, order_to_flow
    from .flows import enumerate_flows, indegree_netflow
    from .volume import volume_compact

    vol = volume_compact(g)
    flows = list(enumerate_flows(g, indegree_netflow(g)))
    problems = []
    for mode in ("upper", "lower"):
        seen = set()
        for f in flows:
            gamma = flow_to_order(g, f, mode)
            seen.add(gamma.reading)
            if not is_g_compatible(g, gamma):
                problems.append(f"{mode} order {gamma} is not compatible")
            elif not getattr(classify_order(g, gamma), mode):
                problems.append(f"{mode} order {gamma} misclassified")
            elif order_to_flow(g, gamma) != f:
                problems.append(f"{mode} round trip fails at {gamma}")
        if len(seen) != vol:
            problems.append(f"{len(seen)} distinct {mode} orders, volume {vol}")
    return not problems, {"volume": str(vol), "problems": problems[:5]}


def check_chain_extension(g: SpinalGraph) -> tuple[bool, dict]:
    from itertools import permutations

    from .cyclic import CyclicOrder, activity_profile, contains_chain, first_violation, required_chains

    profile = activity_profile(g)
    chains = required_chains(g, reduced=True)
    mismatches = []
    for perm in permutations(range(1, g.d + 1)):
        gamma = CyclicOrder((0,) + perm)
        extends = all(contains_chain(gamma, c) for c in chains)
        if extends != (first_violation(g, gamma, profile) is None):
            mismatches.append(list(gamma.reading))
            if len(mismatches) >= 3:
                break
    return not mismatches, {"mismatches": mismatches}


def check_log_concavity_case(case: tuple[int, int]) -> tuple[bool, dict]:
    from .eulerent import check_log_concavity, entringer_table

    k, N = case
    report = check_log_concavity(entringer_table(k, N))
    return report.ok, {"checked": report.checked,
                       "violations": [[list(s), i, j, str(a), str(b)] for s, i, j, a, b in report.violations[:5]]}


def _graph_family(params: dict, *, non_nested: bool = False) -> list[SpinalGraph]:
    gs = enumerate_spinal_graphs(
        params["max_vertices"], params.get("max_nonslack"), params.get("simple", False),
        params.get("min_vertices", 2),
    )
    if non_nested or params.get("non_nested"):
        return [g for g in gs if is_non_nested(g)]
    return list(gs)


@dataclass(frozen=True)
class CheckSpec:
    func: Callable
    family: Callable[[dict], list]
    defaults: dict = field(default_factory=dict)
    subject: str = "graph"


CHECKS: dict[str, CheckSpec] = {
    "conjecture": CheckSpec(check_conjecture_case, _graph_family,
                            {"max_vertices": 6, "simple": True}),
    "volume-triple-agreement": CheckSpec(check_volume_triple, _graph_family,
                                         {"max_vertices": 5, "max_nonslack": 4, "simple": True}),
    "upper-lower-equality": CheckSpec(check_upper_lower, lambda p: _graph_family(p, non_nested=True),
                                      {"max_vertices": 6, "max_nonslack": 5}),
    "hstar-descents": CheckSpec(check_hstar_descents, lambda p: _graph_family(p, non_nested=True),
                                {"max_vertices": 6, "max_nonslack": 5}),
    "cyclic-bijection": CheckSpec(check_cyclic_bijection, _graph_family,
                                  {"max_vertices": 5, "max_nonslack": 4}),
    "chain-extension": CheckSpec(check_chain_extension, lambda p: _graph_family(p, non_nested=True),
                                 {"max_vertices": 6, "max_nonslack": 6}),
    "log-concavity": CheckSpec(check_log_concavity_case,
                               lambda p: [(k, N) for k in range(p.get("kmin", 2), p["kmax"] + 1)
                                          for N in range(0, p["nmax"] + 1)],
                               {"kmax": 4, "nmax": 7}, subject="table"),
}


@dataclass
class SweepReport:
    check: str
    params: dict
    total: int
    passed: int
    failures: list[dict]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {"check": self.check, "params": self.params, "total": self.total,
                "passed": self.passed, "failed": len(self.failures), "failures": self.failures}


def _describe(subject: str, item) -> dict:
    if subject == "graph":
        return {"graph": item.to_dict()}
    k, N = item
    return {"k": k, "N": N}


def _chunks(items: list, threads: int) -> int:
    return max(1, len(items) // (threads * 8))


def sweep(check: str, threads: int | None = None, **params) -> SweepReport:
    """Run a registered check over its family; results in family order."""
    if check not in CHECKS:
        raise ValidationError(f"unknown check {check!r}; choose from {', '.join(sorted(CHECKS))}")
    spec = CHECKS[check]
    merged = dict(spec.defaults)
    merged.update({k: v for k, v in params.items() if v is not None})
    items = spec.family(merged)
    threads = thread_count() if threads is None else threads
    if threads > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(spec.func, items, chunksize=_chunks(items, threads)))
    else:
        results = [spec.func(x) for x in items]
    failures = []
    for item, (ok, detail) in zip(items, results):
        if not ok:
            failures.append({**_describe(spec.subject, item), **detail})
    return SweepReport(check, merged, len(items), len(items) - len(failures), failures)
