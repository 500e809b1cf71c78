"""Integer flows on spinal graphs and the Kostant partition function."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from math import comb
from typing import Iterator, Sequence

from ._config import enum_cap
from .errors import EnumerationCapError, ValidationError
from .graphmat import SpinalGraph


def check_netflow(g: SpinalGraph, a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(x) for x in a)
    if len(a) != g.vertex_count:
        raise ValidationError(f"netflow has length {len(a)}, graph has {g.vertex_count} vertices")
    if sum(a) != 0:
        raise ValidationError(f"netflow entries sum to {sum(a)}, expected 0")
    return a


def unit_netflow(g: SpinalGraph, t: int = 1) -> tuple[int, ...]:
    """t * (e_1 - e_{n+1})."""
    if g.vertex_count == 1:
        return (0,)
    return (t,) + (0,) * (g.vertex_count - 2) + (-t,)


def indegree_netflow(g: SpinalGraph) -> tuple[int, ...]:
    """(0, u_2, ..., u_n, -sum u) with u_i = indeg(i) - 1."""
    if g.vertex_count == 1:
        return (0,)
    u = [g.indegree(v) - 1 for v in range(2, g.vertex_count)]
    return (0, *u, -sum(u))


def _out_groups(g: SpinalGraph) -> list[list[tuple[int, int]]]:
    """Per vertex (0-based), the (head, multiplicity) pairs of its out-edges."""
    groups = []
    for v in range(1, g.vertex_count + 1):
        mult: dict[int, int] = defaultdict(int)
        if v < g.vertex_count:
            mult[v + 1] += 1
        for t, h in g.nonslack_edges:
            if t == v:
                mult[h] += 1
        groups.append(sorted(mult.items()))
    return groups


def kostant(g: SpinalGraph, a: Sequence[int]) -> int:
    """Number of integer a-flows on g.

    Vertices are swept left to right. The state is the inflow already sent
    to each vertex not yet processed, and equal states are merged.  Out-edges
    sharing a head are handled together (stars and bars).
    """
    a = check_netflow(g, a)
    running = 0
    for x in a:
        running += x
        if running < 0:
            return 0
    nv = g.vertex_count
    groups = _out_groups(g)
    states: dict[tuple[int, ...], int] = {(0,) * nv: 1}
    for i in range(nv - 1):
        partial: dict[tuple[int, tuple[int, ...]], int] = defaultdict(int)
        for pend, c in states.items():
            out = pend[0] + a[i]
            if out >= 0:
                partial[(out, pend[1:])] += c
        vgroups = groups[i]
        for gi, (head, mult) in enumerate(vgroups):
            last = gi == len(vgroups) - 1
            idx = head - i - 2
            nxt: dict[tuple[int, tuple[int, ...]], int] = defaultdict(int)
            for (rem, rest), c in partial.items():
                lo = rem if last else 0
                for x in range(lo, rem + 1):
                    w = comb(x + mult - 1, mult - 1) if mult > 1 else 1
                    if x:
                        rest2 = rest[:idx] + (rest[idx] + x,) + rest[idx + 1:]
                    else:
                        rest2 = rest
                    nxt[(rem - x, rest2)] += c * w
            partial = nxt
        states = defaultdict(int)
        for (rem, rest), c in partial.items():
            states[rest] += c
        if not states:
            return 0
    return sum(c for pend, c in states.items() if pend[0] + a[-1] == 0)


@dataclass(frozen=True)
class IntegerFlow:
    """A nonnegative integer flow; its netflow is derived and may be checked.

    ``slack_flows[i]`` sits on (i+1, i+2); ``nonslack_flows`` follow the
    graph's canonical non-slack order.
    """

    graph: SpinalGraph
    slack_flows: tuple[int, ...]
    nonslack_flows: tuple[int, ...]
    netflow: tuple[int, ...] | None = None

    def __post_init__(self):
        g = self.graph
        slack = tuple(int(x) for x in self.slack_flows)
        nonslack = tuple(int(x) for x in self.nonslack_flows)
        if len(slack) != g.n:
            raise ValidationError(f"expected {g.n} slack flow values, got {len(slack)}")
        if len(nonslack) != g.d:
            raise ValidationError(f"expected {g.d} non-slack flow values, got {len(nonslack)}")
        for label, vals in (("slack", slack), ("non-slack", nonslack)):
            for pos, x in enumerate(vals):
                if x < 0:
                    raise ValidationError(f"{label} flow {pos + 1} is negative ({x})")
        net = [0] * g.vertex_count
        for i, x in enumerate(slack):
            net[i] += x
            net[i + 1] -= x
        for (t, h), x in zip(g.nonslack_edges, nonslack):
            net[t - 1] += x
            net[h - 1] -= x
        net = tuple(net)
        if self.netflow is not None:
            want = tuple(int(x) for x in self.netflow)
            if want != net:
                bad = next(v for v in range(len(net)) if len(want) <= v or want[v] != net[v])
                raise ValidationError(f"flow violates conservation at vertex {bad + 1}")
        object.__setattr__(self, "slack_flows", slack)
        object.__setattr__(self, "nonslack_flows", nonslack)
        object.__setattr__(self, "netflow", net)

    def edge_values(self) -> tuple[int, ...]:
        """Flow values over all edges in canonical order (slack first among parallels)."""
        slack = iter(self.slack_flows)
        nonslack = iter(self.nonslack_flows)
        return tuple(next(slack) if is_slack else next(nonslack) for _, is_slack in self.graph.all_edges())

    def to_dict(self) -> dict:
        return {
            "slack": [str(x) for x in self.slack_flows],
            "nonslack": [str(x) for x in self.nonslack_flows],
        }


def _feasible(supply: Sequence[int], start: int) -> bool:
    # every later suffix must be able to push its surplus out to the right
    running = 0
    for v in range(start, len(supply)):
        running += supply[v]
        if running < 0:
            return False
    return running == 0


def enumerate_flows(g: SpinalGraph, a: Sequence[int], cap: int | None = None) -> Iterator[IntegerFlow]:
    """All integer a-flows, lexicographic in canonical edge order.

    The count is checked against the cap before anything is produced.
    """
    a = check_netflow(g, a)
    cap = enum_cap() if cap is None else cap
    total = kostant(g, a)
    if total > cap:
        raise EnumerationCapError(total, cap)
    return _flow_iter(g, a) if total else iter(())


def _flow_iter(g: SpinalGraph, a: tuple[int, ...]) -> Iterator[IntegerFlow]:
    # canonical edge list, each with (tail, head, slack?, slot)
    edges = []
    slack_i = ns_i = 0
    for (t, h), is_slack in g.all_edges():
        if is_slack:
            edges.append((t, h, True, slack_i))
            slack_i += 1
        else:
            edges.append((t, h, False, ns_i))
            ns_i += 1
    # index of the last out-edge of every tail vertex
    last_of = {}
    for pos, (t, _, _, _) in enumerate(edges):
        last_of[t] = pos

    slack = [0] * g.n
    nonslack = [0] * g.d
    supply = list(a)  # inflow received so far + netflow, for unprocessed vertices

    def place(pos, value):
        t, h, is_slack, slot = edges[pos]
        (slack if is_slack else nonslack)[slot] = value
        supply[t - 1] -= value
        supply[h - 1] += value

    def undo(pos, value):
        t, h, _, _ = edges[pos]
        supply[t - 1] += value
        supply[h - 1] -= value

    def go(pos):
        if pos == len(edges):
            yield IntegerFlow(g, tuple(slack), tuple(nonslack))
            return
        t = edges[pos][0]
        avail = supply[t - 1]
        if avail < 0:
            return
        if pos == last_of[t]:
            place(pos, avail)
            if _feasible(supply, t):
                yield from go(pos + 1)
            undo(pos, avail)
            return
        for x in range(avail + 1):
            place(pos, x)
            yield from go(pos + 1)
            undo(pos, x)

    yield from go(0)


def count_vertices(g: SpinalGraph) -> int:
    """Number of directed paths from vertex 1 to vertex n+1, counted with multiplicity."""
    ways = [0] * (g.vertex_count + 1)
    ways[1] = 1
    into: dict[int, list[int]] = defaultdict(list)
    for t, h in g.nonslack_edges:
        into[h].append(t)
    for v in range(2, g.vertex_count + 1):
        ways[v] = ways[v - 1] + sum(ways[t] for t in into[v])
    return ways[g.vertex_count]


def polytope_dimension(g: SpinalGraph) -> int:
    return g.d
