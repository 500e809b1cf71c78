"""Normalized volumes of flow polytopes through the two Lidskii formulas."""

from __future__ import annotations

from math import factorial, prod
from typing import Iterator, Sequence

from .errors import ValidationError
from .flows import check_netflow, indegree_netflow, kostant, unit_netflow
from .graphmat import SpinalGraph


def volume_compact(g: SpinalGraph) -> int:
    """vol F_G as a single partition-function value at the in-degree netflow."""
    return kostant(g, indegree_netflow(g))


def multinomial(total: int, parts: Sequence[int]) -> int:
    out = factorial(total)
    for p in parts:
        out //= factorial(p)
    return out


def dominating_compositions(total: int, lower: Sequence[int],
                            allowed: Sequence[bool] | None = None) -> Iterator[tuple[int, ...]]:
    """Weak compositions s of ``total`` whose prefix sums never fall below those of ``lower``.

    Parts flagged False in ``allowed`` are forced to zero.
    """
    k = len(lower)
    need = []
    acc = 0
    for x in lower:
        acc += x
        need.append(acc)
    if allowed is None:
        allowed = [True] * k
    s = [0] * k

    def go(i, used):
        if i == k - 1:
            rest = total - used
            if rest and not allowed[i]:
                return
            if used + rest >= need[i]:
                s[i] = rest
                yield tuple(s)
            return
        top = total - used if allowed[i] else 0
        lo = max(0, need[i] - used)
        for x in range(lo, top + 1):
            s[i] = x
            yield from go(i + 1, used + x)
        s[i] = 0

    if k == 0:
        if total == 0:
            yield ()
        return
    yield from go(0, 0)


def lidskii_terms(g: SpinalGraph, a: Sequence[int]) -> Iterator[tuple[tuple[int, ...], int]]:
    """(s, term) for each composition in the general Lidskii sum."""
    a = check_netflow(g, a)
    n = g.n
    lead = a[:n]
    for pos, x in enumerate(lead):
        if x < 0:
            raise ValidationError(f"netflow entry {pos + 1} is negative ({x}); leading entries must be >= 0")
    t = [g.outdegree(v) - 1 for v in range(1, n + 1)]
    d = g.d
    # a zero base with a positive exponent kills the term, so such parts stay at 0
    allowed = [x != 0 for x in lead]
    for s in dominating_compositions(d, t, allowed):
        # sum(s) = d = sum(t), so the last coordinate is 0
        target = tuple(si - ti for si, ti in zip(s, t)) + (0,)
        k = kostant(g, target)
        if k == 0:
            yield s, 0
            continue
        yield s, multinomial(d, s) * prod(x ** e for x, e in zip(lead, s)) * k


def volume_general(g: SpinalGraph, a: Sequence[int]) -> int:
    """vol F_G(a) for a netflow whose first n entries are nonnegative."""
    if g.vertex_count == 1:
        check_netflow(g, a)
        return 1
    return sum(term for _, term in lidskii_terms(g, a))


def volume_unit(g: SpinalGraph) -> int:
    return volume_general(g, unit_netflow(g))
