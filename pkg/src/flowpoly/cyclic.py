"""Total cyclic orders on {0, ..., d} and their correspondence with integer flows.

Element j >= 1 stands for the non-slack edge y_j in canonical order; 0 is an
extra element that is always active.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from ._config import DEFAULT_ORDER_BRUTE_FORCE_CAP, enum_cap
from .errors import EnumerationCapError, ValidationError
from .flows import IntegerFlow, enumerate_flows, indegree_netflow
from .graphmat import SpinalGraph, is_non_nested
from .polynomial import IntPolynomial

MODES = ("upper", "lower", "all_compatible")


@dataclass(frozen=True)
class CyclicOrder:
    reading: tuple[int, ...]

    def __post_init__(self):
        r = tuple(int(x) for x in self.reading)
        if not r or r[0] != 0:
            raise ValidationError("cyclic order reading must start with 0")
        if sorted(r) != list(range(len(r))):
            raise ValidationError(f"reading {r} is not a permutation of 0..{len(r) - 1}")
        object.__setattr__(self, "reading", r)

    @classmethod
    def from_rotation(cls, seq: Sequence[int]) -> "CyclicOrder":
        seq = list(seq)
        if 0 not in seq:
            raise ValidationError("cyclic order must contain 0")
        z = seq.index(0)
        return cls(tuple(seq[z:] + seq[:z]))

    @classmethod
    def parse(cls, text: str) -> "CyclicOrder":
        try:
            values = [int(x) for x in text.replace("(", "").replace(")", "").split(",") if x.strip()]
        except ValueError:
            raise ValidationError(f"cannot parse cyclic order {text!r}")
        return cls.from_rotation(values)

    @property
    def size(self) -> int:
        """d, the largest element."""
        return len(self.reading) - 1

    def positions(self) -> dict[int, int]:
        return {x: p for p, x in enumerate(self.reading)}

    def contains(self, x: int, y: int, z: int) -> bool:
        """(x, y, z) in the order: walking clockwise from x, y comes before z."""
        if len({x, y, z}) < 3:
            return False
        pos = self.positions()
        size = len(self.reading)
        return (pos[y] - pos[x]) % size < (pos[z] - pos[x]) % size

    def restrict(self, j: int) -> "CyclicOrder":
        return CyclicOrder(tuple(x for x in self.reading if x <= j))

    def word(self) -> tuple[int, ...]:
        return self.reading[1:]

    def descents(self) -> int:
        w = self.word()
        return sum(1 for a, b in zip(w, w[1:]) if a > b)

    def __str__(self) -> str:
        return ",".join(str(x) for x in self.reading)


@dataclass(frozen=True)
class ActivityProfile:
    """act[j-1] and inact[j-1] are ACT(j) and INACT(j) as sorted tuples."""

    act: tuple[tuple[int, ...], ...]
    inact: tuple[tuple[int, ...], ...]

    def active(self, j: int) -> tuple[int, ...]:
        return self.act[j - 1]

    def inactive(self, j: int) -> tuple[int, ...]:
        return self.inact[j - 1]


def activity_profile(g: SpinalGraph) -> ActivityProfile:
    edges = g.nonslack_edges
    act, inact = [], []
    for j in range(1, g.d + 1):
        tail = edges[j - 1][0]
        a = (0,) + tuple(k for k in range(1, j) if edges[k - 1][1] <= tail)
        act.append(a)
        inact.append(tuple(k for k in range(1, j + 1) if k not in a))
    return ActivityProfile(tuple(act), tuple(inact))


def _check_size(g: SpinalGraph, gamma: CyclicOrder) -> None:
    if gamma.size != g.d:
        raise ValidationError(f"order is on 0..{gamma.size} but graph has {g.d} non-slack edges")


def _skip_one(reading: Sequence[int], active: Iterable[int], j: int) -> frozenset[int]:
    """Active elements met strictly between j-1 and j walking clockwise."""
    size = len(reading)
    start = reading.index(j - 1)
    found = []
    step = 1
    while reading[(start + step) % size] != j:
        x = reading[(start + step) % size]
        found.append(x)
        step += 1
    act = set(active)
    return frozenset(x for x in found if x in act)


def skip_sets(g: SpinalGraph, gamma: CyclicOrder,
              profile: ActivityProfile | None = None) -> tuple[tuple[frozenset[int], ...], tuple[int, ...]]:
    """SKIP(j) for j = 1..d and the counts skip(j)."""
    _check_size(g, gamma)
    profile = profile or activity_profile(g)
    sets = tuple(_skip_one(gamma.reading, profile.active(j), j) for j in range(1, g.d + 1))
    return sets, tuple(len(s) for s in sets)


def first_violation(g: SpinalGraph, gamma: CyclicOrder, profile: ActivityProfile | None = None) -> int | None:
    """Smallest j where the cut inequality fails, or None if gamma is G-compatible."""
    profile = profile or activity_profile(g)
    _, skip = skip_sets(g, gamma, profile)
    for j in range(1, g.d + 1):
        if sum(skip[k - 1] for k in profile.inactive(j)) >= len(profile.active(j)):
            return j
    return None


def is_g_compatible(g: SpinalGraph, gamma: CyclicOrder) -> bool:
    return first_violation(g, gamma) is None


# Two insertion rules for placing j into the order restricted to 0..j-1:
#   "after":  j sits right after j-1 or right after an element active at j
#   "before": j sits right before an element active at j
_RULE_FOR_MODE = {"upper": "before", "lower": "after"}


def _neighbours_ok(reading: Sequence[int], j: int, active: set[int], rule: str) -> bool:
    p = reading.index(j)
    size = len(reading)
    if rule == "after":
        prev = reading[(p - 1) % size]
        return prev == j - 1 or prev in active
    nxt = reading[(p + 1) % size]
    return nxt in active


@dataclass(frozen=True)
class OrderClass:
    upper: bool
    lower: bool
    upper_failure: int | None = None  # first j where the upper condition fails
    lower_failure: int | None = None


def classify_order(g: SpinalGraph, gamma: CyclicOrder) -> OrderClass:
    """Upper / lower flags; gamma must be G-compatible."""
    profile = activity_profile(g)
    bad = first_violation(g, gamma, profile)
    if bad is not None:
        raise ValidationError(f"order is not G-compatible: inequality fails at j={bad}")
    fails = {}
    for mode, rule in _RULE_FOR_MODE.items():
        fails[mode] = None
        for j in range(1, g.d + 1):
            restricted = gamma.restrict(j).reading
            if not _neighbours_ok(restricted, j, set(profile.active(j)), rule):
                fails[mode] = j
                break
    return OrderClass(fails["upper"] is None, fails["lower"] is None, fails["upper"], fails["lower"])


def _check_mode(mode: str, allowed=("upper", "lower")) -> None:
    if mode not in allowed:
        raise ValidationError(f"mode must be one of {', '.join(allowed)}; got {mode!r}")


def flow_to_order(g: SpinalGraph, f: IntegerFlow, mode: str) -> CyclicOrder:
    """Insert 1, 2, ..., d in turn so that skip(j) equals the flow on y_j."""
    _check_mode(mode)
    if f.graph != g:
        raise ValidationError("flow belongs to a different graph")
    want = indegree_netflow(g)
    if f.netflow != want:
        raise ValidationError(f"flow has netflow {list(f.netflow)}, expected {list(want)}")
    rule = _RULE_FOR_MODE[mode]
    profile = activity_profile(g)
    reading = [0]
    for j in range(1, g.d + 1):
        active = set(profile.active(j))
        target = f.nonslack_flows[j - 1]
        hits = []
        for gap in range(1, len(reading) + 1):
            trial = reading[:gap] + [j] + reading[gap:]
            if _neighbours_ok(trial, j, active, rule) and len(_skip_one(trial, active, j)) == target:
                hits.append(trial)
        if len(hits) != 1:
            raise AssertionError(
                f"{mode} insertion of {j} with skip {target} matched {len(hits)} positions"
            )
        reading = hits[0]
    return CyclicOrder(tuple(reading))


def order_to_flow(g: SpinalGraph, gamma: CyclicOrder) -> IntegerFlow:
    """Flow with f(y_j) = skip(j); slack values follow from conservation."""
    profile = activity_profile(g)
    bad = first_violation(g, gamma, profile)
    if bad is not None:
        raise ValidationError(f"order is not G-compatible: inequality fails at j={bad}")
    _, skip = skip_sets(g, gamma, profile)
    v = indegree_netflow(g)
    inflow = [0] * (g.vertex_count + 1)
    outflow = [0] * (g.vertex_count + 1)
    for (t, h), x in zip(g.nonslack_edges, skip):
        outflow[t] += x
        inflow[h] += x
    slack = []
    prev = 0
    for i in range(1, g.vertex_count):
        cur = prev + v[i - 1] + inflow[i] - outflow[i]
        slack.append(cur)
        prev = cur
    return IntegerFlow(g, tuple(slack), skip, netflow=v)


def _brute_force_orders(g: SpinalGraph) -> Iterator[CyclicOrder]:
    profile = activity_profile(g)
    for perm in permutations(range(1, g.d + 1)):
        gamma = CyclicOrder((0,) + perm)
        if first_violation(g, gamma, profile) is None:
            yield gamma


def enumerate_orders(g: SpinalGraph, mode: str, cap: int | None = None,
                     brute_force_cap: int = DEFAULT_ORDER_BRUTE_FORCE_CAP) -> list[CyclicOrder]:
    """Upper or lower G-cyclic orders (via flows), or every G-compatible order (brute force).

    Upper and lower orders come out in the lexicographic order of their flows;
    compatible orders come out in lexicographic order of their readings.
    """
    _check_mode(mode, MODES)
    if mode == "all_compatible":
        if g.d > brute_force_cap:
            raise EnumerationCapError(f"{g.d}! orders (d={g.d})", f"d <= {brute_force_cap}")
        return list(_brute_force_orders(g))
    cap = enum_cap() if cap is None else cap
    return [flow_to_order(g, f, mode) for f in enumerate_flows(g, indegree_netflow(g), cap)]


def descent_polynomial(orders: Iterable[CyclicOrder]) -> IntPolynomial:
    return IntPolynomial.from_counts(gamma.descents() for gamma in orders)


def required_chains(g: SpinalGraph, reduced: bool = True) -> list[tuple[int, ...]]:
    """Chains (max ACT(j), ..., j-1, j); with ``reduced`` only the maximal ones survive."""
    profile = activity_profile(g)
    chains = [tuple(range(max(profile.active(j)), j + 1)) for j in range(1, g.d + 1)]
    if not reduced:
        return chains
    spans = sorted(set((c[0], c[-1]) for c in chains))
    keep = [s for s in spans if not any(o != s and o[0] <= s[0] and s[1] <= o[1] for o in spans)]
    return [tuple(range(lo, hi + 1)) for lo, hi in keep]


def contains_chain(gamma: CyclicOrder, chain: Sequence[int]) -> bool:
    """Walking clockwise from chain[0], the remaining entries appear in order."""
    pos = gamma.positions()
    size = len(gamma.reading)
    offsets = [(pos[x] - pos[chain[0]]) % size for x in chain]
    return all(a < b for a, b in zip(offsets, offsets[1:]))


def chain_extension_check(g: SpinalGraph, gamma: CyclicOrder) -> bool:
    """Does gamma extend every required chain?  Defined for non-nested g."""
    if not is_non_nested(g):
        raise ValidationError("chain description applies to non-nested graphs only")
    _check_size(g, gamma)
    return all(contains_chain(gamma, c) for c in required_chains(g, reduced=False))
