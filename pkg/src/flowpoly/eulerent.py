"""Distance graphs G(k, m) and the k-Euler, k-Entringer and k-Springer numbers."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import prod
from typing import Iterator, Sequence

from .errors import ValidationError
from .flows import count_vertices, kostant
from .graphmat import SpinalGraph
from .volume import multinomial, volume_compact, volume_general

Composition = tuple[int, ...]


def distance_graph(k: int, m: int) -> SpinalGraph:
    """Spine on [m] plus the edges (i, i+k) for i + k <= m."""
    if k < 1:
        raise ValidationError(f"distance k must be >= 1, got {k}")
    if m < 1:
        raise ValidationError(f"vertex count must be >= 1, got {m}")
    return SpinalGraph(m, tuple((i, i + k) for i in range(1, m - k + 1)))


def compositions(total: int, parts: int) -> Iterator[Composition]:
    """Weak compositions of ``total`` into ``parts`` parts, reverse-lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _check_k(k: int, least: int = 1) -> None:
    if not isinstance(k, int) or k < least:
        raise ValidationError(f"k must be an integer >= {least}, got {k!r}")


@lru_cache(maxsize=None)
def k_euler(k: int, d: int) -> int:
    """A_{k,d} = vol F_{G(k, d+k)}."""
    _check_k(k)
    if d < 1:
        raise ValidationError(f"d must be >= 1, got {d}")
    return volume_compact(distance_graph(k, d + k))


def k_euler_kpf(k: int, d: int) -> int:
    """A_{k,d} as K_{G(k,d)}(1^{d-1}, 1-d); only claimed for d > k."""
    _check_k(k)
    if d <= k:
        raise ValidationError(f"partition-function form needs d > k (got k={k}, d={d})")
    return kostant(distance_graph(k, d), (1,) * (d - 1) + (1 - d,))


def entringer_netflow(k: int, s: Sequence[int]) -> tuple[int, ...] | None:
    """Netflow on G(k, N) whose count is E_s, or None when E_s vanishes trivially.

    Vertex N - j + 1 gives up s_j of its unit supply, j = 1..k.  Parts with
    j > N have no vertex to act on and must be zero.
    """
    N = sum(s)
    w = [1] * N
    for j, sj in enumerate(s, start=1):
        if j > N:
            if sj:
                return None
            continue
        w[N - j] -= sj
    return tuple(w)


@dataclass(frozen=True)
class EntringerTable:
    k: int
    N: int
    values: dict[Composition, int] = field(compare=True)

    def __getitem__(self, s: Sequence[int]) -> int:
        return self.values[tuple(s)]

    def get(self, s: Sequence[int], default: int = 0) -> int:
        return self.values.get(tuple(s), default)

    def __iter__(self):
        return iter(compositions(self.N, self.k))

    def total(self) -> int:
        return sum(self.values.values())

    def layers(self) -> list[list[tuple[Composition, int]]]:
        """Rows grouped by s_1 (largest first), entries in reverse-lex order."""
        out: list[list[tuple[Composition, int]]] = []
        current = None
        for s in self:
            if s[0] != current:
                out.append([])
                current = s[0]
            out[-1].append((s, self.values[s]))
        return out

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "N": self.N,
            "entries": [{"s": list(s), "value": str(self.values[s])} for s in self],
        }

    def to_tsv(self) -> str:
        header = "\t".join(f"s{i}" for i in range(1, self.k + 1)) + "\tE\n"
        blocks = []
        for layer in self.layers():
            blocks.append("".join("\t".join(map(str, s)) + f"\t{v}\n" for s, v in layer))
        return header + "\n".join(blocks)


@lru_cache(maxsize=None)
def entringer_table(k: int, N: int) -> EntringerTable:
    """Every E_s at level N from partition-function values on G(k, N)."""
    _check_k(k)
    if N < 0:
        raise ValidationError(f"N must be >= 0, got {N}")
    values = {}
    for s in compositions(N, k):
        if N == 0:
            values[s] = 1
            continue
        w = entringer_netflow(k, s)
        values[s] = 0 if w is None else kostant(distance_graph(k, N), w)
    return EntringerTable(k, N, values)


def boustrophedon_fill(k: int, N: int) -> list[EntringerTable]:
    """Levels 0..N from the one-step recursion alone."""
    _check_k(k, 2)
    if N < 0:
        raise ValidationError(f"N must be >= 0, got {N}")
    levels = [EntringerTable(k, 0, {(0,) * k: 1})]
    for level in range(1, N + 1):
        prev = levels[-1].values
        cur = {}
        for s in compositions(level, k):
            s1 = s[0]
            cur[s] = sum(prev[(s[1] + t,) + s[2:] + (s1 - t - 1,)] for t in range(s1))
        levels.append(EntringerTable(k, level, cur))
    return levels


def _bounded_compositions(total: int, parts: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Weak compositions whose h-th prefix sum is at most caps[h-1] for h <= len(caps)."""
    u = [0] * parts

    def go(i, used):
        if i == parts - 1:
            rest = total - used
            if i < len(caps) and used + rest > caps[i]:
                return
            u[i] = rest
            yield tuple(u)
            return
        top = total - used
        if i < len(caps):
            top = min(top, caps[i] - used)
        for x in range(top + 1):
            u[i] = x
            yield from go(i + 1, used + x)

    if parts == 0:
        return
    if caps and min(caps) < 0:
        return
    yield from go(0, 0)


def boustrophedon_terms(k: int, N: int, j: int, s: Sequence[int]) -> list[Composition]:
    """Indices at level N - j that the j-step recursion sums for E_s."""
    _check_k(k, 2)
    s = tuple(s)
    if len(s) != k or sum(s) != N or min(s) < 0:
        raise ValidationError(f"{s} is not a composition of {N} into {k} parts")
    if not 1 <= j <= k - 1:
        raise ValidationError(f"step j must lie in 1..{k - 1}, got {j}")
    if j > N:
        raise ValidationError(f"step j={j} needs N >= j (N={N})")
    total = N - j - sum(s[j:])
    if total < 0:
        return []
    caps = []
    acc = 0
    for h in range(1, j + 1):
        acc += s[h - 1]
        caps.append(acc - h)
    out = []
    for u in _bounded_compositions(total, j + 1, caps):
        out.append((u[j] + s[j],) + s[j + 1:] + u[:j])
    return out


def boustrophedon_general(k: int, N: int, j: int, s: Sequence[int],
                          lower: EntringerTable | None = None) -> int:
    """E_s through the j-step recursion, reading level N - j from ``lower``.

    By default the lower level comes from the partition-function table.
    """
    terms = boustrophedon_terms(k, N, j, s)
    if lower is None:
        lower = entringer_table(k, N - j)
    if lower.N != N - j:
        raise ValidationError(f"lower table is level {lower.N}, expected {N - j}")
    return sum(lower[t] for t in terms)


@dataclass(frozen=True)
class LogConcavityReport:
    k: int
    N: int
    checked: int
    violations: tuple[tuple[Composition, int, int, int, int], ...]  # (s, i, j, E_s^2, product)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_log_concavity(table: EntringerTable) -> LogConcavityReport:
    """E_s^2 >= E_{s-e_i+e_j} * E_{s+e_i-e_j} for all i < j where both neighbours exist."""
    k = table.k
    checked = 0
    bad = []
    for s in table:
        sq = table[s] ** 2
        for i in range(k):
            for j in range(i + 1, k):
                a = list(s)
                b = list(s)
                a[i] -= 1
                a[j] += 1
                b[i] += 1
                b[j] -= 1
                if min(a) < 0 or min(b) < 0:
                    continue
                checked += 1
                p = table[tuple(a)] * table[tuple(b)]
                if sq < p:
                    bad.append((s, i + 1, j + 1, sq, p))
    return LogConcavityReport(k, table.N, checked, tuple(bad))


def springer_via_transform(k: int, d: int) -> int:
    """Sum over T_N^k of multinomial(N; s) E_s, with N = d - k + 1 >= 0."""
    N = d - k + 1
    if N < 0:
        raise ValidationError(f"transform needs d >= k - 1 (k={k}, d={d})")
    table = entringer_table(k, N)
    return sum(multinomial(N, s) * v for s, v in table.values.items())


def springer_netflow(k: int, d: int, x: Sequence[int] | None = None) -> tuple[int, ...]:
    """(x_1..x_k, 0^{d-k}, -sum x) on G(k, d+1); truncated to d leading entries when d < k."""
    lead = list(x) if x is not None else [1] * k
    if len(lead) != k:
        raise ValidationError(f"expected {k} weights, got {len(lead)}")
    lead = lead[:d]
    return tuple(lead) + (0,) * (d - len(lead)) + (-sum(lead),)


def springer_via_volume(k: int, d: int) -> int:
    return volume_general(distance_graph(k, d + 1), springer_netflow(k, d))


@lru_cache(maxsize=None)
def k_springer(k: int, d: int) -> int:
    """S_{k,d}; both routes are evaluated and must agree when the transform applies."""
    _check_k(k)
    if d < 1:
        raise ValidationError(f"d must be >= 1, got {d}")
    by_volume = springer_via_volume(k, d)
    if d >= k - 1:
        by_transform = springer_via_transform(k, d)
        if by_transform != by_volume:
            raise AssertionError(f"S_({k},{d}): transform gives {by_transform}, volume gives {by_volume}")
    return by_volume


@dataclass(frozen=True)
class MultivariateValue:
    plain: int        # sum of E_s x^s
    normalized: int   # sum of multinomial(N; s) E_s x^s


def multivariate_a(k: int, d: int, x: Sequence[int]) -> MultivariateValue:
    _check_k(k)
    x = tuple(int(v) for v in x)
    if len(x) != k or min(x) < 0:
        raise ValidationError(f"x must be {k} nonnegative integers")
    N = d - k + 1
    if N < 0:
        raise ValidationError(f"need d >= k - 1 (k={k}, d={d})")
    table = entringer_table(k, N)
    plain = normalized = 0
    for s, v in table.values.items():
        mono = prod(xi ** si for xi, si in zip(x, s))
        plain += v * mono
        normalized += multinomial(N, s) * v * mono
    return MultivariateValue(plain, normalized)


def multivariate_volume(k: int, d: int, x: Sequence[int]) -> int:
    """vol F_{G(k,d+1)}(x_1..x_k, 0^{d-k}, -sum x), for d >= k."""
    if d < k:
        raise ValidationError(f"needs d >= k (k={k}, d={d})")
    return volume_general(distance_graph(k, d + 1), springer_netflow(k, d, x))


def distance_vertex_count(k: int, d: int) -> int:
    """v_{k,d} from v_{k,d} = v_{k,d-1} + v_{k,d-k}, with v_{k,d} = d+1 for d <= k."""
    _check_k(k)
    if d < 1:
        raise ValidationError(f"d must be >= 1, got {d}")
    v = {i: i + 1 for i in range(1, k + 1)}
    for i in range(k + 1, d + 1):
        v[i] = v[i - 1] + v[i - k]
    return v[d]


def distance_vertex_count_paths(k: int, d: int) -> int:
    return count_vertices(distance_graph(k, d + k))
