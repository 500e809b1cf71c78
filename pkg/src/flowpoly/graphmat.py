"""Spinal graphs, column-convex 0/1 matrices and the reductions between them.

A spinal graph lives on vertices 1..n+1.  It always carries the spine
(i, i+1) for i = 1..n as its slack edges; everything else is a non-slack
edge, kept sorted by (tail, head).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import ValidationError

Edge = tuple[int, int]


@dataclass(frozen=True)
class SpinalGraph:
    vertex_count: int
    nonslack_edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if not isinstance(self.vertex_count, int) or self.vertex_count < 1:
            raise ValidationError(f"vertex_count must be a positive integer, got {self.vertex_count!r}")
        edges = []
        for pos, e in enumerate(self.nonslack_edges):
            try:
                tail, head = (int(x) for x in e)
            except (TypeError, ValueError):
                raise ValidationError(f"edge {pos} is not a (tail, head) pair: {e!r}")
            if not 1 <= tail < head <= self.vertex_count:
                raise ValidationError(
                    f"edge {pos} = ({tail},{head}) must satisfy 1 <= tail < head <= {self.vertex_count}"
                )
            edges.append((tail, head))
        object.__setattr__(self, "nonslack_edges", tuple(sorted(edges)))

    @classmethod
    def from_multigraph(cls, vertex_count: int, edges: Iterable[Edge]) -> "SpinalGraph":
        """Build from a full edge multiset; the first copy of each (i, i+1) becomes slack."""
        seen_spine = set()
        rest = []
        for tail, head in edges:
            if head == tail + 1 and tail not in seen_spine:
                seen_spine.add(tail)
            else:
                rest.append((tail, head))
        missing = [i for i in range(1, vertex_count) if i not in seen_spine]
        if missing:
            raise ValidationError(f"spine edge ({missing[0]},{missing[0] + 1}) is missing")
        return cls(vertex_count, tuple(rest))

    @property
    def n(self) -> int:
        return self.vertex_count - 1

    @property
    def d(self) -> int:
        return len(self.nonslack_edges)

    @property
    def slack_edges(self) -> tuple[Edge, ...]:
        return tuple((i, i + 1) for i in range(1, self.vertex_count))

    def all_edges(self) -> list[tuple[Edge, bool]]:
        """Every edge in canonical order, tagged with whether it is slack.

        Sorted by (tail, head); the slack edge leads among its parallels.
        """
        tagged = [((i, i + 1), True) for i in range(1, self.vertex_count)]
        tagged += [(e, False) for e in self.nonslack_edges]
        tagged.sort(key=lambda item: (item[0], not item[1]))
        return tagged

    def indegree(self, v: int) -> int:
        return (1 if v > 1 else 0) + sum(1 for _, h in self.nonslack_edges if h == v)

    def outdegree(self, v: int) -> int:
        return (1 if v < self.vertex_count else 0) + sum(1 for t, _ in self.nonslack_edges if t == v)

    def cut_sets(self) -> list[frozenset[int]]:
        """For each cut r = 1..n, the 0-based indices of non-slack edges crossing it."""
        return [
            frozenset(j for j, (t, h) in enumerate(self.nonslack_edges) if t <= r < h)
            for r in range(1, self.vertex_count)
        ]

    def is_simple(self) -> bool:
        edges = self.nonslack_edges
        if any(h == t + 1 for t, h in edges):
            return False
        return len(set(edges)) == len(edges)

    def to_dict(self) -> dict:
        return {"vertices": self.vertex_count, "edges": [list(e) for e in self.nonslack_edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data) -> "SpinalGraph":
        if not isinstance(data, dict):
            raise ValidationError("graph JSON must be an object with 'vertices' and 'edges'")
        if "vertices" not in data:
            raise ValidationError("graph JSON: missing field 'vertices'")
        vertices = data["vertices"]
        if not isinstance(vertices, int) or isinstance(vertices, bool):
            raise ValidationError("graph JSON: field 'vertices' must be an integer")
        edges = data.get("edges", [])
        if not isinstance(edges, list):
            raise ValidationError("graph JSON: field 'edges' must be a list")
        for pos, e in enumerate(edges):
            if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
                raise ValidationError(f"graph JSON: edges[{pos}] must be a pair of integers")
        return cls(vertices, tuple(tuple(e) for e in edges))

    @classmethod
    def from_json(cls, text: str) -> "SpinalGraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"graph JSON: line {exc.lineno}: {exc.msg}")
        return cls.from_dict(data)


def path_graph(vertex_count: int) -> SpinalGraph:
    return SpinalGraph(vertex_count, ())


def complete_graph(vertex_count: int) -> SpinalGraph:
    """Simple complete spinal graph: every pair (i, j) with i < j exactly once."""
    edges = [(i, j) for i in range(1, vertex_count + 1) for j in range(i + 2, vertex_count + 1)]
    return SpinalGraph(vertex_count, tuple(edges))


@dataclass(frozen=True)
class ZeroOneMatrix:
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in row) for row in self.entries)
        if rows:
            width = len(rows[0])
            for i, row in enumerate(rows):
                if len(row) != width:
                    raise ValidationError(f"row {i + 1} has {len(row)} entries, expected {width}")
                for j, x in enumerate(row):
                    if x not in (0, 1):
                        raise ValidationError(f"entry ({i + 1},{j + 1}) is {x}, expected 0 or 1")
        object.__setattr__(self, "entries", rows)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def column_support(self, j: int) -> list[int]:
        """0-based row indices holding a one in 0-based column j."""
        return [i for i in range(self.rows) if self.entries[i][j]]

    def row_support(self, i: int) -> frozenset[int]:
        return frozenset(j for j, x in enumerate(self.entries[i]) if x)

    def is_column_convex(self) -> bool:
        return all(_contiguous(self.column_support(j)) for j in range(self.cols))

    def is_row_convex(self) -> bool:
        return all(_contiguous(sorted(self.row_support(i))) for i in range(self.rows))

    def is_doubly_convex(self) -> bool:
        return self.is_column_convex() and self.is_row_convex()

    def zero_columns(self) -> list[int]:
        return [j for j in range(self.cols) if not self.column_support(j)]

    def to_text(self) -> str:
        return "".join("".join(str(x) for x in row) + "\n" for row in self.entries)

    @classmethod
    def from_text(cls, text: str, source: str = "<matrix>") -> "ZeroOneMatrix":
        rows = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line:
                continue
            bad = [c for c in line if c not in "01"]
            if bad:
                raise ValidationError(f"{source}: line {lineno}: unexpected character {bad[0]!r}")
            rows.append(tuple(int(c) for c in line))
        if not rows:
            raise ValidationError(f"{source}: matrix has no rows")
        widths = {len(r) for r in rows}
        if len(widths) != 1:
            raise ValidationError(f"{source}: rows have differing lengths {sorted(widths)}")
        return cls(tuple(rows))


def _contiguous(idx: Sequence[int]) -> bool:
    return not idx or idx[-1] - idx[0] + 1 == len(idx)


def matrix_to_graph(m: ZeroOneMatrix, with_permutation: bool = False):
    """Associated graph of a column-convex matrix.

    Column j with ones in rows r..r' becomes the edge (r, r'+1).  With
    ``with_permutation`` the result is ``(graph, perm)`` where ``perm[p]`` is the
    original column of the p-th canonical non-slack edge.
    """
    if m.rows < 1:
        raise ValidationError("matrix must have at least one row")
    edges = []
    for j in range(m.cols):
        support = m.column_support(j)
        if not support:
            raise ValidationError(f"column {j + 1} is identically zero")
        if not _contiguous(support):
            raise ValidationError(f"column {j + 1} is not convex (rows {[i + 1 for i in support]})")
        edges.append((support[0] + 1, support[-1] + 2))
    perm = sorted(range(len(edges)), key=lambda j: edges[j])
    g = SpinalGraph(m.rows + 1, tuple(edges[j] for j in perm))
    if with_permutation:
        return g, tuple(perm)
    return g


def graph_to_matrix(g: SpinalGraph) -> ZeroOneMatrix:
    return ZeroOneMatrix(tuple(
        tuple(1 if t <= i < h else 0 for t, h in g.nonslack_edges)
        for i in range(1, g.vertex_count)
    ))


class RowReduction(NamedTuple):
    matrix: ZeroOneMatrix
    kept_rows: tuple[int, ...]       # 0-based indices into the input rows
    dropped_columns: tuple[int, ...]  # 0-based indices into the input columns


def redundant_rows(m: ZeroOneMatrix) -> list[int]:
    """Rows whose support sits inside another row's support.

    Among rows with identical supports the first is kept and the others are
    reported, so that removing them never loses a constraint.
    """
    supports = [m.row_support(i) for i in range(m.rows)]
    out = []
    for i, s in enumerate(supports):
        for k, other in enumerate(supports):
            if k == i:
                continue
            if s < other or (s == other and k < i):
                out.append(i)
                break
    return out


def remove_redundant_rows(m: ZeroOneMatrix) -> RowReduction:
    drop = set(redundant_rows(m))
    kept = tuple(i for i in range(m.rows) if i not in drop)
    cols = [j for j in range(m.cols) if any(m.entries[i][j] for i in kept)]
    dropped_cols = tuple(j for j in range(m.cols) if j not in set(cols))
    reduced = ZeroOneMatrix(tuple(tuple(m.entries[i][j] for j in cols) for i in kept))
    return RowReduction(reduced, kept, dropped_cols)


def contraction_preserves_equivalence(g: SpinalGraph, i: int) -> bool:
    """False exactly when some non-slack edge leaves i while another enters i+1."""
    _check_slack_index(g, i)
    leaves = any(t == i for t, _ in g.nonslack_edges)
    enters = any(h == i + 1 for _, h in g.nonslack_edges)
    return not (leaves and enters)


def contract_slack_edge(g: SpinalGraph, i: int) -> tuple[SpinalGraph, bool]:
    """Drop non-slack copies of (i, i+1), then merge vertices i and i+1.

    Returns the new graph and whether the flow polytopes at netflow
    (k, 0, ..., 0, -k) stay integrally equivalent.
    """
    flag = contraction_preserves_equivalence(g, i)

    def relabel(v):
        return v if v <= i else v - 1

    edges = tuple((relabel(t), relabel(h)) for t, h in g.nonslack_edges if (t, h) != (i, i + 1))
    return SpinalGraph(g.vertex_count - 1, edges), flag


def _check_slack_index(g: SpinalGraph, i: int) -> None:
    if not 1 <= i <= g.n:
        raise ValidationError(f"slack edge index {i} out of range 1..{g.n}")


def reverse_graph(g: SpinalGraph) -> SpinalGraph:
    top = g.vertex_count + 1
    return SpinalGraph(g.vertex_count, tuple((top - h, top - t) for t, h in g.nonslack_edges))


def is_non_nested(g: SpinalGraph) -> bool:
    """No non-slack edge (k, l) sits strictly inside another (i, j), i < k < l < j."""
    edges = set(g.nonslack_edges)
    return not any(i < k and l < j for i, j in edges for k, l in edges)


def is_non_redundant(g: SpinalGraph) -> bool:
    """True when no cut set of non-slack edges is contained in another one."""
    cuts = g.cut_sets()
    return all(not (a <= b) for x, a in enumerate(cuts) for y, b in enumerate(cuts) if x != y)


def normalize_intervals(intervals: Iterable[Sequence[int]], d: int | None = None) -> tuple[int, list[Edge]]:
    out = []
    for pos, iv in enumerate(intervals):
        try:
            lo, hi = (int(x) for x in iv)
        except (TypeError, ValueError):
            raise ValidationError(f"interval {pos} is not a pair: {iv!r}")
        out.append((lo, hi))
    if not out:
        raise ValidationError("interval collection is empty")
    if d is None:
        d = max(hi for _, hi in out)
    for lo, hi in out:
        if not 1 <= lo <= hi <= d:
            raise ValidationError(f"interval [{lo},{hi}] must satisfy 1 <= lo <= hi <= {d}")
    return d, sorted(set(out))


def maximal_intervals(intervals: Iterable[Edge]) -> list[Edge]:
    ivs = sorted(set(intervals))
    return [a for a in ivs if not any(b != a and b[0] <= a[0] and a[1] <= b[1] for b in ivs)]


def intervals_to_matrix(intervals: Iterable[Sequence[int]], d: int | None = None,
                        keep_redundant: bool = False) -> ZeroOneMatrix:
    d, ivs = normalize_intervals(intervals, d)
    if not keep_redundant:
        ivs = maximal_intervals(ivs)
    return ZeroOneMatrix(tuple(tuple(1 if lo <= c <= hi else 0 for c in range(1, d + 1)) for lo, hi in ivs))


def intervals_to_graph(intervals: Iterable[Sequence[int]], d: int | None = None,
                       keep_redundant: bool = False) -> SpinalGraph:
    """Graph of the matrix whose rows are the given intervals of [d], sorted.

    Contained intervals are dropped unless ``keep_redundant`` is set.  Every
    column 1..d must be covered.
    """
    m = intervals_to_matrix(intervals, d, keep_redundant)
    zero = m.zero_columns()
    if zero:
        raise ValidationError(f"column {zero[0] + 1} is not covered by any interval")
    return matrix_to_graph(m)
