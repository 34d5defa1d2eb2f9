"""Immutable simple undirected graphs with graph6 / JSON / DOT interchange.

Vertices are dense integer indices ``0..n-1``; display names, when present,
live in a separate ``labels`` map so the core structure stays anonymous.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional

from .errors import (
    DomainError,
    MalformedHeaderError,
    SelfLoopError,
    TooLargeError,
    TrailingGarbageError,
    TruncatedBitstreamError,
    VertexRangeError,
)

_GRAPH6_HEADER = ">>graph6<<"
_GRAPH6_MAX_N = (1 << 36) - 1


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph, immutable after construction.

    ``adjacency[v]`` is the frozen set of neighbors of ``v``.  Equality and
    hashing ignore ``labels``.
    """

    n: int
    adjacency: tuple[frozenset[int], ...]
    labels: Optional[dict[int, str]] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DomainError(f"vertex count must be nonnegative, got {self.n}")
        if len(self.adjacency) != self.n:
            raise DomainError("adjacency length does not match vertex count")
        for v, nbrs in enumerate(self.adjacency):
            for u in nbrs:
                if not 0 <= u < self.n:
                    raise VertexRangeError(f"neighbor {u} of {v} outside [0, {self.n})")
                if u == v:
                    raise SelfLoopError(f"self-loop at vertex {v}")
                if v not in self.adjacency[u]:
                    raise DomainError(f"asymmetric adjacency: {v} -> {u}")
        if self.labels is not None:
            for v in self.labels:
                if not 0 <= v < self.n:
                    raise VertexRangeError(f"label index {v} outside [0, {self.n})")

    @cached_property
    def m(self) -> int:
        """Number of edges."""
        return sum(len(nbrs) for nbrs in self.adjacency) // 2

    @cached_property
    def neighbor_masks(self) -> tuple[int, ...]:
        """Per-vertex adjacency as bit masks (bit u set iff u is a neighbor)."""
        masks = []
        for nbrs in self.adjacency:
            m = 0
            for u in nbrs:
                m |= 1 << u
            masks.append(m)
        return tuple(masks)

    @cached_property
    def full_mask(self) -> int:
        """Mask with one bit per vertex."""
        return (1 << self.n) - 1

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, in lexicographic order."""
        for u in range(self.n):
            for v in sorted(self.adjacency[u]):
                if u < v:
                    yield (u, v)

    def relabeled(self, labels: Optional[dict[int, str]]) -> "Graph":
        """Same structure with a different display-name map."""
        return Graph(self.n, self.adjacency, labels)


def from_edge_list(
    n: int,
    edges: Iterable[tuple[int, int]],
    labels: Optional[dict[int, str]] = None,
) -> Graph:
    """Build a graph on ``n`` vertices from an edge list.

    Duplicate edges (in either orientation) collapse; self-loops and
    out-of-range endpoints are rejected.
    """
    if n < 0:
        raise DomainError(f"vertex count must be nonnegative, got {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(frozenset(s) for s in adj), labels)


def degree_profile(g: Graph) -> tuple[int, int, dict[int, int]]:
    """(min degree, max degree, {degree: multiplicity}); (0, 0, {}) when empty."""
    if g.n == 0:
        return (0, 0, {})
    degs = [g.degree(v) for v in g.vertices()]
    return (min(degs), max(degs), dict(Counter(degs)))


def is_connected(g: Graph) -> bool:
    """True iff the graph has a single connected component (true for n <= 1)."""
    if g.n <= 1:
        return True
    seen = bytearray(g.n)
    seen[0] = 1
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for u in g.adjacency[v]:
            if not seen[u]:
                seen[u] = 1
                count += 1
                stack.append(u)
    return count == g.n


# ---------------------------------------------------------------------------
# Standard named graphs
# ---------------------------------------------------------------------------


def path_graph(n: int) -> Graph:
    if n < 1:
        raise DomainError("path needs n >= 1")
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycle needs n >= 3")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise DomainError("complete graph needs n >= 1")
    return from_edge_list(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise DomainError("complete bipartite graph needs a, b >= 1")
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


# ---------------------------------------------------------------------------
# graph6 (standard ASCII encoding: 63-offset 6-bit groups, upper-triangle
# column-major bit order, one graph per line)
# ---------------------------------------------------------------------------


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (the optional ``>>graph6<<`` prefix is accepted)."""
    line = text.rstrip("\r\n")
    if line.startswith(_GRAPH6_HEADER):
        line = line[len(_GRAPH6_HEADER):]
    if not line:
        raise MalformedHeaderError("empty graph6 input")

    vals = []
    for i, ch in enumerate(line):
        o = ord(ch)
        if not 63 <= o <= 126:
            if i == 0:
                raise MalformedHeaderError(f"invalid size byte {ch!r} at offset 0")
            raise TrailingGarbageError(f"invalid byte {ch!r} at offset {i}")
        vals.append(o - 63)

    if vals[0] < 63:
        n = vals[0]
        body = 1
    elif len(vals) >= 2 and vals[1] < 63:
        if len(vals) < 4:
            raise MalformedHeaderError("truncated long-form size prefix")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        body = 4
    else:
        if len(vals) < 8:
            raise MalformedHeaderError("truncated very-long-form size prefix")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        body = 8

    nbits = n * (n - 1) // 2
    nchars = (nbits + 5) // 6
    have = len(vals) - body
    if have < nchars:
        raise TruncatedBitstreamError(
            f"need {nchars} data bytes for n={n}, found {have} (offset {len(line)})"
        )
    if have > nchars:
        raise TrailingGarbageError(
            f"{have - nchars} extra bytes after adjacency data (offset {body + nchars})"
        )

    bits = 0
    for v in vals[body:]:
        bits = (bits << 6) | v
    pad = nchars * 6 - nbits
    if pad and bits & ((1 << pad) - 1):
        raise TrailingGarbageError("nonzero padding bits")
    bits >>= pad

    edges = []
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                edges.append((i, j))
            k -= 1
    return from_edge_list(n, edges)


def write_graph6(g: Graph) -> str:
    """Canonical graph6 encoding; round-trips through :func:`parse_graph6`."""
    n = g.n
    if n > _GRAPH6_MAX_N:
        raise TooLargeError(f"graph6 caps at n = {_GRAPH6_MAX_N}, got {n}")
    if n <= 62:
        prefix = chr(n + 63)
    elif n <= 258047:
        prefix = "~" + "".join(chr((n >> s & 63) + 63) for s in (12, 6, 0))
    else:
        prefix = "~~" + "".join(chr((n >> s & 63) + 63) for s in (30, 24, 18, 12, 6, 0))

    nbits = n * (n - 1) // 2
    bits = 0
    k = nbits - 1
    masks = g.neighbor_masks
    for j in range(1, n):
        col = masks[j]
        for i in range(j):
            if col >> i & 1:
                bits |= 1 << k
            k -= 1
    nchars = (nbits + 5) // 6
    bits <<= nchars * 6 - nbits
    chars = [chr((bits >> 6 * (nchars - 1 - i) & 63) + 63) for i in range(nchars)]
    return prefix + "".join(chars)


# ---------------------------------------------------------------------------
# JSON edge-list format: {"n": int, "edges": [[u, v], ...], "labels": {...}?}
# ---------------------------------------------------------------------------


def from_json_dict(obj: dict) -> Graph:
    """Build a graph from the JSON edge-list object (either edge order accepted)."""
    if not isinstance(obj, dict):
        raise DomainError("JSON graph must be an object")
    if "n" not in obj or not isinstance(obj["n"], int):
        raise DomainError("JSON graph needs an integer field 'n'")
    edges_field = obj.get("edges", [])
    if not isinstance(edges_field, list):
        raise DomainError("JSON field 'edges' must be a list of [u, v] pairs")
    edges = []
    for idx, e in enumerate(edges_field):
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise DomainError(f"edge #{idx} is not a pair of integers: {e!r}")
        edges.append((e[0], e[1]))
    labels = None
    if "labels" in obj and obj["labels"] is not None:
        labels = {}
        for key, name in obj["labels"].items():
            try:
                v = int(key)
            except (TypeError, ValueError):
                raise DomainError(f"label key {key!r} is not a vertex index") from None
            labels[v] = str(name)
    return from_edge_list(obj["n"], edges, labels)


def to_json_dict(g: Graph) -> dict:
    out: dict = {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}
    if g.labels:
        out["labels"] = {str(v): name for v, name in sorted(g.labels.items())}
    return out


def parse_json(text: str) -> Graph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_json_dict(obj)


def write_json(g: Graph) -> str:
    return json.dumps(to_json_dict(g))


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------


def to_dot(g: Graph, highlight: frozenset[int] | set[int] = frozenset()) -> str:
    """Render as DOT text with ``highlight`` vertices filled black.

    Output ordering is deterministic: vertices ascending, then edges in
    lexicographic order.
    """
    for v in highlight:
        if not 0 <= v < g.n:
            raise VertexRangeError(f"highlight vertex {v} outside [0, {g.n})")
    lines = ["graph G {", "  node [shape=circle];"]
    for v in range(g.n):
        attrs = []
        if g.labels and v in g.labels:
            attrs.append(f'label="{g.labels[v]}"')
        if v in highlight:
            attrs.append("style=filled fillcolor=black fontcolor=white")
        lines.append(f"  {v} [{' '.join(attrs)}];" if attrs else f"  {v};")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
