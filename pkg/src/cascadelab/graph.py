"""Immutable simple graphs with in-neighbor adjacency and BFS-based queries.

Vertices are ids 0..n-1. Undirected graphs are stored as symmetric directed
edge sets. Adjacency is kept in CSR arrays sorted by vertex id so every
iteration order downstream is deterministic. Graphs are immutable after
construction and safe to read concurrently.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np


class GraphError(ValueError):
    """Malformed graph input or an operation applied outside its domain."""


class VertexSet:
    """Subset of vertices 0..n-1 with dense bitset semantics (int bitmask)."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: int = 0):
        if bits < 0 or bits >> n:
            raise GraphError(f"bitmask has members >= n={n}")
        self.n = n
        self.bits = bits

    @classmethod
    def from_iterable(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        bits = 0
        for v in vertices:
            if not 0 <= v < n:
                raise GraphError(f"vertex {v} out of range 0..{n - 1}")
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    @classmethod
    def from_bool_array(cls, arr: np.ndarray) -> "VertexSet":
        packed = np.packbits(arr.astype(np.uint8), bitorder="little").tobytes()
        return cls(len(arr), int.from_bytes(packed, "little"))

    def to_bool_array(self) -> np.ndarray:
        raw = self.bits.to_bytes((self.n + 7) // 8 or 1, "little")
        arr = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
        return arr[: self.n].astype(bool)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and (self.bits >> v) & 1 == 1

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, VertexSet)
            and self.n == other.n
            and self.bits == other.bits
        )

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.bits | other.bits)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.bits & other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.n, self.bits & ~other.bits)

    def issubset(self, other: "VertexSet") -> bool:
        return self.bits & ~other.bits == 0

    def is_full(self) -> bool:
        return self.bits == (1 << self.n) - 1

    def to_hex(self) -> str:
        return format(self.bits, "#x")

    def __repr__(self) -> str:
        return f"VertexSet(n={self.n}, members={sorted(self)})"


class Graph:
    """Simple graph on vertices 0..n-1; use :func:`build_graph` to construct."""

    __slots__ = (
        "n",
        "directed",
        "in_indptr",
        "in_indices",
        "out_indptr",
        "out_indices",
        "_edge_src",
        "_edge_dst",
    )

    def __init__(self, n, directed, in_indptr, in_indices, out_indptr, out_indices):
        self.n = n
        self.directed = directed
        self.in_indptr = in_indptr
        self.in_indices = in_indices
        self.out_indptr = out_indptr
        self.out_indices = out_indices
        self._edge_src = None
        self._edge_dst = None

    @property
    def num_arcs(self) -> int:
        """Number of stored directed edges (undirected edges count twice)."""
        return len(self.in_indices)

    @property
    def num_edges(self) -> int:
        """Edge count as written in the edge-list format (undirected: once)."""
        return self.num_arcs if self.directed else self.num_arcs // 2

    @property
    def d_in(self) -> np.ndarray:
        return np.diff(self.in_indptr)

    @property
    def d_out(self) -> np.ndarray:
        return np.diff(self.out_indptr)

    def in_degree(self, v: int) -> int:
        return int(self.in_indptr[v + 1] - self.in_indptr[v])

    def degree(self, v: int) -> int:
        """Undirected degree d(v); for directed graphs this is the indegree."""
        return self.in_degree(v)

    def in_neighbor_array(self, v: int) -> np.ndarray:
        return self.in_indices[self.in_indptr[v] : self.in_indptr[v + 1]]

    def out_neighbor_array(self, v: int) -> np.ndarray:
        return self.out_indices[self.out_indptr[v] : self.out_indptr[v + 1]]

    def in_neighbors(self, v: int) -> VertexSet:
        return VertexSet.from_iterable(self.n, self.in_neighbor_array(v).tolist())

    def neighbors(self, v: int) -> VertexSet:
        return self.in_neighbors(v)

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Parallel (src, dst) arrays over all stored directed edges."""
        if self._edge_src is None:
            self._edge_src = np.repeat(
                np.arange(self.n, dtype=self.out_indices.dtype), self.d_out
            )
            self._edge_dst = self.out_indices
        return self._edge_src, self._edge_dst

    def has_edge(self, u: int, v: int) -> bool:
        row = self.out_neighbor_array(u)
        i = np.searchsorted(row, v)
        return i < len(row) and row[i] == v

    def __repr__(self) -> str:
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, m={self.num_edges}, {kind})"


def _csr_from_pairs(n: int, src: np.ndarray, dst: np.ndarray):
    """CSR arrays grouped by src with neighbor lists sorted ascending."""
    order = np.lexsort((dst, src))
    src = src[order]
    dst = dst[order]
    counts = np.bincount(src, minlength=n)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=indptr[1:])
    return indptr, dst.astype(np.int32, copy=False)


def build_graph(n: int, edge_list, directed: bool = False) -> Graph:
    """Build a simple graph, collapsing duplicate edges.

    Undirected input edges are symmetrized. Self-loops and endpoints >= n are
    rejected.
    """
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    arr = np.asarray(list(edge_list) if not isinstance(edge_list, np.ndarray) else edge_list)
    if arr.size == 0:
        arr = np.empty((0, 2), dtype=np.int64)
    arr = arr.astype(np.int64, copy=False).reshape(-1, 2)
    u, v = arr[:, 0], arr[:, 1]
    if arr.size:
        if u.min() < 0 or v.min() < 0 or u.max() >= n or v.max() >= n:
            bad = arr[(u < 0) | (v < 0) | (u >= n) | (v >= n)][0]
            raise GraphError(f"edge endpoint out of range 0..{n - 1}: {tuple(bad)}")
        loops = u == v
        if loops.any():
            bad = arr[loops][0]
            raise GraphError(f"self-loop not allowed: {tuple(bad)}")
    if not directed:
        u, v = np.concatenate([u, v]), np.concatenate([v, u])
    keys = np.unique(u * n + v) if n > 0 else np.empty(0, dtype=np.int64)
    src = (keys // n).astype(np.int64) if n > 0 else keys
    dst = (keys % n).astype(np.int64) if n > 0 else keys
    out_indptr, out_indices = _csr_from_pairs(n, src, dst)
    if directed:
        in_indptr, in_indices = _csr_from_pairs(n, dst, src)
    else:
        in_indptr, in_indices = out_indptr, out_indices
    return Graph(n, directed, in_indptr, in_indices, out_indptr, out_indices)


def _require_undirected(g: Graph, op: str) -> None:
    if g.directed:
        raise GraphError(f"{op} is defined for undirected graphs only")


def _ranges(counts: np.ndarray) -> np.ndarray:
    # [0..c0-1, 0..c1-1, ...] without a Python loop
    total = int(counts.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    ends = np.cumsum(counts)
    return np.arange(total, dtype=np.int64) - np.repeat(ends - counts, counts)


def _gather_neighbors(indptr: np.ndarray, indices: np.ndarray, verts: np.ndarray) -> np.ndarray:
    """Concatenated neighbor lists of `verts` (duplicates preserved)."""
    counts = indptr[verts + 1] - indptr[verts]
    return indices[np.repeat(indptr[verts], counts) + _ranges(counts)]


def ball(g: Graph, center: VertexSet, radius: int) -> VertexSet:
    """Vertices at distance <= radius from the given set (undirected only)."""
    _require_undirected(g, "ball")
    if radius < 0:
        raise GraphError("radius must be nonnegative")
    visited = center.to_bool_array()
    frontier = np.flatnonzero(visited)
    for _ in range(radius):
        if frontier.size == 0:
            break
        nbrs = np.unique(_gather_neighbors(g.out_indptr, g.out_indices, frontier))
        frontier = nbrs[~visited[nbrs]]
        visited[frontier] = True
    return VertexSet.from_bool_array(visited)


def is_connected(g: Graph) -> bool:
    """Whether the undirected graph is connected (single vertex counts)."""
    _require_undirected(g, "is_connected")
    if g.n <= 1:
        return True
    visited = np.zeros(g.n, dtype=bool)
    visited[0] = True
    frontier = np.array([0], dtype=np.int64)
    seen = 1
    while frontier.size:
        nbrs = np.unique(_gather_neighbors(g.out_indptr, g.out_indices, frontier))
        frontier = nbrs[~visited[nbrs]]
        visited[frontier] = True
        seen += frontier.size
    return seen == g.n


def diameter(g: Graph) -> int | None:
    """Exact diameter by simultaneous all-sources BFS; None if disconnected.

    Per-vertex bitmasks of reached sources are widened one hop per round;
    the last round that changes anything is the maximum pairwise distance.
    """
    _require_undirected(g, "diameter")
    if g.n == 0:
        return None
    if not is_connected(g):
        return None
    n = g.n
    adj = [g.out_neighbor_array(v).tolist() for v in range(n)]
    masks = [1 << v for v in range(n)]
    rounds = 0
    while True:
        nxt = []
        changed = False
        for v in range(n):
            acc = masks[v]
            for u in adj[v]:
                acc |= masks[u]
            if acc != masks[v]:
                changed = True
            nxt.append(acc)
        if not changed:
            return rounds
        masks = nxt
        rounds += 1


def degree_histogram(g: Graph) -> dict[int, int]:
    """Map degree -> vertex count; values sum to n (undirected only)."""
    _require_undirected(g, "degree_histogram")
    counts = np.bincount(g.d_in, minlength=1)
    return {int(k): int(c) for k, c in enumerate(counts) if c > 0}


def empirical_tail_constant(g: Graph, gamma: float) -> float:
    """Smallest C with degree-k fraction <= C/k^gamma for every k >= 1.

    Tight: some degree k attains the returned value. Degree-0 vertices are
    outside the bound and ignored. Returns 0.0 when no vertex has degree >= 1.
    """
    hist = degree_histogram(g)
    best = 0.0
    for k, c in hist.items():
        if k >= 1:
            best = max(best, (c / g.n) * float(k) ** gamma)
    return best


def canonical_edges(g: Graph) -> list[tuple[int, int]]:
    """Sorted edge list as written to file (undirected edges once, u < v)."""
    src, dst = g.edge_arrays()
    if g.directed:
        pairs = zip(src.tolist(), dst.tolist())
    else:
        keep = src < dst
        pairs = zip(src[keep].tolist(), dst[keep].tolist())
    return sorted(pairs)


def write_edgelist(g: Graph) -> str:
    """Canonical edge-list text: header `n m d`, then one `u v` line per edge."""
    kind = "directed" if g.directed else "undirected"
    lines = [f"{g.n} {g.num_edges} {kind}"]
    lines.extend(f"{u} {v}" for u, v in canonical_edges(g))
    return "\n".join(lines) + "\n"


def save_edgelist(g: Graph, path) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(write_edgelist(g))


def parse_edgelist(text: str) -> Graph:
    lines = [ln for ln in text.split("\n") if ln.strip()]
    if not lines:
        raise GraphError("empty edge-list file")
    head = lines[0].split()
    if len(head) != 3 or head[2] not in ("directed", "undirected"):
        raise GraphError(f"bad header (want `n m directed|undirected`): {lines[0]!r}")
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError as exc:
        raise GraphError(f"bad header counts: {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise GraphError(f"header says m={m} but file has {len(lines) - 1} edge lines")
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected `u v`, got {ln!r}")
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise GraphError(f"line {lineno}: non-integer endpoint in {ln!r}") from exc
    return build_graph(n, edges, directed=head[2] == "directed")


def load_edgelist(path) -> Graph:
    with open(path, "r") as fh:
        return parse_edgelist(fh.read())
