"""Graphs, the text file format, instance generators and the path verifier."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import FormatError, ParameterError
from .rng import as_stream


@dataclass(frozen=True, eq=False)
class Graph:
    """A simple graph on vertices 1..n.

    ``adjacency[i-1, j-1]`` is True iff the arc (i, j) is present.  Undirected
    graphs are stored symmetrically.
    """

    n: int
    directed: bool
    adjacency: np.ndarray

    def __post_init__(self):
        adj = np.array(self.adjacency, dtype=bool)
        if adj.shape != (self.n, self.n):
            raise ParameterError(f"adjacency must be {self.n}x{self.n}, got {adj.shape}")
        if adj.diagonal().any():
            raise ParameterError("self-loops are not allowed")
        if not self.directed and not (adj == adj.T).all():
            raise ParameterError("undirected adjacency must be symmetric")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)

    @classmethod
    def from_edges(cls, n: int, edges, directed: bool = False) -> "Graph":
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParameterError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
            if u == v:
                raise ParameterError(f"self-loop at {u}")
            adj[u - 1, v - 1] = True
            if not directed:
                adj[v - 1, u - 1] = True
        return cls(n, directed, adj)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.directed == other.directed and np.array_equal(self.adjacency, other.adjacency)

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"Graph(n={self.n}, m={self.m}, {kind})"

    @property
    def m(self) -> int:
        arcs = int(self.adjacency.sum())
        return arcs if self.directed else arcs // 2

    def arcs(self) -> np.ndarray:
        """(src, dst) pairs, 0-based, sorted by source then target."""
        return np.argwhere(self.adjacency)

    def edges(self):
        """Edges as 1-based pairs (u < v for undirected graphs)."""
        for i, j in self.arcs():
            if self.directed or i < j:
                yield int(i) + 1, int(j) + 1

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u - 1, v - 1])

    def without(self, *vertices) -> "Graph":
        """Copy with every arc at the given vertices deleted (ids are kept)."""
        adj = self.adjacency.copy()
        for v in vertices:
            adj[v - 1, :] = False
            adj[:, v - 1] = False
        return Graph(self.n, self.directed, adj)

    def induced(self, vertices) -> "Graph":
        """Subgraph on ``vertices`` relabelled 1..len(vertices) in the given order."""
        idx = np.asarray(vertices, dtype=np.intp) - 1
        return Graph(len(idx), self.directed, self.adjacency[np.ix_(idx, idx)])

    def active_vertices(self) -> list[int]:
        """Vertices with at least one incident arc."""
        touched = self.adjacency.any(axis=0) | self.adjacency.any(axis=1)
        return [int(i) + 1 for i in np.flatnonzero(touched)]


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(1, n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(1, j) for j in range(2, leaves + 2)])


def is_simple_path(g: Graph, path, k: int | None = None) -> bool:
    """Check that ``path`` lists distinct vertices joined by consecutive arcs."""
    path = list(path)
    if k is not None and len(path) != k:
        return False
    if not path or len(set(path)) != len(path):
        return False
    if any(not 1 <= v <= g.n for v in path):
        return False
    return all(g.adjacency[u - 1, v - 1] for u, v in zip(path, path[1:]))


# -- text format ---------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse ``n m directed|undirected`` followed by m lines ``u v``."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[2] not in ("directed", "undirected"):
                raise FormatError("expected header 'n m directed|undirected'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise FormatError("n and m must be integers", lineno) from None
            if n < 0 or m < 0:
                raise FormatError("n and m must be non-negative", lineno)
            header = (n, m, parts[2] == "directed")
            continue
        if len(parts) != 2:
            raise FormatError("expected an edge 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("edge endpoints must be integers", lineno) from None
        n = header[0]
        if not (1 <= u <= n and 1 <= v <= n):
            raise FormatError(f"endpoint outside 1..{n}", lineno)
        if u == v:
            raise FormatError("self-loops are not allowed", lineno)
        if len(edges) == header[1]:
            raise FormatError(f"more than the declared {header[1]} edges", lineno)
        edges.append((u, v))
    if header is None:
        raise FormatError("missing header line")
    n, m, directed = header
    if len(edges) != m:
        raise FormatError(f"declared {m} edges but found {len(edges)}")
    return Graph.from_edges(n, edges, directed)


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def format_graph(g: Graph) -> str:
    edges = list(g.edges())
    lines = [f"{g.n} {len(edges)} {'directed' if g.directed else 'undirected'}"]
    lines += [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


# -- generators ----------------------------------------------------------------


def random_graph(n: int, p: float, seed=None, directed: bool = False) -> Graph:
    """G(n, p); for directed graphs each ordered pair is an independent arc."""
    gen = as_stream(seed).generator
    coin = gen.random((n, n)) < p
    np.fill_diagonal(coin, False)
    if not directed:
        coin = np.triu(coin, 1)
        coin = coin | coin.T
    return Graph(n, directed, coin)


def grid_graph(rows: int, cols: int) -> Graph:
    def vid(r, c):
        return r * cols + c + 1

    edges = [(vid(r, c), vid(r, c + 1)) for r in range(rows) for c in range(cols - 1)]
    edges += [(vid(r, c), vid(r + 1, c)) for r in range(rows - 1) for c in range(cols)]
    return Graph.from_edges(rows * cols, edges)


def generate_instance(kind: str, n: int, p: float = 0.0, seed=None) -> Graph:
    """Benchmark workloads.

    ``hampath`` hides a Hamiltonian path along a random permutation and adds
    G(n, p) noise; ``random`` is G(n, p); ``grid`` is the most nearly square
    grid with exactly n vertices.
    """
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ParameterError("need n >= 0 and 0 <= p <= 1")
    stream = as_stream(seed)
    if kind == "random":
        return random_graph(n, p, stream.child("random"))
    if kind == "hampath":
        perm = stream.child("perm").generator.permutation(n) + 1
        noise = random_graph(n, p, stream.child("noise"))
        adj = noise.adjacency.copy()
        for u, v in zip(perm, perm[1:]):
            adj[u - 1, v - 1] = adj[v - 1, u - 1] = True
        return Graph(n, False, adj)
    if kind == "grid":
        rows = max(r for r in range(1, max(n, 1) + 1) if n % r == 0 and r * r <= n) if n else 0
        return grid_graph(rows, n // rows if rows else 0)
    raise ParameterError(f"unknown instance kind {kind!r}")
