"""Qubit connectivity graphs and logical-qubit placement.

A connectivity graph fixes which two-qubit interactions an encoding
circuit may use.  Vertices are qubit indices 0..n-1, edges are stored
as sorted pairs in lexicographic order so that circuit construction and
serialization are deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field


@dataclass(frozen=True)
class ConnectivityGraph:
    """Undirected simple graph over qubits 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]
    name: str = ""
    _adjacency: dict[int, tuple[int, ...]] = field(
        init=False, repr=False, compare=False, default=None
    )

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        seen = set()
        for a, b in self.edges:
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError(f"edge ({a},{b}) out of range for n={self.n}")
            if a == b:
                raise ValueError(f"self-loop ({a},{b}) not allowed")
            if (a, b) != tuple(sorted((a, b))):
                raise ValueError(f"edge ({a},{b}) must be sorted as (min,max)")
            if (a, b) in seen:
                raise ValueError(f"duplicate edge ({a},{b})")
            seen.add((a, b))
        if list(self.edges) != sorted(self.edges):
            raise ValueError("edges must be in lexicographic order")
        adj: dict[int, list[int]] = {q: [] for q in range(self.n)}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        object.__setattr__(
            self, "_adjacency", {q: tuple(sorted(v)) for q, v in adj.items()}
        )

    def neighbors(self, q: int) -> tuple[int, ...]:
        return self._adjacency[q]

    def degree(self, q: int) -> int:
        return len(self._adjacency[q])

    def bfs_distances(self, source: int) -> list[int]:
        """Hop distance from ``source`` to every vertex, -1 if unreachable."""
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in self._adjacency[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist


def _normalize(edges) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(tuple(sorted(e)) for e in set(map(tuple, map(sorted, edges)))))


def ring_graph(n: int) -> ConnectivityGraph:
    """Cycle 0-1-...-(n-1)-0."""
    if n < 3:
        raise ValueError("ring needs n >= 3")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return ConnectivityGraph(n, _normalize(edges), name=f"ring-{n}")


def star_graph(n: int) -> ConnectivityGraph:
    """Hub vertex 0 connected to every other vertex."""
    if n < 2:
        raise ValueError("star needs n >= 2")
    return ConnectivityGraph(n, _normalize((0, i) for i in range(1, n)), name=f"star-{n}")


def complete_graph(n: int) -> ConnectivityGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return ConnectivityGraph(n, tuple(edges), name=f"complete-{n}")


def line_graph(n: int) -> ConnectivityGraph:
    """Open chain 0-1-...-(n-1)."""
    if n < 2:
        raise ValueError("line needs n >= 2")
    return ConnectivityGraph(n, tuple((i, i + 1) for i in range(n - 1)), name=f"line-{n}")


def complete_bipartite_graph(k: int, m: int) -> ConnectivityGraph:
    """K_{k,m} with the left part on qubits 0..k-1 and right part on k..k+m-1."""
    if k < 1 or m < 1:
        raise ValueError("both parts need at least one vertex")
    n = k + m
    edges = [(i, k + j) for i in range(k) for j in range(m)]
    return ConnectivityGraph(n, _normalize(edges), name=f"bipartite-{k}-{m}")


def select_logical_qubits(graph: ConnectivityGraph, k: int) -> tuple[int, ...]:
    """Pick k well-separated vertices to host the logical inputs.

    Greedy max-dispersion: the first pick is a vertex of minimum degree
    (smallest index on ties).  Each later pick maximizes the minimum BFS
    distance to the already chosen set, again breaking ties by smallest
    index.  Unreachable vertices count as infinitely far.
    """
    if not (1 <= k <= graph.n):
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={graph.n}")
    degrees = [graph.degree(q) for q in range(graph.n)]
    first = min(range(graph.n), key=lambda q: (degrees[q], q))
    chosen = [first]
    dists = [graph.bfs_distances(first)]
    while len(chosen) < k:
        best, best_score = None, None
        for q in range(graph.n):
            if q in chosen:
                continue
            score = min(
                d[q] if d[q] >= 0 else graph.n + 1 for d in dists
            )
            if best_score is None or score > best_score:
                best, best_score = q, score
        chosen.append(best)
        dists.append(graph.bfs_distances(best))
    return tuple(chosen)
