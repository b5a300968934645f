"""Finite multidigraphs, walks, UDAF validation and the digraph/matrix dictionary.

Vertices are dense indices ``0..n-1``. Edges are kept as an ordered list of
``(source, target)`` pairs, so parallel edges and loops are allowed and an
edge is identified by its position in the list.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .matrices import Matrix, as_matrix, is_square, matpow, trace


@dataclass(frozen=True)
class Digraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(s), int(t)) for s, t in self.edges))
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be non-negative")
        for k, (s, t) in enumerate(self.edges):
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise ValueError(f"edge {k} has an endpoint outside 0..{self.vertex_count - 1}")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def source(self, e: int) -> int:
        return self.edges[e][0]

    def target(self, e: int) -> int:
        return self.edges[e][1]

    def out_edges(self, v: int) -> list[int]:
        return [k for k, (s, _) in enumerate(self.edges) if s == v]

    def in_edges(self, v: int) -> list[int]:
        return [k for k, (_, t) in enumerate(self.edges) if t == v]

    def reversed(self) -> "Digraph":
        return Digraph(self.vertex_count, tuple((t, s) for s, t in self.edges))


@dataclass(frozen=True)
class FiniteWalk:
    """A finite walk: a start vertex and a (possibly empty) edge sequence."""

    start_vertex: int
    edge_sequence: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edge_sequence", tuple(self.edge_sequence))

    def __len__(self) -> int:
        return len(self.edge_sequence)

    def end_vertex(self, d: Digraph) -> int:
        return d.target(self.edge_sequence[-1]) if self.edge_sequence else self.start_vertex

    def vertices(self, d: Digraph) -> list[int]:
        return [self.start_vertex] + [d.target(e) for e in self.edge_sequence]

    def is_valid(self, d: Digraph) -> bool:
        if not 0 <= self.start_vertex < d.vertex_count:
            return False
        v = self.start_vertex
        for e in self.edge_sequence:
            if not 0 <= e < d.edge_count or d.source(e) != v:
                return False
            v = d.target(e)
        return True


@dataclass(frozen=True)
class CoreResult:
    """The core of a digraph with its inclusion maps into the original."""

    digraph: Digraph
    vertex_map: tuple[int, ...] = field(default=())
    edge_map: tuple[int, ...] = field(default=())


def adjacency_matrix(d: Digraph) -> Matrix:
    n = d.vertex_count
    rows = [[0] * n for _ in range(n)]
    for s, t in d.edges:
        rows[s][t] += 1
    return as_matrix(rows)


def relator_matrix(d: Digraph) -> Matrix:
    adj = adjacency_matrix(d)
    return tuple(tuple(x - (i == j) for j, x in enumerate(row)) for i, row in enumerate(adj))


def is_relator_shape(m: Matrix) -> bool:
    """Square, off-diagonal entries >= 0 and diagonal entries >= -1."""
    if not is_square(m):
        return False
    for i, row in enumerate(m):
        for j, x in enumerate(row):
            if x < (-1 if i == j else 0):
                return False
    return True


def adjacency_from_relator(m: Matrix) -> Matrix:
    if not is_relator_shape(m):
        raise ValueError("not a relator matrix: need a square matrix with "
                         "off-diagonal entries >= 0 and diagonal entries >= -1")
    return tuple(tuple(x + (i == j) for j, x in enumerate(row)) for i, row in enumerate(m))


def digraph_from_adjacency(adj: Matrix) -> Digraph:
    if not is_square(adj) or any(x < 0 for row in adj for x in row):
        raise ValueError("adjacency matrix must be square with non-negative entries")
    edges = [(i, j) for i, row in enumerate(adj) for j, x in enumerate(row) for _ in range(x)]
    return Digraph(len(adj), tuple(edges))


def digraph_from_relator(m: Matrix) -> Digraph:
    """Inverse dictionary; edges come out in row-major order."""
    return digraph_from_adjacency(adjacency_from_relator(m))


def _live(adj: Matrix) -> list[bool]:
    # Greatest set of vertices each having an edge into the set: exactly the
    # vertices with an infinite forward walk.
    n = len(adj)
    live = [True] * n
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if live[v] and not any(adj[v][w] and live[w] for w in range(n)):
                live[v] = False
                changed = True
    return live


def _has_unique_ray(adj: Matrix) -> bool:
    """True iff some vertex starts exactly one infinite forward walk."""
    n = len(adj)
    live = _live(adj)
    branching = [live[v] and sum(adj[v][w] for w in range(n) if live[w]) >= 2 for v in range(n)]
    # Vertices that reach a branching vertex through live vertices have >= 2 rays.
    many = branching[:]
    stack = [v for v in range(n) if many[v]]
    while stack:
        w = stack.pop()
        for u in range(n):
            if live[u] and not many[u] and adj[u][w]:
                many[u] = True
                stack.append(u)
    return any(live[v] and not many[v] for v in range(n))


def is_udaf_adjacency(adj: Matrix) -> bool:
    """No vertex has exactly one infinite forward or exactly one infinite backward walk."""
    if _has_unique_ray(adj):
        return False
    return not _has_unique_ray(tuple(zip(*adj)) if adj else ())


def is_udaf_digraph(d: Digraph) -> bool:
    return is_udaf_adjacency(adjacency_matrix(d))


def is_udaf_relator(m: Matrix) -> bool:
    return is_relator_shape(m) and is_udaf_adjacency(adjacency_from_relator(m))


def core(d: Digraph) -> CoreResult:
    """Sub-digraph of vertices and edges lying on bi-infinite walks."""
    adj = adjacency_matrix(d)
    fwd = _live(adj)
    bwd = _live(tuple(zip(*adj)) if adj else ())
    keep = [v for v in range(d.vertex_count) if fwd[v] and bwd[v]]
    index = {v: k for k, v in enumerate(keep)}
    edge_map = tuple(k for k, (s, t) in enumerate(d.edges) if bwd[s] and fwd[t])
    edges = tuple((index[d.source(k)], index[d.target(k)]) for k in edge_map)
    return CoreResult(Digraph(len(keep), edges), tuple(keep), edge_map)


def _reach(adj: Matrix, start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w, x in enumerate(adj[v]):
            if x and w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def is_strongly_connected(d: Digraph) -> bool:
    n = d.vertex_count
    if n <= 1:
        return True
    adj = adjacency_matrix(d)
    return len(_reach(adj, 0)) == n and len(_reach(tuple(zip(*adj)), 0)) == n


def strong_components(d: Digraph) -> list[list[int]]:
    """Strongly connected components, each sorted, ordered by smallest vertex."""
    adj = adjacency_matrix(d)
    radj = tuple(zip(*adj)) if adj else ()
    reach = [_reach(adj, v) for v in range(d.vertex_count)]
    rreach = [_reach(radj, v) for v in range(d.vertex_count)]
    seen: set[int] = set()
    comps = []
    for v in range(d.vertex_count):
        if v not in seen:
            comp = sorted(reach[v] & rreach[v])
            seen.update(comp)
            comps.append(comp)
    return comps


def induced_subdigraph(d: Digraph, vertices: Sequence[int]) -> Digraph:
    index = {v: k for k, v in enumerate(vertices)}
    edges = tuple((index[s], index[t]) for s, t in d.edges if s in index and t in index)
    return Digraph(len(vertices), edges)


def trace_sequence(d: Digraph, k_max: int) -> list[int]:
    """tr(Adj^k) for k = 1..k_max: the number of period-k points."""
    if k_max < 1:
        raise ValueError("k_max must be at least 1")
    adj = adjacency_matrix(d)
    return [trace(matpow(adj, k)) for k in range(1, k_max + 1)]


def flatten_segment(d: Digraph, segment: Sequence[FiniteWalk],
                    base_index: int = 0) -> tuple[FiniteWalk, list[int]]:
    """Concatenate composable walks and record where each one starts.

    Offsets satisfy ``offsets[k] + len(segment[k]) == offsets[k + 1]``.
    """
    if not segment:
        raise ValueError("segment must contain at least one walk")
    for k, w in enumerate(segment):
        if not w.is_valid(d):
            raise ValueError(f"walk {k} is not a walk in the digraph")
    for k in range(len(segment) - 1):
        if segment[k].end_vertex(d) != segment[k + 1].start_vertex:
            raise ValueError(f"walks {k} and {k + 1} do not compose")
    offsets = [base_index]
    edges: list[int] = []
    for w in segment:
        edges.extend(w.edge_sequence)
        offsets.append(offsets[-1] + len(w))
    return FiniteWalk(segment[0].start_vertex, tuple(edges)), offsets
