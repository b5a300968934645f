"""In/out-splittings, past-future digraphs and their standard foldings."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .digraph import Digraph, adjacency_matrix
from .matrices import matpow

DEFAULT_PF_CAP = 10 ** 6


class SplitSizeError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledFolding:
    """A digraph homomorphism given by explicit vertex and edge maps."""

    domain: Digraph
    target: Digraph
    vertex_map: tuple[int, ...]
    edge_map: tuple[int, ...]


def is_homomorphism(f: LabeledFolding) -> bool:
    d, t = f.domain, f.target
    if len(f.vertex_map) != d.vertex_count or len(f.edge_map) != d.edge_count:
        return False
    if any(not 0 <= v < t.vertex_count for v in f.vertex_map):
        return False
    for k, (s, e_t) in enumerate(d.edges):
        image = f.edge_map[k]
        if not 0 <= image < t.edge_count:
            return False
        if t.source(image) != f.vertex_map[s] or t.target(image) != f.vertex_map[e_t]:
            return False
    return True


def normalize_partition(d: Digraph, blocks: Iterable[Iterable[int]]) -> list[list[int]]:
    """Complete a partial partition with singletons; blocks ordered by smallest edge."""
    seen: set[int] = set()
    out = []
    for block in blocks:
        block = sorted(set(block))
        if not block:
            continue
        for e in block:
            if not 0 <= e < d.edge_count:
                raise ValueError(f"edge {e + 1} does not exist")
            if e in seen:
                raise ValueError(f"edge {e + 1} appears in two blocks")
            seen.add(e)
        out.append(block)
    out.extend([e] for e in range(d.edge_count) if e not in seen)
    return sorted(out, key=lambda b: b[0])


def _split(d: Digraph, blocks, by_source: bool) -> tuple[Digraph, LabeledFolding]:
    classes = normalize_partition(d, blocks)
    end = d.source if by_source else d.target
    for block in classes:
        if len({end(e) for e in block}) > 1:
            kind = "source" if by_source else "target"
            raise ValueError(f"inadmissible partition: block {[e + 1 for e in block]} "
                             f"mixes edges with different {kind}s")
    cls = {e: k for k, block in enumerate(classes) for e in block}
    edges = []
    edge_map = []
    if by_source:
        # Edge (e1, [e2]) from [e1] to [e2] whenever t(e1) = s(e2).
        for e1 in range(d.edge_count):
            for k, block in enumerate(classes):
                if d.source(block[0]) == d.target(e1):
                    edges.append((cls[e1], k))
                    edge_map.append(e1)
    else:
        # Edge ([e1], e2) from [e1] to [e2] whenever t(e1) = s(e2).
        for e2 in range(d.edge_count):
            for k, block in enumerate(classes):
                if d.target(block[0]) == d.source(e2):
                    edges.append((k, cls[e2]))
                    edge_map.append(e2)
        order = sorted(range(len(edges)), key=lambda k: (edges[k][0], edge_map[k]))
        edges = [edges[k] for k in order]
        edge_map = [edge_map[k] for k in order]
    s = Digraph(len(classes), tuple(edges))
    vertex_map = tuple(end(block[0]) for block in classes)
    return s, LabeledFolding(s, d, vertex_map, tuple(edge_map))


def out_split(d: Digraph, blocks: Sequence[Sequence[int]] = ()) -> tuple[Digraph, LabeledFolding]:
    """Out-splitting: one vertex per class of edges sharing a source.

    ``blocks`` lists 0-based edge indices; unlisted edges are singletons.
    """
    return _split(d, blocks, by_source=True)


def in_split(d: Digraph, blocks: Sequence[Sequence[int]] = ()) -> tuple[Digraph, LabeledFolding]:
    """In-splitting: one vertex per class of edges sharing a target."""
    return _split(d, blocks, by_source=False)


def walks_of_length(d: Digraph, length: int) -> list[tuple[int, tuple[int, ...]]]:
    """All walks of a given length as (start vertex, edges), in lexicographic order.

    Length-0 walks are ordered by vertex; longer walks by their edge tuple.
    """
    if length == 0:
        return [(v, ()) for v in range(d.vertex_count)]
    out_edges = [d.out_edges(v) for v in range(d.vertex_count)]
    walks = [(d.source(e), (e,)) for e in range(d.edge_count)]
    for _ in range(length - 1):
        walks = [(s, es + (e,)) for s, es in walks for e in out_edges[d.target(es[-1])]]
    return walks


def walk_count(d: Digraph, length: int) -> int:
    return sum(sum(row) for row in matpow(adjacency_matrix(d), length))


def past_future_digraph(d: Digraph, m: int, n: int,
                        cap: int = DEFAULT_PF_CAP) -> tuple[Digraph, LabeledFolding]:
    """Higher-block digraph: vertices are walks of length n - m, edges walks one longer."""
    if m > 0 or n < 0:
        raise ValueError("need m <= 0 <= n")
    span = n - m
    projected = walk_count(d, span)
    if projected > cap:
        raise SplitSizeError(f"PF digraph would have {projected} vertices (cap {cap})")
    verts = walks_of_length(d, span)
    index = {w: k for k, w in enumerate(verts)}
    edges = []
    edge_map = []
    for start, es in walks_of_length(d, span + 1):
        head = (start, es[:-1])
        tail = (d.target(es[0]), es[1:])
        edges.append((index[head], index[tail]))
        edge_map.append(es[-m])
    s = Digraph(len(verts), tuple(edges))

    def vertex_at(walk, pos):
        start, es = walk
        return start if pos == 0 else d.target(es[pos - 1])

    vertex_map = tuple(vertex_at(w, -m) for w in verts)
    return s, LabeledFolding(s, d, vertex_map, tuple(edge_map))


def all_admissible_partitions(d: Digraph, by_source: bool = True):
    """Every admissible partition (as block lists); exponential, for tests and small inputs."""
    groups: dict[int, list[int]] = {}
    for e in range(d.edge_count):
        groups.setdefault(d.source(e) if by_source else d.target(e), []).append(e)
    per_vertex = [list(_set_partitions(es)) for es in groups.values()]
    for choice in product(*per_vertex):
        yield [block for parts in choice for block in parts]


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for parts in _set_partitions(rest):
        for k in range(len(parts)):
            yield parts[:k] + [[first] + parts[k]] + parts[k + 1:]
        yield [[first]] + parts
