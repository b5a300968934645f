"""Weak UDAF equivalence: Smith normal form, dimension groups and refinements.

Everything here is exact integer arithmetic; no floats.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .digraph import (Digraph, adjacency_matrix, core, induced_subdigraph,
                      is_udaf_digraph, relator_matrix, strong_components)
from .matrices import Matrix, as_matrix, identity, matpow, signed_det, vecmat

Multiset = tuple[int, ...]


class Unsupported(ValueError):
    """Input lies outside the class where the decision procedure is valid."""


@dataclass(frozen=True)
class SNFResult:
    """``left @ M @ right == diag(diagonal)`` padded to the shape of M."""

    diagonal: tuple[int, ...]
    left: Optional[Matrix] = None
    right: Optional[Matrix] = None


@dataclass(frozen=True)
class GroupInvariants:
    free_rank: int
    invariant_factors: tuple[int, ...]

    def __str__(self):
        parts = [f"Z/{f}" for f in self.invariant_factors] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class MonoidPresentation:
    """Generators are core vertices; generator v is identified with ``relations[v]``.

    ``relations[v][w]`` is the coefficient of w in the word equal to v.
    """

    generators: tuple[int, ...]
    relations: tuple[tuple[int, ...], ...]

    def __str__(self):
        if not self.generators:
            return "< | >"
        names = [f"v{v + 1}" for v in self.generators]
        rels = []
        for name, row in zip(names, self.relations):
            terms = [(f"{c}{names[w]}" if c != 1 else names[w]) for w, c in enumerate(row) if c]
            rels.append(f"{name} = {' + '.join(terms) if terms else '0'}")
        return f"< {', '.join(names)} | {', '.join(rels)} >"


def smith_normal_form(m: Sequence[Sequence[int]], transforms: bool = True) -> SNFResult:
    """Smith normal form over the integers by unimodular row/column reduction."""
    a = [list(row) for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    left = [list(r) for r in identity(rows)]
    right = [list(r) for r in identity(cols)]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x + q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] += q * row[src]
        for row in right:
            row[dst] += q * row[src]

    for t in range(min(rows, cols)):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // a[t][t]))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // a[t][t]))
            rest = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
            rest += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
            if rest:
                # Remainders are smaller than the pivot; promote the smallest.
                _, i, j = min(rest)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            bad = next((i for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
    diagonal = tuple(a[k][k] for k in range(min(rows, cols)))
    if not transforms:
        return SNFResult(diagonal)
    return SNFResult(diagonal, as_matrix(left), as_matrix(right))


def group_invariants_of(m: Matrix) -> GroupInvariants:
    """Invariants of Z^n modulo the row span of a square matrix."""
    diag = smith_normal_form(m, transforms=False).diagonal
    free = len(m) - sum(1 for d in diag if d)
    return GroupInvariants(free, tuple(d for d in diag if d > 1))


def solve_row_combination(m: Matrix, target: Sequence[int]) -> Optional[tuple[int, ...]]:
    """An integer vector x with ``x @ m == target``, or None if there is none."""
    if not m:
        return () if not any(target) else None
    snf = smith_normal_form(m)
    # left @ m @ right = S, so x @ m = t  <=>  (x @ left^-1) @ S = t @ right.
    rhs = vecmat(target, snf.right)
    y = [0] * len(m)
    for k, value in enumerate(rhs):
        d = snf.diagonal[k] if k < len(snf.diagonal) else 0
        if d == 0:
            if value:
                return None
        elif value % d:
            return None
        else:
            y[k] = value // d
    x = vecmat(y, snf.left)
    assert vecmat(x, m) == tuple(target)
    return x


def _core_relator(d: Digraph) -> Matrix:
    return relator_matrix(core(d).digraph)


def _core_components(d: Digraph) -> list[Digraph]:
    """Core components, requiring the core to be a disjoint union of strongly connected pieces."""
    if not is_udaf_digraph(d):
        raise Unsupported("not an UDAF digraph")
    c = core(d).digraph
    if c.edge_count == 0:
        raise Unsupported("core is empty (no bi-infinite walks)")
    comps = strong_components(c)
    owner = {v: k for k, comp in enumerate(comps) for v in comp}
    if any(owner[s] != owner[t] for s, t in c.edges):
        raise Unsupported("core is not a disjoint union of strongly connected digraphs")
    return [induced_subdigraph(c, comp) for comp in comps]


def dimension_monoid_presentation(d: Digraph) -> MonoidPresentation:
    c = core(d).digraph
    adj = adjacency_matrix(c)
    return MonoidPresentation(tuple(range(c.vertex_count)), adj)


def dimension_group_invariants(d: Digraph) -> GroupInvariants:
    """Free rank and invariant factors of Z^core / rowspan(Rel of the core)."""
    _core_components(d)
    return group_invariants_of(_core_relator(d))


def component_invariants(d: Digraph) -> list[GroupInvariants]:
    """Group invariants of each strongly connected core component, sorted."""
    comps = _core_components(d)
    invs = [group_invariants_of(relator_matrix(c)) for c in comps]
    return sorted(invs, key=lambda g: (g.free_rank, g.invariant_factors))


def weak_udaf_equivalent(d1: Digraph, d2: Digraph) -> bool:
    """Isomorphism of UDAF dimension monoids, for cores that are unions of strongly connected pieces.

    A union's monoid is the product of (group + isolated identity) factors,
    so the sorted list of per-component groups is compared.
    """
    return component_invariants(d1) == component_invariants(d2)


def check_det_compatible(a: Matrix, b: Matrix) -> bool:
    """False proves the two relator matrices are not strong UDAF equivalent."""
    return signed_det(as_matrix(a)) == signed_det(as_matrix(b))


def elementary_refiner_rows(d: Digraph) -> list[tuple[int, ...]]:
    return list(_core_relator(d))


def standard_refinement(ms: Sequence[int], v: int, n: int, d: Digraph) -> Multiset:
    """Replace one copy of core vertex v by the endpoints of all length-n walks from v."""
    ms = tuple(ms)
    if ms[v] <= 0:
        raise ValueError(f"vertex {v + 1} does not occur in the multiset")
    if n == 0:
        return ms
    adj = adjacency_matrix(core(d).digraph)
    ends = matpow(adj, n)[v]
    return tuple(c - (k == v) + e for k, (c, e) in enumerate(zip(ms, ends)))


def _check_refinement_domain(d: Digraph) -> Digraph:
    if not is_udaf_digraph(d):
        raise Unsupported("not an UDAF digraph")
    c = core(d).digraph
    if len(strong_components(c)) > 1:
        raise Unsupported("core is not strongly connected")
    return c


def sim_d_equivalent(m1: Sequence[int], m2: Sequence[int], d: Digraph) -> bool:
    """Whether two vertex multisets count the same beam class."""
    c = _check_refinement_domain(d)
    m1, m2 = tuple(m1), tuple(m2)
    if len(m1) != c.vertex_count or len(m2) != c.vertex_count:
        raise ValueError("multisets must be indexed by core vertices")
    if any(x < 0 for x in m1 + m2):
        raise ValueError("multiset counts must be non-negative")
    empty1, empty2 = not any(m1), not any(m2)
    if empty1 or empty2:
        return empty1 and empty2
    diff = [b - a for a, b in zip(m1, m2)]
    return solve_row_combination(relator_matrix(c), diff) is not None


def _refinement_closure(start: Multiset, rel: Matrix, depth: int, cap: int) -> dict[Multiset, int]:
    seen = {start: 0}
    queue = deque([start])
    while queue:
        ms = queue.popleft()
        level = seen[ms]
        if level == depth:
            continue
        for v, count in enumerate(ms):
            if not count:
                continue
            nxt = tuple(a + b for a, b in zip(ms, rel[v]))
            if max(nxt) > cap or nxt in seen:
                continue
            seen[nxt] = level + 1
            queue.append(nxt)
    return seen


def common_refinement_search(m1: Sequence[int], m2: Sequence[int], d: Digraph,
                             depth_bound: int, entry_cap: int) -> Optional[Multiset]:
    """Bounded search for a common refinement by standard (v,1)-refinements.

    None means nothing was found within the bounds, not that none exists.
    The result is the smallest common refinement by (total count, entries).
    """
    rel = _core_relator(d)
    m1, m2 = tuple(m1), tuple(m2)
    if max(m1 + m2, default=0) > entry_cap:
        return None
    left = _refinement_closure(m1, rel, depth_bound, entry_cap)
    right = _refinement_closure(m2, rel, depth_bound, entry_cap)
    common = left.keys() & right.keys()
    if not common:
        return None
    return min(common, key=lambda ms: (sum(ms), ms))
