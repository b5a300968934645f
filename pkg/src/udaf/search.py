"""Bounded breadth-first search for move-script certificates."""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product
from typing import Optional

from .certificates import MoveScript, verify_script
from .digraph import digraph_from_relator, is_udaf_relator
from .dimension import Unsupported, check_det_compatible, weak_udaf_equivalent
from .matrices import Matrix, as_matrix, permute
from .moves import (AddCol, AddCross, AddRow, DeleteDead, IllegalMove, Move,
                    Permute, RemoveCross, SubCol, SubRow, step)

EXACT_CANON_LIMIT = 8


@dataclass(frozen=True)
class SearchBudget:
    max_steps: int = 8
    max_matrix_size: int = 9
    max_entry_abs: int = 64
    max_states: int = 5 * 10 ** 6

    def __post_init__(self):
        for name in ("max_steps", "max_matrix_size", "max_entry_abs", "max_states"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


class Outcome(enum.Enum):
    FOUND = "found"
    EXHAUSTED = "exhausted within budget"
    PRUNED = "pruned impossible"


@dataclass(frozen=True)
class SearchOutcome:
    kind: Outcome
    script: Optional[MoveScript] = None
    reason: Optional[str] = None
    states: int = 0

    @property
    def found(self) -> bool:
        return self.kind is Outcome.FOUND


def _refined_classes(m: Matrix) -> list[int]:
    """Isomorphism-invariant vertex colours by iterated neighbourhood refinement."""
    n = len(m)
    colour = [0] * n
    for _ in range(n + 1):
        sig = [(colour[v], m[v][v],
                tuple(sorted((colour[w], m[v][w]) for w in range(n) if w != v)),
                tuple(sorted((colour[w], m[w][v]) for w in range(n) if w != v)))
               for v in range(n)]
        ranks = {s: k for k, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if new == colour:
            break
        colour = new
    return colour


def canonical_form_with_perm(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Canonical representative and a 0-based perm with ``permute(m, perm) == canon``.

    Vertices are first ordered by refined colour; among all orderings
    compatible with the colouring the lexicographically least matrix (row
    major) wins. Above EXACT_CANON_LIMIT vertices the matrix is returned as is.
    """
    m = as_matrix(m)
    n = len(m)
    if n > EXACT_CANON_LIMIT:
        return m, tuple(range(n))
    colour = _refined_classes(m)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(colour[v], []).append(v)
    ordered = [groups[c] for c in sorted(groups)]
    best = None
    best_perm = None
    for choice in product(*(permutations(g) for g in ordered)):
        order = [v for part in choice for v in part]  # order[k] = vertex placed at k
        cand = tuple(tuple(m[order[i]][order[j]] for j in range(n)) for i in range(n))
        if best is None or cand < best:
            best = cand
            best_perm = order
    perm = [0] * n
    for k, v in enumerate(best_perm or []):
        perm[v] = k
    return best if best is not None else m, tuple(perm)


def canonical_form(m: Matrix) -> Matrix:
    return canonical_form_with_perm(m)[0]


def candidate_moves(m: Matrix, max_size: int, no_cross: bool = False,
                    dead_moves: bool = False) -> list[Move]:
    """Moves tried from ``m``, in the fixed order that makes tie-breaking well defined.

    Only the cross, row and column primitives are tried unless ``dead_moves``
    also enables dead row/column deletion.
    """
    n = len(m)
    moves: list[Move] = []
    if not no_cross:
        if n + 1 <= max_size:
            moves.extend(AddCross(p) for p in range(1, n + 2))
        moves.extend(RemoveCross(p) for p in range(1, n + 1))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    moves.extend(AddRow(i, j) for i, j in pairs)
    moves.extend(SubRow(i, j) for i, j in pairs)
    moves.extend(AddCol(i, j) for i, j in pairs)
    moves.extend(SubCol(i, j) for i, j in pairs)
    if dead_moves:
        moves.extend(DeleteDead(p) for p in range(1, n + 1))
    return moves


def _expand(args):
    m, max_size, max_entry, no_cross, dead_moves = args
    out = []
    for mv in candidate_moves(m, max_size, no_cross, dead_moves):
        try:
            res = step(m, mv)
        except IllegalMove:
            continue
        if any(abs(x) > max_entry for row in res.result for x in row):
            continue
        out.append((res.applied, res.result, canonical_form(res.result)))
    return out


def _prune_reason(a: Matrix, b: Matrix) -> Optional[str]:
    if not check_det_compatible(a, b):
        return "det-incompatible"
    try:
        if not weak_udaf_equivalent(digraph_from_relator(a), digraph_from_relator(b)):
            return "weak-invariants-differ"
    except Unsupported:
        pass
    return None


def _final_permutation(rep: Matrix, target: Matrix) -> Optional[Permute]:
    """Permute move carrying ``rep`` onto ``target`` (None when already equal)."""
    if rep == target:
        return None
    canon_rep, perm_rep = canonical_form_with_perm(rep)
    canon_t, perm_t = canonical_form_with_perm(target)
    assert canon_rep == canon_t
    inv_t = [0] * len(perm_t)
    for v, k in enumerate(perm_t):
        inv_t[k] = v
    perm = tuple(inv_t[perm_rep[v]] + 1 for v in range(len(rep)))
    assert permute(rep, [x - 1 for x in perm]) == target
    return Permute(perm)


def find_certificate(a: Matrix, b: Matrix, budget: SearchBudget = SearchBudget(),
                     no_cross: bool = False, dead_moves: bool = False,
                     jobs: int = 1) -> SearchOutcome:
    """Shortest move script from ``a`` to ``b`` within the budget.

    States are deduplicated up to simultaneous row/column permutation; a
    final ``perm`` move is appended when the reached matrix only matches
    ``b`` up to relabelling. Expansion is level-synchronised and merged in
    frontier order, so the result does not depend on ``jobs``.
    """
    a, b = as_matrix(a), as_matrix(b)
    if not is_udaf_relator(a) or not is_udaf_relator(b):
        raise ValueError("both endpoints must be UDAF relator matrices")
    reason = _prune_reason(a, b)
    if reason:
        return SearchOutcome(Outcome.PRUNED, reason=reason)
    goal = canonical_form(b)
    # parent[key] = (parent key, move applied to the parent's representative)
    start = canonical_form(a)
    rep = {start: a}
    parent: dict[Matrix, Optional[tuple[Matrix, Move]]] = {start: None}
    frontier = [start]
    found = start if start == goal else None
    depth = 0
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while found is None and depth < budget.max_steps and frontier:
            args = [(rep[key], budget.max_matrix_size, budget.max_entry_abs, no_cross, dead_moves)
                    for key in frontier]
            if pool is not None:
                chunk = max(1, len(args) // (4 * jobs))
                expansions = list(pool.map(_expand, args, chunksize=chunk))
            else:
                expansions = [_expand(x) for x in args]
            nxt = []
            for key, children in zip(frontier, expansions):
                for mv, result, canon in children:
                    if canon in parent:
                        continue
                    parent[canon] = (key, mv)
                    rep[canon] = result
                    nxt.append(canon)
                    if canon == goal:
                        found = canon
                        break
                    if len(parent) >= budget.max_states:
                        return SearchOutcome(Outcome.EXHAUSTED, states=len(parent))
                if found is not None:
                    break
            frontier = nxt
            depth += 1
    finally:
        if pool is not None:
            pool.shutdown()
    if found is None:
        return SearchOutcome(Outcome.EXHAUSTED, states=len(parent))
    moves: list[Move] = []
    key = found
    while parent[key] is not None:
        key, mv = parent[key]
        moves.append(mv)
    moves.reverse()
    last = _final_permutation(rep[found], b)
    if last is not None:
        moves.append(last)
    script = MoveScript(a, tuple(moves), b)
    assert verify_script(script).verified
    return SearchOutcome(Outcome.FOUND, script=script, states=len(parent))
