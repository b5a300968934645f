"""Primitive moves on UDAF relator matrices, their inverses and row/column macros.

All move positions are 1-based against the matrix the move is applied to.
Every move checks that its result is again an UDAF relator matrix.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .digraph import (FiniteWalk, digraph_from_relator, is_relator_shape,
                      is_strongly_connected, is_udaf_relator)
from .matrices import Matrix, as_matrix, permute, transpose


class Reason(enum.Enum):
    INDEX_OUT_OF_RANGE = "index out of range"
    ZERO_PIVOT = "zero pivot entry"
    SHAPE_VIOLATED = "shape violated"
    NOT_UDAF = "result not UDAF relator"
    DEAD_PATTERN_ABSENT = "dead pattern absent"


class IllegalMove(ValueError):
    def __init__(self, reason: Reason, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason.value}: {detail}" if detail else reason.value)


@dataclass(frozen=True)
class AddCross:
    p: int

    def __str__(self):
        return f"addcross {self.p}"


@dataclass(frozen=True)
class RemoveCross:
    p: int

    def __str__(self):
        return f"rmcross {self.p}"


@dataclass(frozen=True)
class AddRow:
    """row_i += row_j, legal when entry (i, j) is non-zero."""
    i: int
    j: int

    def __str__(self):
        return f"addrow {self.i} {self.j}"


@dataclass(frozen=True)
class SubRow:
    i: int
    j: int

    def __str__(self):
        return f"subrow {self.i} {self.j}"


@dataclass(frozen=True)
class AddCol:
    """col_j += col_i, legal when entry (i, j) is non-zero."""
    i: int
    j: int

    def __str__(self):
        return f"addcol {self.i} {self.j}"


@dataclass(frozen=True)
class SubCol:
    i: int
    j: int

    def __str__(self):
        return f"subcol {self.i} {self.j}"


@dataclass(frozen=True)
class Permute:
    """Entry (v, w) of the input becomes entry (perm[v], perm[w]); 1-based images."""
    perm: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))

    def __str__(self):
        return "perm " + " ".join(map(str, self.perm))


@dataclass(frozen=True)
class DeleteDead:
    """Delete row and column p where row p or column p is zero apart from the -1 diagonal.

    ``side`` and ``entries`` record what was deleted (the dead side and the
    off-diagonal entries of the opposite side); they are filled in when the
    move is applied and left as None in freshly parsed scripts.
    """
    p: int
    side: Optional[str] = None
    entries: Optional[tuple[int, ...]] = None

    def __str__(self):
        return f"deldead {self.p}"


@dataclass(frozen=True)
class InsertDead:
    p: int
    side: str
    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        if self.side not in ("row", "col"):
            raise ValueError("side must be 'row' or 'col'")

    def __str__(self):
        return f"insdead {self.p} {self.side} " + " ".join(map(str, self.entries))


Move = Union[AddCross, RemoveCross, AddRow, SubRow, AddCol, SubCol,
             Permute, DeleteDead, InsertDead]


@dataclass(frozen=True)
class MoveOutcome:
    result: Matrix
    applied: Move


def _check_index(n: int, *idx: int) -> None:
    for k in idx:
        if not 1 <= k <= n:
            raise IllegalMove(Reason.INDEX_OUT_OF_RANGE, f"{k} not in 1..{n}")


def _check_pair(n: int, i: int, j: int) -> None:
    _check_index(n, i, j)
    if i == j:
        raise IllegalMove(Reason.INDEX_OUT_OF_RANGE, "row/column indices must differ")


def _row_op(m: Matrix, i: int, j: int, sign: int) -> Matrix:
    ri, rj = m[i - 1], m[j - 1]
    new = tuple(a + sign * b for a, b in zip(ri, rj))
    return m[:i - 1] + (new,) + m[i:]


def _col_op(m: Matrix, i: int, j: int, sign: int) -> Matrix:
    return tuple(row[:j - 1] + (row[j - 1] + sign * row[i - 1],) + row[j:] for row in m)


def _delete(m: Matrix, p: int) -> Matrix:
    return tuple(row[:p - 1] + row[p:] for k, row in enumerate(m) if k != p - 1)


def _insert(m: Matrix, p: int, row_entries: Sequence[int], col_entries: Sequence[int]) -> Matrix:
    """Insert row/column p with -1 on the diagonal; entries exclude the diagonal."""
    n = len(m)
    rows = [list(r[:p - 1]) + [col_entries[k]] + list(r[p - 1:]) for k, r in enumerate(m)]
    new_row = list(row_entries[:p - 1]) + [-1] + list(row_entries[p - 1:])
    rows.insert(p - 1, new_row)
    assert len(rows) == n + 1
    return as_matrix(rows)


def dead_side(m: Matrix, p: int) -> Optional[str]:
    """'row' or 'col' if that side of index p is zero apart from a -1 diagonal."""
    k = p - 1
    if m[k][k] != -1:
        return None
    if all(x == 0 for j, x in enumerate(m[k]) if j != k):
        return "row"
    if all(m[i][k] == 0 for i in range(len(m)) if i != k):
        return "col"
    return None


def _raw_apply(m: Matrix, mv: Move) -> tuple[Matrix, Move]:
    n = len(m)
    if isinstance(mv, AddCross):
        _check_index(n + 1, mv.p)
        return _insert(m, mv.p, (0,) * n, (0,) * n), mv
    if isinstance(mv, RemoveCross):
        _check_index(n, mv.p)
        k = mv.p - 1
        clean = (m[k][k] == -1 and all(x == 0 for j, x in enumerate(m[k]) if j != k)
                 and all(m[i][k] == 0 for i in range(n) if i != k))
        if not clean:
            raise IllegalMove(Reason.DEAD_PATTERN_ABSENT, f"no cross at {mv.p}")
        return _delete(m, mv.p), mv
    if isinstance(mv, (AddRow, AddCol)):
        _check_pair(n, mv.i, mv.j)
        if m[mv.i - 1][mv.j - 1] == 0:
            raise IllegalMove(Reason.ZERO_PIVOT, f"entry ({mv.i},{mv.j}) is 0")
        op = _row_op if isinstance(mv, AddRow) else _col_op
        return op(m, mv.i, mv.j, 1), mv
    if isinstance(mv, (SubRow, SubCol)):
        _check_pair(n, mv.i, mv.j)
        op = _row_op if isinstance(mv, SubRow) else _col_op
        out = op(m, mv.i, mv.j, -1)
        if out[mv.i - 1][mv.j - 1] == 0:
            raise IllegalMove(Reason.ZERO_PIVOT, f"result entry ({mv.i},{mv.j}) would be 0")
        return out, mv
    if isinstance(mv, Permute):
        if sorted(mv.perm) != list(range(1, n + 1)):
            raise IllegalMove(Reason.INDEX_OUT_OF_RANGE, f"not a bijection on 1..{n}")
        return permute(m, [x - 1 for x in mv.perm]), mv
    if isinstance(mv, DeleteDead):
        _check_index(n, mv.p)
        side = dead_side(m, mv.p)
        if side is None:
            raise IllegalMove(Reason.DEAD_PATTERN_ABSENT, f"row/column {mv.p} is not dead")
        k = mv.p - 1
        if side == "row":
            entries = tuple(m[i][k] for i in range(n) if i != k)
        else:
            entries = tuple(x for j, x in enumerate(m[k]) if j != k)
        return _delete(m, mv.p), DeleteDead(mv.p, side, entries)
    if isinstance(mv, InsertDead):
        _check_index(n + 1, mv.p)
        if len(mv.entries) != n:
            raise IllegalMove(Reason.SHAPE_VIOLATED, f"expected {n} entries, got {len(mv.entries)}")
        if any(x < 0 for x in mv.entries):
            raise IllegalMove(Reason.SHAPE_VIOLATED, "inserted entries must be >= 0")
        zero = (0,) * n
        if mv.side == "row":
            return _insert(m, mv.p, zero, mv.entries), mv
        return _insert(m, mv.p, mv.entries, zero), mv
    raise TypeError(f"unknown move {mv!r}")


def step(m: Matrix, mv: Move) -> MoveOutcome:
    """Apply a move to a matrix already known to be an UDAF relator matrix."""
    out, applied = _raw_apply(m, mv)
    if not is_relator_shape(out):
        raise IllegalMove(Reason.SHAPE_VIOLATED, "result has a negative off-diagonal "
                          "or a diagonal entry below -1")
    if not is_udaf_relator(out):
        raise IllegalMove(Reason.NOT_UDAF)
    return MoveOutcome(out, applied)


def apply_move(m: Matrix, mv: Move) -> MoveOutcome:
    m = as_matrix(m)
    if not is_udaf_relator(m):
        raise ValueError("input is not an UDAF relator matrix")
    return step(m, mv)


def invert_move(mv: Move, context: Matrix) -> Move:
    """The move undoing ``mv`` after it was applied to ``context``."""
    if isinstance(mv, AddCross):
        return RemoveCross(mv.p)
    if isinstance(mv, RemoveCross):
        return AddCross(mv.p)
    if isinstance(mv, AddRow):
        return SubRow(mv.i, mv.j)
    if isinstance(mv, SubRow):
        return AddRow(mv.i, mv.j)
    if isinstance(mv, AddCol):
        return SubCol(mv.i, mv.j)
    if isinstance(mv, SubCol):
        return AddCol(mv.i, mv.j)
    if isinstance(mv, Permute):
        inv = [0] * len(mv.perm)
        for k, image in enumerate(mv.perm):
            inv[image - 1] = k + 1
        return Permute(tuple(inv))
    if isinstance(mv, DeleteDead):
        if mv.side is None or mv.entries is None:
            mv = _raw_apply(as_matrix(context), mv)[1]
        return InsertDead(mv.p, mv.side, mv.entries)
    if isinstance(mv, InsertDead):
        return DeleteDead(mv.p, mv.side, mv.entries)
    raise TypeError(f"unknown move {mv!r}")


def invert_script(initial: Matrix, moves: Sequence[Move]) -> list[Move]:
    """Inverse of a legal move sequence, in the order that undoes it."""
    contexts = []
    m = as_matrix(initial)
    for mv in moves:
        contexts.append(m)
        m = step(m, mv).result
    return [invert_move(mv, ctx) for mv, ctx in zip(reversed(moves), reversed(contexts))]


def _path_vertices(m: Matrix, path: FiniteWalk) -> list[int]:
    d = digraph_from_relator(m)
    if not path.is_valid(d):
        raise ValueError("path is not a walk in the digraph of the matrix")
    verts = path.vertices(d)
    if len(set(verts)) != len(verts):
        raise ValueError("path is not injective")
    return verts


def _chain(p: Sequence[int]) -> list[Move]:
    # p[0] is the source row, p[-1] the target; each p[k+1] has an edge to p[k].
    # Leaves every row unchanged except p[-1], which gains rows p[0..-2].
    n = len(p) - 1
    forward = [AddRow(p[k + 1], p[k]) for k in range(n)]
    backward = [SubRow(p[k + 1], p[k]) for k in range(n - 2, -1, -1)]
    return forward + backward


def _check_macro_input(m: Matrix) -> None:
    if any(x < 0 for row in m for x in row):
        raise ValueError("macro requires a relator matrix with no negative entries")
    if len(m) < 2 or not is_strongly_connected(digraph_from_relator(m)):
        raise ValueError("macro requires a strongly connected digraph with at least 2 vertices")


def expand_row_macro(m: Matrix, target_row: int, source_row: int, path: FiniteWalk) -> list[Move]:
    """Primitive moves whose net effect is row_target += row_source.

    ``path`` is an injective walk (0-based vertices of the digraph of ``m``)
    from ``target_row`` to ``source_row``; each primitive step adds a row to
    the row of a vertex with an edge into it, which keeps every pivot
    non-zero. Rows are 1-based, as elsewhere in this module.
    """
    m = as_matrix(m)
    _check_macro_input(m)
    verts = _path_vertices(m, path)
    if verts[0] != target_row - 1 or verts[-1] != source_row - 1:
        raise ValueError("path must run from the target row to the source row")
    if len(verts) < 2:
        raise ValueError("target and source rows must differ")
    p = [v + 1 for v in reversed(verts)]
    first = _chain(p)
    rest = _chain(p[1:]) if len(p) > 2 else []
    undo = [SubRow(mv.i, mv.j) if isinstance(mv, AddRow) else AddRow(mv.i, mv.j)
            for mv in reversed(rest)]
    return first + undo


def expand_col_macro(m: Matrix, target_col: int, source_col: int, path: FiniteWalk) -> list[Move]:
    """Primitive moves whose net effect is col_target += col_source.

    ``path`` runs from ``source_col`` to ``target_col`` in the digraph of ``m``.
    """
    m = as_matrix(m)
    _check_macro_input(m)
    mt = transpose(m)
    verts = _path_vertices(m, path)
    # The same walk read backwards is a walk in the reversed digraph.
    dt = digraph_from_relator(mt)
    edges_t = []
    for a, b in zip(reversed(verts[1:]), reversed(verts[:-1])):
        edges_t.append(next(k for k, (s, t) in enumerate(dt.edges) if s == a and t == b))
    walk_t = FiniteWalk(verts[-1], tuple(edges_t))
    row_moves = expand_row_macro(mt, target_col, source_col, walk_t)
    out: list[Move] = []
    for mv in row_moves:
        cls = AddCol if isinstance(mv, AddRow) else SubCol
        out.append(cls(mv.j, mv.i))
    return out


def shortest_path(m: Matrix, start: int, end: int) -> FiniteWalk:
    """A shortest walk between 1-based vertices of the digraph of ``m``."""
    d = digraph_from_relator(m)
    s, t = start - 1, end - 1
    prev: dict[int, tuple[int, int]] = {}
    seen = {s}
    queue = [s]
    for v in queue:
        if v == t:
            break
        for k in d.out_edges(v):
            w = d.target(k)
            if w not in seen:
                seen.add(w)
                prev[w] = (v, k)
                queue.append(w)
    if t not in seen:
        raise ValueError(f"no walk from {start} to {end}")
    edges = []
    v = t
    while v != s:
        v, k = prev[v]
        edges.append(k)
    return FiniteWalk(s, tuple(reversed(edges)))


def row_macro(m: Matrix, target_row: int, source_row: int) -> list[Move]:
    """expand_row_macro along a shortest path."""
    return expand_row_macro(m, target_row, source_row, shortest_path(m, target_row, source_row))


def col_macro(m: Matrix, target_col: int, source_col: int) -> list[Move]:
    """expand_col_macro along a shortest path."""
    return expand_col_macro(m, target_col, source_col, shortest_path(m, source_col, target_col))
