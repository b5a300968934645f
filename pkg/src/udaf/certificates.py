"""Replayable move scripts certifying strong UDAF equivalence."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Sequence, Union

from .digraph import Digraph, digraph_from_adjacency, is_udaf_relator
from .matrices import Matrix, as_matrix, format_matrix, signed_det
from .moves import (AddCol, AddCross, AddRow, DeleteDead, IllegalMove, InsertDead,
                    Move, Permute, RemoveCross, SubCol, SubRow, invert_script, step)


class ScriptParseError(ValueError):
    def __init__(self, line: Optional[int], message: str):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


@dataclass(frozen=True)
class MoveScript:
    initial: Matrix
    moves: tuple[Move, ...]
    claimed_final: Matrix

    def __post_init__(self):
        object.__setattr__(self, "initial", as_matrix(self.initial))
        object.__setattr__(self, "moves", tuple(self.moves))
        object.__setattr__(self, "claimed_final", as_matrix(self.claimed_final))


@dataclass
class VerificationReport:
    verified: bool
    failed_step: Optional[int] = None  # 1-based; 0 means the initial matrix
    reason: Optional[str] = None
    intermediates: list[Matrix] = field(default_factory=list)
    invariant_trace: list[int] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.verified:
            return "Verified"
        where = "final" if self.failed_step is None else f"step {self.failed_step}"
        return f"Failed({where}, {self.reason})"


def verify_script(s: MoveScript) -> VerificationReport:
    """Replay a script. Failure is reported, never raised."""
    report = VerificationReport(False)
    m = s.initial
    if not is_udaf_relator(m):
        report.failed_step = 0
        report.reason = "initial matrix is not an UDAF relator matrix"
        return report
    report.intermediates.append(m)
    report.invariant_trace.append(signed_det(m))
    for k, mv in enumerate(s.moves, start=1):
        try:
            m = step(m, mv).result
        except IllegalMove as exc:
            report.failed_step = k
            report.reason = str(exc)
            return report
        report.intermediates.append(m)
        report.invariant_trace.append(signed_det(m))
    if m != s.claimed_final:
        report.reason = "final matrix does not match target"
        return report
    report.verified = True
    return report


def reverse_script(s: MoveScript) -> MoveScript:
    return MoveScript(s.claimed_final, tuple(invert_script(s.initial, s.moves)), s.initial)


def concat_scripts(first: MoveScript, second: MoveScript) -> MoveScript:
    if first.claimed_final != second.initial:
        raise ValueError("scripts do not share an endpoint")
    return MoveScript(first.initial, first.moves + second.moves, second.claimed_final)


_SECTIONS = ("matrix", "moves", "target")


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ScriptParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def parse_move(line: str, lineno: int = 0) -> Move:
    tokens = line.split()
    name, args = tokens[0].lower(), tokens[1:]
    arity = {"addcross": 1, "rmcross": 1, "deldead": 1,
             "addrow": 2, "subrow": 2, "addcol": 2, "subcol": 2}
    if name in arity:
        if len(args) != arity[name]:
            raise ScriptParseError(lineno, f"{name} takes {arity[name]} argument(s)")
        vals = _ints(args, lineno)
        cls = {"addcross": AddCross, "rmcross": RemoveCross, "deldead": DeleteDead,
               "addrow": AddRow, "subrow": SubRow, "addcol": AddCol, "subcol": SubCol}[name]
        return cls(*vals)
    if name == "perm":
        if not args:
            raise ScriptParseError(lineno, "perm needs a bijection")
        return Permute(tuple(_ints(args, lineno)))
    if name == "insdead":
        if len(args) < 2 or args[1] not in ("row", "col"):
            raise ScriptParseError(lineno, "usage: insdead <p> row|col <entries>")
        return InsertDead(_ints(args[:1], lineno)[0], args[1], tuple(_ints(args[2:], lineno)))
    raise ScriptParseError(lineno, f"unknown move {name!r}")


def _size_after(mv: Move, n: int, lineno: int) -> int:
    """Track matrix size through a script, checking index ranges."""
    def need(k: int, bound: int):
        if not 1 <= k <= bound:
            raise ScriptParseError(lineno, f"index {k} out of range for size {n}")

    if isinstance(mv, AddCross):
        need(mv.p, n + 1)
        return n + 1
    if isinstance(mv, (RemoveCross, DeleteDead)):
        need(mv.p, n)
        return n - 1
    if isinstance(mv, (AddRow, SubRow, AddCol, SubCol)):
        need(mv.i, n)
        need(mv.j, n)
        return n
    if isinstance(mv, Permute):
        if len(mv.perm) != n:
            raise ScriptParseError(lineno, f"perm has {len(mv.perm)} entries, matrix size is {n}")
        return n
    if isinstance(mv, InsertDead):
        need(mv.p, n + 1)
        if len(mv.entries) != n:
            raise ScriptParseError(lineno, f"insdead needs {n} entries")
        return n + 1
    raise TypeError(mv)


def _matrix_block(rows: list[tuple[int, list[str]]], what: str) -> Matrix:
    if not rows:
        raise ScriptParseError(None, f"empty {what} block")
    width = len(rows[0][1])
    parsed = []
    for lineno, tokens in rows:
        if len(tokens) != width:
            raise ScriptParseError(lineno, f"ragged {what} row: expected {width} entries")
        parsed.append(_ints(tokens, lineno))
    if len(parsed) != width:
        raise ScriptParseError(rows[0][0], f"{what} block is {len(parsed)}x{width}, not square")
    return as_matrix(parsed)


def parse_script(text: str) -> MoveScript:
    section = None
    blocks: dict[str, list[tuple[int, list[str]]]] = {k: [] for k in _SECTIONS}
    seen = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if not line:
            continue
        if line.lower() in _SECTIONS:
            section = line.lower()
            if section in seen:
                raise ScriptParseError(lineno, f"duplicate {section} section")
            seen.append(section)
            continue
        if section is None:
            raise ScriptParseError(lineno, "content before the 'matrix' header")
        blocks[section].append((lineno, line.split()))
    if seen != list(_SECTIONS):
        raise ScriptParseError(None, "expected sections 'matrix', 'moves', 'target' in order")
    initial = _matrix_block(blocks["matrix"], "matrix")
    target = _matrix_block(blocks["target"], "target")
    moves = []
    n = len(initial)
    for lineno, tokens in blocks["moves"]:
        mv = parse_move(" ".join(tokens), lineno)
        n = _size_after(mv, n, lineno)
        moves.append(mv)
    if n != len(target):
        raise ScriptParseError(None, f"moves end at size {n} but target has size {len(target)}")
    return MoveScript(initial, tuple(moves), target)


def serialize_script(s: MoveScript, comment: str = "") -> str:
    lines = [f"# {c}" if c else "#" for c in comment.splitlines()] if comment else []
    lines += ["matrix", format_matrix(s.initial), "moves"]
    lines += [str(mv) for mv in s.moves]
    lines += ["target", format_matrix(s.claimed_final)]
    return "\n".join(lines) + "\n"


def rose(n: int) -> Digraph:
    return Digraph(1, ((0, 0),) * n)


def _perm_adjacency(*cycles_list: Sequence[Sequence[Sequence[int]]]) -> Matrix:
    """Sum of permutation matrices, each given in 1-based cycle notation on 8 points."""
    n = 8
    adj = [[0] * n for _ in range(n)]
    for cycles in cycles_list:
        image = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                image[a - 1] = b - 1
        for v in range(n):
            adj[v][image[v]] += 1
    return as_matrix(adj)


ASHLEY_ADJACENCY = _perm_adjacency([[1, 2, 3, 4, 5, 6, 7, 8]], [[3, 7, 4, 8, 6, 5]])
GOLDEN_ADJACENCY = ((1, 1), (1, 0))
FOURCYCLE_RELATOR = ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0))

_SCRIPTS = {
    "script:golden-to-rose2": "golden-to-rose2.txt",
    "script:ashley-to-fourcycle": "ashley-to-fourcycle.txt",
    "script:rose2-to-fourcycle": "rose2-to-fourcycle.txt",
}

BUILTIN_NAMES = ("rose <n>", "golden", "ashley", "fourcycle") + tuple(_SCRIPTS)


def builtin(name: str) -> Union[Digraph, MoveScript]:
    """Named digraphs and checked-in certificates."""
    key = name.strip().lower()
    match = re.fullmatch(r"rose[\s:]*(\d+)", key)
    if match:
        n = int(match.group(1))
        if n < 2:
            raise KeyError("rose needs at least 2 leaves")
        return rose(n)
    if key == "golden":
        return digraph_from_adjacency(GOLDEN_ADJACENCY)
    if key == "ashley":
        return digraph_from_adjacency(ASHLEY_ADJACENCY)
    if key == "fourcycle":
        return digraph_from_adjacency(tuple(tuple(x + (i == j) for j, x in enumerate(row))
                                            for i, row in enumerate(FOURCYCLE_RELATOR)))
    if key in _SCRIPTS:
        text = resources.files("udaf").joinpath("data").joinpath(_SCRIPTS[key]).read_text()
        return parse_script(text)
    raise KeyError(f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}")
