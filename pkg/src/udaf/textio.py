"""Plain-text formats for digraphs, matrices, multisets and partitions.

All external indices are 1-based.
"""

from __future__ import annotations

from typing import Sequence, Union

from .digraph import Digraph
from .matrices import Matrix, as_matrix, format_matrix


class FormatError(ValueError):
    pass


def _strip(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if line:
            out.append((lineno, line))
    return out


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"line {lineno}: expected an integer, got {token!r}") from None


def parse_digraph(text: str) -> Digraph:
    lines = _lines(text)
    if not lines or lines[0][1].split()[0].lower() != "vertices":
        raise FormatError("digraph files start with 'vertices <n>'")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise FormatError(f"line {lineno}: expected 'vertices <n>'")
    n = _int(parts[1], lineno)
    if n < 0:
        raise FormatError(f"line {lineno}: vertex count must be non-negative")
    edges = []
    for lineno, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected '<source> <target>'")
        s, t = (_int(p, lineno) for p in parts)
        if not (1 <= s <= n and 1 <= t <= n):
            raise FormatError(f"line {lineno}: edge {s} {t} has an endpoint outside 1..{n}")
        edges.append((s - 1, t - 1))
    return Digraph(n, tuple(edges))


def format_digraph(d: Digraph) -> str:
    lines = [f"vertices {d.vertex_count}"]
    lines += [f"{s + 1} {t + 1}" for s, t in d.edges]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str, square: bool = True) -> Matrix:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty matrix")
    rows = [[_int(tok, lineno) for tok in line.split()] for lineno, line in lines]
    width = len(rows[0])
    for (lineno, _), row in zip(lines, rows):
        if len(row) != width:
            raise FormatError(f"line {lineno}: ragged row, expected {width} entries")
    if square and len(rows) != width:
        raise FormatError(f"matrix is {len(rows)}x{width}, not square")
    return as_matrix(rows)


def is_digraph_text(text: str) -> bool:
    lines = _lines(text)
    return bool(lines) and lines[0][1].split()[0].lower() == "vertices"


def parse_any(text: str) -> Union[Digraph, Matrix]:
    """Digraph if the first content line is a 'vertices' header, else a matrix."""
    return parse_digraph(text) if is_digraph_text(text) else parse_matrix(text)


def parse_multiset(text: str, size: int) -> tuple[int, ...]:
    """``v1:c1 v2:c2 ...`` over vertices 1..size; omitted vertices count 0."""
    counts = [0] * size
    for token in text.replace(",", " ").split():
        vertex, sep, count = token.partition(":")
        if not sep:
            raise FormatError(f"multiset entry {token!r} is not of the form v:c")
        v, c = _int(vertex, 0), _int(count, 0)
        if not 1 <= v <= size:
            raise FormatError(f"multiset vertex {v} outside 1..{size}")
        if c < 0:
            raise FormatError(f"multiset count {c} is negative")
        counts[v - 1] += c
    return tuple(counts)


def format_multiset(ms: Sequence[int]) -> str:
    return " ".join(f"{v + 1}:{c}" for v, c in enumerate(ms) if c) or "(empty)"


def parse_partition(text: str) -> list[list[int]]:
    """One block per line of 1-based edge indices; returned 0-based."""
    return [[_int(tok, lineno) - 1 for tok in line.split()] for lineno, line in _lines(text)]


__all__ = ["FormatError", "parse_digraph", "format_digraph", "parse_matrix", "format_matrix",
           "is_digraph_text", "parse_any", "parse_multiset", "format_multiset", "parse_partition"]
