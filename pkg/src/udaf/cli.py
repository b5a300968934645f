"""Command-line front end: ``udaf <subcommand> ...``.

Exit codes: 0 success/true/verified, 1 false/unverified/not found,
2 usage error, 3 malformed or unsupported input.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence, Union

from . import certificates, dimension, search, splittings
from .certificates import MoveScript, ScriptParseError, parse_script, serialize_script, verify_script
from .digraph import (Digraph, adjacency_matrix, core, digraph_from_adjacency,
                      digraph_from_relator, is_strongly_connected, is_udaf_digraph,
                      relator_matrix, trace_sequence)
from .matrices import Matrix, det, format_matrix, identity, signed_det, sub
from .textio import FormatError, format_digraph, format_multiset, parse_any, parse_multiset, parse_partition

OK, FALSE, USAGE, INPUT_ERROR = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> Union[Digraph, Matrix, MoveScript]:
    """A file, or a builtin name when no such file exists."""
    if not os.path.exists(path):
        try:
            return certificates.builtin(path)
        except KeyError:
            raise InputError(f"{path}: no such file or builtin") from None
    try:
        return parse_any(_read(path))
    except FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _as_relator(obj, adjacency: bool) -> Matrix:
    if isinstance(obj, Digraph):
        return relator_matrix(obj)
    if isinstance(obj, MoveScript):
        raise InputError("expected a matrix or digraph, got a script")
    return sub(obj, identity(len(obj))) if adjacency else obj


def _as_digraph(obj, adjacency: bool) -> Digraph:
    if isinstance(obj, Digraph):
        return obj
    if isinstance(obj, MoveScript):
        raise InputError("expected a matrix or digraph, got a script")
    try:
        return digraph_from_adjacency(obj) if adjacency else digraph_from_relator(obj)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _relator(path: str, args) -> Matrix:
    return _as_relator(_load(path), args.adjacency)


def _digraph(path: str, args) -> Digraph:
    return _as_digraph(_load(path), getattr(args, "adjacency", False))


def _factors(invs: Sequence[dimension.GroupInvariants]) -> str:
    parts = []
    for g in invs:
        text = "[" + ", ".join(map(str, g.invariant_factors)) + "]"
        if g.free_rank:
            text += f"+Z^{g.free_rank}"
        parts.append(text)
    return " ".join(parts)


def cmd_gen(args, out) -> int:
    try:
        d = certificates.builtin(" ".join(args.name))
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    if isinstance(d, MoveScript):
        out.write(serialize_script(d))
    elif args.form == "digraph":
        out.write(format_digraph(d))
    elif args.form == "adjacency":
        out.write(format_matrix(adjacency_matrix(d)) + "\n")
    else:
        out.write(format_matrix(relator_matrix(d)) + "\n")
    return OK


def cmd_info(args, out) -> int:
    d = _digraph(args.file, args)
    c = core(d).digraph
    out.write(f"vertices: {d.vertex_count}\n")
    out.write(f"edges: {d.edge_count}\n")
    out.write(f"udaf: {'yes' if is_udaf_digraph(d) else 'no'}\n")
    out.write(f"strongly connected: {'yes' if is_strongly_connected(d) else 'no'}\n")
    out.write(f"core: {c.vertex_count} vertices, {c.edge_count} edges\n")
    return OK


def cmd_invariants(args, out) -> int:
    m = _relator(args.file, args)
    snf = dimension.smith_normal_form(m, transforms=False)
    out.write(f"size: {len(m)}\n")
    out.write(f"det: {det(m)}\n")
    out.write(f"signed det: {signed_det(m)}\n")
    out.write(f"snf diagonal: {' '.join(map(str, snf.diagonal))}\n")
    out.write(f"group: {dimension.group_invariants_of(m)}\n")
    try:
        comps = dimension.component_invariants(digraph_from_relator(m))
        out.write(f"core components: {_factors(comps)}\n")
    except dimension.Unsupported as exc:
        out.write(f"core components: unsupported ({exc})\n")
    return OK


def _digraph_pair(args):
    return _as_digraph(_load(args.a), args.adjacency), _as_digraph(_load(args.b), args.adjacency)


def cmd_weak(args, out) -> int:
    d1, d2 = _digraph_pair(args)
    try:
        i1 = dimension.component_invariants(d1)
        i2 = dimension.component_invariants(d2)
    except dimension.Unsupported as exc:
        raise InputError(f"unsupported: {exc}") from None
    if i1 == i2:
        out.write(f"weak UDAF equivalent: invariants {_factors(i1)}\n")
        return OK
    out.write(f"invariants differ: {_factors(i1)} vs {_factors(i2)}\n")
    return FALSE


def cmd_det_check(args, out) -> int:
    a, b = _relator(args.a, args), _relator(args.b, args)
    sa, sb = signed_det(a), signed_det(b)
    if sa == sb:
        out.write(f"compatible: (-1)^n det = {sa} for both\n")
        return OK
    out.write(f"incompatible: (-1)^n det {sa} vs {sb}\n")
    return FALSE


def cmd_verify(args, out) -> int:
    try:
        script = parse_script(_read(args.script))
    except ScriptParseError as exc:
        raise InputError(f"{args.script}: {exc}") from None
    report = verify_script(script)
    for k, mv in enumerate(script.moves, start=1):
        if k >= len(report.intermediates):
            break
        out.write(f"step {k}: {mv}  ok  signed det {report.invariant_trace[k]}\n")
    out.write(f"{report.status}\n")
    return OK if report.verified else FALSE


def cmd_search(args, out) -> int:
    a, b = _relator(args.a, args), _relator(args.b, args)
    try:
        budget = search.SearchBudget(args.max_steps, args.max_size, args.max_entry, args.max_states)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    try:
        outcome = search.find_certificate(a, b, budget, no_cross=args.no_cross,
                                          dead_moves=args.dead_moves, jobs=args.jobs)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if not outcome.found:
        detail = f" ({outcome.reason})" if outcome.reason else f" ({outcome.states} states)"
        out.write(f"{outcome.kind.value}{detail}\n")
        return FALSE
    out.write(f"found: {len(outcome.script.moves)} moves, {outcome.states} states\n")
    text = serialize_script(outcome.script)
    if args.emit_script:
        Path(args.emit_script).write_text(text)
    else:
        out.write(text)
    return OK


def _write_folding(f: splittings.LabeledFolding, out) -> None:
    out.write(format_digraph(f.domain))
    out.write("vertex map: " + " ".join(f"{v + 1}->{w + 1}" for v, w in enumerate(f.vertex_map)) + "\n")
    out.write("edge map: " + " ".join(f"{e + 1}->{g + 1}" for e, g in enumerate(f.edge_map)) + "\n")


def cmd_split(args, out) -> int:
    d = _digraph(args.digraph, args)
    blocks = parse_partition(_read(args.partition)) if args.partition else []
    fn = splittings.out_split if args.mode == "out" else splittings.in_split
    try:
        _, folding = fn(d, blocks)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write_folding(folding, out)
    return OK


def cmd_pf(args, out) -> int:
    d = _digraph(args.digraph, args)
    try:
        _, folding = splittings.past_future_digraph(d, args.m, args.n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    _write_folding(folding, out)
    return OK


def cmd_simd(args, out) -> int:
    d = _digraph(args.digraph, args)
    size = core(d).digraph.vertex_count
    try:
        m1, m2 = parse_multiset(args.m1, size), parse_multiset(args.m2, size)
        same = dimension.sim_d_equivalent(m1, m2, d)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    relation = "~" if same else "not ~"
    out.write(f"{format_multiset(m1)} {relation} {format_multiset(m2)}\n")
    return OK if same else FALSE


def cmd_traces(args, out) -> int:
    d = _digraph(args.digraph, args)
    if args.k < 1:
        raise InputError("k must be at least 1")
    out.write(" ".join(map(str, trace_sequence(d, args.k))) + "\n")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="udaf", description="Strong and weak UDAF equivalence tools.")
    sub_ = parser.add_subparsers(dest="command", required=True)

    def matrix_flags(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--relator", dest="adjacency", action="store_false",
                       help="matrix files hold relator matrices (default)")
        g.add_argument("--adjacency", dest="adjacency", action="store_true",
                       help="matrix files hold adjacency matrices")
        p.set_defaults(adjacency=False)

    p = sub_.add_parser("gen", help="print a builtin digraph or script")
    p.add_argument("name", nargs="+", help="rose N, golden, ashley, fourcycle or script:<name>")
    g = p.add_mutually_exclusive_group()
    for form in ("relator", "adjacency", "digraph"):
        g.add_argument(f"--{form}", dest="form", action="store_const", const=form)
    p.set_defaults(form="relator", func=cmd_gen)

    p = sub_.add_parser("info", help="size, UDAF check, connectivity and core size")
    p.add_argument("file")
    matrix_flags(p)
    p.set_defaults(func=cmd_info)

    p = sub_.add_parser("invariants", help="determinant, Smith form and group invariants")
    p.add_argument("file")
    matrix_flags(p)
    p.set_defaults(func=cmd_invariants)

    for name, func, text in (("weak", cmd_weak, "decide weak UDAF equivalence"),
                             ("det-check", cmd_det_check, "compare (-1)^n det")):
        p = sub_.add_parser(name, help=text)
        p.add_argument("a")
        p.add_argument("b")
        matrix_flags(p)
        p.set_defaults(func=func)

    p = sub_.add_parser("verify", help="replay a move script")
    p.add_argument("script")
    p.set_defaults(func=cmd_verify)

    p = sub_.add_parser("search", help="bounded search for a move script")
    p.add_argument("a")
    p.add_argument("b")
    matrix_flags(p)
    defaults = search.SearchBudget()
    p.add_argument("--max-steps", type=int, default=defaults.max_steps)
    p.add_argument("--max-size", type=int, default=defaults.max_matrix_size)
    p.add_argument("--max-entry", type=int, default=defaults.max_entry_abs)
    p.add_argument("--max-states", type=int, default=defaults.max_states)
    p.add_argument("--jobs", type=int, default=1, help="worker processes for frontier expansion")
    p.add_argument("--no-cross", action="store_true", help="never add or remove crosses")
    p.add_argument("--dead-moves", action="store_true", help="also try deleting dead rows and columns")
    p.add_argument("--emit-script", metavar="PATH", help="write the script here instead of stdout")
    p.set_defaults(func=cmd_search)

    p = sub_.add_parser("split", help="in- or out-splitting with its folding")
    p.add_argument("digraph")
    p.add_argument("--mode", choices=("in", "out"), required=True)
    p.add_argument("--partition", help="file with one block of 1-based edge indices per line")
    matrix_flags(p)
    p.set_defaults(func=cmd_split)

    p = sub_.add_parser("pf", help="past-future digraph PF(D, m, n)")
    p.add_argument("digraph")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    matrix_flags(p)
    p.set_defaults(func=cmd_pf)

    p = sub_.add_parser("simd", help="decide whether two vertex multisets are ~_D equivalent")
    p.add_argument("digraph")
    p.add_argument("m1", help="multiset such as '1:2 3:1'")
    p.add_argument("m2")
    matrix_flags(p)
    p.set_defaults(func=cmd_simd)

    p = sub_.add_parser("traces", help="traces of A^1 .. A^k")
    p.add_argument("digraph")
    p.add_argument("k", type=int)
    matrix_flags(p)
    p.set_defaults(func=cmd_traces)
    return parser


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args, out)
    except InputError as exc:
        err.write(f"udaf: {exc}\n")
        return INPUT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
