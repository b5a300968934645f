import pytest

from udaf.certificates import (ASHLEY_ADJACENCY, MoveScript, ScriptParseError, builtin,
                               concat_scripts, parse_script, reverse_script, rose,
                               serialize_script, verify_script)
from udaf.digraph import Digraph, relator_matrix
from udaf.dimension import group_invariants_of
from udaf.moves import AddCol, AddRow, RemoveCross

GOLDEN = ((0, 1), (1, -1))
GOLDEN_SCRIPT = MoveScript(GOLDEN, (AddRow(1, 2), AddCol(2, 1), RemoveCross(2)), ((1,),))
SCRIPTS = ("script:golden-to-rose2", "script:ashley-to-fourcycle", "script:rose2-to-fourcycle")


def test_golden_script_verifies():
    report = verify_script(GOLDEN_SCRIPT)
    assert report.verified
    assert report.status == "Verified"
    assert report.intermediates == [GOLDEN, ((1, 0), (1, -1)), ((1, 0), (0, -1)), ((1,),)]
    assert report.invariant_trace == [-1, -1, -1, -1]
    assert builtin("script:golden-to-rose2") == GOLDEN_SCRIPT


def test_reordered_golden_script():
    # (2,1) is already 1 in the starting matrix, so the column move is legal first.
    swapped = MoveScript(GOLDEN, (AddCol(2, 1), AddRow(1, 2), RemoveCross(2)), ((1,),))
    assert verify_script(swapped).verified
    bad = MoveScript(GOLDEN, (RemoveCross(2), AddRow(1, 2)), ((1,),))
    report = verify_script(bad)
    assert not report.verified
    assert report.failed_step == 1
    assert report.intermediates == [GOLDEN]
    twice = MoveScript(GOLDEN, (AddRow(1, 2), AddRow(1, 2)), GOLDEN)
    report = verify_script(twice)
    assert report.failed_step == 2
    assert "zero pivot" in report.reason
    assert report.status.startswith("Failed(step 2")


def test_empty_and_mismatched_scripts():
    assert verify_script(MoveScript(GOLDEN, (), GOLDEN)).verified
    report = verify_script(MoveScript(GOLDEN, (), ((1,),)))
    assert not report.verified and report.failed_step is None
    report = verify_script(MoveScript(((0,),), (), ((0,),)))
    assert report.failed_step == 0


def test_round_trip_serialization():
    for name in SCRIPTS:
        s = builtin(name)
        assert parse_script(serialize_script(s, comment="x\ny")) == s
    text = serialize_script(GOLDEN_SCRIPT)
    assert serialize_script(parse_script(text)) == text


@pytest.mark.parametrize("text, line", [
    ("matrix\n1\nmoves\naddrow 1\ntarget\n1\n", 4),
    ("matrix\n1 0\n1\nmoves\ntarget\n1\n", 3),
    ("matrix\n1\nmoves\nfrob 1\ntarget\n1\n", 4),
    ("matrix\n1\nmoves\naddrow 1 5\ntarget\n1\n", 4),
    ("matrix\n1\nmoves\ninsdead 1 up 1\ntarget\n1\n", 4),
    ("1\nmatrix\n1\nmoves\ntarget\n1\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ScriptParseError) as exc:
        parse_script(text)
    assert exc.value.line == line


def test_parse_structure_errors():
    with pytest.raises(ScriptParseError):
        parse_script("matrix\n1\ntarget\n1\n")
    with pytest.raises(ScriptParseError):
        parse_script("matrix\n1 0\n0 1\nmoves\naddcross 1\ntarget\n1 0\n0 1\n")
    with pytest.raises(ScriptParseError):
        parse_script("matrix\n1 0\nmoves\ntarget\n1\n")


def test_builtins():
    assert builtin("ashley").vertex_count == 8
    assert relator_matrix(builtin("fourcycle")) == ((0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 0, 0, 0))
    assert relator_matrix(builtin("rose 3")) == ((2,),)
    assert builtin("rose3") == builtin("rose:3") == rose(3)
    with pytest.raises(KeyError):
        builtin("rose 1")
    with pytest.raises(KeyError):
        builtin("petersen")


def test_checked_in_scripts_verify_with_constant_invariants():
    for name in SCRIPTS:
        report = verify_script(builtin(name))
        assert report.verified, (name, report.status)
        assert len(set(report.invariant_trace)) == 1
        assert len({group_invariants_of(m) for m in report.intermediates}) == 1


def test_ashley_script_endpoints():
    s = builtin("script:ashley-to-fourcycle")
    assert s.initial == relator_matrix(Digraph(8, tuple(
        (i, j) for i in range(8) for j in range(8) for _ in range(ASHLEY_ADJACENCY[i][j]))))
    assert s.claimed_final == relator_matrix(builtin("fourcycle"))


def test_reverse_and_concat():
    for name in SCRIPTS:
        assert verify_script(reverse_script(builtin(name))).verified
    chain = concat_scripts(builtin("script:ashley-to-fourcycle"),
                           reverse_script(builtin("script:rose2-to-fourcycle")))
    assert verify_script(chain).verified
    assert chain.claimed_final == ((1,),)
    with pytest.raises(ValueError):
        concat_scripts(GOLDEN_SCRIPT, GOLDEN_SCRIPT)
