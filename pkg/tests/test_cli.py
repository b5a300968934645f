import io

import pytest

from udaf import cli
from udaf.certificates import builtin, serialize_script
from udaf.digraph import relator_matrix
from udaf.dimension import dimension_group_invariants, smith_normal_form
from udaf.matrices import det, format_matrix
from udaf.search import SearchBudget, find_certificate
from udaf.textio import parse_digraph


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {"rose2.mat": "1\n", "rose3.mat": "2\n", "golden.rel": "0 1\n1 -1\n",
                       "golden.adj": "1 1\n1 0\n", "broken.mat": "1 2\n3\n",
                       "a.rel": "0 1\n1 0\n", "b.rel": "2 1\n1 1\n"}.items():
        (tmp_path / name).write_text(text)
        paths[name] = str(tmp_path / name)
    paths["dir"] = tmp_path
    return paths


def test_weak_roses(files):
    code, out, _ = run("weak", files["rose2.mat"], files["rose3.mat"])
    assert code == 1
    assert out == "invariants differ: [] vs [2]\n"
    code, out, _ = run("weak", files["golden.rel"], files["rose2.mat"])
    assert code == 0


def test_verify_golden(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text(serialize_script(builtin("script:golden-to-rose2")))
    code, out, _ = run("verify", str(path))
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "Verified"
    assert sum(1 for line in lines if line.startswith("step")) == 3


def test_verify_failures(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("matrix\n0 1\n1 -1\nmoves\nrmcross 2\ntarget\n1\n")
    code, out, _ = run("verify", str(bad))
    assert code == 1 and out.startswith("Failed(step 1")
    garbled = tmp_path / "garbled.txt"
    garbled.write_text("matrix\n1\nmoves\naddrow 1\ntarget\n1\n")
    code, _, err = run("verify", str(garbled))
    assert code == 3 and "line 4" in err


def test_invariants_match_library():
    code, out, _ = run("invariants", "ashley")
    m = relator_matrix(builtin("ashley"))
    assert code == 0
    assert f"det: {det(m)}" in out
    assert "snf diagonal: " + " ".join(map(str, smith_normal_form(m).diagonal)) in out
    assert f"group: {dimension_group_invariants(builtin('ashley'))}" in out
    assert out.splitlines()[0] == "size: 8"


def test_det_check(files):
    assert run("det-check", files["a.rel"], files["b.rel"])[0] == 1
    assert run("det-check", files["golden.rel"], files["rose2.mat"])[0] == 0
    assert run("det-check", files["golden.adj"], files["rose2.mat"], "--adjacency")[0] == 1
    assert run("det-check", "--adjacency", files["golden.adj"], "rose 2")[0] == 0


def test_gen_forms():
    code, out, _ = run("gen", "rose", "3")
    assert (code, out) == (0, "2\n")
    code, out, _ = run("gen", "golden", "--digraph")
    assert parse_digraph(out) == builtin("golden")
    code, out, _ = run("gen", "ashley", "--adjacency")
    assert out.splitlines()[0].split() == ["1", "1", "0", "0", "0", "0", "0", "0"]
    code, out, _ = run("gen", "fourcycle")
    assert out == format_matrix(relator_matrix(builtin("fourcycle"))) + "\n"
    assert run("gen", "petersen")[0] == 3


def test_search_matches_library(files, tmp_path):
    code, out, _ = run("search", files["golden.rel"], files["rose2.mat"], "--max-steps", "3")
    expected = find_certificate(((0, 1), (1, -1)), ((1,),), SearchBudget(max_steps=3))
    assert code == 0
    assert out.endswith(serialize_script(expected.script))
    emitted = tmp_path / "found.txt"
    code, out, _ = run("search", files["golden.rel"], files["rose2.mat"], "--max-steps", "3",
                       "--emit-script", str(emitted), "--jobs", "2")
    assert code == 0 and emitted.read_text() == serialize_script(expected.script)
    code, out, _ = run("search", files["golden.rel"], files["rose2.mat"], "--max-steps", "2")
    assert code == 1 and out.startswith("exhausted")
    code, out, _ = run("search", files["a.rel"], files["b.rel"])
    assert code == 1 and "det-incompatible" in out
    assert run("search", files["golden.rel"], files["rose2.mat"], "--max-steps", "0")[0] == 3


def test_info_and_traces(files):
    code, out, _ = run("info", files["golden.rel"])
    assert code == 0
    assert "udaf: yes" in out and "core: 2 vertices, 3 edges" in out
    assert run("traces", "golden", "4")[1] == "1 3 4 7\n"
    assert run("traces", "golden", "0")[0] == 3


def test_split_and_pf(files, tmp_path):
    part = tmp_path / "part.txt"
    part.write_text("1 2\n")
    code, out, _ = run("split", "rose 2", "--mode", "out", "--partition", str(part))
    assert code == 0 and out.startswith("vertices 1\n")
    code, out, _ = run("split", "golden", "--mode", "in")
    assert code == 0 and out.startswith("vertices 3\n")
    assert run("split", "golden", "--mode", "in", "--partition", str(part))[0] == 3
    code, out, _ = run("pf", "rose 2", "-1", "1")
    assert code == 0 and out.startswith("vertices 4\n")
    assert "vertex map:" in out and "edge map:" in out


def test_simd():
    code, out, _ = run("simd", "rose 3", "1:1", "1:3")
    assert code == 0 and out == "1:1 ~ 1:3\n"
    assert run("simd", "rose 3", "1:1", "1:2")[0] == 1
    assert run("simd", "rose 3", "2:1", "1:2")[0] == 3


def test_usage_and_input_errors(files):
    assert run()[0] == 2
    assert run("frobnicate")[0] == 2
    assert run("weak", files["rose2.mat"])[0] == 2
    assert run("info", files["broken.mat"])[0] == 3
    assert run("info", "/nonexistent/file")[0] == 3
    assert run("--help")[0] == 0
