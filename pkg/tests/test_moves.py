import pytest

from conftest import random_strong_relator
from oracles import sympy_det
from udaf.digraph import is_udaf_relator
from udaf.dimension import group_invariants_of
from udaf.matrices import add, signed_det, transpose
from udaf.moves import (AddCol, AddCross, AddRow, DeleteDead, IllegalMove, InsertDead, Permute,
                        Reason, RemoveCross, SubCol, SubRow, apply_move, col_macro, expand_row_macro,
                        invert_move, invert_script, row_macro, shortest_path, step)

GOLDEN = ((0, 1), (1, -1))
THREE_CYCLE = ((1, 1, 0), (0, 1, 1), (1, 0, 1))


def test_add_cross():
    assert apply_move(((1,),), AddCross(2)).result == ((1, 0), (0, -1))
    assert apply_move(((1,),), AddCross(1)).result == ((-1, 0), (0, 1))
    with pytest.raises(IllegalMove) as exc:
        apply_move(((1,),), AddCross(3))
    assert exc.value.reason is Reason.INDEX_OUT_OF_RANGE


def test_row_and_column_examples():
    assert apply_move(GOLDEN, AddRow(1, 2)).result == ((1, 0), (1, -1))
    assert apply_move(((1, 0), (1, -1)), AddCol(2, 1)).result == ((1, 0), (0, -1))
    assert apply_move(GOLDEN, AddRow(2, 1)).result == ((0, 1), (1, 0))
    assert is_udaf_relator(((0, 1), (1, 0)))


def test_delete_dead_example():
    out = apply_move(((1, 0), (1, -1)), DeleteDead(2))
    assert out.result == ((1,),)
    assert out.applied == DeleteDead(2, "col", (1,))
    assert invert_move(DeleteDead(2), ((1, 0), (1, -1))) == InsertDead(2, "col", (1,))
    assert apply_move(((1,),), InsertDead(2, "col", (1,))).result == ((1, 0), (1, -1))


def test_zero_pivots():
    after = apply_move(GOLDEN, AddRow(1, 2)).result
    with pytest.raises(IllegalMove) as exc:
        apply_move(after, AddRow(1, 2))
    assert exc.value.reason is Reason.ZERO_PIVOT
    with pytest.raises(IllegalMove) as exc:
        apply_move(((1, 1), (1, 1)), SubRow(1, 2))
    assert exc.value.reason is Reason.ZERO_PIVOT
    with pytest.raises(IllegalMove) as exc:
        apply_move(((1, 1), (1, 1)), SubCol(1, 2))
    assert exc.value.reason is Reason.ZERO_PIVOT


def test_other_illegal_moves():
    with pytest.raises(IllegalMove) as exc:
        apply_move(GOLDEN, SubRow(2, 1))
    assert exc.value.reason is Reason.SHAPE_VIOLATED
    with pytest.raises(IllegalMove) as exc:
        apply_move(GOLDEN, RemoveCross(1))
    assert exc.value.reason is Reason.DEAD_PATTERN_ABSENT
    with pytest.raises(IllegalMove) as exc:
        apply_move(GOLDEN, DeleteDead(1))
    assert exc.value.reason is Reason.DEAD_PATTERN_ABSENT
    with pytest.raises(IllegalMove) as exc:
        apply_move(GOLDEN, AddRow(1, 3))
    assert exc.value.reason is Reason.INDEX_OUT_OF_RANGE
    with pytest.raises(IllegalMove):
        apply_move(GOLDEN, AddRow(1, 1))
    with pytest.raises(IllegalMove):
        apply_move(GOLDEN, Permute((1, 1)))
    with pytest.raises(IllegalMove) as exc:
        apply_move(GOLDEN, InsertDead(1, "row", (0, -1)))
    assert exc.value.reason is Reason.SHAPE_VIOLATED
    with pytest.raises(IllegalMove) as exc:
        apply_move(GOLDEN, InsertDead(1, "row", (0,)))
    assert exc.value.reason is Reason.SHAPE_VIOLATED
    with pytest.raises(ValueError):
        apply_move(((0,),), AddCross(1))


def test_permute():
    m = ((1, 2), (0, -1))
    assert apply_move(m, Permute((1, 2))).result == m
    out = apply_move(m, Permute((2, 1))).result
    assert out == ((-1, 0), (2, 1))
    assert apply_move(out, invert_move(Permute((2, 1)), m)).result == m


def test_simple_inverses():
    assert invert_move(AddCross(3), None) == RemoveCross(3)
    assert invert_move(AddRow(1, 2), None) == SubRow(1, 2)
    assert invert_move(Permute((2, 3, 1)), None) == Permute((3, 1, 2))


def random_legal_move(rng, m, max_size=6, max_entry=20):
    n = len(m)
    for _ in range(200):
        kind = rng.randrange(9)
        i, j = rng.randint(1, n), rng.randint(1, n)
        mv = [AddCross(rng.randint(1, n + 1)), RemoveCross(i), AddRow(i, j), SubRow(i, j),
              AddCol(i, j), SubCol(i, j), Permute(tuple(rng.sample(range(1, n + 1), n))),
              DeleteDead(i), InsertDead(rng.randint(1, n + 1), rng.choice(("row", "col")),
                                        tuple(rng.randint(0, 2) for _ in range(n)))][kind]
        if kind in (0, 8) and n + 1 > max_size:
            continue
        try:
            out = step(m, mv)
        except IllegalMove:
            continue
        if max(abs(x) for row in out.result for x in row) > max_entry:
            continue
        return out
    return None


def start_matrix(rng):
    n = rng.randint(1, 4)
    if n == 1:
        return ((rng.randint(1, 3),),)
    return random_strong_relator(rng, n)


def test_round_trips(rng):
    done = 0
    while done < 1000:
        m = start_matrix(rng)
        out = random_legal_move(rng, m)
        if out is None:
            continue
        back = step(out.result, invert_move(out.applied, m)).result
        assert back == m, (m, out.applied)
        done += 1


def test_determinant_and_group_invariance(rng):
    for _ in range(200):
        m = start_matrix(rng)
        start_det = signed_det(m)
        start_group = group_invariants_of(m)
        for _ in range(rng.randint(1, 10)):
            out = random_legal_move(rng, m)
            if out is None:
                break
            m = out.result
            assert is_udaf_relator(m)
            assert (-1) ** len(m) * sympy_det(m) == start_det
            assert group_invariants_of(m) == start_group


def test_invert_script(rng):
    for _ in range(50):
        m0 = m = start_matrix(rng)
        moves = []
        for _ in range(6):
            out = random_legal_move(rng, m)
            if out is None:
                break
            moves.append(out.applied)
            m = out.result
        for mv in invert_script(m0, moves):
            m = step(m, mv).result
        assert m == m0


def direct_row_add(m, target, source):
    rows = [list(r) for r in m]
    rows[target - 1] = [a + b for a, b in zip(rows[target - 1], rows[source - 1])]
    return tuple(map(tuple, rows))


def replay(m, moves):
    for mv in moves:
        m = step(m, mv).result
    return m


def test_three_cycle_macros():
    moves = row_macro(THREE_CYCLE, 1, 3)
    assert [type(mv) for mv in moves] == [AddRow, AddRow, SubRow, SubRow]
    assert replay(THREE_CYCLE, moves) == direct_row_add(THREE_CYCLE, 1, 3)
    assert replay(THREE_CYCLE, moves)[0] == (2, 1, 1)
    # One edge 3 -> 1 suffices for the other direction.
    assert row_macro(THREE_CYCLE, 3, 1) == [AddRow(3, 1)]
    cols = col_macro(THREE_CYCLE, 3, 1)
    assert all(isinstance(mv, (AddCol, SubCol)) for mv in cols)
    expected = transpose(direct_row_add(transpose(THREE_CYCLE), 3, 1))
    assert replay(THREE_CYCLE, cols) == expected
    assert [row[2] for row in expected] == [1, 1, 2]


def test_macro_input_checks():
    with pytest.raises(ValueError):
        row_macro(GOLDEN, 1, 2)
    path = shortest_path(THREE_CYCLE, 1, 3)
    with pytest.raises(ValueError):
        expand_row_macro(THREE_CYCLE, 3, 1, path)


def test_macro_fidelity(rng):
    for _ in range(120):
        n = rng.randint(2, 5)
        m = random_strong_relator(rng, n)
        m = add(m, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))
        t, s = rng.sample(range(1, n + 1), 2)
        assert replay(m, row_macro(m, t, s)) == direct_row_add(m, t, s)
        cols = col_macro(m, t, s)
        assert replay(m, cols) == transpose(direct_row_add(transpose(m), t, s))
