import pytest

import otfsm

WINNER = ["O:0", "N:a", "C:l", "O:q", "N:a", "O:l", "N:a", "O:m", "N:u"]


@pytest.fixture(scope="module")
def gen():
    return otfsm.gen_syllabification(
        ["a", "l", "q", "a", "l", "a", "m", "u"], ["a", "u"]
    )


def test_candidate_set(gen):
    strings, truncated = gen.enumerate(max_len=16)
    assert not truncated
    assert len(strings) == 64
    assert gen.degree == 0
    assert gen.accepts(["N:a", "C:l", "O:q", "N:a", "C:l", "N:a", "C:m", "N:u"])


def test_derivation(gen):
    result = otfsm.derive(
        gen, [otfsm.constraint_ons(gen), otfsm.constraint_fill(gen)]
    )
    assert result["harmony"] == [0, -1]
    strings, truncated = result["machine"].enumerate(max_len=16)
    assert not truncated
    assert strings == [WINNER]
    assert result["pruned_states"] == 10
    assert result["pruned_arcs"] == 9

    match, detail = otfsm.oracle_check(
        gen, [otfsm.constraint_ons(gen), otfsm.constraint_fill(gen)]
    )
    assert match, detail


def test_expressions_and_marks(gen):
    fill = otfsm.compile_expr("(EMPTY@-1|FILLED@0)*", gen)
    assert fill.evaluate(WINNER) == [-1]

    assert otfsm.compare_mark_lists(["0", "*"], ["*"], ["*", "*"]) == 1
    assert otfsm.compare_mark_lists(["0", "1", "2"], ["1", "1"], ["2"]) == 1
    assert otfsm.compare_mark_lists(["0", "*"], ["*"], ["*"]) == 0


def test_round_trip(gen, tmp_path):
    path = str(tmp_path / "gen.fsm")
    gen.save(path)
    back = otfsm.load_machine(path)
    assert back.num_states == gen.num_states
    assert back.num_arcs == gen.num_arcs
    assert back.text() == gen.text()
    assert "digraph" in gen.dot()


def test_errors(gen):
    with pytest.raises(otfsm.EngineError):
        gen.evaluate(["N:a"])  # not a candidate
    with pytest.raises(otfsm.EngineError):
        otfsm.compile_expr("p@5", gen)
    with pytest.raises(otfsm.EngineError):
        otfsm.load_machine("no-such-file.fsm")
