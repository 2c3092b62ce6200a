import pytest

import nonrn

A0 = {
    "n": 2,
    "balls": [{"c": "0/1", "r": "1/8"}, {"c": "1/2", "r": "1/8"}],
    "points": ["0/1", "1/2"],
}


def test_from_points_gives_two_ball_element():
    assert nonrn.from_points(["0/1", "1/2"]) == A0
    assert nonrn.validate(A0)["ok"]


def test_eval_f_and_addition():
    assert nonrn.eval_f(A0, "7/16") == "15/16"
    assert nonrn.eval_f(A0, "1/4") == "0/1"
    assert nonrn.add("3/4", "1/2") == "1/4"


def test_pierce():
    assert nonrn.pierce([]) == {"size": 0, "witness": []}
    assert nonrn.pierce([A0]) == {"size": 1, "witness": ["1/8"]}
    prefix = nonrn.enumerate_index(30)
    assert len(prefix) == 30
    with pytest.raises(nonrn.SizeLimitExceeded):
        nonrn.pierce(prefix, size_limit=5)
    assert nonrn.pierce(prefix, size_limit=5, heuristic=True)["certificate"] == "heuristic"


def test_solve_system():
    sat = {"B": [[2]], "r": ["1/3"], "balls": [{"c": "1/6", "r": "1/10"}]}
    assert nonrn.solve_system(sat) == ["1/6"]
    unsat = {"B": [[2]], "r": ["1/3"], "balls": [{"c": "0/1", "r": "1/10"}]}
    assert nonrn.solve_system(unsat) is None


def test_errors():
    with pytest.raises(nonrn.MalformedInput):
        nonrn.from_points(["1/x"])
    with pytest.raises(nonrn.DegenerateInput):
        nonrn.from_points(["1/3", "1/3"])


def test_refute_and_cli():
    rep = nonrn.refute("identity", ["0/1", "1/5"], 100, checkpoints=[50, 100], size_limit=10000)
    assert rep["g"] == "identity"
    assert [c["pierce"] for c in rep["samples"][0]["checkpoints"]] == [0, 0]
    pierces = [c["pierce"] for c in rep["samples"][1]["checkpoints"]]
    assert pierces == sorted(pierces)
    code, out, _ = nonrn.run_command("from-points", "0/1,1/2")
    assert code == 0
    assert out.startswith('{"n":2')
