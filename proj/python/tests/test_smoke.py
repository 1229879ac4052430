from fractions import Fraction

import pytest

import ctplab


def test_backtrack_hand_trace():
    inst = ctplab.gen_gstar(2, [1, 1, 1], blocked=[0, 1])
    trace = ctplab.run(inst, "backtrack")
    assert trace["alg"] == "5/1"
    assert ctplab.fraction(trace["ratio"]) == 5


def test_e_backtrack_on_reference_member():
    family = ctplab.gen_family("T1", 2, epsilon=2)
    reference = family["members"][family["reference"]]
    assert ctplab.run(reference, "e-backtrack", epsilon=2)["ratio"] == "2/1"


def test_seeded_runs_repeat():
    inst = ctplab.gen_gstar(2, [1, 2, 3], blocked=[0, 1], predicted=[0])
    first = ctplab.run(inst, "e-rand-backtrack", epsilon=1, seed=9)
    assert first == ctplab.run(inst, "e-rand-backtrack", epsilon=1, seed=9)


def test_expectation_mass_is_one():
    inst = ctplab.gen_gstar(2, [1, 1, 1], blocked=[0, 1])
    result = ctplab.expect(inst, "rand-backtrack")
    assert sum(Fraction(b["probability"]) for b in result["branches"]) == 1
    assert Fraction(result["ratio"]) <= 3


def test_game_values():
    assert ctplab.minimax(ctplab.gen_family("T9", 1))["value"] == "3/1"
    assert ctplab.minimax(ctplab.gen_family("T12", 3), randomized=True)["value"] == "4/1"
    t3 = ctplab.minimax(ctplab.gen_family("T3", 2, epsilon=1), randomized=True, constrained=True)
    assert t3["value"] == "4/1"
    assert t3["certified"]


def test_verify_and_errors():
    report = ctplab.verify("Thm9")
    assert report["pass"]
    assert "Thm12" in ctplab.verify_tags()
    assert "backtrack" in ctplab.strategy_names()
    with pytest.raises(ValueError):
        ctplab.gen_family("T9", 2)
    with pytest.raises(ValueError):
        ctplab.verify("Thm99")
