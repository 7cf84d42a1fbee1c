"""Solution enumeration, admissibility, and the brute-force oracle."""

import pytest

from goalrank.model import Decomposition, GoalModel, GoalNode
from goalrank.semantics import (
    SolutionCapExceeded,
    TooManyTasks,
    compile_model,
    enumerate_solutions,
    is_admissible,
    iter_solutions,
    oracle_enumerate,
    satisfied_goals,
)

from modelgen import random_tree_model


def test_fragment_solutions(model_fragment):
    sols = enumerate_solutions(model_fragment)
    assert sols == [
        ("t5", "t7", "t9"), ("t5", "t8", "t9"),
        ("t6", "t7", "t9"), ("t6", "t8", "t9")]


def test_full_solutions(model_full):
    sols = enumerate_solutions(model_full)
    assert len(sols) == 8
    assert ("t1", "t5", "t7", "t9") in sols
    assert ("t2", "t3", "t4", "t6", "t8", "t9") in sols
    assert sols == sorted(sols)  # deterministic lexicographic order


def test_variability_points(model_full, model_fragment):
    assert compile_model(model_full).variability_points == ("g1", "g5", "g6")
    assert compile_model(model_fragment).variability_points == ("g5", "g6")


def test_iter_matches_enumerate(model_full):
    streamed = {tuple(sorted(s)) for s in iter_solutions(model_full)}
    assert streamed == set(enumerate_solutions(model_full))


def test_admissibility(model_fragment, model_full):
    assert is_admissible(model_fragment, {"t5", "t7", "t9"})
    assert not is_admissible(model_fragment, {"t5", "t7"})  # t9 missing under AND
    assert not is_admissible(model_full, {"t2", "t3", "t4", "t6", "t7"})
    assert not is_admissible(model_fragment, set())
    # admissibility checks the structural formula only: supersets that keep
    # it true pass, even though enumeration never produces them
    assert is_admissible(model_fragment, {"t5", "t6", "t7", "t9"})


def test_enumerated_solutions_minimal(model_full):
    for sol in enumerate_solutions(model_full):
        assert is_admissible(model_full, sol)
        for dropped in sol:
            assert not is_admissible(model_full, set(sol) - {dropped})


def test_satisfied_goals(model_fragment):
    sat = satisfied_goals(model_fragment, {"t5", "t7", "t9"})
    assert {"t5", "t7", "t9", "g5", "g6", "g2"} <= sat
    assert "t6" not in sat and "t8" not in sat


def test_oracle_on_fixtures(model_full, model_fragment):
    assert oracle_enumerate(model_full) == enumerate_solutions(model_full)
    assert oracle_enumerate(model_fragment) == enumerate_solutions(model_fragment)


def test_oracle_task_limit():
    nodes = {"g1": GoalNode("g1", "hardgoal")}
    children = []
    for i in range(21):
        tid = f"t{i}"
        nodes[tid] = GoalNode(tid, "task")
        children.append(tid)
    m = GoalModel(nodes=nodes, root="g1",
                  decompositions={"g1": Decomposition("AND", tuple(children))},
                  contributions=())
    with pytest.raises(TooManyTasks):
        oracle_enumerate(m)


def test_solution_cap():
    # 2^20 OR pairs exceed a tiny cap immediately
    nodes = {"root": GoalNode("root", "hardgoal")}
    tops = []
    decomps = {}
    for i in range(20):
        gid, a, b = f"g{i}", f"a{i}", f"b{i}"
        nodes[gid] = GoalNode(gid, "hardgoal")
        nodes[a] = GoalNode(a, "task")
        nodes[b] = GoalNode(b, "task")
        decomps[gid] = Decomposition("OR", (a, b))
        tops.append(gid)
    decomps["root"] = Decomposition("AND", tuple(tops))
    m = GoalModel(nodes=nodes, root="root", decompositions=decomps, contributions=())
    with pytest.raises(SolutionCapExceeded):
        enumerate_solutions(m, cap=1000)
    assert len(enumerate_solutions(m, cap=2_000_000)) == 2 ** 20


def test_enumerate_matches_oracle_randomized():
    for seed in range(80):
        model = random_tree_model(seed)
        assert enumerate_solutions(model) == oracle_enumerate(model), seed


def test_clone_solution_count_is_product(model_full):
    from goalrank.bench import clone_model
    from goalrank.model import PreferenceCatalogue
    cloned, _ = clone_model(model_full, PreferenceCatalogue(()), 2)
    assert len(enumerate_solutions(cloned)) == 64
