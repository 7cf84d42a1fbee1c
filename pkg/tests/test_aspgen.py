"""Logic-program export and the closed evaluation loop: the weak-constraint
objective must equal the scaled negated preference satisfaction degree for
every candidate solution."""

import pytest

from goalrank.aspgen import MAX_LINKS_PER_SOFTGOAL, export_asp, parse_program, solution_cost
from goalrank.model import (
    Action,
    CombinedAssertion,
    ContextualPreference,
    ContributionLink,
    Decomposition,
    GoalModel,
    GoalNode,
    PreferenceCatalogue,
)
from goalrank.scoring import DOMINANCE, PROPORTIONAL, link_scale, rank
from goalrank.semantics import enumerate_solutions


@pytest.mark.parametrize("mode", [PROPORTIONAL, DOMINANCE])
def test_closed_loop_all_fixture_combos(model_full, model_fragment, catalogue,
                                        catalogue_privacy, schema, situations, mode):
    for model in (model_full, model_fragment):
        scale = link_scale(model)
        for cat in (catalogue, catalogue_privacy):
            for name, situation in situations.items():
                text = export_asp(model, cat, schema, situation, mode=mode)
                program = parse_program(text)
                report = rank(model, cat, schema, situation, mode=mode)
                by_tasks = {s.tasks: s for s in report.solutions}
                best_cost = None
                for sol in enumerate_solutions(model):
                    cost = solution_cost(program, sol)
                    assert cost == -scale * by_tasks[sol].psd, (name, mode, sol)
                    if best_cost is None or cost < best_cost:
                        best_cost = cost
                top = report.solutions[0]
                assert solution_cost(program, top.tasks) == best_cost


def test_program_shape(model_fragment, catalogue, schema, situations):
    text = export_asp(model_fragment, catalogue, schema, situations["dementia_home"])
    assert "sel(g2)." in text
    assert "sel(t6) v sel(t5) :- sel(g5)." in text
    assert "sat(t9) :- sel(t9)." in text
    assert "make(t7, sg1)." in text
    assert "situation(weather, good)." in text
    assert "softgoal_score(sg1, 6)." in text
    assert ":~ sat(t5). [-18@1, t5]" in text
    # zero-weight firing patterns are omitted, every line parses back
    program = parse_program(text)
    assert all(w.weight != 0 for w in program.weak)


def test_parse_program_rejects_garbage():
    with pytest.raises(ValueError):
        parse_program("sel(g2)\n")  # missing final dot
    with pytest.raises(ValueError):
        parse_program("foo :- bar baz.\n")


def test_export_asp_guards_subset_blowup(schema, situations):
    nodes = {"g1": GoalNode("g1", "hardgoal"), "sg1": GoalNode("sg1", "softgoal")}
    children = []
    links = []
    for i in range(MAX_LINKS_PER_SOFTGOAL + 1):
        tid = f"t{i}"
        nodes[tid] = GoalNode(tid, "task")
        children.append(tid)
        links.append(ContributionLink(tid, "sg1", "make"))
    model = GoalModel(nodes=nodes, root="g1",
                      decompositions={"g1": Decomposition("AND", tuple(children))},
                      contributions=tuple(links))
    cat = PreferenceCatalogue((ContextualPreference(
        "p1", (Action("satisfy", "sg1"),), CombinedAssertion({}), 5),))
    with pytest.raises(ValueError):
        export_asp(model, cat, schema, situations["normal_home"])
