"""Seeded random generators for goal models, catalogues, and situations.

Kept deterministic (stdlib Random with an explicit seed) so failing cases
reproduce from the seed alone.
"""

from __future__ import annotations

import random

from goalrank.model import (
    AND,
    HARDGOAL,
    OR,
    SOFTGOAL,
    TASK,
    Action,
    CombinedAssertion,
    ContextSchema,
    ContextualPreference,
    ContributionLink,
    Decomposition,
    GoalModel,
    GoalNode,
    PreferenceCatalogue,
    Situation,
)

TINY_SCHEMA = ContextSchema((
    ("mood", ("calm", "rushed")),
    ("place", ("home", "office", "outside")),
    ("load", ("low", "high")),
))


def random_tree_model(seed: int, max_tasks: int = 20,
                      with_softgoals: bool = False) -> GoalModel:
    """A well-formed AND/OR tree with 1..max_tasks task leaves.

    Every hardgoal is decomposed, every leaf is a task, children are never
    shared, so the model passes validation by construction.
    """
    rng = random.Random(seed)
    nodes: dict[str, GoalNode] = {}
    decompositions: dict[str, Decomposition] = {}
    counter = {"g": 0, "t": 0}

    def new_task() -> str:
        counter["t"] += 1
        tid = f"t{counter['t']}"
        nodes[tid] = GoalNode(tid, TASK)
        return tid

    def grow(depth: int, quota: int) -> str:
        # quota = exact number of task leaves this subtree may still spend
        if quota <= 1 or depth >= 5 or (depth > 0 and rng.random() < 0.3):
            return new_task()
        counter["g"] += 1
        gid = f"g{counter['g']}"
        nodes[gid] = GoalNode(gid, HARDGOAL)
        width = 1 if rng.random() < 0.1 else min(rng.randint(2, 3), quota)
        cuts = sorted(rng.sample(range(1, quota), width - 1))
        parts = [b - a for a, b in zip([0, *cuts], [*cuts, quota])]
        children = tuple(grow(depth + 1, part) for part in parts)
        operator = OR if (len(children) >= 2 and rng.random() < 0.45) else AND
        decompositions[gid] = Decomposition(operator, children)
        return gid

    root = grow(0, rng.randint(1, max_tasks))
    if nodes[root].kind == TASK:
        nodes["g0"] = GoalNode("g0", HARDGOAL)
        decompositions["g0"] = Decomposition(AND, (root,))
        root = "g0"

    links: list[ContributionLink] = []
    if with_softgoals:
        hard = [n.id for n in nodes.values() if n.kind != SOFTGOAL and n.id != root]
        for s in range(rng.randint(1, 4)):
            sid = f"sg{s + 1}"
            nodes[sid] = GoalNode(sid, SOFTGOAL)
            seen = set()
            for source in rng.sample(hard, k=min(len(hard), rng.randint(1, 4))):
                if source in seen:
                    continue
                seen.add(source)
                polarity = rng.choice(("make", "break"))
                links.append(ContributionLink(source, sid, polarity))
    return GoalModel(nodes=nodes, root=root, decompositions=decompositions,
                     contributions=tuple(links))


def random_assertion(rng: random.Random, schema: ContextSchema) -> CombinedAssertion:
    assertions = {}
    for name, domain in schema.elements:
        if rng.random() < 0.5:
            count = rng.randint(1, len(domain))
            assertions[name] = tuple(sorted(rng.sample(list(domain), count)))
    return CombinedAssertion(assertions)


def random_catalogue(seed: int, model: GoalModel,
                     schema: ContextSchema = TINY_SCHEMA,
                     max_score: int = 10) -> PreferenceCatalogue:
    rng = random.Random(seed)
    softgoals = model.softgoal_ids()
    tasks = model.task_ids()
    goals = [g for g in model.hardgoal_ids() if g not in tasks]
    prefs = []
    for i in range(rng.randint(1, 8)):
        actions = []
        for _ in range(rng.randint(1, 2)):
            kind = rng.random()
            if softgoals and kind < 0.5:
                actions.append(Action("satisfy", rng.choice(softgoals)))
            elif goals and kind < 0.7:
                actions.append(Action("satisfy", rng.choice(goals)))
            else:
                actions.append(Action("perform", rng.choice(tasks)))
        prefs.append(ContextualPreference(
            f"p{i + 1}", tuple(actions), random_assertion(rng, schema),
            rng.randint(0, max_score)))
    return PreferenceCatalogue(tuple(prefs))


def random_situation(rng: random.Random,
                     schema: ContextSchema = TINY_SCHEMA) -> Situation:
    return Situation(tuple(rng.choice(domain) for _, domain in schema.elements))
