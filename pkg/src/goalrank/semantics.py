"""Propositional view of a goal model: task-formula expansion, candidate
solution enumeration, and satisfaction evaluation.

A candidate solution is a set of tasks obtained by keeping every child of an
AND decomposition and exactly one child of each OR decomposition. Contribution
links never constrain admissibility; they only matter for scoring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .model import AND, OR, TASK, GoalModel

Solution = tuple[str, ...]  # task ids, sorted

DEFAULT_CAP = 1_000_000
ORACLE_MAX_TASKS = 20


class SolutionCapExceeded(Exception):
    def __init__(self, cap: int):
        self.cap = cap
        super().__init__(f"more than {cap} candidate solutions; use iter_solutions")


class TooManyTasks(Exception):
    def __init__(self, count: int, limit: int = ORACLE_MAX_TASKS):
        self.count = count
        self.limit = limit
        super().__init__(f"{count} tasks exceeds the brute-force limit of {limit}")


@dataclass(frozen=True)
class TaskExpr:
    """AND/OR expression over task literals."""

    op: str  # "task" | AND | OR
    task: str | None = None
    children: tuple["TaskExpr", ...] = ()

    def evaluate(self, chosen: set[str]) -> bool:
        if self.op == "task":
            return self.task in chosen
        if self.op == AND:
            return all(c.evaluate(chosen) for c in self.children)
        return any(c.evaluate(chosen) for c in self.children)

    def __str__(self) -> str:
        if self.op == "task":
            return self.task or "?"
        sep = " and " if self.op == AND else " or "
        return "(" + sep.join(str(c) for c in self.children) + ")"


@dataclass(frozen=True)
class CompiledModel:
    tg: TaskExpr
    qg: tuple[tuple[str, str, str], ...]  # (source, polarity, softgoal) per link
    variability_points: tuple[str, ...]  # OR nodes offering >= 2 alternatives


def compile_model(model: GoalModel) -> CompiledModel:
    def expand(node_id: str) -> TaskExpr:
        if model.nodes[node_id].kind == TASK:
            return TaskExpr("task", task=node_id)
        dec = model.decompositions[node_id]
        return TaskExpr(dec.operator, children=tuple(expand(c) for c in dec.children))

    vps = tuple(sorted(
        parent for parent, dec in model.decompositions.items()
        if dec.operator == OR and len(dec.children) >= 2))
    qg = tuple((l.source, l.polarity, l.target) for l in model.contributions)
    return CompiledModel(tg=expand(model.root), qg=qg, variability_points=vps)


def iter_solutions(model: GoalModel) -> Iterator[frozenset[str]]:
    """Stream task sets in structural order; may repeat sets on exotic shapes."""

    def rec(node_id: str) -> Iterator[frozenset[str]]:
        if model.nodes[node_id].kind == TASK:
            yield frozenset((node_id,))
            return
        dec = model.decompositions[node_id]
        if dec.operator == OR:
            for child in dec.children:
                yield from rec(child)
            return

        def product(i: int, acc: frozenset[str]) -> Iterator[frozenset[str]]:
            if i == len(dec.children):
                yield acc
                return
            for part in rec(dec.children[i]):
                yield from product(i + 1, acc | part)

        yield from product(0, frozenset())

    yield from rec(model.root)


def enumerate_solutions(model: GoalModel, cap: int = DEFAULT_CAP) -> list[Solution]:
    """All candidate solutions, duplicate-free, lexicographic on task tuples."""

    def rec(node_id: str) -> list[frozenset[str]]:
        if model.nodes[node_id].kind == TASK:
            return [frozenset((node_id,))]
        dec = model.decompositions[node_id]
        if dec.operator == OR:
            out: list[frozenset[str]] = []
            for child in dec.children:
                out.extend(rec(child))
                if len(out) > cap:
                    raise SolutionCapExceeded(cap)
            return out
        combos = [frozenset()]
        for child in dec.children:
            parts = rec(child)
            combos = [acc | part for acc in combos for part in parts]
            if len(combos) > cap:
                raise SolutionCapExceeded(cap)
        return combos

    unique = {tuple(sorted(s)) for s in rec(model.root)}
    if len(unique) > cap:
        raise SolutionCapExceeded(cap)
    return sorted(unique)


def is_admissible(model: GoalModel, tasks: Iterable[str]) -> bool:
    """True iff the task set satisfies the AND/OR structure of the root."""
    chosen = set(tasks)

    def sat(node_id: str) -> bool:
        if model.nodes[node_id].kind == TASK:
            return node_id in chosen
        dec = model.decompositions[node_id]
        results = (sat(c) for c in dec.children)
        return all(results) if dec.operator == AND else any(results)

    return sat(model.root)


def satisfied_goals(model: GoalModel, tasks: Iterable[str]) -> set[str]:
    """All hardgoals and tasks satisfied by the task set (bottom-up)."""
    chosen = set(tasks)
    satisfied: set[str] = set()

    def walk(node_id: str) -> bool:
        if model.nodes[node_id].kind == TASK:
            ok = node_id in chosen
        else:
            dec = model.decompositions[node_id]
            flags = [walk(c) for c in dec.children]  # no short-circuit: visit all
            ok = all(flags) if dec.operator == AND else any(flags)
        if ok:
            satisfied.add(node_id)
        return ok

    walk(model.root)
    return satisfied


def oracle_enumerate(model: GoalModel) -> list[Solution]:
    """Brute force: all task subsets that satisfy the root formula and are
    minimal under single-task removal. The formula is monotone, so this
    equals subset-minimality, which equals the choice-structure semantics
    on tree models. Independent of enumerate_solutions by construction.
    """
    tasks = model.task_ids()
    n = len(tasks)
    if n > ORACLE_MAX_TASKS:
        raise TooManyTasks(n)
    count = 1 << n
    index = np.arange(count, dtype=np.uint32)

    def evaluate(node_id: str) -> np.ndarray:
        node = model.nodes[node_id]
        if node.kind == TASK:
            bit = tasks.index(node_id)
            return ((index >> bit) & 1).astype(bool)
        dec = model.decompositions[node_id]
        acc: np.ndarray | None = None
        for child in dec.children:
            v = evaluate(child)
            if acc is None:
                acc = v
            elif dec.operator == AND:
                acc &= v
            else:
                acc |= v
        assert acc is not None
        return acc

    sat = evaluate(model.root)
    keep = sat.copy()
    for bit in range(n):
        mask = np.uint32(1 << bit)
        present = (index & mask) != 0
        keep &= ~(present & sat[index ^ mask])
    return sorted(
        tuple(sorted(tasks[b] for b in range(n) if (m >> b) & 1))
        for m in np.nonzero(keep)[0])
