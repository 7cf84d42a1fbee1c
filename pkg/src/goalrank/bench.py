"""Scaling harness: k-fold model/catalogue cloning and wall-clock timing
of enumeration, full ranking, first solution, and optimum identification.

Cloning joins k disjoint copies (ids suffixed _1.._k) under a fresh AND
root, so solution counts multiply and per-copy scores stay independent.
Times are means over `runs` repetitions on monotonic clocks, with one
untimed warm-up pass (which also absorbs JIT compilation).
"""

from __future__ import annotations

from dataclasses import dataclass
from time import perf_counter

import numpy as np

from . import kernels
from .model import (
    AND,
    HARDGOAL,
    OR,
    Action,
    ContextSchema,
    ContextualPreference,
    ContributionLink,
    Decomposition,
    GoalModel,
    GoalNode,
    PreferenceCatalogue,
    Situation,
)
from .context import relevant
from .scoring import PROPORTIONAL, DOMINANCE, effective_scores, link_scale, rank
from .semantics import Solution, enumerate_solutions, iter_solutions


@dataclass(frozen=True)
class BenchRow:
    k: int
    n_hardgoals: int  # hardgoals including tasks
    n_softgoals: int
    n_contrib_links: int
    n_var_points: int
    n_prefs: int  # preference actions after multi-action expansion
    n_solutions: int
    t_enumerate: float  # all solutions, no scoring
    t_preference_reasoning: float  # t_rank_all - t_enumerate
    t_rank_all: float  # full scored ranking
    t_first_solution: float  # first streamed solution
    t_optimal: float  # single best-so-far pass, no report built


@dataclass(frozen=True)
class BenchReport:
    backend: str
    mode: str
    runs: int
    rows: tuple[BenchRow, ...]


def clone_model(model: GoalModel, catalogue: PreferenceCatalogue, k: int,
                ) -> tuple[GoalModel, PreferenceCatalogue]:
    """k disjoint suffixed copies joined under one fresh AND root."""
    if k < 1:
        raise ValueError("k must be >= 1")
    nodes: dict[str, GoalNode] = {}
    decompositions: dict[str, Decomposition] = {}
    links: list[ContributionLink] = []
    prefs: list[ContextualPreference] = []
    root_children: list[str] = []
    for i in range(1, k + 1):
        sfx = f"_{i}"
        for node_id, node in model.nodes.items():
            nodes[node_id + sfx] = GoalNode(node_id + sfx, node.kind, node.label)
        for parent, dec in model.decompositions.items():
            decompositions[parent + sfx] = Decomposition(
                dec.operator, tuple(c + sfx for c in dec.children))
        links.extend(
            ContributionLink(l.source + sfx, l.target + sfx, l.polarity)
            for l in model.contributions)
        root_children.append(model.root + sfx)
        prefs.extend(
            ContextualPreference(
                p.id + sfx,
                tuple(Action(a.verb, a.target + sfx) for a in p.actions),
                p.con, p.score)
            for p in catalogue.preferences)
    root = "root"
    while root in nodes:
        root += "_"
    nodes[root] = GoalNode(root, HARDGOAL, "joined copies")
    decompositions[root] = Decomposition(AND, tuple(root_children))
    return (
        GoalModel(nodes=nodes, root=root, decompositions=decompositions,
                  contributions=tuple(links)),
        PreferenceCatalogue(tuple(prefs)),
    )


def find_optimal(model: GoalModel, catalogue: PreferenceCatalogue,
                 schema: ContextSchema, situation: Situation,
                 mode: str = PROPORTIONAL, backend: str | None = None,
                 parallel: bool = False) -> Solution:
    """One optimal solution with the least work: score and argmax, no
    per-solution breakdowns, no sorted report."""
    solutions = enumerate_solutions(model)
    applicable = relevant(catalogue, situation, schema, model)
    effective = effective_scores((p for p, _ in applicable), model)
    scale = link_scale(model)
    plan = kernels.build_plan(model, solutions, effective, scale, mode == DOMINANCE)
    contrib, hps, _ = kernels.score_solutions(plan, backend, parallel)
    psd = contrib.sum(axis=1) + hps * scale
    return solutions[int(np.argmax(psd))]


def run_bench(model: GoalModel, catalogue: PreferenceCatalogue,
              schema: ContextSchema, situation: Situation, k_max: int,
              runs: int = 20, mode: str = PROPORTIONAL,
              backend: str | None = None, parallel: bool = False) -> BenchReport:
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    rows: list[BenchRow] = []
    for k in range(1, k_max + 1):
        cmodel, ccat = clone_model(model, catalogue, k)
        solutions = enumerate_solutions(cmodel)
        rank(cmodel, ccat, schema, situation, mode, backend=backend, parallel=parallel)  # warm-up

        t_enum = t_rank = t_first = t_opt = 0.0
        for _ in range(runs):
            t0 = perf_counter()
            enumerate_solutions(cmodel)
            t_enum += perf_counter() - t0

            t0 = perf_counter()
            rank(cmodel, ccat, schema, situation, mode, backend=backend, parallel=parallel)
            t_rank += perf_counter() - t0

            t0 = perf_counter()
            next(iter_solutions(cmodel))
            t_first += perf_counter() - t0

            t0 = perf_counter()
            find_optimal(cmodel, ccat, schema, situation, mode, backend, parallel)
            t_opt += perf_counter() - t0

        t_enum /= runs
        t_rank = max(t_rank / runs, t_enum)  # ranking subsumes enumeration
        rows.append(BenchRow(
            k=k,
            n_hardgoals=sum(1 for n in cmodel.nodes.values() if n.kind != "softgoal"),
            n_softgoals=len(cmodel.softgoal_ids()),
            n_contrib_links=len(cmodel.contributions),
            n_var_points=sum(
                1 for dec in cmodel.decompositions.values()
                if dec.operator == OR and len(dec.children) >= 2),
            n_prefs=sum(len(p.actions) for p in ccat.preferences),
            n_solutions=len(solutions),
            t_enumerate=round(t_enum, 3),
            t_preference_reasoning=round(t_rank - t_enum, 3),
            t_rank_all=round(t_rank, 3),
            t_first_solution=round(t_first / runs, 3),
            t_optimal=round(t_opt / runs, 3),
        ))
    return BenchReport(
        backend=kernels.resolve_backend(backend) + ("-parallel" if parallel else ""),
        mode=mode, runs=runs, rows=tuple(rows))


_COLUMNS = [
    ("k", "k"),
    ("nHardgoals", "n_hardgoals"),
    ("nSoftgoals", "n_softgoals"),
    ("nContribLinks", "n_contrib_links"),
    ("nVarPoints", "n_var_points"),
    ("nPrefs", "n_prefs"),
    ("nSolutions", "n_solutions"),
    ("tEnumerate", "t_enumerate"),
    ("tPreferenceReasoning", "t_preference_reasoning"),
    ("tRankAll", "t_rank_all"),
    ("tFirstSolution", "t_first_solution"),
    ("tOptimal", "t_optimal"),
]


def _cell(row: BenchRow, attr: str) -> str:
    value = getattr(row, attr)
    return f"{value:.3f}" if isinstance(value, float) else str(value)


def format_table(report: BenchReport) -> str:
    """Aligned text table, one row per clone factor."""
    header = [name for name, _ in _COLUMNS]
    body = [[_cell(row, attr) for _, attr in _COLUMNS] for row in report.rows]
    widths = [max(len(h), *(len(r[i]) for r in body)) if body else len(h)
              for i, h in enumerate(header)]
    lines = [f"backend: {report.backend}  mode: {report.mode}  runs: {report.runs}"]
    lines.append("  ".join(h.rjust(w) for h, w in zip(header, widths)))
    lines.extend("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in body)
    return "\n".join(lines) + "\n"


def serialize_bench(report: BenchReport) -> str:
    """Structured text mirroring the ranking document style (sorted keys)."""
    out = [f"backend: {report.backend}", f"mode: {report.mode}", f"runs: {report.runs}"]
    if not report.rows:
        out.append("sizes: []")
    else:
        out.append("sizes:")
        for row in report.rows:
            cells = {name: _cell(row, attr) for name, attr in _COLUMNS}
            keys = sorted(cells)
            out.append(f"- {keys[0]}: {cells[keys[0]]}")
            out.extend(f"  {key}: {cells[key]}" for key in keys[1:])
    return "\n".join(out) + "\n"
