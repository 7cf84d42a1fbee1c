"""Preference scores for candidate solutions and the ranking pipeline.

Softgoal contributions, sps, hps, and psd are exact rationals throughout;
nothing is rounded before serialization. The ranking pipeline scores all
solutions through an integer-scaled kernel (every fired-link count divides
the common scale, so scaled values stay exact) and falls back to direct
Fraction arithmetic for degenerate models whose scale would overflow.

Two scoring modes exist. "proportional" weighs a softgoal's score by
(positive - negative) / total fired links. "dominance" awards the full
score only when fired links all share one polarity, and zero otherwise.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Iterable

from . import kernels
from .diagnostics import Diagnostic, DiagnosticError, errors
from .model import (
    MAKE,
    SOFTGOAL,
    ContextSchema,
    EffectiveScores,
    GoalModel,
    PreferenceCatalogue,
    RankingReport,
    ScoredSolution,
    Situation,
    bind,
    validate_model,
)
from .context import relevant
from .semantics import DEFAULT_CAP, Solution, enumerate_solutions, satisfied_goals

PROPORTIONAL = "proportional"
DOMINANCE = "dominance"
MODES = (PROPORTIONAL, DOMINANCE)

# beyond this the scaled-integer path could overflow int64; use Fractions
_SCALE_LIMIT = 1 << 40


def effective_scores(preferences: Iterable, model: GoalModel) -> EffectiveScores:
    """Max score per action target over the given (relevant) preferences.

    satisfy(softgoal) feeds the softgoal map; everything else - performed
    tasks and satisfied hardgoals, including targets the model does not
    declare - feeds the hardgoal map. Undeclared targets are never
    satisfied by any solution, so they stay visible but inert.
    """
    softgoal: dict[str, int] = {}
    hardgoal: dict[str, int] = {}
    for pref in preferences:
        for action in pref.actions:
            bucket = softgoal if model.kind(action.target) == SOFTGOAL else hardgoal
            if pref.score > bucket.get(action.target, -1):
                bucket[action.target] = pref.score
    return EffectiveScores(softgoal=softgoal, hardgoal=hardgoal)


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown scoring mode {mode!r} (use {PROPORTIONAL} or {DOMINANCE})")
    return mode


def _fired_counts(model: GoalModel, satisfied: set[str], softgoal: str) -> tuple[int, int]:
    pos = neg = 0
    for link in model.contributions:
        if link.target == softgoal and link.source in satisfied:
            if link.polarity == MAKE:
                pos += 1
            else:
                neg += 1
    return pos, neg


def _contrib_value(pos: int, neg: int, score: int, mode: str) -> Fraction:
    total = pos + neg
    if total == 0:
        return Fraction(0)
    if mode == DOMINANCE:
        if neg == 0:
            return Fraction(score)
        if pos == 0:
            return Fraction(-score)
        return Fraction(0)
    return Fraction(pos - neg, total) * score


def contrib(model: GoalModel, sol: Iterable[str], softgoal: str, score: int,
            mode: str = PROPORTIONAL) -> Fraction:
    """Contribution of one solution to one softgoal, weighted by its score."""
    satisfied = satisfied_goals(model, sol)
    return _contrib_value(*_fired_counts(model, satisfied, softgoal), score, _check_mode(mode))


def sps(model: GoalModel, sol: Iterable[str], effective: EffectiveScores,
        mode: str = PROPORTIONAL) -> Fraction:
    """Softgoal preference score: sum of contributions to scored softgoals."""
    _check_mode(mode)
    satisfied = satisfied_goals(model, sol)
    total = Fraction(0)
    for softgoal, score in effective.softgoal.items():
        total += _contrib_value(*_fired_counts(model, satisfied, softgoal), score, mode)
    return total


def hps(model: GoalModel, sol: Iterable[str], effective: EffectiveScores) -> int:
    """Hardgoal preference score: sum over satisfied scored hardgoals."""
    satisfied = satisfied_goals(model, sol)
    return sum(score for hg, score in effective.hardgoal.items() if hg in satisfied)


def link_scale(model: GoalModel) -> int:
    """Common multiplier turning every contribution into an integer: the
    lcm of 1..m where m is the largest link count on any softgoal."""
    counts = Counter(link.target for link in model.contributions)
    heaviest = max(counts.values(), default=1)
    return math.lcm(*range(1, heaviest + 1))


def score_solution(model: GoalModel, sol: Solution, effective: EffectiveScores,
                   mode: str = PROPORTIONAL) -> ScoredSolution:
    """Reference scorer: direct rational arithmetic, no shared state."""
    _check_mode(mode)
    satisfied = satisfied_goals(model, sol)
    per_softgoal = {
        sg: _contrib_value(*_fired_counts(model, satisfied, sg), score, mode)
        for sg, score in effective.softgoal.items()
    }
    per_hardgoal = {
        hg: score for hg, score in effective.hardgoal.items() if hg in satisfied
    }
    sps_value = sum(per_softgoal.values(), Fraction(0))
    hps_value = sum(per_hardgoal.values())
    return ScoredSolution(
        tasks=tuple(sol),
        per_softgoal=per_softgoal,
        per_hardgoal=per_hardgoal,
        sps=sps_value,
        hps=hps_value,
        psd=sps_value + hps_value,
    )


def _rank_order(keyed: list[tuple[object, Solution]]) -> list[int]:
    # psd descending, then fewer tasks, then lexicographic task tuples
    return sorted(range(len(keyed)),
                  key=lambda i: (keyed[i][0], len(keyed[i][1]), keyed[i][1]))


def _score_all_fast(model: GoalModel, solutions: list[Solution],
                    effective: EffectiveScores, mode: str, scale: int,
                    backend: str | None, parallel: bool) -> list[ScoredSolution]:
    plan = kernels.build_plan(model, solutions, effective, scale, mode == DOMINANCE)
    contrib_mat, hps_arr, hg_sat = kernels.score_solutions(plan, backend, parallel)
    sps_arr = contrib_mat.sum(axis=1)
    psd_arr = sps_arr + hps_arr * scale
    order = _rank_order([(-int(psd_arr[i]), solutions[i]) for i in range(len(solutions))])

    ranked = []
    for i in order:
        per_softgoal = {
            sg: Fraction(int(contrib_mat[i, j]), scale)
            for j, sg in enumerate(plan.sg_ids)
        }
        per_hardgoal = {
            hg: effective.hardgoal[hg]
            for h, hg in enumerate(plan.hg_ids) if hg_sat[i, h]
        }
        sps_value = Fraction(int(sps_arr[i]), scale)
        hps_value = int(hps_arr[i])
        ranked.append(ScoredSolution(
            tasks=solutions[i],
            per_softgoal=per_softgoal,
            per_hardgoal=per_hardgoal,
            sps=sps_value,
            hps=hps_value,
            psd=sps_value + hps_value,
        ))
    return ranked


def _score_all_exact(model: GoalModel, solutions: list[Solution],
                     effective: EffectiveScores, mode: str) -> list[ScoredSolution]:
    scored = [score_solution(model, sol, effective, mode) for sol in solutions]
    order = _rank_order([(-scored[i].psd, solutions[i]) for i in range(len(solutions))])
    return [scored[i] for i in order]


def rank(model: GoalModel, catalogue: PreferenceCatalogue, schema: ContextSchema,
         situation: Situation, mode: str = PROPORTIONAL, cap: int = DEFAULT_CAP,
         backend: str | None = None, parallel: bool = False) -> RankingReport:
    """Full pipeline: validate, bind, enumerate, filter, score, sort."""
    _check_mode(mode)
    diags = validate_model(model)
    if errors(diags):
        raise DiagnosticError(diags)
    bound = bind(catalogue, model, schema)
    if not bound.ok:
        raise DiagnosticError(bound.diagnostics)

    solutions = enumerate_solutions(model, cap)
    if not solutions:
        raise DiagnosticError([Diagnostic("EmptyModel", "model has no candidate solutions")])

    applicable = relevant(catalogue, situation, schema, model)
    effective = effective_scores((p for p, _ in applicable), model)

    scale = link_scale(model)
    if scale <= _SCALE_LIMIT:
        ranked = _score_all_fast(model, solutions, effective, mode, scale, backend, parallel)
    else:
        ranked = _score_all_exact(model, solutions, effective, mode)

    return RankingReport(
        situation={name: value for (name, _), value in zip(schema.elements, situation.values)},
        mode=mode,
        relevant=tuple(p.id for p, _ in applicable),
        solutions=tuple(ranked),
    )
