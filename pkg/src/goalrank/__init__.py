"""Contextual-preference ranking over AND/OR goal models.

Parse a goal model, a context schema, a preference catalogue, and a
situation; enumerate the candidate solutions induced by OR variability
points; score each against the contextually relevant preferences; and
rank by preference satisfaction degree. Includes an exporter to a
disjunctive logic program with weak constraints, a scaling benchmark,
a CLI, and an HTTP service for the what-if workbench.
"""

from .diagnostics import Diagnostic, DiagnosticError, SourceSpan
from .model import (
    Action,
    CombinedAssertion,
    ContextAssertion,
    ContextInstance,
    ContextSchema,
    ContextualPreference,
    ContributionLink,
    Decomposition,
    EffectiveScores,
    GoalModel,
    GoalNode,
    PreferenceCatalogue,
    RankingReport,
    ScoredSolution,
    Situation,
    bind,
    validate_model,
)
from .context import expand_assertion, implies, relevant
from .semantics import (
    SolutionCapExceeded,
    TooManyTasks,
    compile_model,
    enumerate_solutions,
    is_admissible,
    iter_solutions,
    oracle_enumerate,
    satisfied_goals,
)
from .scoring import (
    DOMINANCE,
    MODES,
    PROPORTIONAL,
    contrib,
    effective_scores,
    hps,
    link_scale,
    rank,
    score_solution,
    sps,
)
from .dsl import (
    format_rational,
    parse_catalogue,
    parse_context_schema,
    parse_goal_model,
    parse_situation,
    serialize_catalogue,
    serialize_context_schema,
    serialize_goal_model,
    serialize_ranking,
    serialize_situation,
)
from .aspgen import export_asp, parse_program, solution_cost
from .bench import BenchReport, BenchRow, clone_model, run_bench

__version__ = "0.1.0"

__all__ = [
    "Action",
    "BenchReport",
    "BenchRow",
    "CombinedAssertion",
    "ContextAssertion",
    "ContextInstance",
    "ContextSchema",
    "ContextualPreference",
    "ContributionLink",
    "Decomposition",
    "Diagnostic",
    "DiagnosticError",
    "DOMINANCE",
    "EffectiveScores",
    "GoalModel",
    "GoalNode",
    "MODES",
    "PreferenceCatalogue",
    "PROPORTIONAL",
    "RankingReport",
    "ScoredSolution",
    "Situation",
    "SolutionCapExceeded",
    "SourceSpan",
    "TooManyTasks",
    "bind",
    "clone_model",
    "compile_model",
    "contrib",
    "effective_scores",
    "enumerate_solutions",
    "expand_assertion",
    "export_asp",
    "format_rational",
    "hps",
    "implies",
    "is_admissible",
    "iter_solutions",
    "link_scale",
    "oracle_enumerate",
    "parse_catalogue",
    "parse_context_schema",
    "parse_goal_model",
    "parse_program",
    "parse_situation",
    "rank",
    "relevant",
    "run_bench",
    "satisfied_goals",
    "score_solution",
    "serialize_catalogue",
    "serialize_context_schema",
    "serialize_goal_model",
    "serialize_ranking",
    "serialize_situation",
    "solution_cost",
    "sps",
    "validate_model",
    "__version__",
]
