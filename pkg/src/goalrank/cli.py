"""Command-line interface.

Subcommands: rank, explain, validate, export-asp, bench, serve. Exit
codes: 0 success, 1 validation/diagnostic failure, 2 usage or I/O error.
Human-readable tables go to stdout, diagnostics to stderr. The default
scoring mode can be set via the GOALRANK_MODE environment variable; the
scoring backend via GOALRANK_BACKEND (see kernels module).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import aspgen, bench, dsl, kernels
from .context import relevant
from .diagnostics import Diagnostic, DiagnosticError, SourceSpan, errors
from .model import (
    ContextSchema,
    GoalModel,
    PreferenceCatalogue,
    RankingReport,
    Situation,
    bind,
)
from .scoring import MODES, PROPORTIONAL, _fired_counts, effective_scores, rank, score_solution
from .semantics import is_admissible, satisfied_goals

MODE_ENV = "GOALRANK_MODE"


class _Usage(Exception):
    """Bad invocation or unreadable input: exit code 2."""


def _fmt_diag(diag: Diagnostic) -> str:
    head = f"{diag.severity} {diag.rule}: {diag.message}"
    if diag.span is not None:
        return f"{diag.span.file}:{diag.span.line}:{diag.span.column}: {head}"
    return head


def _emit_diags(diags) -> None:
    for diag in diags:
        print(_fmt_diag(diag), file=sys.stderr)


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise _Usage(f"cannot read {path}: {e.strerror or e}") from e


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as e:
        raise _Usage(f"cannot write {path}: {e.strerror or e}") from e


def _parse_or_fail(value, diags):
    # failures propagate undisplayed; main() prints each diagnostic once
    if value is None or errors(diags):
        raise DiagnosticError(list(diags))
    _emit_diags(diags)  # surviving warnings
    return value


def _load_model(path: str) -> GoalModel:
    return _parse_or_fail(*dsl.parse_goal_model(_read_text(path), path))


def _load_schema(path: str) -> ContextSchema:
    return _parse_or_fail(*dsl.parse_context_schema(_read_text(path), path))


def _load_catalogue(path: str) -> PreferenceCatalogue:
    return _parse_or_fail(*dsl.parse_catalogue(_read_text(path), path))


def _load_situation(path: str, schema: ContextSchema) -> Situation:
    return _parse_or_fail(*dsl.parse_situation(_read_text(path), schema, path))


def _load_all(args) -> tuple[GoalModel, ContextSchema, PreferenceCatalogue, Situation]:
    model = _load_model(args.model)
    schema = _load_schema(args.schema)
    catalogue = _load_catalogue(args.catalogue)
    situation = _load_situation(args.situation, schema)
    bound = bind(catalogue, model, schema)
    if not bound.ok:
        raise DiagnosticError(list(bound.diagnostics))
    _emit_diags(bound.diagnostics)  # e.g. targets absent from a fragment
    return model, schema, catalogue, situation


def _resolve_mode(args) -> str:
    mode = args.mode or os.environ.get(MODE_ENV) or PROPORTIONAL
    if mode not in MODES:
        raise _Usage(f"unknown scoring mode {mode!r} (use one of: {', '.join(MODES)})")
    return mode


def _rational(q) -> str:
    return dsl.format_rational(q)


def _truncate(report: RankingReport, top: int | None) -> RankingReport:
    if top is None or top >= len(report.solutions):
        return report
    if top < 1:
        raise _Usage("--top must be at least 1")
    return RankingReport(
        situation=report.situation, mode=report.mode,
        relevant=report.relevant, solutions=report.solutions[:top])


def _print_rank_table(report: RankingReport) -> None:
    rows = [
        (str(i + 1), ", ".join(sol.tasks), _rational(sol.sps),
         str(sol.hps), _rational(sol.psd))
        for i, sol in enumerate(report.solutions)
    ]
    header = ("rank", "tasks", "sps", "hps", "psd")
    widths = [max(len(header[c]), *(len(r[c]) for r in rows)) for c in range(5)]
    print("  ".join(h.ljust(w) if c == 1 else h.rjust(w)
                    for c, (h, w) in enumerate(zip(header, widths))))
    for row in rows:
        print("  ".join(cell.ljust(w) if c == 1 else cell.rjust(w)
                        for c, (cell, w) in enumerate(zip(row, widths))))


def _cmd_rank(args) -> int:
    mode = _resolve_mode(args)
    model, schema, catalogue, situation = _load_all(args)
    report = _truncate(rank(model, catalogue, schema, situation, mode=mode), args.top)
    _print_rank_table(report)
    if args.out:
        _write_text(args.out, dsl.serialize_ranking(report))
    return 0


def _cmd_explain(args) -> int:
    mode = _resolve_mode(args)
    model, schema, catalogue, situation = _load_all(args)
    tasks = tuple(sorted({t.strip() for t in args.solution.split(",") if t.strip()}))
    known = set(model.task_ids())
    if not tasks or any(t not in known for t in tasks) or not is_admissible(model, tasks):
        span = SourceSpan("<solution>", 1, 1)
        raise DiagnosticError([Diagnostic(
            "UnknownSolution",
            f"[{', '.join(tasks)}] does not satisfy the goal structure",
            span=span)])

    applicable = relevant(catalogue, situation, schema, model)
    effective = effective_scores((p for p, _ in applicable), model)
    satisfied = satisfied_goals(model, tasks)
    scored = score_solution(model, tasks, effective, mode)

    print(f"solution: {', '.join(tasks)}")
    print(f"mode: {mode}")
    print("relevant: " + (", ".join(p.id for p, _ in applicable) or "none"))
    print("effective softgoal scores: " + (", ".join(
        f"{sg}={score}" for sg, score in sorted(effective.softgoal.items())) or "none"))
    print("effective hardgoal scores: " + (", ".join(
        f"{hg}={score}" for hg, score in sorted(effective.hardgoal.items())
        if hg in model.nodes) or "none"))
    print("softgoals:")
    for sg in sorted(effective.softgoal):
        pos, neg = _fired_counts(model, satisfied, sg)
        value = scored.per_softgoal[sg]
        text = _rational(value) if value <= 0 else "+" + _rational(value)
        print(f"  {sg}: {text} ({pos} make, {neg} break)")
    print("hardgoals: " + (", ".join(
        f"{hg}: {score}" for hg, score in sorted(scored.per_hardgoal.items())) or "none"))
    print(f"sps: {_rational(scored.sps)}")
    print(f"hps: {scored.hps}")
    print(f"psd: {_rational(scored.psd)}")
    return 0


def _cmd_validate(args) -> int:
    if (args.schema is None) != (args.catalogue is None):
        raise _Usage("--schema and --catalogue must be given together")
    text = _read_text(args.model)
    model, diags = dsl.parse_goal_model(text, args.model)
    _emit_diags(diags)
    failed = model is None or bool(errors(diags))
    if model is not None and args.schema is not None:
        schema = _load_schema(args.schema)
        catalogue = _load_catalogue(args.catalogue)
        bound = bind(catalogue, model, schema)
        _emit_diags(bound.diagnostics)
        failed = failed or not bound.ok
    if failed:
        return 1
    print("ok")
    return 0


def _cmd_export_asp(args) -> int:
    mode = _resolve_mode(args)
    model, schema, catalogue, situation = _load_all(args)
    program = aspgen.export_asp(model, catalogue, schema, situation, mode=mode)
    if args.out:
        _write_text(args.out, program)
    else:
        sys.stdout.write(program)
    return 0


def _cmd_bench(args) -> int:
    mode = _resolve_mode(args)
    model, schema, catalogue, situation = _load_all(args)
    if args.backend == "both":
        backends = ["numba", "numpy"] if kernels.HAVE_NUMBA else ["numpy"]
    else:
        backends = [kernels.resolve_backend(args.backend)]
    variants = [(b, False) for b in backends]
    if args.parallel:
        variants.extend((b, True) for b in backends if b == "numba")

    documents = []
    for backend, parallel in variants:
        report = bench.run_bench(
            model, catalogue, schema, situation, k_max=args.kmax,
            runs=args.runs, mode=mode, backend=backend, parallel=parallel)
        print(bench.format_table(report))
        documents.append(bench.serialize_bench(report))
    if args.out:
        _write_text(args.out, "\n".join(documents))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(fixtures=args.fixtures)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def _add_input_flags(p: argparse.ArgumentParser, situation: bool = True) -> None:
    p.add_argument("--model", required=True, help="goal model file (.gm)")
    p.add_argument("--schema", required=True, help="context schema file (.ctx)")
    p.add_argument("--catalogue", required=True, help="preference catalogue file (.prefs)")
    if situation:
        p.add_argument("--situation", required=True, help="situation file (.sit)")
    p.add_argument("--mode", choices=MODES, default=None,
                   help=f"scoring mode (default: ${MODE_ENV} or {PROPORTIONAL})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="goalrank",
        description="Rank goal-model solutions by contextual preference satisfaction.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", help="rank all candidate solutions for a situation")
    _add_input_flags(p)
    p.add_argument("--top", type=int, default=None, help="show only the best N solutions")
    p.add_argument("--out", default=None, help="also write the ranking document here")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("explain", help="score breakdown for one candidate solution")
    _add_input_flags(p)
    p.add_argument("--solution", required=True, help='comma-separated task ids, e.g. "t5,t7,t9"')
    p.set_defaults(func=_cmd_explain)

    p = sub.add_parser("validate", help="check a model (and optionally a catalogue binding)")
    p.add_argument("--model", required=True)
    p.add_argument("--schema", default=None)
    p.add_argument("--catalogue", default=None)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("export-asp", help="emit a disjunctive logic program with weak constraints")
    _add_input_flags(p)
    p.add_argument("--out", default=None, help="output file (.dl); stdout when omitted")
    p.set_defaults(func=_cmd_export_asp)

    p = sub.add_parser("bench", help="scaling benchmark over k-fold cloned models")
    _add_input_flags(p)
    p.add_argument("--kmax", type=int, default=5, help="largest clone factor (default 5)")
    p.add_argument("--runs", type=int, default=20, help="timed repetitions per size (default 20)")
    p.add_argument("--backend", choices=["numba", "numpy", "auto", "both"], default="both",
                   help="scoring backend(s) to time (default: both available)")
    p.add_argument("--parallel", action="store_true",
                   help="also time the multi-threaded numba variant")
    p.add_argument("--out", default=None, help="write structured reports here")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("serve", help="start the HTTP workbench service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--fixtures", default=None,
                   help="directory of .gm/.ctx/.prefs files preloaded as workspaces")
    p.set_defaults(func=_cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except DiagnosticError as e:
        _emit_diags(e.diagnostics)
        return 1
    except (ValueError, RuntimeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
