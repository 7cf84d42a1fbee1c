"""Export of a model + catalogue + situation as a disjunctive logic program.

The emitted text uses a small DLV-style subset: facts, normal rules,
disjunctive rules (`a v b :- c.`), `%` comments, and weak constraints
annotated `[weight@level, term, ...]`. Two predicate layers are emitted:
`sel` guesses one child per OR decomposition (answer-set minimality keeps
the guess exact on tree models) and `sat` derives satisfaction upward.
Weak constraints carry integer weights: every softgoal firing pattern and
every scored hardgoal costs the negated, scale-multiplied score, so an
optimal answer set is a top-ranked solution.

This module also parses that subset back and evaluates the objective for a
given task set, which lets tests close the loop against the scoring module
without an external solver.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .diagnostics import DiagnosticError, errors
from .model import (
    AND,
    MAKE,
    TASK,
    ContextSchema,
    GoalModel,
    PreferenceCatalogue,
    Situation,
    bind,
    validate_model,
)
from .context import relevant
from .scoring import (
    DOMINANCE,
    PROPORTIONAL,
    _check_mode,
    _contrib_value,
    effective_scores,
    link_scale,
)

# 2^m weak constraints per softgoal with m fired links; keep m sane
MAX_LINKS_PER_SOFTGOAL = 12


def export_asp(
    model: GoalModel,
    catalogue: PreferenceCatalogue,
    schema: ContextSchema,
    situation: Situation,
    mode: str = PROPORTIONAL,
) -> str:
    _check_mode(mode)
    diags = validate_model(model)
    if errors(diags):
        raise DiagnosticError(diags)
    bound = bind(catalogue, model, schema)
    if not bound.ok:
        raise DiagnosticError(bound.diagnostics)

    applicable = relevant(catalogue, situation, schema, model)
    effective = effective_scores((p for p, _ in applicable), model)
    scale = link_scale(model)

    out: list[str] = []
    out.append("% goal-model solution ranking as a disjunctive logic program")
    out.append(f"% scoring mode: {mode}; weights scaled by {scale}")

    out.append("% selection: one child per OR, all children per AND")
    out.append(f"sel({model.root}).")
    for parent in sorted(model.decompositions):
        dec = model.decompositions[parent]
        if dec.operator == AND or len(dec.children) == 1:
            for child in dec.children:
                out.append(f"sel({child}) :- sel({parent}).")
        else:
            heads = " v ".join(f"sel({c})" for c in dec.children)
            out.append(f"{heads} :- sel({parent}).")

    out.append("% satisfaction, bottom-up")
    for task in model.task_ids():
        out.append(f"sat({task}) :- sel({task}).")
    for parent in sorted(model.decompositions):
        dec = model.decompositions[parent]
        if dec.operator == AND:
            body = ", ".join(f"sat({c})" for c in dec.children)
            out.append(f"sat({parent}) :- {body}.")
        else:
            for child in dec.children:
                out.append(f"sat({parent}) :- sat({child}).")

    if model.contributions:
        out.append("% contribution links")
        for link in model.contributions:
            out.append(f"{link.polarity}({link.source}, {link.target}).")

    if schema.elements:
        out.append("% situation")
        for (name, _), value in zip(schema.elements, situation.values):
            out.append(f"situation({name}, {value}).")

    if effective.softgoal or effective.hardgoal:
        out.append("% effective scores of the relevant preferences")
        for sg in sorted(effective.softgoal):
            out.append(f"softgoal_score({sg}, {effective.softgoal[sg]}).")
        for hg in sorted(effective.hardgoal):
            out.append(f"hardgoal_score({hg}, {effective.hardgoal[hg]}).")

    weak: list[str] = []
    for sg in sorted(effective.softgoal):
        score = effective.softgoal[sg]
        links = [l for l in model.contributions if l.target == sg]
        if len(links) > MAX_LINKS_PER_SOFTGOAL:
            raise ValueError(f"softgoal {sg} has {len(links)} links; "
                             f"cannot expand more than {MAX_LINKS_PER_SOFTGOAL}")
        pattern = 0
        for size in range(1, len(links) + 1):
            for fired in combinations(links, size):
                pattern += 1
                pos = sum(1 for l in fired if l.polarity == MAKE)
                value = _contrib_value(pos, len(fired) - pos, score, mode) * scale
                if value == 0:
                    continue
                fired_set = set(fired)
                body = ", ".join(
                    f"sat({l.source})" if l in fired_set else f"not sat({l.source})"
                    for l in links)
                weak.append(f":~ {body}. [{-int(value)}@1, {sg}, {pattern}]")
    for hg in sorted(effective.hardgoal):
        if hg not in model.nodes:
            continue  # inert target: never satisfiable, no cost either way
        weak.append(f":~ sat({hg}). [{-effective.hardgoal[hg] * scale}@1, {hg}]")
    if weak:
        out.append("% objective: minimal total cost = maximal satisfaction degree")
        out.extend(weak)

    return "\n".join(out) + "\n"


# ------------------------------------------------- minimal program reader

# spaces legal only around argument punctuation, never between tokens
_ATOM = re.compile(
    r"[A-Za-z_][A-Za-z0-9_]*(\(\s*[A-Za-z0-9_]+(\s*,\s*[A-Za-z0-9_]+)*\s*\))?\Z")
_TERM = re.compile(r"(-?\d+|[A-Za-z_][A-Za-z0-9_]*)\Z")


@dataclass(frozen=True)
class AspRule:
    heads: tuple[str, ...]  # >1 head = disjunctive
    body_pos: tuple[str, ...]
    body_neg: tuple[str, ...]


@dataclass(frozen=True)
class WeakConstraint:
    body_pos: tuple[str, ...]
    body_neg: tuple[str, ...]
    weight: int
    level: int
    terms: tuple[str, ...]


@dataclass(frozen=True)
class AspProgram:
    facts: tuple[str, ...]
    rules: tuple[AspRule, ...]
    weak: tuple[WeakConstraint, ...]


def _split_commas(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(text[start:i].strip())
            start = i + 1
    tail = text[start:].strip()
    if tail:
        parts.append(tail)
    return parts


def _atom(text: str, line_no: int) -> str:
    if not _ATOM.match(text.strip()):
        raise ValueError(f"line {line_no}: malformed atom {text!r}")
    return re.sub(r"\s+", "", text)


def _literals(text: str, line_no: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    pos: list[str] = []
    neg: list[str] = []
    if text.strip():
        for part in _split_commas(text):
            if part.startswith("not "):
                neg.append(_atom(part[4:], line_no))
            else:
                pos.append(_atom(part, line_no))
    return tuple(pos), tuple(neg)


def parse_program(text: str) -> AspProgram:
    """Strict reader for the emitted subset; raises ValueError on anything else."""
    facts: list[str] = []
    rules: list[AspRule] = []
    weak: list[WeakConstraint] = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        if line.startswith(":~"):
            m = re.match(r":~\s*(.*?)\s*\.\s*\[\s*(-?\d+)\s*@\s*(-?\d+)\s*(?:,\s*(.*?)\s*)?\]\Z",
                         line)
            if not m:
                raise ValueError(f"line {line_no}: malformed weak constraint")
            body_pos, body_neg = _literals(m.group(1), line_no)
            terms = []
            for t in _split_commas(m.group(4) or ""):
                if not _TERM.match(t):
                    raise ValueError(f"line {line_no}: malformed term {t!r}")
                terms.append(t)
            terms = tuple(terms)
            weak.append(WeakConstraint(body_pos, body_neg, int(m.group(2)), int(m.group(3)), terms))
            continue
        if not line.endswith("."):
            raise ValueError(f"line {line_no}: missing terminating '.'")
        line = line[:-1].strip()
        if ":-" in line:
            head_text, body_text = line.split(":-", 1)
            body_pos, body_neg = _literals(body_text, line_no)
        else:
            head_text, body_pos, body_neg = line, (), ()
        heads = tuple(_atom(h, line_no) for h in head_text.split(" v "))
        if not heads:
            raise ValueError(f"line {line_no}: empty head")
        if len(heads) == 1 and not body_pos and not body_neg:
            facts.append(heads[0])
        else:
            rules.append(AspRule(heads, body_pos, body_neg))
    return AspProgram(tuple(facts), tuple(rules), tuple(weak))


def solution_cost(program: AspProgram, tasks: Iterable[str]) -> int:
    """Objective the program assigns to a task selection: seed sel facts for
    the tasks, chain the definite single-head rules to a fixpoint, then sum
    the weights of violated weak constraints. Equals -scale * psd."""
    atoms = {f"sel({t})" for t in tasks}
    chain = [r for r in program.rules if len(r.heads) == 1 and not r.body_neg]
    changed = True
    while changed:
        changed = False
        for rule in chain:
            if rule.heads[0] not in atoms and all(b in atoms for b in rule.body_pos):
                atoms.add(rule.heads[0])
                changed = True
    cost = 0
    for wc in program.weak:
        if all(b in atoms for b in wc.body_pos) and not any(b in atoms for b in wc.body_neg):
            cost += wc.weight
    return cost
