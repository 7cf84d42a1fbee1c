"""Line-oriented text formats: goal models, context schemas, preference
catalogues, situations, and the ranking output document.

Every parser is total: arbitrary input yields either a value or a list of
span-carrying diagnostics, never an exception. Model statements may appear
in any order (references are resolved in a second pass). Serializers emit
deterministic text, and parse(serialize(x)) is structurally equal to x as
long as labels contain no quote, hash, or newline characters (the grammar
has no escapes).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagnostics import Diagnostic, SourceSpan, errors
from .model import (
    ALL,
    AND,
    BREAK,
    HARDGOAL,
    MAKE,
    MAX_SCORE,
    OR,
    PERFORM,
    SATISFY,
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
    RankingReport,
    Situation,
    is_identifier,
    validate_model,
)

_PUNCT = "{};,="


@dataclass(frozen=True)
class _Tok:
    text: str
    col: int  # 1-based
    kind: str  # word | punct | string


def _tokenize(line: str, lineno: int, filename: str, diags: list[Diagnostic]) -> list[_Tok]:
    toks: list[_Tok] = []
    i, n = 0, len(line)
    while i < n:
        ch = line[i]
        if ch in " \t\r":
            i += 1
        elif ch == "#":
            break
        elif ch == '"':
            j = line.find('"', i + 1)
            if j < 0:
                diags.append(Diagnostic("SyntaxError", "unterminated string",
                                        span=SourceSpan(filename, lineno, i + 1)))
                return toks
            toks.append(_Tok(line[i + 1:j], i + 1, "string"))
            i = j + 1
        elif ch in _PUNCT:
            toks.append(_Tok(ch, i + 1, "punct"))
            i += 1
        else:
            j = i
            while j < n and line[j] not in " \t\r#\"" + _PUNCT:
                j += 1
            toks.append(_Tok(line[i:j], i + 1, "word"))
            i = j
    return toks


class _Syntax(Exception):
    def __init__(self, message: str, col: int):
        self.message = message
        self.col = col
        super().__init__(message)


class _Cursor:
    """Single-statement token walker; raises _Syntax on shape violations."""

    def __init__(self, toks: list[_Tok]):
        self.toks = toks
        self.i = 0

    def peek(self) -> _Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _end_col(self) -> int:
        last = self.toks[-1]
        return last.col + len(last.text)

    def take(self) -> _Tok:
        t = self.peek()
        if t is None:
            raise _Syntax("unexpected end of statement", self._end_col())
        self.i += 1
        return t

    def word(self, expected: str | None = None) -> str:
        t = self.take()
        if t.kind != "word" or (expected is not None and t.text != expected):
            want = repr(expected) if expected else "an identifier"
            raise _Syntax(f"expected {want}, got {t.text!r}", t.col)
        return t.text

    def punct(self, ch: str) -> None:
        t = self.take()
        if t.kind != "punct" or t.text != ch:
            raise _Syntax(f"expected {ch!r}, got {t.text!r}", t.col)

    def at_punct(self, ch: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == "punct" and t.text == ch

    def at_word(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.kind == "word" and t.text == text

    def end(self) -> None:
        t = self.peek()
        if t is not None:
            raise _Syntax(f"unexpected {t.text!r} at end of statement", t.col)


def _syntax_diag(filename: str, lineno: int, e: _Syntax) -> Diagnostic:
    return Diagnostic("SyntaxError", e.message, span=SourceSpan(filename, lineno, e.col))


def _statements(text: str, filename: str, diags: list[Diagnostic]):
    for lineno, line in enumerate(text.splitlines(), 1):
        toks = _tokenize(line, lineno, filename, diags)
        if toks:
            yield lineno, toks


# ---------------------------------------------------------------- goal model

_KIND_BY_KEYWORD = {"goal": HARDGOAL, "softgoal": SOFTGOAL, "task": TASK}
_KEYWORD_BY_KIND = {v: k for k, v in _KIND_BY_KEYWORD.items()}


def parse_goal_model(text: str, filename: str = "<input>") -> tuple[GoalModel | None, list[Diagnostic]]:
    diags: list[Diagnostic] = []
    decls: dict[str, tuple[str, str]] = {}  # id -> (kind, label)
    decomps: dict[str, Decomposition] = {}
    links: list[ContributionLink] = []
    roots: list[tuple[str, SourceSpan]] = []
    refs: list[tuple[str, SourceSpan]] = []

    for lineno, toks in _statements(text, filename, diags):
        c = _Cursor(toks)
        span = SourceSpan(filename, lineno, toks[0].col)
        try:
            kw = c.word()
            if kw in _KIND_BY_KEYWORD:
                ident = c.word()
                label = ""
                t = c.peek()
                if t is not None and t.kind == "string":
                    label = c.take().text
                c.end()
                if not is_identifier(ident):
                    raise _Syntax(f"invalid identifier {ident!r}", toks[1].col)
                if ident in decls:
                    diags.append(Diagnostic("DuplicateDeclaration", f"{ident} declared twice", span=span))
                    continue
                decls[ident] = (_KIND_BY_KEYWORD[kw], label)
            elif kw == "root":
                ident = c.word()
                c.end()
                roots.append((ident, span))
            elif kw in ("and", "or"):
                parent = c.word()
                c.punct("{")
                children = [c.word()]
                while not c.at_punct("}"):
                    children.append(c.word())
                c.punct("}")
                c.end()
                if parent in decomps:
                    diags.append(Diagnostic("DuplicateDecomposition", f"{parent} decomposed twice", span=span))
                    continue
                decomps[parent] = Decomposition(AND if kw == "and" else OR, tuple(children))
                refs.append((parent, span))
                refs.extend((child, span) for child in children)
            elif kw in (MAKE, BREAK):
                src = c.word()
                tgt = c.word()
                c.end()
                links.append(ContributionLink(src, tgt, kw))
                refs.append((src, span))
                refs.append((tgt, span))
            else:
                raise _Syntax(f"unknown statement {kw!r}", toks[0].col)
        except _Syntax as e:
            diags.append(_syntax_diag(filename, lineno, e))

    if not roots:
        diags.append(Diagnostic("MissingRoot", "no root statement", span=SourceSpan(filename, 1, 1)))
    else:
        for ident, span in roots[1:]:
            diags.append(Diagnostic("MultipleRoot", f"root declared again as {ident}", span=span))
        refs.append(roots[0])
    for ident, span in refs:
        if ident not in decls:
            diags.append(Diagnostic("UndeclaredId", f"{ident} is not declared", span=span))

    if errors(diags):
        return None, diags

    model = GoalModel(
        nodes={i: GoalNode(i, kind, label) for i, (kind, label) in decls.items()},
        root=roots[0][0],
        decompositions=decomps,
        contributions=tuple(links),
    )
    diags.extend(validate_model(model))
    if errors(diags):
        return None, diags
    return model, diags


def serialize_goal_model(model: GoalModel) -> str:
    lines = []
    for ident in sorted(model.nodes):
        node = model.nodes[ident]
        lines.append(f'{_KEYWORD_BY_KIND[node.kind]} {node.id} "{node.label}"')
    lines.append(f"root {model.root}")
    for parent in sorted(model.decompositions):
        dec = model.decompositions[parent]
        lines.append(f"{dec.operator.lower()} {parent} {{ {' '.join(dec.children)} }}")
    for link in model.contributions:
        lines.append(f"{link.polarity} {link.source} {link.target}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ context schema

def parse_context_schema(text: str, filename: str = "<input>") -> tuple[ContextSchema | None, list[Diagnostic]]:
    diags: list[Diagnostic] = []
    elements: list[tuple[str, tuple[str, ...]]] = []
    seen: set[str] = set()

    for lineno, toks in _statements(text, filename, diags):
        c = _Cursor(toks)
        span = SourceSpan(filename, lineno, toks[0].col)
        try:
            c.word("element")
            name = c.word()
            c.punct("{")
            values = [c.word()]
            while not c.at_punct("}"):
                values.append(c.word())
            c.punct("}")
            c.end()
        except _Syntax as e:
            diags.append(_syntax_diag(filename, lineno, e))
            continue
        if not is_identifier(name):
            diags.append(Diagnostic("SyntaxError", f"invalid element name {name!r}", span=span))
            continue
        if name == ALL:
            diags.append(Diagnostic("ReservedToken", f"{ALL} cannot name an element", span=span))
            continue
        if name in seen:
            diags.append(Diagnostic("DuplicateElement", f"element {name} declared twice", span=span))
            continue
        seen.add(name)
        domain: list[str] = []
        for v in values:
            if v == ALL:
                diags.append(Diagnostic("ReservedToken", f"{ALL} cannot be a value of {name}", span=span))
            elif v in domain:
                diags.append(Diagnostic("DuplicateValue", f"value {v} repeated in {name}", span=span))
            else:
                domain.append(v)
        elements.append((name, tuple(domain)))

    if errors(diags):
        return None, diags
    return ContextSchema(tuple(elements)), diags


def serialize_context_schema(schema: ContextSchema) -> str:
    return "".join(f"element {name} {{ {' '.join(domain)} }}\n" for name, domain in schema.elements)


# -------------------------------------------------------- preference catalogue

def parse_catalogue(text: str, filename: str = "<input>") -> tuple[PreferenceCatalogue | None, list[Diagnostic]]:
    diags: list[Diagnostic] = []
    prefs: list[ContextualPreference] = []
    seen: set[str] = set()

    for lineno, toks in _statements(text, filename, diags):
        span = SourceSpan(filename, lineno, toks[0].col)
        c = _Cursor(toks)
        try:
            c.word("pref")
            pid = c.word()
            c.punct("{")
            actions: list[Action] = []
            while True:
                verb = c.word()
                if verb not in (PERFORM, SATISFY):
                    raise _Syntax(f"expected {PERFORM!r} or {SATISFY!r}, got {verb!r}", toks[c.i - 1].col)
                actions.append(Action(verb, c.word()))
                if c.at_punct(";"):
                    c.punct(";")
                    continue
                c.punct("}")
                break
            c.word("when")
            assertions: dict[str, tuple[str, ...]] = {}
            if c.at_word("true"):
                c.word("true")
            else:
                while True:
                    elem = c.word()
                    elem_col = toks[c.i - 1].col
                    c.word("in")
                    c.punct("{")
                    values = [c.word()]
                    while c.at_punct(","):
                        c.punct(",")
                        values.append(c.word())
                    c.punct("}")
                    if ALL in values and len(values) > 1:
                        diags.append(Diagnostic(
                            "ReservedToken", f"{pid}: {ALL} cannot be combined with other values",
                            span=SourceSpan(filename, lineno, elem_col)))
                    if elem in assertions:
                        diags.append(Diagnostic(
                            "DuplicateElement", f"{pid}: element {elem} asserted twice",
                            span=SourceSpan(filename, lineno, elem_col)))
                    else:
                        assertions[elem] = tuple(values)
                    if c.at_word("and"):
                        c.word("and")
                        continue
                    break
            c.word("score")
            score_tok = c.take()
            c.end()
            try:
                score = int(score_tok.text)
            except ValueError:
                raise _Syntax(f"score must be an integer, got {score_tok.text!r}", score_tok.col) from None
        except _Syntax as e:
            diags.append(_syntax_diag(filename, lineno, e))
            continue
        if not (0 <= score <= MAX_SCORE):
            diags.append(Diagnostic("ScoreOutOfRange", f"{pid}: score {score} outside 0..{MAX_SCORE}", span=span))
            continue
        if pid in seen:
            diags.append(Diagnostic("DuplicatePreferenceId", f"preference id {pid} declared twice", span=span))
            continue
        seen.add(pid)
        prefs.append(ContextualPreference(pid, tuple(actions), CombinedAssertion(assertions), score))

    if errors(diags):
        return None, diags
    return PreferenceCatalogue(tuple(prefs)), diags


def serialize_catalogue(catalogue: PreferenceCatalogue) -> str:
    lines = []
    for p in catalogue.preferences:
        acts = "; ".join(f"{a.verb} {a.target}" for a in p.actions)
        if p.con.assertions:
            when = " and ".join(
                f"{elem} in {{{', '.join(values)}}}"
                for elem, values in sorted(p.con.assertions.items()))
        else:
            when = "true"
        lines.append(f"pref {p.id} {{ {acts} }} when {when} score {p.score}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ situation

def parse_situation(text: str, schema: ContextSchema, filename: str = "<input>") -> tuple[Situation | None, list[Diagnostic]]:
    diags: list[Diagnostic] = []
    got: dict[str, str] = {}

    for lineno, toks in _statements(text, filename, diags):
        c = _Cursor(toks)
        while c.peek() is not None:
            try:
                name = c.word()
                name_col = toks[c.i - 1].col
                c.punct("=")
                value = c.word()
            except _Syntax as e:
                diags.append(_syntax_diag(filename, lineno, e))
                break
            span = SourceSpan(filename, lineno, name_col)
            domain = schema.domain(name)
            if domain is None:
                diags.append(Diagnostic("UnknownContextElement", f"unknown context element {name}", span=span))
            elif name in got:
                diags.append(Diagnostic("DuplicateElement", f"element {name} set twice", span=span))
            elif value == ALL:
                diags.append(Diagnostic("WildcardForbidden", f"{name}: a situation cannot use {ALL}", span=span))
            elif value not in domain:
                diags.append(Diagnostic("UnknownContextValue", f"{value} is not a value of {name}", span=span))
            else:
                got[name] = value

    for name, _ in schema.elements:
        if name not in got:
            diags.append(Diagnostic("MissingElement", f"situation does not set {name}",
                                    span=SourceSpan(filename, 1, 1)))
    if errors(diags):
        return None, diags
    return Situation(tuple(got[name] for name, _ in schema.elements)), diags


def serialize_situation(situation: Situation, schema: ContextSchema) -> str:
    return "".join(
        f"{name}={value}\n" for (name, _), value in zip(schema.elements, situation.values))


# ------------------------------------------------------------- ranking output

def format_rational(q: Fraction | int) -> str:
    """Exact text for a rational: integer, terminating decimal, or num/den."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    den = q.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{q.numerator}/{q.denominator}"
    places = max(twos, fives)
    scaled = q.numerator * 10 ** places // q.denominator
    digits = str(abs(scaled)).rjust(places + 1, "0")
    sign = "-" if scaled < 0 else ""
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _map_lines(key: str, items: dict[str, str], pad: str) -> list[str]:
    if not items:
        return [f"{pad}{key}: {{}}"]
    lines = [f"{pad}{key}:"]
    lines.extend(f"{pad}  {k}: {items[k]}" for k in sorted(items))
    return lines


def serialize_ranking(report: RankingReport) -> str:
    """Byte-deterministic structured document (a YAML subset): sorted keys,
    LF endings, rationals as exact decimals or num/den."""
    out: list[str] = [f"mode: {report.mode}"]
    out.append(f"relevant: [{', '.join(report.relevant)}]")
    out.extend(_map_lines("situation", dict(report.situation), ""))
    if not report.solutions:
        out.append("solutions: []")
    else:
        out.append("solutions:")
        for s in report.solutions:
            out.append(f"- hps: {s.hps}")
            out.extend(_map_lines("perHardgoal", {k: str(v) for k, v in s.per_hardgoal.items()}, "  "))
            out.extend(_map_lines("perSoftgoal", {k: format_rational(v) for k, v in s.per_softgoal.items()}, "  "))
            out.append(f"  psd: {format_rational(s.psd)}")
            out.append(f"  sps: {format_rational(s.sps)}")
            out.append(f"  tasks: [{', '.join(s.tasks)}]")
    return "\n".join(out) + "\n"
