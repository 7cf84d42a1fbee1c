"""Core domain types: goal models, context schemas, and preference catalogues.

All types are immutable after construction and safe to share between threads.
Structural rules are checked by :func:`validate_model` and :func:`bind`, which
report diagnostics instead of raising, so callers can collect every violation
in one pass.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .diagnostics import ERROR, WARNING, Diagnostic

HARDGOAL = "hardgoal"
SOFTGOAL = "softgoal"
TASK = "task"

AND = "AND"
OR = "OR"

MAKE = "make"
BREAK = "break"

PERFORM = "perform"
SATISFY = "satisfy"

ALL = "All"

MAX_SCORE = 10

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_identifier(s: str) -> bool:
    return bool(_IDENT.match(s))


@dataclass(frozen=True)
class GoalNode:
    id: str
    kind: str  # HARDGOAL | SOFTGOAL | TASK
    label: str = ""


@dataclass(frozen=True)
class Decomposition:
    operator: str  # AND | OR
    children: tuple[str, ...]


@dataclass(frozen=True)
class ContributionLink:
    source: str  # task or hardgoal
    target: str  # softgoal
    polarity: str  # MAKE | BREAK


@dataclass(frozen=True)
class GoalModel:
    nodes: dict[str, GoalNode]
    root: str
    decompositions: dict[str, Decomposition]
    contributions: tuple[ContributionLink, ...]

    def __post_init__(self):
        # canonical link order makes equality independent of statement order
        ordered = tuple(sorted(self.contributions, key=lambda l: (l.source, l.target)))
        object.__setattr__(self, "contributions", ordered)

    def kind(self, node_id: str) -> str | None:
        node = self.nodes.get(node_id)
        return node.kind if node else None

    def task_ids(self) -> list[str]:
        return sorted(n.id for n in self.nodes.values() if n.kind == TASK)

    def softgoal_ids(self) -> list[str]:
        return sorted(n.id for n in self.nodes.values() if n.kind == SOFTGOAL)

    def hardgoal_ids(self) -> list[str]:
        """Hardgoals including tasks (tasks are leaf-level hardgoals)."""
        return sorted(n.id for n in self.nodes.values() if n.kind != SOFTGOAL)


@dataclass(frozen=True)
class ContextSchema:
    """Ordered context elements, each with a finite value domain."""

    elements: tuple[tuple[str, tuple[str, ...]], ...]

    @property
    def arity(self) -> int:
        return len(self.elements)

    def names(self) -> list[str]:
        return [name for name, _ in self.elements]

    def domain(self, name: str) -> tuple[str, ...] | None:
        for n, dom in self.elements:
            if n == name:
                return dom
        return None

    def index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.elements):
            if n == name:
                return i
        raise KeyError(name)


@dataclass(frozen=True)
class ContextInstance:
    """Tuple over the schema elements; entries are domain values or All."""

    values: tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.values)

    def is_concrete(self) -> bool:
        return ALL not in self.values


@dataclass(frozen=True)
class Situation(ContextInstance):
    """A fully concrete context instance (no All entries)."""

    def __post_init__(self):
        if ALL in self.values:
            raise ValueError("a situation cannot contain the All wildcard")

    def as_mapping(self, schema: ContextSchema) -> dict[str, str]:
        return {name: v for (name, _), v in zip(schema.elements, self.values)}


@dataclass(frozen=True)
class ContextAssertion:
    element: str
    values: tuple[str, ...]  # nonempty subset of the element domain, or (All,)


@dataclass(frozen=True)
class CombinedAssertion:
    """Per-element assertions; elements absent from the map mean All."""

    assertions: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        # explicit {All} is the same as leaving the element out
        trimmed = {e: v for e, v in self.assertions.items() if v != (ALL,)}
        object.__setattr__(self, "assertions", trimmed)

    def values_for(self, element: str) -> tuple[str, ...] | None:
        """Asserted values, or None when the element is unconstrained."""
        return self.assertions.get(element)


@dataclass(frozen=True)
class Action:
    verb: str  # PERFORM | SATISFY
    target: str


@dataclass(frozen=True)
class ContextualPreference:
    id: str
    actions: tuple[Action, ...]
    con: CombinedAssertion
    score: int


@dataclass(frozen=True)
class PreferenceCatalogue:
    preferences: tuple[ContextualPreference, ...]

    def by_id(self, pref_id: str) -> ContextualPreference | None:
        for p in self.preferences:
            if p.id == pref_id:
                return p
        return None

    def ids(self) -> list[str]:
        return [p.id for p in self.preferences]


@dataclass(frozen=True)
class EffectiveScores:
    """Max-resolved scores per target; absent targets are indifferent (0)."""

    softgoal: dict[str, int]
    hardgoal: dict[str, int]


@dataclass(frozen=True)
class ScoredSolution:
    tasks: tuple[str, ...]
    per_softgoal: dict[str, Fraction]
    per_hardgoal: dict[str, int]
    sps: Fraction
    hps: int
    psd: Fraction


@dataclass(frozen=True)
class RankingReport:
    """Ranked solutions plus everything needed to reproduce the ranking."""

    situation: dict[str, str]  # element name -> value
    mode: str
    relevant: tuple[str, ...]  # relevant preference ids, catalogue order
    solutions: tuple[ScoredSolution, ...]  # best first


def _diag(rule: str, msg: str, node: str | None = None, severity: str = ERROR) -> Diagnostic:
    return Diagnostic(rule=rule, message=msg, node=node, severity=severity)


def validate_model(model: GoalModel) -> list[Diagnostic]:
    """Check every structural invariant; one diagnostic per violation.

    An empty result means the model is well formed. Rules reported:
    identifiers, root kind, decomposition shape, tree-ness (no sharing,
    no cycles, full reachability), and contribution link endpoints.
    """
    diags: list[Diagnostic] = []
    nodes = model.nodes

    for node_id, node in nodes.items():
        if not is_identifier(node_id):
            diags.append(_diag("InvalidIdentifier", f"invalid node id {node_id!r}", node_id))
        if node.id != node_id:
            diags.append(_diag("NodeKeyMismatch", f"node {node.id!r} stored under key {node_id!r}", node_id))
        if node.kind not in (HARDGOAL, SOFTGOAL, TASK):
            diags.append(_diag("UnknownNodeKind", f"node {node_id} has unknown kind {node.kind!r}", node_id))

    root = nodes.get(model.root)
    if root is None:
        diags.append(_diag("MissingRoot", f"root {model.root!r} is not a declared node", model.root))
    elif root.kind == SOFTGOAL:
        diags.append(_diag("RootNotHardgoal", f"root {model.root} is a softgoal", model.root))

    parent_of: dict[str, str] = {}
    for parent, dec in model.decompositions.items():
        pnode = nodes.get(parent)
        if pnode is None:
            diags.append(_diag("DecompositionParentUnknown", f"decomposition on undeclared node {parent}", parent))
            continue
        if pnode.kind != HARDGOAL:
            diags.append(_diag(
                "DecompositionOnNonHardgoal",
                f"{pnode.kind} {parent} cannot be decomposed", parent))
        if dec.operator not in (AND, OR):
            diags.append(_diag("UnknownOperator", f"decomposition of {parent} uses {dec.operator!r}", parent))
        if not dec.children:
            diags.append(_diag("EmptyDecomposition", f"decomposition of {parent} has no children", parent))
        seen: set[str] = set()
        for child in dec.children:
            cnode = nodes.get(child)
            if cnode is None:
                diags.append(_diag("UnknownChild", f"decomposition of {parent} references undeclared {child}", parent))
                continue
            if cnode.kind == SOFTGOAL:
                diags.append(_diag("DecompositionChildSoftgoal", f"softgoal {child} cannot be a child of {parent}", parent))
            if child in seen:
                diags.append(_diag("DuplicateChild", f"{child} listed twice under {parent}", parent))
                continue
            seen.add(child)
            if child in parent_of:
                if parent_of[child] != parent:
                    diags.append(_diag("SharedChild", f"{child} is a child of both {parent_of[child]} and {parent}", child))
            else:
                parent_of[child] = parent

    for node_id, node in nodes.items():
        # a decomposed task is already reported as DecompositionOnNonHardgoal
        if node.kind == HARDGOAL and node_id not in model.decompositions:
            diags.append(_diag("UndecomposedHardgoal", f"hardgoal {node_id} has no decomposition (declare it a task?)", node_id))

    # tree shape: walk from the root, flag cycles and unreachable non-softgoals
    if root is not None and root.kind != SOFTGOAL:
        if model.root in parent_of:
            diags.append(_diag("RootIsChild", f"root {model.root} appears as a decomposition child", model.root))
        reached: set[str] = set()

        def walk(nid: str, trail: tuple[str, ...]) -> None:
            if nid in trail:
                diags.append(_diag("DecompositionCycle", f"cycle through {nid}", nid))
                return
            if nid in reached:
                return
            reached.add(nid)
            dec = model.decompositions.get(nid)
            if dec is None:
                return
            for child in dec.children:
                if child in nodes:
                    walk(child, trail + (nid,))

        walk(model.root, ())
        for node_id, node in nodes.items():
            if node.kind != SOFTGOAL and node_id not in reached:
                diags.append(_diag("UnreachableNode", f"{node.kind} {node_id} is not reachable from the root", node_id))

    seen_links: set[tuple[str, str]] = set()
    for link in model.contributions:
        src = nodes.get(link.source)
        tgt = nodes.get(link.target)
        if link.polarity not in (MAKE, BREAK):
            diags.append(_diag("UnknownPolarity", f"link {link.source}->{link.target} has polarity {link.polarity!r}", link.source))
        if src is None:
            diags.append(_diag("ContributionSourceUnknown", f"link source {link.source} is not declared", link.source))
        elif src.kind == SOFTGOAL:
            diags.append(_diag("ContributionSourceSoftgoal", f"link source {link.source} is a softgoal", link.source))
        if tgt is None:
            diags.append(_diag("ContributionTargetUnknown", f"link target {link.target} is not declared", link.target))
        elif tgt.kind != SOFTGOAL:
            diags.append(_diag("ContributionTargetNotSoftgoal", f"link target {link.target} is a {tgt.kind}", link.target))
        key = (link.source, link.target)
        if key in seen_links:
            diags.append(_diag("DuplicateContributionLink", f"more than one link from {link.source} to {link.target}", link.source))
        seen_links.add(key)

    return diags


@dataclass(frozen=True)
class BindResult:
    """Outcome of checking a catalogue against a model and schema.

    ``unknown_targets`` maps preference ids to action targets missing from
    the model; such actions are inert (a warning, not an error) so one
    catalogue can serve model fragments.
    """

    catalogue: PreferenceCatalogue
    diagnostics: list[Diagnostic]
    unknown_targets: dict[str, tuple[str, ...]]

    @property
    def ok(self) -> bool:
        return all(d.severity != ERROR for d in self.diagnostics)


def bind(catalogue: PreferenceCatalogue, model: GoalModel, schema: ContextSchema) -> BindResult:
    """Check action targets against the model and assertions against the schema."""
    diags: list[Diagnostic] = []
    unknown: dict[str, tuple[str, ...]] = {}
    seen_ids: set[str] = set()
    for pref in catalogue.preferences:
        if pref.id in seen_ids:
            diags.append(_diag("DuplicatePreferenceId", f"preference id {pref.id} declared twice", pref.id))
        seen_ids.add(pref.id)
        if not (0 <= pref.score <= MAX_SCORE):
            diags.append(_diag("ScoreOutOfRange", f"{pref.id}: score {pref.score} outside 0..{MAX_SCORE}", pref.id))
        missing: list[str] = []
        for action in pref.actions:
            node = model.nodes.get(action.target)
            if node is None:
                missing.append(action.target)
                diags.append(_diag(
                    "UnknownActionTarget",
                    f"{pref.id} targets unknown node {action.target}",
                    pref.id, severity=WARNING))
            elif action.verb == PERFORM and node.kind != TASK:
                diags.append(_diag("VerbKindMismatch", f"{pref.id}: perform on {node.kind} {action.target}", pref.id))
            elif action.verb == SATISFY and node.kind == TASK:
                diags.append(_diag("VerbKindMismatch", f"{pref.id}: satisfy on task {action.target}", pref.id))
        if missing:
            unknown[pref.id] = tuple(missing)
        for element, values in pref.con.assertions.items():
            dom = schema.domain(element)
            if dom is None:
                diags.append(_diag("UnknownContextElement", f"{pref.id}: unknown context element {element}", pref.id))
                continue
            for v in values:
                if v not in dom:
                    diags.append(_diag("UnknownContextValue", f"{pref.id}: {v} is not a value of {element}", pref.id))
    return BindResult(catalogue=catalogue, diagnostics=diags, unknown_targets=unknown)
