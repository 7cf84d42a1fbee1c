"""Context algebra: assertion expansion, the implies relation between
context instances, and relevance filtering of a preference catalogue
against a concrete situation."""

from __future__ import annotations

import itertools

from .model import (
    ALL,
    CombinedAssertion,
    ContextInstance,
    ContextSchema,
    ContextualPreference,
    GoalModel,
    PreferenceCatalogue,
    Situation,
)


def expand_assertion(con: CombinedAssertion, schema: ContextSchema) -> set[ContextInstance]:
    """All context instances denoted by a combined assertion.

    Unasserted elements stay as the single symbolic All wildcard rather than
    being expanded over their domains, so the result size is the product of
    the asserted value-set sizes only.
    """
    per_element = []
    for name, _ in schema.elements:
        values = con.values_for(name)
        per_element.append(values if values is not None else (ALL,))
    return {ContextInstance(combo) for combo in itertools.product(*per_element)}


def implies(general: ContextInstance, specific: ContextInstance) -> bool:
    """Elementwise equal-or-All, read as: the first covers the second."""
    if general.arity != specific.arity:
        raise ValueError(f"arity mismatch: {general.arity} vs {specific.arity}")
    return all(g == s or g == ALL for g, s in zip(general.values, specific.values))


def _matches(con: CombinedAssertion, situation: Situation, schema: ContextSchema) -> bool:
    # equivalent to: some instance of expand_assertion(con) implies situation
    for element, values in con.assertions.items():
        try:
            idx = schema.index(element)
        except KeyError:
            return False
        if ALL not in values and situation.values[idx] not in values:
            return False
    return True


def relevant(
    catalogue: PreferenceCatalogue,
    situation: Situation,
    schema: ContextSchema,
    model: GoalModel,
) -> list[tuple[ContextualPreference, bool]]:
    """Preferences applicable to the situation, in catalogue order.

    A preference is relevant when its assertion covers the situation and at
    least one of its action targets exists in the model; targets missing
    from the model (e.g. on a model fragment) are inert. The flag is True
    when every target exists, False when some are inert.
    """
    out: list[tuple[ContextualPreference, bool]] = []
    for pref in catalogue.preferences:
        if not _matches(pref.con, situation, schema):
            continue
        known = [a.target in model.nodes for a in pref.actions]
        if not any(known):
            continue
        out.append((pref, all(known)))
    return out
