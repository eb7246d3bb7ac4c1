"""Bind stories and personas to model elements.

Checks only ever consume the explicit links computed here; the heuristic
:func:`suggest_links` is a remediation aid and never satisfies a check.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .artifacts import Persona, UserStory
from .errors import AmbiguousLabel
from .labels import AliasTable, normalize_label, tokens
from .model import GoalKind, MotivationalModel, find_goal

_KIND_NAMES = {
    GoalKind.FUNCTIONAL: "functional",
    GoalKind.QUALITY: "quality",
    GoalKind.EMOTIONAL: "emotional",
}


@dataclass(frozen=True)
class StoryLinks:
    story: str
    functional: tuple[str, ...] = ()
    qualities: tuple[str, ...] = ()
    emotions: tuple[str, ...] = ()
    # (kind, normalised label) pairs that matched nothing
    unresolved: tuple[tuple[str, str], ...] = ()
    # (kind, normalised label, matching entries) pairs that matched several entries
    ambiguous: tuple[tuple[str, str, tuple[str, ...]], ...] = field(default=())


def _resolve(model, kind, label, aliases, resolved, unresolved, ambiguous):
    if kind is GoalKind.FUNCTIONAL and label in model.nodes:
        hit = label
    else:
        try:
            hit = find_goal(model, kind, label, aliases)
        except AmbiguousLabel as exc:
            ambiguous.append((_KIND_NAMES[kind], normalize_label(label), tuple(exc.matches)))
            return
    if hit is None:
        unresolved.append((_KIND_NAMES[kind], normalize_label(label)))
    elif hit not in resolved:
        resolved.append(hit)


def link_story_lenient(story: UserStory, model: MotivationalModel, aliases: AliasTable | None = None) -> StoryLinks:
    """Like :func:`link_story` but records ambiguous entries instead of raising."""
    groups = (
        (GoalKind.FUNCTIONAL, story.declared_links),
        (GoalKind.QUALITY, story.declared_qualities),
        (GoalKind.EMOTIONAL, story.declared_emotions),
    )
    unresolved: list[tuple[str, str]] = []
    ambiguous: list = []
    found = []
    for kind, declared in groups:
        resolved: list[str] = []
        for label in declared:
            _resolve(model, kind, label, aliases, resolved, unresolved, ambiguous)
        found.append(tuple(resolved))
    return StoryLinks(story.id, *found, unresolved=tuple(unresolved), ambiguous=tuple(ambiguous))


def link_story(story: UserStory, model: MotivationalModel, aliases: AliasTable | None = None) -> StoryLinks:
    """Resolve a story's declared links, qualities and emotions against the model.

    Functional entries match a node id first, then an alias-resolved label.
    Entries that match nothing are kept in ``unresolved``. Raises AmbiguousLabel
    if an entry matches more than one model element.
    """
    links = link_story_lenient(story, model, aliases)
    if links.ambiguous:
        _, label, matches = links.ambiguous[0]
        raise AmbiguousLabel(label, list(matches))
    return links


def resolve_role(
    phrase: str,
    model: MotivationalModel,
    personas: list[Persona] = (),
    aliases: AliasTable | None = None,
) -> str | None:
    """Model role named by ``phrase``, either directly or through a persona's name."""
    table = aliases or AliasTable()
    for role in model.roles:
        if table.same(role, phrase):
            return role
    for persona in personas:
        if table.same(persona.name, phrase):
            for role in model.roles:
                if table.same(role, persona.role):
                    return role
    return None


def suggest_links(
    story: UserStory,
    model: MotivationalModel,
    aliases: AliasTable | None = None,
    k: int = 3,
) -> list[tuple[str, float]]:
    """Rank functional goals by token overlap with the story's want and purpose.

    score = |story tokens ∩ label tokens| / |label tokens|, taking the best
    spelling among the label's aliases. Ties keep depth-first pre-order.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    story_tokens = tokens(story.want) | tokens(story.purpose or "")
    scored = []
    for node_id in model.preorder():
        label = model.nodes[node_id].label
        spellings = [label]
        if aliases is not None:
            spellings += aliases.members(label)
        best = 0.0
        for spelling in spellings:
            label_tokens = tokens(spelling)
            if label_tokens:
                best = max(best, len(story_tokens & label_tokens) / len(label_tokens))
        scored.append((node_id, best))
    scored.sort(key=lambda pair: -pair[1])
    return scored[:k]
