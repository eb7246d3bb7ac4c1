"""Generate skeleton artifacts from a model, and a draft model from artifacts."""

from __future__ import annotations

import re
from dataclasses import replace

from .artifacts import Epic, Persona, UserStory, build_epics
from .errors import ModelHasNoRoles
from .labels import normalize_label
from .model import GoalNode, MotivationalModel, build_model, leaf_goals, top_level_ancestor

DRAFT_ROOT_LABEL = "Project goal (draft)"
DRAFT_ROOT_ID = "draft"


def scaffold_personas(model: MotivationalModel) -> list[Persona]:
    return [
        Persona(
            id=f"P{i}",
            name="TODO",
            role=role,
            description=f"TODO: describe an archetypical {role}: background, skills, goals and frustrations.",
        )
        for i, role in enumerate(model.roles, start=1)
    ]


def _epic_names(model: MotivationalModel) -> dict[str, str]:
    """Epic name per top-level goal; clashing labels get the goal id appended."""
    top = list(model.nodes[model.root].children) or [model.root]
    counts: dict[str, int] = {}
    for node_id in top:
        key = normalize_label(model.nodes[node_id].label)
        counts[key] = counts.get(key, 0) + 1
    names = {}
    for node_id in top:
        label = model.nodes[node_id].label
        names[node_id] = label if counts[normalize_label(label)] == 1 else f"{label} [{node_id}]"
    return names


def scaffold_stories(model: MotivationalModel) -> list[UserStory]:
    """One story per leaf goal, linked to it and grouped by its top-level goal."""
    if not model.roles:
        raise ModelHasNoRoles("cannot choose a role for scaffolded stories")
    role = model.roles[0]
    epics = _epic_names(model)
    stories = []
    for i, leaf in enumerate(leaf_goals(model), start=1):
        parent = model.parent(leaf)
        top = top_level_ancestor(model, leaf) or model.root
        stories.append(
            UserStory(
                id=f"US-{i:02d}",
                role_phrase=role,
                want=model.nodes[leaf].label,
                purpose=model.nodes[parent].label if parent is not None else None,
                epic=epics[top],
                declared_links=(leaf,),
                epic_node=top,
            )
        )
    return stories


class _IdPool:
    def __init__(self, reserved=()):
        self.used = set(reserved)

    def take(self, wanted: str) -> str:
        base = re.sub(r"[^A-Za-z0-9_.-]+", "_", wanted) or "S"
        candidate, n = base, 1
        while candidate in self.used:
            n += 1
            candidate = f"{base}_{n}"
        self.used.add(candidate)
        return candidate


def _distinct(labels) -> list[str]:
    seen, out = set(), []
    for label in labels:
        key = normalize_label(label)
        if label.strip() and key not in seen:
            seen.add(key)
            out.append(label)
    return out


def _draft_leaf_ids(stories: list[UserStory]) -> dict[str, str]:
    ids = _IdPool([DRAFT_ROOT_ID])
    return {s.id: ids.take(f"S-{s.id}") for s in stories}


def induce_model(
    stories: list[UserStory],
    epics: list[Epic] | None = None,
    personas: list[Persona] = (),
) -> MotivationalModel:
    """Draft a model: root, one subgoal per epic, one leaf per story's want clause.

    Leaf ids derive from story ids (see :func:`link_to_draft`).
    """
    if not stories:
        raise ValueError("induce_model needs at least one story")
    epics = epics if epics is not None else build_epics(stories)
    leaf_ids = _draft_leaf_ids(stories)
    ids = _IdPool([DRAFT_ROOT_ID, *leaf_ids.values()])
    by_id = {s.id: s for s in stories}
    nodes = []
    epic_ids = []
    for i, epic in enumerate(epics, start=1):
        epic_id = ids.take(f"E{i}")
        epic_ids.append(epic_id)
        nodes.append(GoalNode(epic_id, epic.name, tuple(leaf_ids[sid] for sid in epic.stories)))
        nodes.extend(GoalNode(leaf_ids[sid], by_id[sid].want) for sid in epic.stories)
    nodes.insert(0, GoalNode(DRAFT_ROOT_ID, DRAFT_ROOT_LABEL, tuple(epic_ids)))

    roles = []
    for s in stories:
        role = s.role_phrase
        for p in personas:
            if normalize_label(p.name) == normalize_label(role):
                role = p.role
                break
        roles.append(role)
    roles += [p.role for p in personas]
    return build_model(
        DRAFT_ROOT_ID,
        nodes,
        roles=_distinct(roles),
        qualities=_distinct(q for s in stories for q in s.declared_qualities),
        emotions=_distinct(e for s in stories for e in s.declared_emotions),
    )


def link_to_draft(stories: list[UserStory], model: MotivationalModel) -> list[UserStory]:
    """Point each story's functional link at its leaf in a model from :func:`induce_model`."""
    leaf_ids = _draft_leaf_ids(stories)
    out = []
    for s in stories:
        model.node(leaf_ids[s.id])
        out.append(replace(s, declared_links=(leaf_ids[s.id],), epic_node=None))
    return out
