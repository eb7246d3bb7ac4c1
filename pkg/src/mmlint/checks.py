"""The nine consistency principles plus the advisory purpose-alignment check.

Every check is a pure function returning diagnostics in artifact source order.
:func:`run_all` links stories once, runs the enabled checks in code order and
assembles the report.
"""

from __future__ import annotations

import hashlib
import json
from collections.abc import Mapping
from dataclasses import dataclass, field

from .artifacts import UNASSIGNED_EPIC, ArtifactBundle, Epic, Persona, UserStory
from .dsl import emit_model_json
from .errors import AmbiguousLabel
from .labels import PURPOSE_STOP_WORDS, AliasTable, tokens
from .linker import StoryLinks, link_story_lenient, resolve_role
from .model import (
    GoalKind,
    MotivationalModel,
    find_goal,
    leaf_goals,
    lowest_common_ancestor,
    subtree_of,
    top_level_ancestor,
)
from .reporting import DEFAULT_SEVERITY, CheckId, Diagnostic, Report, Severity

EPIC_MODES = ("declared", "by-name")


@dataclass(frozen=True)
class CheckConfig:
    severity_overrides: Mapping[CheckId, Severity] = field(default_factory=dict)
    enabled: frozenset[CheckId] = frozenset(CheckId)
    epic_mode: str = "declared"

    def __post_init__(self) -> None:
        if self.epic_mode not in EPIC_MODES:
            raise ValueError(f"epic mode must be one of {EPIC_MODES}")
        if CheckId.ADV_PURPOSE in self.severity_overrides:
            raise ValueError("ADV-PURPOSE severity is fixed to advice")

    def severity(self, code: CheckId) -> Severity:
        return self.severity_overrides.get(code, DEFAULT_SEVERITY[code])


def _diag(code, subject_kind, subject_id, message, related=None, location=None, severity=None):
    return Diagnostic(
        code, severity or DEFAULT_SEVERITY[code], subject_kind, subject_id, message, related, location
    )


def _persona_location(persona: Persona):
    return (persona.source, 1) if persona.source else None


def check_cp1(model: MotivationalModel, personas: list[Persona], aliases: AliasTable | None = None) -> list[Diagnostic]:
    table = aliases or AliasTable()
    out = []
    for role in model.roles:
        if not any(table.same(p.role, role) for p in personas):
            out.append(_diag(CheckId.CP1, "role", role, f"role '{role}' has no persona"))
    return out


def check_cp2(
    model: MotivationalModel,
    personas: list[Persona],
    stories: list[UserStory],
    aliases: AliasTable | None = None,
) -> list[Diagnostic]:
    table = aliases or AliasTable()
    out = []
    for p in personas:
        if not any(table.same(p.role, role) for role in model.roles):
            out.append(_diag(
                CheckId.CP2, "persona", p.id,
                f"persona '{p.name}' has role '{p.role}', which is not a role in the model",
                related=p.role, location=_persona_location(p),
            ))
    for s in stories:
        if resolve_role(s.role_phrase, model, personas, table) is None:
            out.append(_diag(
                CheckId.CP2, "story", s.id,
                f"story role '{s.role_phrase}' is not a role in the model",
                related=s.role_phrase, location=s.source_location,
            ))
    return out


def _epic_node(model, epic, aliases, epic_mode):
    """(node id, error diagnostic) for the node an epic is pinned to, if any."""
    wanted = epic.declared_node
    if wanted is None and epic_mode == "by-name":
        try:
            return find_goal(model, GoalKind.FUNCTIONAL, epic.name, aliases), None
        except AmbiguousLabel as exc:
            return None, _diag(
                CheckId.CONFIG, "epic", epic.name,
                f"epic name matches several goals: {', '.join(exc.matches)}", related=epic.name,
            )
    if wanted is None:
        return None, None
    if wanted in model.nodes:
        return wanted, None
    try:
        hit = find_goal(model, GoalKind.FUNCTIONAL, wanted, aliases)
    except AmbiguousLabel as exc:
        return None, _diag(
            CheckId.CONFIG, "epic", epic.name,
            f"declared node '{wanted}' matches several goals: {', '.join(exc.matches)}", related=wanted,
        )
    if hit is None:
        return None, _diag(
            CheckId.CP3, "epic", epic.name,
            f"epic '{epic.name}' is declared on goal '{wanted}', which is not in the model", related=wanted,
        )
    return hit, None


def check_cp3(
    model: MotivationalModel,
    epics: list[Epic],
    links: Mapping[str, StoryLinks],
    aliases: AliasTable | None = None,
    epic_mode: str = "declared",
    stories: list[UserStory] = (),
) -> list[Diagnostic]:
    locations = {s.id: s.source_location for s in stories}
    out = []
    for epic in epics:
        if epic.name == UNASSIGNED_EPIC:
            continue
        linked = [n for sid in epic.stories for n in links[sid].functional]
        if not linked:
            continue
        node, problem = _epic_node(model, epic, aliases, epic_mode)
        if problem is not None:
            out.append(problem)
            continue
        if node is not None:
            allowed = subtree_of(model, node)
            label = model.nodes[node].label
            for sid in epic.stories:
                outside = [n for n in links[sid].functional if n not in allowed]
                if outside:
                    names = ", ".join(f"'{model.nodes[n].label}'" for n in outside)
                    out.append(_diag(
                        CheckId.CP3, "story", sid,
                        f"story in epic '{epic.name}' links to {names}, outside goal '{label}'",
                        related=epic.name, location=locations.get(sid),
                    ))
            continue
        anchor = lowest_common_ancestor(model, linked)
        branches = {top_level_ancestor(model, n) for n in linked} - {None}
        if anchor == model.root and len(branches) > 1:
            names = ", ".join(f"'{model.nodes[b].label}'" for b in sorted(branches, key=model.preorder().index))
            out.append(_diag(
                CheckId.CP3, "epic", epic.name,
                f"epic '{epic.name}' spans several top-level goals ({names}); "
                "no single subtree reflects it",
            ))
    return out


def check_cp4(stories: list[UserStory], links: Mapping[str, StoryLinks]) -> list[Diagnostic]:
    out = []
    for s in stories:
        story_links = links[s.id]
        if story_links.functional:
            continue
        missing = [label for kind, label in story_links.unresolved if kind == "functional"]
        message = "story relates to no goal in the model"
        if missing:
            message += " (unmatched: " + ", ".join(f"'{m}'" for m in missing) + ")"
        out.append(_diag(CheckId.CP4, "story", s.id, message, location=s.source_location))
    return out


def check_cp5(model: MotivationalModel, links: Mapping[str, StoryLinks]) -> list[Diagnostic]:
    covered = {n for story_links in links.values() for n in story_links.functional}
    return [
        _diag(CheckId.CP5, "goal", leaf, f"leaf goal '{model.nodes[leaf].label}' has no user story",
              related=model.nodes[leaf].label)
        for leaf in leaf_goals(model)
        if leaf not in covered
    ]


_COVERAGE = {GoalKind.QUALITY: (CheckId.CP6, "quality"), GoalKind.EMOTIONAL: (CheckId.CP8, "emotional")}
_VOCABULARY = {GoalKind.QUALITY: (CheckId.CP7, "quality"), GoalKind.EMOTIONAL: (CheckId.CP9, "emotional")}


def check_goal_coverage(model: MotivationalModel, links: Mapping[str, StoryLinks], kind: GoalKind) -> list[Diagnostic]:
    """CP6 for quality goals, CP8 for emotional goals."""
    code, noun = _COVERAGE[kind]
    attr = "qualities" if kind is GoalKind.QUALITY else "emotions"
    covered = {label for story_links in links.values() for label in getattr(story_links, attr)}
    return [
        _diag(code, "goal", label, f"{noun} goal '{label}' has no user story")
        for label in model.labels_of(kind)
        if label not in covered
    ]


def check_goal_vocabulary(
    model: MotivationalModel,
    stories: list[UserStory],
    links: Mapping[str, StoryLinks],
    kind: GoalKind,
) -> list[Diagnostic]:
    """CP7 for quality goals, CP9 for emotional goals."""
    code, noun = _VOCABULARY[kind]
    out = []
    for s in stories:
        seen = set()
        for entry_kind, label in links[s.id].unresolved:
            if entry_kind != noun or label in seen:
                continue
            seen.add(label)
            out.append(_diag(
                code, "story", s.id, f"{noun} goal '{label}' does not appear in the model",
                related=label, location=s.source_location,
            ))
    return out


def _goal_vocabulary_tokens(model: MotivationalModel, aliases: AliasTable | None) -> set[str]:
    labels = [model.nodes[n].label for n in model.preorder()]
    labels += list(model.qualities) + list(model.emotions)
    vocabulary = set()
    for label in labels:
        vocabulary |= tokens(label, PURPOSE_STOP_WORDS)
        if aliases is not None:
            for spelling in aliases.members(label):
                vocabulary |= tokens(spelling, PURPOSE_STOP_WORDS)
    return vocabulary


def check_purpose_alignment(
    model: MotivationalModel,
    stories: list[UserStory],
    links: Mapping[str, StoryLinks] | None = None,
    aliases: AliasTable | None = None,
) -> list[Diagnostic]:
    """Advise when a story's 'so that' purpose shares no content word with any goal."""
    vocabulary = _goal_vocabulary_tokens(model, aliases)
    out = []
    for s in stories:
        if not s.purpose:
            continue
        if not tokens(s.purpose, PURPOSE_STOP_WORDS) & vocabulary:
            out.append(Diagnostic(
                CheckId.ADV_PURPOSE, Severity.ADVICE, "story", s.id,
                f"purpose '{s.purpose}' matches no goal in the model; consider adding it as a goal",
                location=s.source_location,
            ))
    return out


def compute_links(bundle: ArtifactBundle) -> dict[str, StoryLinks]:
    return {s.id: link_story_lenient(s, bundle.model, bundle.aliases) for s in bundle.stories}


def _ambiguity_diagnostics(stories: list[UserStory], links: Mapping[str, StoryLinks]) -> list[Diagnostic]:
    out = []
    for s in stories:
        for kind, label, matches in links[s.id].ambiguous:
            out.append(_diag(
                CheckId.CONFIG, "story", s.id,
                f"{kind} label '{label}' matches several model entries: {', '.join(matches)}",
                related=label, location=s.source_location,
            ))
    return out


def bundle_fingerprint(bundle: ArtifactBundle) -> str:
    """SHA-256 over the bundle's content, ignoring file paths and line numbers."""
    doc = {
        "model": json.loads(emit_model_json(bundle.model)),
        "personas": [[p.id, p.name, p.role, p.description] for p in bundle.personas],
        "stories": [
            [s.id, s.role_phrase, s.want, s.purpose, s.epic, s.epic_node,
             list(s.declared_links), list(s.declared_qualities), list(s.declared_emotions)]
            for s in bundle.stories
        ],
        "epics": [[e.name, list(e.stories), e.declared_node] for e in bundle.epics],
        "aliases": bundle.aliases.classes(),
    }
    blob = json.dumps(doc, sort_keys=True, ensure_ascii=False).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def run_all(bundle: ArtifactBundle, config: CheckConfig | None = None) -> Report:
    config = config or CheckConfig()
    model, aliases, stories = bundle.model, bundle.aliases, bundle.stories
    links = compute_links(bundle)
    producers = {
        CheckId.CONFIG: lambda: _ambiguity_diagnostics(stories, links),
        CheckId.CP1: lambda: check_cp1(model, bundle.personas, aliases),
        CheckId.CP2: lambda: check_cp2(model, bundle.personas, stories, aliases),
        CheckId.CP3: lambda: check_cp3(model, bundle.epics, links, aliases, config.epic_mode, stories),
        CheckId.CP4: lambda: check_cp4(stories, links),
        CheckId.CP5: lambda: check_cp5(model, links),
        CheckId.CP6: lambda: check_goal_coverage(model, links, GoalKind.QUALITY),
        CheckId.CP7: lambda: check_goal_vocabulary(model, stories, links, GoalKind.QUALITY),
        CheckId.CP8: lambda: check_goal_coverage(model, links, GoalKind.EMOTIONAL),
        CheckId.CP9: lambda: check_goal_vocabulary(model, stories, links, GoalKind.EMOTIONAL),
        CheckId.ADV_PURPOSE: lambda: check_purpose_alignment(model, stories, links, aliases),
    }
    collected: list[Diagnostic] = []
    for code in CheckId:
        if code is not CheckId.CONFIG and code not in config.enabled:
            continue
        collected.extend(producers[code]())
    # CP3 may surface CONFIG problems; keep code order stable.
    collected.sort(key=lambda d: d.code.rank)
    diagnostics = tuple(
        d if d.severity is config.severity(d.code) else _reseverity(d, config.severity(d.code))
        for d in collected
    )
    return Report(diagnostics, bundle_fingerprint(bundle))


def _reseverity(d: Diagnostic, severity: Severity) -> Diagnostic:
    return Diagnostic(d.code, severity, d.subject_kind, d.subject_id, d.message, d.related, d.location)
