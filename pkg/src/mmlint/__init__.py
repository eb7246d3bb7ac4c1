"""Consistency linter for motivational models, personas and user stories."""

from .artifacts import (
    ArtifactBundle,
    Epic,
    Persona,
    UserStory,
    load_bundle,
    parse_aliases,
    parse_persona,
    parse_stories_table,
    parse_story_text,
)
from .checks import CheckConfig, run_all
from .dsl import emit_model_dsl, emit_model_json, parse_model_dsl, parse_model_json
from .labels import AliasTable, normalize_label, resolve_alias
from .linker import link_story, suggest_links
from .model import (
    GoalKind,
    GoalNode,
    MotivationalModel,
    build_model,
    find_goal,
    leaf_goals,
    lowest_common_ancestor,
    subtree_of,
)
from .reporting import CheckId, Diagnostic, Report, Severity, exit_code, render_json, render_text
from .scaffold import induce_model, scaffold_personas, scaffold_stories

__version__ = "0.1.0"

__all__ = [
    "ArtifactBundle",
    "Epic",
    "Persona",
    "UserStory",
    "load_bundle",
    "parse_aliases",
    "parse_persona",
    "parse_stories_table",
    "parse_story_text",
    "GoalKind",
    "GoalNode",
    "MotivationalModel",
    "build_model",
    "find_goal",
    "leaf_goals",
    "lowest_common_ancestor",
    "subtree_of",
    "CheckConfig",
    "run_all",
    "emit_model_dsl",
    "emit_model_json",
    "parse_model_dsl",
    "parse_model_json",
    "AliasTable",
    "normalize_label",
    "resolve_alias",
    "link_story",
    "suggest_links",
    "CheckId",
    "Diagnostic",
    "Report",
    "Severity",
    "exit_code",
    "render_json",
    "render_text",
    "induce_model",
    "scaffold_personas",
    "scaffold_stories",
]
