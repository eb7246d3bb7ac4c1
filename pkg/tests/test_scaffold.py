import random

import pytest

from mmlint.artifacts import ArtifactBundle, UserStory, build_epics, emit_stories_table, parse_stories_table
from mmlint.checks import CheckConfig, run_all
from mmlint.dsl import emit_model_dsl, parse_model_dsl
from mmlint.errors import ModelHasNoRoles
from mmlint.model import leaf_goals, model_from_tree
from mmlint.reporting import CheckId
from mmlint.scaffold import (
    DRAFT_ROOT_LABEL,
    induce_model,
    link_to_draft,
    scaffold_personas,
    scaffold_stories,
)

from oracles import random_bundle, random_model
from test_artifacts import STORY_I, STORY_II, STORY_III
from mmlint.artifacts import parse_story_text


def codes(report):
    return {d.code for d in report.diagnostics}


def test_scaffold_personas(fig1):
    personas = scaffold_personas(fig1)
    assert [p.role for p in personas] == ["Student", "Software Developer", "Product Manager"]
    assert all(p.name == "TODO" for p in personas)
    assert scaffold_personas(model_from_tree("R")) == []
    report = run_all(ArtifactBundle(fig1, personas))
    assert not codes(report) & {CheckId.CP1, CheckId.CP2}


def test_scaffold_stories(fig1):
    stories = scaffold_stories(fig1)
    assert len(stories) == 4
    [add] = [s for s in stories if s.want == "Add a new version"]
    assert add.epic == "Provide version control"
    assert add.purpose == "Provide version control"
    report = run_all(ArtifactBundle(fig1, [], stories))
    assert not codes(report) & {CheckId.CP3, CheckId.CP4, CheckId.CP5}


def test_scaffold_single_node():
    model = model_from_tree("Only", roles=["Student"])
    [s] = scaffold_stories(model)
    assert s.declared_links == (model.root,) and s.purpose is None
    with pytest.raises(ModelHasNoRoles):
        scaffold_stories(model_from_tree("Only"))


def test_scaffold_epics_with_clashing_labels_stay_separate():
    model = model_from_tree(("R", [("Same", ["a"]), ("same", ["b"])]), roles=["x"])
    stories = scaffold_stories(model)
    assert len({s.epic for s in stories}) == 2
    assert not codes(run_all(ArtifactBundle(model, [], stories, None))) & {CheckId.CP3}


def quoted_stories():
    out = []
    for sid, text, epic in (("i", STORY_I, "Version control"), ("ii", STORY_II, "Version control"),
                            ("iii", STORY_III, "Colouring")):
        role, want, purpose = parse_story_text(text)
        out.append(UserStory(sid, role, want, purpose, epic))
    return out


def test_induce_from_quoted_stories():
    stories = quoted_stories()
    model = induce_model(stories, build_epics(stories))
    assert model.nodes[model.root].label == DRAFT_ROOT_LABEL
    internal = [n for n in model.nodes[model.root].children]
    assert [model.nodes[n].label for n in internal] == ["Version control", "Colouring"]
    assert len(leaf_goals(model)) == 3
    assert model.roles == ("user", "software developer")
    assert model.concerns == ()
    assert parse_model_dsl(emit_model_dsl(model)) == model


def test_induce_single_unassigned_story():
    model = induce_model([UserStory("s", "user", "log in")])
    [child] = model.nodes[model.root].children
    assert model.nodes[child].label == "(unassigned)"
    assert [model.nodes[n].label for n in model.nodes[child].children] == ["log in"]
    with pytest.raises(ValueError):
        induce_model([])


def test_induced_model_closure():
    stories = quoted_stories()
    model = induce_model(stories)
    relinked = link_to_draft(stories, model)
    report = run_all(ArtifactBundle(model, [], relinked))
    assert not codes(report) & {CheckId.CP3, CheckId.CP4, CheckId.CP5, CheckId.CP7, CheckId.CP9}


def test_scaffolds_survive_file_round_trip():
    rng = random.Random(1)
    for _ in range(50):
        model = random_model(rng, min_roles=1)
        stories = parse_stories_table(emit_stories_table(scaffold_stories(model)))
        report = run_all(ArtifactBundle(model, [], stories))
        assert not codes(report) & {CheckId.CP3, CheckId.CP4, CheckId.CP5}


def test_generation_is_deterministic():
    rng = random.Random(4)
    bundle = random_bundle(rng)
    while not bundle.stories:
        bundle = random_bundle(rng)
    assert induce_model(bundle.stories, bundle.epics, bundle.personas) == induce_model(
        bundle.stories, bundle.epics, bundle.personas)
    assert scaffold_stories(model_from_tree("R", roles=["x"])) == scaffold_stories(model_from_tree("R", roles=["x"]))


def test_by_name_mode_on_scaffolds(fig1):
    report = run_all(ArtifactBundle(fig1, [], scaffold_stories(fig1)), CheckConfig(epic_mode="by-name"))
    assert not codes(report) & {CheckId.CP3}
