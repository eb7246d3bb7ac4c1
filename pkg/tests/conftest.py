from __future__ import annotations

import pytest

from mmlint import golden
from mmlint.artifacts import load_bundle
from mmlint.model import model_from_tree

FIG1_TREE = (
    "Create an extension to the MM tool",
    [
        ("Provide version control", ["View the current versions", "Add a new version"]),
        "Add color to the shape",
        "Coordinate with other extensions",
    ],
)

ACCEPTANCE_RESULTS: dict[str, str] = {}


@pytest.fixture
def fig1():
    # emotions are synthetic placeholders; the source figure is not legible there
    return model_from_tree(
        FIG1_TREE,
        roles=["Student", "Software Developer", "Product Manager"],
        qualities=["Reliable", "Easy to use", "Understandable", "Helpful"],
        emotions=["Confident", "Motivated", "Satisfied", "Enjoyable experience"],
        concerns=["Unstable"],
    )


@pytest.fixture
def golden_dir(tmp_path):
    golden.write_golden(tmp_path)
    return tmp_path


@pytest.fixture
def golden_bundle(golden_dir):
    return load_bundle(
        golden_dir / golden.MODEL,
        golden_dir / golden.STORIES,
        [golden_dir / golden.PERSONA_DIR],
        golden_dir / golden.ALIASES,
    )


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for name in sorted(ACCEPTANCE_RESULTS, key=lambda n: int(n.split()[0])):
            terminalreporter.write_line(f"{ACCEPTANCE_RESULTS[name]}  criterion {name}")
