"""The shipped case-study corpus: the extension project's model, stories and personas."""

from __future__ import annotations

from importlib import resources
from pathlib import Path

MODEL = "model.mm"
STORIES = "stories.csv"
ALIASES = "fixture.aliases"
PERSONA_DIR = "personas"


def golden_files() -> dict[str, bytes]:
    """Relative path -> content for every fixture file."""
    root = resources.files("mmlint") / "golden"
    files = {name: (root / name).read_bytes() for name in (MODEL, STORIES, ALIASES)}
    for entry in sorted((root / PERSONA_DIR).iterdir(), key=lambda e: e.name):
        if entry.name.endswith(".persona.txt"):
            files[f"{PERSONA_DIR}/{entry.name}"] = entry.read_bytes()
    return files


def write_golden(out_dir: str | Path, force: bool = False) -> list[Path]:
    """Write the corpus under ``out_dir``. Refuses to overwrite unless ``force``."""
    out_dir = Path(out_dir)
    files = golden_files()
    targets = {out_dir / rel: data for rel, data in files.items()}
    clashes = [p for p in targets if p.exists()]
    if clashes and not force:
        raise FileExistsError(f"{clashes[0]} already exists (use --force to overwrite)")
    for path, data in targets.items():
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)
    return list(targets)
