"""Personas, user stories, epics and alias files, plus the bundle that groups them."""

from __future__ import annotations

import csv
import io
import re
from dataclasses import dataclass, field
from pathlib import Path

from .dsl import load_model
from .errors import DuplicateStoryId, MissingField, ParseError, TemplateMismatch
from .labels import AliasTable, normalize_label
from .model import MotivationalModel

UNASSIGNED_EPIC = "(unassigned)"


@dataclass(frozen=True)
class Persona:
    id: str
    name: str
    role: str
    description: str = ""
    source: str | None = None


@dataclass(frozen=True)
class UserStory:
    id: str
    role_phrase: str
    want: str
    purpose: str | None = None
    epic: str | None = None
    declared_links: tuple[str, ...] = ()
    declared_qualities: tuple[str, ...] = ()
    declared_emotions: tuple[str, ...] = ()
    epic_node: str | None = None
    source_location: tuple[str, int] | None = None

    @property
    def statement(self) -> str:
        return render_story_text(self.role_phrase, self.want, self.purpose)


@dataclass(frozen=True)
class Epic:
    name: str
    stories: tuple[str, ...]
    declared_node: str | None = None


@dataclass
class ArtifactBundle:
    model: MotivationalModel
    personas: list[Persona] = field(default_factory=list)
    stories: list[UserStory] = field(default_factory=list)
    epics: list[Epic] | None = None
    aliases: AliasTable = field(default_factory=AliasTable)

    def __post_init__(self) -> None:
        _require_unique([p.id for p in self.personas], "persona")
        _require_unique([s.id for s in self.stories], "story")
        if self.epics is None:
            self.epics = build_epics(self.stories)
        known = {s.id for s in self.stories}
        owner: dict[str, str] = {}
        for epic in self.epics:
            for story_id in epic.stories:
                if story_id not in known:
                    raise ValueError(f"epic {epic.name!r} lists unknown story {story_id!r}")
                if story_id in owner:
                    raise ValueError(f"story {story_id!r} is in epics {owner[story_id]!r} and {epic.name!r}")
                owner[story_id] = epic.name


def _require_unique(ids: list[str], what: str) -> None:
    seen = set()
    for i in ids:
        if i in seen:
            raise ValueError(f"duplicate {what} id {i!r}")
        seen.add(i)


# -- story statements --------------------------------------------------------

_STORY_RE = re.compile(
    r"\s*as\s+an?\s+(?P<role>.+?)\s*,?\s*\bi\s+want\s+(?P<rest>.+?)\s*",
    re.IGNORECASE | re.DOTALL,
)
_SO_THAT = re.compile(r"\s*,?\s+so\s+that\s+", re.IGNORECASE)
_DANGLING_SO_THAT = re.compile(r"\s*,?\s+so\s+that$", re.IGNORECASE)
_LEADING_TO = re.compile(r"^(?:to\s+)+", re.IGNORECASE)


def parse_story_text(line: str) -> tuple[str, str, str | None]:
    """Split a ``As a <role>, I want <want> [so that <purpose>]`` statement.

    Keywords are case-insensitive and ``an`` is accepted. When a purpose is
    present the infinitive ``to`` opening the want clause is dropped.
    Raises TemplateMismatch.
    """
    match = _STORY_RE.fullmatch(line)
    if not match:
        if not re.match(r"\s*as\s+an?\s", line, re.IGNORECASE):
            raise TemplateMismatch(line, "story must start with 'As a' or 'As an'")
        raise TemplateMismatch(line, "story lacks an 'I want' clause")
    role = match["role"].strip()
    rest = match["rest"]
    split = _SO_THAT.search(rest)
    if split is None:
        if _DANGLING_SO_THAT.search(rest):
            raise TemplateMismatch(line, "'so that' clause is empty")
        return role, rest.strip(), None
    want = re.sub(r"[\s,]+$", "", rest[: split.start()])
    purpose = rest[split.end():].strip()
    stripped = _LEADING_TO.sub("", want, count=1)
    if stripped:
        want = stripped
    if not want:
        raise TemplateMismatch(line, "want clause is empty")
    if not purpose:
        raise TemplateMismatch(line, "'so that' clause is empty")
    return role, want, purpose


def render_story_text(role: str, want: str, purpose: str | None = None) -> str:
    text = f"As a {role}, I want {want}"
    if purpose:
        text += f" so that {purpose}"
    return text


# -- stories table -------------------------------------------------------------

def _split_list(cell: str | None) -> tuple[str, ...]:
    if not cell:
        return ()
    return tuple(item.strip() for item in cell.split(";") if item.strip())


def _cell(row: dict, key: str) -> str:
    value = row.get(key)
    return value.strip() if isinstance(value, str) else ""


def parse_stories_table(
    text: str | bytes, source: str | None = None, delimiter: str = ","
) -> list[UserStory]:
    """Parse a delimited stories table.

    Columns: ``id``, then either ``statement`` or ``role``/``want``/``purpose``,
    and optionally ``epic``, ``epic_node``, ``links``, ``qualities``,
    ``emotions``. List cells are ``;``-separated. Other columns are ignored.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ParseError(None, f"not valid UTF-8 ({exc.reason})", source) from None
    text = text.lstrip("\ufeff")
    where = source or "<stories>"
    try:
        rows = list(csv.reader(io.StringIO(text, newline=""), delimiter=delimiter, strict=True))
    except csv.Error as exc:
        raise ParseError(None, f"malformed table ({exc})", source) from None
    if not rows:
        raise ParseError(1, "header row missing", source)
    header = [h.strip().lower() for h in rows[0]]
    if "id" not in header:
        raise ParseError(1, "header needs an 'id' column", source)
    if "statement" not in header and not {"role", "want"} <= set(header):
        raise ParseError(1, "header needs 'statement' or 'role' and 'want' columns", source)

    # csv.reader hides physical line numbers; recount for quoted newlines
    line_numbers = _row_lines(text, delimiter)
    stories: list[UserStory] = []
    seen: set[str] = set()
    for index, values in enumerate(rows[1:], start=1):
        lineno = line_numbers[index] if index < len(line_numbers) else None
        if not any(v.strip() for v in values):
            continue
        row = dict(zip(header, values))
        story_id = _cell(row, "id")
        if not story_id:
            raise ParseError(lineno, "story id is empty", source)
        if story_id in seen:
            raise DuplicateStoryId(lineno, f"duplicate story id {story_id!r}", source)
        seen.add(story_id)
        statement = _cell(row, "statement")
        if statement:
            try:
                role, want, purpose = parse_story_text(statement)
            except TemplateMismatch as exc:
                raise ParseError(lineno, exc.reason, source) from None
        else:
            role, want, purpose = _cell(row, "role"), _cell(row, "want"), _cell(row, "purpose") or None
            if not role or not want:
                raise ParseError(lineno, "story needs a statement or role and want", source)
        stories.append(
            UserStory(
                id=story_id,
                role_phrase=role,
                want=want,
                purpose=purpose,
                epic=_cell(row, "epic") or None,
                declared_links=_split_list(row.get("links")),
                declared_qualities=_split_list(row.get("qualities")),
                declared_emotions=_split_list(row.get("emotions")),
                epic_node=_cell(row, "epic_node") or None,
                source_location=(where, lineno) if lineno else None,
            )
        )
    build_epics(stories, source)
    return stories


def _row_lines(text: str, delimiter: str) -> list[int]:
    """Starting physical line of each CSV record."""
    reader = csv.reader(io.StringIO(text, newline=""), delimiter=delimiter)
    starts = []
    previous = 0
    for _ in reader:
        starts.append(previous + 1)
        previous = reader.line_num
    return starts


STORY_COLUMNS = ("id", "statement", "epic", "epic_node", "links", "qualities", "emotions")


def emit_stories_table(stories: list[UserStory]) -> str:
    """Inverse of :func:`parse_stories_table`, using explicit role/want/purpose columns."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", "role", "want", "purpose", "epic", "epic_node", "links", "qualities", "emotions"])
    for s in stories:
        writer.writerow([
            s.id, s.role_phrase, s.want, s.purpose or "", s.epic or "", s.epic_node or "",
            ";".join(s.declared_links), ";".join(s.declared_qualities), ";".join(s.declared_emotions),
        ])
    return out.getvalue()


def build_epics(stories: list[UserStory], source: str | None = None) -> list[Epic]:
    """Group stories by epic name in first-appearance order.

    Stories without an epic land in ``(unassigned)``. Raises ParseError when the
    stories of one epic declare different ``epic_node`` values.
    """
    members: dict[str, list[str]] = {}
    names: dict[str, str] = {}
    nodes: dict[str, str | None] = {}
    for story in stories:
        name = story.epic or UNASSIGNED_EPIC
        key = normalize_label(name) if story.epic else UNASSIGNED_EPIC
        names.setdefault(key, name)
        members.setdefault(key, []).append(story.id)
        if story.epic_node:
            if nodes.get(key) not in (None, story.epic_node):
                line = story.source_location[1] if story.source_location else None
                raise ParseError(line, f"epic {name!r} declares two different nodes", source)
            nodes[key] = story.epic_node
    return [Epic(names[k], tuple(v), nodes.get(k)) for k, v in members.items()]


# -- personas --------------------------------------------------------------------

def parse_persona(text: str | bytes, default_id: str | None = None, source: str | None = None) -> Persona:
    """Parse ``key: value`` header lines, a blank line, then a free-text description."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ParseError(None, f"not valid UTF-8 ({exc.reason})", source) from None
    lines = text.lstrip("\ufeff").replace("\r\n", "\n").split("\n")
    header: dict[str, str] = {}
    body_start = len(lines)
    for i, line in enumerate(lines):
        if not line.strip():
            body_start = i + 1
            break
        key, sep, value = line.partition(":")
        if not sep:
            raise ParseError(i + 1, f"expected 'key: value' header line, got {line!r}", source)
        header[key.strip().lower()] = value.strip()
    for required in ("name", "role"):
        if not header.get(required):
            raise MissingField(required, source)
    description = "\n".join(lines[body_start:]).strip()
    persona_id = header.get("id") or default_id or header["name"]
    return Persona(persona_id, header["name"], header["role"], description, source)


def emit_persona(persona: Persona) -> str:
    return (
        f"id: {persona.id}\nname: {persona.name}\nrole: {persona.role}\n\n"
        f"{persona.description}\n"
    )


def load_personas(paths: list[str | Path]) -> list[Persona]:
    """Read persona files; a directory contributes its ``*.persona.txt`` files, sorted."""
    files: list[Path] = []
    for p in map(Path, paths):
        files.extend(sorted(p.glob("*.persona.txt")) if p.is_dir() else [p])
    personas = []
    for f in files:
        stem = f.name.removesuffix(".txt").removesuffix(".persona")
        personas.append(parse_persona(f.read_bytes(), default_id=stem, source=str(f)))
    return personas


# -- aliases ---------------------------------------------------------------------

def parse_aliases(text: str | bytes, source: str | None = None) -> AliasTable:
    """One equivalence class per line, labels separated by ``=`` (or ``≡``)."""
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ParseError(None, f"not valid UTF-8 ({exc.reason})", source) from None
    table = AliasTable()
    for lineno, line in enumerate(text.lstrip("\ufeff").split("\n"), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        labels = [part.strip() for part in re.split(r"[=≡]", line)]
        if len(labels) < 2:
            raise ParseError(lineno, "alias line needs at least two labels joined by '='", source)
        if not all(normalize_label(x) for x in labels):
            raise ParseError(lineno, "empty label in alias class", source)
        table.add_class(labels)
    return table


def emit_aliases(table: AliasTable) -> str:
    return "".join(" = ".join(d) + "\n" for d in table.declarations)


# -- bundle ------------------------------------------------------------------------

def load_bundle(
    model_path: str | Path,
    stories_path: str | Path | None = None,
    persona_paths: list[str | Path] = (),
    alias_path: str | Path | None = None,
) -> ArtifactBundle:
    model = load_model(model_path)
    stories: list[UserStory] = []
    if stories_path is not None:
        p = Path(stories_path)
        delimiter = "\t" if p.suffix.lower() == ".tsv" else ","
        stories = parse_stories_table(p.read_bytes(), source=str(p), delimiter=delimiter)
    personas = load_personas(list(persona_paths))
    aliases = AliasTable()
    if alias_path is not None:
        aliases = parse_aliases(Path(alias_path).read_bytes(), source=str(alias_path))
    try:
        return ArtifactBundle(model, personas, stories, None, aliases)
    except ValueError as exc:
        raise ParseError(None, str(exc)) from None
