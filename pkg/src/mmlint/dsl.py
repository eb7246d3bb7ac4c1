"""Text encodings of a motivational model: the indented ``.mm`` DSL and ``.mm.json``.

DSL grammar, one statement per line::

    # comment
    goal: Create an extension to the MM tool
      goal[G2]: Provide version control      # optional explicit id
        goal: "Label: with a colon"          # JSON-quoted when needed
    roles: Student, Software Developer
    qualities: Reliable, Easy to use
    emotions: ...
    concerns: Unstable

``goal`` lines nest by two-space indentation; exactly one goal sits at column
zero. Goals without an explicit id get ``G<n>`` in pre-order.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ModelError, ParseError
from .model import ID_PATTERN, GoalNode, MotivationalModel, build_model

SET_KEYWORDS = ("roles", "qualities", "emotions", "concerns")
_NEEDS_QUOTES = set(':#,"[]')


def _decode(text: str | bytes, source: str | None) -> str:
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(None, f"not valid UTF-8 ({exc.reason})", source) from None
    if text.startswith("\ufeff"):
        text = text[1:]
    return text


def _read_value(s: str, pos: int, stop: str, lineno: int, source: str | None) -> tuple[str, int]:
    """Read one bare or quoted value from ``s`` starting at ``pos``.

    Bare values end at any char in ``stop`` or at ``#``; quoted values are JSON strings.
    """
    n = len(s)
    while pos < n and s[pos] in " \t":
        pos += 1
    if pos < n and s[pos] == '"':
        try:
            value, end = json.JSONDecoder().raw_decode(s, pos)
        except ValueError as exc:
            raise ParseError(lineno, f"bad quoted label ({exc})", source) from None
        return value, end
    end = pos
    while end < n and s[end] not in stop and s[end] != "#":
        end += 1
    return s[pos:end].strip(), end


def _rest_is_blank(s: str, pos: int) -> bool:
    rest = s[pos:].lstrip(" \t")
    return not rest or rest.startswith("#")


def _parse_list(s: str, lineno: int, source: str | None) -> list[str]:
    if _rest_is_blank(s, 0):
        return []
    items = []
    pos = 0
    while True:
        value, pos = _read_value(s, pos, ",", lineno, source)
        if not value.strip():
            raise ParseError(lineno, "empty label in list", source)
        items.append(value)
        while pos < len(s) and s[pos] in " \t":
            pos += 1
        if pos < len(s) and s[pos] == ",":
            pos += 1
            continue
        if not _rest_is_blank(s, pos):
            raise ParseError(lineno, f"unexpected text {s[pos:]!r}", source)
        return items


def parse_model_dsl(text: str | bytes, source: str | None = None) -> MotivationalModel:
    text = _decode(text, source)
    entries: list[tuple[int, int, str | None, str]] = []  # lineno, depth, id, label
    sets: dict[str, list[str]] = {k: [] for k in SET_KEYWORDS}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        stripped = line.lstrip(" ")
        if not stripped.strip() or stripped.startswith("#"):
            continue
        indent = len(line) - len(stripped)
        if stripped[0] == "\t" or indent % 2:
            raise ParseError(lineno, "indentation must be a multiple of two spaces", source)
        keyword, sep, rest = stripped.partition(":")
        if not sep:
            raise ParseError(lineno, "expected 'keyword: value'", source)
        keyword = keyword.strip()
        if keyword in SET_KEYWORDS:
            if indent:
                raise ParseError(lineno, f"'{keyword}:' must not be indented", source)
            sets[keyword].extend(_parse_list(rest, lineno, source))
            continue
        node_id = None
        if keyword.startswith("goal[") and keyword.endswith("]"):
            node_id = keyword[5:-1]
            if not ID_PATTERN.fullmatch(node_id):
                raise ParseError(lineno, f"invalid goal id {node_id!r}", source)
        elif keyword != "goal":
            raise ParseError(lineno, f"unknown keyword {keyword!r}", source)
        label, end = _read_value(rest, 0, "", lineno, source)
        if not _rest_is_blank(rest, end):
            raise ParseError(lineno, f"unexpected text after label: {rest[end:]!r}", source)
        if not label.strip():
            raise ParseError(lineno, "goal label is empty", source)
        depth = indent // 2
        if not entries:
            if depth:
                raise ParseError(lineno, "the root goal must not be indented", source)
        elif depth == 0:
            raise ParseError(lineno, "a model has exactly one root goal", source)
        elif depth > entries[-1][1] + 1:
            raise ParseError(lineno, "goal indented more than one level below its parent", source)
        entries.append((lineno, depth, node_id, label))
    if not entries:
        raise ParseError(None, "no goal found", source)

    ids = [e[2] or f"G{i}" for i, e in enumerate(entries, start=1)]
    children: list[list[str]] = [[] for _ in entries]
    stack: list[int] = []
    for i, (_, depth, _, _) in enumerate(entries):
        del stack[depth:]
        if stack:
            children[stack[-1]].append(ids[i])
        stack.append(i)
    nodes = [GoalNode(ids[i], e[3], tuple(children[i])) for i, e in enumerate(entries)]
    try:
        return build_model(ids[0], nodes, **sets)
    except ModelError as exc:
        raise ParseError(None, str(exc), source) from exc


def _quote(label: str) -> str:
    if (
        label != label.strip()
        or any(c in _NEEDS_QUOTES or not c.isprintable() for c in label)
    ):
        return json.dumps(label, ensure_ascii=False)
    return label


def emit_model_dsl(model: MotivationalModel) -> str:
    order = model.preorder()
    auto_ids = all(node_id == f"G{i}" for i, node_id in enumerate(order, start=1))
    lines = []
    for node_id in order:
        indent = "  " * model.depth(node_id)
        keyword = "goal" if auto_ids else f"goal[{node_id}]"
        lines.append(f"{indent}{keyword}: {_quote(model.nodes[node_id].label)}")
    for keyword in SET_KEYWORDS:
        labels = getattr(model, keyword)
        if labels:
            lines.append(f"{keyword}: " + ", ".join(_quote(x) for x in labels))
    return "\n".join(lines) + "\n"


def _string_list(doc: dict, key: str, source: str | None) -> list[str]:
    value = doc.get(key, [])
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise ParseError(None, f"'{key}' must be a list of strings", source)
    return value


def parse_model_json(text: str | bytes, source: str | None = None) -> MotivationalModel:
    text = _decode(text, source)
    if not text.strip():
        raise ParseError(None, "empty document", source)
    try:
        doc = json.loads(text)
    except (ValueError, RecursionError) as exc:
        line = getattr(exc, "lineno", None)
        raise ParseError(line, f"invalid JSON ({getattr(exc, 'msg', exc)})", source) from None
    if not isinstance(doc, dict):
        raise ParseError(None, "top level must be an object", source)
    root = doc.get("root")
    raw_nodes = doc.get("nodes")
    if not isinstance(root, str):
        raise ParseError(None, "'root' must be a string id", source)
    if not isinstance(raw_nodes, dict):
        raise ParseError(None, "'nodes' must be an object of id -> node", source)
    nodes = []
    for node_id, body in raw_nodes.items():
        if not isinstance(body, dict):
            raise ParseError(None, f"node {node_id!r} must be an object", source)
        label = body.get("label")
        kids = body.get("children", [])
        if not isinstance(label, str):
            raise ParseError(None, f"node {node_id!r} needs a string label", source)
        if not isinstance(kids, list) or not all(isinstance(k, str) for k in kids):
            raise ParseError(None, f"node {node_id!r} children must be a list of ids", source)
        nodes.append(GoalNode(node_id, label, tuple(kids)))
    sets = {k: _string_list(doc, k, source) for k in SET_KEYWORDS}
    try:
        return build_model(root, nodes, **sets)
    except ModelError as exc:
        raise ParseError(None, str(exc), source) from exc


def emit_model_json(model: MotivationalModel) -> str:
    doc = {
        "root": model.root,
        "nodes": {
            n: {"label": model.nodes[n].label, "children": list(model.nodes[n].children)}
            for n in model.preorder()
        },
    }
    for keyword in SET_KEYWORDS:
        doc[keyword] = list(getattr(model, keyword))
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_model(path: str | Path) -> MotivationalModel:
    """Read a ``.mm`` or ``.mm.json`` file, picking the parser by suffix."""
    path = Path(path)
    data = path.read_bytes()
    if path.name.endswith(".json"):
        return parse_model_json(data, source=str(path))
    return parse_model_dsl(data, source=str(path))
