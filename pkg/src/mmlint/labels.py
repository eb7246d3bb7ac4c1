"""Label normalisation, tokenisation and alias equivalence classes."""

from __future__ import annotations

import re
import string
from collections.abc import Iterable

_EDGE_CHARS = string.punctuation + " "
_TOKEN_SPLIT = re.compile(r"[^0-9a-z]+")

# Story boilerplate; dominates token overlap if left in.
SUGGEST_STOP_WORDS = frozenset("a an the to of i so that want as".split())

# Purpose clauses are judged on content words only.
PURPOSE_STOP_WORDS = SUGGEST_STOP_WORDS | frozenset(
    """
    and or but nor in on at by for with from into onto over under about
    can could will would should shall may might must be is are am was were been
    being it its me my mine we our us you your he him his she her they them their
    this these those there here how what which who whom when where why
    much many more most all any some each every do does did not no very just
    also than then if up out s t d m ll re ve
    """.split()
)


def normalize_label(text: str) -> str:
    """Canonical comparison form of a label.

    Case-folded, internal whitespace collapsed, surrounding punctuation and
    whitespace stripped. Idempotent; empty input gives ``""``.
    """
    previous = None
    value = text
    while value != previous:
        previous = value
        value = " ".join(value.casefold().split()).strip(_EDGE_CHARS)
    return value


def tokens(text: str, stop_words: frozenset[str] = SUGGEST_STOP_WORDS) -> set[str]:
    """Alphanumeric tokens of ``text`` minus ``stop_words``."""
    return {t for t in _TOKEN_SPLIT.split(text.casefold()) if t and t not in stop_words}


class AliasTable:
    """Equivalence classes of normalised label spellings.

    Classes are kept with union-find. Each class's canonical representative is
    the last label on the most recent declaration that touched the class, so
    ``ease of use = easy to use`` resolves both spellings to ``easy to use``.

    >>> t = AliasTable([["a", "b"], ["b", "c"]])
    >>> t.resolve("a") == t.resolve("c") == "c"
    True
    """

    def __init__(self, classes: Iterable[Iterable[str]] = ()):
        self._parent: dict[str, str] = {}
        self._canonical: dict[str, str] = {}
        self.declarations: list[tuple[str, ...]] = []
        for labels in classes:
            self.add_class(labels)

    def _find(self, x: str) -> str:
        root = x
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[x] != root:
            self._parent[x], x = root, self._parent[x]
        return root

    def add_class(self, labels: Iterable[str]) -> None:
        names = [normalize_label(label) for label in labels]
        names = [n for n in names if n]
        if not names:
            return
        self.declarations.append(tuple(names))
        for name in names:
            if name not in self._parent:
                self._parent[name] = name
                self._canonical[name] = name
        root = self._find(names[0])
        for name in names[1:]:
            other = self._find(name)
            if other != root:
                self._parent[other] = root
                self._canonical.pop(other, None)
        self._canonical[root] = names[-1]

    def resolve(self, label: str) -> str:
        """Canonical representative of ``label``'s class (normalised), or itself."""
        name = normalize_label(label)
        if name not in self._parent:
            return name
        return self._canonical[self._find(name)]

    def same(self, a: str, b: str) -> bool:
        return self.resolve(a) == self.resolve(b)

    def members(self, label: str) -> list[str]:
        """All declared spellings equivalent to ``label``, sorted; ``[label]`` if unaliased."""
        name = normalize_label(label)
        if name not in self._parent:
            return [name]
        root = self._find(name)
        return sorted(n for n in self._parent if self._find(n) == root)

    def classes(self) -> list[list[str]]:
        groups: dict[str, list[str]] = {}
        for name in self._parent:
            groups.setdefault(self._find(name), []).append(name)
        return sorted(sorted(g) for g in groups.values())

    def __len__(self) -> int:
        return len(self.classes())

    def __bool__(self) -> bool:
        return bool(self._parent)

    def __repr__(self) -> str:
        return f"AliasTable({self.classes()!r})"


def resolve_alias(table: AliasTable | None, label: str) -> str:
    if table is None:
        return normalize_label(label)
    return table.resolve(label)
