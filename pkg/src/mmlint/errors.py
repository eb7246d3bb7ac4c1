"""Exception hierarchy shared by every mmlint module."""

from __future__ import annotations


class MMLintError(Exception):
    """Base class for all errors raised by mmlint."""


class ModelError(MMLintError):
    """A motivational model violates one of its structural invariants."""


class DuplicateId(ModelError):
    pass


class DuplicateLabelInSet(ModelError):
    pass


class EmptyLabel(ModelError):
    pass


class InvalidId(ModelError):
    pass


class CycleDetected(ModelError):
    pass


class NotATree(ModelError):
    """A node has two parents, or is unreachable from the root."""


class UnknownNode(ModelError):
    pass


class AmbiguousLabel(MMLintError):
    def __init__(self, label: str, matches: list[str]):
        super().__init__(f"label {label!r} matches several entries: {', '.join(matches)}")
        self.label = label
        self.matches = matches


class ModelHasNoRoles(MMLintError):
    pass


class ParseError(MMLintError):
    """Malformed input text. ``line`` is 1-based, or None when unknown."""

    def __init__(self, line: int | None, reason: str, source: str | None = None):
        where = source or "<input>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {reason}")
        self.line = line
        self.reason = reason
        self.source = source


class TemplateMismatch(ParseError):
    def __init__(self, segment: str, reason: str):
        super().__init__(None, f"{reason}: {segment!r}")
        self.segment = segment


class DuplicateStoryId(ParseError):
    pass


class MissingField(ParseError):
    def __init__(self, field: str, source: str | None = None):
        super().__init__(None, f"missing required field {field!r}", source)
        self.field = field
