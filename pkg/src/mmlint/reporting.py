"""Diagnostics, reports, renderers and lint-style exit codes."""

from __future__ import annotations

import enum
import json
from collections import Counter
from dataclasses import asdict, dataclass, field

REPORT_VERSION = 1


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"
    ADVICE = "advice"


class CheckId(str, enum.Enum):
    """Check codes, in report order. CONFIG carries configuration-level errors."""

    CONFIG = "CONFIG"
    CP1 = "CP1"
    CP2 = "CP2"
    CP3 = "CP3"
    CP4 = "CP4"
    CP5 = "CP5"
    CP6 = "CP6"
    CP7 = "CP7"
    CP8 = "CP8"
    CP9 = "CP9"
    ADV_PURPOSE = "ADV-PURPOSE"

    @property
    def rank(self) -> int:
        return list(CheckId).index(self)


DEFAULT_SEVERITY = {
    CheckId.CONFIG: Severity.ERROR,
    CheckId.CP1: Severity.WARNING,
    CheckId.CP2: Severity.ERROR,
    CheckId.CP3: Severity.WARNING,
    CheckId.CP4: Severity.ERROR,
    CheckId.CP5: Severity.WARNING,
    CheckId.CP6: Severity.WARNING,
    CheckId.CP7: Severity.ERROR,
    CheckId.CP8: Severity.WARNING,
    CheckId.CP9: Severity.ERROR,
    CheckId.ADV_PURPOSE: Severity.ADVICE,
}


@dataclass(frozen=True)
class Diagnostic:
    code: CheckId
    severity: Severity
    subject_kind: str  # role | persona | story | epic | goal
    subject_id: str
    message: str
    related: str | None = None
    location: tuple[str, int] | None = None

    def __post_init__(self) -> None:
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")

    def key(self) -> tuple[str, str, str, str | None]:
        """Identity used when comparing diagnostic sets, ignoring wording."""
        return (self.code.value, self.subject_kind, self.subject_id, self.related)


@dataclass(frozen=True)
class Report:
    diagnostics: tuple[Diagnostic, ...] = ()
    fingerprint: str = ""
    counts: dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        tally = Counter(d.severity.value for d in self.diagnostics)
        object.__setattr__(self, "counts", {s.value: tally.get(s.value, 0) for s in Severity})

    def by_code(self, code: CheckId) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.code is code]


def exit_code(report: Report, lenient: bool = False) -> int:
    """0 when nothing fails the run, 1 otherwise. Lenient mode lets warnings pass."""
    failing = {Severity.ERROR} if lenient else {Severity.ERROR, Severity.WARNING}
    return 1 if any(d.severity in failing for d in report.diagnostics) else 0


def render_text(report: Report, lenient: bool = False) -> str:
    lines = [
        f"{d.severity.value.upper()} {d.code.value} {d.subject_id}: {d.message}"
        for d in report.diagnostics
    ]
    status = "FAIL" if exit_code(report, lenient) else "OK"
    c = report.counts
    lines.append(
        f"{status}: {c['error']} errors, {c['warning']} warnings, {c['advice']} advisories"
    )
    return "\n".join(lines) + "\n"


def _diagnostic_dict(d: Diagnostic) -> dict:
    out = asdict(d)
    out["code"] = d.code.value
    out["severity"] = d.severity.value
    out["location"] = None if d.location is None else {"file": d.location[0], "line": d.location[1]}
    return out


def render_json(report: Report) -> str:
    doc = {
        "version": REPORT_VERSION,
        "fingerprint": report.fingerprint,
        "diagnostics": [_diagnostic_dict(d) for d in report.diagnostics],
        "counts": report.counts,
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def parse_report_json(text: str) -> Report:
    doc = json.loads(text)
    diagnostics = []
    for item in doc["diagnostics"]:
        loc = item.get("location")
        diagnostics.append(
            Diagnostic(
                code=CheckId(item["code"]),
                severity=Severity(item["severity"]),
                subject_kind=item["subject_kind"],
                subject_id=item["subject_id"],
                message=item["message"],
                related=item.get("related"),
                location=None if loc is None else (loc["file"], loc["line"]),
            )
        )
    return Report(tuple(diagnostics), doc.get("fingerprint", ""))
