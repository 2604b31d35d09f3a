"""Machine-readable check reports shared by the validators and axiom checkers.

Each finding renders as one line `STATUS <check> degree=<k> witness=<id,...>`;
a report with no findings renders a single PASS line.  Exit codes follow the
CLI convention 0 = pass, 1 = fail, 2 = inconclusive.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def detail(degree=None, witness=(), note: str = "") -> str:
    parts = []
    if degree is not None:
        parts.append(f"degree={degree}")
    if witness:
        parts.append("witness=" + ",".join(str(w) for w in witness))
    if note:
        parts.append(f"note={note}")
    return " ".join(parts)


@dataclass
class Report:
    check: str
    findings: list[tuple[str, str]] = field(default_factory=list)
    verified_upto: int | None = None
    data: dict = field(default_factory=dict)

    def fail(self, degree=None, witness=(), note: str = "") -> None:
        self.findings.append(("FAIL", detail(degree, witness, note)))

    def inconclusive(self, degree=None, witness=(), note: str = "") -> None:
        self.findings.append(("INCONCLUSIVE", detail(degree, witness, note)))

    def absorb(self, other: Report) -> None:
        """Fold another report's findings into this one, keeping provenance."""
        for status, det in other.findings:
            self.findings.append((status, f"{det} via={other.check}".strip()))

    @property
    def status(self) -> str:
        if any(s == "FAIL" for s, _ in self.findings):
            return "FAIL"
        if self.findings:
            return "INCONCLUSIVE"
        return "PASS"

    @property
    def ok(self) -> bool:
        return self.status == "PASS"

    def lines(self) -> list[str]:
        if not self.findings:
            d = detail(degree=self.verified_upto)
            return [f"PASS {self.check} {d}".rstrip()]
        return [f"{s} {self.check} {d}".rstrip() for s, d in self.findings]

    def exit_code(self) -> int:
        return {"PASS": 0, "FAIL": 1, "INCONCLUSIVE": 2}[self.status]

    def __str__(self):
        return "\n".join(self.lines())
