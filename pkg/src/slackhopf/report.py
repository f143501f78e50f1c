from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ValidationReport:
    """Outcome of a batch of exact identity checks.

    Violations are data: a failed check is recorded, never raised.
    """

    subject: str
    checks: list[Check] = field(default_factory=list)

    def record(self, name: str, ok: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(ok), detail))
        return bool(ok)

    def extend(self, other: "ValidationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ok, c.detail))

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def violations(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def failed(self, name_prefix: str) -> bool:
        return any(not c.ok and c.name.startswith(name_prefix) for c in self.checks)

    def passed(self, name_prefix: str) -> bool:
        relevant = [c for c in self.checks if c.name.startswith(name_prefix)]
        return bool(relevant) and all(c.ok for c in relevant)

    def ledger(self) -> dict[str, bool]:
        """Collapse instance-level checks to one pass/fail entry per identity."""
        out: dict[str, bool] = {}
        for c in self.checks:
            key = c.name.split("[", 1)[0]
            out[key] = out.get(key, True) and c.ok
        return out

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        status = "valid" if self.ok else f"{len(self.violations)} violation(s)"
        lines = [f"{self.subject}: {status}"]
        for c in self.violations:
            lines.append(f"  FAIL {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)
