"""Pass/fail reports for exact identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    """Named checks, each recording both sides of an identity."""

    title: str
    checks: dict[str, tuple[object, object]] = field(default_factory=dict)

    def add(self, name: str, lhs, rhs) -> None:
        self.checks[name] = (lhs, rhs)

    def passed(self, name: str) -> bool:
        lhs, rhs = self.checks[name]
        return lhs == rhs

    @property
    def ok(self) -> bool:
        return all(self.passed(k) for k in self.checks)

    def failures(self) -> list[str]:
        return [k for k in self.checks if not self.passed(k)]

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if self.passed(k) else 'FAIL'}  {self.title}: {k}  lhs={lhs}  rhs={rhs}"
            for k, (lhs, rhs) in self.checks.items()
        ]

    def as_dict(self) -> dict:
        return {
            "title": self.title,
            "ok": self.ok,
            "checks": {
                k: {"pass": self.passed(k), "lhs": str(lhs), "rhs": str(rhs)}
                for k, (lhs, rhs) in self.checks.items()
            },
        }
