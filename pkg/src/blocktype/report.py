"""Bounded residual reports returned by every window check."""

from __future__ import annotations

from dataclasses import dataclass, field

DEFAULT_LIMIT = 10


@dataclass
class ResidualReport:
    """Failures of an identity over a finite set of checked cases.

    Only the first ``limit`` failures are kept (``limit=None`` keeps all);
    ``count`` is the total number of failing cases.
    """

    name: str
    checked: int = 0
    count: int = 0
    failures: list = field(default_factory=list)
    limit: int | None = DEFAULT_LIMIT

    @property
    def ok(self) -> bool:
        return self.count == 0

    def __bool__(self):
        # truthy when something failed, like a nonempty list of failures
        return self.count > 0

    def record(self, case, residual) -> None:
        self.checked += 1
        if residual:
            self.count += 1
            if self.limit is None or len(self.failures) < self.limit:
                self.failures.append((case, residual))

    def cases(self) -> list:
        return [case for case, _ in self.failures]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "checked": self.checked,
            "failed": self.count,
            "failures": [{"case": _case_str(c), "residual": str(r)}
                         for c, r in self.failures],
        }

    def to_text(self) -> str:
        lines = ["%s: %d checked, %d failed" % (self.name, self.checked, self.count)]
        for c, r in self.failures:
            lines.append("  %s -> %s" % (_case_str(c), r))
        if self.count > len(self.failures):
            lines.append("  ... %d more" % (self.count - len(self.failures)))
        return "\n".join(lines)


def _case_str(case) -> str:
    if isinstance(case, tuple) and case and isinstance(case[0], tuple):
        return "(" + ", ".join("L[%d,%d]" % tuple(x) for x in case) + ")"
    return str(case)
