from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of a check suite; ``failures`` must be empty for a pass."""

    suite: str
    p: int
    m: int | None = None
    bounds: int | None = None
    checked: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, case, lhs, rhs, equal: bool | None = None):
        """Count one comparison; keep it as a failure if the sides differ."""
        self.checked += 1
        if equal is None:
            equal = lhs == rhs
        if not equal:
            self.failures.append({"case": str(case), "lhs": str(lhs), "rhs": str(rhs)})
        return equal

    def merge(self, other: "Report") -> "Report":
        self.checked += other.checked
        self.failures.extend(other.failures)
        return self

    def to_dict(self) -> dict:
        d = asdict(self)
        d["failures"] = sorted(d["failures"], key=lambda f: (f["case"], f["lhs"], f["rhs"]))
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        lines = [f"{status} {self.suite} p={self.p} m={self.m} checked={self.checked} "
                 f"failures={len(self.failures)}"]
        for f in self.to_dict()["failures"][:20]:
            lines.append(f"  {f['case']}: {f['lhs']} != {f['rhs']}")
        return "\n".join(lines)
