"""Check reports shared by the library, the CLI and the test suite."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Report:
    params: dict
    claim: str
    status: str  # verified | falsified | degenerate
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "verified"

    def to_json(self) -> dict:
        return {"params": self.params, "claim": self.claim, "status": self.status, "witness": self.witness}


def status(ok: bool) -> str:
    return "verified" if ok else "falsified"
