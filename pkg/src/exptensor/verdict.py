from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Verdict:
    """Outcome of a mechanical check.

    ``status`` is "pass", "fail" or "inconclusive"; ``failures`` holds
    witnesses for a failure, ``info`` anything worth recording.
    """

    status: str
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "pass"

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def from_failures(cls, failures, **info) -> "Verdict":
        return cls("fail" if failures else "pass", list(failures), info)
