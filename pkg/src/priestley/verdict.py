from __future__ import annotations

from dataclasses import dataclass
from typing import Any

OK_EXHAUSTIVE = "ok-exhaustive"
OK_BOUNDED = "ok-bounded"
COUNTEREXAMPLE = "counterexample"


class EngineBug(AssertionError):
    """Two routes that must agree by a theorem disagreed."""


class InvalidInput(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check.

    ``ok-exhaustive`` means every case was decided, ``ok-bounded`` means no
    counterexample among ``tested`` cases of a semi-decision procedure.
    """

    status: str
    witness: Any = None
    tested: int = 0

    @classmethod
    def ok(cls, tested: int = 0, exhaustive: bool = True) -> "Verdict":
        return cls(OK_EXHAUSTIVE if exhaustive else OK_BOUNDED, None, tested)

    @classmethod
    def fail(cls, witness: Any, tested: int = 0) -> "Verdict":
        return cls(COUNTEREXAMPLE, witness, tested)

    def __bool__(self) -> bool:
        return self.status != COUNTEREXAMPLE

    @property
    def label(self) -> str:
        if self.status == OK_BOUNDED:
            return f"ok-bounded({self.tested})"
        return self.status
