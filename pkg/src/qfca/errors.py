"""Exceptions, validation reports and enumeration budgets.

Every validator in this package reports law violations as data (an
:class:`Issue` inside a :class:`ValidationReport`) instead of raising, so a
single run can show everything that is wrong with a structure.  Exceptions are
reserved for malformed calls: mismatched hom endpoints, exceeded search
budgets, missing preconditions.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field


class QfcaError(Exception):
    """Base class for all errors raised by this package."""


class TypeMismatch(QfcaError):
    """Arrow or distributor endpoints do not line up."""


class BaseMismatch(QfcaError):
    """Presheaf operations applied across different base categories."""


class InvalidParams(QfcaError):
    """Bad preset name or preset parameters."""


class NotGirard(QfcaError):
    """A complement was requested but the family is not cyclic dualizing."""


class NotAQuantale(QfcaError):
    """A one-object quantaloid was required."""


class HypothesesNotMet(QfcaError):
    """A probe's standing hypotheses fail, so its verdict is undefined."""


class SearchBudgetExceeded(QfcaError):
    """A backtracking or family search exceeded its node budget."""


class BudgetExceeded(QfcaError):
    """An enumeration would produce more values than the configured cap."""

    def __init__(self, message: str, count: int):
        super().__init__(f"{message} (candidate count {count})")
        self.count = count


class ClosureBudgetExceeded(QfcaError):
    """A meet-closure grew past the configured cap."""


class ColimitMissing(QfcaError):
    """A pointwise Kan extension failed because a weighted (co)limit is absent."""

    def __init__(self, point: str, kind: str = "colimit"):
        super().__init__(f"no {kind} exists at point {point!r}")
        self.point = point


class InvalidChu(QfcaError):
    """The pair of functors is not a Chu transform."""


class NotAdjoint(QfcaError):
    """The supplied functor pair is not an adjunction."""


class ConditionFailed(QfcaError):
    """A construction's prerequisite condition failed; carries its name."""

    def __init__(self, condition: str, detail: str = ""):
        super().__init__(f"condition {condition!r} failed" + (f": {detail}" if detail else ""))
        self.condition = condition


# Default caps.  QFCA_BUDGET overrides all of them at once; individual call
# sites also accept an explicit ``budget=`` argument.
_DEFAULT_BUDGETS = {
    "enumeration": 10**5,
    "search": 10**6,
    "closure": 10**5,
}


def budget(kind: str, override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("QFCA_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise InvalidParams(f"QFCA_BUDGET must be an integer, got {env!r}") from None
    return _DEFAULT_BUDGETS[kind]


@dataclass(frozen=True)
class Issue:
    """One violated law: a machine-readable code, where it happened, and why."""

    code: str
    where: tuple
    detail: str

    def to_json(self) -> dict:
        return {"code": self.code, "where": list(self.where), "detail": self.detail}


@dataclass
class ValidationReport:
    """Outcome of a structural validator; empty ``issues`` means valid."""

    subject: str
    issues: list[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self) -> bool:
        return self.ok

    def add(self, code: str, where: tuple, detail: str) -> None:
        self.issues.append(Issue(code, where, detail))

    def require(self) -> "ValidationReport":
        """Raise if invalid; handy when a valid input is a precondition."""
        if not self.ok:
            first = self.issues[0]
            raise QfcaError(f"{self.subject}: {first.code} at {first.where}: {first.detail}"
                            + (f" (+{len(self.issues) - 1} more)" if len(self.issues) > 1 else ""))
        return self

    def to_json(self) -> dict:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "issues": [i.to_json() for i in self.issues],
        }


@dataclass
class Condition:
    """One hypothesis or conclusion checked by a theorem verifier."""

    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    """Structured outcome of a theorem verifier: named per-condition results.

    Verifiers never answer with a bare boolean; a failing report names the
    hypothesis that broke and, where possible, the coordinates of a
    counterexample.
    """

    name: str
    conditions: list[Condition] = field(default_factory=list)

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.conditions.append(Condition(name, bool(passed), detail))
        return bool(passed)

    def skip(self, name: str, detail: str) -> None:
        self.conditions.append(Condition(name, True, f"skipped: {detail}"))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def failed_names(self) -> list[str]:
        return [c.name for c in self.conditions if not c.passed]

    def condition(self, name: str) -> Condition:
        for c in self.conditions:
            if c.name == name:
                return c
        raise KeyError(name)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.conditions:
            self.conditions.append(Condition(prefix + c.name, c.passed, c.detail))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "conditions": [c.to_json() for c in self.conditions],
        }
