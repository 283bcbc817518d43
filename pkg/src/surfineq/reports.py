"""Inequality records shared by every verification routine."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any


class VerificationFailure(AssertionError):
    """Raised when an asserted inequality or identity is violated."""

    def __init__(self, message: str, records: list | None = None):
        super().__init__(message)
        self.records = records or []


@dataclass(frozen=True)
class InequalityReport:
    ident: str
    lhs: float
    rhs: float
    tolerance: float = 0.0
    surface: str = ""
    n: int = 0
    delta: float = 0.0
    asserted: bool = True
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def deficit(self) -> float:
        return self.lhs - self.rhs

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs != 0 else float("inf")

    @property
    def passed(self) -> bool:
        return self.deficit >= -self.tolerance

    def row(self) -> dict[str, Any]:
        d = asdict(self)
        extra = d.pop("extra")
        d.update(deficit=self.deficit, ratio=self.ratio, passed=self.passed)
        for k, v in extra.items():
            d[f"x_{k}"] = v
        return d

    def check(self) -> "InequalityReport":
        if self.asserted and not self.passed:
            raise VerificationFailure(
                f"{self.ident} violated on {self.surface or '?'}: "
                f"lhs={self.lhs!r} rhs={self.rhs!r} deficit={self.deficit!r}",
                [self],
            )
        return self
