"""Check reports shared by the identity builders and the catalog runner."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import LaurentPoly, TruncSeries, format_poly


@dataclass(frozen=True)
class Mismatch:
    power: int
    lhs: LaurentPoly
    rhs: LaurentPoly
    # free-form location inside a grid check, e.g. "i=3"; not part of the JSON schema
    where: str = ""

    def to_json(self) -> dict:
        return {"power": self.power, "lhs": format_poly(self.lhs), "rhs": format_poly(self.rhs)}


@dataclass(frozen=True)
class CheckReport:
    id: str
    order: int
    status: str
    first_mismatch: Mismatch | None = None
    depth_used: int = 0
    elapsed_ms: int = 0
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError(f"bad status {self.status!r}")
        if (self.status == "pass") != (self.first_mismatch is None):
            raise ValueError("status must be 'pass' exactly when there is no mismatch")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "order": self.order,
            "status": self.status,
            "first_mismatch": None if self.first_mismatch is None else self.first_mismatch.to_json(),
            "depth_used": self.depth_used,
            "elapsed_ms": self.elapsed_ms,
        }


def report(id: str, order: int, mismatch: Mismatch | None, depth_used: int = 0) -> CheckReport:
    return CheckReport(id, order, "pass" if mismatch is None else "fail", mismatch, depth_used)


def series_mismatch(lhs: TruncSeries, rhs: TruncSeries, where: str = "") -> Mismatch | None:
    k = lhs.first_difference(rhs)
    if k is None:
        return None
    return Mismatch(k, lhs.coeff(k), rhs.coeff(k), where)


def first_of(*mismatches: Mismatch | None) -> Mismatch | None:
    for m in mismatches:
        if m is not None:
            return m
    return None
