"""Verification reports and monomial witnesses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .series import TruncatedSeries, first_difference, format_monomial


@dataclass
class VerificationReport:
    """Outcome of one identity check or cross-check.

    ``witness`` is set exactly when the check fails, except for search-style
    reports (``search=True``) where it holds what was found.
    """

    identity: str
    order: int | None
    params: dict[str, Any] = field(default_factory=dict)
    passed: bool = False
    witness: Any = None
    note: str | None = None
    search: bool = False
    wall_time: float = 0.0

    def to_json(self, timing: bool = False) -> dict:
        out: dict[str, Any] = {
            "identity": self.identity,
            "order": self.order,
            "params": self.params,
            "pass": self.passed,
            "witness": self.witness,
        }
        if self.note:
            out["note"] = self.note
        if timing:
            out["wall_time"] = round(self.wall_time, 4)
        return out

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        params = ", ".join(f"{k}={v}" for k, v in self.params.items())
        head = f"[{status}] {self.identity}"
        if self.order is not None:
            head += f" (order {self.order}{', ' + params if params else ''})"
        elif params:
            head += f" ({params})"
        if not self.passed and self.witness is not None:
            head += f" witness={self.witness}"
        return head


def monomial_witness(lhs: TruncatedSeries, rhs: TruncatedSeries) -> dict | None:
    diff = first_difference(lhs, rhs)
    if diff is None:
        return None
    e, a, b = diff
    return {"monomial": format_monomial(e), "e": list(e), "lhs": str(a), "rhs": str(b)}


def compare(
    identity: str,
    lhs: TruncatedSeries,
    rhs: TruncatedSeries,
    params: dict[str, Any] | None = None,
    note: str | None = None,
) -> VerificationReport:
    witness = monomial_witness(lhs, rhs)
    return VerificationReport(
        identity, lhs.order, dict(params or {}), witness is None, witness, note
    )


def combine(identity: str, order: int | None, params: dict, parts: list[VerificationReport],
            note: str | None = None) -> VerificationReport:
    """Fold sub-checks into one report; the witness names the first failing part."""
    failed = next((p for p in parts if not p.passed), None)
    witness = None if failed is None else {"part": failed.identity, "witness": failed.witness}
    return VerificationReport(identity, order, params, failed is None, witness, note)

