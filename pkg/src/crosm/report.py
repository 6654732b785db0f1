"""Check reports: named verdicts with residuals, witnesses and caveats."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import scalars


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


class OrderingError(RuntimeError):
    """A check was run before the check it depends on passed."""


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    residual: scalars.Scalar = Fraction(0)
    witness: tuple = ()
    caveats: tuple = ()
    details: dict = field(default_factory=dict, compare=False)

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def __bool__(self) -> bool:
        return self.passed

    def with_caveats(self, *flags) -> "CheckReport":
        merged = tuple(dict.fromkeys(self.caveats + tuple(flags)))
        return CheckReport(self.name, self.passed, self.residual, self.witness, merged, self.details)

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "verdict": self.verdict,
            "residual": scalars.to_json(self.residual),
            "witness": [str(w) for w in self.witness],
            "caveats": list(self.caveats),
        }
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in sorted(self.details.items())}
        return out

    def to_text(self) -> str:
        line = f"{self.name}: {self.verdict} (residual {scalars.fmt(self.residual)})"
        if self.witness:
            line += " witness=" + ",".join(str(w) for w in self.witness)
        if self.caveats:
            line += " caveats=" + ",".join(self.caveats)
        for k, v in sorted(self.details.items()):
            line += f" {k}={_textable(v)}"
        return line


def _jsonable(v):
    if isinstance(v, (Fraction, float)):
        return scalars.to_json(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in sorted(v.items())}
    return v


def _textable(v):
    if isinstance(v, (Fraction, float)):
        return scalars.fmt(v)
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_textable(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ",".join(f"{k}:{_textable(x)}" for k, x in sorted(v.items())) + "}"
    return str(v)


def residual_report(name, residuals, tol, caveats=()):
    """Build a report from (witness, residual) pairs; the first failing pair is the witness.

    Passes when every residual is zero (exact) or within ``tol`` (float).
    """
    worst = Fraction(0) if tol is None else 0.0
    first_fail = None
    for w, r in residuals:
        a = abs(r)
        if a > worst:
            worst = a
        if first_fail is None and not scalars.is_zero(r, tol):
            first_fail = w
    passed = first_fail is None
    witness = tuple(first_fail) if not passed else ()
    return CheckReport(name, passed, worst, witness, tuple(caveats))


def combine(name, reports, caveats=()):
    """All-of combination; the first failing sub-report provides the witness."""
    reports = list(reports)
    passed = all(r.passed for r in reports)
    residual = max((abs(r.residual) for r in reports), default=Fraction(0))
    witness = ()
    for r in reports:
        if not r.passed:
            witness = (r.name,) + tuple(r.witness)
            break
    cav = tuple(dict.fromkeys(tuple(caveats) + tuple(c for r in reports for c in r.caveats)))
    return CheckReport(name, passed, residual, witness, cav)
