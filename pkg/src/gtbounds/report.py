"""Line-oriented check records shared by the oracles and the simulator.

Every verification emits records rendering as

    CHECK <name> lhs=<v> rhs=<v> slack=<v> PASS|FAIL

where slack = rhs - lhs.  Names carry a short digest of the inputs so a
failing line identifies its instance.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

__all__ = ["CheckRecord", "check_le", "check_eq", "digest"]


@dataclass(frozen=True)
class CheckRecord:
    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"CHECK {self.name} lhs={self.lhs:.12g} rhs={self.rhs:.12g} slack={self.slack:.3g} {status}"


def check_le(name: str, lhs: float, rhs: float, tol: float) -> CheckRecord:
    """Record asserting lhs <= rhs + tol."""
    slack = rhs - lhs
    return CheckRecord(name, lhs, rhs, slack, slack >= -tol)


def check_eq(name: str, lhs: float, rhs: float, tol: float) -> CheckRecord:
    """Record asserting |lhs - rhs| <= tol."""
    slack = rhs - lhs
    return CheckRecord(name, lhs, rhs, slack, abs(slack) <= tol)


def digest(*parts: object) -> str:
    """Short stable digest of the inputs, for record names."""
    blob = "|".join(repr(p) for p in parts).encode()
    return hashlib.sha1(blob).hexdigest()[:8]
