"""Decision certificates with exact, string-serialized scalars.

YES certificates carry the thresholds and the completed prefix check; NO
certificates carry a concrete violating index plus the boundary direction
(or the center itself), re-verifiable by exact evaluation.  UNSUPPORTED is
a first-class verdict: the deciders never guess outside their envelope.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .scalars import Scalar, format_scalar

YES = "YES"
NO = "NO"
UNSUPPORTED = "UNSUPPORTED"

SCHEMA = "lrs-robust/1"


@dataclass
class Witness:
    """A violating index with the initialisation that realizes it."""

    n: int
    c_prime: list  # exact scalars
    direction: list  # perturbation from the center (exact scalars)
    value: Optional[Scalar] = None  # u_n at c_prime (negative)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "c_prime": [format_scalar(x) for x in self.c_prime],
            "direction": [format_scalar(x) for x in self.direction],
        }
        if self.value is not None:
            out["value"] = format_scalar(self.value)
        return out


@dataclass
class DecisionCertificate:
    decision: str
    N1: Optional[int] = None
    N2: Optional[int] = None
    N: Optional[int] = None
    witness: Optional[Witness] = None
    extra_violations: list = field(default_factory=list)  # more indices, if found
    trace: list = field(default_factory=list)
    prefix_checked: Optional[int] = None
    non_constructive: bool = False
    reason: Optional[str] = None  # for UNSUPPORTED

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "decision": self.decision,
            "N1": self.N1,
            "N2": self.N2,
            "N": self.N,
            "witness": self.witness.to_json() if self.witness else None,
            "trace": list(self.trace),
            "timings": {},
        }
        if self.prefix_checked is not None:
            out["prefix_checked"] = self.prefix_checked
        if self.extra_violations:
            out["extra_violations"] = self.extra_violations
        if self.non_constructive:
            out["non_constructive"] = True
        if self.reason:
            out["reason"] = self.reason
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


def yes(N1=None, N2=None, N=None, trace=(), prefix_checked=None, non_constructive=False):
    return DecisionCertificate(
        YES,
        N1=N1,
        N2=N2,
        N=N,
        trace=list(trace),
        prefix_checked=prefix_checked,
        non_constructive=non_constructive,
    )


def no(witness: Witness, trace=(), extra=()):
    return DecisionCertificate(
        NO, witness=witness, trace=list(trace), extra_violations=list(extra)
    )


def unsupported(reason: str, trace=()):
    return DecisionCertificate(UNSUPPORTED, reason=reason, trace=list(trace))
