"""Machine-readable verification outcomes."""
from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

PASS = "pass"
FAIL = "fail"
CONSISTENT = "conjecture-consistent"
COUNTEREXAMPLE = "conjecture-counterexample"
INCONCLUSIVE = "inconclusive"
STATUSES = (PASS, FAIL, CONSISTENT, COUNTEREXAMPLE, INCONCLUSIVE)
SUCCESS = (PASS, CONSISTENT)

# JSON numbers beyond this are emitted as decimal strings
_SAFE_INT = 2 ** 53


def jsonable(v):
    """Convert library values into plain JSON data, keeping big ints exact."""
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v if -_SAFE_INT < v < _SAFE_INT else str(v)
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, float):
        return v
    if isinstance(v, dict):
        return {str(k): jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x) for x in v]
    coeffs = getattr(v, "coeffs", None)
    if coeffs is not None:
        return [jsonable(c) for c in coeffs]
    return str(v)


@dataclass
class VerifyReport:
    claim_id: str
    params: dict
    range: dict
    status: str
    first_counterexample: dict | None = None
    elapsed_ms: int = 0
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status in (FAIL, COUNTEREXAMPLE) and self.first_counterexample is None:
            raise ValueError(f"status {self.status} needs a counterexample")

    @property
    def ok(self) -> bool:
        return self.status in SUCCESS

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, indent=None) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    @classmethod
    def from_dict(cls, data: dict) -> "VerifyReport":
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "VerifyReport":
        return cls.from_dict(json.loads(text))


class Check:
    """Accumulates cases for one claim and produces a VerifyReport.

    Only the first counterexample is kept; later failures just bump a counter.
    """

    def __init__(self, claim_id: str, params=None, rng=None, conjecture=False):
        self.claim_id = claim_id
        self.params = jsonable(params or {})
        self.range = jsonable(rng or {})
        self.conjecture = conjecture
        self.cases = 0
        self.failures = 0
        self.counterexample = None
        self.details = {}
        self._t0 = time.perf_counter()

    def expect(self, ok: bool, **witness) -> bool:
        self.cases += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = jsonable(witness)
        return ok

    def equal(self, lhs, rhs, **where) -> bool:
        return self.expect(lhs == rhs, lhs=lhs, rhs=rhs, **where)

    @property
    def failed(self) -> bool:
        return self.failures > 0

    def report(self) -> VerifyReport:
        if self.failures:
            status = COUNTEREXAMPLE if self.conjecture else FAIL
        elif self.cases == 0:
            status = INCONCLUSIVE
        else:
            status = CONSISTENT if self.conjecture else PASS
        details = dict(self.details)
        details["cases"] = self.cases
        details["failures"] = self.failures
        return VerifyReport(
            claim_id=self.claim_id,
            params=self.params,
            range=self.range,
            status=status,
            first_counterexample=self.counterexample,
            elapsed_ms=int((time.perf_counter() - self._t0) * 1000),
            details=jsonable(details),
        )
