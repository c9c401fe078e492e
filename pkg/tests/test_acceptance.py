"""Acceptance suite: one printed PASS/FAIL line per criterion.

Run standalone with `python3 tests/test_acceptance.py`, or under pytest where
each criterion is its own test and the line is written to the terminal.
Three criteria are worded against statements that do not hold as written;
their lines print FAIL and the tests fail. The supplementary lines show the
corrected readings.
"""
from __future__ import annotations

import sys
import time

import pytest

from dcycles.registry import CONJECTURE, get, run_claim
from dcycles.report import CONSISTENT, PASS

# (label, description, claim ids)
CRITERIA = [
    ("1", "divisor table bit-exact, K = 4000", ["table1", "scan-kernel"]),
    ("2", "oracle equivalence, d <= 6, n <= 9", ["oracle-equivalence"]),
    ("3", "basic period p^r on the full grid p != d, plus exceptions",
     ["pr-basic", "period-exceptions"]),
    ("3-period", "p^r is a period on the full grid, plus exceptions",
     ["pr-period", "period-exceptions"]),
    ("3-p>d", "p^r is the basic period for p > d, plus exceptions",
     ["pr-basic-p-gt-d", "period-exceptions"]),
    ("4", "p-adic congruences, normalized periods, b_j, W-periods",
     ["hpmodp", "hp-period-signed", "hp-period-unsigned", "bj", "wperiod", "h2-mod4-period16"]),
    ("5", "Hensel sweep and the (2,5) tree", ["hensel-sweep", "hensel-tree"]),
    ("6", "W routes, W_pp, mod d-1, W-period with printed blocks verbatim",
     ["w-routes", "wpp", "w-mod-d-1", "w-period", "w-period-printed"]),
    ("7", "fixed-point polynomial suite with derivative identities as printed",
     ["hpoly-mod-d", "hpoly-hankel-congruences", "v-positivity", "idenL",
      "deriv-identities", "log-convexity"]),
    ("7-corrected", "same suite with the corrected derivative identities",
     ["hpoly-mod-d", "hpoly-hankel-congruences", "v-positivity", "idenL",
      "deriv-identities-corrected", "log-convexity"]),
    ("8", "G recurrence, G valuations, Hankel determinants, identities",
     ["g-recurrence", "g3-valuation", "g5-valuation", "hankel", "identities"]),
    ("9", "property suites, 1000 cases each", ["properties"]),
]

_cache: dict = {}


def _report(cid):
    if cid not in _cache:
        _cache[cid] = run_claim(cid)
    return _cache[cid]


def evaluate(label, desc, cids):
    """Return (ok, line) for one criterion."""
    t0 = time.perf_counter()
    parts, ok = [], True
    for cid in cids:
        rep = _report(cid)
        want = CONSISTENT if get(cid).kind == CONJECTURE else PASS
        ok = ok and rep.status == want
        note = rep.status
        if rep.first_counterexample and rep.status != want:
            note += f" at {rep.first_counterexample}"
        parts.append(f"{cid}={note}")
    secs = time.perf_counter() - t0
    line = f"{'PASS' if ok else 'FAIL'} criterion {label}: {desc} [{'; '.join(parts)}] ({secs:.1f}s)"
    return ok, line


@pytest.mark.parametrize("label,desc,cids", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(label, desc, cids, capsys):
    ok, line = evaluate(label, desc, cids)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


def test_table1_runtime_under_a_minute():
    rep = _report("table1")
    assert rep.elapsed_ms < 60_000, rep.elapsed_ms


def main() -> int:
    bad = 0
    for crit in CRITERIA:
        ok, line = evaluate(*crit)
        print(line, flush=True)
        bad += not ok
    print(f"{len(CRITERIA) - bad}/{len(CRITERIA)} lines pass")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
