"""Residues of H_d(n) modulo c and certified basic periods."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arith import divisors, is_prime, nu_p
from .errors import InvalidParameter
from .report import Check, VerifyReport
from .seq import SeqEngine


def residue_seq(d: int, c: int, n_max: int) -> list[int]:
    """H_d(n) mod c for n = 0..n_max."""
    if c < 1:
        raise InvalidParameter("c must be >= 1")
    return SeqEngine(d, modulus=c).take(n_max + 1)


@dataclass
class PeriodReport:
    d: int
    c: int
    basic_period: int | None
    preperiod: int | None
    verified_up_to: int
    state_period: int | None = None
    state_preperiod: int | None = None
    # (proper divisor q of the basic period, index n with seq(n) != seq(n+q))
    witness: list = field(default_factory=list)
    status: str = "certified"

    @property
    def certified(self) -> bool:
        return self.status == "certified"


def _coef_table(d: int, c: int) -> list[int]:
    """(m-1)_(d-1) mod c indexed by m mod c."""
    out = []
    for m in range(c):
        r = 1
        for i in range(d - 1):
            r = r * (m - 1 - i) % c
        out.append(r)
    return out


def _state_map(d: int, c: int):
    coef = _coef_table(d, c)

    # state at index n: (n mod c, (H(n-d+1), ..., H(n)) mod c)
    def step(s):
        k, w = s
        k1 = (k + 1) % c
        return k1, w[1:] + ((w[-1] + coef[k1] * w[0]) % c,)

    start = (0, (0,) * (d - 1) + (1 % c,))
    return start, step


def _brent(start, step, bound):
    """Brent's cycle finder; returns (mu, lam) or None if bound is hit."""
    power = lam = 1
    tortoise = start
    hare = step(start)
    steps = 1
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1
        steps += 1
        if steps > bound:
            return None
    tortoise = hare = start
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise = step(tortoise)
        hare = step(hare)
        mu += 1
    return mu, lam


def basic_period(d: int, c: int, search_bound: int = 10 ** 7) -> PeriodReport:
    """Exact basic period and preperiod of (H_d(n) mod c).

    The residue state is finite, so it is eventually periodic with some state
    period L from index mu on.  The residue sequence then has a basic period
    dividing L; each divisor is tested over one full state cycle, which is a
    proof, not a heuristic, because seq(n+q) - seq(n) is itself L-periodic.
    """
    if d < 2 or c < 1:
        raise InvalidParameter("need d >= 2 and c >= 1")
    start, step = _state_map(d, c)
    found = _brent(start, step, search_bound)
    if found is None:
        return PeriodReport(d, c, None, None, search_bound, status="inconclusive")
    mu, lam = found
    length = mu + 2 * lam
    seq = residue_seq(d, c, length - 1)
    best = lam
    for q in divisors(lam):
        if all(seq[n] == seq[n + q] for n in range(mu, mu + lam)):
            best = q
            break
    pre = mu
    while pre > 0 and seq[pre - 1] == seq[pre - 1 + best]:
        pre -= 1
    witness = []
    for q in divisors(best)[:-1]:
        for n in range(pre, pre + best):
            if seq[n] != seq[n + q]:
                witness.append((q, n))
                break
    return PeriodReport(d, c, best, pre, length - 1, lam, mu, witness)


def is_period(d: int, c: int, q: int, rep: PeriodReport | None = None) -> bool:
    """Is q a period of the whole sequence (H_d(n) mod c), n >= 0?"""
    rep = rep or basic_period(d, c)
    return rep.certified and rep.preperiod == 0 and q % rep.basic_period == 0


def _ps(params, key="p"):
    if key in params:
        v = params[key]
        return list(v) if isinstance(v, (list, tuple)) else [v]
    return list(params.get(key + "s", []))


def verify_section3(claim_id: str, params: dict) -> VerifyReport:
    """Check one of the statements about H_d(n) mod c over a parameter range."""
    fn = _SECTION3.get(claim_id)
    if fn is None:
        raise InvalidParameter(f"unknown periodicity claim {claim_id!r}")
    return fn(dict(params))


def _hp_minus_1(params):
    n_max = params.get("n_max", 100)
    ps = _ps(params) or [3, 5, 7, 11, 13]
    chk = Check("Hp-1", {"p": ps}, {"n_max": n_max})
    for p in ps:
        if p < 3 or not is_prime(p):
            raise InvalidParameter("Hp-1 needs odd primes")
        for n, r in enumerate(residue_seq(p - 1, p, n_max)):
            want = 2 if n % p == p - 1 else 1
            chk.equal(r, want, p=p, n=n)
    return chk.report()


def _hp_minus_2(params):
    n_max = params.get("n_max", 100)
    ps = _ps(params) or [5, 7, 11, 13]
    chk = Check("Hp-2", {"p": ps}, {"n_max": n_max})
    for p in ps:
        if p < 5 or not is_prime(p):
            raise InvalidParameter("Hp-2 needs primes p > 3")
        for n, r in enumerate(residue_seq(p - 2, p, n_max)):
            if n % p == p - 2:
                want = (p + 1) // 2
            elif n % p == p - 1:
                want = (p + 3) // 2
            else:
                want = 1
            chk.equal(r, want, p=p, n=n)
    return chk.report()


def _constant_one(claim_id, params, ok_d):
    d_max = params.get("d_max", 40)
    n_max = params.get("n_max", 120)
    k = params.get("k")
    chk = Check(claim_id, {"k": k} if k else {}, {"d_max": d_max, "n_max": n_max})
    for d, c in ok_d(d_max):
        res = residue_seq(d, c, n_max)
        bad = next((n for n, r in enumerate(res) if r != 1 % c), None)
        chk.expect(bad is None, d=d, c=c, n=bad, residue=None if bad is None else res[bad])
    return chk.report()


def _d_plus_1(params):
    return _constant_one("d+1-composite", params,
                         lambda dm: [(d, d + 1) for d in range(5, dm + 1) if not is_prime(d + 1)])


def _d_plus_2(params):
    return _constant_one("d+2-composite", params,
                         lambda dm: [(d, d + 2) for d in range(4, dm + 1) if not is_prime(d + 2)])


def _d_plus_k(params):
    ks = _ps(params, "k") or list(range(1, 9))
    out = None
    for k in ks:
        def cells(dm, k=k):
            res = []
            for d in range(max(k + 2, 3), dm + 1):
                # d >= 3 + 2 sqrt(k+2)  <=>  (d-3)^2 >= 4(k+2), d >= 3
                if (d - 3) ** 2 >= 4 * (k + 2) and not is_prime(d + k):
                    res.append((d, d + k))
            return res
        rep = _constant_one("d+k-composite", dict(params, k=k), cells)
        if out is None:
            out = rep
        else:
            out = _merge(out, rep)
    out.params = {"k": ks}
    return out


def _merge(a: VerifyReport, b: VerifyReport) -> VerifyReport:
    order = ["fail", "conjecture-counterexample", "inconclusive", "conjecture-consistent", "pass"]
    status = min(a.status, b.status, key=order.index)
    cex = a.first_counterexample or b.first_counterexample
    details = dict(a.details)
    details["cases"] = a.details.get("cases", 0) + b.details.get("cases", 0)
    details["failures"] = a.details.get("failures", 0) + b.details.get("failures", 0)
    return VerifyReport(a.claim_id, a.params, a.range, status, cex,
                        a.elapsed_ms + b.elapsed_ms, details)


def _grid(params):
    ds = _ps(params, "d") or [2, 3, 4, 5, 6]
    ps = _ps(params) or [2, 3, 5, 7, 11, 13]
    rs = _ps(params, "r") or [1, 2, 3]
    return ds, ps, rs


def _pr_period(params):
    ds, ps, rs = _grid(params)
    chk = Check("pr-period", {"d": ds, "p": ps, "r": rs})
    periods = {}
    for d in ds:
        for p in ps:
            for r in rs:
                if p == d or (d, p, r) == (4, 2, 2):
                    continue
                rep = basic_period(d, p ** r)
                periods[f"{d},{p},{r}"] = rep.basic_period
                chk.expect(is_period(d, p ** r, p ** r, rep), d=d, p=p, r=r,
                           basic_period=rep.basic_period, preperiod=rep.preperiod)
    chk.details["basic_periods"] = periods
    return chk.report()


def _pr_basic(params):
    ds, ps, rs = _grid(params)
    only_large = params.get("only_p_gt_d", False)
    chk = Check("pr-basic", {"d": ds, "p": ps, "r": rs, "only_p_gt_d": only_large})
    periods = {}
    for d in ds:
        for p in ps:
            if only_large and p <= d:
                continue
            for r in rs:
                if p == d or (d, p, r) == (4, 2, 2):
                    continue
                rep = basic_period(d, p ** r)
                periods[f"{d},{p},{r}"] = rep.basic_period
                chk.expect(rep.certified and rep.preperiod == 0 and rep.basic_period == p ** r,
                           d=d, p=p, r=r, basic_period=rep.basic_period, preperiod=rep.preperiod)
    chk.details["basic_periods"] = periods
    return chk.report()


EXCEPTIONS = {(4, 4): 8, (5, 16): 8, (10, 243): 27}


def _exceptions(params):
    chk = Check("period-exceptions", {"cases": [list(k) for k in EXCEPTIONS]})
    for (d, c), want in EXCEPTIONS.items():
        rep = basic_period(d, c)
        chk.expect(rep.certified and rep.preperiod == 0 and rep.basic_period == want,
                   d=d, c=c, expected=want, basic_period=rep.basic_period)
    return chk.report()


def _hdnmodc(params):
    d_max = params.get("d_max", 10)
    c_max = params.get("c_max", 60)
    chk = Check("hdnmodc", {}, {"d_max": d_max, "c_max": c_max})
    for d in range(2, d_max + 1):
        for c in range(2, c_max + 1):
            if is_prime(d) and c % d == 0:
                continue
            want = 2 * c if d == 4 and nu_p(c, 2) == 2 else c
            rep = basic_period(d, c)
            chk.expect(is_period(d, c, want, rep), d=d, c=c, claimed_period=want,
                       basic_period=rep.basic_period, preperiod=rep.preperiod)
    return chk.report()


def _ineqval(params):
    d_max = params.get("d_max", 200)
    chk = Check("ineqval", {}, {"d_max": d_max})
    for d in range(4, d_max + 1):
        if is_prime(d):
            continue
        for p in range(2, d + 1):
            if d % p or not is_prime(p) or (p, d) == (2, 4):
                continue
            chk.expect((d - 2) // p >= nu_p(d, p), d=d, p=p)
    return chk.report()


_SECTION3 = {
    "Hp-1": _hp_minus_1,
    "Hp-2": _hp_minus_2,
    "d+1-composite": _d_plus_1,
    "d+2-composite": _d_plus_2,
    "d+k-composite": _d_plus_k,
    "pr-period": _pr_period,
    "pr-basic": _pr_basic,
    "period-exceptions": _exceptions,
    "hdnmodc": _hdnmodc,
    "ineqval": _ineqval,
}

SECTION3_CLAIMS = tuple(_SECTION3)
