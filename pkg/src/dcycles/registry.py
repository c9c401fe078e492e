"""Claim registry: every verifiable statement under a stable id, in suite order."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import divisors, families, padic, period, properties
from .errors import InvalidParameter
from .report import Check, VerifyReport
from .seq import check_oracle_equivalence

THEOREM = "theorem"
CONJECTURE = "conjecture"
# a check of a statement as printed where the printed form is known to be wrong
ERRATUM = "as-printed"


@dataclass(frozen=True)
class Claim:
    claim_id: str
    group: int
    kind: str
    statement: str
    runner: Callable[[dict], VerifyReport]
    # name of the parameter that the global n_max setting overrides, if any
    scale: str | None = "n_max"


def _one(params, key, default):
    v = params.get(key, default)
    if isinstance(v, (list, tuple)):
        if len(v) != 1:
            raise InvalidParameter(f"{key} takes a single value")
        v = v[0]
    return v


def _many(params, key, default):
    v = params.get(key, default)
    return list(v) if isinstance(v, (list, tuple)) else [v]


_ORDER = ("fail", "conjecture-counterexample", "inconclusive", "conjecture-consistent", "pass")


def _merge_all(claim_id, reports, params=None) -> VerifyReport:
    """Combine sub-reports: worst status wins, first counterexample is kept."""
    status = min((r.status for r in reports), key=_ORDER.index)
    cex = next(({"part": r.params, **r.first_counterexample}
                for r in reports if r.first_counterexample), None)
    details = {
        "cases": sum(r.details.get("cases", 0) for r in reports),
        "failures": sum(r.details.get("failures", 0) for r in reports),
        "parts": [{"params": r.params, "status": r.status} for r in reports],
    }
    return VerifyReport(claim_id, params or {}, {}, status, cex,
                        sum(r.elapsed_ms for r in reports), details)


def _per_value(claim_id, key, default, fn):
    def run(params):
        vals = _many(params, key, default)
        reps = [fn(v, params) for v in vals]
        if len(reps) == 1:
            return reps[0]
        return _merge_all(claim_id, reps, {key: vals})
    return run


def _section3(cid):
    return lambda params: period.verify_section3(cid, params)


def _hensel_tree(params):
    d = _one(params, "d", 2)
    p = _one(params, "p", 5)
    n1 = _one(params, "n1", 4)
    depth = _one(params, "depth", 2)
    tree = padic.hensel_classify(d, p, n1, depth)
    chk = Check("hensel-tree", {"d": d, "p": p, "n1": n1}, {"depth": depth})
    chk.details["levels"] = [list(x) for x in tree.levels]
    chk.details["fprime"] = tree.fprime
    if "expect" in params:
        chk.equal(tree.n_at(depth), _one(params, "expect", None), level=depth)
    elif (d, p, n1, depth) == (2, 5, 4, 2):
        chk.equal(tree.n_at(2), 24, level=2)
    else:
        chk.expect(bool(tree.levels), d=d, p=p, n1=n1)
    return chk.report()


def _w_cong(kind):
    return lambda params: families.check_w_congruences(kind, params)


_CLAIMS = [
    # exact values and oracles
    Claim("oracle-equivalence", 2, THEOREM,
          "H_d(n) by recurrence, closed form and permutation enumeration agree; same for H_d(n,x)",
          lambda p: check_oracle_equivalence(_one(p, "d_max", 6), _one(p, "n_max", 9))),
    # residues and periods
    Claim("Hp-1", 3, THEOREM, "H_{p-1}(n) mod p is 2 at n = -1 mod p and 1 otherwise", _section3("Hp-1")),
    Claim("Hp-2", 3, THEOREM, "H_{p-2}(n) mod p for p > 3", _section3("Hp-2")),
    Claim("d+1-composite", 3, THEOREM, "H_d(n) = 1 mod d+1 when d+1 is composite, d >= 5",
          _section3("d+1-composite")),
    Claim("d+2-composite", 3, THEOREM, "H_d(n) = 1 mod d+2 when d+2 is composite, d >= 4",
          _section3("d+2-composite")),
    Claim("d+k-composite", 3, THEOREM, "H_d(n) = 1 mod d+k for composite d+k and d large enough",
          _section3("d+k-composite")),
    Claim("pr-period", 3, THEOREM, "p^r is a period of H_d(n) mod p^r for p != d",
          _section3("pr-period"), None),
    Claim("pr-basic", 3, THEOREM,
          "p^r is the basic period of H_d(n) mod p^r over the whole grid p != d (literal reading)",
          _section3("pr-basic"), None),
    Claim("pr-basic-p-gt-d", 3, THEOREM, "p^r is the basic period of H_d(n) mod p^r when p > d",
          lambda p: period.verify_section3("pr-basic", dict(p, only_p_gt_d=True)), None),
    Claim("period-exceptions", 3, THEOREM, "basic periods 8, 8, 27 for (d,c) = (4,4), (5,16), (10,243)",
          _section3("period-exceptions"), None),
    Claim("hdnmodc", 3, THEOREM, "c (or 2c when d = 4 and 4 || c) is a period of H_d(n) mod c",
          _section3("hdnmodc"), None),
    Claim("ineqval", 3, THEOREM, "floor((d-2)/p) >= nu_p(d) for composite d, p | d, (p,d) != (2,4)",
          _section3("ineqval"), None),
    # p-adic
    Claim("gamma-bound", 4, THEOREM, "nu_p(H_p(n)) >= gamma_p(n), with equality when p | floor(n/p)",
          lambda p: padic.check_gamma_bound(tuple(_many(p, "p", [2, 3, 5, 7]))), None),
    Claim("hpmodp", 4, THEOREM, "the three congruences for H_p at kp^2 + jp + i",
          _per_value("hpmodp", "p", [3, 5, 7], lambda v, p: padic.check_hpmodp(v, _one(p, "k_max", 3))), None),
    Claim("hp-period-signed", 4, THEOREM, "signed normalized H_p(n) mod p has basic period p^2",
          _per_value("hp-period-signed", "p", [3, 5],
                     lambda v, p: padic.check_normalized_period(v, True, p.get("n_max")))),
    Claim("hp-period-unsigned", 4, THEOREM, "unsigned normalized H_p(n) mod p has basic period 2p^2",
          _per_value("hp-period-unsigned", "p", [3, 5],
                     lambda v, p: padic.check_normalized_period(v, False, p.get("n_max")))),
    Claim("bj", 4, THEOREM, "witnesses b_j with nu_p(H_p(kp^2 + jp + b_j)) = k(p-1) + j",
          lambda p: padic.check_bj(tuple(_many(p, "p", [2, 3, 5, 7])), _one(p, "k_max", 3)), None),
    Claim("wperiod", 4, THEOREM, "H_p(n)/p^(floor(n/p^2)(p-1)) mod p^w has period p^(2w+1)(p-1)",
          lambda p: _merge_all("wperiod", [padic.check_wperiod_theorem(a, b, p.get("n_max"))
                                           for a, b in _pw_pairs(p)])),
    Claim("h2-mod4-period16", 4, THEOREM, "odd part of H_2(n) mod 4 has period 16",
          lambda p: padic.check_h2_mod4_period16(_one(p, "n_max", 600))),
    Claim("sumprodrecip", 4, THEOREM, "h_k(1, 1/2, ..., 1/(p-1)) mod p is 1 if (p-1) | k, else 0",
          _per_value("sumprodrecip", "p", [3, 5, 7], lambda v, p: padic.check_sumprodrecip(v, _one(p, "k_max", 8))),
          None),
    # Hensel lifting
    Claim("hensel-sweep", 5, THEOREM,
          "roots of H_d mod p lift uniquely except at (2,19,6) and (3,13,7), where f' = 0 mod p",
          lambda p: padic.hensel_sweep(tuple(_many(p, "d", [2, 3, 4, 5])), _one(p, "primes", 25),
                                       _one(p, "depth", 2)), None),
    Claim("hensel-tree", 5, THEOREM, "the lift of the root 4 of H_2 mod 5 is 24 mod 25", _hensel_tree, None),
    # W family
    Claim("w-routes", 6, THEOREM, "W_{d,m} by derivative recurrence, fixed-length recurrence, closed forms",
          lambda p: families.check_w_routes(_one(p, "d_max", 5), _one(p, "m_max", p.get("n_max", 40)))),
    Claim("w2-values", 6, THEOREM, "W_{2,n}(-1) and the recurrence for W_{2,n}(1)",
          lambda p: families.check_w2_values(_one(p, "n_max", 40))),
    Claim("wpp", 6, THEOREM, "W_{p,p} = x^(p(p-1)) mod p", _w_cong("wpp"), None),
    Claim("w-mod-d-1", 6, THEOREM, "W_{d,m} = (1 + x^(d-1))^m mod d-1",
          lambda p: families.check_w_congruences("mod-d-1", dict(p, m_max=_one(p, "m_max", p.get("n_max", 30))))),
    Claim("w-period", 6, THEOREM, "x^(p(1-p)floor(m/p)) W_{p,m} mod p has basic period p",
          _w_cong("w-period"), None),
    Claim("w-period-printed", 6, ERRATUM, "the repeating blocks (1, 1+x) and (1, 1+x^2, (x+2)(x^3+x^2)) verbatim",
          _w_cong("w-period-printed"), None),
    Claim("w-ogf", 6, THEOREM, "W_{d,n} = (1+x^(d-1))^n + sum_k (1+x^(d-1))^(n-k) W'_{d,k-1}",
          lambda p: families.check_w_congruences("ogf-relation", p)),
    # H_d(n,x), V, Lah
    Claim("hpoly-mod-d", 7, THEOREM, "H_d(n,x) mod d: x^n, the d = 4 correction, or x^(n mod d)(x-1)^(d floor(n/d))",
          _per_value("hpoly-mod-d", "d", list(range(3, 9)),
                     lambda v, p: families.check_hpoly_mod_d(v, _one(p, "n_max", 100)))),
    Claim("hpoly-hankel-congruences", 7, THEOREM,
          "H(n-d,x)H(n+d,x) = H(n,x)^2 mod (d-1)!, and mod d! exactly when d is p or p^2",
          _per_value("hpoly-hankel-congruences", "d", [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12],
                     lambda v, p: families.check_hpoly_hankel_congruences(v, _one(p, "n_max", 60)))),
    Claim("v-positivity", 7, THEOREM, "V(n,x): both routes, degree n-1, a(0,n), a(1,n), a(i,n) > 0",
          lambda p: families.check_v_positivity(_one(p, "n_max", 40))),
    Claim("lah-routes", 7, THEOREM, "R_n(x) recurrence with C(n-1,i) matches the Lah numbers",
          lambda p: families.check_lah_routes(_one(p, "n_max", 15))),
    Claim("idenL", 7, THEOREM, "(i+1)a(i+1,n+2)/(n+1) as a sum of Lah numbers, and its polynomial form",
          lambda p: families.check_idenL(_one(p, "n_max", 15))),
    Claim("deriv-identities", 7, ERRATUM, "the two derivative identities for H_d(n,x) as printed",
          _per_value("deriv-identities", "d", [2, 3, 4, 5],
                     lambda v, p: families.check_deriv_identities(v, _one(p, "n_max", 20), printed=True))),
    Claim("deriv-identities-corrected", 7, THEOREM,
          "the derivative identities with (n+d-2)_(d-2) and H'_d(n+1,x)",
          _per_value("deriv-identities-corrected", "d", [2, 3, 4, 5],
                     lambda v, p: families.check_deriv_identities(v, _one(p, "n_max", 20), printed=False))),
    Claim("log-convexity", 7, THEOREM, "H_2(n,x) is log-convex for x >= 1",
          lambda p: families.check_log_convexity(_one(p, "n_max", 200))),
    Claim("u-positivity", 7, CONJECTURE, "V_d(n,x) from U_d has degree 2floor(n/d)-1 and positive coefficients",
          _per_value("u-positivity", "d", [3, 4, 5],
                     lambda v, p: families.check_u_positivity(v, _one(p, "n_max", 30)))),
    # summatory sequence, identities, Hankel
    Claim("g-recurrence", 8, THEOREM, "the G_d recurrence reproduces the running sum of H_d",
          lambda p: divisors.check_g_recurrence(_one(p, "d_max", 6), _one(p, "n_max", 200))),
    Claim("g3-valuation", 8, CONJECTURE, "nu_3(G_3(9n+k)) piecewise formula",
          lambda p: divisors.scan_G_valuation_conjecture(3, _one(p, "n_max", 450))),
    Claim("g5-valuation", 8, CONJECTURE, "nu_5(G_5(25n+k)) piecewise formula",
          lambda p: divisors.scan_G_valuation_conjecture(5, _one(p, "n_max", 500))),
    Claim("hankel", 8, CONJECTURE,
          "det [H_d(i+j,x)] is an integer divisible by prod i!, equal to it for d = 2, zero iff n = 2..d-1 mod d",
          _per_value("hankel", "d", [2, 3, 4, 5],
                     lambda v, p: divisors.hankel_conjecture_scan(v, _one(p, "n_max", 7)))),
    Claim("identities", 8, THEOREM, "the binomial-sum identities (1)-(7) for H_d and the G_d corollary",
          lambda p: _identities(p)),
    # divisor statistics
    Claim("table1", 1, THEOREM, "N = |P_d among the first K primes| for d = 2..10, K = 4000",
          lambda p: divisors.check_table1(_one(p, "primes", 4000), _one(p, "jobs", 1)), None),
    Claim("scan-kernel", 1, THEOREM, "compiled membership scan matches the pure-Python residue engine",
          lambda p: divisors.check_scan_kernel(_one(p, "d_max", 10), _one(p, "primes", 300)), None),
    Claim("gcd-theorem", 0, THEOREM, "gcd(H_d(n) - 1, n) is n, n/2 or n/d^nu_d(n)",
          _per_value("gcd-theorem", "d", list(range(2, 11)),
                     lambda v, p: divisors.gcd_theorem_check(v, _one(p, "n_max", 300)))),
    Claim("2d1-equivalences", 0, THEOREM, "2d+1 | H_d(3d+2) iff 2d+1 | d!-1, the odd-d variants and quadruples",
          lambda p: divisors.check_2d1_equivalences(_one(p, "d_max", 40)), None),
    # randomized properties
    Claim("properties", 9, THEOREM, "nu_p axioms, falling factorials, ring axioms, Bareiss vs cofactor",
          lambda p: properties.check_all_properties(_one(p, "cases", 1000)), None),
]


def _pw_pairs(params):
    if "p" in params and "w" in params:
        return [(_one(params, "p", 3), _one(params, "w", 1))]
    return [(3, 1), (5, 1), (3, 2)]


def _identities(params):
    if "id" in params:
        ident = _one(params, "id", 1)
        d = _one(params, "d", 2)
        return divisors.verify_identity(ident, d, _one(params, "n_max", 20))
    return divisors.verify_all_identities(_one(params, "d_max", 6), _one(params, "n_max", 20))


REGISTRY = {c.claim_id: c for c in _CLAIMS}
CLAIM_IDS = tuple(REGISTRY)


def get(claim_id: str) -> Claim:
    try:
        return REGISTRY[claim_id]
    except KeyError:
        raise InvalidParameter(f"unknown claim id {claim_id!r}") from None


def run_claim(claim_id: str, params: dict | None = None) -> VerifyReport:
    claim = get(claim_id)
    params = dict(params or {})
    if params.get("n_max") == 0:
        # empty range: nothing checked, nothing claimed
        return Check(claim_id, params, {"n_max": 0}, conjecture=claim.kind == CONJECTURE).report()
    if claim.scale is None:
        params.pop("n_max", None)
    rep = claim.runner(params)
    rep.claim_id = claim_id
    return rep
