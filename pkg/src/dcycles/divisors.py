"""Prime divisors of H_d(n), the gcd theorem, the 2d+1 equivalences, and identity checks."""
from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from math import gcd

from .arith import (bernoulli, binomial, factorize, falling_factorial, first_primes,
                    is_prime, nu_p)
from .errors import InternalConsistencyError, InvalidParameter
from .families import h_poly_rec
from .poly import Poly, PolyMatrix, bareiss_det, cofactor_det, cyclic, negacyclic
from .report import Check, VerifyReport
from .seq import SeqEngine, g, h, h_list


# ---------------------------------------------------------------- prime divisor scans

@dataclass
class DivisorScanRow:
    d: int
    prime_count: int
    N: int

    @property
    def ratio(self) -> Decimal:
        r = Decimal(self.N) / Decimal(self.prime_count)
        return r.quantize(Decimal("0.00001"), rounding=ROUND_HALF_EVEN)


def window_member_py(d: int, p: int) -> bool:
    """Pure-Python reference: does p divide H_d(n) for some n in d..p-1?"""
    if p <= d:
        return False
    eng = SeqEngine(d, modulus=p)
    for n, r in enumerate(eng.take(p)):
        if n >= d and r == 0:
            return True
    return False


def membership_flags(d: int, primes) -> list[bool]:
    import numpy as np

    from ._kernels import membership

    return [bool(b) for b in membership(d, np.asarray(primes, dtype=np.int64))]


def recheck_sample(d: int, primes, flags, fraction: float = 0.01, seed: int = 0) -> int:
    """Re-derive membership of a random sample of flagged primes over 2p indices.

    Confirms the residue sequence repeats with period p over that stretch and
    that a zero appears inside the window. Returns the number of primes checked.
    """
    flagged = [p for p, f in zip(primes, flags) if f]
    if not flagged:
        return 0
    rng = random.Random(seed * 1000003 + d)
    k = max(1, round(len(flagged) * fraction))
    sample = sorted(rng.sample(flagged, k))
    for p in sample:
        seq = SeqEngine(d, modulus=p).take(2 * p)
        if not all(seq[n] == seq[n + p] for n in range(p)):
            raise InternalConsistencyError(f"H_{d} mod {p} is not p-periodic")
        if not any(seq[n] == 0 for n in range(d, p)):
            raise InternalConsistencyError(f"{p} flagged for d={d} but no zero in the window")
    return len(sample)


def scan_Pd(d: int, prime_count: int, recheck: float = 0.01, seed: int = 0) -> DivisorScanRow:
    if d < 2:
        raise InvalidParameter("d must be >= 2")
    if prime_count < 1:
        raise InvalidParameter("prime_count must be positive")
    primes = first_primes(prime_count)
    flags = membership_flags(d, primes)
    if recheck:
        recheck_sample(d, primes, flags, recheck, seed)
    return DivisorScanRow(d, prime_count, sum(flags))


TABLE1 = {2: 2509, 3: 2523, 4: 2511, 5: 2485, 6: 2518, 7: 2469, 8: 2518, 9: 2518, 10: 2499}


def table1(ds=range(2, 11), prime_count: int = 4000, jobs: int = 1) -> list[DivisorScanRow]:
    ds = list(ds)
    if jobs > 1 and len(ds) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(scan_Pd, ds, [prime_count] * len(ds)))
    return [scan_Pd(d, prime_count) for d in ds]


def table1_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "K", "N", "ratio"])
    for r in rows:
        w.writerow([r.d, r.prime_count, r.N, str(r.ratio)])
    return buf.getvalue()


def check_table1(prime_count: int = 4000, jobs: int = 1) -> VerifyReport:
    chk = Check("table1", {"d": list(TABLE1)}, {"primes": prime_count})
    rows = table1(TABLE1, prime_count, jobs)
    for r in rows:
        if prime_count == 4000:
            chk.equal(r.N, TABLE1[r.d], d=r.d)
        else:
            chk.expect(r.N >= 0, d=r.d)
    chk.details["N"] = {str(r.d): r.N for r in rows}
    chk.details["ratio"] = {str(r.d): str(r.ratio) for r in rows}
    return chk.report()


def check_scan_kernel(d_max: int = 10, prime_count: int = 300) -> VerifyReport:
    """The compiled membership test against the pure-Python one."""
    chk = Check("scan-kernel", {}, {"d_max": d_max, "primes": prime_count})
    primes = first_primes(prime_count)
    for d in range(2, d_max + 1):
        for p, f in zip(primes, membership_flags(d, primes)):
            chk.equal(f, window_member_py(d, p), d=d, p=p)
    return chk.report()


def density_scan(ds=range(2, 11), prime_count: int = 4000) -> list[dict]:
    """Share of the first K primes outside P_d, next to 1/e (raw data only)."""
    out = []
    for d in ds:
        row = scan_Pd(d, prime_count, recheck=0)
        miss = Fraction(prime_count - row.N, prime_count)
        out.append({"d": d, "K": prime_count, "outside": prime_count - row.N,
                    "share": f"{float(miss):.5f}", "one_over_e": f"{math.exp(-1):.5f}"})
    return out


# ---------------------------------------------------------------- gcd theorem

@dataclass
class GcdReport:
    d: int
    n: int
    predicted: int
    actual: int


def gcd_predicted(d: int, n: int) -> int:
    if is_prime(d):
        return n // d ** nu_p(n, d)
    if d == 4 and nu_p(n, 2) == 2:
        return n // 2
    return n


def gcd_report(d: int, n: int) -> GcdReport:
    return GcdReport(d, n, gcd_predicted(d, n), gcd(h(d, n) - 1, n))


def gcd_theorem_check(d: int, n_max: int = 300) -> VerifyReport:
    chk = Check("gcd-theorem", {"d": d}, {"n_max": n_max})
    for n in range(1, n_max + 1):
        r = gcd_report(d, n)
        chk.equal(r.actual, r.predicted, d=d, n=n)
    return chk.report()


# ---------------------------------------------------------------- 2d+1

def check_2d1_equivalences(d_max: int = 40) -> VerifyReport:
    chk = Check("2d1-equivalences", {}, {"d_max": d_max})
    quads = []
    for d in range(3, d_max + 1):
        q = 2 * d + 1
        f = math.factorial(d)
        chk.equal(h(d, 3 * d + 2) % q == 0, (f - 1) % q == 0, d=d, item="H_d(3d+2)")
        if d % 2 == 0:
            continue
        sq = (f * f - 1) % q == 0
        chk.equal(h(q, 3 * d + 2) % q == 0, sq, d=d, item="H_2d+1(3d+2)")
        chk.equal(h(d, 4 * d) % q == 0, (f + 1) % q == 0, d=d, item="H_d(4d)")
        chk.equal(h(q, 4 * d) % q == 0, sq, d=d, item="H_2d+1(4d)")
        chk.equal(sq, is_prime(q), d=d, item="(d!)^2-1 vs primality")
        if is_prime(q):
            n = ((f - 1) % q == 0) * (3 * d + 2) + ((f + 1) % q == 0) * (4 * d)
            chk.expect(n > 0 and gcd(h(d, n), h(q, n)) % q == 0, d=d, n=n, item="quadruple")
            quads.append((d, q, n, q))
    chk.details["quadruples"] = quads
    return chk.report()


# ---------------------------------------------------------------- identities

def _identity_sides(ident, d: int, n: int):
    H = lambda k: h(d, k)
    C = binomial
    if ident == 1:
        lhs = sum(C(n, k) * (-1) ** (n - k) * H(k) for k in range(n + 1))
        m = n // d
        rhs = math.factorial(n) // (math.factorial(m) * d ** m) if n % d == 0 else 0
        return lhs, rhs
    if ident in (2, 3):
        lhs = sum(C(n, k) * (-1) ** k * H(k) * H(n - k) for k in range(n + 1))
        if ident == 2:
            return lhs, 0
        m = n // d
        rhs = Fraction(math.factorial(n), math.factorial(m)) / Fraction(d, 2) ** m if n % d == 0 else 0
        return lhs, rhs
    if ident == 4:
        R = cyclic(d)
        z = Poly.x(R)
        acc = Poly.zero(R)
        for k in range(n + 1):
            acc = acc + (z - 1) ** k * (C(n, k) * H(n - k))
        # multiplied through by zeta^n
        return Poly.monomial(n, H(n), R), acc
    if ident == 5:
        R = negacyclic(d)
        z = Poly.x(R)
        lhs = Poly.zero(R)
        for k in range(n + 1):
            lhs = lhs + z ** k * (C(n, k) * H(k) * H(n - k))
        return lhs, (z + 1) ** n
    if ident == 6:
        lhs = sum(Fraction(C(n, 2 * k) * 2 ** (n - 2 * k), 2 * k + 1) * bernoulli(n - 2 * k) * H(2 * k + 1)
                  for k in range(n // 2 + 1))
        return lhs, (-1) ** n * H(n)
    if ident == 7:
        return H(n), 1 + sum(falling_factorial(i - 1, d - 1) * H(i - d) for i in range(1, n + 1))
    if ident == "G-corollary":
        lhs = sum((-1) ** (n - i) * C(n, i) * g(d, i - 1) for i in range(n + 1))
        if n >= 1 and (n - 1) % d == 0:
            m = (n - 1) // d
            rhs = math.factorial(m * d) // (d ** m * math.factorial(m))
        else:
            rhs = 0
        return lhs, rhs
    raise InvalidParameter(f"unknown identity {ident!r}")


IDENTITIES = (1, 2, 3, 4, 5, 6, 7, "G-corollary")


def identity_applies(ident, d: int) -> bool:
    if ident == 2:
        return d >= 3 and d % 2 == 1
    if ident in (3, 6):
        return d % 2 == 0
    return True


def verify_identity(ident, d: int, n_max: int = 20) -> VerifyReport:
    if isinstance(ident, str) and ident.isdigit():
        ident = int(ident)
    if ident not in IDENTITIES:
        raise InvalidParameter(f"unknown identity {ident!r}")
    if not identity_applies(ident, d):
        raise InvalidParameter(f"identity {ident} does not apply to d={d}")
    chk = Check(f"identity-{ident}", {"d": d}, {"n_max": n_max})
    n0 = 1 if ident in (2, 3) else 0
    for n in range(n0, n_max + 1):
        lhs, rhs = _identity_sides(ident, d, n)
        chk.equal(lhs, rhs, d=d, n=n)
    return chk.report()


def verify_all_identities(d_max: int = 6, n_max: int = 20) -> VerifyReport:
    chk = Check("identities", {"id": list(IDENTITIES)}, {"d_max": d_max, "n_max": n_max})
    for ident in IDENTITIES:
        for d in range(2, d_max + 1):
            if not identity_applies(ident, d):
                continue
            rep = verify_identity(ident, d, n_max)
            chk.expect(rep.ok, identity=ident, d=d, counterexample=rep.first_counterexample)
    return chk.report()


# ---------------------------------------------------------------- G_d

def check_g_recurrence(d_max: int = 6, n_max: int = 200) -> VerifyReport:
    """G from its own recurrence against the running sum, and the '+G(n-2)' variant."""
    from .seq import GEngine, g_printed_recurrence

    chk = Check("g-recurrence", {}, {"d_max": d_max, "n_max": n_max})
    diverge = {}
    for d in range(2, d_max + 1):
        eng = GEngine(d)
        run = 0
        for n, hv in enumerate(h_list(d, n_max)[: n_max + 1]):
            run += hv
            chk.equal(eng.step(), run, d=d, n=n)
        plus = g_printed_recurrence(d, n_max)
        sums = [g(d, n) for n in range(n_max + 1)]
        diverge[str(d)] = next((n for n in range(n_max + 1) if plus[n] != sums[n]), None)
    chk.details["plus_sign_variant_first_divergence"] = diverge
    return chk.report()


G3_TABLE = {0: 0, 1: 0, 2: 1, 3: 1, 4: 1, 5: 2, 6: 2, 7: 2}
G5_TABLE = {0: 0, 1: 0, 2: 0, 3: 0, 4: 1, 5: 1, 7: 1, 6: 2, 8: 2, 9: 2, 10: 2, 11: 2,
            12: 3, 13: 3, 14: 3, 16: 3, 17: 3, 18: 3, 15: 4, 20: 4, 21: 4, 22: 4, 23: 4, 19: 5}


def g_valuation_formula(p: int, idx: int) -> int:
    n, k = divmod(idx, p * p)
    if p == 3:
        return 2 * n + 5 + nu_p(n + 1, 3) if k == 8 else 2 * n + G3_TABLE[k]
    if p == 5:
        return 4 * n + 6 + nu_p(n + 1, 5) if k == 24 else 4 * n + G5_TABLE[k]
    raise InvalidParameter("formula known for p in {3, 5}")


def scan_G_valuation_conjecture(p: int, n_max: int) -> VerifyReport:
    if p not in (3, 5):
        raise InvalidParameter("p must be 3 or 5")
    chk = Check(f"g{p}-valuation", {"p": p}, {"n_max": n_max}, conjecture=True)
    run = 0
    for idx, hv in enumerate(h_list(p, n_max)[: n_max + 1]):
        run += hv
        chk.equal(nu_p(run, p), g_valuation_formula(p, idx), index=idx)
    return chk.report()


# ---------------------------------------------------------------- Hankel determinants

def hankel_matrix(d: int, n: int) -> PolyMatrix:
    return PolyMatrix([[h_poly_rec(d, i + j) for j in range(n)] for i in range(n)])


def superfactorial(n: int) -> int:
    """prod_{i<n} i!."""
    return math.prod(math.factorial(i) for i in range(n))


def hankel_dets(d: int, n_max: int) -> list:
    return [bareiss_det(hankel_matrix(d, n)) for n in range(1, n_max + 1)]


def hankel_conjecture_scan(d: int, n_max: int = 7, cross_check_upto: int = 5) -> VerifyReport:
    if n_max > 10:
        raise InvalidParameter("determinant scan limited to n <= 10")
    chk = Check("hankel", {"d": d}, {"n_max": n_max}, conjecture=True)
    dets = {}
    for n in range(1, n_max + 1):
        M = hankel_matrix(d, n)
        det = bareiss_det(M)
        if n <= cross_check_upto and det != cofactor_det(M):
            raise InternalConsistencyError(f"Bareiss and cofactor disagree for d={d} n={n}")
        dets[str(n)] = str(det)
        constant = det.degree <= 0
        chk.expect(constant, d=d, n=n, det=str(det), reason="not constant")
        if not constant:
            continue
        val = det.coeff(0)
        sf = superfactorial(n)
        chk.expect(val % sf == 0, d=d, n=n, det=val, reason="superfactorial divisibility")
        if d == 2:
            chk.equal(val, sf, d=d, n=n, reason="closed form")
        else:
            chk.equal(val == 0, 2 <= n % d <= d - 1, d=d, n=n, det=val, reason="vanishing pattern")
    chk.details["det"] = dets
    return chk.report()


# ---------------------------------------------------------------- questions

def collision_search(a: int, b: int, n_max: int, m_max: int):
    """Pairs (n, m), n >= a, m >= b, with H_a(n) = H_b(m). Returns (pairs, reason)."""
    if not 2 <= a < b:
        raise InvalidParameter("need 2 <= a < b")
    if is_prime(a):
        return [], "a-prime"
    A = h_list(a, n_max)
    B = h_list(b, m_max)
    out = []
    i, j = a, b
    # both sequences strictly increase from index d on
    while i <= n_max and j <= m_max:
        if A[i] == B[j]:
            out.append((i, j))
            i += 1
            j += 1
        elif A[i] < B[j]:
            i += 1
        else:
            j += 1
    return out, "searched"


def common_divisor_triples(ab_max: int = 10, n_max: int = 60) -> list:
    """(a, b, n, c) with c > 1 coprime to ab and c | gcd(H_a(n), H_b(n)); raw data."""
    out = []
    for a in range(2, ab_max + 1):
        for b in range(a + 1, ab_max + 1):
            bad = set(factorize(a * b))
            for n in range(n_max + 1):
                c = gcd(h(a, n), h(b, n))
                for q in bad:
                    while c % q == 0:
                        c //= q
                if c > 1:
                    out.append((a, b, n, c))
    return out


def coprime_pairs(ab_max: int = 10, n_max: int = 60) -> list:
    """Pairs (a, b) with gcd(H_a(n), H_b(n)) = 1 for every n <= n_max; raw data."""
    return [(a, b) for a in range(2, ab_max + 1) for b in range(a + 1, ab_max + 1)
            if all(gcd(h(a, n), h(b, n)) == 1 for n in range(n_max + 1))]
