"""p-adic behaviour of H_d(n): valuation bounds, congruences, Hensel lifting."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (INFINITY, divisors, falling_factorial, first_primes, is_prime,
                    nu_p, rat_mod, rat_mod_prime_power, strip_p)
from .errors import BudgetExceeded, InternalConsistencyError, InvalidParameter, TheoremViolation
from .period import PeriodReport
from .report import Check, VerifyReport
from .seq import SeqEngine, h, h_list


def gamma(p: int, n: int) -> int:
    """floor(n/p^2)(p-1) + (floor(n/p) mod p), a lower bound for nu_p(H_p(n))."""
    if n < 0:
        raise InvalidParameter("n must be >= 0")
    return (n // (p * p)) * (p - 1) + (n // p) % p


def check_gamma_bound(ps=(2, 3, 5, 7), factor: int = 4) -> VerifyReport:
    chk = Check("gamma-bound", {"p": list(ps)}, {"n_max": f"{factor}p^2"})
    for p in ps:
        hs = h_list(p, factor * p * p)
        for n, v in enumerate(hs):
            g = gamma(p, n)
            nu = nu_p(v, p)
            chk.expect(nu >= g, p=p, n=n, nu=nu, gamma=g)
            if (n // p) % p == 0:
                chk.expect(nu == g, p=p, n=n, nu=nu, gamma=g, kind="equality")
    return chk.report()


def complete_homogeneous(t: int, m: int) -> Fraction:
    """h_t(1, 1/2, ..., 1/m) = sum over 1 <= l_t <= ... <= l_1 <= m of 1/(l_1...l_t)."""
    # row[s] = h_s over the variables seen so far
    row = [Fraction(1)] + [Fraction(0)] * t
    for l in range(1, m + 1):
        x = Fraction(1, l)
        for s in range(1, t + 1):
            row[s] += x * row[s - 1]
    return row[t]


def check_hpmodp(p: int, k_max: int = 3) -> VerifyReport:
    """The three congruence families for H_p at n = kp^2 + jp + i."""
    if p < 3 or not is_prime(p):
        raise InvalidParameter("needs an odd prime")
    chk = Check("hpmodp", {"p": p}, {"k_max": k_max})
    hs = h_list(p, (k_max + 1) * p * p)
    for k in range(k_max + 1):
        base = k * p * p
        e = k * (p - 1)
        v = hs[base]
        chk.expect((v - (-1) ** k * p ** e) % p ** (e + 1) == 0, family=1, p=p, k=k)
        for j in range(p):
            chk.expect(hs[base + j * p] % p ** (e + j) == 0, family=2, p=p, k=k, j=j)
            for i in range(p):
                rhs = Fraction(hs[base + j * p])
                for t in range(1, j + 1):
                    rhs += ((-1) ** t * falling_factorial(j, t) * p ** t
                            * hs[base + (j - t) * p] * complete_homogeneous(t, i))
                diff = hs[base + j * p + i] - rhs
                ok = diff == 0 or nu_p(diff, p) >= e + j + 1
                chk.expect(ok, family=3, p=p, k=k, j=j, i=i)
    return chk.report()


def check_sumprodrecip(p: int, k_max: int = 8) -> VerifyReport:
    chk = Check("sumprodrecip", {"p": p}, {"k_max": k_max})
    for k in range(1, k_max + 1):
        s = complete_homogeneous(k, p - 1)
        want = 1 if k % (p - 1) == 0 else 0
        chk.equal(rat_mod(s, p), want, p=p, k=k)
    return chk.report()


def normalized_seq(p: int, n_max: int, signed: bool) -> list[int]:
    """(-1)^floor(n/p^2) H_p(n) / p^gamma(n) mod p, or unsigned."""
    out = []
    for n, v in enumerate(h_list(p, n_max)):
        g = gamma(p, n)
        q, r = divmod(v, p ** g)
        if r:
            raise InternalConsistencyError(f"p^gamma does not divide H_{p}({n})")
        if signed and (n // (p * p)) % 2:
            q = -q
        out.append(q % p)
    return out


def smallest_window_period(seq: list, max_q: int | None = None):
    """Smallest q with seq[n] = seq[n+q] over the whole list, plus witnesses."""
    N = len(seq)
    max_q = max_q or N // 2
    for q in range(1, max_q + 1):
        if all(seq[n] == seq[n + q] for n in range(N - q)):
            witness = []
            for r in divisors(q)[:-1]:
                n = next(n for n in range(N - r) if seq[n] != seq[n + r])
                witness.append((r, n))
            return q, witness
    return None, []


def normalized_period(p: int, signed: bool, n_max: int | None = None) -> PeriodReport:
    if p < 3 or not is_prime(p):
        raise InvalidParameter("needs an odd prime")
    n_max = n_max if n_max is not None else 6 * p * p
    if n_max < 4 * p * p:
        raise InvalidParameter("window must cover at least 4p^2 terms")
    seq = normalized_seq(p, n_max, signed)
    q, witness = smallest_window_period(seq)
    status = "certified" if q else "inconclusive"
    return PeriodReport(p, p, q, 0 if q else None, n_max, witness=witness, status=status)


def check_normalized_period(p: int, signed: bool, n_max: int | None = None) -> VerifyReport:
    rep = normalized_period(p, signed, n_max)
    want = p * p if signed else 2 * p * p
    cid = "hp-period-signed" if signed else "hp-period-unsigned"
    chk = Check(cid, {"p": p}, {"n_max": rep.verified_up_to})
    chk.equal(rep.basic_period, want, p=p, signed=signed)
    chk.details["basic_period"] = rep.basic_period
    return chk.report()


@dataclass
class BjWitness:
    p: int
    b: list

    def check_invariants(self) -> bool:
        p, b = self.p, self.b
        return (b[0] == p - 1
                and all(b[j - 1] - b[j] in (0, 1) for j in range(1, p))
                and all(b[j] >= p - j - 1 for j in range(p)))


def find_bj(p: int, k_max: int = 3) -> BjWitness:
    """b_0 = p-1, then b_j in {b_{j-1}, b_{j-1}-1} with nu_p(H_p(jp+b_j)) = j.

    When both candidates work the larger one, b_{j-1}, is kept.
    """
    if not is_prime(p):
        raise InvalidParameter("p must be prime")
    b = [p - 1]
    for j in range(1, p):
        for cand in (b[-1], b[-1] - 1):
            if cand >= 0 and nu_p(h(p, j * p + cand), p) == j:
                b.append(cand)
                break
        else:
            raise TheoremViolation(f"no b_{j} for p={p}", {"p": p, "j": j})
    wit = BjWitness(p, b)
    for k in range(k_max + 1):
        for j in range(p):
            n = k * p * p + j * p + b[j]
            if nu_p(h(p, n), p) != k * (p - 1) + j:
                raise TheoremViolation(f"valuation off at n={n}", {"p": p, "k": k, "j": j})
    return wit


def check_bj(ps=(2, 3, 5, 7), k_max: int = 3) -> VerifyReport:
    chk = Check("bj", {"p": list(ps)}, {"k_max": k_max})
    found = {}
    for p in ps:
        try:
            wit = find_bj(p, k_max)
        except TheoremViolation as exc:
            chk.expect(False, **exc.witness)
            continue
        found[str(p)] = wit.b
        chk.expect(wit.check_invariants(), p=p, b=wit.b)
    chk.details["b"] = found
    return chk.report()


def fprime_mod_p(d: int, p: int, n: int) -> int:
    """f'_d(n) mod p from the two finite sums (exact rationals, reduced at the end)."""
    if p <= d or not is_prime(p):
        raise InvalidParameter("needs a prime p > d")
    total = Fraction(0)
    for k in range(1, n // d + 1):
        den = math.factorial(k) * d ** k
        acc = 0
        for j in range(d * k):
            acc += falling_factorial(n, j) * falling_factorial(n - j - 1, d * k - j - 1)
        total += Fraction(acc, den)
    upper = -(-(n + p + 1) // (d - 1))  # ceiling
    nf = math.factorial(n)
    for k in range(n // d + 1, upper):
        m = d * k - n - 1
        total += Fraction((-1) ** m * nf * math.factorial(m), math.factorial(k) * d ** k)
    if total != 0 and nu_p(total, p) < 0:
        raise TheoremViolation("f' has negative valuation", {"d": d, "p": p, "n": n})
    return rat_mod(total, p)


def fprime_by_difference(d: int, p: int, n: int) -> int:
    """(H_d(n+p) - H_d(n)) / p mod p, equal to f'_d(n) mod p when d >= 3 or p | H_2(n)."""
    eng = SeqEngine(d, modulus=p * p)
    vals = eng.take(n + p + 1)
    diff = (vals[n + p] - vals[n]) % (p * p)
    if diff % p:
        raise TheoremViolation("H_d(n+p) and H_d(n) differ mod p", {"d": d, "p": p, "n": n})
    return diff // p


UNIQUE = "unique-lift"
DEAD = "dead-end"
SPLIT = "full-split"
CONSTANT = "constant-valuation"


@dataclass
class ValuationTree:
    d: int
    p: int
    n1: int
    fprime: int
    # (k, n_k mod p^k, kind, number of lifts to level k+1)
    levels: list = field(default_factory=list)
    shortcut: str = ""

    @property
    def kind(self) -> str:
        return self.levels[0][2] if self.levels else ""

    def n_at(self, k: int):
        for lvl, nk, _, _ in self.levels:
            if lvl == k:
                return nk
        return None


PROBE_LIMIT = 10 ** 7


def _residues(d, modulus, n_max):
    return SeqEngine(d, modulus=modulus).take(n_max + 1)


def valuation_probe(d: int, p: int, n1: int) -> str:
    """The shortcut: look only at nu_p of H_d(n1) and a few shifted indices."""
    res = _residues(d, p * p, n1 + p * (p - 1))

    def nu_at_least_2(n):
        return res[n] == 0

    if not nu_at_least_2(n1):
        if any(nu_at_least_2(n1 + p * t) for t in range(1, p)):
            return UNIQUE
        return CONSTANT
    return UNIQUE if not nu_at_least_2(n1 + p) else SPLIT


def hensel_classify(d: int, p: int, n1: int, depth: int = 2) -> ValuationTree:
    if p <= d or not is_prime(p):
        raise InvalidParameter("needs a prime p > d")
    if not 0 <= n1 < p:
        raise InvalidParameter("n1 must be a residue mod p")
    if depth < 2 or depth > 6:
        raise InvalidParameter("depth must be between 2 and 6")
    if p ** depth > PROBE_LIMIT:
        raise BudgetExceeded(f"p^depth = {p ** depth} exceeds the probe limit")
    if h(d, n1) % p:
        raise InvalidParameter(f"p does not divide H_{d}({n1})")
    fp = fprime_mod_p(d, p, n1)
    alt = fprime_by_difference(d, p, n1)
    if fp != alt:
        raise InternalConsistencyError(f"f' routes disagree at d={d} p={p} n={n1}: {fp} vs {alt}")
    tree = ValuationTree(d, p, n1, fp)
    nk = n1
    for k in range(1, depth):
        mod = p ** (k + 1)
        res = _residues(d, mod, nk + (p - 1) * p ** k)
        lifts = [t for t in range(p) if res[nk + t * p ** k] == 0]
        count = len(lifts)
        if fp != 0:
            expected = 1
        else:
            expected = p if res[nk] == 0 else 0
        if count not in (0, 1, p) or count != expected:
            raise TheoremViolation("lift count breaks the trichotomy",
                                   {"d": d, "p": p, "k": k, "n_k": nk, "count": count})
        if count == 1:
            kind = UNIQUE
        elif count == p:
            kind = SPLIT
        else:
            kind = CONSTANT if k == 1 else DEAD
        tree.levels.append((k, nk, kind, count))
        if count == 0:
            break
        nk = nk + lifts[0] * p ** k
    else:
        tree.levels.append((depth, nk, "reached", None))
    tree.shortcut = valuation_probe(d, p, n1)
    if tree.shortcut != tree.levels[0][2]:
        raise InternalConsistencyError(
            f"probe says {tree.shortcut}, lifting says {tree.levels[0][2]} at {(d, p, n1)}")
    return tree


REFUTING_TRIPLES = ((2, 19, 6), (3, 13, 7))


def hensel_sweep(ds=(2, 3, 4, 5), prime_count: int = 25, depth: int = 2) -> VerifyReport:
    """Classify every root n1 in {d..p-1} and compare with the published outcome."""
    chk = Check("hensel-sweep", {"d": list(ds), "primes": prime_count}, {"depth": depth})
    constant, split, zero_fprime, roots = [], [], [], 0
    for d in ds:
        for p in first_primes(prime_count):
            if p <= d:
                continue
            res = _residues(d, p, p - 1)
            for n1 in range(d, p):
                if res[n1]:
                    continue
                roots += 1
                tree = hensel_classify(d, p, n1, depth)
                if tree.kind == CONSTANT:
                    constant.append((d, p, n1))
                elif tree.kind != UNIQUE:
                    split.append((d, p, n1))
                if tree.fprime == 0:
                    zero_fprime.append((d, p, n1))
                # f' vanishes exactly where the lift is not unique
                chk.expect((tree.fprime == 0) == (tree.kind != UNIQUE), d=d, p=p, n1=n1,
                           fprime=tree.fprime, kind=tree.kind)
    chk.expect(sorted(constant) == sorted(REFUTING_TRIPLES), constant=constant,
               expected=REFUTING_TRIPLES)
    chk.expect(not split, split=split)
    chk.expect(sorted(zero_fprime) == sorted(REFUTING_TRIPLES), fprime_zero=zero_fprime)
    chk.details.update(roots=roots, constant_valuation=constant, fprime_zero=zero_fprime)
    return chk.report()


def check_wperiod_theorem(p: int, w: int, n_max: int | None = None) -> VerifyReport:
    """H_p(n) / p^(floor(n/p^2)(p-1)) mod p^w has period p^(2w+1)(p-1)."""
    P = p ** (2 * w + 1) * (p - 1)
    n_max = n_max if n_max is not None else 2 * P + p * p
    chk = Check("wperiod", {"p": p, "w": w}, {"n_max": n_max})
    mod = p ** w
    seq = []
    for n, v in enumerate(h_list(p, n_max)):
        e = (n // (p * p)) * (p - 1)
        q, r = divmod(v, p ** e)
        if r:
            raise InternalConsistencyError(f"p^{e} does not divide H_{p}({n})")
        seq.append(q % mod)
    if n_max < P:
        return chk.report()
    bad = next((n for n in range(n_max - P + 1) if seq[n] != seq[n + P]), None)
    chk.expect(bad is None, n=bad, period=P)
    q, _ = smallest_window_period(seq, P)
    chk.details.update(period=P, smallest_window_period=q)
    return chk.report()


def check_h2_mod4_period16(n_max: int = 600) -> VerifyReport:
    """H_2(n) / 2^nu_2(H_2(n)) mod 4 has period 16."""
    chk = Check("h2-mod4-period16", {}, {"n_max": n_max})
    seq = [strip_p(v, 2)[1] % 4 for v in h_list(2, n_max)]
    for n in range(n_max - 15):
        chk.equal(seq[n + 16], seq[n], n=n)
    q, _ = smallest_window_period(seq, 16)
    chk.details["smallest_window_period"] = q
    return chk.report()


def fully_normalized_period(p: int, w: int, n_max: int):
    """Empirical evidence only: smallest window period of H_p(n)/p^nu mod p^w."""
    seq = []
    for v in h_list(p, n_max):
        seq.append(strip_p(v, p)[1] % p ** w)
    return smallest_window_period(seq)[0]
