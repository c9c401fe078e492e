"""Seeded randomized property checks usable without a test runner."""
from __future__ import annotations

import random
from fractions import Fraction

from .arith import INFINITY, falling_factorial, nu_p, primes_upto
from .poly import ZZ, Poly, PolyMatrix, Zmod, bareiss_det, cofactor_det, cyclic, negacyclic
from .report import Check, VerifyReport

SMALL_PRIMES = primes_upto(50)


def _rand_int(rng, bits=60):
    return rng.randint(-(2 ** bits), 2 ** bits)


def check_nu_axioms(cases: int = 1000, seed: int = 1) -> VerifyReport:
    rng = random.Random(seed)
    chk = Check("prop-nu-axioms", {"seed": seed}, {"cases": cases})
    for _ in range(cases):
        p = rng.choice(SMALL_PRIMES)
        a, b = _rand_int(rng), _rand_int(rng)
        na, nb = nu_p(a, p), nu_p(b, p)
        ok = nu_p(a * b, p) == na + nb and nu_p(a + b, p) >= min(na, nb)
        if a and b:
            ok = ok and nu_p(Fraction(a, b), p) == na - nb
        if na != nb:
            ok = ok and nu_p(a + b, p) == min(na, nb)
        ok = ok and nu_p(0, p) == INFINITY
        chk.expect(ok, p=p, a=a, b=b)
    return chk.report()


def check_falling_factorial(cases: int = 1000, seed: int = 2) -> VerifyReport:
    """m! divides (u)_(m), and (u)_(a+b) = (u)_(a) (u-a)_(b)."""
    import math

    rng = random.Random(seed)
    chk = Check("prop-falling-factorial", {"seed": seed}, {"cases": cases})
    for _ in range(cases):
        u = rng.randint(-10 ** 6, 10 ** 6)
        a, b = rng.randint(0, 25), rng.randint(0, 25)
        f = falling_factorial(u, a + b)
        chk.expect(f % math.factorial(a + b) == 0
                   and f == falling_factorial(u, a) * falling_factorial(u - a, b), u=u, a=a, b=b)
    return chk.report()


def _rand_poly(rng, ring, deg=6, bound=50):
    return Poly([rng.randint(-bound, bound) for _ in range(rng.randint(0, deg + 1))], ring)


def _rand_ring(rng):
    k = rng.randrange(4)
    if k == 0:
        return ZZ
    if k == 1:
        return Zmod(rng.randint(2, 30))
    if k == 2:
        return cyclic(rng.randint(1, 6))
    return negacyclic(rng.randint(1, 6))


def check_ring_axioms(cases: int = 1000, seed: int = 3) -> VerifyReport:
    rng = random.Random(seed)
    chk = Check("prop-ring-axioms", {"seed": seed}, {"cases": cases})
    for _ in range(cases):
        R = _rand_ring(rng)
        a, b, c = (_rand_poly(rng, R) for _ in range(3))
        ok = (a + b == b + a and a * b == b * a and (a + b) + c == a + (b + c)
              and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
              and a + Poly.zero(R) == a and a * Poly.one(R) == a and a - a == Poly.zero(R))
        chk.expect(ok, ring=str(R), a=a, b=b, c=c)
    return chk.report()


def check_bareiss_vs_cofactor(cases: int = 1000, seed: int = 4) -> VerifyReport:
    rng = random.Random(seed)
    chk = Check("prop-bareiss-cofactor", {"seed": seed}, {"cases": cases})
    for _ in range(cases):
        n = rng.randint(1, 4)
        rows = [[_rand_poly(rng, ZZ, deg=2, bound=9) for _ in range(n)] for _ in range(n)]
        M = PolyMatrix(rows)
        chk.equal(bareiss_det(M), cofactor_det(M), n=n)
    return chk.report()


def check_all_properties(cases: int = 1000) -> VerifyReport:
    chk = Check("properties", {}, {"cases": cases})
    for fn in (check_nu_axioms, check_falling_factorial, check_ring_axioms, check_bareiss_vs_cofactor):
        rep = fn(cases)
        chk.expect(rep.ok, suite=rep.claim_id, counterexample=rep.first_counterexample)
        chk.details[rep.claim_id] = rep.details["cases"]
    return chk.report()
