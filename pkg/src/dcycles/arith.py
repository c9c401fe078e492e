"""Integer and rational primitives: falling factorials, valuations, Bernoulli numbers.

Python ``int`` and ``fractions.Fraction`` already give arbitrary precision and
eager normalization, so they are used directly as the exact number types.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import InvalidParameter, InvalidPrime

Exact = Union[int, Fraction]

# nu_p(0) is +infinity; math.inf compares correctly against ints.
INFINITY = math.inf


def falling_factorial(u: int, m: int) -> int:
    """u (u-1) ... (u-m+1), with the empty product equal to 1."""
    if m < 0:
        raise InvalidParameter(f"falling factorial order must be >= 0, got {m}")
    r = 1
    for i in range(m):
        r *= u - i
    return r


def binomial(n: int, k: int) -> int:
    """Generalized binomial coefficient; n may be negative."""
    if k < 0:
        raise InvalidParameter(f"binomial lower index must be >= 0, got {k}")
    if n >= 0:
        return math.comb(n, k)
    q, r = divmod(falling_factorial(n, k), math.factorial(k))
    assert r == 0
    return q


def nu_p(x: Exact, p: int):
    """p-adic valuation of an integer or rational; INFINITY for zero."""
    if p < 2:
        raise InvalidPrime(f"p must be >= 2, got {p}")
    if isinstance(x, Fraction):
        if x == 0:
            return INFINITY
        return _nu_int(x.numerator, p) - _nu_int(x.denominator, p)
    if x == 0:
        return INFINITY
    return _nu_int(x, p)


def _nu_int(x: int, p: int) -> int:
    x = abs(x)
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k


def strip_p(x: int, p: int):
    """Return (nu_p(x), x / p^nu) for nonzero x."""
    if x == 0:
        raise InvalidParameter("cannot strip p from 0")
    k = 0
    while x % p == 0:
        x //= p
        k += 1
    return k, x


def rat_mod(x: Exact, m: int) -> int:
    """Reduce a rational with denominator prime to m into [0, m)."""
    if isinstance(x, int):
        return x % m
    den = x.denominator
    if math.gcd(den, m) != 1:
        raise InvalidParameter(f"denominator {den} not invertible modulo {m}")
    return x.numerator * pow(den, -1, m) % m


def rat_mod_prime_power(x: Exact, p: int, r: int) -> int:
    """Reduce x modulo p^r; requires nu_p(x) >= 0."""
    if x != 0 and nu_p(x, p) < 0:
        raise InvalidParameter(f"{x} has negative {p}-adic valuation")
    return rat_mod(x, p ** r)


_bern = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2, from sum_{k<=n} C(n+1,k) B_k = 0."""
    if n < 0:
        raise InvalidParameter("Bernoulli index must be >= 0")
    while len(_bern) <= n:
        m = len(_bern)
        s = sum(math.comb(m + 1, k) * _bern[k] for k in range(m))
        _bern.append(-s / (m + 1))
    return _bern[n]


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin with a witness set that is deterministic below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_upto(n: int) -> list[int]:
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i:: i] = bytearray(len(range(i * i, n + 1, i)))
    return [i for i, f in enumerate(sieve) if f]


@lru_cache(maxsize=16)
def first_primes(k: int) -> tuple:
    """The first k primes."""
    if k <= 0:
        return ()
    bound = 16
    if k >= 6:
        lk = math.log(k)
        bound = int(k * (lk + math.log(lk))) + 3
    ps = primes_upto(bound)
    while len(ps) < k:
        bound *= 2
        ps = primes_upto(bound)
    return tuple(ps[:k])


def divisors(n: int) -> list[int]:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def factorize(n: int) -> dict:
    """Trial division; only used on small report-sized numbers."""
    f = {}
    q = 2
    while q * q <= n:
        while n % q == 0:
            f[q] = f.get(q, 0) + 1
            n //= q
        q += 1
    if n > 1:
        f[n] = f.get(n, 0) + 1
    return f


def prime_power(c: int):
    """(p, r) when c = p^r with r >= 1, else None."""
    f = factorize(c)
    if len(f) != 1:
        return None
    (p, r), = f.items()
    return p, r
