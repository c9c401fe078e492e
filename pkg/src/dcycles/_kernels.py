"""Compiled inner loop for the prime-divisor scan."""
import numba
import numpy as np


@numba.njit(cache=True)
def window_hits_zero(d, p):
    """True if H_d(n) = 0 mod p for some n in d..p-1 (needs p > d)."""
    if p <= d:
        return False
    inv = np.empty(p, np.int64)
    inv[1] = 1
    for i in range(2, p):
        inv[i] = (p - (p // i) * inv[p % i] % p) % p
    # ring buffer of H(n-d..n-1); all equal 1 below d
    win = np.ones(d, np.int64)
    coef = 1
    for i in range(1, d):
        coef = coef * i % p
    h = 1
    pos = 0
    for n in range(d, p):
        # coef = (n-1)_(d-1) mod p, win[pos] = H(n-d)
        h = (h + coef * win[pos]) % p
        if h == 0:
            return True
        win[pos] = h
        pos += 1
        if pos == d:
            pos = 0
        coef = coef * n % p * inv[n - d + 1] % p
    return False


@numba.njit(cache=True)
def membership(d, primes):
    out = np.zeros(primes.shape[0], np.bool_)
    for i in range(primes.shape[0]):
        out[i] = window_hits_zero(d, primes[i])
    return out
