"""The sequences H_d(n) and G_d(n), plus brute-force permutation oracles."""
from __future__ import annotations

import itertools
import math
from collections import Counter, deque
from functools import lru_cache

from .arith import falling_factorial
from .errors import BudgetExceeded, InternalConsistencyError, InvalidParameter

ORACLE_BUDGET = 10
POLY_ORACLE_BUDGET = 9


def _check_d(d):
    if d < 2:
        raise InvalidParameter(f"d must be >= 2, got {d}")


class SeqEngine:
    """Sliding-window generator of H_d(0), H_d(1), ...

    With ``modulus`` set, every value is reduced into [0, modulus) and the
    falling-factorial coefficient is computed from n mod modulus, so the whole
    state is (n mod c, last d residues).
    """

    def __init__(self, d: int, modulus: int | None = None):
        _check_d(d)
        if modulus is not None and modulus < 1:
            raise InvalidParameter("modulus must be positive")
        self.d = d
        self.modulus = modulus
        self.n = 0
        # window[-1] = H(n-1), window[0] = H(n-d); negative indices give 0
        self.window = deque([0] * d, maxlen=d)

    def coefficient(self, n: int) -> int:
        """(n-1)_(d-1), reduced when in residue mode."""
        c = self.modulus
        if c is None:
            return falling_factorial(n - 1, self.d - 1)
        r = 1
        m = (n - 1) % c
        for i in range(self.d - 1):
            r = r * (m - i) % c
        return r

    def step(self) -> int:
        n = self.n
        if n == 0:
            v = 1
        else:
            v = self.window[-1] + self.coefficient(n) * self.window[0]
        if self.modulus is not None:
            v %= self.modulus
        self.window.append(v)
        self.n = n + 1
        return v

    def state(self):
        """Hashable state determining all future residues (residue mode)."""
        return (self.n % self.modulus, tuple(self.window))

    def __iter__(self):
        return self

    def __next__(self):
        return self.step()

    def take(self, count: int) -> list:
        return [self.step() for _ in range(count)]


class GEngine:
    """Generator of G_d(n) = H_d(0) + ... + H_d(n) by its own recurrence.

    G(n) = 2G(n-1) - G(n-2) + (n-1)_(d-1) (G(n-d) - G(n-d-1)) for n >= d,
    started from G(i) = i + 1 for i = -1..d-1.
    """

    def __init__(self, d: int):
        _check_d(d)
        self.d = d
        self.n = 0
        self.window = deque([0] * (d + 1), maxlen=d + 1)
        # indices -d-1 .. -2 are never read by the recurrence, -1 holds G(-1)=0

    def step(self) -> int:
        n, d, w = self.n, self.d, self.window
        if n < d:
            v = n + 1
        else:
            # w[-1]=G(n-1), w[-2]=G(n-2), w[0]=G(n-d-1), w[1]=G(n-d)
            v = 2 * w[-1] - w[-2] + falling_factorial(n - 1, d - 1) * (w[1] - w[0])
        w.append(v)
        self.n = n + 1
        return v

    def __iter__(self):
        return self

    def __next__(self):
        return self.step()


# append-only caches, one list per d
_H: dict = {}
_G: dict = {}


def h_list(d: int, n_max: int) -> list:
    """[H_d(0), ..., H_d(n_max)] from the recurrence (cached)."""
    _check_d(d)
    vals = _H.get(d)
    if vals is None:
        vals = _H[d] = []
    if len(vals) <= n_max:
        eng = SeqEngine(d)
        # replay is cheap next to the big-int work; keep the engine simple
        if vals:
            eng.n = len(vals)
            eng.window = deque(([0] * d + vals)[-d:], maxlen=d)
        while len(vals) <= n_max:
            vals.append(eng.step())
    return vals


def h(d: int, n: int) -> int:
    """H_d(n); zero for negative n."""
    _check_d(d)
    if n < 0:
        return 0
    return h_list(d, n)[n]


def h_closed(d: int, n: int) -> int:
    """sum_k n! / ((n-dk)! k! d^k), each term divided exactly."""
    _check_d(d)
    if n < 0:
        raise InvalidParameter("closed form needs n >= 0")
    total = 0
    for k in range(n // d + 1):
        num = falling_factorial(n, d * k)
        den = math.factorial(k) * d ** k
        q, r = divmod(num, den)
        if r:
            raise InternalConsistencyError(f"closed-form term not integral: d={d} n={n} k={k}")
        total += q
    return total


def g(d: int, n: int) -> int:
    """G_d(n), via the G recurrence, cross-checked against the running sum."""
    _check_d(d)
    if n < -1:
        raise InvalidParameter("G is defined for n >= -1")
    if n == -1:
        return 0
    vals = _G.setdefault(d, [])
    if len(vals) <= n:
        hs = h_list(d, n)
        eng = GEngine(d)
        run = 0
        for i in range(n + 1):
            v = eng.step()
            run += hs[i]
            if v != run:
                raise InternalConsistencyError(f"G recurrence {v} != running sum {run} at d={d} n={i}")
            if i >= len(vals):
                vals.append(v)
    return vals[n]


def g_printed_recurrence(d: int, n_max: int) -> list:
    """G values produced by the recurrence with +G(n-2) in place of -G(n-2).

    Kept so the verifier can show how that variant diverges from the sum.
    """
    vals = {-1: 0}
    for i in range(0, n_max + 1):
        if i < d:
            vals[i] = i + 1
        else:
            vals[i] = (2 * vals[i - 1] + vals[i - 2]
                       + falling_factorial(i - 1, d - 1) * (vals[i - d] - vals[i - d - 1]))
    return [vals[i] for i in range(n_max + 1)]


def _cycle_type(perm) -> tuple:
    n = len(perm)
    seen = [False] * n
    lengths = []
    for s in range(n):
        if seen[s]:
            continue
        length = 0
        j = s
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


@lru_cache(maxsize=None)
def _cycle_type_census(n: int) -> Counter:
    """Count of permutations of S_n by cycle type, by full enumeration."""
    return Counter(_cycle_type(p) for p in itertools.permutations(range(n)))


def _fits(ct, d) -> bool:
    return all(length in (1, d) for length in ct)


def h_oracle(d: int, n: int) -> int:
    """Count permutations of S_n built only from fixed points and d-cycles."""
    _check_d(d)
    if n > ORACLE_BUDGET:
        raise BudgetExceeded(f"enumeration limited to n <= {ORACLE_BUDGET}")
    if n < 0:
        return 0
    return sum(cnt for ct, cnt in _cycle_type_census(n).items() if _fits(ct, d))


def h_poly_oracle(d: int, n: int):
    """sum over those permutations of x^(number of fixed points), as a Poly."""
    from .poly import Poly

    _check_d(d)
    if n > POLY_ORACLE_BUDGET:
        raise BudgetExceeded(f"enumeration limited to n <= {POLY_ORACLE_BUDGET}")
    coeffs = [0] * (n + 1)
    for ct, cnt in _cycle_type_census(n).items():
        if _fits(ct, d):
            coeffs[ct.count(1)] += cnt
    return Poly(coeffs)


def check_oracle_equivalence(d_max: int = 6, n_max: int = 9):
    """Recurrence, closed form and permutation enumeration agree, values and polynomials."""
    from .poly import Poly
    from .report import Check

    chk = Check("oracle-equivalence", {}, {"d_max": d_max, "n_max": n_max})
    for d in range(2, d_max + 1):
        for n in range(n_max + 1):
            v = h(d, n)
            chk.equal(v, h_closed(d, n), d=d, n=n, route="closed")
            chk.equal(v, h_oracle(d, n), d=d, n=n, route="enumeration")
            coeffs = [0] * (n + 1)
            for j in range(n // d + 1):
                coeffs[n - d * j] = math.factorial(n) // (math.factorial(n - d * j) * math.factorial(j) * d ** j)
            rec = [Poly.monomial(k) for k in range(min(d, n + 1))]
            for k in range(d, n + 1):
                rec.append(Poly.x() * rec[k - 1] + rec[k - d].scalar_mul(falling_factorial(k - 1, d - 1)))
            chk.equal(rec[n], Poly(coeffs), d=d, n=n, route="poly-closed")
            if n <= POLY_ORACLE_BUDGET:
                chk.equal(rec[n], h_poly_oracle(d, n), d=d, n=n, route="poly-enumeration")
    return chk.report()
