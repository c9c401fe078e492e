"""Dense univariate polynomials over ZZ, ZZ/m, QQ and ZZ[x]/(x^D -+ 1).

The quotient rings model roots of unity: the class of x in ZZ[x]/(x^D - 1)
behaves like any D-th root of unity, and in ZZ[x]/(x^D + 1) like a 2D-th root
z with z^D = -1.  An identity holding there holds for every such root.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InternalConsistencyError, InvalidParameter

NEG_INF = -math.inf


class RingMismatch(InvalidParameter):
    pass


@dataclass(frozen=True)
class Ring:
    kind: str  # "ZZ", "QQ", "ZZ/m", "x^D-1", "x^D+1"
    m: int = 0
    D: int = 0

    def __str__(self):
        if self.kind == "ZZ/m":
            return f"ZZ/{self.m}"
        if self.kind in ("x^D-1", "x^D+1"):
            return f"ZZ[x]/(x^{self.D}{self.kind[-2:]})"
        return self.kind


ZZ = Ring("ZZ")
QQ = Ring("QQ")


def Zmod(m: int) -> Ring:
    if m < 2:
        raise InvalidParameter("modulus must be >= 2")
    return Ring("ZZ/m", m=m)


def cyclic(D: int) -> Ring:
    """ZZ[x]/(x^D - 1)."""
    if D < 1:
        raise InvalidParameter("D must be >= 1")
    return Ring("x^D-1", D=D)


def negacyclic(D: int) -> Ring:
    """ZZ[x]/(x^D + 1)."""
    if D < 1:
        raise InvalidParameter("D must be >= 1")
    return Ring("x^D+1", D=D)


def _normalize(coeffs, ring: Ring) -> tuple:
    kind = ring.kind
    if kind == "ZZ/m":
        cs = [c % ring.m for c in coeffs]
    elif kind == "QQ":
        cs = [Fraction(c) for c in coeffs]
    elif kind in ("x^D-1", "x^D+1"):
        D = ring.D
        cs = [0] * D
        neg = kind == "x^D+1"
        for i, c in enumerate(coeffs):
            q, r = divmod(i, D)
            cs[r] += -c if (neg and q % 2) else c
    else:
        cs = list(coeffs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class Poly:
    """Immutable dense polynomial, coefficients in ascending order."""

    __slots__ = ("coeffs", "ring")

    def __init__(self, coeffs=(), ring: Ring = ZZ):
        if isinstance(coeffs, int) or isinstance(coeffs, Fraction):
            coeffs = (coeffs,)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "coeffs", _normalize(coeffs, ring))

    def __setattr__(self, *_):
        raise AttributeError("Poly is immutable")

    # construction helpers
    @classmethod
    def x(cls, ring: Ring = ZZ) -> "Poly":
        return cls((0, 1), ring)

    @classmethod
    def monomial(cls, k: int, c=1, ring: Ring = ZZ) -> "Poly":
        return cls([0] * k + [c], ring)

    @classmethod
    def one(cls, ring: Ring = ZZ) -> "Poly":
        return cls((1,), ring)

    @classmethod
    def zero(cls, ring: Ring = ZZ) -> "Poly":
        return cls((), ring)

    # basic queries
    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _normalize((other,), self.ring)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.coeffs))

    def __repr__(self):
        return f"Poly({list(self.coeffs)!r}, {self.ring})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            neg = c < 0 and self.ring.kind != "ZZ/m"
            a = -c if neg else c
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    # arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return Poly((other,), self.ring)
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.ring)

    def __sub__(self, other):
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scalar_mul(other)
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly((), self.ring)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca == 0:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out, self.ring)

    __rmul__ = __mul__

    def scalar_mul(self, k) -> "Poly":
        return Poly([k * c for c in self.coeffs], self.ring)

    def __pow__(self, e: int):
        if e < 0:
            raise InvalidParameter("negative exponent")
        result = Poly.one(self.ring)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def derivative(self) -> "Poly":
        if self.ring.kind in ("x^D-1", "x^D+1"):
            raise RingMismatch("formal derivative is not defined on a quotient ring")
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:], self.ring)

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.ring.kind == "ZZ/m":
            acc %= self.ring.m
        return acc

    __call__ = evaluate

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k (k >= 0) or divide by x^-k exactly (k < 0)."""
        if k >= 0:
            return Poly([0] * k + list(self.coeffs), self.ring)
        k = -k
        if any(self.coeffs[:k]):
            raise InvalidParameter(f"not divisible by x^{k}")
        return Poly(self.coeffs[k:], self.ring)

    def low_order(self) -> int:
        """Largest k with x^k dividing self (0 for the zero polynomial)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return 0

    def substitute_power(self, k: int) -> "Poly":
        """p(x) -> p(x^k)."""
        out = [0] * (k * (len(self.coeffs) - 1) + 1) if self.coeffs else []
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return Poly(out, self.ring)

    def extract_power(self, k: int) -> "Poly | None":
        """q with q(x^k) = self, or None if some exponent is not a multiple of k."""
        if any(c for i, c in enumerate(self.coeffs) if i % k):
            return None
        return Poly(self.coeffs[::k], self.ring)

    def reduce_mod(self, m: int) -> "Poly":
        if self.ring.kind not in ("ZZ", "ZZ/m"):
            raise RingMismatch("reduce_mod needs integer coefficients")
        return Poly(self.coeffs, Zmod(m))

    def lift(self) -> "Poly":
        """Back to ZZ with representatives in [0, m)."""
        return Poly(self.coeffs, ZZ)

    def divmod_exact(self, other: "Poly") -> "Poly":
        """Exact quotient self / other over ZZ or QQ; raises if a remainder appears."""
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.ring.kind not in ("ZZ", "QQ"):
            raise RingMismatch("exact division implemented over ZZ and QQ only")
        rem = list(self.coeffs)
        db = len(o.coeffs) - 1
        lc = o.coeffs[-1]
        if len(rem) - 1 < db:
            if rem:
                raise InternalConsistencyError("inexact polynomial division")
            return Poly((), self.ring)
        q = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            if self.ring.kind == "ZZ":
                t, r = divmod(c, lc)
                if r:
                    raise InternalConsistencyError("inexact coefficient division")
            else:
                t = c / lc
            q[i - db] = t
            for j, cb in enumerate(o.coeffs):
                rem[i - db + j] -= t * cb
        if any(rem):
            raise InternalConsistencyError("inexact polynomial division")
        return Poly(q, self.ring)

    def __floordiv__(self, other):
        return self.divmod_exact(other)


def poly_from_json(data, ring: Ring = ZZ) -> Poly:
    return Poly([int(c) if isinstance(c, str) else c for c in data], ring)


class PolyMatrix:
    """Square matrix of polynomials over one ring."""

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidParameter("matrix must be square")
        rings = {e.ring for r in rows for e in r}
        if len(rings) > 1:
            raise RingMismatch("mixed rings in matrix")
        self.rows = rows
        self.n = n
        self.ring = rings.pop() if rings else ZZ

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def det(self) -> Poly:
        return bareiss_det(self)


def bareiss_det(M) -> Poly:
    """Fraction-free Gaussian elimination; every division is exact."""
    if not isinstance(M, PolyMatrix):
        M = PolyMatrix(M)
    n, ring = M.n, M.ring
    if n == 0:
        return Poly.one(ring)
    a = [list(r) for r in M.rows]
    sign = 1
    prev = Poly.one(ring)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Poly.zero(ring)
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = num.divmod_exact(prev)
        prev = pivot
    return a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]


def cofactor_det(M) -> Poly:
    """Laplace expansion along the first row; only for small matrices."""
    if not isinstance(M, PolyMatrix):
        M = PolyMatrix(M)
    return _laplace(M.rows, M.ring)


def _laplace(rows, ring) -> Poly:
    n = len(rows)
    if n == 0:
        return Poly.one(ring)
    if n == 1:
        return rows[0][0]
    total = Poly.zero(ring)
    for j in range(n):
        if rows[0][j].is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _laplace(minor, ring)
        total = total - term if j % 2 else total + term
    return total
