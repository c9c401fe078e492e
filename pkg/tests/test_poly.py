import pytest

from dcycles.errors import InvalidParameter
from dcycles.poly import (ZZ, Poly, PolyMatrix, RingMismatch, Zmod, bareiss_det, cofactor_det, cyclic,
                          negacyclic, poly_from_json)

x = Poly.x()


def test_arith_and_str():
    p = (x + 1) ** 3
    assert p.coeffs == (1, 3, 3, 1)
    assert str(Poly([2, 2, 1])) == "2 + 2*x + x^2"
    assert p.derivative() == Poly([3, 6, 3])
    assert p.evaluate(2) == 27
    assert (p - p).is_zero()
    assert Poly([1, 0, 0]).degree == 0


def test_exact_division():
    a = (x + 1) * (x ** 2 - 2)
    assert a // (x + 1) == x ** 2 - 2
    from dcycles.errors import InternalConsistencyError
    with pytest.raises(InternalConsistencyError):
        (x ** 2 + 1).divmod_exact(x + 1)


def test_quotient_rings():
    R = cyclic(3)
    xr = Poly.x(R)
    assert xr ** 3 == Poly.one(R)
    N = negacyclic(2)
    xn = Poly.x(N)
    assert xn ** 2 == -Poly.one(N)
    F = Zmod(3)
    assert Poly([4, 5], F).coeffs == (1, 2)
    with pytest.raises(RingMismatch):
        Poly.x(R) + Poly.x(F)
    with pytest.raises(RingMismatch):
        xr.derivative()
    with pytest.raises(InvalidParameter):
        Zmod(1)


def test_reduce_and_lift():
    p = Poly([7, 9, 4])
    assert p.reduce_mod(3) == Poly([1, 0, 1], Zmod(3))
    assert p.reduce_mod(3).lift() == Poly([1, 0, 1])


def test_json_roundtrip():
    p = Poly([1, -2, 10 ** 30])
    assert poly_from_json(list(p.coeffs)) == p


def test_determinants():
    M = PolyMatrix([[x, Poly(1)], [Poly(1), x]])
    assert bareiss_det(M) == x ** 2 - 1 == cofactor_det(M)
    I3 = PolyMatrix([[Poly.one() if i == j else Poly.zero() for j in range(3)] for i in range(3)])
    assert bareiss_det(I3) == Poly.one()
    # zero pivot in the first position forces a row swap
    S = PolyMatrix([[Poly(0), Poly(2)], [Poly(3), x]])
    assert bareiss_det(S) == Poly(-6) == cofactor_det(S)
    # exact big-integer Hilbert-like matrix
    H = PolyMatrix([[Poly(i + j + 1) for j in range(4)] for i in range(4)])
    assert bareiss_det(H) == cofactor_det(H) == Poly.zero(ZZ)
