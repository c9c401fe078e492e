"""Randomized property suites, 1000 examples each."""
import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from dcycles.arith import INFINITY, falling_factorial, nu_p, primes_upto
from dcycles.poly import ZZ, Poly, PolyMatrix, Zmod, bareiss_det, cofactor_det, cyclic, negacyclic
from dcycles.properties import check_all_properties

MANY = settings(max_examples=1000, deadline=None)
primes = st.sampled_from(primes_upto(60))
ints = st.integers(min_value=-(2 ** 80), max_value=2 ** 80)


@MANY
@given(p=primes, a=ints, b=ints)
def test_nu_p_axioms(p, a, b):
    na, nb = nu_p(a, p), nu_p(b, p)
    assert nu_p(a * b, p) == na + nb
    assert nu_p(a + b, p) >= min(na, nb)
    if na != nb:
        assert nu_p(a + b, p) == min(na, nb)
    if a and b:
        assert nu_p(Fraction(a, b), p) == na - nb
    assert nu_p(0, p) == INFINITY


@MANY
@given(u=st.integers(-10 ** 9, 10 ** 9), a=st.integers(0, 30), b=st.integers(0, 30))
def test_falling_factorial_divisibility(u, a, b):
    f = falling_factorial(u, a + b)
    assert f % math.factorial(a + b) == 0
    assert f == falling_factorial(u, a) * falling_factorial(u - a, b)


rings = st.one_of(
    st.just(ZZ),
    st.integers(2, 40).map(Zmod),
    st.integers(1, 7).map(cyclic),
    st.integers(1, 7).map(negacyclic),
)
coeffs = st.lists(st.integers(-100, 100), max_size=8)


@MANY
@given(R=rings, a=coeffs, b=coeffs, c=coeffs)
def test_ring_axioms(R, a, b, c):
    a, b, c = Poly(a, R), Poly(b, R), Poly(c, R)
    zero, one = Poly.zero(R), Poly.one(R)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + zero == a and a * one == a and a - a == zero


@st.composite
def poly_matrices(draw):
    n = draw(st.integers(1, 4))
    entry = st.lists(st.integers(-9, 9), max_size=3).map(Poly)
    return PolyMatrix([[draw(entry) for _ in range(n)] for _ in range(n)])


@MANY
@given(M=poly_matrices())
def test_bareiss_matches_cofactor(M):
    assert bareiss_det(M) == cofactor_det(M)


def test_seeded_suites_standalone():
    rep = check_all_properties(1000)
    assert rep.status == "pass"
    assert all(rep.details[k] == 1000 for k in
               ("prop-nu-axioms", "prop-falling-factorial", "prop-ring-axioms", "prop-bareiss-cofactor"))
