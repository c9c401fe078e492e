from fractions import Fraction

import pytest

from dcycles.arith import (INFINITY, bernoulli, binomial, factorize, falling_factorial, first_primes,
                           is_prime, nu_p, prime_power, primes_upto, rat_mod)
from dcycles.errors import InvalidParameter, InvalidPrime


def test_falling_factorial():
    assert falling_factorial(5, 3) == 60
    assert falling_factorial(-7, 0) == 1
    assert falling_factorial(9, 5) == 15120
    # runs through zero
    assert falling_factorial(2, 4) == 0
    with pytest.raises(InvalidParameter):
        falling_factorial(3, -1)


def test_nu_p():
    assert nu_p(351, 3) == 3
    assert nu_p(0, 7) == INFINITY
    assert nu_p(Fraction(9, 4), 2) == -2
    assert nu_p(-16, 2) == 4
    with pytest.raises(InvalidPrime):
        nu_p(5, 1)


def test_bernoulli():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(12) == Fraction(-691, 2730)


def test_binomial():
    assert binomial(7, 3) == 35
    assert binomial(11, 0) == 1
    assert 2 * binomial(7, 3) % 4 == 2
    assert binomial(-1, 3) == -1
    assert binomial(3, 5) == 0
    with pytest.raises(InvalidParameter):
        binomial(4, -1)


def test_primes():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    ps = first_primes(4000)
    assert len(ps) == 4000 and ps[-1] == 37813
    assert is_prime(37813) and not is_prime(1) and not is_prime(91)
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert prime_power(243) == (3, 5)


def test_rat_mod():
    assert rat_mod(Fraction(7, 4), 3) == 1
    assert rat_mod(Fraction(3, 2), 3) == 0
