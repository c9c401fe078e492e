from fractions import Fraction

import pytest

from dcycles.arith import first_primes, nu_p
from dcycles.padic import (REFUTING_TRIPLES, UNIQUE, CONSTANT, check_bj, check_gamma_bound,
                           check_h2_mod4_period16, check_hpmodp, check_normalized_period,
                           check_sumprodrecip, check_wperiod_theorem, complete_homogeneous, find_bj,
                           fprime_by_difference, fprime_mod_p, gamma, hensel_classify, hensel_sweep,
                           normalized_period)
from dcycles.seq import h


def test_gamma():
    assert gamma(3, 9) == 2 and nu_p(h(3, 9), 3) == 2
    assert gamma(5, 4) == 0
    assert gamma(3, 12) == 3 and nu_p(h(3, 12), 3) >= 3
    assert check_gamma_bound((2, 3, 5)).ok


def test_hpmodp_spots():
    assert h(3, 9) % 27 == (-9) % 27
    assert nu_p(h(3, 3), 3) >= 1 and nu_p(h(3, 6), 3) >= 2
    assert h(5, 25) % 5 ** 5 == (-5 ** 4) % 5 ** 5
    for p in (3, 5, 7):
        assert check_hpmodp(p, 3).status == "pass"


def test_complete_homogeneous():
    assert complete_homogeneous(2, 2) == Fraction(7, 4)
    assert complete_homogeneous(1, 2) == Fraction(3, 2)
    for p in (3, 5, 7):
        assert check_sumprodrecip(p, 8).status == "pass"


@pytest.mark.parametrize("p,signed,q", [(3, True, 9), (3, False, 18), (5, True, 25), (5, False, 50)])
def test_normalized_periods(p, signed, q):
    assert normalized_period(p, signed).basic_period == q
    assert check_normalized_period(p, signed).status == "pass"


def test_bj():
    assert find_bj(2).b == [1, 0]
    assert find_bj(3).b == [2, 2, 2]
    assert find_bj(5).b[0] == 4
    for p in (2, 3, 5, 7):
        assert find_bj(p).check_invariants()
    assert check_bj().status == "pass"


def test_fprime_routes_agree():
    assert fprime_mod_p(2, 5, 4) != 0
    assert fprime_mod_p(2, 19, 6) == 0
    assert fprime_mod_p(3, 13, 7) == 0
    # the difference quotient is f' mod p for d >= 3, and at roots of H_2 mod p
    for d, p, n in [(2, 5, 4), (2, 19, 6), (3, 13, 7), (4, 7, 5), (3, 11, 3)]:
        assert fprime_mod_p(d, p, n) == fprime_by_difference(d, p, n)


def test_hensel():
    t = hensel_classify(2, 5, 4, 2)
    assert t.kind == UNIQUE and t.n_at(2) == 24
    assert h(2, 24) == 17492190577600 and nu_p(h(2, 24), 5) == 2
    for d, p, n1 in REFUTING_TRIPLES:
        assert hensel_classify(d, p, n1, 2).kind == CONSTANT
    assert REFUTING_TRIPLES == ((2, 19, 6), (3, 13, 7))
    rep = hensel_sweep()
    assert rep.status == "pass"
    assert first_primes(25)[-1] == 97


@pytest.mark.parametrize("p,w", [(3, 1), (5, 1), (3, 2)])
def test_wperiod(p, w):
    assert check_wperiod_theorem(p, w).status == "pass"


def test_mod4_corollary():
    assert check_h2_mod4_period16().status == "pass"
