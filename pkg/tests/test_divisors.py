from decimal import Decimal

import pytest

from dcycles.arith import first_primes, nu_p
from dcycles.divisors import (IDENTITIES, identity_applies, TABLE1, check_2d1_equivalences, check_g_recurrence,
                              check_scan_kernel, collision_search, gcd_report, gcd_theorem_check,
                              g_valuation_formula, hankel_conjecture_scan, hankel_dets, scan_Pd,
                              scan_G_valuation_conjecture, superfactorial, table1_csv, verify_identity,
                              window_member_py, DivisorScanRow)
from dcycles.poly import Poly
from dcycles.seq import g, h


def test_small_scan_kernel_routes():
    assert check_scan_kernel(6, 120).status == "pass"
    row = scan_Pd(2, 100)
    assert row.N == sum(window_member_py(2, p) for p in first_primes(100))


@pytest.mark.parametrize("d", [2, 7])
def test_table_rows(d):
    row = scan_Pd(d, 4000)
    assert row.N == TABLE1[d]
    assert TABLE1[2] == 2509 and TABLE1[7] == 2469


def test_ratio_and_csv():
    row = DivisorScanRow(6, 4000, 2518)
    assert row.ratio == Decimal("0.62950")
    assert table1_csv([DivisorScanRow(2, 4000, 2509)]).splitlines() == ["d,K,N,ratio", "2,4000,2509,0.62725"]


def test_gcd():
    assert gcd_report(4, 4).predicted == 2 == gcd_report(4, 4).actual
    assert gcd_report(3, 9).actual == 1
    assert h(6, 10) - 1 == 25200 and gcd_report(6, 10).actual == 10
    assert gcd_theorem_check(5, 150).status == "pass"


def test_2d1():
    assert check_2d1_equivalences(25).status == "pass"


def test_identities():
    assert IDENTITIES[-1] == "G-corollary"
    assert not identity_applies(2, 2) and not identity_applies(3, 3)
    for ident in IDENTITIES:
        for d in (2, 3, 4, 5):
            if not identity_applies(ident, d):
                continue
            assert verify_identity(ident, d, 12).status == "pass"


def test_g_recurrence_and_valuations():
    assert check_g_recurrence(4, 80).status == "pass"
    assert nu_p(g(3, 8), 3) == 5 == g_valuation_formula(3, 8)
    assert nu_p(g(3, 2), 3) == 1 == g_valuation_formula(3, 2)
    assert nu_p(g(5, 24), 5) == 6 == g_valuation_formula(5, 24)
    assert scan_G_valuation_conjecture(3, 200).status == "conjecture-consistent"


def test_hankel():
    assert superfactorial(4) == 12
    assert hankel_dets(2, 4)[-1] == Poly(12)
    assert hankel_dets(3, 2)[-1].is_zero()
    assert not hankel_dets(3, 3)[-1].is_zero()
    assert hankel_conjecture_scan(3, 6).status == "conjecture-consistent"


def test_collisions():
    assert collision_search(2, 4, 100, 100) == ([], "a-prime")
    pairs, reason = collision_search(4, 6, 60, 60)
    assert reason == "searched"
    assert all(n >= 4 and m >= 6 for n, m in pairs)
