import math

import pytest

from dcycles.errors import BudgetExceeded, InvalidParameter
from dcycles.poly import Poly
from dcycles.seq import GEngine, SeqEngine, g, g_printed_recurrence, h, h_closed, h_oracle, h_poly_oracle


def test_h_values():
    assert h(2, 4) == 10
    assert h(3, 9) == 5769 == 3 ** 2 * 641
    assert [h(2, n) for n in range(6)] == [1, 1, 2, 4, 10, 26]
    assert h(5, -3) == 0
    for d in range(2, 8):
        assert h(d, d) == 1 + math.factorial(d - 1)


def test_closed_form():
    assert h_closed(2, 4) == 10
    assert h_closed(3, 3) == 3
    assert h_closed(5, 4) == 1
    assert all(h_closed(d, n) == h(d, n) for d in range(2, 7) for n in range(40))
    with pytest.raises(InvalidParameter):
        h_closed(3, -1)


def test_oracle():
    assert h_oracle(2, 4) == 10
    assert h_oracle(3, 5) == 21
    assert h_oracle(4, 3) == 1
    with pytest.raises(BudgetExceeded):
        h_oracle(2, 11)


def test_poly_oracle():
    assert h_poly_oracle(2, 2) == Poly([1, 0, 1])
    assert h_poly_oracle(3, 3) == Poly([2, 0, 0, 1])
    assert h_poly_oracle(2, 0) == Poly([1])
    with pytest.raises(BudgetExceeded):
        h_poly_oracle(2, 10)


def test_bad_d():
    for fn in (h, h_closed, h_oracle, g):
        with pytest.raises(InvalidParameter):
            fn(1, 3)


def test_g_values():
    assert g(3, 2) == 3
    assert g(3, 8) == 1701 == 3 ** 5 * 7
    assert g(2, 5) == 44
    assert g(4, -1) == 0
    with pytest.raises(InvalidParameter):
        g(2, -2)


def test_g_engine_matches_running_sum():
    for d in range(2, 7):
        eng = GEngine(d)
        run = 0
        for n in range(120):
            run += h(d, n)
            assert eng.step() == run


def test_plus_sign_variant_diverges_at_d():
    for d in range(2, 7):
        vals = g_printed_recurrence(d, d + 2)
        assert vals[:d] == [g(d, n) for n in range(d)]
        assert vals[d] != g(d, d)


def test_residue_engine():
    c = 97
    eng = SeqEngine(3, modulus=c)
    assert eng.take(60) == [h(3, n) % c for n in range(60)]
    with pytest.raises(InvalidParameter):
        SeqEngine(3, modulus=0)


def test_big_values_exact():
    # no float or wraparound anywhere
    v = h(2, 300)
    assert v == h_closed(2, 300) and v.bit_length() > 900
