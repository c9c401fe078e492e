import pytest

from dcycles.period import basic_period, is_period, residue_seq, verify_section3
from dcycles.seq import h


def test_residue_seq():
    assert residue_seq(2, 3, 5) == [1, 1, 2, 1, 1, 2]
    assert residue_seq(4, 4, 8) == [1, 1, 1, 1, 3, 3, 3, 3, 1]
    assert residue_seq(6, 6, 3) == [1, 1, 1, 1]


@pytest.mark.parametrize("d,c,q", [(2, 9, 9), (4, 4, 8), (5, 16, 8), (10, 243, 27), (3, 25, 25)])
def test_basic_period(d, c, q):
    rep = basic_period(d, c)
    assert rep.certified and rep.basic_period == q
    seq = [h(d, n) % c for n in range(3 * q + 10)]
    assert all(seq[n] == seq[n + q] for n in range(2 * q))
    assert is_period(d, c, q, rep)


def test_small_prime_below_d_collapses():
    # p | (d-1)! makes H_d(n) = 1 mod p, so the basic period is 1, not p
    assert basic_period(3, 2).basic_period == 1
    assert basic_period(6, 5).basic_period == 1


def test_inconclusive_bound():
    rep = basic_period(3, 10007, search_bound=10)
    assert not rep.certified


@pytest.mark.parametrize("cid,params", [
    ("Hp-1", {"p": 5, "n_max": 100}),
    ("Hp-2", {"p": 7, "n_max": 100}),
    ("pr-basic", {"d": 3, "p": 5, "r": 2}),
    ("d+1-composite", {}),
    ("d+2-composite", {}),
    ("period-exceptions", {}),
    ("hdnmodc", {}),
    ("ineqval", {}),
])
def test_section_claims(cid, params):
    rep = verify_section3(cid, params)
    assert rep.status == "pass", rep.first_counterexample
