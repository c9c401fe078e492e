from fractions import Fraction

import pytest

from dcycles.report import Check, VerifyReport, jsonable


def test_roundtrip():
    chk = Check("demo", {"d": 3}, {"n_max": 5})
    chk.equal(1, 1, n=0)
    chk.equal(2, 3, n=1)
    chk.equal(4, 5, n=2)
    rep = chk.report()
    assert rep.status == "fail"
    assert rep.first_counterexample["n"] == 1
    assert rep.details["failures"] == 2
    back = VerifyReport.from_json(rep.to_json())
    assert back == rep


def test_conjecture_statuses():
    chk = Check("c", {}, conjecture=True)
    chk.expect(True, n=0)
    assert chk.report().status == "conjecture-consistent"
    chk.expect(False, n=1)
    assert chk.report().status == "conjecture-counterexample"


def test_empty_is_inconclusive():
    assert Check("e", {}).report().status == "inconclusive"


def test_jsonable_keeps_big_ints_exact():
    big = 3 ** 200
    assert jsonable(big) == str(big)
    assert jsonable(Fraction(-1, 2)) == "-1/2"
    assert jsonable({1: [2, (3,)]}) == {"1": [2, [3]]}


def test_status_validation():
    with pytest.raises(ValueError):
        VerifyReport("x", {}, {}, "maybe")
    with pytest.raises(ValueError):
        VerifyReport("x", {}, {}, "fail")
