import io
import json

import pytest

from dcycles.cli import RunConfig, UsageError, load_config, main, parse_extra, parse_value, verify_all
from dcycles.registry import CLAIM_IDS
from dcycles.report import VerifyReport


def run(capsys, *argv):
    rc = main(list(argv))
    return rc, capsys.readouterr().out


def test_seq(capsys):
    rc, out = run(capsys, "seq", "--d", "3", "--n", "9")
    assert rc == 0 and out.strip() == "5769"


def test_poly(capsys):
    rc, out = run(capsys, "poly", "--family", "w", "--d", "2", "--n", "2")
    assert rc == 0 and out.strip() == "2 + 2*x + x^2"


def test_period(capsys):
    rc, out = run(capsys, "period", "--d", "4", "--c", "4")
    assert rc == 0 and "8" in out


def test_verify_single(capsys):
    rc, out = run(capsys, "verify", "--claim", "wpp", "--p", "3")
    rep = VerifyReport.from_json(out.strip().splitlines()[0])
    assert rc == 0 and rep.status == "pass"


def test_unknown_claim_lists_ids(capsys):
    rc = main(["verify", "--claim", "no-such-claim"])
    err = capsys.readouterr()
    assert rc == 2
    assert "hensel-sweep" in err.out + err.err


def test_bad_arguments(capsys):
    assert main(["seq", "--d", "1", "--n", "3"]) == 2
    assert main(["frobnicate"]) == 2
    capsys.readouterr()


def test_table1_csv_small(capsys):
    rc, out = run(capsys, "table1", "--primes", "200", "--d", "2..3", "--format", "csv")
    lines = out.strip().splitlines()
    assert rc == 0 and lines[0] == "d,K,N,ratio" and len(lines) == 3


def test_parse_helpers():
    assert parse_value("2..5") == [2, 3, 4, 5]
    assert parse_value("3,5,7") == [3, 5, 7]
    assert parse_value("17") == 17
    assert parse_extra(["--p", "3", "--k-max", "2"]) == {"p": 3, "k_max": 2}


def test_config_file_and_env(tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nn_max = 50\njobs = 2\n")
    c = load_config(str(cfg), env={"DCYCLES_JOBS": "1"})
    assert c.n_max == 50 and c.jobs == 1
    cfg.write_text("bogus = 1\n")
    with pytest.raises(UsageError):
        load_config(str(cfg), env={})


def _lines(config):
    buf = io.StringIO()
    rc = verify_all(config, buf)
    return rc, [json.loads(x) for x in buf.getvalue().splitlines()]


def test_n_max_zero_is_inconclusive():
    rc, lines = _lines(RunConfig(n_max=0, claims="hp-period-signed,g3-valuation"))
    assert rc == 1
    assert all(r["status"] == "inconclusive" for r in lines[:-1])


def test_conjecture_only_selection_exits_zero():
    rc, lines = _lines(RunConfig(claims="g3-valuation,hankel"))
    assert rc == 0
    assert [r["status"] for r in lines[:-1]] == ["conjecture-consistent"] * 2


def test_reports_deterministic_across_jobs():
    sel = "Hp-1,wpp,w-routes,gcd-theorem"
    rc1, a = _lines(RunConfig(claims=sel, n_max=30))
    rc2, b = _lines(RunConfig(claims=sel, n_max=30, jobs=2))
    assert rc1 == rc2 == 0 and a == b
    assert [r["claim_id"] for r in a[:-1]] == sel.split(",")


def test_claim_ids_unique_and_ordered():
    assert len(set(CLAIM_IDS)) == len(CLAIM_IDS)
    assert CLAIM_IDS[0] == "oracle-equivalence" and CLAIM_IDS[-1] == "properties"
