"""Command-line front end: dcycles {seq,poly,period,valuation,verify,scan,table1}."""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, fields

from .errors import BudgetExceeded, InvalidParameter
from .report import INCONCLUSIVE, SUCCESS, Check, jsonable

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- parameters

def parse_value(text: str):
    """'7' -> 7, '2..5' -> [2,3,4,5], '3,5,7' -> [3,5,7], 'true' -> True, else the string."""
    t = text.strip()
    low = t.lower()
    if low in ("true", "yes", "on"):
        return True
    if low in ("false", "no", "off"):
        return False
    if ".." in t:
        a, b = t.split("..", 1)
        try:
            return list(range(int(a), int(b) + 1))
        except ValueError:
            raise UsageError(f"bad range {text!r}") from None
    if "," in t:
        return [parse_value(x) for x in t.split(",") if x.strip()]
    try:
        return int(t)
    except ValueError:
        return t


def parse_extra(tokens) -> dict:
    """['--p', '3', '--n-max', '40'] -> {'p': 3, 'n_max': 40}."""
    out = {}
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if not tok.startswith("--") or len(tok) < 3:
            raise UsageError(f"unexpected argument {tok!r}")
        key = tok[2:].replace("-", "_")
        if "=" in key:
            key, val = key.split("=", 1)
            out[key] = parse_value(val)
            i += 1
            continue
        if i + 1 >= len(tokens) or tokens[i + 1].startswith("--"):
            out[key] = True
            i += 1
        else:
            out[key] = parse_value(tokens[i + 1])
            i += 2
    return out


# ---------------------------------------------------------------- configuration

@dataclass
class RunConfig:
    n_max: int | None = None
    primes: int = 4000
    cases: int = 1000
    jobs: int = 1
    format: str = "json"
    output: str | None = None
    claims: str | None = None
    timings: bool = False

    def validate(self):
        if self.n_max is not None and self.n_max < 0:
            raise UsageError("n_max must be >= 0")
        for name in ("primes", "cases", "jobs"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name} must be positive")
        if self.format not in ("json", "text"):
            raise UsageError("format must be json or text")
        return self

    def claim_list(self):
        from .registry import CLAIM_IDS

        if not self.claims:
            return list(CLAIM_IDS)
        ids = [c.strip() for c in self.claims.split(",") if c.strip()]
        unknown = [c for c in ids if c not in CLAIM_IDS]
        if unknown:
            raise UnknownClaim(unknown[0])
        return ids


_INT_KEYS = {"n_max", "primes", "cases", "jobs"}
_BOOL_KEYS = {"timings"}


def _coerce(key, raw: str):
    if key in _INT_KEYS:
        try:
            return int(raw)
        except ValueError:
            raise UsageError(f"{key} needs an integer, got {raw!r}") from None
    if key in _BOOL_KEYS:
        return raw.strip().lower() in ("1", "true", "yes", "on")
    return raw.strip()


def load_config(path: str | None = None, env=None) -> RunConfig:
    """key = value lines ('#' comments), then DCYCLES_<KEY> environment overrides."""
    env = os.environ if env is None else env
    known = {f.name for f in fields(RunConfig)}
    values = {}
    if path:
        try:
            text = open(path, encoding="utf-8").read()
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"config line {lineno}: expected key = value")
            key, raw = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in known:
                raise UsageError(f"config line {lineno}: unknown key {key!r}")
            values[key] = _coerce(key, raw)
    for key in known:
        raw = env.get("DCYCLES_" + key.upper())
        if raw is not None:
            values[key] = _coerce(key, raw)
    return RunConfig(**values).validate()


# ---------------------------------------------------------------- running claims

class UnknownClaim(Exception):
    def __init__(self, claim_id):
        super().__init__(claim_id)
        self.claim_id = claim_id


def _run_one(args) -> dict:
    claim_id, params, timings = args
    from .registry import run_claim

    try:
        rep = run_claim(claim_id, params)
    except (InvalidParameter, BudgetExceeded) as exc:
        chk = Check(claim_id, params)
        chk.details["error"] = str(exc)
        rep = chk.report()
        rep.status = INCONCLUSIVE
    if not timings:
        rep.elapsed_ms = 0
    return rep.to_dict()


def verify_all(config: RunConfig, out=None) -> int:
    out = out or sys.stdout
    ids = config.claim_list()
    params = {}
    if config.n_max is not None:
        params["n_max"] = config.n_max
    tasks = []
    for cid in ids:
        p = dict(params)
        if cid == "table1":
            p["primes"] = config.primes
        if cid == "properties":
            p["cases"] = config.cases
        tasks.append((cid, p, config.timings))
    if config.jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=config.jobs) as ex:
            results = list(ex.map(_run_one, tasks))
    else:
        results = [_run_one(t) for t in tasks]
    counts = {}
    for r in results:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    code = EXIT_OK if all(r["status"] in SUCCESS for r in results) else EXIT_FAIL
    summary = {"summary": {"claims": len(results), "status_counts": dict(sorted(counts.items())),
                           "exit_code": code}}
    sink = open(config.output, "w", encoding="utf-8") if config.output else out
    try:
        for r in results:
            if config.format == "json":
                sink.write(json.dumps(r, sort_keys=True) + "\n")
            else:
                sink.write(f"{r['claim_id']}: {r['status']}\n")
        if config.format == "json":
            sink.write(json.dumps(summary, sort_keys=True) + "\n")
        else:
            sink.write(f"summary: {json.dumps(summary['summary'], sort_keys=True)}\n")
    finally:
        if sink is not out:
            sink.close()
    return code


# ---------------------------------------------------------------- subcommands

def _print_json(obj):
    print(json.dumps(jsonable(obj), sort_keys=True))


def cmd_seq(a, extra):
    from . import seq as S

    if a.n < -1:
        raise UsageError("n must be >= -1")
    kinds = {"h": S.h, "g": S.g, "closed": S.h_closed, "oracle": S.h_oracle}
    fn = kinds[a.kind]
    idx = range(0, a.n + 1) if a.upto else [a.n]
    vals = []
    for n in idx:
        v = fn(a.d, n)
        vals.append(v % a.mod if a.mod else v)
    print("\n".join(str(v) for v in vals))
    return EXIT_OK


def cmd_poly(a, extra):
    from . import families as F

    fam = a.family
    if fam == "h":
        p = F.h_poly(a.d, a.n)
    elif fam == "w":
        p = F.w_poly(a.d, a.n)
    elif fam == "v":
        p = F.v_poly(a.n)
    elif fam == "r":
        p = F.r_poly(a.n)
    else:
        p = F.u_poly(a.n)
    if a.mod:
        p = p.reduce_mod(a.mod).lift()
    print(str(p))
    return EXIT_OK


def cmd_period(a, extra):
    from dataclasses import asdict

    from .period import basic_period

    rep = basic_period(a.d, a.c, a.search_bound)
    _print_json(asdict(rep))
    return EXIT_OK if rep.certified else EXIT_FAIL


def cmd_valuation(a, extra):
    from dataclasses import asdict

    from . import padic
    from .arith import is_prime, nu_p
    from .seq import h

    if not is_prime(a.p):
        raise UsageError("--p must be prime")
    if a.n1 is not None:
        tree = padic.hensel_classify(a.d, a.p, a.n1, a.depth)
        _print_json(asdict(tree))
        return EXIT_OK
    if a.n is None:
        raise UsageError("give --n (valuation) or --n1 (lifting tree)")
    if a.fprime:
        print(padic.fprime_mod_p(a.d, a.p, a.n))
        return EXIT_OK
    v = nu_p(h(a.d, a.n), a.p)
    print("inf" if v == float("inf") else v)
    return EXIT_OK


def cmd_verify(a, extra):
    from .registry import CLAIM_IDS, run_claim

    if a.all or a.config:
        cfg = load_config(a.config)
        if a.jobs:
            cfg.jobs = a.jobs
        if a.n_max is not None:
            cfg.n_max = a.n_max
        if a.claims:
            cfg.claims = a.claims
        if a.timings:
            cfg.timings = True
        if a.output:
            cfg.output = a.output
        if a.format:
            cfg.format = a.format
        cfg.validate()
        return verify_all(cfg)
    if not a.claim:
        raise UsageError("give --claim ID or --all")
    if a.claim not in CLAIM_IDS:
        raise UnknownClaim(a.claim)
    params = dict(extra)
    if a.n_max is not None:
        params["n_max"] = a.n_max
    rep = run_claim(a.claim, params)
    if not a.timings:
        rep.elapsed_ms = 0
    if a.format == "text":
        print(f"{rep.claim_id}: {rep.status}")
        if rep.first_counterexample:
            print(json.dumps(rep.first_counterexample, sort_keys=True))
    else:
        print(rep.to_json())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_scan(a, extra):
    from . import divisors as D

    p = dict(extra)
    kind = a.kind
    if kind == "pd":
        ds = p.get("d", list(range(2, 11)))
        ds = ds if isinstance(ds, list) else [ds]
        rows = [D.scan_Pd(d, p.get("primes", 100)) for d in ds]
        _print_json([{"d": r.d, "K": r.prime_count, "N": r.N} for r in rows])
    elif kind == "gcd":
        d, n = p.get("d", 4), p.get("n", 4)
        r = D.gcd_report(d, n)
        _print_json({"d": d, "n": n, "predicted": r.predicted, "actual": r.actual})
        return EXIT_OK if r.predicted == r.actual else EXIT_FAIL
    elif kind == "collisions":
        pairs, reason = D.collision_search(p.get("a", 4), p.get("b", 6), p.get("n_max", 100), p.get("m_max", 100))
        _print_json({"pairs": pairs, "reason": reason})
    elif kind == "triples":
        _print_json(D.common_divisor_triples(p.get("ab_max", 10), p.get("n_max", 60)))
    elif kind == "coprime-pairs":
        _print_json(D.coprime_pairs(p.get("ab_max", 10), p.get("n_max", 60)))
    elif kind == "density":
        ds = p.get("d", list(range(2, 11)))
        _print_json(D.density_scan(ds if isinstance(ds, list) else [ds], p.get("primes", 1000)))
    elif kind == "hankel":
        dets = D.hankel_dets(p.get("d", 2), p.get("n_max", 5))
        _print_json([str(x) for x in dets])
    elif kind == "g-valuation":
        rep = D.scan_G_valuation_conjecture(p.get("p", 3), p.get("n_max", 100))
        print(rep.to_json())
        return EXIT_OK if rep.ok else EXIT_FAIL
    return EXIT_OK


def cmd_table1(a, extra):
    from . import divisors as D

    ds = parse_value(a.d)
    ds = ds if isinstance(ds, list) else [ds]
    if any(d < 2 for d in ds):
        raise UsageError("d must be >= 2")
    if a.primes < 1:
        raise UsageError("--primes must be positive")
    rows = D.table1(ds, a.primes, a.jobs)
    if a.format == "csv":
        sys.stdout.write(D.table1_csv(rows))
    else:
        _print_json([{"d": r.d, "K": r.prime_count, "N": r.N, "ratio": str(r.ratio)} for r in rows])
    return EXIT_OK


def build_parser():
    ap = argparse.ArgumentParser(prog="dcycles", description="H_d(n) toolkit and claim verifier",
                                 allow_abbrev=False)
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("seq", allow_abbrev=False, help="values of H_d(n) or G_d(n)")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--kind", choices=["h", "g", "closed", "oracle"], default="h")
    s.add_argument("--mod", type=int)
    s.add_argument("--upto", action="store_true", help="print indices 0..n")

    s = sub.add_parser("poly", allow_abbrev=False, help="print a family polynomial")
    s.add_argument("--family", choices=["h", "w", "v", "r", "u"], default="h")
    s.add_argument("--d", type=int, default=2)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mod", type=int)

    s = sub.add_parser("period", allow_abbrev=False, help="basic period of H_d(n) mod c")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--c", type=int, required=True)
    s.add_argument("--search-bound", type=int, default=10 ** 7)

    s = sub.add_parser("valuation", allow_abbrev=False, help="nu_p(H_d(n)), f' mod p, or a lifting tree")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int)
    s.add_argument("--fprime", action="store_true")
    s.add_argument("--n1", type=int)
    s.add_argument("--depth", type=int, default=2)

    s = sub.add_parser("verify", allow_abbrev=False, help="verify a claim or the whole suite")
    s.add_argument("--claim")
    s.add_argument("--all", action="store_true")
    s.add_argument("--config")
    s.add_argument("--claims", help="comma-separated subset for --all")
    s.add_argument("--jobs", type=int)
    s.add_argument("--n-max", dest="n_max", type=int)
    s.add_argument("--format", choices=["json", "text"])
    s.add_argument("--output")
    s.add_argument("--timings", action="store_true")

    s = sub.add_parser("scan", allow_abbrev=False, help="exploratory scans (raw data)")
    s.add_argument("--kind", required=True,
                   choices=["pd", "gcd", "collisions", "triples", "coprime-pairs", "density",
                            "hankel", "g-valuation"])

    s = sub.add_parser("table1", allow_abbrev=False, help="prime-divisor counts as CSV or JSON")
    s.add_argument("--primes", type=int, default=4000)
    s.add_argument("--d", default="2..10")
    s.add_argument("--format", choices=["csv", "json"], default="csv")
    s.add_argument("--jobs", type=int, default=1)
    return ap


COMMANDS = {"seq": cmd_seq, "poly": cmd_poly, "period": cmd_period, "valuation": cmd_valuation,
            "verify": cmd_verify, "scan": cmd_scan, "table1": cmd_table1}
# subcommands that take free-form --key value parameters
_FREE = {"verify", "scan"}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        a, extra = parser.parse_known_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if extra and a.cmd not in _FREE:
            raise UsageError(f"unrecognized arguments: {' '.join(extra)}")
        params = parse_extra(extra) if extra else {}
        if a.cmd == "verify" and getattr(a, "format", None) is None and not (a.all or a.config):
            a.format = "json"
        return COMMANDS[a.cmd](a, params)
    except UnknownClaim as exc:
        from .registry import CLAIM_IDS

        print(f"dcycles: unknown claim id {exc.claim_id!r}; known ids:", file=sys.stderr)
        for cid in CLAIM_IDS:
            print(f"  {cid}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, InvalidParameter) as exc:
        print(f"dcycles: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"dcycles: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_FAIL
