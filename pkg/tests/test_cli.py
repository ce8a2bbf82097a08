import json
import subprocess
import sys
from pathlib import Path

import pytest

from klrverify.cli import main
from klrverify.config import parse_config
from klrverify.functors import QuotientCache
from klrverify.klr import KLRAlgebra
from klrverify.runner import run_config

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "fixtures"


def run_cli(*args):
    return subprocess.run([sys.executable, "-m", "klrverify", *map(str, args)],
                          capture_output=True, text=True, cwd=ROOT)


def test_sl2_l1_all_pass(tmp_path):
    out = tmp_path / "r.json"
    proc = run_cli("run", FIX / "sl2_l1.json", "--json", out)
    assert proc.returncode == 0, proc.stdout + proc.stderr
    report = json.loads(out.read_text())
    assert report["summary"]["fail"] == 0
    assert report["summary"]["total"] == len(report["cases"])
    assert all(c["status"] == "pass" for c in report["cases"])


def test_cartan_axiom_error_exit_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema": 1, "cartan": {"matrix": [[2, 0], [-1, 2]]},
                               "lambda": {}, "cases": []}))
    proc = run_cli("run", bad)
    assert proc.returncode == 2
    assert "cartan axiom (iii)" in proc.stderr


def test_flipped_eta_sign_exit_1(tmp_path):
    out = tmp_path / "r.json"
    proc = run_cli("run", FIX / "sl2_l2.json", "--debug-flip-eta-sign", "--json", out)
    assert proc.returncode == 1
    report = json.loads(out.read_text())
    failed = [c for c in report["cases"] if c["status"] == "fail"]
    assert failed and all("zigzag" in c["witness"] for c in failed)


def test_cap_abort_exit_3():
    assert main(["run", str(FIX / "sl2_l2.json"), "--cap-seconds", "0.01"]) == 3


def test_report_is_deterministic_modulo_timestamp(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["run", str(FIX / "sl3_L1.json"), "--json", str(a)]) == 0
    assert main(["run", str(FIX / "sl3_L1.json"), "--json", str(b), "--jobs", "2"]) == 0
    ra, rb = json.loads(a.read_text()), json.loads(b.read_text())
    ra.pop("timestamp"), rb.pop("timestamp")
    assert json.dumps(ra, sort_keys=True) == json.dumps(rb, sort_keys=True)


def test_failures_carry_witness():
    cfg = parse_config(json.loads((FIX / "sl2_l2.json").read_text()))
    report, code = run_config(cfg, flip_eta_sign=True)
    assert code == 1
    for case in report["cases"]:
        assert (case["status"] == "fail") == bool(case.get("witness"))
    s = report["summary"]
    assert s["pass"] + s["fail"] + s["skip"] + s["aborted"] == s["total"]


def test_dims_table(capsys):
    assert main(["dims", str(FIX / "sl2_l2.json")]) == 0
    out = capsys.readouterr().out.splitlines()
    rows = {line.split()[0]: line.split() for line in out[1:]}
    assert rows["2i"][3] == "4" and rows["0"][3] == "1"
    assert main(["dims", str(FIX / "sl2_l2.json"), "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [r["dim_A"] for r in data] == [1, 2, 4, 0, 0]


def test_dims_empty_cases(tmp_path, capsys):
    cfg = tmp_path / "e.json"
    cfg.write_text(json.dumps({"cartan": {"matrix": [[2]]}, "lambda": {"1": 1}, "cases": []}))
    assert main(["dims", str(cfg), "--json"]) == 0
    assert json.loads(capsys.readouterr().out) == []


def test_explain(tmp_path, capsys):
    out = tmp_path / "r.json"
    main(["run", str(FIX / "sl2_l1.json"), "--json", str(out)])
    capsys.readouterr()
    assert main(["explain", str(out), "sl2_l1:beta=0:i=i"]) == 0
    text = capsys.readouterr().out
    assert "eq2 certificate" in text and "e(i) (x) e(i)" in text
    assert main(["explain", str(out), "missing"]) == 2
    assert "unknown case id" in capsys.readouterr().err


def test_quotient_cache_roundtrip(tmp_path):
    from klrverify.cartan import validate_cartan
    alg = KLRAlgebra(validate_cartan([[2]]))
    first = QuotientCache(alg, [2], cache_dir=str(tmp_path)).get((2,))
    assert len(list(tmp_path.glob("quotient-*.pkl"))) == 1
    again = QuotientCache(alg, [2], cache_dir=str(tmp_path)).get((2,))
    assert again.basis == first.basis and again.alg is alg
    assert again.reduce(alg.x(1, 2, power=2)) == {}


def test_env_cache(tmp_path, monkeypatch):
    from klrverify.cartan import validate_cartan
    monkeypatch.setenv("KLR_ENGINE_CACHE", str(tmp_path))
    QuotientCache(KLRAlgebra(validate_cartan([[2]])), [1]).get((1,))
    assert list(tmp_path.glob("quotient-*.pkl"))
