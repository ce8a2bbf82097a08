"""The ten acceptance criteria, each with its wall-clock budget.

Every test appends one PASS/FAIL line to the terminal summary and also prints it.
"""

import json
import subprocess
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

from klrverify.config import load_config
from klrverify.cyclotomic import CycloConfig, CyclotomicAlgebra, radical_and_simples
from klrverify.functors import FunctorCase, check_eq1, solve_eq2, solve_eq3
from klrverify.kfiltration import build_K, run_all, verify_prop_main
from klrverify.mackey import verify_mackey
from klrverify.relations import oracle_pairs, relation_suite
from klrverify.runner import CaseRunner

from conftest import ACCEPTANCE_LINES, AFF_A1, B2, SL2, SL3, algebra

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = sorted((ROOT / "fixtures").glob("*.json"))
FIXTURE_ALGEBRAS = {"sl2": SL2, "sl3": SL3, "B2": B2, "affine A1": AFF_A1}


@contextmanager
def criterion(number: int, title: str, limit: float):
    """Time the block, record a PASS/FAIL line, then assert the outcome."""
    state = {"ok": True, "note": ""}
    start = time.perf_counter()
    try:
        yield state
    except BaseException as exc:
        msg = (str(exc).splitlines() or [""])[0][:120]
        state["ok"], state["note"] = False, f"{type(exc).__name__}: {msg}"
        raise
    finally:
        secs = time.perf_counter() - start
        if state["ok"] and secs >= limit:
            state["ok"], state["note"] = False, f"over budget ({secs:.1f}s >= {limit}s)"
        line = (f"criterion {number}: {'PASS' if state['ok'] else 'FAIL'} {title} "
                f"[{secs:.1f}s / {limit:.0f}s]" + (f" {state['note']}" if state["note"] else ""))
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert secs < limit, f"over budget: {secs:.1f}s"


@pytest.fixture(scope="module")
def runners():
    """One CaseRunner (and quotient cache) per fixture file."""
    out = []
    for path in FIXTURES:
        cfg = load_config(path)
        out.append((cfg, CaseRunner(cfg)))
    return out


def cases_with(runners, check):
    for cfg, runner in runners:
        for spec in cfg.cases:
            if check in spec.checks:
                yield cfg, runner, spec


def test_01_relation_suite():
    with criterion(1, "relation families normal-form to 0 (n <= 3)", 60):
        for name, m in FIXTURE_ALGEBRAS.items():
            rep = relation_suite(algebra(m), n_max=3)
            assert rep.ok, f"{name}: {rep.failures[:1]}"


def test_02_oracle_equivalence():
    with criterion(2, "multiply agrees with the polynomial representation", 120):
        for name, m in FIXTURE_ALGEBRAS.items():
            rep = oracle_pairs(algebra(m), pairs=100, n_max=3)
            assert rep["ok"] and rep["pairs"] >= 100, f"{name}: {rep['failures'][:1]}"


def test_03_mackey():
    with criterion(3, "Mackey map bijective in degrees <= 8", 120):
        sl2 = algebra(SL2)
        for b in range(4):
            rep = verify_mackey(sl2, [b], 0, 8)
            assert rep.ok, f"sl2 beta={b}: {rep.failure}"
        sl3 = algebra(SL3)
        for beta in [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]:
            for i in (0, 1):
                rep = verify_mackey(sl3, beta, i, 8)
                assert rep.ok, f"sl3 beta={beta} i={i}: {rep.failure}"


def test_04_cyclotomic_dimensions():
    with criterion(4, "cyclotomic dimensions and certificates", 300):
        for m, lam in [(SL2, [1]), (SL2, [2]), (SL2, [3]), (SL3, [1, 0]), (SL3, [1, 1]),
                       (B2, [1, 0]), (AFF_A1, [1, 0])]:
            assert CyclotomicAlgebra(algebra(m), [0] * len(m), lam).dim == 1
        sl2 = algebra(SL2)
        for lam, dims in [(1, (1, 1, 0)), (2, (1, 2, 4))]:
            for b, expected in enumerate(dims):
                bases = []
                for buffer, cap in [(2, 30), (5, 60)]:
                    cfg = CycloConfig.make(sl2.datum, [lam], buffer=buffer, degree_cap=cap)
                    A = CyclotomicAlgebra(sl2, [b], [lam], cfg)
                    assert A.dim == expected, f"l={lam} beta={b}: {A.dim} != {expected}"
                    assert A.certificates["closure"] and A.certificates["stabilized"]
                    bases.append(A.basis)
                assert bases[0] == bases[1], "saturation depends on the bound"


def test_05_rho(runners):
    with criterion(5, "rho bijective and dimension ledger on every fixture case", 300):
        signs = set()
        for cfg, runner, spec in cases_with(runners, "rho"):
            case = FunctorCase(runner.cache, spec.beta, spec.i)
            assert case.rho().bijective, spec.id
            assert case.dimension_ledger(), spec.id
            signs.add(case.lam >= 0)
        assert signs == {True, False}, "both signs of lambda_i must occur"


def test_06_zigzag(runners):
    with criterion(6, "zigzag identities; flipped eta sign fails somewhere", 600):
        flipped_failures = 0
        for cfg, runner, spec in cases_with(runners, "zigzag"):
            z = runner._zigzag(spec, FunctorCase(runner.cache, spec.beta, spec.i), None)
            assert z["status"] == "pass", spec.id
            bad = FunctorCase(runner.cache, spec.beta, spec.i, flip_eta_sign=True)
            flip = CaseRunner(cfg, runner.cache, flip_eta_sign=True)._zigzag(spec, bad, None)
            flipped_failures += flip["status"] == "fail"
        assert flipped_failures >= 1, "the eta sign flip broke no zigzag"


def test_07_eq_certificates(runners):
    with criterion(7, "eq1 membership, eq2 and eq3 solvability", 300):
        passed = {"eq1": 0, "eq2": 0, "eq3": 0}
        for fn, name in [(check_eq1, "eq1"), (solve_eq2, "eq2"), (solve_eq3, "eq3")]:
            for cfg, runner, spec in cases_with(runners, name):
                rep = fn(FunctorCase(runner.cache, spec.beta, spec.i))
                assert rep.status in ("pass", "skip"), f"{name} {spec.id}: {rep.detail}"
                passed[name] += rep.status == "pass"
        assert all(passed.values()), f"some equation was never applicable: {passed}"


def test_08_k_suite():
    with criterion(8, "K filtration suite on sl2 (l=1,2) and sl3", 600):
        from conftest import functor_case
        for m, lam, beta, i in [(SL2, [1], [0], 0), (SL2, [1], [1], 0), (SL2, [2], [0], 0),
                                (SL2, [2], [1], 0), (SL3, [1, 1], [1, 1], 0)]:
            K = build_K(functor_case(m, lam, beta, i))
            for rep in run_all(K):
                assert rep.ok, f"{rep.name} failed for lam={lam} beta={beta}"
            c, rep = verify_prop_main(K)
            assert c is not None and c != 0 and rep.detail["residual_zero"]


def test_09_projectivity(runners):
    with criterion(9, "F1 right- and E1 left-projective on every fixture case", 120):
        for cfg, runner, spec in cases_with(runners, "projectivity"):
            p = runner._projectivity(spec, FunctorCase(runner.cache, spec.beta, spec.i), None)
            assert p["status"] == "pass", spec.id


def _weight_table(lam, max_height):
    script = ROOT / "scripts" / "weight_multiplicities.py"
    out = subprocess.run([sys.executable, str(script), "--lambda", *map(str, lam),
                          "--max-height", str(max_height)],
                         check=True, capture_output=True, text=True).stdout
    return {tuple(r["beta"]): r["multiplicity"] for r in json.loads(out)["table"]}


def test_10_simples_vs_weights():
    with criterion(10, "simple modules match weight multiplicities", 300):
        for m, lam, height in [(SL2, [1], 4), (SL2, [2], 4), (SL3, [1, 0], 3)]:
            alg = algebra(m)
            for beta, mult in _weight_table(lam, height).items():
                A = CyclotomicAlgebra(alg, beta, lam)
                simples = radical_and_simples(A)[1]
                assert simples == mult, f"lam={lam} beta={beta}: {simples} simples vs {mult}"
