"""Execution of configured verification cases and assembly of the JSON report."""

from __future__ import annotations

import datetime as _dt
import signal
import threading
import time
import traceback
from concurrent.futures import ProcessPoolExecutor, wait
from fractions import Fraction

from . import __version__
from .config import VerifyConfig, beta_label, parse_config
from .cyclotomic import CycloConfig, CyclotomicError, radical_and_simples
from .functors import (FunctorCase, QuotientCache, VerificationError, check_eq1, projectivity,
                       solve_eq2, solve_eq3, verify_zigzag)
from .kfiltration import (KModule, TruncationError, check_intertwiner_congruence,
                          eq10_identity, p_map_checks, verify_dirL, verify_grin, verify_grind,
                          verify_P_E, verify_prop_main)
from .klr import KLRAlgebra
from .mackey import verify_mackey

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_CAP = 0, 1, 2, 3

# readings of misprints in the source statements, echoed into every K-module report
INTERPRETATIONS = {
    "c": "the constant c is read as a unit of k_0",
    "beta_plus_2alpha": "R^L(beta^+2alpha_i) is read as R^L(beta+2alpha_i)",
    "final_equations": "'eq1, eq2 and eq1' is read as eq1, eq2, eq3",
    "kernel_of_x": "Ker(x) = S is checked modulo e(beta,i^2)R^L(beta+alpha_i); "
                   "the literal equality is reported but not required",
}


class CapExceeded(RuntimeError):
    """The --cap-seconds budget ran out."""


def jsonable(obj):
    """Plain JSON data: tuples become lists, Fractions strings, keys strings."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    if isinstance(obj, Fraction):
        return str(obj) if obj.denominator != 1 else int(obj)
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    return str(obj)


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


class CaseRunner:
    """Runs the checks of one case; quotients may be shared through ``cache``."""

    def __init__(self, cfg: VerifyConfig, cache: QuotientCache | None = None,
                 flip_eta_sign: bool = False):
        self.cfg = cfg
        if cache is None:
            alg = KLRAlgebra(cfg.datum, cfg.qmat)
            cyc = CycloConfig.make(cfg.datum, cfg.lam, buffer=cfg.bounds.buffer,
                                   degree_cap=cfg.bounds.degree_cap)
            cache = QuotientCache(alg, cfg.lam, cyc)
        self.cache = cache
        self.alg = cache.alg
        self.flip = flip_eta_sign

    def run(self, spec) -> dict:
        entry = {"id": spec.id,
                 "parameters": {"beta": list(spec.beta),
                                "beta_label": beta_label(self.cfg.datum, spec.beta),
                                "i": self.cfg.datum.labels[spec.i],
                                "lambda": list(self.cfg.lam)},
                 "checks": {}}
        case = None
        kmod = None
        for name in spec.checks:
            try:
                if name != "mackey" and case is None:
                    case = FunctorCase(self.cache, spec.beta, spec.i, flip_eta_sign=self.flip)
                    entry["parameters"]["lambda_i"] = case.lam
                if name in ("grin", "prop_main") and kmod is None:
                    kmod = KModule(case, dx=self.cfg.bounds.D)
                result = getattr(self, "_" + name)(spec, case, kmod)
            except CapExceeded:
                raise
            except (VerificationError, CyclotomicError, TruncationError) as exc:
                result = {"status": "fail", "error": f"{type(exc).__name__}: {exc}"}
            except Exception as exc:  # an engine bug is a failed check, not a crash
                result = {"status": "fail", "error": f"{type(exc).__name__}: {exc}",
                          "traceback": traceback.format_exc(limit=4).splitlines()[-6:]}
            entry["checks"][name] = jsonable(result)
        if case is not None:
            try:
                entry["dims"] = jsonable(case.dims())
                entry["certificates"] = jsonable({"A": case.A.certificates,
                                                  "B": case.B.certificates})
            except (VerificationError, CyclotomicError) as exc:
                entry["dims"] = {"error": str(exc)}
        states = [c["status"] for c in entry["checks"].values()]
        if "fail" in states:
            entry["status"] = "fail"
            entry["witness"] = {k: v for k, v in entry["checks"].items() if v["status"] == "fail"}
        elif "pass" in states:
            entry["status"] = "pass"
        else:
            entry["status"] = "skip"
        return entry

    # -- individual checks ---------------------------------------------------------------

    def _mackey(self, spec, case, kmod):
        rep = verify_mackey(self.alg, spec.beta, spec.i, self.cfg.bounds.mackey_D)
        out = {"status": _status(rep.ok), "max_degree": rep.max_degree,
               "degrees_checked": len(rep.degrees)}
        if rep.failure:
            out["failure"] = rep.failure
        return out

    def _cyclotomic(self, spec, case, kmod):
        A, B = case.A, case.B
        certs = dict(A.certificates)
        ok = all(certs.values()) and all(B.certificates.values())
        return {"status": _status(ok), "dim": A.dim, "dim_beta_plus_alpha": B.dim,
                "certificates": certs}

    def _rho(self, spec, case, kmod):
        r = case.rho()
        ledger = case.dimension_ledger()
        return {"status": _status(r.bijective and ledger), "rho_case": r.case,
                "rank": r.rank, "source_dim": r.source_dim, "target_dim": r.target_dim,
                "dimension_ledger": ledger, "dims": case.dims()}

    def _zigzag(self, spec, case, kmod):
        z = verify_zigzag(case)
        tri = case.triangle_identities()
        ok = z["zigzagE"]["ok"] and z["zigzagF"]["ok"] and all(tri.values())
        return {"status": _status(ok), **z, "triangles": tri,
                "eta_sign_flipped": self.flip}

    def _eq(self, report):
        d = report.as_dict()
        return {"status": d["status"], "detail": d["detail"], "certificate": d["certificate"]}

    def _eq1(self, spec, case, kmod):
        return self._eq(check_eq1(case))

    def _eq2(self, spec, case, kmod):
        return self._eq(solve_eq2(case))

    def _eq3(self, spec, case, kmod):
        return self._eq(solve_eq3(case))

    def _grin(self, spec, case, kmod):
        reports = [verify_dirL(kmod), verify_grin(kmod), verify_grind(kmod),
                   check_intertwiner_congruence(kmod), verify_P_E(kmod), p_map_checks(kmod),
                   eq10_identity(kmod)]
        return {"status": _status(all(r.ok for r in reports)), "D": kmod.dx,
                "degree_truncation": kmod.dmax, "interpretations": INTERPRETATIONS,
                "reports": {r.name: {"ok": r.ok, **r.detail} for r in reports}}

    def _prop_main(self, spec, case, kmod):
        c, rep = verify_prop_main(kmod)
        return {"status": _status(rep.ok), "D": kmod.dx,
                "interpretations": {"c": INTERPRETATIONS["c"]},
                "prop_main_c": None if c is None else str(c), **rep.detail}

    def _projectivity(self, spec, case, kmod):
        p = projectivity(case)
        return {"status": _status(all(p.values())), **p}

    def _simples(self, spec, case, kmod):
        rad, simples = radical_and_simples(case.A)
        return {"status": "pass", "dim": case.A.dim, "radical_dim": rad, "simples": simples}


# -- whole runs ---------------------------------------------------------------------------


def _worker(raw: dict, name: str, index: int, flip: bool) -> tuple[dict, float]:
    cfg = parse_config(raw, name)
    t0 = time.perf_counter()
    entry = CaseRunner(cfg, flip_eta_sign=flip).run(cfg.cases[index])
    return entry, time.perf_counter() - t0


def _alarm(signum, frame):
    raise CapExceeded("cap-seconds exceeded")


def run_config(cfg: VerifyConfig, jobs: int = 1, cap_seconds: float | None = None,
               flip_eta_sign: bool = False) -> tuple[dict, int]:
    """Run every case; return the report and the exit code."""
    start = time.perf_counter()
    entries: list[dict | None] = [None] * len(cfg.cases)
    elapsed: dict[str, float] = {}
    aborted = False
    if jobs > 1 and len(cfg.cases) > 1:
        pool = ProcessPoolExecutor(max_workers=jobs)
        futures = {pool.submit(_worker, cfg.raw, cfg.name, k, flip_eta_sign): k
                   for k in range(len(cfg.cases))}
        done, pending = wait(futures, timeout=cap_seconds)
        for fut in done:
            entry, secs = fut.result()
            k = futures[fut]
            entries[k] = entry
            elapsed[entry["id"]] = round(secs, 3)
        if pending:
            aborted = True
            for fut in pending:
                fut.cancel()
            for proc in list(getattr(pool, "_processes", {}).values()):
                proc.terminate()
        pool.shutdown(wait=not pending, cancel_futures=True)
    else:
        runner = CaseRunner(cfg, flip_eta_sign=flip_eta_sign)
        use_alarm = cap_seconds is not None and threading.current_thread() is threading.main_thread()
        if use_alarm:
            old = signal.signal(signal.SIGALRM, _alarm)
            signal.setitimer(signal.ITIMER_REAL, cap_seconds)
        try:
            for k, spec in enumerate(cfg.cases):
                t0 = time.perf_counter()
                entries[k] = runner.run(spec)
                elapsed[spec.id] = round(time.perf_counter() - t0, 3)
        except CapExceeded:
            aborted = True
        finally:
            if use_alarm:
                signal.setitimer(signal.ITIMER_REAL, 0)
                signal.signal(signal.SIGALRM, old)
    for k, spec in enumerate(cfg.cases):
        if entries[k] is None:
            entries[k] = {"id": spec.id, "status": "aborted", "checks": {}}
    counts = {s: sum(1 for e in entries if e["status"] == s)
              for s in ("pass", "fail", "skip", "aborted")}
    report = {
        "schema": 1,
        "engine": {"name": "klrverify", "version": __version__},
        "config": jsonable(cfg.raw),
        "flags": {"debug_flip_eta_sign": flip_eta_sign},
        "cases": entries,
        "summary": {"total": len(entries), **counts, "aborted_run": aborted},
        "timestamp": {"generated": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
                      "elapsed_seconds": elapsed,
                      "total_seconds": round(time.perf_counter() - start, 3)},
    }
    if aborted:
        code = EXIT_CAP
    elif counts["fail"]:
        code = EXIT_FAIL
    else:
        code = EXIT_OK
    return report, code


def dims_table(cfg: VerifyConfig) -> list[dict]:
    """Dimensions of R^L(beta), R^L(beta+a_i) and the kernels for each case."""
    runner = CaseRunner(cfg)
    rows = []
    for spec in cfg.cases:
        case = FunctorCase(runner.cache, spec.beta, spec.i)
        d = case.dims()
        rows.append({"id": spec.id, "beta": beta_label(cfg.datum, spec.beta),
                     "i": cfg.datum.labels[spec.i], "lambda_i": case.lam,
                     "dim_A": d["A"], "dim_B": d["B"], "E": d["E"], "F": d["F"],
                     "EF": d["EF"], "FE": d["FE"]})
    return rows
