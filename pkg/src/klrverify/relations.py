"""Relation suite for R(n) and the multiplication-vs-representation oracle check."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import perms, polyrep
from .klr import KLRAlgebra, KLRElement, Monomial

FAMILIES = ("idempotents", "x_commute", "tau_idempotent", "tau_commute", "tau_square",
            "x_tau", "braid")


@dataclass
class RelationReport:
    checked: dict = field(default_factory=lambda: {f: 0 for f in FAMILIES})
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checked": self.checked, "failures": self.failures[:10]}


def _record(rep: RelationReport, family: str, diff: KLRElement, where, with_oracle: bool):
    rep.checked[family] += 1
    if diff.terms:
        rep.failures.append({"family": family, "where": where, "residue": diff.render()})
    elif with_oracle and not polyrep.acts_as_zero(diff):
        rep.failures.append({"family": family, "where": where, "residue": "oracle"})


def relation_suite(alg: KLRAlgebra, n_max: int = 3, with_oracle: bool = False) -> RelationReport:
    """Each defining relation, moved to one side, must have normal form 0 (n <= n_max, all nu)."""
    rep = RelationReport()
    for n in range(1, n_max + 1):
        seqs = alg.sequences(n)
        one = alg.one(n)
        xs = [alg.x(k, n) for k in range(1, n + 1)]
        taus = [alg.tau(k, n) for k in range(1, n)]
        for nu in seqs:
            e = alg.e(nu)
            for mu in seqs:
                target = e if mu == nu else alg.zero(n)
                _record(rep, "idempotents", e * alg.e(mu) - target, (nu, mu), with_oracle)
            _record(rep, "idempotents", one * e - e, (nu,), with_oracle)
            for k in range(n):
                _record(rep, "x_commute", xs[k] * e - e * xs[k], (nu, k + 1), with_oracle)
                for l in range(n):
                    _record(rep, "x_commute", xs[k] * xs[l] * e - xs[l] * xs[k] * e,
                            (nu, k + 1, l + 1), with_oracle)
            for k in range(1, n):
                t = taus[k - 1]
                snu = perms.swap_positions(nu, k - 1)
                _record(rep, "tau_idempotent", t * e - alg.e(snu) * t, (nu, k), with_oracle)
                for l in range(1, n):
                    if abs(k - l) > 1:
                        _record(rep, "tau_commute", t * taus[l - 1] * e - taus[l - 1] * t * e,
                                (nu, k, l), with_oracle)
                q = alg.q_element(k, k + 1, n) * e
                _record(rep, "tau_square", t * t * e - q, (nu, k), with_oracle)
                for l in range(1, n + 1):
                    sl = k + 1 if l == k else k if l == k + 1 else l
                    lhs = (t * xs[l - 1] - xs[sl - 1] * t) * e
                    if nu[k - 1] == nu[k] and l == k:
                        rhs = -e
                    elif nu[k - 1] == nu[k] and l == k + 1:
                        rhs = e
                    else:
                        rhs = alg.zero(n)
                    _record(rep, "x_tau", lhs - rhs, (nu, k, l), with_oracle)
            for k in range(1, n - 1):
                t1, t2 = taus[k - 1], taus[k]
                lhs = (t2 * t1 * t2 - t1 * t2 * t1) * e
                rhs = alg.qbar_element(k, k + 1, k + 2, n) * e if nu[k - 1] == nu[k + 1] \
                    else alg.zero(n)
                _record(rep, "braid", lhs - rhs, (nu, k), with_oracle)
    return rep


def random_element(alg: KLRAlgebra, n: int, rng: random.Random, terms: int = 3,
                   max_exp: int = 2, beta=None) -> KLRElement:
    """A random combination of normal-form monomials with small integer coefficients."""
    seqs = alg.sequences(n, beta)
    ws = perms.all_perms(n)
    out: dict = {}
    for _ in range(terms):
        m = Monomial(tuple(rng.randint(0, max_exp) for _ in range(n)), rng.choice(ws),
                     rng.choice(seqs))
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        out[m] = out.get(m, 0) + c
    return alg.element(n, {m: c for m, c in out.items() if c})


def oracle_pairs(alg: KLRAlgebra, pairs: int = 100, n_max: int = 3, vectors: int = 10,
                 seed: int = 0) -> dict:
    """act(ab, v) == act(a, act(b, v)) on random pairs and random vectors."""
    rng = random.Random(seed)
    bad = []
    checked = 0
    for p in range(pairs):
        n = 1 + p % n_max
        a = random_element(alg, n, rng)
        b = random_element(alg, n, rng)
        ab = a * b
        for v in polyrep.probe_vectors(alg, n, max_exp=1, random_count=vectors,
                                       seed=rng.randint(0, 10 ** 6))[-vectors:]:
            checked += 1
            if polyrep.act(ab, v) != polyrep.act(a, polyrep.act(b, v)):
                bad.append({"n": n, "a": a.render(), "b": b.render()})
                break
    # agreement on finitely many probes is evidence, not a proof of equality
    return {"ok": not bad, "verdict": "oracle-consistent" if not bad else "oracle-mismatch",
            "pairs": pairs, "vector_checks": checked, "failures": bad[:5]}
