"""Faithful polynomial representation of R(n), used as an independent oracle.

A vector is a dict ``nu -> poly``: an element of the direct sum of
``k[x_1..x_n] e(nu)``. On equal colours tau_k acts by the divided difference;
otherwise it swaps variables and multiplies by Q when crossing down.
"""

from __future__ import annotations

import random
from itertools import product

from . import perms, polys

PolyVector = dict


def _add(acc: dict, nu, p: dict, scale=1) -> None:
    cur = acc.setdefault(nu, {})
    polys.add_into(cur, p, scale)
    if not cur:
        del acc[nu]


def tau_action(alg, k: int, vec: PolyVector) -> PolyVector:
    """Action of tau_k (0-based) on a vector."""
    out: PolyVector = {}
    for nu, f in vec.items():
        n = len(nu)
        if nu[k] == nu[k + 1]:
            _add(out, nu, polys.divided_difference(f, k, k + 1))
            continue
        g = polys.swap(f, k, k + 1)
        if nu[k] > nu[k + 1]:
            g = polys.mul(polys.q_poly(alg.qmat, nu[k], nu[k + 1], n, k + 1, k), g)
        _add(out, perms.swap_positions(nu, k), g)
    return out


def act(r, vec: PolyVector) -> PolyVector:
    """Action of a KLR element on a polynomial vector."""
    alg = r.alg
    out: PolyVector = {}
    for m, c in r.terms.items():
        f = vec.get(m.nu)
        if not f:
            continue
        cur = {m.nu: f}
        for k in reversed(m.word):
            cur = tau_action(alg, k, cur)
        for nu, g in cur.items():
            _add(out, nu, polys.mul({m.a: 1}, g), c)
    return out


def divided_difference(a: int, b: int, vec: PolyVector) -> PolyVector:
    """(s_ab f - f)/(x_a - x_b) on components with nu_a = nu_b (1-based positions)."""
    if a == b:
        raise ValueError("divided difference needs two distinct positions")
    out: PolyVector = {}
    for nu, f in vec.items():
        if nu[a - 1] == nu[b - 1]:
            _add(out, nu, polys.divided_difference(f, a - 1, b - 1))
    return out


def probe_vectors(alg, n: int, beta=None, max_exp: int = 2, random_count: int = 4,
                  seed: int = 0) -> list[PolyVector]:
    """Monomials x^a e(nu) with exponents <= max_exp plus some random vectors."""
    seqs = alg.sequences(n, beta)
    out = []
    for nu in seqs:
        for a in product(range(max_exp + 1), repeat=n):
            out.append({nu: {a: 1}})
    rng = random.Random(seed)
    for _ in range(random_count):
        vec = {}
        for nu in seqs:
            p = {}
            for _ in range(3):
                a = tuple(rng.randint(0, max_exp + 1) for _ in range(n))
                polys.add_into(p, {a: rng.randint(-3, 3) or 1})
            if p:
                vec[nu] = p
        out.append(vec)
    return out


def oracle_equal(r1, r2, trials: int = 4, beta=None, max_exp: int = 2, seed: int = 0) -> bool:
    """Compare two elements through their actions on the probe set plus `trials` random vectors."""
    if r1.n != r2.n:
        return False
    diff = r1 - r2
    if not diff.terms:
        return True
    for v in probe_vectors(r1.alg, r1.n, beta, max_exp, random_count=trials, seed=seed):
        if act(diff, v):
            return False
    return True


def acts_as_zero(r, beta=None, max_exp: int = 2) -> bool:
    return all(not act(r, v) for v in probe_vectors(r.alg, r.n, beta, max_exp))
