"""Sparse multivariate polynomials: dicts mapping exponent tuples to exact coefficients."""

from __future__ import annotations

from typing import Dict, Tuple

Exps = Tuple[int, ...]
Poly = Dict[Exps, object]


def one(n: int) -> Poly:
    return {(0,) * n: 1}


def var(n: int, k: int, power: int = 1) -> Poly:
    e = [0] * n
    e[k] = power
    return {tuple(e): 1}


def add_into(acc: Poly, p: Poly, scale=1) -> Poly:
    for e, c in p.items():
        v = acc.get(e, 0) + scale * c
        if v:
            acc[e] = v
        else:
            acc.pop(e, None)
    return acc


def add(p: Poly, q: Poly, scale=1) -> Poly:
    return add_into(dict(p), q, scale)


def mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in p.items():
        for e2, c2 in q.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e, 0) + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def swap(p: Poly, a: int, b: int) -> Poly:
    """Apply the transposition of variables x_a <-> x_b."""
    out: Poly = {}
    for e, c in p.items():
        l = list(e)
        l[a], l[b] = l[b], l[a]
        out[tuple(l)] = c
    return out


def _hsum(n: int, a: int, b: int, deg: int, base: Exps) -> list[Exps]:
    """Exponents of base * sum_{i+j=deg} x_a^i x_b^j."""
    out = []
    for i in range(deg + 1):
        e = list(base)
        e[a] += i
        e[b] += deg - i
        out.append(tuple(e))
    return out


def divided_difference(p: Poly, a: int, b: int) -> Poly:
    """(s_{a,b} p - p) / (x_a - x_b), computed exactly monomial by monomial."""
    out: Poly = {}
    for e, c in p.items():
        ea, eb = e[a], e[b]
        if ea == eb:
            continue
        low = min(ea, eb)
        base = list(e)
        base[a] = low
        base[b] = low
        sign = -1 if ea > eb else 1
        for f in _hsum(len(e), a, b, abs(ea - eb) - 1, tuple(base)):
            v = out.get(f, 0) + sign * c
            if v:
                out[f] = v
            else:
                out.pop(f, None)
    return out


def q_poly(qmat, i: int, j: int, n: int, a: int, b: int) -> Poly:
    """Q_ij(x_a, x_b) as a polynomial in n variables."""
    out: Poly = {}
    for p, q, t in qmat.terms(i, j):
        e = [0] * n
        e[a] += p
        e[b] += q
        add_into(out, {tuple(e): t})
    return out


def qbar_poly(qmat, i: int, j: int, n: int, a: int, b: int, c: int) -> Poly:
    """(Q_ij(x_a, x_b) - Q_ij(x_c, x_b)) / (x_a - x_c)."""
    out: Poly = {}
    for p, q, t in qmat.terms(i, j):
        if p == 0:
            continue
        base = [0] * n
        base[b] = q
        for f in _hsum(n, a, c, p - 1, tuple(base)):
            add_into(out, {f: t})
    return out


def render(p: Poly, names=None) -> str:
    if not p:
        return "0"
    parts = []
    for e in sorted(p, reverse=True):
        c = p[e]
        mono = "*".join(
            (f"x{k + 1}" if v == 1 else f"x{k + 1}^{v}") for k, v in enumerate(e) if v)
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts).replace("+ -", "- ")
