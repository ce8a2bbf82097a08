"""Quiver Hecke (KLR) algebras R(n) in the normal-form basis x^a tau_w e(nu).

Products are computed by straightening: polynomials are pushed to the left
with the divided-difference rule, squares of crossings become Q-polynomials,
and non-canonical reduced words are moved to the canonical (lexicographically
smallest) one with braid moves, each equal-coloured braid move contributing
its Q-bar correction term.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterable, NamedTuple

from . import perms, polys
from .cartan import CartanDatum, QMatrix, default_q, enumerate_Ibeta


class Monomial(NamedTuple):
    """x^a tau_w e(nu); ``nu`` is the right idempotent."""

    a: tuple[int, ...]
    w: tuple[int, ...]
    nu: tuple[int, ...]

    @property
    def left(self) -> tuple[int, ...]:
        return perms.act(self.w, self.nu)

    @property
    def word(self) -> tuple[int, ...]:
        return perms.canonical_word(self.w)


def _add_into(acc: dict, terms: dict, scale=1) -> dict:
    for m, c in terms.items():
        v = acc.get(m, 0) + scale * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


def _normalize(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class KLRAlgebra:
    """R(n) for all n attached to a Cartan datum and Q-matrix; holds rewrite caches."""

    def __init__(self, datum: CartanDatum, qmat: QMatrix | None = None):
        self.datum = datum
        self.qmat = qmat if qmat is not None else default_q(datum)
        self._sq = tuple(datum.form(i, i) for i in range(datum.rank))
        self._nf_cache: dict = {}
        self._tauperm_cache: dict = {}
        self._ltau_cache: dict = {}

    def __getstate__(self):
        # rewrite caches are rebuilt on demand
        return {"datum": self.datum, "qmat": self.qmat}

    def __setstate__(self, state):
        self.__init__(state["datum"], state["qmat"])

    # -- construction helpers -------------------------------------------------

    def element(self, n: int, terms=None) -> "KLRElement":
        return KLRElement(self, n, terms or {})

    def zero(self, n: int) -> "KLRElement":
        return KLRElement(self, n, {})

    def sequences(self, n: int, beta=None) -> list[tuple[int, ...]]:
        if beta is None:
            return list(product(range(self.datum.rank), repeat=n))
        return enumerate_Ibeta(self.datum, beta)

    def e(self, nu) -> "KLRElement":
        nu = tuple(self.datum.index(x) if isinstance(x, str) else x for x in nu)
        n = len(nu)
        return KLRElement(self, n, {Monomial((0,) * n, perms.identity(n), nu): 1})

    def idempotent(self, beta) -> "KLRElement":
        beta = self.datum.root(beta)
        n = sum(beta)
        return KLRElement(self, n, {Monomial((0,) * n, perms.identity(n), nu): 1
                                    for nu in self.sequences(n, beta)})

    def idempotent_tail(self, beta, i, ell: int = 1) -> "KLRElement":
        """e(beta, i^ell): sum of e(nu) over nu in I^{beta + ell alpha_i} ending in i^ell."""
        beta = self.datum.root(beta)
        k = self.datum.index(i)
        n = sum(beta) + ell
        return KLRElement(self, n, {
            Monomial((0,) * n, perms.identity(n), nu + (k,) * ell): 1
            for nu in self.sequences(n - ell, beta)})

    def one(self, n: int, beta=None) -> "KLRElement":
        return KLRElement(self, n, {Monomial((0,) * n, perms.identity(n), nu): 1
                                    for nu in self.sequences(n, beta)})

    def x(self, k: int, n: int, beta=None, power: int = 1) -> "KLRElement":
        """x_k (1-based) summed over idempotents."""
        a = [0] * n
        a[k - 1] = power
        a = tuple(a)
        return KLRElement(self, n, {Monomial(a, perms.identity(n), nu): 1
                                    for nu in self.sequences(n, beta)})

    def tau(self, k: int, n: int, beta=None) -> "KLRElement":
        """tau_k (1-based) summed over idempotents."""
        if not 1 <= k < n:
            raise ValueError(f"tau_{k} out of range for n={n}")
        w = perms.swap_positions(perms.identity(n), k - 1)
        return KLRElement(self, n, {Monomial((0,) * n, w, nu): 1
                                    for nu in self.sequences(n, beta)})

    def poly_element(self, poly: dict, n: int, beta=None) -> "KLRElement":
        out = {}
        for nu in self.sequences(n, beta):
            for a, c in poly.items():
                out[Monomial(a, perms.identity(n), nu)] = c
        return KLRElement(self, n, out)

    # -- grading ---------------------------------------------------------------

    def tau_degree(self, w, nu) -> int:
        d = 0
        seq = tuple(nu)
        for k in reversed(perms.canonical_word(tuple(w))):
            d -= self.datum.form(seq[k], seq[k + 1])
            seq = perms.swap_positions(seq, k)
        return d

    def degree(self, m: Monomial) -> int:
        mu = m.left
        return sum(a * self._sq[c] for a, c in zip(m.a, mu)) + self.tau_degree(m.w, m.nu)

    # -- straightening ---------------------------------------------------------

    def _poly_times(self, poly: dict, terms: dict) -> dict:
        out: dict = {}
        for e, c in poly.items():
            for m, d in terms.items():
                key = Monomial(tuple(x + y for x, y in zip(e, m.a)), m.w, m.nu)
                v = out.get(key, 0) + c * d
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
        return out

    def _left_tau(self, k: int, terms: dict) -> dict:
        out: dict = {}
        for m, c in terms.items():
            _add_into(out, self._left_tau_mono(k, m), c)
        return out

    def _left_tau_mono(self, k: int, m: Monomial) -> dict:
        key = (k, m)
        hit = self._ltau_cache.get(key)
        if hit is not None:
            return hit
        n = len(m.nu)
        mu = m.left
        sa = list(m.a)
        sa[k], sa[k + 1] = sa[k + 1], sa[k]
        out = self._poly_times({tuple(sa): 1}, self._tau_times_perm(k, m.w, m.nu))
        if mu[k] == mu[k + 1]:
            dd = polys.divided_difference({m.a: 1}, k, k + 1)
            if dd:
                _add_into(out, self._poly_times(dd, {Monomial((0,) * n, m.w, m.nu): 1}))
        self._ltau_cache[key] = out
        return out

    def _tau_times_perm(self, k: int, w: tuple, nu: tuple) -> dict:
        """Normal form of tau_k tau_w e(nu)."""
        key = (k, w, nu)
        hit = self._tauperm_cache.get(key)
        if hit is not None:
            return hit
        n = len(nu)
        zero = (0,) * n
        if not perms.is_left_descent(w, k):
            out = self._nf_reduced((k,) + perms.canonical_word(w), nu)
        else:
            v = perms.swap_positions(w, k)
            word = (k,) + perms.canonical_word(v)
            # tau_canon(w) = tau_word - C with C the correction of word -> canon(w)
            C = dict(self._nf_reduced(word, nu))
            _add_into(C, {Monomial(zero, w, nu): 1}, -1)
            mu = perms.act(v, nu)
            qp = polys.q_poly(self.qmat, mu[k], mu[k + 1], n, k, k + 1)
            out = self._poly_times(qp, {Monomial(zero, v, nu): 1})
            _add_into(out, self._left_tau(k, C), -1)
        self._tauperm_cache[key] = out
        return out

    def _word_poly_word(self, A, poly, B, nu) -> dict:
        terms = self._poly_times(poly, self._nf_reduced(tuple(B), nu))
        for k in reversed(A):
            terms = self._left_tau(k, terms)
        return terms

    def _nf_reduced(self, word: tuple, nu: tuple) -> dict:
        """Normal form of tau_{word} e(nu) for a reduced word."""
        key = (word, nu)
        hit = self._nf_cache.get(key)
        if hit is not None:
            return hit
        n = len(nu)
        w = perms.from_word(word, n)
        out = {Monomial((0,) * n, w, nu): 1}
        cur = tuple(word)
        for p, old, new in perms.moves_to_canonical(cur, n):
            if len(old) == 3:
                j = min(old)
                A, B = cur[:p], cur[p + 3:]
                mu = perms.act(perms.from_word(B, n), nu)
                if mu[j] == mu[j + 2] and mu[j] != mu[j + 1]:
                    qb = polys.qbar_poly(self.qmat, mu[j], mu[j + 1], n, j, j + 1, j + 2)
                    if qb:
                        corr = self._word_poly_word(A, qb, B, nu)
                        sign = 1 if old[0] == j + 1 else -1
                        _add_into(out, corr, sign)
            cur = cur[:p] + tuple(new) + cur[p + len(old):]
        self._nf_cache[key] = out
        return out

    def word_element(self, word: Iterable[int], nu) -> "KLRElement":
        """Normal form of tau_{word} e(nu) for an arbitrary (1-based) word."""
        nu = tuple(nu)
        terms = {Monomial((0,) * len(nu), perms.identity(len(nu)), nu): 1}
        for k in reversed(list(word)):
            terms = self._left_tau(k - 1, terms)
        return KLRElement(self, len(nu), terms)

    def multiply_terms(self, a: dict, b: dict) -> dict:
        by_left: dict = {}
        for m, c in b.items():
            by_left.setdefault(m.left, {})[m] = c
        out: dict = {}
        for m, c in a.items():
            part = by_left.get(m.nu)
            if not part:
                continue
            terms = part
            for k in reversed(perms.canonical_word(m.w)):
                terms = self._left_tau(k, terms)
            if any(m.a):
                terms = self._poly_times({m.a: 1}, terms)
            _add_into(out, terms, c)
        return out

    def multiply(self, a: "KLRElement", b: "KLRElement") -> "KLRElement":
        if a.n != b.n:
            raise ValueError(f"mismatched n: {a.n} vs {b.n}")
        return KLRElement(self, a.n, self.multiply_terms(a.terms, b.terms))

    def psi(self, r: "KLRElement") -> "KLRElement":
        """Anti-involution fixing e(nu), x_k and tau_l."""
        out: dict = {}
        n = r.n
        for m, c in r.terms.items():
            terms = {Monomial(m.a, perms.identity(n), m.left): 1}
            for k in perms.canonical_word(m.w):
                terms = self._left_tau(k, terms)
            _add_into(out, terms, c)
        return KLRElement(self, n, out)

    # -- distinguished elements --------------------------------------------------

    def q_element(self, a: int, b: int, n: int, beta=None) -> "KLRElement":
        """Q_{a,b} = sum_nu Q_{nu_a,nu_b}(x_a, x_b) e(nu) (1-based positions)."""
        if not (1 <= a <= n and 1 <= b <= n) or a == b:
            raise ValueError("positions out of range")
        out = {}
        for nu in self.sequences(n, beta):
            for e, c in polys.q_poly(self.qmat, nu[a - 1], nu[b - 1], n, a - 1, b - 1).items():
                out[Monomial(e, perms.identity(n), nu)] = c
        return KLRElement(self, n, out)

    def qbar_element(self, a: int, b: int, c: int, n: int, beta=None) -> "KLRElement":
        if len({a, b, c}) != 3 or not all(1 <= t <= n for t in (a, b, c)):
            raise ValueError("positions out of range")
        out = {}
        for nu in self.sequences(n, beta):
            if nu[a - 1] != nu[c - 1]:
                continue
            qb = polys.qbar_poly(self.qmat, nu[a - 1], nu[b - 1], n, a - 1, b - 1, c - 1)
            for e, v in qb.items():
                out[Monomial(e, perms.identity(n), nu)] = v
        return KLRElement(self, n, out)

    def e_ab(self, a: int, b: int, n: int, beta=None) -> "KLRElement":
        return KLRElement(self, n, {Monomial((0,) * n, perms.identity(n), nu): 1
                                    for nu in self.sequences(n, beta) if nu[a - 1] == nu[b - 1]})

    def intertwiner(self, a: int, n: int, beta=None) -> "KLRElement":
        """phi_a: ((x_a - x_{a+1}) tau_a + 1) e(nu) on equal colours, tau_a e(nu) otherwise."""
        if not 1 <= a < n:
            raise ValueError("intertwiner index out of range")
        k = a - 1
        w = perms.swap_positions(perms.identity(n), k)
        zero = (0,) * n
        out: dict = {}
        for nu in self.sequences(n, beta):
            if nu[k] == nu[k + 1]:
                ea = list(zero); ea[k] = 1
                eb = list(zero); eb[k + 1] = 1
                _add_into(out, {Monomial(tuple(ea), w, nu): 1,
                                Monomial(tuple(eb), w, nu): -1,
                                Monomial(zero, perms.identity(n), nu): 1})
            else:
                out[Monomial(zero, w, nu)] = 1
        return KLRElement(self, n, out)

    def intertwiner_word(self, word: Iterable[int], n: int, beta=None) -> "KLRElement":
        out = self.one(n, beta)
        for a in word:
            out = out * self.intertwiner(a, n, beta)
        return out

    # -- embeddings and enumeration --------------------------------------------------

    def embed(self, r: "KLRElement", tail) -> "KLRElement":
        """R(beta) -> e(beta, tail) R(beta + tail) e(beta, tail): append strands."""
        tail = tuple(self.datum.index(x) if isinstance(x, str) else x for x in tail)
        t = len(tail)
        n = r.n + t
        return KLRElement(self, n, {
            Monomial(m.a + (0,) * t, m.w + tuple(range(r.n, n)), m.nu + tail): c
            for m, c in r.terms.items()})

    def monomials_of_degree(self, beta, d: int, left=None, right=None) -> list[Monomial]:
        """Normal-form monomials in e(left) R(beta) e(right) of degree d."""
        beta = self.datum.root(beta)
        n = sum(beta)
        seqs = self.sequences(n, beta)
        rights = seqs if right is None else [right]
        out = []
        for nu in rights:
            for w in perms.all_perms(n):
                mu = perms.act(w, nu)
                if left is not None and mu != left:
                    continue
                rem = d - self.tau_degree(w, nu)
                if rem < 0:
                    continue
                for a in _weighted_compositions([self._sq[c] for c in mu], rem):
                    out.append(Monomial(a, w, nu))
        return out

    def tau_degree_range(self, beta) -> tuple[int, int]:
        beta = self.datum.root(beta)
        n = sum(beta)
        degs = [self.tau_degree(w, nu) for nu in self.sequences(n, beta)
                for w in perms.all_perms(n)]
        return (min(degs), max(degs)) if degs else (0, 0)

    def render(self, r: "KLRElement") -> str:
        return r.render()


def _weighted_compositions(weights: list[int], total: int) -> list[tuple[int, ...]]:
    out: list[tuple[int, ...]] = []

    def rec(k, rem, acc):
        if k == len(weights):
            if rem == 0:
                out.append(tuple(acc))
            return
        wk = weights[k]
        for v in range(rem // wk + 1):
            acc.append(v)
            rec(k + 1, rem - v * wk, acc)
            acc.pop()

    rec(0, total, [])
    return out


def monomial_sort_key(m: Monomial):
    return (m.nu, perms.canonical_word(m.w), m.a)


class KLRElement:
    """Finite linear combination of normal-form monomials."""

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg: KLRAlgebra, n: int, terms: dict):
        self.alg = alg
        self.n = n
        self.terms = {m: _normalize(c) for m, c in terms.items() if c}

    def __add__(self, other):
        if isinstance(other, KLRElement):
            self._check(other)
            return KLRElement(self.alg, self.n, _add_into(dict(self.terms), other.terms))
        if other == 0:
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        self._check(other)
        return KLRElement(self.alg, self.n, _add_into(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return KLRElement(self.alg, self.n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, KLRElement):
            return self.alg.multiply(self, other)
        return KLRElement(self.alg, self.n, {m: c * other for m, c in self.terms.items()})

    def __rmul__(self, other):
        return KLRElement(self.alg, self.n, {m: c * other for m, c in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, KLRElement):
            return self.n == other.n and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.n != other.n:
            raise ValueError(f"mismatched n: {self.n} vs {other.n}")

    def degrees(self) -> set[int]:
        return {self.alg.degree(m) for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int | None:
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError("element is not homogeneous")
        return ds.pop() if ds else None

    def homogeneous_parts(self) -> dict[int, "KLRElement"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(self.alg.degree(m), {})[m] = c
        return {d: KLRElement(self.alg, self.n, t) for d, t in parts.items()}

    def render(self) -> str:
        if not self.terms:
            return "0"
        labels = self.alg.datum.labels
        parts = []
        for m in sorted(self.terms, key=monomial_sort_key):
            c = self.terms[m]
            bits = []
            for k, v in enumerate(m.a):
                if v:
                    bits.append(f"x{k + 1}" + (f"^{v}" if v > 1 else ""))
            for k in m.word:
                bits.append(f"t{k + 1}")
            bits.append("e(" + ",".join(labels[x] for x in m.nu) + ")")
            body = " ".join(bits)
            if c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c} {body}")
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = render

    def __repr__(self):
        return f"KLRElement({self.render()})"
