"""Graded quotients of idempotent slices of R(beta) by left ideals.

A left ideal generated by homogeneous elements g (each with a single left and
right idempotent) is spanned, in the block e(mu) R_d e(nu), by the vectors
x^a (tau_v g) with v in S_n. Blocks are echelonized lazily and cached; the
residue of a monomial is what survives reduction, so the non-pivot monomials of
each block form a basis of the quotient.
"""

from __future__ import annotations

from . import perms
from .exactla import Echelon, Indexer
from .klr import KLRAlgebra, KLRElement, Monomial, _weighted_compositions, monomial_sort_key


class Block:
    __slots__ = ("index", "ech", "basis")

    def __init__(self, monomials: list[Monomial]):
        self.index = Indexer(monomials)
        self.ech = Echelon()
        self.basis: list[Monomial] = []

    def finish(self):
        self.basis = [m for j, m in enumerate(self.index.keys) if j not in self.ech.rows]


class GradedLeftQuotient:
    """e(L) R(beta) e(R) / (e(L) R(beta) e(R) intersected with R.gens), one graded block at a time."""

    def __init__(self, alg: KLRAlgebra, beta, gens: list[KLRElement], left_set=None,
                 right_set=None):
        self.alg = alg
        self.beta = alg.datum.root(beta)
        self.n = sum(self.beta)
        self.left_set = None if left_set is None else frozenset(left_set)
        self.right_set = None if right_set is None else frozenset(right_set)
        self._sq = [alg.datum.form(c, c) for c in range(alg.datum.rank)]
        self._gens = []
        for g in gens:
            if not g.terms:
                continue
            lefts = {m.left for m in g.terms}
            rights = {m.nu for m in g.terms}
            if len(lefts) != 1 or len(rights) != 1 or not g.is_homogeneous():
                raise ValueError("ideal generators must be homogeneous with one left/right idempotent")
            if self.right_set is not None and next(iter(rights)) not in self.right_set:
                continue
            self._gens.append((lefts.pop(), rights.pop(), g.degree(), g))
        self._translates: dict[tuple, list] = {}
        self.blocks: dict[tuple, Block] = {}

    def translates(self, mu: tuple) -> list[tuple[int, tuple, dict]]:
        """(degree, right idempotent, terms) of tau_v g with left idempotent mu."""
        hit = self._translates.get(mu)
        if hit is not None:
            return hit
        alg, n = self.alg, self.n
        out = []
        for left, right, deg, g in self._gens:
            for v in perms.all_perms(n):
                if perms.act(v, left) != mu:
                    continue
                word = perms.canonical_word(v)
                terms = g.terms
                for k in reversed(word):
                    terms = alg._left_tau(k, terms)
                if terms:
                    out.append((deg + alg.tau_degree(v, left), right, terms))
        self._translates[mu] = out
        return out

    def block(self, mu: tuple, nu: tuple, d: int) -> Block:
        key = (mu, nu, d)
        b = self.blocks.get(key)
        if b is not None:
            return b
        ms = self.alg.monomials_of_degree(self.beta, d, left=mu, right=nu)
        ms.sort(key=monomial_sort_key)
        b = Block(ms)
        full = len(ms)
        if full:
            weights = [self._sq[c] for c in mu]
            for deg, right, terms in self.translates(mu):
                if right != nu or deg > d:
                    continue
                for a in _weighted_compositions(weights, d - deg):
                    vec = {}
                    for m, c in terms.items():
                        key2 = Monomial(tuple(x + y for x, y in zip(a, m.a)), m.w, m.nu)
                        vec[b.index.index[key2]] = c
                    b.ech.add(vec)
                    if b.ech.rank == full:
                        break
                if b.ech.rank == full:
                    break
        b.finish()
        self.blocks[key] = b
        return b

    def admissible(self, m: Monomial) -> bool:
        return ((self.left_set is None or m.left in self.left_set)
                and (self.right_set is None or m.nu in self.right_set))

    def reduce_terms(self, terms: dict) -> dict[Monomial, object]:
        """Residue of a term dict, as a combination of non-pivot monomials."""
        alg = self.alg
        grouped: dict[tuple, dict] = {}
        for m, c in terms.items():
            if not self.admissible(m):
                raise ValueError(f"monomial {m} outside the slice")
            grouped.setdefault((m.left, m.nu, alg.degree(m)), {})[m] = c
        out: dict[Monomial, object] = {}
        for (mu, nu, d), part in grouped.items():
            b = self.block(mu, nu, d)
            if not b.basis:
                continue
            r = b.ech.reduce(b.index.vec(part))
            for j, v in r.items():
                out[b.index.keys[j]] = v
        return out

    def basis(self, d: int, left=None, right=None) -> list[Monomial]:
        seqs = self.alg.sequences(self.n, self.beta)
        if left is not None:
            lefts = [left]
        else:
            lefts = sorted(self.left_set) if self.left_set is not None else seqs
        if right is not None:
            rights = [right]
        else:
            rights = sorted(self.right_set) if self.right_set is not None else seqs
        out = []
        for mu in lefts:
            for nu in rights:
                out.extend(self.block(mu, nu, d).basis)
        return out

    def basis_in(self, d: int, left=None, right=None) -> list[Monomial]:
        return self.basis(d, left, right)

    def residue_terms(self, terms: dict) -> dict[Monomial, object]:
        return self.reduce_terms(terms)

    def degree_range(self) -> tuple[int, int | None]:
        return (self.alg.tau_degree_range(self.beta)[0], None)


class FreeAmbient:
    """R(beta) itself: every normal-form monomial is a basis element."""

    def __init__(self, alg: KLRAlgebra, beta):
        self.alg = alg
        self.beta = alg.datum.root(beta)
        self.n = sum(self.beta)
        self._cache: dict = {}

    def basis_in(self, d: int, left=None, right=None) -> list[Monomial]:
        key = (d, left, right)
        hit = self._cache.get(key)
        if hit is None:
            hit = sorted(self.alg.monomials_of_degree(self.beta, d, left=left, right=right),
                         key=monomial_sort_key)
            self._cache[key] = hit
        return hit

    def residue_terms(self, terms: dict) -> dict[Monomial, object]:
        return {m: c for m, c in terms.items() if c}

    def degree_range(self) -> tuple[int, int | None]:
        return (self.alg.tau_degree_range(self.beta)[0], None)
