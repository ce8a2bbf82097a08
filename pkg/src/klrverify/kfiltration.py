"""The module K = e(beta,i^2) R(beta+2a_i) e(beta+a_i,i) (x)_{R(beta+a_i)} R^L(beta+a_i) and its filtration.

K is realized as the quotient of e(beta,i^2) R(beta+2a_i) e(beta+a_i,i) by the
left ideal generated by the embedded cyclotomic generators of R(beta+a_i), and is
truncated at internal degree ``dmax``. Every subspace below (the filtration
layers, the image of P, kernels) is spanned by homogeneous elements, so its
intersection with the truncation is the span of the spanning vectors of degree
at most ``dmax``.

Vectors of K are dicts over a global column index of residue monomials.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bimodules import LinearMap, Slice, Tensor, add_terms, embed_terms
from .cyclotomic import ideal_generators
from .exactla import Echelon, Indexer
from .functors import FunctorCase, _shift
from .klr import Monomial
from .quotient import FreeAmbient, GradedLeftQuotient
from . import perms


class TruncationError(ValueError):
    """An element needed by a check lies above the truncation degree."""


@dataclass
class KReport:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


def _copy(ech: Echelon) -> Echelon:
    out = Echelon()
    out.rows = {p: dict(r) for p, r in ech.rows.items()}
    return out


class KModule:
    """Truncated K with its three-summand spanning set and the filtration Fil_k."""

    def __init__(self, case: FunctorCase, dx: int | None = None):
        self.case = case
        alg = self.alg = case.alg
        self.i, self.n, self.lam = case.i, case.n, case.lam
        i, n = self.i, self.n
        self.p = case.beta[i]
        self.sq = alg.datum.form(i, i)
        self.dx = dx if dx is not None else self.lam + 2 * self.p + 4
        if self.dx < self.lam + 2 * self.p + 2:
            raise TruncationError("truncation below lambda_i + 2p + 2")
        self.B = case.B
        self.e_basis = [m for m in self.B.basis if m.left in case.seqs(1, 1)]
        degs = [alg.degree(m) for m in self.e_basis] or [0]
        self.lo_e, self.hi_e = min(degs), max(degs)
        self.dmax = self.dx * self.sq + self.hi_e
        self.lefts = sorted(case.seqs(2, 2))
        self.rights = sorted(case.seqs(2, 1))
        big = _shift(case.beta, i, 2)
        gens = [alg.embed(g, (i,)) for g in ideal_generators(alg, _shift(case.beta, i, 1),
                                                              case.cache.lam)]
        self.quot = GradedLeftQuotient(alg, big, gens, self.lefts, self.rights)
        self.lo = alg.tau_degree_range(big)[0]
        self.index = Indexer()
        self._build_spanning()
        self._build_filtration()

    # -- vectors -----------------------------------------------------------------------

    def degree_of(self, terms: dict) -> set:
        return {self.alg.degree(m) for m in terms}

    def vec(self, terms: dict) -> dict:
        """K-coordinates of raw R(beta+2a_i) terms."""
        terms = {m: c for m, c in terms.items() if c}
        for d in self.degree_of(terms):
            if d > self.dmax:
                raise TruncationError(f"degree {d} above truncation {self.dmax}")
        res = self.quot.reduce_terms(terms)
        return self.index.vec(res, strict=False)

    def terms(self, vec: dict) -> dict:
        return self.index.unvec(vec)

    def vec_degree(self, vec: dict) -> set:
        return {self.alg.degree(self.index.keys[j]) for j in vec}

    def times_x(self, vec: dict, power: int = 1) -> dict:
        """Right multiplication by x_{n+2}^power."""
        return self.vec(self.alg.multiply_terms(self.terms(vec), self._xtail(power)))

    def _xtail(self, power: int, pos: int | None = None) -> dict:
        pos = self.n + 1 if pos is None else pos
        n2 = self.n + 2
        return {Monomial(tuple(power * (q == pos) for q in range(n2)), perms.identity(n2), nu): 1
                for nu in self.rights}

    def basis(self, d: int) -> list[Monomial]:
        out = []
        for mu in self.lefts:
            for nu in self.rights:
                out.extend(self.quot.block(mu, nu, d).basis)
        return out

    def dims(self) -> dict[int, int]:
        return {d: len(self.basis(d)) for d in range(self.lo, self.dmax + 1)}

    # -- the three summands ----------------------------------------------------------------

    def z_tensor(self) -> Tensor | None:
        """R(beta) e(beta-a_i,i) (x)_{R(beta-a_i)} e(beta-a_i,i^2) R^L(beta+a_i)."""
        case = self.case
        if case.C is None:
            return None
        if not hasattr(self, "_z"):
            free = FreeAmbient(self.alg, case.beta)
            M = Slice(free, case.seqs(0), case.seqs(0, 1), "R(beta)e(beta-a,i)")
            N = Slice(self.B, case.seqs(1, 2), case.seqs(1), "e(beta-a,i^2)B")
            self._z = Tensor(M, N, _shift(case.beta, self.i, -1), (self.i,), (self.i, self.i), "Z")
        return self._z

    def z_basis(self, d: int) -> list:
        """Basis pairs of Z whose image under P has degree d."""
        Z = self.z_tensor()
        if Z is None:
            return []
        return Z.basis(d + 2 * self.sq)

    def p_terms(self, a: Monomial, b: Monomial) -> dict:
        """a tau_n tau_{n+1} (x) b as raw terms."""
        return self.case.tau_between({a: 1}, {b: 1}, (self.i, self.i), (self.i,),
                                     (self.n, self.n + 1))

    def e_terms(self, a: Monomial, b: Monomial) -> dict:
        """E(a (x) b) = ab in B."""
        alg = self.alg
        return self.B.residue_terms(alg.multiply_terms(embed_terms(alg, {a: 1}, (self.i,)),
                                                       {b: 1}))

    def tau_top(self, terms: dict) -> dict:
        """tau_{n+1} . terms."""
        out: dict = {}
        by_left: dict = {}
        for m, c in terms.items():
            by_left.setdefault(m.left, {})[m] = c
        for mu, part in by_left.items():
            add_terms(out, self.alg.multiply_terms(
                self.alg.word_element((self.n + 1,), mu).terms, part))
        return out

    def iota(self, b: Monomial, power: int = 0) -> dict:
        """x_{n+2}^power iota(b) as raw terms."""
        e = embed_terms(self.alg, {b: 1}, (self.i,))
        if not power:
            return e
        return {Monomial(m.a[:-1] + (power,), m.w, m.nu): c for m, c in e.items()}

    def _build_spanning(self):
        sq, dmax = self.sq, self.dmax
        self.v1 = []   # (degree, vec, pair)
        for d in range(self.lo, dmax + 1):
            for a, b in self.z_basis(d):
                self.v1.append((d, self.vec(self.p_terms(a, b)), (a, b)))
        self.v2: dict[int, list] = {}
        self.v3: dict[int, list] = {}
        k = 0
        while True:
            added = False
            for b in self.e_basis:
                d3 = k * sq + self.alg.degree(b)
                if d3 <= dmax:
                    self.v3.setdefault(k, []).append((d3, self.vec(self.iota(b, k)), b))
                    added = True
                d2 = d3 - sq
                if d2 <= dmax:
                    self.v2.setdefault(k, []).append((d2, self.vec(self.tau_top(self.iota(b, k))), b))
                    added = True
            if not added:
                break
            k += 1
        self.kmax = max(list(self.v3) + [-1])

    def _build_filtration(self):
        self.fil: dict[int, Echelon] = {}
        ech = Echelon()
        for _, v, _ in self.v1:
            ech.add(v)
        self.s_ech = _copy(ech)
        for _, v, _ in self.v2.get(0, []):
            ech.add(v)
        self.fil[-1] = _copy(ech)
        for k in range(0, self.kmax + 1):
            for _, v, _ in self.v3.get(k, []):
                ech.add(v)
            for _, v, _ in self.v2.get(k + 1, []):
                ech.add(v)
            self.fil[k] = _copy(ech)

    def fil_at(self, k: int) -> Echelon:
        """Fil_k, constant beyond the last layer that has spanning vectors."""
        if k < -1:
            return Echelon()
        return self.fil[min(k, max(self.kmax, -1))]

    def in_fil(self, vec: dict, k: int) -> bool:
        return self.fil_at(k).contains(vec)

    def layer(self, vec: dict) -> int | None:
        """Least k with vec in Fil_k (-2 for zero, None if outside the truncated Fil_kmax)."""
        if not vec:
            return -2
        for k in range(-1, self.kmax + 1):
            if self.fil[k].contains(vec):
                return k
        return None


# -- checks -------------------------------------------------------------------------------


def verify_dirL(K: KModule) -> KReport:
    """The three summands are independent and exhaust K in every degree of the truncation."""
    bad = []
    per_degree = {}
    for d in range(K.lo, K.dmax + 1):
        vecs = [v for dd, v, _ in K.v1 if dd == d]
        vecs += [v for vs in K.v2.values() for dd, v, _ in vs if dd == d]
        vecs += [v for vs in K.v3.values() for dd, v, _ in vs if dd == d]
        ech = Echelon()
        rank = sum(1 for v in vecs if ech.add(v))
        dim = len(K.basis(d))
        per_degree[d] = [len(vecs), rank, dim]
        if not (len(vecs) == rank == dim):
            bad.append(d)
    return KReport("dirL", not bad, {"failing_degrees": bad, "dmax": K.dmax,
                                     "count_rank_dim": {str(d): v for d, v in per_degree.items()
                                                        if v[2]}})


def verify_grin(K: KModule) -> KReport:
    """(i) stability, (ii) Fil_k x subset Fil_{k+1}, (iii) Gr_k -> Gr_{k+1} iso, (iv) kernel on Fil_{-1}."""
    detail: dict = {"dx": K.dx, "dmax": K.dmax}
    ok = True
    # (iii): representatives of Gr_k and their images
    iii = {}
    for k in range(0, K.dx):
        reps = []
        base = _copy(K.fil_at(k - 1))
        for _, v, _ in K.v3.get(k, []) + K.v2.get(k + 1, []):
            r = base.reduce(v)
            if r and base.add(v):
                reps.append(v)
        gr_next = K.fil_at(k + 1).rank - K.fil_at(k).rank
        tgt = _copy(K.fil_at(k))
        images_ok = all(tgt.add(K.times_x(v)) for v in reps)
        good = images_ok and len(reps) == gr_next
        iii[k] = {"dim": len(reps), "dim_next": gr_next, "ok": good}
        ok &= good
    detail["iii"] = iii
    # (ii)
    ii_ok = True
    for k in range(-1, K.dx):
        for v in _layer_vectors(K, k):
            if v and max(K.vec_degree(v)) + K.sq <= K.dmax and not K.in_fil(K.times_x(v), k + 1):
                ii_ok = False
    detail["ii"] = ii_ok
    ok &= ii_ok
    iv = kernel_checks(K)
    detail["iv"] = iv["modulo_e"]
    detail["iv_literal_inclusion"] = iv["literal_inclusion"]
    detail["iv_literal_equality"] = iv["literal_equality"]
    ok &= iv["modulo_e"] and iv["literal_inclusion"]
    # (i): stable under left R(beta) and right R^L(beta+a_i) generators
    detail["i"] = _check_bimodule_stability(K)
    ok &= detail["i"]
    return KReport("grin", ok, detail)


def _layer_vectors(K: KModule, k: int) -> list[dict]:
    if k == -1:
        return [v for _, v, _ in K.v1] + [v for _, v, _ in K.v2.get(0, [])]
    return [v for _, v, _ in K.v3.get(k, [])] + [v for _, v, _ in K.v2.get(k + 1, [])]


def _check_bimodule_stability(K: KModule) -> bool:
    from .bimodules import generators
    alg, case = K.alg, K.case
    lefts = [(deg, embed_terms(alg, g.terms, (K.i, K.i)))
             for g, deg, _, _ in generators(alg, case.beta)]
    rights = [(deg, embed_terms(alg, g.terms, (K.i,)))
              for g, deg, _, _ in generators(alg, _shift(case.beta, K.i, 1))]
    for k in range(-1, min(K.dx, K.kmax) + 1):
        for v in _layer_vectors(K, k):
            if not v:
                continue
            top = max(K.vec_degree(v))
            t = K.terms(v)
            for deg, g in lefts:
                if top + deg <= K.dmax:
                    if not K.in_fil(K.vec(alg.multiply_terms(g, t)), k):
                        return False
            for deg, g in rights:
                if top + deg <= K.dmax:
                    if not K.in_fil(K.vec(alg.multiply_terms(t, g)), k):
                        return False
    return True


def verify_grind(K: KModule, samples: int = 20, seed: int = 0) -> KReport:
    """If u f(x_{n+2}) lies in Fil_m with m >= r-1 then u lies in Fil_{m-r} (f monic of degree r)."""
    rng = random.Random(seed)
    alg = K.alg
    polys = []
    for r in (1, 2):
        polys.append((r, [(r, None, 1)]))
        polys.append((r, [(r, None, 1), (r - 1, None, Fraction(rng.randint(-3, 3)))]))
        polys.append((r, [(r, None, 1), (r - 1, K.n, 1)]))
    candidates = []
    for k in range(-1, K.dx):
        candidates.extend(_layer_vectors(K, k))
    pool = list(candidates)
    for _ in range(samples):
        if len(pool) < 2:
            break
        a, b = rng.sample(pool, 2)
        w = dict(a)
        add_terms(w, b, rng.randint(1, 3))
        candidates.append(w)
    checked, failures = 0, []
    for u in candidates:
        if not u:
            continue
        top = max(K.vec_degree(u))
        lu = K.layer(u)
        for r, f in polys:
            if top + r * K.sq > K.dmax:
                continue
            uf: dict = {}
            t = K.terms(u)
            for power, xpos, c in f:
                part = alg.multiply_terms(t, K._xtail(power))
                if xpos is not None:
                    part = alg.multiply_terms(part, K._xtail(1, xpos))
                add_terms(uf, K.vec(part), c)
            m = K.layer(uf)
            if m is None or m < r - 1:
                continue
            checked += 1
            if lu is None or lu > m - r:
                failures.append({"layer_u": lu, "m": m, "r": r})
    return KReport("grind_i", not failures, {"checked": checked, "failures": failures[:5]})


def _q_on(alg, nu, pos_a, pos_b, n2) -> dict:
    """Q_{nu_a, nu_b}(x_a, x_b) e(nu) (1-based positions)."""
    from .polys import q_poly
    return {Monomial(e, perms.identity(n2), nu): c
            for e, c in q_poly(alg.qmat, nu[pos_a - 1], nu[pos_b - 1], n2, pos_a - 1,
                               pos_b - 1).items()}


def _lin(alg, nu, coeffs: dict, n2) -> dict:
    """sum c_a x_a e(nu) for {position (1-based): coeff}; position 0 is the constant."""
    out = {}
    for pos, c in coeffs.items():
        a = tuple(int(q == pos - 1) for q in range(n2)) if pos else (0,) * n2
        out[Monomial(a, perms.identity(n2), nu)] = c
    return out


def _intertwiner_chain(K: KModule, nu2: tuple, use_phi: bool) -> dict:
    """tau_{n+1}...tau_1 x^L_1 (phi or tau)_1 ... (phi or tau)_{n+1} e(nu2) as raw terms."""
    alg, n2 = K.alg, K.n + 2
    big = _shift(K.case.beta, K.i, 2)
    lam = K.case.cache.lam
    t = {Monomial((0,) * n2, perms.identity(n2), nu2): 1}
    for a in range(n2 - 1, 0, -1):
        g = alg.intertwiner(a, n2, big) if use_phi else alg.tau(a, n2, big)
        t = alg.multiply_terms(g.terms, t)
    xl = {}
    for m in t:
        mu = m.left
        xl[Monomial((lam[mu[0]],) + (0,) * (n2 - 1), perms.identity(n2), mu)] = 1
    t = alg.multiply_terms(xl, t)
    for a in range(1, n2):
        t = alg.multiply_terms(alg.tau(a, n2, big).terms, t)
    return t


def check_intertwiner_congruence(K: KModule) -> KReport:
    """The congruence mod Fil_-1, the exact equality, and their combination, for each nu in I^beta."""
    alg, n, i = K.alg, K.n, K.i
    n2 = n + 2
    lam = K.case.cache.lam
    rows = []
    ok = True
    for nu in sorted(K.case.seqs(0)):
        nu2 = nu + (i, i)
        e = {Monomial((0,) * n2, perms.identity(n2), nu2): 1}
        chain_phi = _intertwiner_chain(K, nu2, True)
        chain_tau = _intertwiner_chain(K, nu2, False)
        # first congruence
        lhs = chain_phi
        for a in range(1, n + 1):
            if nu[a - 1] == i:
                lhs = alg.multiply_terms(lhs, _lin(alg, nu2, {a: 1, n2: -1}, n2))
        rhs = alg.multiply_terms(K.tau_top(e), {Monomial(
            tuple(lam[i] * (q == n2 - 1) for q in range(n2)), perms.identity(n2), nu2): 1})
        for a in range(1, n + 1):
            if nu[a - 1] != i:
                rhs = alg.multiply_terms(rhs, _q_on(alg, nu2, n2, a, n2))
        diff: dict = {}
        try:
            add_terms(diff, K.vec(lhs))
            add_terms(diff, K.vec(rhs))
            c1 = K.in_fil(diff, -1)
        except TruncationError:
            c1 = None
        # exact equality
        rhs2 = chain_tau
        for a in range(1, n + 2):
            if a == n + 1 or nu2[a - 1] == i:
                rhs2 = alg.multiply_terms(rhs2, _lin(alg, nu2, {n2: 1, a: -1}, n2))
        try:
            c2 = K.vec(chain_phi) == K.vec(rhs2)
        except TruncationError:
            c2 = None
        # combination: (-1)^p T prod (x_{n+2}-x_a)^2 == -tau x^L_{n+2} prod Q (x_{n+2}-x_{n+1})
        comb = chain_tau
        for a in range(1, n + 2):
            if a == n + 1 or nu2[a - 1] == i:
                f = _lin(alg, nu2, {n2: 1, a: -1}, n2)
                comb = alg.multiply_terms(alg.multiply_terms(comb, f), f)
        rhs3 = alg.multiply_terms(rhs, _lin(alg, nu2, {n2: 1, n + 1: -1}, n2))
        try:
            d3: dict = {}
            add_terms(d3, K.vec(comb), (-1) ** K.p)
            add_terms(d3, K.vec(rhs3))
            c3 = K.in_fil(d3, -1)
        except TruncationError:
            c3 = None
        rows.append({"nu": list(nu), "congruence": c1, "equality": c2, "combined": c3})
        ok &= all(c is not False for c in (c1, c2, c3))
    return KReport("intertwiner_congruence", ok, {"rows": rows, "dmax": K.dmax})


def verify_prop_main(K: KModule) -> tuple[Fraction | None, KReport]:
    """Solve tau_{n+1} x_{n+2}^{l+2p+1} e(beta,i^2) = c T e(beta,i^2) x_{n+2}^{2p+2} mod Fil_{l+2p-1}."""
    alg, n, i = K.alg, K.n, K.i
    n2 = n + 2
    lam, p = K.lam, K.p
    level = lam + 2 * p - 1
    lhs: dict = {}
    rhs: dict = {}
    for nu in sorted(K.case.seqs(0)):
        nu2 = nu + (i, i)
        x_l = {Monomial(tuple((lam + 2 * p + 1) * (q == n2 - 1) for q in range(n2)),
                        perms.identity(n2), nu2): 1}
        add_terms(lhs, K.tau_top(x_l))
        t = _intertwiner_chain(K, nu2, False)
        add_terms(rhs, alg.multiply_terms(t, {Monomial(
            tuple((2 * p + 2) * (q == n2 - 1) for q in range(n2)), perms.identity(n2), nu2): 1}))
    vl, vr = K.vec(lhs), K.vec(rhs)
    fil = K.fil_at(level)
    rl, rr = fil.reduce(vl), fil.reduce(vr)
    detail = {"level": level, "dmax": K.dmax, "lhs_zero_mod_fil": not rl,
              "rhs_zero_mod_fil": not rr}
    if not rr:
        # both sides vanish modulo the filtration: any unit c works
        detail["vacuous"] = not rl
        if not rl:
            detail["c"] = "1"
            detail["residual_zero"] = True
            return Fraction(1), KReport("prop_main", True, detail)
        return None, KReport("prop_main", False, detail)
    col = max(rr)
    c = Fraction(rl.get(col, 0)) / rr[col]
    resid = dict(rl)
    add_terms(resid, rr, -c)
    detail["c"] = str(c)
    detail["residual_zero"] = not resid
    return c, KReport("prop_main", not resid and c != 0, detail)


def verify_P_E(K: KModule) -> KReport:
    """P injective, Im P = Ker(x: Fil_-1 -> Gr_0), P(z) x = P(z x_n) + tau E(z) + E(tau_n z), cor:cr."""
    alg, n, i, sq = K.alg, K.n, K.i, K.sq
    detail: dict = {}
    ok = True
    inj = True
    lemma_ok = True
    cr_ok = True
    for d in range(K.lo, K.dmax + 1):
        pairs = K.z_basis(d)
        if not pairs:
            continue
        cols = [v for dd, v, _ in K.v1 if dd == d]
        rank = LinearMap(pairs, cols).rank
        if rank != len(pairs):
            inj = False
        if d + sq > K.dmax:
            continue
        # image vs kernel of x_{n+2}: Fil_-1 -> Gr_0 is checked inside verify_grin (iv);
        # here the P x_{n+2} identity and the corollary on the kernel
        lhs_cols, e_tau = [], []
        for (a, b), v in zip(pairs, cols):
            px = K.times_x(v)
            ax = alg.multiply_terms({a: 1}, {Monomial(tuple(int(q == n - 1) for q in range(n)),
                                                      perms.identity(n), a.nu): 1})
            rhs: dict = {}
            add_terms(rhs, K.vec(K.case.tau_between(ax, {b: 1}, (i, i), (i,), (n, n + 1))))
            ez = K.e_terms(a, b)
            add_terms(rhs, K.vec(K.tau_top(embed_terms(alg, ez, (i,)))))
            etz = _e_tau(K, a, b)
            add_terms(rhs, K.vec(embed_terms(alg, etz, (i,))))
            if px != rhs:
                lemma_ok = False
            lhs_cols.append(K.fil_at(-1).reduce(px))
            e_tau.append(etz)
        for combo in LinearMap(pairs, lhs_cols).kernel():
            tot: dict = {}
            for j, c in combo.items():
                add_terms(tot, e_tau[j], c)
            if tot:
                cr_ok = False
    kc = kernel_checks(K)
    im_ok = kc["modulo_e"] and kc["literal_is_P_of_E_kernel"]
    detail.update({"P_injective": inj, "image_is_kernel_modulo_e": kc["modulo_e"],
                   "kernel_is_P_of_E_kernel": kc["literal_is_P_of_E_kernel"],
                   "image_is_kernel_literal": kc["literal_equality"],
                   "Px_identity": lemma_ok, "cor_cr": cr_ok})
    ok = inj and im_ok and lemma_ok and cr_ok
    return KReport("P_E", ok, detail)


def _span(vectors) -> Echelon:
    ech = Echelon()
    ech.extend(vectors)
    return ech


def _same_span(xs: list, ys: list) -> bool:
    ex, ey = _span(xs), _span(ys)
    return ex.rank == ey.rank and all(ex.contains(v) for v in ys)


def _x_kernel(K: KModule, span: list, target: Echelon) -> list[dict]:
    """Elements of span(span) whose product with x_{n+2} lies in span(target)."""
    cols = [target.reduce(K.times_x(v)) for v in span]
    out = []
    for combo in LinearMap(span, cols).kernel():
        w: dict = {}
        for j, c in combo.items():
            add_terms(w, span[j], c)
        out.append(w)
    return out


def kernel_checks(K: KModule) -> dict:
    """Kernel of u -> u x_{n+2} on Fil_-1, into Gr_0 and into Gr_0 / e(beta,i^2)R^L(beta+a_i).

    With S the image of P, the quotient version equals S, the kernel into Gr_0
    is contained in S, and it equals P of {z : E((1 (x) tau_n) z) = 0}. Whether it
    is all of S is reported separately: E((1 (x) tau_n) z) need not vanish on Z.
    """
    res = {"modulo_e": True, "literal_inclusion": True, "literal_is_P_of_E_kernel": True,
           "literal_equality": True}
    e_ech = _copy(K.fil_at(-1))
    for _, v, _ in K.v3.get(0, []):
        e_ech.add(v)
    for d in range(K.lo, K.dmax - K.sq + 1):
        s_vecs = [v for dd, v, _ in K.v1 if dd == d]
        span = s_vecs + [v for dd, v, _ in K.v2.get(0, []) if dd == d]
        if not span:
            continue
        ker_e = _x_kernel(K, span, e_ech)
        ker = _x_kernel(K, span, K.fil_at(-1))
        res["modulo_e"] &= _same_span(ker_e, s_vecs)
        s_ech = _span(s_vecs)
        res["literal_inclusion"] &= all(s_ech.contains(v) for v in ker)
        res["literal_equality"] &= _same_span(ker, s_vecs)
        pairs = K.z_basis(d)
        etz = [K.vec(embed_terms(K.alg, _e_tau(K, a, b), (K.i,))) for a, b in pairs]
        good = []
        for combo in LinearMap(pairs, etz).kernel():
            w: dict = {}
            for j, c in combo.items():
                add_terms(w, s_vecs[j], c)
            good.append(w)
        res["literal_is_P_of_E_kernel"] &= _same_span(ker, good)
    return res


def _e_tau(K: KModule, a: Monomial, b: Monomial) -> dict:
    """E((1 (x) tau_n)(a (x) b)) in B."""
    tb = K.alg.multiply_terms(K.alg.word_element((K.n,), b.left).terms, {b: 1})
    out: dict = {}
    for m, c in K.B.residue_terms(tb).items():
        add_terms(out, K.e_terms(a, m), c)
    return out


def p_map_checks(K: KModule) -> KReport:
    """p: K -> K^L is onto and kills tau_{n+1}...tau_1 x^L tau_1...tau_{n+1} e(beta,i^2)."""
    D = K.case.D
    alg, i = K.alg, K.i
    kl = [m for m in D.basis if m.left in set(K.lefts) and m.nu in set(K.rights)]
    idx = Indexer(kl)
    ech = Echelon()
    for d in range(K.lo, K.dmax + 1):
        for m in K.basis(d):
            ech.add(idx.vec(D.residue_terms({m: 1}), strict=True))
    onto = ech.rank == len(kl)
    t: dict = {}
    for nu in sorted(K.case.seqs(0)):
        add_terms(t, _intertwiner_chain(K, nu + (i, i), False))
    vanish = not D.residue_terms(t)
    top_ok = max([alg.degree(m) for m in kl] or [K.lo]) <= K.dmax
    return KReport("p_map", onto and vanish and top_ok,
                   {"dim_KL": len(kl), "onto": onto, "kills_T": vanish,
                    "truncation_covers_KL": top_ok})


def eq10_identity(K: KModule) -> KReport:
    """tau_n tau_{n+1} x_{n+2} = (x_n tau_n + 1) tau_{n+1} + tau_n on e(beta-a_i, i^3)."""
    alg, i, n = K.alg, K.i, K.n
    n2 = n + 2
    ok = True
    if K.case.C is None:
        return KReport("eq10", True, {"vacuous": True})
    for nu in sorted(K.case.seqs(0, 1)):
        nu = nu[:-1]
        nu3 = tuple(nu) + (i, i, i)
        e = alg.e(nu3)
        lhs = alg.word_element((n, n + 1), nu3) * alg.x(n + 2, n2, None) * e
        tn1 = alg.word_element((n + 1,), nu3)
        rhs = (alg.x(n, n2, None) * alg.tau(n, n2, None) + alg.one(n2, None)) * tn1 \
            + alg.word_element((n,), nu3)
        ok &= lhs == rhs * e
    return KReport("eq10", ok, {})


def run_all(K: KModule) -> list[KReport]:
    c, prop = verify_prop_main(K)
    return [verify_dirL(K), verify_grin(K), verify_grind(K), check_intertwiner_congruence(K),
            prop, verify_P_E(K), p_map_checks(K), eq10_identity(K)]


def build_K(case: FunctorCase, D: int | None = None) -> KModule:
    return KModule(case, dx=D)


def fil(K: KModule, k: int) -> Echelon:
    """Echelonized Fil_k inside the truncation (zero for k < -1)."""
    if k > K.dx:
        raise TruncationError(f"Fil_{k} lies beyond the truncation D={K.dx}")
    return K.fil_at(k)


def p_map(K: KModule):
    """The projection K -> K^L on raw terms: reduction in R^L(beta+2a_i)."""
    D = K.case.D

    def apply(terms: dict) -> dict:
        return D.residue_terms(terms)
    return apply


def P_E_maps(K: KModule):
    """P(a (x) b) = a tau_n tau_{n+1} (x) b and E(a (x) b) = ab, on basis pairs of the source."""
    return K.p_terms, K.e_terms
