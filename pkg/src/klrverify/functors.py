"""Kernel bimodules of the restriction E_i and induction F_i between cyclotomic quotients.

For a case (Lambda, beta, i) with n = ht(beta) we work with

    A = R^L(beta),  B = R^L(beta + a_i),  C = R^L(beta - a_i),  D = R^L(beta + 2a_i)

and the kernels F1 = B e(beta,i), E1 = e(beta,i) B, EF1 = e(beta,i) B e(beta,i),
FE1 = A e(beta-a_i,i) (x)_C e(beta-a_i,i) A. Elements of the quotients are
handled as term dicts of residue monomials; tensors as dicts over pairs.
"""

from __future__ import annotations

import hashlib
import os
import pickle
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .bimodules import (Bimodule, BimoduleMap, LinearMap, Slice, Tensor, add_terms,
                        embed_terms, in_span, is_projective, regular_bimodule, slice_bimodule,
                        tail_sequences, tensor_bimodule, tensor_over)
from .cartan import lambda_i
from .cyclotomic import CycloConfig, CyclotomicAlgebra
from .exactla import Echelon
from .klr import KLRAlgebra, Monomial
from . import perms


class VerificationError(RuntimeError):
    """A map that should be invertible or a system that should be solvable is not."""


class QuotientCache:
    """Cyclotomic quotients R^L(beta) shared between cases, keyed by beta.

    With ``cache_dir`` (default: the KLR_ENGINE_CACHE environment variable) built
    quotients are pickled under a content hash of datum, Q, Lambda, beta and bounds.
    """

    def __init__(self, alg: KLRAlgebra, lam, config: CycloConfig | None = None,
                 cache_dir: str | None = None):
        self.alg = alg
        self.lam = alg.datum.weight(lam)
        self.config = config or CycloConfig(self.lam)
        self.cache_dir = cache_dir if cache_dir is not None else os.environ.get("KLR_ENGINE_CACHE")
        self._store: dict[tuple, CyclotomicAlgebra] = {}

    def _key(self, beta) -> str:
        d = self.alg.datum
        blob = repr((d.labels, d.matrix, d.symmetrizers, self.alg.qmat.key(), self.lam,
                     tuple(beta), self.config))
        return hashlib.sha256(blob.encode()).hexdigest()[:32]

    def _load(self, beta) -> CyclotomicAlgebra | None:
        if not self.cache_dir:
            return None
        path = Path(self.cache_dir) / f"quotient-{self._key(beta)}.pkl"
        if not path.exists():
            return None
        try:
            with path.open("rb") as fh:
                A = pickle.load(fh)
        except (OSError, pickle.UnpicklingError, EOFError, AttributeError):
            return None
        A.alg = self.alg
        if hasattr(A, "ideal"):
            A.ideal.alg = self.alg
        return A

    def _save(self, beta, A: CyclotomicAlgebra) -> None:
        if not self.cache_dir:
            return
        folder = Path(self.cache_dir)
        folder.mkdir(parents=True, exist_ok=True)
        path = folder / f"quotient-{self._key(beta)}.pkl"
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        with tmp.open("wb") as fh:
            pickle.dump(A, fh, protocol=pickle.HIGHEST_PROTOCOL)
        os.replace(tmp, path)

    def get(self, beta) -> CyclotomicAlgebra | None:
        beta = tuple(beta)
        if any(b < 0 for b in beta):
            return None
        hit = self._store.get(beta)
        if hit is None:
            hit = self._load(beta)
            if hit is None:
                hit = CyclotomicAlgebra(self.alg, beta, self.lam, self.config)
                self._save(beta, hit)
            self._store[beta] = hit
        return hit


def _shift(beta, i, k):
    return tuple(b + k * (j == i) for j, b in enumerate(beta))


@dataclass
class RhoData:
    case: str
    lam: int
    map: LinearMap
    source: list
    target_dim: int
    source_dim: int
    rank: int

    @property
    def bijective(self) -> bool:
        return self.rank == self.source_dim == self.target_dim


class FunctorCase:
    """All kernels and transformations attached to (Lambda, beta, i)."""

    def __init__(self, cache: QuotientCache, beta, i, flip_eta_sign: bool = False):
        self.cache = cache
        self.alg = cache.alg
        self.datum = self.alg.datum
        self.beta = self.datum.root(beta)
        self.i = self.datum.index(i)
        self.n = sum(self.beta)
        self.lam = lambda_i(self.datum, cache.lam, self.beta, self.i)
        self.flip_eta_sign = flip_eta_sign
        self.A = cache.get(self.beta)
        self.B = cache.get(_shift(self.beta, self.i, 1))
        self.C = cache.get(_shift(self.beta, self.i, -1))
        self._memo: dict = {}

    @property
    def D(self) -> CyclotomicAlgebra:
        return self.cache.get(_shift(self.beta, self.i, 2))

    def _once(self, key, build):
        if key not in self._memo:
            self._memo[key] = build()
        return self._memo[key]

    # -- idempotent sets -----------------------------------------------------------------

    def seqs(self, shift: int, tail_len: int = 0) -> frozenset:
        """Sequences of beta + shift a_i whose last tail_len letters are i."""
        base = _shift(self.beta, self.i, shift - tail_len)
        if any(b < 0 for b in base):
            return frozenset()
        return tail_sequences(self.alg, base, (self.i,) * tail_len)

    # -- kernels -------------------------------------------------------------------------

    def f_slice(self) -> Slice:
        return self._once("f_slice", lambda: Slice(self.B, self.seqs(1), self.seqs(1, 1), "F1"))

    def e_slice(self) -> Slice:
        return self._once("e_slice", lambda: Slice(self.B, self.seqs(1, 1), self.seqs(1), "E1"))

    def ef_slice(self) -> Slice:
        return self._once("ef_slice",
                          lambda: Slice(self.B, self.seqs(1, 1), self.seqs(1, 1), "EF1"))

    def fe_tensor(self) -> Tensor | None:
        """A e(beta-a_i,i) (x)_C e(beta-a_i,i) A, or None when beta - a_i is not in Q+."""
        def build():
            if self.C is None:
                return None
            mid = self.seqs(0, 1)
            M = Slice(self.A, self.seqs(0), mid, "A e(beta-a,i)")
            N = Slice(self.A, mid, self.seqs(0), "e(beta-a,i) A")
            return Tensor(M, N, _shift(self.beta, self.i, -1), (self.i,), (self.i,), "FE1")
        return self._once("fe_tensor", build)

    def f_kernel(self) -> Bimodule:
        """B e(beta,i) as a (B, A)-bimodule."""
        return self._once("f_kernel", lambda: slice_bimodule(
            self.f_slice(), self.B, (), self.A, (self.i,), "F1"))

    def e_kernel(self) -> Bimodule:
        """e(beta,i) B as an (A, B)-bimodule."""
        return self._once("e_kernel", lambda: slice_bimodule(
            self.e_slice(), self.A, (self.i,), self.B, (), "E1"))

    def ef_kernel(self) -> Bimodule:
        return self._once("ef_kernel", lambda: slice_bimodule(
            self.ef_slice(), self.A, (self.i,), self.A, (self.i,), "EF1"))

    def fe_kernel(self) -> Bimodule:
        def build():
            T = self.fe_tensor()
            if T is None:
                return Bimodule("FE1", [], self.A, self.A, lambda x, j: {}, lambda j, y: {})
            return tensor_bimodule(T, self.A, (), self.A, (), "FE1")
        return self._once("fe_kernel", build)

    def upper(self) -> "FunctorCase":
        """The case at beta + a_i (same i)."""
        return self._once("upper", lambda: FunctorCase(
            self.cache, _shift(self.beta, self.i, 1), self.i, self.flip_eta_sign))

    # -- elementary products -------------------------------------------------------------

    def tau_between(self, left_terms: dict, right_terms: dict, tail_a, tail_b, word) -> dict:
        """embed(a, tail_a) tau_word embed(b, tail_b) as raw KLR terms."""
        alg = self.alg
        ea = embed_terms(alg, left_terms, tail_a)
        eb = embed_terms(alg, right_terms, tail_b)
        out: dict = {}
        by_left: dict = {}
        for m, c in eb.items():
            by_left.setdefault(m.left, {})[m] = c
        for mu, part in by_left.items():
            mid = alg.word_element(word, mu).terms if word else {
                Monomial((0,) * len(mu), perms.identity(len(mu)), mu): 1}
            add_terms(out, alg.multiply_terms(alg.multiply_terms(ea, mid), part))
        return out

    def sigma_pair(self, a: Monomial, b: Monomial) -> dict:
        """a tau_n b in B (residue terms)."""
        return self.B.residue_terms(self.tau_between({a: 1}, {b: 1}, (self.i,), (self.i,),
                                                     (self.n,)))

    def xpow_pair(self, a: Monomial, b: Monomial, k: int) -> dict:
        """a x_n^k b in A (residue terms)."""
        alg = self.alg
        n = self.n
        xa = {Monomial(tuple(k * (p == n - 1) for p in range(n)), perms.identity(n), a.nu): 1}
        return self.A.residue_terms(alg.multiply_terms(alg.multiply_terms({a: 1}, xa), {b: 1}))

    def x_top(self, terms: dict, k: int, ambient) -> dict:
        """x_{last}^k . terms, reduced in ambient."""
        out: dict = {}
        for m, c in terms.items():
            a = m.left
            nn = len(a)
            xm = {Monomial(tuple(k * (p == nn - 1) for p in range(nn)), perms.identity(nn), a): 1}
            add_terms(out, self.alg.multiply_terms(xm, {m: 1}), c)
        return ambient.residue_terms(out)

    # -- rho ---------------------------------------------------------------------------

    def rho(self) -> RhoData:
        """The comparison map between FE1 (plus copies of A) and EF1 (plus copies of A)."""
        return self._once("rho", self._build_rho)

    def _build_rho(self) -> RhoData:
        lam = self.lam
        fe = self.fe_tensor()
        fe_basis = fe.all_basis() if fe is not None else []
        ef = self.ef_slice().all_basis() if self.B is not None else []
        a_basis = self.A.basis
        e_col = {m: j for j, m in enumerate(ef)}
        source, columns = [], []
        for p in fe_basis:
            col = {("EF", m): c for m, c in self.sigma_pair(*p).items()}
            if lam < 0:
                for k in range(-lam):
                    for r, c in self.xpow_pair(p[0], p[1], k).items():
                        col[("A", k, r)] = c
            source.append(("FE", p))
            columns.append(col)
        if lam >= 0:
            for k in range(lam):
                for r in a_basis:
                    t = self.x_top(embed_terms(self.alg, {r: 1}, (self.i,)), k, self.B)
                    source.append(("A", k, r))
                    columns.append({("EF", m): c for m, c in t.items()})
            target_dim = len(ef)
        else:
            target_dim = len(ef) + (-lam) * len(a_basis)
        for col in columns:
            for key in col:
                if key[0] == "EF" and key[1] not in e_col:
                    raise VerificationError(f"rho leaves EF1: {key}")
        lm = LinearMap(source, columns)
        return RhoData("a" if lam >= 0 else "b", lam, lm, source, target_dim,
                       len(source), lm.rank)

    def rho_inverse(self, target: dict) -> dict:
        """Source combination (keyed by source labels) with rho(source) = target."""
        rd = self.rho()
        if not rd.bijective:
            raise VerificationError("rho is not bijective")
        pre = rd.map.preimage({k: v for k, v in target.items() if v})
        if pre is None:
            raise VerificationError("target outside the image of rho")
        return {rd.source[j]: c for j, c in pre.items() if c}

    def dims(self) -> dict:
        fe = self.fe_tensor()
        return {"A": self.A.dim, "B": self.B.dim,
                "FE": fe.dim if fe is not None else 0,
                "EF": len(self.ef_slice().all_basis()),
                "E": len(self.e_slice().all_basis()),
                "F": len(self.f_slice().all_basis()),
                "lambda": self.lam}

    def dimension_ledger(self) -> bool:
        d = self.dims()
        if self.lam >= 0:
            return d["EF"] == d["FE"] + self.lam * d["A"]
        return d["FE"] == d["EF"] + (-self.lam) * d["A"]

    # -- sigma as a bimodule map -----------------------------------------------------------

    def sigma(self) -> BimoduleMap:
        fe, ef = self.fe_kernel(), self.ef_kernel()
        cols = [ef.coords(self.sigma_pair(*p)) for p in fe.keys]
        return BimoduleMap(fe, ef, cols, "sigma")

    # -- units and counits -----------------------------------------------------------------

    def unit_eta(self) -> BimoduleMap:
        """A -> EF1, 1 -> e(beta,i)."""
        reg = regular_bimodule(self.A)
        ef = self.ef_kernel()
        cols = [ef.coords(self.B.residue_terms(embed_terms(self.alg, {r: 1}, (self.i,))))
                for r in reg.keys]
        return BimoduleMap(reg, ef, cols, "eta")

    def counit_eps(self) -> BimoduleMap:
        """F1 (x)_A E1 -> B, a (x) b -> ab (at beta + a_i the usual counit of F -| E)."""
        FE = tensor_over(self.f_kernel(), self.e_kernel(), self.A)
        reg = regular_bimodule(self.B)
        F, E = self.f_kernel(), self.e_kernel()
        cols = []
        for j, k in FE.keys:
            prod = self.alg.multiply_terms({F.keys[j]: 1}, {E.keys[k]: 1})
            cols.append(self.B.reduce_terms(prod))
        return BimoduleMap(FE, reg, cols, "eps")

    def triangle_identities(self) -> dict:
        """(eps F)(F eta) = id_F and (E eps)(eta E) = id_E for the canonical adjunction F -| E."""
        F, E = self.f_kernel(), self.e_kernel()
        e_beta = self.e_beta_i()
        ok_f, ok_e = True, True
        for j, m in enumerate(F.keys):
            # m (x) e(beta,i) then multiply
            img = self.B.residue_terms(self.alg.multiply_terms({m: 1}, e_beta))
            ok_f &= F.coords(img) == {j: 1}
        for j, m in enumerate(E.keys):
            img = self.B.residue_terms(self.alg.multiply_terms(e_beta, {m: 1}))
            ok_e &= E.coords(img) == {j: 1}
        return {"F": ok_f, "E": ok_e}

    # -- hat maps ----------------------------------------------------------------------

    def e_beta_i(self) -> dict:
        """e(beta,i) as residue terms in B."""
        return self.B.residue_terms(self.alg.idempotent_tail(self.beta, self.i).terms)

    def hat_eta(self) -> dict:
        """hat eta(1) as a reduced combination of FE1 basis pairs."""
        def build():
            lam = self.lam
            if lam >= 0:
                if self.B is None or self.B.dim == 0:
                    return {}
                target = self.x_top(self.e_beta_i(), lam, self.B)
                pre = self.rho_inverse({("EF", m): c for m, c in target.items()})
                sign = 1 if self.flip_eta_sign else -1
                return {key[1]: sign * c for key, c in pre.items() if key[0] == "FE"}
            unit = self.A.residue_terms(self.alg.idempotent(self.beta).terms)
            pre = self.rho_inverse({("A", -lam - 1, r): c for r, c in unit.items()})
            return {key[1]: c for key, c in pre.items()}
        return self._once("hat_eta", build)

    def hat_eps_terms(self, y: dict) -> dict:
        """hat eps: EF1 -> A on residue terms of e(beta,i) B e(beta,i)."""
        lam = self.lam
        if not y:
            return {}
        if lam > 0:
            pre = self.rho_inverse({("EF", m): c for m, c in y.items()})
            return {key[2]: c for key, c in pre.items() if key[0] == "A" and key[1] == lam - 1}
        pre = self.rho_inverse({("EF", m): c for m, c in y.items()})
        out: dict = {}
        for key, c in pre.items():
            add_terms(out, self.xpow_pair(key[1][0], key[1][1], -lam), c)
        return out

    def hat_eps(self) -> BimoduleMap:
        ef = self.ef_kernel()
        reg = regular_bimodule(self.A)
        cols = [reg.coords(self.hat_eps_terms({m: 1})) for m in ef.keys]
        return BimoduleMap(ef, reg, cols, "hat_eps")

    def hat_eta_map(self) -> BimoduleMap:
        """hat eta as a map A -> FE1 (determined by the image of 1)."""
        reg = regular_bimodule(self.A)
        fe = self.fe_kernel()
        h = fe.coords(self.hat_eta())
        cols = [fe.left_act({r: 1}, h) for r in reg.keys]
        return BimoduleMap(reg, fe, cols, "hat_eta")

    # -- zigzag ------------------------------------------------------------------------

    def zigzag(self) -> dict:
        """Matrices of (hat eps E)(E hat eta) on E1 and (F hat eps)(hat eta F) on F1."""
        up = self.upper()
        u = up.hat_eta()
        alg = self.alg
        E, F = self.e_kernel(), self.f_kernel()
        cols_e, cols_f = [], []
        for m in E.keys:
            out: dict = {}
            for (u1, u2), c in u.items():
                left = self.B.residue_terms(alg.multiply_terms({m: 1}, {u1: 1}))
                eps = self.hat_eps_terms(left)
                if eps:
                    prod = alg.multiply_terms(embed_terms(alg, eps, (self.i,)), {u2: 1})
                    add_terms(out, self.B.residue_terms(prod), c)
            cols_e.append(E.coords(out))
        for m in F.keys:
            out = {}
            for (u1, u2), c in u.items():
                right = self.B.residue_terms(alg.multiply_terms({u2: 1}, {m: 1}))
                eps = self.hat_eps_terms(right)
                if eps:
                    prod = alg.multiply_terms({u1: 1}, embed_terms(alg, eps, (self.i,)))
                    add_terms(out, self.B.residue_terms(prod), c)
            cols_f.append(F.coords(out))
        return {"E": BimoduleMap(E, E, cols_e, "zigzagE"),
                "F": BimoduleMap(F, F, cols_f, "zigzagF")}


# -- conveniences mirroring the operation list ------------------------------------------


def f_kernel(case: FunctorCase) -> Bimodule:
    return case.f_kernel()


def e_kernel(case: FunctorCase) -> Bimodule:
    return case.e_kernel()


def x_endo(kernel: Bimodule, case: FunctorCase) -> BimoduleMap:
    """Left multiplication by x_{n+1} on E1 (or right multiplication on F1)."""
    alg = case.alg
    n1 = case.n + 1
    cols = []
    for m in kernel.keys:
        if kernel.name == "F1":
            xm = {Monomial(tuple(int(p == n1 - 1) for p in range(n1)), perms.identity(n1), m.nu): 1}
            t = alg.multiply_terms({m: 1}, xm)
        else:
            xm = {Monomial(tuple(int(p == n1 - 1) for p in range(n1)), perms.identity(n1), m.left): 1}
            t = alg.multiply_terms(xm, {m: 1})
        cols.append(kernel.coords(case.B.residue_terms(t)))
    return BimoduleMap(kernel, kernel, cols, "x")


def ee_kernel(case: FunctorCase) -> Bimodule:
    """e(beta,i^2) D as an (A, D)-bimodule (the kernel of E E)."""
    S = Slice(case.D, case.seqs(2, 2), case.seqs(2), "EE1")
    return slice_bimodule(S, case.A, (case.i, case.i), case.D, (), "EE1")


def tau_endo(kernel: Bimodule, case: FunctorCase) -> BimoduleMap:
    """Left multiplication by tau_{n+1} on e(beta,i^2) D."""
    alg = case.alg
    cols = []
    for m in kernel.keys:
        t = alg.multiply_terms(alg.word_element((case.n + 1,), m.left).terms, {m: 1})
        cols.append(kernel.coords(case.D.residue_terms(t)))
    return BimoduleMap(kernel, kernel, cols, "tau")


def _render_key(alg: KLRAlgebra, m: Monomial) -> str:
    return alg.element(len(m.nu), {m: 1}).render()


def verify_zigzag(case: FunctorCase) -> dict:
    z = case.zigzag()
    out = {}
    for side in ("E", "F"):
        w = z[side].identity_witness()
        out["zigzag" + side] = {"ok": w is None, "dim": z[side].source.dim,
                                "witness": None if w is None else _render_key(case.alg, z[side].source.keys[w])}
    return out


# -- eq1, eq2, eq3 ---------------------------------------------------------------------------


@dataclass
class EqReport:
    name: str
    status: str
    detail: dict = field(default_factory=dict)
    certificate: dict | None = None

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail,
                "certificate": self.certificate}


def render_pair(alg: KLRAlgebra, a: Monomial, b: Monomial) -> str:
    ea = alg.element(len(a.nu), {a: 1}).render()
    eb = alg.element(len(b.nu), {b: 1}).render()
    return f"{ea} (x) {eb}"


def render_tensor(alg: KLRAlgebra, t: dict) -> dict:
    items = sorted(t.items(), key=lambda kv: render_pair(alg, *kv[0]))
    return {render_pair(alg, a, b): str(c) for (a, b), c in items}


def _tail_idem(case: FunctorCase, shift: int, tail: int) -> list:
    return sorted(case.seqs(shift, tail))


def check_eq1(case: FunctorCase) -> EqReport:
    """x_{n+2}^{l-2} e(beta,i^2) + x_{n+1}^{l-1} tau_{n+1} e(beta,i^2) in the prescribed subspace of K^L."""
    lam, n, i, alg = case.lam, case.n, case.i, case.alg
    if lam < 2:
        return EqReport("eq1", "skip", {"reason": "lambda_i < 2", "lambda": lam})
    D, B = case.D, case.B
    lefts = case.seqs(2, 2)
    rights = case.seqs(2, 1)
    K = Slice(D, lefts, rights, "K^L")

    def xpow(nu, pos, k):
        return {Monomial(tuple(k * (p == pos) for p in range(len(nu))), perms.identity(len(nu)),
                         nu): 1}

    lhs: dict = {}
    for nu in lefts:
        add_terms(lhs, xpow(nu, n + 1, lam - 2))
        add_terms(lhs, alg.multiply_terms(xpow(nu, n, lam - 1),
                                          alg.word_element((n + 1,), nu).terms))
    lhs = K.reduce(D.residue_terms(lhs))
    span = []
    eb = [m for m in B.basis if m.left in case.seqs(1, 1)]
    if case.C is not None:
        a_list = [m for m in case.A.basis if m.nu in case.seqs(0, 1)]
        b_list = [m for m in B.basis if m.left in case.seqs(1, 2)]
        for a in a_list:
            for b in b_list:
                if a.nu != b.left[:n]:
                    continue
                t = case.tau_between({a: 1}, {b: 1}, (i, i), (i,), (n, n + 1))
                span.append(D.residue_terms(t))
    for b in eb:
        e = embed_terms(alg, {b: 1}, (i,))
        tb = alg.multiply_terms(alg.word_element((n + 1,), b.left + (i,)).terms, e)
        for k in range(0, lam - 1):
            span.append(D.residue_terms(alg.multiply_terms(xpow(b.left + (i,), n, k), tb)))
        for k in range(0, lam - 2):
            span.append(D.residue_terms(alg.multiply_terms(xpow(b.left + (i,), n + 1, k), e)))
    coeffs = in_span(span, lhs)
    status = "pass" if coeffs is not None else "fail"
    cert = None if coeffs is None else {"coefficients": {str(j): str(c)
                                                         for j, c in sorted(coeffs.items())}}
    return EqReport("eq1", status, {"lambda": lam, "dim_K": len(K.all_basis()),
                                    "spanning": len(span), "lhs_zero": not lhs}, cert)


def _span_basis(vectors: list[dict]) -> list[dict]:
    """An echelon basis of the span of keyed vectors."""
    from .exactla import Indexer
    idx = Indexer()
    ech = Echelon()
    for v in vectors:
        ech.add(idx.vec(v, strict=False))
    return [idx.unvec(r) for r in ech.rows.values()]


def solve_eq2(case: FunctorCase) -> EqReport:
    """u in e(beta,i)Be(beta,i) (x)_A e(beta,i)B with Sigma(u)=0, Etilde(u)=e(beta,i), u - e(x)e in the tau_n part."""
    lam, n, i, alg = case.lam, case.n, case.i, case.alg
    if lam != 1:
        return EqReport("eq2", "skip", {"reason": "lambda_i != 1", "lambda": lam})
    B, D = case.B, case.D
    mid = case.seqs(1, 1)
    M = Slice(B, mid, mid, "EF1")
    N = Slice(B, mid, case.seqs(1), "E1")
    T = Tensor(M, N, case.beta, (i,), (i,), "EF1 (x) E1")
    e = case.e_beta_i()
    base = T.expand(e, e)
    # the subspace spanned by (a tau_n b) (x) c
    gens = []
    if case.C is not None:
        a_list = [m for m in case.A.basis if m.nu in case.seqs(0, 1)]
        b_list = [m for m in case.A.basis if m.left in case.seqs(0, 1)]
        c_list = [m for m in B.basis if m.left in mid]
        for a in a_list:
            for b in b_list:
                if a.nu != b.left:
                    continue
                atb = case.sigma_pair(a, b)
                if not atb:
                    continue
                for c in c_list:
                    v = T.expand(atb, {c: 1})
                    if v:
                        gens.append(v)
    W = _span_basis(gens)

    def big_sigma(t: dict) -> dict:
        out: dict = {}
        for (a, b), c in t.items():
            add_terms(out, case.tau_between({a: 1}, {b: 1}, (i,), (i,), (n + 1,)), c)
        return D.residue_terms(out) if D.dim else {}

    def e_tilde(t: dict) -> dict:
        out: dict = {}
        for (a, b), c in t.items():
            add_terms(out, alg.multiply_terms({a: 1}, {b: 1}), c)
        return B.residue_terms(out)

    def tagged(t):
        v = {("S", k): c for k, c in big_sigma(t).items()}
        v.update({("E", k): c for k, c in e_tilde(t).items()})
        return v

    target: dict = {}
    add_terms(target, tagged(base), -1)
    add_terms(target, {("E", k): c for k, c in e.items()})
    cols = [tagged(w) for w in W]
    sol = in_span(cols, target) if target else {}
    if sol is None:
        return EqReport("eq2", "fail", {"lambda": lam, "dim_W": len(W), "dim_tensor": T.dim})
    u = dict(base)
    for j, c in sol.items():
        add_terms(u, W[j], c)
    u = T.reduce(u)
    ok = not big_sigma(u) and e_tilde(u) == e
    return EqReport("eq2", "pass" if ok else "fail",
                    {"lambda": lam, "dim_W": len(W), "dim_tensor": T.dim, "terms": len(u)},
                    {"u": render_tensor(alg, u)})


def solve_eq3(case: FunctorCase) -> EqReport:
    """v in A e(beta-a_i,i) (x)_C e(beta-a_i,i^2) B meeting the T_k, G and H_k conditions."""
    lam, n, i, alg = case.lam, case.n, case.i, case.alg
    if lam > 0:
        return EqReport("eq3", "skip", {"reason": "lambda_i > 0", "lambda": lam})
    if case.C is None:
        return EqReport("eq3", "skip", {"reason": "beta - alpha_i not in Q+", "lambda": lam})
    A, B, D = case.A, case.B, case.D
    M = Slice(A, case.seqs(0), case.seqs(0, 1), "A e(beta-a,i)")
    N = Slice(B, case.seqs(1, 2), case.seqs(1), "e(beta-a,i^2) B")
    T = Tensor(M, N, _shift(case.beta, i, -1), (i,), (i, i), "eq3 tensor")
    basis = T.all_basis()
    ell = -lam
    e = case.e_beta_i()

    def t_k(a, b, k):
        xa = alg.multiply_terms(embed_terms(alg, {a: 1}, (i,)), _x_on(alg, a.nu + (i,), n - 1, k))
        return B.residue_terms(alg.multiply_terms(xa, {b: 1}))

    def g_map(a, b):
        return D.residue_terms(case.tau_between({a: 1}, {b: 1}, (i, i), (i,), (n, n + 1))) \
            if D.dim else {}

    def h_k(a, b, k):
        xb = alg.multiply_terms(_x_on(alg, b.left, n, k), {b: 1})
        return B.residue_terms(case.tau_between({a: 1}, xb, (i,), (), (n,)))

    cols, target = [], {}
    for a, b in basis:
        col: dict = {}
        for k in range(ell + 1):
            for key, c in t_k(a, b, k).items():
                col[("T", k, key)] = c
        for key, c in g_map(a, b).items():
            col[("G", key)] = c
        for k in range(ell + 2):
            for key, c in h_k(a, b, k).items():
                col[("H", k, key)] = c
        cols.append(col)
    for key, c in e.items():
        target[("T", ell, key)] = c
        target[("H", ell + 1, key)] = c
    note = (f"H_k(v) = 0 for 0 <= k <= {ell} and H_{ell + 1}(v) = e(beta,i); "
            f"the same as H_(1-lambda_i)(v) = e(beta,i) with k running up to -lambda_i")
    sol = in_span(cols, target)
    if sol is None:
        return EqReport("eq3", "fail", {"lambda": lam, "dim_tensor": len(basis),
                                        "indexing": note})
    v = {basis[j]: c for j, c in sol.items() if c}
    return EqReport("eq3", "pass", {"lambda": lam, "dim_tensor": len(basis), "terms": len(v),
                                    "indexing": note},
                    {"v": render_tensor(alg, v)})


def _x_on(alg: KLRAlgebra, nu: tuple, pos: int, k: int) -> dict:
    """x_{pos+1}^k e(nu)."""
    n = len(nu)
    return {Monomial(tuple(k * (p == pos) for p in range(n)), perms.identity(n), nu): 1}


def projectivity(case: FunctorCase) -> dict:
    """F1 as a right A-module and E1 as a left A-module."""
    return {"F_right": is_projective(case.A, case.f_kernel(), "right"),
            "E_left": is_projective(case.A, case.e_kernel(), "left")}

