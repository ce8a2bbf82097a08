"""Degreewise check of the Mackey-type decomposition of e(beta,i) R(beta+alpha_i) e(beta,i)."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bimodules import LinearMap, Slice, Tensor, tail_sequences
from .klr import KLRAlgebra, Monomial
from .quotient import FreeAmbient
from . import perms


@dataclass
class MackeyReport:
    beta: tuple
    i: int
    max_degree: int
    ok: bool = True
    degrees: list = field(default_factory=list)
    failure: dict | None = None

    def as_dict(self) -> dict:
        return {"beta": list(self.beta), "i": self.i, "max_degree": self.max_degree,
                "ok": self.ok, "degrees": self.degrees, "failure": self.failure}


def verify_mackey(alg: KLRAlgebra, beta, i, max_degree: int, method: str = "coset") -> MackeyReport:
    """The map (a (x) b, x_{n+1}^k (x) r) -> a tau_n b + x_{n+1}^k r is bijective in each degree <= D.

    With method "coset" the tensor factor is represented by the spanning set
    (tau_j ... tau_{n-1} x_n^k) (x) b; full rank of the images together with a
    matching count proves both that this set is a basis and that the map is
    bijective. Method "tensor" builds the tensor product by generators and relations.
    """
    datum = alg.datum
    beta = datum.root(beta)
    i = datum.index(i)
    n = sum(beta)
    sq = datum.form(i, i)
    rep = MackeyReport(beta, i, max_degree)
    big = tuple(b + (k == i) for k, b in enumerate(beta))
    target = FreeAmbient(alg, big)
    small = FreeAmbient(alg, beta)
    outer = sorted(tail_sequences(alg, beta, (i,)))
    c_beta = tuple(b - (k == i) for k, b in enumerate(beta)) if beta[i] > 0 else None
    tensor = None
    if c_beta is not None and method == "tensor":
        mid = tail_sequences(alg, c_beta, (i,))
        M = Slice(small, alg.sequences(n, beta), mid, "R(beta)e(beta-a,i)")
        N = Slice(small, mid, alg.sequences(n, beta), "e(beta-a,i)R(beta)")
        tensor = Tensor(M, N, c_beta, (i,), (i,))
    elif method not in ("coset", "tensor"):
        raise ValueError(f"unknown method {method!r}")
    lo_small = small.degree_range()[0]
    lo = target.degree_range()[0]
    for d in range(lo, max_degree + 1):
        dom, tgt = 0, 0
        for mu in outer:
            for nu in outer:
                cols = []
                for a, b in _tensor_pairs(alg, tensor, c_beta, i, d + sq, mu[:-1], nu[:-1],
                                         small, sq):
                    ea = alg.embed(a, (i,))
                    eb = alg.embed(b, (i,))
                    mid_idem = next(iter(eb.terms)).left
                    tau = alg.word_element((n,), mid_idem)
                    cols.append((ea * tau * eb).terms)
                for k in range(0, (d - lo_small) // sq + 1 if sq else 1):
                    for r in small.basis_in(d - k * sq, mu[:-1], nu[:-1]):
                        cols.append({Monomial(r.a + (k,), r.w + (n,), r.nu + (i,)): 1})
                size = len(target.basis_in(d, mu, nu))
                rank = LinearMap(list(range(len(cols))), cols).rank if cols else 0
                dom += len(cols)
                tgt += size
                if not (rank == len(cols) == size):
                    rep.ok = False
                    rep.failure = {"degree": d, "left": list(mu), "right": list(nu),
                                   "domain": len(cols), "target": size, "rank": rank}
                    rep.degrees.append({"degree": d, "domain": dom, "target": tgt})
                    return rep
        rep.degrees.append({"degree": d, "domain": dom, "target": tgt})
    return rep


def _tensor_pairs(alg, tensor, c_beta, i, d, left, right, small, sq):
    """Pairs (a, b) of R(beta) elements spanning the degree-d part of the tensor factor."""
    if c_beta is None:
        return []
    n = sum(c_beta) + 1
    if tensor is not None:
        return [(alg.element(n, {a: 1}), alg.element(n, {b: 1}))
                for a, b in tensor.basis(d, left=left, right=right)]
    out = []
    lo = small.degree_range()[0]
    for nu_c in alg.sequences(n - 1, c_beta):
        nu = nu_c + (i,)
        for j in range(1, n + 1):
            coset = alg.word_element(range(j, n), nu)
            if next(iter(coset.terms)).left != left:
                continue
            base = coset.degree()
            k = 0
            while base + k * sq <= d - lo:
                g = coset * alg.element(n, {Monomial(tuple(k * (p == n - 1) for p in range(n)),
                                                     perms.identity(n), nu): 1})
                for b in small.basis_in(d - base - k * sq, nu, right):
                    out.append((g, alg.element(n, {b: 1})))
                k += 1
    return out
