"""Idempotent slices of (quotients of) KLR algebras and their graded tensor products.

An ambient is anything offering ``basis_in(d, left, right)``, ``residue_terms``
and ``degree_range`` (R(beta) itself, a cyclotomic quotient, or the module K).
A slice keeps the basis monomials whose left/right idempotents lie in given
sets. Tensor products over a subalgebra C are computed blockwise in total
degree as the span of compatible pairs modulo (m g) (x) n - m (x) (g n) for the
generators g = x_k e(nu), tau_k e(nu) of C.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable

from . import perms
from .exactla import Echelon, Indexer, nullspace
from .klr import KLRAlgebra, KLRElement, Monomial


def tail_sequences(alg: KLRAlgebra, beta, tail=()) -> frozenset:
    """Sequences (nu, tail) with nu in I^beta."""
    beta = alg.datum.root(beta)
    return frozenset(nu + tuple(tail) for nu in alg.sequences(sum(beta), beta))


def add_terms(acc: dict, terms: dict, scale=1) -> dict:
    for k, v in terms.items():
        nv = acc.get(k, 0) + scale * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


class Slice:
    """e(lefts) X e(rights) for an ambient X."""

    def __init__(self, ambient, lefts: Iterable, rights: Iterable, name: str = ""):
        self.ambient = ambient
        self.alg: KLRAlgebra = ambient.alg
        self.n = ambient.n
        self.lefts = frozenset(lefts)
        self.rights = frozenset(rights)
        self.name = name
        self._cache: dict = {}

    @property
    def finite(self) -> bool:
        return self.ambient.degree_range()[1] is not None

    def degree_range(self):
        return self.ambient.degree_range()

    def basis(self, d: int, left=None, right=None) -> list[Monomial]:
        key = (d, left, right)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        lefts = [left] if left is not None else sorted(self.lefts)
        rights = [right] if right is not None else sorted(self.rights)
        out = []
        for mu in lefts:
            if mu not in self.lefts:
                continue
            for nu in rights:
                if nu in self.rights:
                    out.extend(self.ambient.basis_in(d, mu, nu))
        self._cache[key] = out
        return out

    def all_basis(self) -> list[Monomial]:
        lo, hi = self.degree_range()
        if hi is None:
            raise ValueError("infinite slice has no finite basis")
        out = []
        for d in range(lo, hi + 1):
            out.extend(self.basis(d))
        return out

    @property
    def dim(self) -> int:
        return len(self.all_basis())

    def reduce(self, terms: dict) -> dict:
        out = self.ambient.residue_terms(terms)
        for m in out:
            if m.left not in self.lefts or m.nu not in self.rights:
                raise ValueError(f"{m} left the slice {self.name}")
        return out

    def mul(self, a: dict, b: dict) -> dict:
        """Residue of the product of two term dicts of the ambient."""
        return self.ambient.residue_terms(self.alg.multiply_terms(a, b))


def generators(alg: KLRAlgebra, beta) -> list[tuple[KLRElement, int, tuple, tuple]]:
    """Homogeneous generators x_k e(nu), tau_k e(nu) of R(beta): (element, degree, left, right)."""
    beta = alg.datum.root(beta)
    n = sum(beta)
    out = []
    for nu in alg.sequences(n, beta):
        for k in range(n):
            a = tuple(int(j == k) for j in range(n))
            g = KLRElement(alg, n, {Monomial(a, perms.identity(n), nu): 1})
            out.append((g, alg.datum.form(nu[k], nu[k]), nu, nu))
        for k in range(n - 1):
            w = perms.swap_positions(perms.identity(n), k)
            m = Monomial((0,) * n, w, nu)
            out.append((KLRElement(alg, n, {m: 1}), alg.degree(m), m.left, nu))
    return out


class Tensor:
    """M (x)_C N for slices M (right C-action through tail_m) and N (left C-action through tail_n)."""

    def __init__(self, M: Slice, N: Slice, beta_c, tail_m=(), tail_n=(), name: str = ""):
        self.M, self.N = M, N
        self.alg = M.alg
        self.beta_c = self.alg.datum.root(beta_c)
        self.nc = sum(self.beta_c)
        self.tail_m, self.tail_n = tuple(tail_m), tuple(tail_n)
        self.name = name
        self.gens = []
        for g, deg, left, right in generators(self.alg, self.beta_c):
            self.gens.append((deg, left, right, self.alg.embed(g, self.tail_m).terms,
                              self.alg.embed(g, self.tail_n).terms))
        self.blocks: dict[tuple, tuple[Indexer, Echelon, list]] = {}
        self._basis_cache: dict = {}

    # -- degrees -----------------------------------------------------------------

    def _split(self, d: int) -> list[tuple[int, int]]:
        lo_m, hi_m = self.M.degree_range()
        lo_n, hi_n = self.N.degree_range()
        out = []
        for dm in range(lo_m, d - lo_n + 1):
            if hi_m is not None and dm > hi_m:
                break
            dn = d - dm
            if hi_n is not None and dn > hi_n:
                continue
            out.append((dm, dn))
        return out

    def degree_range(self) -> tuple[int, int | None]:
        lo_m, hi_m = self.M.degree_range()
        lo_n, hi_n = self.N.degree_range()
        hi = None if hi_m is None or hi_n is None else hi_m + hi_n
        return lo_m + lo_n, hi

    def _compatible(self, m: Monomial, n: Monomial) -> bool:
        return m.nu[:self.nc] == n.left[:self.nc]

    # -- blocks --------------------------------------------------------------------

    def block(self, left: tuple, right: tuple, d: int):
        key = (left, right, d)
        hit = self.blocks.get(key)
        if hit is not None:
            return hit
        pairs = []
        for dm, dn in self._split(d):
            ms = self.M.basis(dm, left=left)
            if not ms:
                continue
            ns = self.N.basis(dn, right=right)
            for m in ms:
                for n in ns:
                    if self._compatible(m, n):
                        pairs.append((m, n))
        idx = Indexer(pairs)
        ech = Echelon()
        if pairs:
            alg = self.alg
            lo_n, hi_n = self.N.degree_range()
            lo_m, hi_m = self.M.degree_range()
            for deg, gl, gr, g_m, g_n in self.gens:
                # relation m g (x) n - m (x) g n with deg m + deg g + deg n = d
                for dm in range(lo_m, d - deg - lo_n + 1):
                    if hi_m is not None and dm > hi_m:
                        break
                    dn = d - dm - deg
                    if hi_n is not None and dn > hi_n:
                        continue
                    ns = [n for n in self.N.basis(dn, right=right) if n.left[:self.nc] == gr]
                    if not ns:
                        continue
                    for m in self.M.basis(dm, left=left):
                        if m.nu[:self.nc] != gl:
                            continue
                        mg = self.M.reduce(alg.multiply_terms({m: 1}, g_m))
                        for n in ns:
                            gn = self.N.reduce(alg.multiply_terms(g_n, {n: 1}))
                            vec = {}
                            for m2, c in mg.items():
                                add_terms(vec, {idx.index[(m2, n)]: c})
                            for n2, c in gn.items():
                                add_terms(vec, {idx.index[(m, n2)]: -c})
                            if vec:
                                ech.add(vec)
        basis = [p for j, p in enumerate(idx.keys) if j not in ech.rows]
        self.blocks[key] = (idx, ech, basis)
        return self.blocks[key]

    def outer_lefts(self):
        return sorted(self.M.lefts)

    def outer_rights(self):
        return sorted(self.N.rights)

    def basis(self, d: int, left=None, right=None) -> list[tuple[Monomial, Monomial]]:
        key = (d, left, right)
        hit = self._basis_cache.get(key)
        if hit is not None:
            return hit
        out = []
        for mu in ([left] if left is not None else self.outer_lefts()):
            for nu in ([right] if right is not None else self.outer_rights()):
                out.extend(self.block(mu, nu, d)[2])
        self._basis_cache[key] = out
        return out

    def all_basis(self) -> list[tuple[Monomial, Monomial]]:
        lo, hi = self.degree_range()
        if hi is None:
            raise ValueError("infinite tensor product")
        out = []
        for d in range(lo, hi + 1):
            out.extend(self.basis(d))
        return out

    @property
    def dim(self) -> int:
        return len(self.all_basis())

    def pair_degree(self, p) -> int:
        return self.alg.degree(p[0]) + self.alg.degree(p[1])

    def reduce(self, terms: dict) -> dict:
        """Normal form of a combination of compatible pairs."""
        grouped: dict[tuple, dict] = {}
        for (m, n), c in terms.items():
            if not self._compatible(m, n):
                continue
            grouped.setdefault((m.left, n.nu, self.pair_degree((m, n))), {})[(m, n)] = c
        out: dict = {}
        for (mu, nu, d), part in grouped.items():
            idx, ech, basis = self.block(mu, nu, d)
            if not basis:
                continue
            r = ech.reduce(idx.vec(part))
            for j, v in r.items():
                out[idx.keys[j]] = v
        return out

    def expand(self, left_terms: dict, right_terms: dict) -> dict:
        """(sum a) (x) (sum b) as a reduced combination of pairs."""
        raw = {}
        for m, c in left_terms.items():
            for n, e in right_terms.items():
                if self._compatible(m, n):
                    add_terms(raw, {(m, n): c * e})
        return self.reduce(raw)

    def act_left(self, x: dict, t: dict) -> dict:
        """x . t for x a term dict of the M ambient."""
        raw = {}
        for (m, n), c in t.items():
            for m2, e in self.M.mul(x, {m: 1}).items():
                add_terms(raw, {(m2, n): c * e})
        return self.reduce(raw)

    def act_right(self, t: dict, y: dict) -> dict:
        raw = {}
        for (m, n), c in t.items():
            for n2, e in self.N.mul({n: 1}, y).items():
                add_terms(raw, {(m, n2): c * e})
        return self.reduce(raw)

    def apply(self, f: Callable[[Monomial, Monomial], dict], t: dict) -> dict:
        """Apply a balanced bilinear map given on pairs of monomials."""
        out: dict = {}
        for (m, n), c in t.items():
            add_terms(out, f(m, n), c)
        return out


class LinearMap:
    """Columns of a map from a list of source keys to dicts over target keys."""

    def __init__(self, source: list, columns: list[dict]):
        self.source = source
        self.columns = columns
        self._ech = None
        self._index = None

    def _echelon(self):
        if self._ech is None:
            self._index = Indexer()
            self._ech = Echelon(track=True)
            for j, col in enumerate(self.columns):
                self._ech.add(self._index.vec(col, strict=False), tag=j)
        return self._ech

    @property
    def rank(self) -> int:
        return self._echelon().rank

    def kernel(self) -> list[dict]:
        return [dict(r) for r in self._echelon().relations]

    def preimage(self, target: dict) -> dict | None:
        """Some source combination (index -> coeff) mapping to target, or None."""
        ech = self._echelon()
        for k in target:
            if k not in self._index:
                return None
        return ech.express(self._index.vec(target))

    def __call__(self, coeffs: dict) -> dict:
        out: dict = {}
        for j, c in coeffs.items():
            add_terms(out, self.columns[j], c)
        return out


def in_span(vectors: list[dict], target: dict) -> dict | None:
    return LinearMap(list(range(len(vectors))), vectors).preimage(target)


def to_frac(d: dict) -> dict:
    return {k: Fraction(v) for k, v in d.items() if v}


# -- bimodules with a flat basis -------------------------------------------------------


def algebra_generators(A) -> list[dict]:
    """Term dicts of e(nu), x_k e(nu), tau_k e(nu) that survive in a cyclotomic quotient A."""
    alg = A.alg
    if A.n == 0:
        return [alg.one(0).terms]
    out = [alg.e(nu).terms for nu in A.live]
    for g, _, left, right in generators(alg, A.beta):
        if left in A.dead or right in A.dead:
            continue
        if A.reduce_terms(g.terms):
            out.append(g.terms)
    return out


def embed_terms(alg: KLRAlgebra, terms: dict, tail) -> dict:
    if not tail:
        return terms
    k = len(tail)
    return {Monomial(m.a + (0,) * k, m.w + tuple(range(len(m.w), len(m.w) + k)),
                     m.nu + tuple(tail)): c for m, c in terms.items()}


class Bimodule:
    """A finite-dimensional bimodule given by an ordered basis and action callbacks.

    ``left(x, j)`` and ``right(j, y)`` return coordinate dicts of x.b_j and b_j.y,
    where x and y are term dicts of the left and right algebras (before any
    embedding). Either algebra may be None for a one-sided module.
    """

    def __init__(self, name: str, keys: list, left_alg, right_alg,
                 left: Callable | None, right: Callable | None):
        self.name = name
        self.keys = list(keys)
        self.index = {k: j for j, k in enumerate(self.keys)}
        self.left_alg = left_alg
        self.right_alg = right_alg
        self._left = left
        self._right = right

    @property
    def dim(self) -> int:
        return len(self.keys)

    def left_act(self, x: dict, vec: dict) -> dict:
        out: dict = {}
        for j, c in vec.items():
            add_terms(out, self._left(x, j), c)
        return out

    def right_act(self, vec: dict, y: dict) -> dict:
        out: dict = {}
        for j, c in vec.items():
            add_terms(out, self._right(j, y), c)
        return out

    def coords(self, key_terms: dict) -> dict:
        return {self.index[k]: c for k, c in key_terms.items() if c}

    def terms(self, vec: dict) -> dict:
        return {self.keys[j]: c for j, c in vec.items() if c}

    def render(self, vec: dict) -> str:
        if not vec:
            return "0"
        return " + ".join(f"({c})*{self.keys[j]}" for j, c in sorted(vec.items()))


def slice_bimodule(S: Slice, left_alg, left_tail, right_alg, right_tail, name: str = "") -> Bimodule:
    """Bimodule structure on a finite slice, algebras acting through embeddings."""
    alg = S.alg
    keys = S.all_basis()
    index = {m: j for j, m in enumerate(keys)}

    def left(x, j):
        t = S.reduce(alg.multiply_terms(embed_terms(alg, x, left_tail), {keys[j]: 1}))
        return {index[m]: c for m, c in t.items()}

    def right(j, y):
        t = S.reduce(alg.multiply_terms({keys[j]: 1}, embed_terms(alg, y, right_tail)))
        return {index[m]: c for m, c in t.items()}

    return Bimodule(name or S.name, keys, left_alg, right_alg, left, right)


def tensor_bimodule(T: Tensor, left_alg, left_tail, right_alg, right_tail, name: str = "") -> Bimodule:
    alg = T.alg
    keys = T.all_basis()
    index = {p: j for j, p in enumerate(keys)}

    def left(x, j):
        t = T.act_left(embed_terms(alg, x, left_tail), {keys[j]: 1})
        return {index[p]: c for p, c in t.items()}

    def right(j, y):
        t = T.act_right({keys[j]: 1}, embed_terms(alg, y, right_tail))
        return {index[p]: c for p, c in t.items()}

    return Bimodule(name or T.name, keys, left_alg, right_alg, left, right)


def regular_bimodule(A, name: str = "") -> Bimodule:
    """A as an (A, A)-bimodule."""
    alg = A.alg

    def left(x, j):
        return A.reduce_terms(alg.multiply_terms(x, {A.basis[j]: 1}))

    def right(j, y):
        return A.reduce_terms(alg.multiply_terms({A.basis[j]: 1}, y))

    return Bimodule(name or f"R^L{A.beta}", A.basis, A, A, left, right)


def tensor_over(M: Bimodule, N: Bimodule, A=None) -> Bimodule:
    """M (x)_A N as the quotient of M (x)_k N by m.a (x) n - m (x) a.n over generators a of A."""
    A = A if A is not None else M.right_alg
    if A is not N.left_alg and A is not M.right_alg:
        raise ValueError("algebra mismatch")
    pairs = Indexer((j, k) for j in range(M.dim) for k in range(N.dim))
    ech = Echelon()
    gens = algebra_generators(A) if A is not None and A.dim else []
    for g in gens:
        right = [M._right(j, g) for j in range(M.dim)]
        left = [N._left(g, k) for k in range(N.dim)]
        for j in range(M.dim):
            for k in range(N.dim):
                vec: dict = {}
                for j2, c in right[j].items():
                    add_terms(vec, {pairs.index[(j2, k)]: c})
                for k2, c in left[k].items():
                    add_terms(vec, {pairs.index[(j, k2)]: -c})
                if vec:
                    ech.add(vec)
    if A is not None and A.dim == 0:
        keys = []
    else:
        keys = [p for c, p in enumerate(pairs.keys) if c not in ech.rows]
    index = {p: c for c, p in enumerate(keys)}

    def reduce(vec: dict) -> dict:
        r = ech.reduce(vec)
        return {index[pairs.keys[c]]: v for c, v in r.items()}

    def left(x, c):
        j, k = keys[c]
        vec = {}
        for j2, v in M._left(x, j).items():
            add_terms(vec, {pairs.index[(j2, k)]: v})
        return reduce(vec)

    def right(c, y):
        j, k = keys[c]
        vec = {}
        for k2, v in N._right(k, y).items():
            add_terms(vec, {pairs.index[(j, k2)]: v})
        return reduce(vec)

    return Bimodule(f"{M.name} (x) {N.name}", keys, M.left_alg, N.right_alg,
                    left if M._left else None, right if N._right else None)


class BimoduleMap:
    """A linear map between bimodules, stored as target coordinates of each source basis vector."""

    def __init__(self, source: Bimodule, target: Bimodule, columns: list[dict], name: str = ""):
        if len(columns) != source.dim:
            raise ValueError("one column per source basis vector expected")
        self.source, self.target = source, target
        self.columns = columns
        self.name = name

    def __call__(self, vec: dict) -> dict:
        out: dict = {}
        for j, c in vec.items():
            add_terms(out, self.columns[j], c)
        return out

    def compose(self, first: "BimoduleMap") -> "BimoduleMap":
        """self after first."""
        return BimoduleMap(first.source, self.target, [self(c) for c in first.columns],
                           f"{self.name}.{first.name}")

    @property
    def rank(self) -> int:
        return LinearMap(self.source.keys, self.columns).rank

    def is_injective(self) -> bool:
        return self.rank == self.source.dim

    def is_bijective(self) -> bool:
        return self.source.dim == self.target.dim == self.rank

    def is_identity(self) -> bool:
        return all(col == {j: 1} for j, col in enumerate(self.columns))

    def identity_witness(self) -> int | None:
        for j, col in enumerate(self.columns):
            if col != {j: 1}:
                return j
        return None

    def intertwining_witness(self) -> tuple | None:
        """First (side, generator index, basis index) where the map fails to commute with an action."""
        s, t = self.source, self.target
        if s.left_alg is not None and s._left and t._left:
            for g_idx, g in enumerate(algebra_generators(s.left_alg)):
                for j in range(s.dim):
                    if self(s._left(g, j)) != t.left_act(g, self.columns[j]):
                        return ("left", g_idx, j)
        if s.right_alg is not None and s._right and t._right:
            for g_idx, g in enumerate(algebra_generators(s.right_alg)):
                for j in range(s.dim):
                    if self(s._right(j, g)) != t.right_act(self.columns[j], g):
                        return ("right", g_idx, j)
        return None


def identity_map(M: Bimodule) -> BimoduleMap:
    return BimoduleMap(M, M, [{j: Fraction(1)} for j in range(M.dim)], "id")


# -- projectivity ------------------------------------------------------------------------


def is_projective(A, M: Bimodule, side: str = "right") -> bool:
    """Decide whether M is a projective one-sided A-module (dual basis criterion).

    Hom_A(M, A) is computed as a nullspace; with a generating set m_1..m_r of M,
    M is projective exactly when some f_1..f_r in Hom_A(M, A) satisfy
    sum_j m_j f_j(m) = m for all m (f_j(m) m_j on the left side).
    """
    if M.dim == 0:
        return True
    if A.dim == 0:
        return False
    gens = algebra_generators(A)
    dA = A.dim
    act = (lambda j, g: M._right(j, g)) if side == "right" else (lambda j, g: M._left(g, j))

    def amul(c: dict, g: dict) -> dict:
        lift = {A.basis[k]: v for k, v in c.items()}
        prod = A.alg.multiply_terms(lift, g) if side == "right" else A.alg.multiply_terms(g, lift)
        return A.reduce_terms(prod)

    # unknown f(b_j)_k at column j * dA + k; f(b_j g) = f(b_j) g for every generator g
    eqs = []
    basis_g = [[amul({k: 1}, g) for k in range(dA)] for g in gens]
    for gi, g in enumerate(gens):
        for j in range(M.dim):
            bg = act(j, g)
            eq_by_row: dict[int, dict] = {}
            for j2, c in bg.items():
                for k in range(dA):
                    eq_by_row.setdefault(k, {})
                    add_terms(eq_by_row[k], {j2 * dA + k: c})
            for k in range(dA):
                for k2, c in basis_g[gi][k].items():
                    eq_by_row.setdefault(k2, {})
                    add_terms(eq_by_row[k2], {j * dA + k: -c})
            eqs.extend(v for v in eq_by_row.values() if v)
    homs = nullspace(eqs, M.dim * dA)
    # greedy generating set of M
    gen_idx, sub = [], Echelon()
    for j in range(M.dim):
        if sub.contains({j: 1}):
            continue
        gen_idx.append(j)
        _close_submodule(sub, {j: 1}, gens, act)
        if sub.rank == M.dim:
            break

    # unknown c_{j,t}: coefficient of hom t in f_j; sum_{j,t} c_{j,t} m_j . h_t(b_l) = b_l
    columns = []
    for j in gen_idx:
        for h in homs:
            col: dict = {}
            for l in range(M.dim):
                fl = {k: h[l * dA + k] for k in range(dA) if h.get(l * dA + k)}
                if not fl:
                    continue
                lift = {A.basis[k]: v for k, v in fl.items()}
                img = M.right_act({j: 1}, lift) if side == "right" else M.left_act(lift, {j: 1})
                for l2, v in img.items():
                    add_terms(col, {(l, l2): v})
            columns.append(col)
    target = {(l, l): 1 for l in range(M.dim)}
    return in_span(columns, target) is not None


def _close_submodule(ech: Echelon, start: dict, gens: list, act) -> None:
    queue = [start]
    while queue:
        v = queue.pop()
        if not ech.add(v):
            continue
        for g in gens:
            w: dict = {}
            for j, c in v.items():
                add_terms(w, act(j, g), c)
            if w and not ech.contains(w):
                queue.append(w)
