"""Cartan data, root/weight bookkeeping and the Q-polynomial matrix."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Mapping, Sequence


class CartanError(ValueError):
    """Raised when a matrix or Q-matrix violates a structural axiom."""


@dataclass(frozen=True)
class CartanDatum:
    labels: tuple[str, ...]
    matrix: tuple[tuple[int, ...], ...]
    symmetrizers: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.labels)

    def index(self, label) -> int:
        if isinstance(label, int) and not isinstance(label, bool):
            if 0 <= label < self.rank:
                return label
            raise KeyError(f"unknown label index {label}")
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"unknown label {label!r}") from None

    def a(self, i: int, j: int) -> int:
        return self.matrix[i][j]

    def form(self, i: int, j: int) -> int:
        """(alpha_i | alpha_j) = d_i a_ij, on label indices."""
        return self.symmetrizers[i] * self.matrix[i][j]

    def root(self, coeffs: Mapping[str, int] | Sequence[int] | None = None) -> tuple[int, ...]:
        """Normalize a root vector given as label->count mapping or a sequence."""
        if coeffs is None:
            return (0,) * self.rank
        if isinstance(coeffs, Mapping):
            out = [0] * self.rank
            for lab, c in coeffs.items():
                out[self.index(lab)] += int(c)
        else:
            out = [int(c) for c in coeffs]
            if len(out) != self.rank:
                raise CartanError("root vector has wrong length")
        if any(c < 0 for c in out):
            raise CartanError(f"{tuple(out)} is not in Q^+")
        return tuple(out)

    def weight(self, mults: Mapping[str, int] | Sequence[int]) -> tuple[int, ...]:
        """Dominant weight as the tuple of <h_i, Lambda>."""
        if isinstance(mults, Mapping):
            out = [0] * self.rank
            for lab, c in mults.items():
                out[self.index(lab)] += int(c)
        else:
            out = [int(c) for c in mults]
        if len(out) != self.rank or any(c < 0 for c in out):
            raise CartanError(f"{tuple(out)} is not a dominant integral weight")
        return tuple(out)

    def simple(self, i) -> tuple[int, ...]:
        k = self.index(i)
        return tuple(int(j == k) for j in range(self.rank))


def _minimal_symmetrizer(A: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    n = len(A)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or A[i][j] == 0:
                    continue
                want = d[i] * A[i][j] / A[j][i]
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                elif d[j] != want:
                    return None
    den = math.lcm(*(x.denominator for x in d))
    ints = [int(x * den) for x in d]
    g = math.gcd(*ints)
    return tuple(v // g for v in ints)


def validate_cartan(matrix, symmetrizers=None, labels=None) -> CartanDatum:
    """Validate a generalized Cartan matrix and return the datum.

    Symmetrizers are computed (minimal positive) when omitted.
    """
    A = [list(row) for row in matrix]
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise CartanError("Cartan matrix must be square and nonempty")
    for row in A:
        for v in row:
            if not isinstance(v, int) or isinstance(v, bool):
                raise CartanError("Cartan matrix entries must be integers")
    for i in range(n):
        if A[i][i] != 2:
            raise CartanError(f"cartan axiom (i) a_ii=2 violated at {i}")
    for i in range(n):
        for j in range(n):
            if i != j and A[i][j] > 0:
                raise CartanError(f"cartan axiom (ii) a_ij<=0 violated at ({i},{j})")
    for i in range(n):
        for j in range(n):
            if (A[i][j] == 0) != (A[j][i] == 0):
                raise CartanError(
                    f"cartan axiom (iii) a_ij=0 iff a_ji=0 violated at ({i},{j})")
    if symmetrizers is None:
        d = _minimal_symmetrizer(A)
        if d is None:
            raise CartanError("cartan axiom (iv) no symmetrizer exists")
    else:
        d = tuple(int(x) for x in symmetrizers)
        if len(d) != n or any(x <= 0 for x in d):
            raise CartanError("cartan axiom (iv) symmetrizers must be positive")
        for i in range(n):
            for j in range(n):
                if d[i] * A[i][j] != d[j] * A[j][i]:
                    raise CartanError("cartan axiom (iv) DA is not symmetric")
    if labels is None:
        labels = tuple(str(k + 1) for k in range(n))
    labels = tuple(str(x) for x in labels)
    if len(labels) != n or len(set(labels)) != n:
        raise CartanError("labels must be distinct and match the matrix size")
    return CartanDatum(labels, tuple(tuple(r) for r in A), d)


def bilinear(datum: CartanDatum, i, j) -> int:
    return datum.form(datum.index(i), datum.index(j))


def lambda_i(datum: CartanDatum, Lam, beta, i) -> int:
    """<h_i, Lambda - beta>."""
    k = datum.index(i)
    Lam = datum.weight(Lam) if not isinstance(Lam, tuple) else Lam
    beta = datum.root(beta) if not isinstance(beta, tuple) else beta
    return Lam[k] - sum(datum.a(k, j) * beta[j] for j in range(datum.rank))


def height(beta: Sequence[int]) -> int:
    return sum(beta)


def enumerate_Ibeta(datum: CartanDatum, beta) -> list[tuple[int, ...]]:
    """All index sequences with content beta, lexicographically sorted."""
    beta = datum.root(beta) if not isinstance(beta, tuple) else beta
    letters = [k for k in range(datum.rank) for _ in range(beta[k])]
    return sorted(set(permutations(letters)))


def multinomial(beta: Sequence[int]) -> int:
    out = math.factorial(sum(beta))
    for b in beta:
        out //= math.factorial(b)
    return out


@dataclass(frozen=True)
class QMatrix:
    """Coefficients t_{i,j;p,q} of Q_ij(u, v) = sum t u^p v^q, keyed by index pairs."""

    datum: CartanDatum
    entries: Mapping[tuple[int, int], tuple[tuple[int, int, Fraction | int], ...]] = field(
        default_factory=dict)

    def terms(self, i: int, j: int) -> tuple[tuple[int, int, Fraction | int], ...]:
        if i == j:
            return ()
        return self.entries.get((i, j), ())

    def evaluate(self, i: int, j: int, u, v):
        return sum(t * u ** p * v ** q for p, q, t in self.terms(i, j))

    def describe(self, i: int, j: int) -> str:
        parts = []
        for p, q, t in sorted(self.terms(i, j), key=lambda pqt: (-pqt[0], pqt[1])):
            mono = "*".join(s for s in (
                "" if p == 0 else ("u" if p == 1 else f"u^{p}"),
                "" if q == 0 else ("v" if q == 1 else f"v^{q}")) if s) or "1"
            parts.append(mono if t == 1 else f"{t}*{mono}")
        return " + ".join(parts) if parts else "0"

    def key(self) -> tuple:
        return tuple(sorted((k, tuple(sorted((p, q, str(t)) for p, q, t in v)))
                            for k, v in self.entries.items()))


def _check_q(datum: CartanDatum, entries) -> None:
    n = datum.rank
    for (i, j), terms in entries.items():
        if i == j:
            if terms:
                raise CartanError("Q_ii must be 0")
            continue
        target = -2 * datum.form(i, j)
        for p, q, t in terms:
            if t == 0:
                raise CartanError("stored Q coefficients must be nonzero")
            if p < 0 or q < 0:
                raise CartanError("Q exponents must be nonnegative")
            if datum.form(i, i) * p + datum.form(j, j) * q != target:
                raise CartanError(
                    f"Q_{datum.labels[i]}{datum.labels[j]} term u^{p}v^{q} has nonzero degree")
        mirror = {(q, p, t) for p, q, t in entries.get((j, i), ())}
        if set(terms) != mirror:
            raise CartanError("Q_ij(u,v) = Q_ji(v,u) violated")
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            lead = [t for p, q, t in entries.get((i, j), ()) if p == -datum.a(i, j) and q == 0]
            if not lead:
                raise CartanError(
                    f"t_{{{datum.labels[i]},{datum.labels[j]}}} must be a unit")


def default_q(datum: CartanDatum) -> QMatrix:
    """Q_ij(u,v) = u^{-a_ij} + v^{-a_ji}; Q_ij = 1 for orthogonal pairs."""
    entries = {}
    for i in range(datum.rank):
        for j in range(datum.rank):
            if i == j:
                continue
            if datum.a(i, j) == 0:
                entries[(i, j)] = ((0, 0, 1),)
            else:
                entries[(i, j)] = tuple(sorted({(-datum.a(i, j), 0, 1), (0, -datum.a(j, i), 1)}))
    _check_q(datum, entries)
    return QMatrix(datum, entries)


def make_q(datum: CartanDatum, overrides) -> QMatrix:
    """Build a QMatrix from override entries ``{"i","j","p","q","t"}``.

    Entries for (i,j) imply the mirrored (j,i) entries; pairs not mentioned keep
    the default.
    """
    base = dict(default_q(datum).entries)
    grouped: dict[tuple[int, int], list] = {}
    for e in overrides:
        i, j = datum.index(e["i"]), datum.index(e["j"])
        t = Fraction(str(e.get("t", 1)))
        t = int(t) if t.denominator == 1 else t
        grouped.setdefault((i, j), []).append((int(e["p"]), int(e["q"]), t))
    for (i, j), terms in grouped.items():
        base[(i, j)] = tuple(sorted(terms))
        base[(j, i)] = tuple(sorted((q, p, t) for p, q, t in terms))
    _check_q(datum, base)
    return QMatrix(datum, base)
