"""Exact sparse linear algebra over Q.

Vectors are dicts ``column -> coefficient``. Columns are integers; the pivot of
a row is its largest column, so reduction modulo a subspace leaves only small
columns behind (the caller chooses the column order).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterable, Sequence

Vec = dict


def _axpy(acc: dict, row: dict, scale) -> None:
    for c, v in row.items():
        nv = acc.get(c, 0) + scale * v
        if nv:
            acc[c] = nv
        else:
            acc.pop(c, None)


class Echelon:
    """Incrementally maintained fully reduced row echelon form.

    With ``track=True`` each row remembers which inserted vectors it came from,
    so membership queries also return coefficients and dependencies are kept as
    kernel relations.
    """

    def __init__(self, track: bool = False):
        self.rows: dict[int, dict] = {}
        self.track = track
        self.combos: dict[int, dict] = {}
        self.relations: list[dict] = []
        self._count = 0

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> set[int]:
        return set(self.rows)

    def reduce(self, vec: dict, combo: dict | None = None) -> dict:
        out = {c: Fraction(v) for c, v in vec.items() if v}
        for c in [c for c in out if c in self.rows]:
            s = out.get(c)
            if not s:
                continue
            _axpy(out, self.rows[c], -s)
            if combo is not None:
                _axpy(combo, self.combos[c], -s)
        return out

    def add(self, vec: dict, tag: Hashable | None = None) -> bool:
        """Insert a vector; return True if it increased the rank."""
        if tag is None:
            tag = self._count
        self._count += 1
        combo = {tag: Fraction(1)} if self.track else None
        r = self.reduce(vec, combo)
        if not r:
            if self.track:
                self.relations.append(combo)
            return False
        p = max(r)
        inv = 1 / r[p]
        r = {c: v * inv for c, v in r.items()}
        if self.track:
            combo = {t: v * inv for t, v in combo.items()}
        for q, row in self.rows.items():
            s = row.get(p)
            if s:
                _axpy(row, r, -s)
                if self.track:
                    _axpy(self.combos[q], combo, -s)
        self.rows[p] = r
        if self.track:
            self.combos[p] = combo
        return True

    def extend(self, vecs: Iterable[dict]) -> int:
        return sum(1 for v in vecs if self.add(v))

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def express(self, vec: dict) -> dict | None:
        """Coefficients over inserted tags summing to vec, or None (needs track)."""
        if not self.track:
            raise ValueError("express needs a tracking echelon")
        combo: dict = {}
        r = self.reduce(vec, combo)
        if r:
            return None
        return {t: -v for t, v in combo.items() if v}


def rank(vectors: Iterable[dict]) -> int:
    e = Echelon()
    e.extend(vectors)
    return e.rank


def in_span(vectors: Sequence[dict], target: dict) -> dict | None:
    """Coefficients c with sum_j c_j vectors[j] == target, or None."""
    return solve(vectors, target)


def nullspace(equations: Iterable[dict], ncols: int) -> list[dict]:
    """Basis of {x in Q^ncols : eq . x = 0 for every equation}."""
    ech = Echelon()
    ech.extend(equations)
    # rows are pivoted on their largest column; free columns parametrize solutions
    out = []
    for f in range(ncols):
        if f in ech.rows:
            continue
        x = {f: Fraction(1)}
        for p, row in ech.rows.items():
            v = row.get(f)
            if v:
                x[p] = -v
        out.append(x)
    return out


def solve(vectors: Sequence[dict], target: dict) -> dict | None:
    """Some x with sum_j x_j vectors[j] == target (indices as keys), or None."""
    e = Echelon(track=True)
    for j, v in enumerate(vectors):
        e.add(v, tag=j)
    return e.express(target)


def kernel_basis(vectors: Sequence[dict]) -> list[dict]:
    """Basis of {x : sum_j x_j vectors[j] = 0}."""
    e = Echelon(track=True)
    for j, v in enumerate(vectors):
        e.add(v, tag=j)
    return e.relations


def to_sparse(row: Sequence) -> dict:
    return {j: Fraction(v) for j, v in enumerate(row) if v}


def matrix_rank(matrix: Sequence[Sequence]) -> int:
    return rank(to_sparse(r) for r in matrix)


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a square dense matrix; raises ValueError when singular."""
    n = len(matrix)
    cols = [{i: Fraction(matrix[i][j]) for i in range(n) if matrix[i][j]} for j in range(n)]
    out = [[Fraction(0)] * n for _ in range(n)]
    e = Echelon(track=True)
    for j, c in enumerate(cols):
        if not e.add(c, tag=j):
            raise ValueError("matrix is singular")
    for i in range(n):
        x = e.express({i: 1})
        for j, v in x.items():
            out[j][i] = v
    return out


@dataclass(frozen=True)
class ExactMatrix:
    """A rows x cols matrix with sparse rational entries {(r, c): value}."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "ExactMatrix":
        ncols = len(data[0]) if data else 0
        ent = {(r, c): Fraction(v) for r, row in enumerate(data) for c, v in enumerate(row) if v}
        return cls(len(data), ncols, ent)

    def row(self, r: int) -> dict:
        return {c: v for (rr, c), v in self.entries.items() if rr == r}

    def column_vectors(self) -> list[dict]:
        out = [{} for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out


def rref(M: ExactMatrix | Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int], int]:
    """Reduced row echelon form, pivoting on the first nonzero entry in column order."""
    A = M.dense() if isinstance(M, ExactMatrix) else [[Fraction(v) for v in row] for row in M]
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        hit = next((k for k in range(r, nrows) if A[k][c]), None)
        if hit is None:
            continue
        A[r], A[hit] = A[hit], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for k in range(nrows):
            if k != r and A[k][c]:
                f = A[k][c]
                A[k] = [a - f * b for a, b in zip(A[k], A[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return A, pivots, len(pivots)


def solve_matrix(M: ExactMatrix | Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """One solution x of Mx = b (dense), or None."""
    if not isinstance(M, ExactMatrix):
        M = ExactMatrix.from_rows(M)
    x = solve(M.column_vectors(), to_sparse(b))
    if x is None:
        return None
    out = [Fraction(0)] * M.cols
    for j, v in x.items():
        out[j] = v
    return out


def kernel_matrix(M: ExactMatrix | Sequence[Sequence]) -> list[list[Fraction]]:
    """Dense nullspace basis of M."""
    if not isinstance(M, ExactMatrix):
        M = ExactMatrix.from_rows(M)
    out = []
    for x in nullspace((M.row(r) for r in range(M.rows)), M.cols):
        out.append([x.get(j, Fraction(0)) for j in range(M.cols)])
    return out


class Indexer:
    """Assigns consecutive integer columns to hashable keys."""

    def __init__(self, keys: Iterable[Hashable] = ()):
        self.keys: list = []
        self.index: dict = {}
        for k in keys:
            self.add(k)

    def add(self, key) -> int:
        j = self.index.get(key)
        if j is None:
            j = len(self.keys)
            self.index[key] = j
            self.keys.append(key)
        return j

    def __len__(self):
        return len(self.keys)

    def __contains__(self, key):
        return key in self.index

    def vec(self, terms: dict, strict: bool = True) -> dict:
        out = {}
        for k, v in terms.items():
            if not v:
                continue
            if strict:
                j = self.index[k]
            else:
                j = self.add(k)
            out[j] = v
        return out

    def unvec(self, vec: dict) -> dict:
        return {self.keys[j]: v for j, v in vec.items() if v}
