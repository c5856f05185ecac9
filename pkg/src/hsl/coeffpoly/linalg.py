"""Exact linear algebra over the Gaussian rationals.

Vectors are sparse dicts {key: scalar}.  Elimination is fraction-free: a row
update is ``v <- c*v - f*row`` followed by removal of the rational content, so
every stored row is a primitive integral vector and no division happens inside
the elimination loop.  Determinants use Bareiss' algorithm on dense matrices.
"""
from __future__ import annotations

import heapq
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import gcd, lcm, mpq, mpz

from .scalars import Coefficient, coeff, conj

Vector = Dict[Hashable, object]


# ----------------------------------------------------------------------------- helpers

def _parts(c):
    if isinstance(c, Coefficient):
        return (c.re, c.im)
    return (c,)


def content_scale(*vecs: Vector) -> "mpq":
    """Rational s such that s*v is a primitive integral vector (jointly over vecs)."""
    den = mpz(1)
    for v in vecs:
        for c in v.values():
            for p in _parts(c):
                if p:
                    den = lcm(den, p.denominator)
    g = mpz(0)
    for v in vecs:
        for c in v.values():
            for p in _parts(c):
                if p:
                    g = gcd(g, (p * den).numerator)
    if g == 0:
        return mpq(1)
    return mpq(den, g)


def scale_vec(v: Vector, s) -> Vector:
    if s == 1:
        return v
    return {k: c * s for k, c in v.items()}


def _axpy_ff(v: dict, c, f, row: dict) -> None:
    """In place: v <- c*v - f*row."""
    if c != 1:
        for k in v:
            v[k] = v[k] * c
    for k, r in row.items():
        w = v.get(k)
        t = f * r
        if w is None:
            v[k] = -t
        else:
            w = w - t
            if w == 0:
                del v[k]
            else:
                v[k] = w


def normalize_sign(v: Vector, order: Optional[Sequence] = None) -> Vector:
    """Scale v so its first nonzero entry (in ``order``) has positive real part or is +i."""
    if not v:
        return v
    keys = order if order is not None else sorted(v)
    for k in keys:
        c = v.get(k)
        if c is None or c == 0:
            continue
        re = c.re if isinstance(c, Coefficient) else c
        im = c.im if isinstance(c, Coefficient) else 0
        if re < 0 or (re == 0 and im < 0):
            return {kk: -cc for kk, cc in v.items()}
        return v
    return v


# ----------------------------------------------------------------------------- elimination

class SparseEliminator:
    """Incremental fraction-free row echelon form with optional combination tracking.

    Each stored row has its pivot at the largest internal key index present, so
    reducing by a row only introduces smaller indices and a single max-heap pass
    finishes the reduction.
    """

    def __init__(self, track: bool = True):
        self.track = track
        self._ids: Dict[Hashable, int] = {}
        self._keys: List[Hashable] = []
        self.rows: Dict[int, Tuple[dict, dict]] = {}  # pivot -> (row, combo)
        self.kernel: List[dict] = []
        self.count = 0

    def _encode(self, vec: Vector) -> dict:
        ids = self._ids
        out = {}
        for k, c in vec.items():
            if c == 0:
                continue
            i = ids.get(k)
            if i is None:
                i = len(self._keys)
                ids[k] = i
                self._keys.append(k)
            out[i] = c
        return out

    def decode(self, v: dict) -> Vector:
        keys = self._keys
        return {keys[i]: c for i, c in v.items()}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _reduce(self, v: dict, combo: Optional[dict], weights: Optional[dict]):
        """Reduce v in place.  ``combo`` tracks input combinations, ``weights`` row multipliers."""
        rows = self.rows
        heap = [-i for i in v if i in rows]
        heapq.heapify(heap)
        scale = mpq(1)
        seen = set()
        while heap:
            p = -heapq.heappop(heap)
            if p in seen:
                continue
            seen.add(p)
            f = v.get(p)
            if f is None:
                continue
            row, rcombo = rows[p]
            c = row[p]
            _axpy_ff(v, c, f, row)
            if combo is not None:
                _axpy_ff(combo, c, f, rcombo)
            if weights is not None:
                if c != 1:
                    for k in weights:
                        weights[k] = weights[k] * c
                weights[p] = weights.get(p, 0) + f
                scale = scale * c
            for k in row:
                if k != p and k in rows:
                    heapq.heappush(heap, -k)
        return scale

    def add(self, vec: Vector, tag: Hashable = None) -> bool:
        """Insert a vector; returns True if it enlarged the span."""
        v = self._encode(vec)
        combo = {self.count if tag is None else tag: mpq(1)} if self.track else None
        self.count += 1
        self._reduce(v, combo, None)
        if not v:
            if combo is not None:
                s = content_scale(combo)
                self.kernel.append(scale_vec(combo, s))
            return False
        s = content_scale(v, combo) if combo is not None else content_scale(v)
        v = scale_vec(v, s)
        if combo is not None:
            combo = scale_vec(combo, s)
        self.rows[max(v)] = (v, combo if combo is not None else {})
        return True

    def extend(self, vecs: Iterable[Vector]) -> int:
        added = 0
        for vec in vecs:
            added += self.add(vec)
        return added

    def residual(self, vec: Vector) -> Vector:
        v = self._encode(vec)
        self._reduce(v, None, None)
        return self.decode(v)

    def contains(self, vec: Vector) -> bool:
        return not self.residual(vec)

    def express(self, vec: Vector) -> Optional[dict]:
        """Coefficients {tag: c} with vec = sum c * inputs[tag], or None if outside the span."""
        if not self.track:
            raise ValueError("express needs a tracking eliminator")
        v = self._encode(vec)
        weights: dict = {}
        scale = self._reduce(v, None, weights)
        if v:
            return None
        # scale * vec = sum_p weights[p] * row_p, row_p = sum_t combo_p[t] * input_t
        out: dict = {}
        for p, w in weights.items():
            if w == 0:
                continue
            for t, c in self.rows[p][1].items():
                val = out.get(t, 0) + w * c
                if val == 0:
                    out.pop(t, None)
                else:
                    out[t] = val
        inv = mpq(1) / scale
        return {t: c * inv for t, c in out.items()}


def kernel_of_images(images: Sequence[Vector]) -> Tuple[List[dict], int]:
    """Linear relations among ``images``: returns (kernel vectors as {index: c}, rank)."""
    el = SparseEliminator(track=True)
    for i, img in enumerate(images):
        el.add(img, i)
    kernel = [normalize_sign(k, range(len(images))) for k in el.kernel]
    return kernel, el.rank


def rank_of(vectors: Iterable[Vector]) -> int:
    el = SparseEliminator(track=False)
    el.extend(vectors)
    return el.rank


class EchelonBasis:
    """Span of a list of vectors with exact membership and coordinate queries."""

    def __init__(self, vectors: Sequence[Vector]):
        self.vectors = list(vectors)
        self._el = SparseEliminator(track=True)
        for i, v in enumerate(self.vectors):
            self._el.add(v, i)

    @property
    def rank(self) -> int:
        return self._el.rank

    @property
    def independent(self) -> bool:
        return self._el.rank == len(self.vectors)

    @property
    def relations(self) -> List[dict]:
        return self._el.kernel

    def contains(self, v: Vector) -> bool:
        return self._el.contains(v)

    def coordinates(self, v: Vector) -> Optional[dict]:
        return self._el.express(v)


# ----------------------------------------------------------------------------- dense matrices

class ExactMatrix:
    """Dense exact matrix; entries are mpq or Coefficient."""

    def __init__(self, rows: Sequence[Sequence]):
        self.entries = [[coeff(c) if not isinstance(c, Coefficient) else c for c in r] for r in rows]
        self.nrows = len(self.entries)
        self.ncols = len(self.entries[0]) if self.entries else 0
        if any(len(r) != self.ncols for r in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, n: int, k: int) -> "ExactMatrix":
        return cls([[0] * k for _ in range(n)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], row_keys: Sequence[Hashable]) -> "ExactMatrix":
        index = {k: i for i, k in enumerate(row_keys)}
        rows = [[mpq(0)] * len(columns) for _ in row_keys]
        for j, col in enumerate(columns):
            for k, c in col.items():
                if k not in index:
                    raise KeyError(f"column {j} has entry outside the row keys: {k}")
                rows[index[k]][j] = c
        return cls(rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> dict:
        return {i: r[j] for i, r in enumerate(self.entries) if r[j] != 0}

    def columns(self) -> List[dict]:
        return [self.column(j) for j in range(self.ncols)]

    def row(self, i: int) -> dict:
        return {j: c for j, c in enumerate(self.entries[i]) if c != 0}

    def apply(self, v: Sequence) -> list:
        return [sum((a * b for a, b in zip(r, v)), mpq(0)) for r in self.entries]

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.entries)) if other.entries else []
        return ExactMatrix([[sum((a * b for a, b in zip(r, c)), mpq(0)) for c in cols]
                            for r in self.entries])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def is_zero(self) -> bool:
        return all(c == 0 for r in self.entries for c in r)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(c) for c in zip(*self.entries)]) if self.entries else ExactMatrix([])

    def conjugate_transpose(self) -> "ExactMatrix":
        return ExactMatrix([[conj(c) for c in col] for col in zip(*self.entries)])

    def rank(self) -> int:
        return rank(self)

    def nullspace(self) -> List[list]:
        return nullspace(self)

    def det(self):
        return det(self)

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.entries == other.entries

    def __repr__(self):
        return f"ExactMatrix({self.nrows}x{self.ncols})"


def rank(A: ExactMatrix) -> int:
    return rank_of(A.row(i) for i in range(A.nrows))


def nullspace(A: ExactMatrix) -> List[list]:
    """Basis of {v : A v = 0}; verifies soundness and rank + nullity = cols."""
    kernel, r = kernel_of_images(A.columns())
    basis = [[k.get(j, mpq(0)) for j in range(A.ncols)] for k in kernel]
    if r + len(basis) != A.ncols:
        raise AssertionError("rank-nullity violated")
    for v in basis:
        if any(c != 0 for c in A.apply(v)):
            raise AssertionError("nullspace vector not annihilated")
    return basis


def det(A: ExactMatrix):
    """Bareiss fraction-free determinant."""
    n = A.nrows
    if n != A.ncols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return mpq(1)
    M = [list(r) for r in A.entries]
    sign = 1
    prev = mpq(1)
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return mpq(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        piv = M[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * piv - M[i][k] * M[k][j]) / prev
            M[i][k] = mpq(0)
        prev = piv
    return M[n - 1][n - 1] * sign


def solve(A: ExactMatrix, b: Sequence) -> Optional[list]:
    """One exact solution of A v = b, or None."""
    el = SparseEliminator(track=True)
    for j, col in enumerate(A.columns()):
        el.add(col, j)
    coords = el.express({i: c for i, c in enumerate(b) if c != 0})
    if coords is None:
        return None
    return [coords.get(j, mpq(0)) for j in range(A.ncols)]
