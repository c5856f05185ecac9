"""Exact operator matrices on P_l (x) H_k: kernel counts, the kernel decomposition,
the Howe-harmonic splitting, symmetry and factorization suites, and symbol determinants.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .coeffpoly import EchelonBasis, ExactMatrix, MultiPoly, Q, det, kernel_of_images, rank_of
from .diffop import (
    DiffOp, build_A2k, du_dx, euler, higher_spin_laplace, inverted_laplace,
    inverted_laplace_exact, laplace, maxwell, rotation, special_conformal, u_dx,
)
from .radial import inverted_twistor
from .harmonic import (
    BasisSpec, basis, dim_harmonic, dim_polynomials, fischer_project, harmonic_basis, howe_basis,
    tensor_basis,
)

Op = Callable[[MultiPoly], MultiPoly]


# ----------------------------------------------------------------------------- operator matrices

@dataclass
class OperatorMatrix:
    """Matrix of ``op`` from span(domain) into span(codomain), columns in codomain coordinates."""
    name: str
    params: dict
    domain: List[MultiPoly]
    codomain: List[MultiPoly]
    matrix: ExactMatrix
    op: Op = field(repr=False)

    def column_faithful(self, samples: int = 10, seed: int = 0) -> bool:
        """Re-apply the operator to sampled domain vectors and compare with the stored columns."""
        rng = random.Random(seed)
        n = len(self.domain)
        idx = range(n) if n <= samples else rng.sample(range(n), samples)
        for i in idx:
            img = self.op(self.domain[i])
            rebuilt = MultiPoly.zero(img.m)
            for r, c in self.matrix.column(i).items():
                rebuilt = rebuilt + self.codomain[r].scale(c)
            if rebuilt != img:
                return False
        return True


def operator_matrix(name: str, op: Op, domain: Sequence[MultiPoly],
                    codomain: Sequence[MultiPoly], params: Optional[dict] = None) -> OperatorMatrix:
    eb = EchelonBasis([c.terms for c in codomain])
    if not eb.independent:
        raise ValueError("codomain basis is linearly dependent")
    cols = []
    for i, p in enumerate(domain):
        coords = eb.coordinates(op(p).terms)
        if coords is None:
            raise ValueError(f"image of domain vector {i} leaves the codomain span")
        cols.append(coords)
    mat = ExactMatrix.from_columns(cols, list(range(len(codomain))))
    return OperatorMatrix(name, dict(params or {}), list(domain), list(codomain), mat, op)


def laplace_matrix(m: int, k: int, l: int) -> OperatorMatrix:
    """D_k from P_l (x) H_k to P_{l-2} (x) H_k."""
    D = higher_spin_laplace(m, k)
    cod = tensor_basis(m, l - 2, k) if l >= 2 else []
    return operator_matrix(f"D_{k}", D, tensor_basis(m, l, k), cod, {"m": m, "k": k, "l": l})


# ----------------------------------------------------------------------------- kernel dimension

def formula_dimension(m: int, k: int, l: int) -> int:
    """(C(m+l-1, m-1) - C(m+l-3, m-1)) dim H_k."""
    return (comb(m + l - 1, m - 1) - (comb(m + l - 3, m - 1) if l >= 2 else 0)) * dim_harmonic(m, k)


@lru_cache(maxsize=None)
def _kernel_cached(m: int, k: int, l: int) -> Tuple[Tuple[MultiPoly, ...], int]:
    dom = tensor_basis(m, l, k)
    D = higher_spin_laplace(m, k)
    kernel, rk = kernel_of_images([D(b).terms for b in dom])
    vecs = []
    for combo in kernel:
        v = MultiPoly.zero(m)
        for i, c in sorted(combo.items()):
            v = v + dom[i].scale(c)
        vecs.append(v)
    return tuple(vecs), rk


def kernel_basis(m: int, k: int, l: int) -> List[MultiPoly]:
    """Basis of ker_l D_k = ker D_k on P_l (x) H_k."""
    if l < 0:
        return []
    return list(_kernel_cached(m, k, l)[0])


def kernel_dimension(m: int, k: int, l: int) -> int:
    """Nullity of D_k on P_l (x) H_k."""
    if l < 0:
        return 0
    return len(_kernel_cached(m, k, l)[0])


def laplace_rank(m: int, k: int, l: int) -> int:
    return _kernel_cached(m, k, l)[1] if l >= 0 else 0


def surjectivity_check(m: int, k: int, l: int) -> dict:
    """rank D_k on P_l (x) H_k against dim P_{l-2} (x) H_k."""
    target = dim_polynomials(m, l - 2) * dim_harmonic(m, k)
    rk = laplace_rank(m, k, l)
    return {"rank": rk, "target": target, "ok": rk == target}


# ----------------------------------------------------------------------------- decomposition

class DecompositionError(AssertionError):
    def __init__(self, report: "DecompositionReport"):
        super().__init__(report.summary())
        self.report = report


@dataclass
class Block:
    i: int
    j: int
    source: Tuple[int, int]   # (x-degree, u-degree) of the simplicial harmonics embedded
    size: int                 # dim of the source space
    image_rank: int
    vectors: List[MultiPoly] = field(repr=False, default_factory=list)


@dataclass
class DecompositionReport:
    m: int
    k: int
    l: int
    embedding: str
    blocks: List[Block]
    skipped: List[Tuple[int, int]]
    annihilated: bool
    independent: bool
    total: int
    rank: int
    nullity: int
    witness: Optional[str] = None

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(b.size for b in self.blocks)

    @property
    def ok(self) -> bool:
        return self.annihilated and self.independent and self.total == self.nullity

    def summary(self) -> str:
        parts = ", ".join(f"({b.i},{b.j}):{b.size}/{b.image_rank}" for b in self.blocks)
        return (f"m={self.m} k={self.k} l={self.l} [{self.embedding}] blocks {parts}; "
                f"annihilated={self.annihilated} independent={self.independent} "
                f"total={self.total} rank={self.rank} nullity={self.nullity}"
                + (f"; {self.witness}" if self.witness else ""))


def block_indices(k: int, l: int) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]]]:
    """(kept, skipped) pairs (i, j), 0 <= i <= k, 0 <= j <= k-i, kept iff l-i+j >= k-i-j >= 0."""
    kept, skipped = [], []
    for i in range(k + 1):
        for j in range(k - i + 1):
            (kept if l - i + j >= k - i - j >= 0 else skipped).append((i, j))
    return kept, skipped


INVERTED_LAPLACE = {"printed": inverted_laplace, "exact": inverted_laplace_exact}
EMBEDDINGS = ("exact", "printed", "twistor")


def decomposition_check(m: int, k: int, l: int, embedding: str = "exact") -> DecompositionReport:
    """Embed H_{l-i+j, k-i-j} by (J Lap J)^i <u,d_x>^{i+j} and test the three kernel assertions.

    ``embedding`` selects the inverted Laplacian: "exact" is the conjugated operator,
    "printed" the closed form of ``diffop.inverted_laplace``.  "twistor" replaces the
    whole factor by (J pi<u,d_x> J)^i <u,d_x>^j, which reaches the same bidegree and
    does not vanish on the blocks where <u,d_x>^{i+j} already kills the source.
    """
    if m <= 4:
        raise ValueError("m > 4 required")
    if embedding not in EMBEDDINGS:
        raise ValueError(f"unknown embedding {embedding!r}; known: {', '.join(EMBEDDINGS)}")
    J = INVERTED_LAPLACE[embedding](m, k) if k and embedding in INVERTED_LAPLACE else None
    T = u_dx(m)
    D = higher_spin_laplace(m, k)
    kept, skipped = block_indices(k, l)
    twistors = {d: inverted_twistor(m, d) for d in range(1, k + 1)} if embedding == "twistor" else {}
    blocks, witness = [], None
    annihilated = True
    all_vecs: List[MultiPoly] = []
    for i, j in kept:
        src = basis(BasisSpec("Hkl", m, l - i + j, k - i - j))
        imgs = []
        for h in src:
            v = h
            if embedding == "twistor":
                for _ in range(j):
                    v = T(v)
                for s in range(i):
                    v = twistors[k - i + s + 1](v)
            else:
                for _ in range(i + j):
                    v = T(v)
                for _ in range(i):
                    v = J(v)
            imgs.append(v)
            if annihilated and D(v):
                annihilated = False
                witness = f"block ({i},{j}) vector not annihilated by D_{k}"
        blocks.append(Block(i, j, (l - i + j, k - i - j), len(src), rank_of(p.terms for p in imgs), imgs))
        all_vecs.extend(imgs)
    rk = rank_of(p.terms for p in all_vecs)
    nullity = kernel_dimension(m, k, l)
    independent = rk == len(all_vecs)
    if not independent and witness is None:
        lost = [(b.i, b.j) for b in blocks if b.image_rank < b.size]
        witness = f"rank {rk} < {len(all_vecs)} embedded vectors; rank-deficient blocks {lost}"
    return DecompositionReport(m, k, l, embedding, blocks, skipped, annihilated, independent,
                               len(all_vecs), rk, nullity, witness)


def decomposition_basis(m: int, k: int, l: int, embedding: str = "exact") -> List[Tuple[int, int, List[MultiPoly]]]:
    """Blocks (i, j, embedded basis); raises DecompositionError if any assertion fails."""
    rep = decomposition_check(m, k, l, embedding)
    if not rep.ok:
        raise DecompositionError(rep)
    return [(b.i, b.j, b.vectors) for b in rep.blocks]


# ----------------------------------------------------------------------------- Howe splitting

@dataclass
class Lemma42Report:
    m: int
    k: int
    l: int
    howe: int
    lower: int
    kernel: int
    howe_in_kernel: bool
    dual_twistor_nullity: int
    dual_twistor_rank: int
    lands_in_lower: bool

    @property
    def ok(self) -> bool:
        return (self.howe + self.lower == self.kernel and self.howe_in_kernel
                and self.dual_twistor_nullity == self.howe
                and self.dual_twistor_rank == self.lower and self.lands_in_lower)


def lemma42_check(m: int, k: int, l: int) -> Lemma42Report:
    """ker_l D_k = A_{l,k} (+) a copy of ker_{l-1} D_{k-1}, via <d_u,d_x> restricted to ker_l D_k.

    The dual twistor maps ker_l D_k into ker_{l-1} D_{k-1}; its kernel there is A_{l,k}
    (trivial intersection) and it is onto (the complement has the lower dimension).
    """
    if m <= 4:
        raise ValueError("m > 4 required")
    A = howe_basis(m, l, k)
    ker = kernel_basis(m, k, l)
    D = higher_spin_laplace(m, k)
    howe_in = all(not D(a) for a in A)
    if k == 0 or l == 0:
        lower = 0
        imgs: List[MultiPoly] = []
    else:
        lower = kernel_dimension(m, k - 1, l - 1)
        dd = du_dx(m)
        imgs = [dd(f) for f in ker]
    kernel, rk = kernel_of_images([p.terms for p in imgs]) if imgs else ([], 0)
    nullity = len(ker) - rk
    lands = True
    if imgs:
        Dl = higher_spin_laplace(m, k - 1)
        lap_u = laplace(m, "u")
        lands = all(not Dl(p) and not lap_u(p) for p in imgs)
    return Lemma42Report(m, k, l, len(A), lower, len(ker), howe_in, nullity, rk, lands)


# ----------------------------------------------------------------------------- ellipticity

def _direction_derivative(p: MultiPoly, x0: Sequence) -> MultiPoly:
    m = p.m
    out = MultiPoly.zero(m)
    for j, c in enumerate(x0):
        if c:
            out = out + p.diff(m + j).scale(c)
    return out


@lru_cache(maxsize=None)
def _harmonic_echelon(m: int, k: int) -> EchelonBasis:
    return EchelonBasis([h.terms for h in harmonic_basis(m, k)])


def symbol_matrix(m: int, k: int, x0: Sequence) -> ExactMatrix:
    """sigma_{x0}(D_k) on the H_k basis; the <u,x0> term is projected back to H_k."""
    x0 = [mpq(c) for c in x0]
    if len(x0) != m:
        raise ValueError(f"x0 must have {m} entries")
    if not any(x0):
        raise ValueError("x0 must be nonzero")
    hs = harmonic_basis(m, k)
    r2 = sum(c * c for c in x0)
    ux0 = MultiPoly.zero(m)
    for j, c in enumerate(x0):
        if c:
            ux0 = ux0 + MultiPoly.var(m, "u", j + 1).scale(c)
    eb = _harmonic_echelon(m, k)
    cols = []
    for h in hs:
        img = h.scale(r2)
        if k:
            d = _direction_derivative(h, x0)
            # the |u|^2 part of pi_k<u,x0> lies in |u|^2 P_{k-2} and projects to zero
            img = img - fischer_project(ux0 * d, k).scale(Q(4, 2 * k + m - 2))
        coords = eb.coordinates(img.terms)
        if coords is None:
            raise AssertionError("symbol image left H_k")
        cols.append(coords)
    return ExactMatrix.from_columns(cols, list(range(len(hs))))


def symbol_eigenvalues(m: int, k: int, r2) -> List[Tuple[object, int]]:
    """(eigenvalue, multiplicity) pairs: (1 - 4j(2k+m-j-3)/((2k+m-2)(2k+m-4))) |x0|^2 on dim H_{k-j}(R^{m-1})."""
    out = []
    for j in range(k + 1):
        lam = (1 - Q(4 * j * (2 * k + m - j - 3), (2 * k + m - 2) * (2 * k + m - 4))) * mpq(r2)
        out.append((lam, dim_harmonic(m - 1, k - j)))
    return out


@dataclass
class EllipticityReport:
    m: int
    k: int
    x0: Tuple
    determinant: object
    oracle: object

    @property
    def consistent(self) -> bool:
        return self.determinant == self.oracle

    @property
    def elliptic(self) -> bool:
        return self.determinant != 0


def ellipticity_check(m: int, k: int, x0: Optional[Sequence] = None) -> EllipticityReport:
    x0 = tuple(mpq(c) for c in (x0 if x0 is not None else [1] + [0] * (m - 1)))
    d = det(symbol_matrix(m, k, x0))
    oracle = mpq(1)
    for lam, mult in symbol_eigenvalues(m, k, sum(c * c for c in x0)):
        oracle *= lam ** mult
    return EllipticityReport(m, k, x0, d, oracle)


def random_direction(m: int, rng: random.Random, bound: int = 5) -> Tuple:
    while True:
        v = tuple(Q(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(m))
        if any(v):
            return v


# ----------------------------------------------------------------------------- identity suites

def _zero_on(op: Op, dom: Sequence[MultiPoly]) -> Optional[int]:
    for idx, b in enumerate(dom):
        if op(b):
            return idx
    return None


def symmetry_checks(m: int, k: int, l: int, js: Sequence[int] = (1, 2)) -> Dict[str, Optional[int]]:
    """Each conformal-symmetry relation mapped to None (zero on P_l (x) H_k) or a failing basis index."""
    dom = tensor_basis(m, l, k)
    D = higher_spin_laplace(m, k)
    E = euler(m)
    out: Dict[str, Optional[int]] = {}
    for j in js:
        C = special_conformal(m, j)
        xj = MultiPoly.var(m, "x", j).scale(4)
        out[f"C_{j}"] = _zero_on(lambda f: D(C(f)) - C(D(f)) + xj * D(f), dom)
        i = 1 if j != 1 else 2
        L = rotation(m, i, j)
        out[f"L_{i}{j}"] = _zero_on(lambda f: D(L(f)) - L(D(f)), dom)
        dj = DiffOp.partial(m, "x", j)
        out[f"dx_{j}"] = _zero_on(lambda f: D(dj(f)) - dj(D(f)), dom)
    out["euler"] = _zero_on(lambda f: D(E(f)) - E(D(f)) - D(f).scale(2), dom)
    return out


def factorization_check(m: int, k: int, l: int) -> Dict[str, bool]:
    """Lap^{k+1} = A_{2k} D_k = D_k A_{2k} on P_l (x) H_k."""
    dom = tensor_basis(m, l, k)
    D = higher_spin_laplace(m, k)
    A = build_A2k(m, k)
    lap = laplace(m)

    def lap_power(f):
        for _ in range(k + 1):
            f = lap(f)
        return f

    left = right = True
    for b in dom:
        target = lap_power(b)
        left = left and A(D(b)) == target
        right = right and D(A(b)) == target
        if not (left or right):
            break
    return {"A_D": left, "D_A": right}


def degeneration_checks(m: int) -> Dict[str, bool]:
    """D_0 = Lap_x and D_1 = generalised Maxwell operator, coefficientwise.

    Terms with more than k derivatives in u act as zero on H_k-valued functions and
    are dropped before comparing; for k = 1 that is the |u|^2 <d_u,d_x>^2 term.
    """
    return {"k0": higher_spin_laplace(m, 0) == laplace(m),
            "k1": restrict_u_order(higher_spin_laplace(m, 1), 1) == restrict_u_order(maxwell(m), 1)}


def restrict_u_order(op: DiffOp, k: int) -> DiffOp:
    """Drop the terms of u-derivative order above k."""
    m = op.m
    return DiffOp(m, {d: c for d, c in op.terms.items() if sum(d[m:]) <= k})
