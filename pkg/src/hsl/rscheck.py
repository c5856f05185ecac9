"""Rarita-Schwinger operator on spinor-valued polynomials and its relation to D_k.

Functions live in P_l (x) H_k (x) S with S the Dirac spinor space C_n I (n = m for even m).
Clifford-valued operators are sums  sum_B e_B D_B  of constant blades times scalar
differential operators; constant blades commute with scalar operators, so
composition is (e_A D_A)(e_B D_B) = (e_A e_B)(D_A D_B).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .clifford import (
    CliffPoly, CliffordElement, blade_product, e, spinor_algebra_dim, spinor_basis,
)
from .coeffpoly import MultiPoly, Q, rank_of
from .coeffpoly.poly import ContextError
from .diffop import (
    DenominatorError, DiffOp, du_dx, higher_spin_laplace, inverted_laplace, inverted_laplace_exact,
    laplace, mult, norm_sq, u_dx,
)
from .harmonic import (
    BasisSpec, basis, dim_harmonic, harmonic_basis, kernel_basis, monogenic_basis, monomials,
)
from .kernelcheck import kernel_dimension

Blade = int


class CliffordDiffOp:
    """sum_B e_B D_B acting on CliffPoly by f -> sum_B e_B (D_B f), D_B componentwise."""

    __slots__ = ("m", "n", "terms")

    def __init__(self, m: int, n: int, terms: Optional[Dict[Blade, DiffOp]] = None):
        self.m, self.n = m, n
        self.terms = {b: d for b, d in (terms or {}).items() if not d.is_zero()}

    @classmethod
    def scalar(cls, op: DiffOp, n: int) -> "CliffordDiffOp":
        return cls(op.m, n, {0: op})

    @classmethod
    def identity(cls, m: int, n: int) -> "CliffordDiffOp":
        return cls(m, n, {0: DiffOp.identity(m)})

    @classmethod
    def vector(cls, m: int, n: int, parts: Sequence[DiffOp]) -> "CliffordDiffOp":
        """sum_j e_j parts[j-1]."""
        return cls(m, n, {1 << j: p for j, p in enumerate(parts)})

    def _check(self, other: "CliffordDiffOp") -> None:
        if (self.m, self.n) != (other.m, other.n):
            raise ContextError("CliffordDiffOp context mismatch")

    def __add__(self, other: "CliffordDiffOp") -> "CliffordDiffOp":
        self._check(other)
        out = dict(self.terms)
        for b, d in other.terms.items():
            out[b] = out[b] + d if b in out else d
        return CliffordDiffOp(self.m, self.n, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CliffordDiffOp":
        return CliffordDiffOp(self.m, self.n, {b: d.scale(c) for b, d in self.terms.items()})

    def compose(self, other: "CliffordDiffOp") -> "CliffordDiffOp":
        """self after other."""
        self._check(other)
        out: Dict[Blade, DiffOp] = {}
        for a, da in self.terms.items():
            for b, db in other.terms.items():
                s, ab = blade_product(a, b)
                term = da.compose(db).scale(s)
                out[ab] = out[ab] + term if ab in out else term
        return CliffordDiffOp(self.m, self.n, out)

    def __matmul__(self, other):
        return self.compose(other)

    def apply(self, f: CliffPoly) -> CliffPoly:
        if (f.m, f.n) != (self.m, self.n):
            raise ContextError("CliffordDiffOp applied outside its context")
        out = CliffPoly.zero(self.m, self.n)
        for b, d in self.terms.items():
            g = f.map_scalar(d)
            if g:
                out = out + (g.left_mul(CliffordElement(self.n, {b: 1})) if b else g)
        return out

    def __call__(self, f: CliffPoly) -> CliffPoly:
        return self.apply(f)

    def __eq__(self, other):
        return isinstance(other, CliffordDiffOp) and (self.m, self.n) == (other.m, other.n) \
            and self.terms == other.terms


# ----------------------------------------------------------------------------- building blocks

def _n(m: int) -> int:
    return spinor_algebra_dim(m)


def dirac(m: int, block: str = "x") -> CliffordDiffOp:
    return CliffordDiffOp.vector(m, _n(m), [DiffOp.partial(m, block, j) for j in range(1, m + 1)])


def vector_mult(m: int, block: str = "u") -> CliffordDiffOp:
    return CliffordDiffOp.vector(m, _n(m), [mult(MultiPoly.var(m, block, j)) for j in range(1, m + 1)])


def scalar_op(op: DiffOp) -> CliffordDiffOp:
    return CliffordDiffOp.scalar(op, _n(op.m))


def build_rs(m: int, k: int) -> CliffordDiffOp:
    """R_k = (1 + u d_u/(m+2k-2)) d_x."""
    if m + 2 * k - 2 == 0:
        raise DenominatorError(f"m + 2k - 2 vanishes for m={m}, k={k}")
    dx = dirac(m, "x")
    if k == 0:
        return dx
    corr = vector_mult(m, "u").compose(dirac(m, "u")).scale(Q(1, m + 2 * k - 2))
    return dx + corr.compose(dx)


def projection_p1(m: int, k: int) -> CliffordDiffOp:
    """H -> H + u d_u H/(2k+m-2), the M_k part of an H_k (x) S-valued function."""
    c = Q(1, 2 * k + m - 2)
    return CliffordDiffOp.identity(m, _n(m)) + vector_mult(m, "u").compose(dirac(m, "u")).scale(c)


def projection_p0(m: int, k: int) -> CliffordDiffOp:
    """H -> -d_u H/(2k+m-2), so that H = p1 H + u p0 H."""
    return dirac(m, "u").scale(Q(-1, 2 * k + m - 2))


def rs_twistor(m: int, k: int) -> CliffordDiffOp:
    """p1 pi_k <u,d_x> = <u,d_x> + (u d_x - |u|^2 <d_u,d_x>)/(2k+m-2)."""
    c = Q(1, 2 * k + m - 2)
    return (scalar_op(u_dx(m))
            + (vector_mult(m, "u").compose(dirac(m, "x"))
               - scalar_op(mult(norm_sq(m, "u")).compose(du_dx(m)))).scale(c))


# ----------------------------------------------------------------------------- spaces

def spinor_tensor_basis(m: int, l: int, k: int) -> List[CliffPoly]:
    """x^a h_b s_c spanning P_l (x) H_k (x) S."""
    n = _n(m)
    out = []
    for xm in monomials(m, l, 0):
        for h in harmonic_basis(m, k):
            p = xm * h
            for s in spinor_basis(n):
                out.append(CliffPoly.from_product(p, s))
    return out


def monogenic_tensor_basis(m: int, l: int, k: int) -> List[CliffPoly]:
    """x^a M_b spanning P_l (x) M_k."""
    if k < 0 or l < 0:
        return []
    return [M.mul_poly(xm) for xm in monomials(m, l, 0) for M in monogenic_basis(m, k)]


@lru_cache(maxsize=None)
def _rs_kernel(m: int, k: int, l: int) -> Tuple[CliffPoly, ...]:
    if k < 0 or l < 0:
        return ()
    R = build_rs(m, k)
    return tuple(kernel_basis(monogenic_tensor_basis(m, l, k), [R]))


def rs_kernel(m: int, k: int, l: int) -> List[CliffPoly]:
    """Basis of ker_l R_k inside P_l (x) M_k."""
    return list(_rs_kernel(m, k, l))


def simplicial_monogenic_count(m: int, k: int, l: int) -> int:
    """sum over 0 <= i <= k, 0 <= j <= k-i of dim S_{l-i+j, k-i-j} (terms with l-i+j < k-i-j omitted)."""
    total = 0
    for i in range(k + 1):
        for j in range(k - i + 1):
            a, b = l - i + j, k - i - j
            if a >= b >= 0:
                total += len(basis(BasisSpec("Skl", m, a, b)))
    return total


# ----------------------------------------------------------------------------- identities

def _vec(f: CliffPoly) -> dict:
    return f.to_vector()


def _first_failure(lhs: Callable, rhs: Callable, dom: Sequence[CliffPoly]) -> Optional[int]:
    for i, f in enumerate(dom):
        if lhs(f) != rhs(f):
            return i
    return None


@dataclass
class BlockReport:
    m: int
    k: int
    l: int
    results: Dict[str, Optional[int]]   # name -> None (zero difference) or failing basis index
    domain_sizes: Dict[str, int]

    @property
    def ok(self) -> bool:
        return all(v is None for v in self.results.values())


def verify_block_identities(m: int, k: int, l: int) -> BlockReport:
    """(a) D_k p1 = (-R_k + 4/((2k+m-2)(2k+m-4)) u<d_u,d_x>) R_k p1,
    (b) <d_u,d_x> R_k = ((2k+m-4)/(2k+m-2) d_x - 2/(2k+m-2) u<d_u,d_x>) <d_u,d_x> on M_k,
    (c) D_k u p0 = -(u R_{k-1} + 4/(2k+m-2) pi_k<u,d_x>) R_{k-1} p0,
    plus the x-multiplication identity D_k(x f) = x D_k f + 2(d_x - 2/(2k+m-2) u<d_u,d_x>) f on M_k.
    """
    if m <= 4:
        raise ValueError("m > 4 required")
    if k < 1:
        raise ValueError("k >= 1 required for the block identities")
    a, b = 2 * k + m - 2, 2 * k + m - 4
    Dk = scalar_op(higher_spin_laplace(m, k))
    Rk, Rk1 = build_rs(m, k), build_rs(m, k - 1)
    p1, p0 = projection_p1(m, k), projection_p0(m, k)
    uv, dx = vector_mult(m, "u"), dirac(m, "x")
    dd = scalar_op(du_dx(m))
    udd = uv.compose(dd)
    twist = scalar_op(u_dx(m) - mult(norm_sq(m, "u")).compose(du_dx(m)).scale(Q(1, b)))

    full = spinor_tensor_basis(m, l, k)
    mono = monogenic_tensor_basis(m, l, k)
    res: Dict[str, Optional[int]] = {}

    res["a"] = _first_failure(
        lambda f: Dk(p1(f)),
        lambda f: (udd.scale(Q(4, a * b)) - Rk)(Rk(p1(f))), full)
    res["b"] = _first_failure(
        lambda f: dd(Rk(f)),
        lambda f: (dx.scale(Q(b, a)) - udd.scale(Q(2, a)))(dd(f)), mono)
    res["c"] = _first_failure(
        lambda f: Dk(uv(p0(f))),
        lambda f: -(uv.compose(Rk1) + twist.scale(Q(4, a)))(Rk1(p0(f))), full)
    xv = vector_mult(m, "x")
    res["x_mult"] = _first_failure(
        lambda f: Dk(xv(f)),
        lambda f: xv(Dk(f)) + (dx - udd.scale(Q(2, a)))(f).scale(2), mono)
    return BlockReport(m, k, l, res, {"full": len(full), "monogenic": len(mono)})


def projection_identity(m: int, k: int, l: int = 0) -> bool:
    """p1 + u p0 = Id on P_l (x) H_k (x) S, with p1 landing in M_k and p0 in M_{k-1}."""
    p1, p0 = projection_p1(m, k), projection_p0(m, k)
    uv, du = vector_mult(m, "u"), dirac(m, "u")
    for f in spinor_tensor_basis(m, l, k):
        a, b = p1(f), p0(f)
        if a + uv(b) != f or du(a) or du(b):
            return False
    return True


def u_kernel_embedding(m: int, k: int, l: int, samples: int = 5) -> bool:
    """f = u f0 with f0 in ker_l R_{k-1} is killed by D_k."""
    Dk = scalar_op(higher_spin_laplace(m, k))
    uv = vector_mult(m, "u")
    return all(not Dk(uv(f0)) for f0 in rs_kernel(m, k - 1, l)[:samples])


def twistor_maps_kernels(m: int, k: int, l: int) -> bool:
    """p1 pi_k<u,d_x> sends ker_{l-1} R_{k-1} into ker_{l-2} R_k (M_k-valued)."""
    T = rs_twistor(m, k)
    Rk, du = build_rs(m, k), dirac(m, "u")
    for f in rs_kernel(m, k - 1, l - 1):
        g = T(f)
        if Rk(g) or du(g):
            return False
    return True


# ----------------------------------------------------------------------------- decomposition

@dataclass
class RSBlock:
    name: str
    size: int
    image_rank: int
    vectors: List[CliffPoly] = field(repr=False, default_factory=list)


@dataclass
class RSDecompositionReport:
    m: int
    k: int
    l: int
    embedding: str
    blocks: List[RSBlock]
    annihilated: bool
    harmonic_values: bool
    independent: bool
    total: int
    rank: int
    target: int
    witness: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.annihilated and self.harmonic_values and self.independent and self.total == self.target

    def summary(self) -> str:
        parts = ", ".join(f"{b.name}:{b.size}/{b.image_rank}" for b in self.blocks)
        return (f"m={self.m} k={self.k} l={self.l} [{self.embedding}] blocks {parts}; "
                f"annihilated={self.annihilated} independent={self.independent} "
                f"total={self.total} rank={self.rank} target={self.target}"
                + (f"; {self.witness}" if self.witness else ""))


def _last_block_map(m: int, k: int, embedding: str) -> Callable[[CliffPoly], CliffPoly]:
    T = rs_twistor(m, k)
    if embedding == "twistor":
        from .radial import inverted_twistor
        s = inverted_twistor(m, k)
        return lambda f: f.map_scalar(s)
    J = (inverted_laplace if embedding == "printed" else inverted_laplace_exact)(m, k)
    return lambda f: T(f).map_scalar(J)


def rs_kernel_decomposition(m: int, k: int, l: int, embedding: str = "exact") -> RSDecompositionReport:
    """ker_l D_k (x) S = ker_l R_k + x ker_{l-1} R_k + u ker_l R_{k-1} + (J Lap J) p1 pi_k<u,d_x> ker_{l-1} R_{k-1}.

    ``embedding`` picks the last map: "exact" or "printed" inverted Laplacian after the
    twistor, or "twistor" for the componentwise inverted twistor J pi_k<u,d_x> J alone.
    """
    if m <= 4 or m % 2:
        raise ValueError("even m > 4 required")
    if l < 0:
        raise ValueError("l >= 0 required")
    uv, xv = vector_mult(m, "u"), vector_mult(m, "x")
    parts = [("ker_l R_k", rs_kernel(m, k, l), lambda f: f),
             ("x ker_{l-1} R_k", rs_kernel(m, k, l - 1), xv)]
    if k >= 1:
        parts.append(("u ker_l R_{k-1}", rs_kernel(m, k - 1, l), uv))
        parts.append(("JLJ T ker_{l-1} R_{k-1}", rs_kernel(m, k - 1, l - 1),
                      _last_block_map(m, k, embedding)))
    D = higher_spin_laplace(m, k)
    lap_u = laplace(m, "u")
    blocks, all_vecs = [], []
    annihilated = harmonic = True
    witness = None
    for name, src, emb in parts:
        imgs = [emb(f) for f in src]
        for g in imgs:
            if annihilated and any(D(p) for p in g.comps.values()):
                annihilated = False
                witness = f"block {name!r} vector not annihilated by D_{k}"
            if harmonic and any(lap_u(p) for p in g.comps.values()):
                harmonic = False
                witness = witness or f"block {name!r} vector leaves H_k"
        blocks.append(RSBlock(name, len(src), rank_of(_vec(g) for g in imgs), imgs))
        all_vecs.extend(imgs)
    rk = rank_of(_vec(g) for g in all_vecs)
    target = kernel_dimension(m, k, l) * len(spinor_basis(_n(m)))
    independent = rk == len(all_vecs)
    if not independent and witness is None:
        lost = [b.name for b in blocks if b.image_rank < b.size]
        witness = f"rank {rk} < {len(all_vecs)} embedded vectors; rank-deficient blocks {lost}"
    if witness is None and len(all_vecs) != target:
        witness = f"count {len(all_vecs)} differs from dim ker_l D_k * dim S = {target}"
    return RSDecompositionReport(m, k, l, embedding, blocks, annihilated, harmonic, independent,
                                 len(all_vecs), rk, target, witness)


def fischer_refinement_check(m: int, l: int) -> dict:
    """k = 0: ker_l Lap (x) S = ker_l d_x + x ker_{l-1} d_x (monogenic Fischer refinement)."""
    rep = rs_kernel_decomposition(m, 0, l)
    return {"ok": rep.ok, "sizes": [b.size for b in rep.blocks], "target": rep.target}
