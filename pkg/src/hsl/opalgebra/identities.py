"""Catalogue of operator identities checked symbolically in (m, k) and, for spot values,
as exact operator matrices through ``diffop``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..coeffpoly import MultiPoly, bihomogeneous_monomials
from ..diffop import DiffOp
from .derive import OMEGA_LOWERING, SP4_LOWERING, omega_operator, sp4_operator
from .engine import K, M, R, Algebra, Expr, commutator, load_frozen


@lru_cache(maxsize=None)
def sp4_algebra() -> Algebra:
    names, table, _ = load_frozen("sp4_relations.json")
    idx = {n: i for i, n in enumerate(names)}
    return Algebra(names, table, {idx[n]: d for n, d in SP4_LOWERING.items()}, "EU", ("LU",))


@lru_cache(maxsize=None)
def omega_algebra() -> Algebra:
    names, table, _ = load_frozen("omega_relations.json")
    idx = {n: i for i, n in enumerate(names)}
    return Algebra(names, table, {idx[n]: d for n, d in OMEGA_LOWERING.items()}, "EU", ("LU",))


# ----------------------------------------------------------------------------- building blocks

def cleared_laplace(alg: Algebra, shift: int = 0) -> Expr:
    """(2k'+m-2)(2k'+m-4) D_{k'} with k' = k + shift, polynomial in (m, k)."""
    g = alg.gen
    kk = K + shift
    a, b = 2 * kk + M - 2, 2 * kk + M - 4
    return (g("LX") * (a * b) - g("UDX") * g("DD") * (4 * b)
            + g("U2") * g("DD") * g("DD") * 4)


def cleared_laplace_at(alg: Algebra, k: int) -> Expr:
    """(2k+m-2)(2k+m-4) D_k for a concrete k."""
    g = alg.gen
    a, b = 2 * k + M - 2, 2 * k + M - 4
    return (g("LX") * (a * b) - g("UDX") * g("DD") * (4 * b)
            + g("U2") * g("DD") * g("DD") * 4)


def inverted_w(alg: Algebra) -> Expr:
    """J <omega,d_u> J = |u|^2 <omega,d_u> - <u,omega>(2E_u + m - 2)."""
    g = alg.gen
    return g("U2") * g("W") - g("WP") * (g("EU") * 2 + alg.scalar(M - 2))


# ----------------------------------------------------------------------------- catalogue

@dataclass(frozen=True)
class Identity:
    name: str
    label: str
    algebra: Callable[[], Algebra]
    build: Callable[[Algebra], Tuple[Expr, Expr]]
    value_degree: Optional[object]   # None: pure algebra relation; "k": symbolic; int: concrete
    statement: str


def _lemma41(alg):
    g = alg.gen
    lhs = g("DD") * cleared_laplace(alg) * (2 * K + M - 6)
    rhs = cleared_laplace(alg, -1) * g("DD") * (2 * K + M - 6)
    return lhs, rhs


def _a2k_k1(alg):
    g = alg.gen
    A2 = g("LX") * (M - 4) + g("UDX") * g("DD") * 4          # (m-4) A_2
    lhs = A2 * cleared_laplace_at(alg, 1)
    rhs = g("LX") ** 2 * ((M - 4) * M * (M - 2))
    return lhs, rhs


def _a2k_k2(alg):
    g = alg.gen
    A2 = g("LX") * (M - 4) + g("UDX") * g("DD") * 4          # (m-4) A_2
    twist = g("UDX") * M - g("U2") * g("DD")                # m pi_2<u,d_x>
    A4 = g("LX") ** 2 * ((M - 2) * M * (M - 4)) + twist * A2 * g("DD") * 4   # (m-2) m (m-4) A_4
    lhs = A4 * cleared_laplace_at(alg, 2)
    rhs = g("LX") ** 3 * ((M - 2) * M * (M - 4) * (M + 2) * M)
    return lhs, rhs


def _ueasl2(j: int):
    def build(alg):
        J = inverted_w(alg)
        lhs = commutator(alg.gen("W"), J ** j)
        rhs = J ** (j - 1) * (alg.gen("EU") * 2 + alg.scalar(M - 3)) * (-2)
        return lhs, rhs
    return build


def _ueasl2_exact(j: int):
    def build(alg):
        J = inverted_w(alg)
        lhs = commutator(alg.gen("W"), J ** j)
        rhs = J ** (j - 1) * (alg.gen("EU") * 2 + alg.scalar(M + j - 3)) * (-j)
        return lhs, rhs
    return build


CATALOGUE: Dict[str, Identity] = {}


def _register(ident: Identity) -> None:
    CATALOGUE[ident.name] = ident


_register(Identity("lemma41", "dual twistor intertwines D_k and D_{k-1}", sp4_algebra, _lemma41, "k",
                   "(2k+m-6) <d_u,d_x> P_k = (2k+m-6) P_{k-1} <d_u,d_x>, P_k = (2k+m-2)(2k+m-4) D_k"))
_register(Identity("a2k_k1", "A_2 D_1 = Lap^2", sp4_algebra, _a2k_k1, 1,
                   "(m-4) A_2 * m(m-2) D_1 = (m-4) m (m-2) Lap_x^2 on H_1-valued functions"))
_register(Identity("a2k_k2", "A_4 D_2 = Lap^3", sp4_algebra, _a2k_k2, 2,
                   "cleared A_4 D_2 = cleared Lap_x^3 on H_2-valued functions"))
for _j in range(1, 5):
    _register(Identity(f"ueasl2_{_j}", "sl(2) commutator with powers of the inverted derivative",
                       omega_algebra, _ueasl2(_j), None,
                       f"[W, J^{_j}] = -2 J^{_j - 1} (2E_u + m - 3), W = <omega,d_u>, J = J W J"))
    _register(Identity(f"ueasl2_exact_{_j}", "sl(2) commutator with powers of the inverted derivative",
                       omega_algebra, _ueasl2_exact(_j), None,
                       f"[W, J^{_j}] = -{_j} J^{_j - 1} (2E_u + m + {_j} - 3)"))


def identity_names() -> List[str]:
    return list(CATALOGUE)


@dataclass
class IdentityReport:
    check: str
    m: str
    k: str
    lhs: str
    rhs: str
    difference: str

    @property
    def status(self) -> str:
        return "pass" if self.difference == "0" else "fail"

    def as_dict(self) -> dict:
        return {"check": self.check, "m": self.m, "k": self.k, "status": self.status,
                "lhs": self.lhs, "rhs": self.rhs, "difference": self.difference}


def reduced_sides(name: str) -> Tuple[Expr, Expr, Expr]:
    ident = CATALOGUE[name]
    alg = ident.algebra()
    lhs, rhs = ident.build(alg)
    if ident.value_degree is None:
        red = alg.normal_order
    elif ident.value_degree == "k":
        red = lambda e: alg.module_reduce(e)
    else:
        red = lambda e: alg.module_reduce(e, ident.value_degree)
    l, r = red(lhs), red(rhs)
    return l, r, l - r


def verify_module_identity(name: str) -> IdentityReport:
    if name not in CATALOGUE:
        raise KeyError(f"unknown identity {name!r}; known: {', '.join(CATALOGUE)}")
    ident = CATALOGUE[name]
    l, r, d = reduced_sides(name)
    kdesc = "symbolic" if ident.value_degree == "k" else (
        "free" if ident.value_degree is None else str(ident.value_degree))
    return IdentityReport(name, "symbolic", kdesc, l.to_text(), r.to_text(), d.to_text())


# ----------------------------------------------------------------------------- concrete realizations

def realize(e: Expr, m: int, k: Optional[int] = None) -> DiffOp:
    """The operator of an expression at concrete (m, k), generators realized through diffop."""
    alg = e.alg
    op_of = sp4_operator if "X2" in alg.index else omega_operator
    gens = [op_of(n, m) for n in alg.names]
    out = DiffOp.zero(m)
    for w, c in e.terms.items():
        val = c.subs(M, m)
        if k is not None:
            val = val.subs(K, k)
        if val.degree(M) > 0 or val.degree(K) > 0:
            raise ValueError("coefficient still depends on k; pass a concrete k")
        scalar = val.LC if val else 0
        op = DiffOp.identity(m)
        for g in w:
            op = op.compose(gens[g])
        out = out + op.scale(scalar)
    return out


def apply_expr(e: Expr, m: int, k: Optional[int], p: MultiPoly) -> MultiPoly:
    """Apply an expression to p word by word (rightmost generator first), without composing."""
    alg = e.alg
    op_of = sp4_operator if "X2" in alg.index else omega_operator
    gens = [op_of(n, m) for n in alg.names]
    out = MultiPoly.zero(m)
    for w, c in e.terms.items():
        val = c.subs(M, m)
        if k is not None:
            val = val.subs(K, k)
        if val.degree(M) > 0 or val.degree(K) > 0:
            raise ValueError("coefficient still depends on k; pass a concrete k")
        if not val:
            continue
        q = p
        for g in reversed(w):
            q = gens[g](q)
            if not q:
                break
        if q:
            out = out + q.scale(val.LC)
    return out


def matrix_check(name: str, m: int, k: int, l: int) -> bool:
    """The unreduced identity holds on P_l (x) H_k (or on P_k(R^m) in u for the omega identities)."""
    from ..harmonic import tensor_basis

    ident = CATALOGUE[name]
    alg = ident.algebra()
    lhs, rhs = ident.build(alg)
    diff = lhs - rhs
    if ident.value_degree is None:
        dom = [MultiPoly._raw(m, {e: 1}) for e in bihomogeneous_monomials(m, 0, k)]
    else:
        dom = tensor_basis(m, l, k)
    return all(not apply_expr(diff, m, k, b) for b in dom)
