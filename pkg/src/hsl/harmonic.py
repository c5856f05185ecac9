"""Polynomial spaces built as exact nullspaces, Fischer pairing and reproducing kernels.

Space tags (``BasisSpec.tag``):

* ``Hk``   harmonics of degree k in u (no x).
* ``Hkl``  simplicial harmonics of x-degree k and u-degree l, k >= l.
* ``Howe`` Howe harmonics A_{l,k}: x-degree l, u-degree k, killed by Lap_x, Lap_u, <d_u,d_x>.
* ``Mk``   spinor-valued monogenics of degree k in u.
* ``Skl``  spinor-valued simplicial monogenics of x-degree k and u-degree l.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Callable, List, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

from .clifford import (
    CliffPoly, CliffordElement, dirac_apply, idempotent, spinor_algebra_dim, spinor_basis,
)
from .coeffpoly import (
    EchelonBasis, I_UNIT, MultiPoly, Q, bihomogeneous_monomials, conj, inner_ux,
    kernel_of_images, norm_sq, witt_form,
)
from .diffop import du_dx, laplace, x_du

Element = Union[MultiPoly, CliffPoly]

TAGS = ("Hk", "Hkl", "Howe", "Mk", "Skl")


@dataclass(frozen=True)
class BasisSpec:
    tag: str
    m: int
    k: int = 0
    l: int = 0

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown space tag {self.tag!r}")
        if self.m < 3:
            raise ValueError("m >= 3 required")
        if self.tag in ("Hkl", "Skl") and self.k < self.l:
            raise ValueError(f"dominant weight condition k >= l violated: k={self.k}, l={self.l}")
        if min(self.k, self.l) < 0:
            raise ValueError("degrees must be nonnegative")

    @property
    def degrees(self) -> Tuple[int, int]:
        """(x-degree, u-degree) of the elements."""
        if self.tag in ("Hk", "Mk"):
            return (0, self.k)
        if self.tag == "Howe":
            return (self.l, self.k)
        return (self.k, self.l)


def _vector(p: Element) -> dict:
    return p.to_vector() if isinstance(p, CliffPoly) else p.terms


def _combine(domain: Sequence[Element], combo: dict) -> Element:
    out = None
    for i, c in sorted(combo.items()):
        t = domain[i].scale(c)
        out = t if out is None else out + t
    return out


def kernel_basis(domain: Sequence[Element], operators: Sequence[Callable]) -> List[Element]:
    """Basis of the common kernel of ``operators`` restricted to span(domain)."""
    images = []
    for p in domain:
        vec = {}
        for idx, op in enumerate(operators):
            for key, c in _vector(op(p)).items():
                vec[(idx, key)] = c
        images.append(vec)
    kernel, _ = kernel_of_images(images)
    return [_combine(domain, k) for k in kernel]


def monomials(m: int, dx: int, du: int) -> List[MultiPoly]:
    return [MultiPoly._raw(m, {e: mpq(1)}) for e in bihomogeneous_monomials(m, dx, du)]


def spinor_monomials(m: int, dx: int, du: int) -> List[CliffPoly]:
    n = spinor_algebra_dim(m)
    return [CliffPoly.from_product(p, s) for p in monomials(m, dx, du) for s in spinor_basis(n)]


def _scalar(op) -> Callable:
    return lambda f: f.map_scalar(op)


@lru_cache(maxsize=None)
def _basis_cached(spec: BasisSpec) -> Tuple[Element, ...]:
    m, k, l = spec.m, spec.k, spec.l
    dx, du = spec.degrees
    if spec.tag == "Hk":
        return tuple(kernel_basis(monomials(m, 0, k), [laplace(m, "u")]))
    if spec.tag == "Hkl":
        ops = [laplace(m, "x"), laplace(m, "u"), du_dx(m), x_du(m)]
        return tuple(kernel_basis(monomials(m, dx, du), ops))
    if spec.tag == "Howe":
        ops = [laplace(m, "x"), laplace(m, "u"), du_dx(m)]
        return tuple(kernel_basis(monomials(m, dx, du), ops))
    if spec.tag == "Mk":
        return tuple(kernel_basis(spinor_monomials(m, 0, k), [lambda f: dirac_apply("u", f)]))
    # Skl
    ops = [lambda f: dirac_apply("x", f), lambda f: dirac_apply("u", f), _scalar(x_du(m))]
    return tuple(kernel_basis(spinor_monomials(m, dx, du), ops))


def basis(spec: BasisSpec) -> List[Element]:
    return list(_basis_cached(spec))


def harmonic_basis(m: int, k: int) -> List[MultiPoly]:
    return basis(BasisSpec("Hk", m, k))


def simplicial_basis(m: int, k: int, l: int) -> List[MultiPoly]:
    return basis(BasisSpec("Hkl", m, k, l))


def monogenic_basis(m: int, k: int) -> List[CliffPoly]:
    return basis(BasisSpec("Mk", m, k))


def howe_basis(m: int, l: int, k: int) -> List[MultiPoly]:
    return basis(BasisSpec("Howe", m, k, l))


@lru_cache(maxsize=None)
def _tensor_cached(m: int, l: int, k: int) -> Tuple[MultiPoly, ...]:
    return tuple(mono * h for mono in monomials(m, l, 0) for h in harmonic_basis(m, k))


def tensor_basis(m: int, l: int, k: int) -> List[MultiPoly]:
    """Basis x^a h_b of P_l(R^m) (x) H_k."""
    return list(_tensor_cached(m, l, k))


def dim_polynomials(m: int, k: int) -> int:
    return comb(k + m - 1, m - 1) if k >= 0 else 0


def dim_harmonic(m: int, k: int) -> int:
    """dim H_k(R^m) = C(k+m-1, m-1) - C(k+m-3, m-1)."""
    if k < 0:
        return 0
    return dim_polynomials(m, k) - dim_polynomials(m, k - 2)


# ----------------------------------------------------------------------------- Fischer pairing

def _fact(e) -> int:
    out = 1
    for a in e:
        if a > 1:
            out *= factorial(a)
    return out


def fischer_inner(f: MultiPoly, g: MultiPoly):
    """[f, g]_F = conj(f)(d) g evaluated at 0."""
    f._check(g)
    total = mpq(0)
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    for ex in small.terms:
        if ex in big.terms:
            total = total + conj(f.terms[ex]) * g.terms[ex] * _fact(ex)
    return total


@lru_cache(maxsize=None)
def _fischer_echelon(m: int, k: int) -> Tuple[EchelonBasis, int]:
    hs = harmonic_basis(m, k)
    r2 = norm_sq(m, "u")
    traces = [r2 * q for q in monomials(m, 0, k - 2)] if k >= 2 else []
    vecs = [h.terms for h in hs] + [t.terms for t in traces]
    return EchelonBasis(vecs), len(hs)


def fischer_project(p: MultiPoly, k: int) -> MultiPoly:
    """H_k-component of p = h + |u|^2 q (x-coefficients allowed, projected slicewise)."""
    if not p:
        return p
    m = p.m
    if any(du != k for _, du in p.bidegrees()):
        raise ValueError(f"input is not u-homogeneous of degree {k}")
    eb, nh = _fischer_echelon(m, k)
    hs = harmonic_basis(m, k)
    zeros = (0,) * m
    slices: dict = {}
    for ex, c in p.terms.items():
        slices.setdefault(ex[:m], {})[zeros + ex[m:]] = c
    out = MultiPoly.zero(m)
    for xe, terms in slices.items():
        coords = eb.coordinates(terms)
        if coords is None:
            raise AssertionError("Fischer decomposition failed to span")
        h = MultiPoly.zero(m)
        for i, c in coords.items():
            if i < nh:
                h = h + hs[i].scale(c)
        out = out + MultiPoly.monomial(m, xe + zeros) * h
    return out


# ----------------------------------------------------------------------------- highest weights

def highest_weight_vector(kind: str, k: int, l: int, m: int = 6) -> Element:
    """w_{k,l} = (x1 - i x2)^{k-l} ((x1 - i x2)(u3 - i u4) - (x3 - i x4)(u1 - i u2))^l, times I if monogenic."""
    if k < l:
        raise ValueError("k >= l required")
    if l >= 1 and m < 4:
        raise ValueError("need m >= 4 for l >= 1")
    z1 = witt_form(m, "x")
    w1 = witt_form(m, "u")
    z2 = MultiPoly.var(m, "x", 3) - MultiPoly.var(m, "x", 4).scale(I_UNIT) if m >= 4 else None
    w2 = MultiPoly.var(m, "u", 3) - MultiPoly.var(m, "u", 4).scale(I_UNIT) if m >= 4 else None
    w = z1 ** (k - l)
    if l:
        w = w * (z1 * w2 - z2 * w1) ** l
    if kind == "harmonic":
        return w
    if kind == "monogenic":
        return CliffPoly.from_product(w, idempotent(spinor_algebra_dim(m)))
    raise ValueError(f"unknown kind {kind!r}")


# ----------------------------------------------------------------------------- reproducing kernel

def gegenbauer_coefficients(k: int, lam) -> List:
    """Coefficients (by power of t) of C_k^lam(t) from the three-term recurrence."""
    lam = mpq(lam)
    prev, cur = [mpq(1)], [mpq(0), 2 * lam]
    if k == 0:
        return prev
    for n in range(2, k + 1):
        nxt = [mpq(0)] * (n + 1)
        for i, c in enumerate(cur):
            nxt[i + 1] += 2 * (n + lam - 1) * c
        for i, c in enumerate(prev):
            nxt[i] -= (n + 2 * lam - 2) * c
        prev, cur = cur, [c / n for c in nxt]
    return cur


def gegenbauer_kernel(m: int, k: int) -> MultiPoly:
    """sum_j c_j <u,v>^j (|u|^2 |v|^2)^((k-j)/2) from C_k^(m/2-1); v sits in the x-slots."""
    cs = gegenbauer_coefficients(k, Q(m - 2, 2))
    uv = inner_ux(m)
    rr = norm_sq(m, "u") * norm_sq(m, "x")
    out = MultiPoly.zero(m)
    for j, c in enumerate(cs):
        if c != 0:
            out = out + (uv ** j * rr ** ((k - j) // 2)).scale(c)
    return out.relabel(("v", "u"))


def u_to_v(h: MultiPoly) -> MultiPoly:
    """Move a polynomial in u to the same polynomial in v (the x-slots)."""
    m = h.m
    return MultiPoly._raw(m, {ex[m:] + ex[:m]: c for ex, c in h.terms.items()}, ("v", "u"))


def fischer_pair_parametric(K: MultiPoly, H: MultiPoly) -> MultiPoly:
    """[K(., v), H]_F as a polynomial in v (v real, so only u-coefficients are conjugated)."""
    m = K.m
    out: dict = {}
    zeros = (0,) * m
    for ex, c in K.terms.items():
        eu = ex[m:]
        h = H.terms.get(zeros + eu)
        if h is None:
            continue
        key = ex[:m] + zeros
        out[key] = out.get(key, 0) + conj(c) * h * _fact(eu)
    return MultiPoly(m, out, ("v", "u"))


@dataclass
class ReproducingKernel:
    m: int
    k: int
    kernel: MultiPoly
    gegenbauer: MultiPoly
    ratio: object  # gegenbauer = ratio * kernel
    reproduces: bool = field(default=False)


def reproducing_kernel(m: int, k: int) -> ReproducingKernel:
    """Solve the reproducing system on H_k and compare with the Gegenbauer expression."""
    hs = harmonic_basis(m, k)
    n = len(hs)
    gram = [[fischer_inner(a, b) for b in hs] for a in hs]
    # G^{-1} via solving G X = Id column by column
    from .coeffpoly import ExactMatrix, solve
    G = ExactMatrix(gram)
    inv_cols = [solve(G, [mpq(1) if i == j else mpq(0) for i in range(n)]) for j in range(n)]
    K = MultiPoly.zero(m)
    hv = [u_to_v(h) for h in hs]
    for a in range(n):
        for b in range(n):
            c = inv_cols[b][a]
            if c != 0:
                K = K + (hs[a] * hv[b]).scale(c)
    K = K.relabel(("v", "u"))
    reproduces = all(fischer_pair_parametric(K, h) == u_to_v(h) for h in hs)
    Z = gegenbauer_kernel(m, k)
    ratio = _proportionality(Z, K)
    return ReproducingKernel(m, k, K, Z, ratio, reproduces)


def _proportionality(a: MultiPoly, b: MultiPoly):
    """c with a = c*b, or None."""
    if not b:
        return None
    ex = next(iter(b.terms))
    c = a.terms.get(ex, mpq(0)) / b.terms[ex]
    return c if a == b.scale(c) else None


def howe_decomposition_check(m: int, l: int, k: int) -> dict:
    """Compare A_{l,k} with the images <u,d_x>^j H_{l+j,k-j}."""
    from .diffop import u_dx
    howe = howe_basis(m, l, k)
    t = u_dx(m)
    images = []
    sizes = []
    for j in range(k + 1):
        block = simplicial_basis(m, l + j, k - j) if l + j >= k - j else []
        sizes.append(len(block))
        for h in block:
            img = h
            for _ in range(j):
                img = t(img)
            images.append(img)
    eb = EchelonBasis([p.terms for p in images])
    howe_eb = EchelonBasis([p.terms for p in howe])
    inside = all(howe_eb.contains(p.terms) for p in images)
    return {
        "dim_howe": len(howe),
        "block_sizes": sizes,
        "sum_blocks": sum(sizes),
        "images_rank": eb.rank,
        "images_independent": eb.independent,
        "images_inside": inside,
        "spans": eb.rank == len(howe) and inside,
    }
