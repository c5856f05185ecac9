"""Scalar differential operators with polynomial coefficients in (x, u).

A DiffOp is kept in normal form: a map from derivative exponent vectors
(length 2m, x-derivatives first) to MultiPoly coefficients standing to the
left of the derivatives.
"""
from __future__ import annotations

from itertools import product
from math import comb
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .coeffpoly import MultiPoly, Q, inner_ux, norm_sq, u as uvar, x as xvar
from .coeffpoly.poly import ContextError, _add_into

DExp = Tuple[int, ...]


class DenominatorError(ValueError):
    """A parameter choice makes one of the operator's denominators vanish."""


class DiffOp:
    __slots__ = ("m", "terms", "name", "_plan", "_cache")

    def __init__(self, m: int, terms: Optional[Dict[DExp, MultiPoly]] = None, name: str = ""):
        self.m = m
        self.name = name
        clean = {}
        for d, c in (terms or {}).items():
            if len(d) != 2 * m:
                raise ContextError("derivative exponent does not fit m")
            if not isinstance(c, MultiPoly):
                c = MultiPoly.const(m, c)
            elif c.m != m:
                raise ContextError("coefficient context mismatch")
            if c:
                clean[tuple(d)] = c
        self.terms = clean
        self._plan = None
        self._cache: dict = {}

    # constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, m: int) -> "DiffOp":
        return cls(m)

    @classmethod
    def identity(cls, m: int) -> "DiffOp":
        return cls(m, {(0,) * (2 * m): MultiPoly.const(m, 1)}, "1")

    @classmethod
    def multiplication(cls, p: MultiPoly) -> "DiffOp":
        return cls(p.m, {(0,) * (2 * p.m): p})

    @classmethod
    def partial(cls, m: int, block: str, j: int, order: int = 1) -> "DiffOp":
        d = [0] * (2 * m)
        d[(j - 1) if block == "x" else (m + j - 1)] = order
        return cls(m, {tuple(d): MultiPoly.const(m, 1)})

    # arithmetic -----------------------------------------------------------------
    def _check(self, other: "DiffOp") -> None:
        if self.m != other.m:
            raise ContextError(f"context mismatch: m={self.m} vs m={other.m}")

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out[d] + c if d in out else c
        return DiffOp(self.m, out)

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.m, {d: -c for d, c in self.terms.items()})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        return DiffOp(self.m, {d: p.scale(c) for d, p in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, DiffOp):
            return self.compose(other)
        if isinstance(other, MultiPoly):
            return self.compose(DiffOp.multiplication(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, MultiPoly):
            return DiffOp.multiplication(other).compose(self)
        return self.scale(other)

    def __matmul__(self, other: "DiffOp") -> "DiffOp":
        return self.compose(other)

    def compose(self, other: "DiffOp") -> "DiffOp":
        """self after other, renormalized with the product rule."""
        self._check(other)
        m = self.m
        out: Dict[DExp, MultiPoly] = {}
        for alpha, a in self.terms.items():
            nz = [i for i, v in enumerate(alpha) if v]
            ranges = [range(alpha[i] + 1) for i in nz]
            for beta, b in other.terms.items():
                for gam in product(*ranges):
                    w = 1
                    db = b
                    for i, g in zip(nz, gam):
                        if g:
                            w *= comb(alpha[i], g)
                            db = db.diff(i, g)
                            if not db:
                                break
                    if not db:
                        continue
                    d = list(beta)
                    for i, g in zip(nz, gam):
                        d[i] += alpha[i] - g
                    key = tuple(d)
                    term = (a * db).scale(w)
                    out[key] = out[key] + term if key in out else term
        return DiffOp(m, out)

    def __eq__(self, other):
        return isinstance(other, DiffOp) and self.m == other.m and self.terms == other.terms

    def __hash__(self):
        return hash((self.m, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def order(self) -> int:
        return max((sum(d) for d in self.terms), default=0)

    # application ----------------------------------------------------------------
    def _build_plan(self):
        plan = []
        for d, c in self.terms.items():
            nz = tuple((i, v) for i, v in enumerate(d) if v)
            plan.append((nz, list(c.terms.items())))
        self._plan = plan

    def _apply_monomial(self, e: Tuple[int, ...]) -> dict:
        img = self._cache.get(e)
        if img is not None:
            return img
        if self._plan is None:
            self._build_plan()
        out: dict = {}
        for nz, coefs in self._plan:
            f = 1
            base = list(e)
            ok = True
            for i, v in nz:
                a = base[i]
                if a < v:
                    ok = False
                    break
                for t in range(v):
                    f *= a - t
                base[i] = a - v
            if not ok:
                continue
            for ce, cc in coefs:
                key = tuple([p + q for p, q in zip(base, ce)])
                _add_into(out, key, cc * f)
        self._cache[e] = out
        return out

    def apply(self, p: MultiPoly) -> MultiPoly:
        if p.m != self.m:
            raise ContextError(f"context mismatch: operator m={self.m}, polynomial m={p.m}")
        out: dict = {}
        for e, c in p.terms.items():
            for k, v in self._apply_monomial(e).items():
                _add_into(out, k, c * v)
        return MultiPoly._raw(self.m, out, p.labels)

    def __call__(self, p: MultiPoly) -> MultiPoly:
        return self.apply(p)

    def coefficient_text(self) -> str:
        """Normal form listing, one derivative monomial per line."""
        lines = []
        m = self.m
        for d in sorted(self.terms, key=lambda t: (sum(t), t), reverse=True):
            ds = " ".join(f"d{'x' if i < m else 'u'}{(i % m) + 1}^{v}" for i, v in enumerate(d) if v)
            lines.append(f"({self.terms[d].to_text()}) {ds or '1'}")
        return "\n".join(lines) or "0"

    def __repr__(self):
        return f"DiffOp(m={self.m}, name={self.name!r}, terms={len(self.terms)})"


def commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return a.compose(b) - b.compose(a)


def apply(D: DiffOp, p: MultiPoly) -> MultiPoly:
    return D.apply(p)


# ----------------------------------------------------------------------------- building blocks

def _dexp(m: int, pairs: Iterable[Tuple[int, int]]) -> DExp:
    d = [0] * (2 * m)
    for i, v in pairs:
        d[i] += v
    return tuple(d)


def laplace(m: int, block: str = "x") -> DiffOp:
    off = 0 if block == "x" else m
    return DiffOp(m, {_dexp(m, [(off + j, 2)]): MultiPoly.const(m, 1) for j in range(m)}, f"lap_{block}")


def euler(m: int, block: str = "x") -> DiffOp:
    off = 0 if block == "x" else m
    return DiffOp(m, {_dexp(m, [(off + j, 1)]): MultiPoly.var(m, block, j + 1) for j in range(m)},
                  f"euler_{block}")


def u_dx(m: int) -> DiffOp:
    """<u, d_x>."""
    return DiffOp(m, {_dexp(m, [(j, 1)]): uvar(m, j + 1) for j in range(m)}, "u_dx")


def x_du(m: int) -> DiffOp:
    """<x, d_u>."""
    return DiffOp(m, {_dexp(m, [(m + j, 1)]): xvar(m, j + 1) for j in range(m)}, "x_du")


def du_dx(m: int) -> DiffOp:
    """<d_u, d_x>."""
    return DiffOp(m, {_dexp(m, [(j, 1), (m + j, 1)]): MultiPoly.const(m, 1) for j in range(m)}, "du_dx")


def mult(p: MultiPoly) -> DiffOp:
    return DiffOp.multiplication(p)


def rotation(m: int, i: int, j: int) -> DiffOp:
    """L^x_ij + L^u_ij with L_ij = x_i d_{x_j} - x_j d_{x_i}."""
    terms = {
        _dexp(m, [(j - 1, 1)]): xvar(m, i),
        _dexp(m, [(i - 1, 1)]): -xvar(m, j),
        _dexp(m, [(m + j - 1, 1)]): uvar(m, i),
        _dexp(m, [(m + i - 1, 1)]): -uvar(m, j),
    }
    out = DiffOp(m, {})
    for d, c in terms.items():
        out = out + DiffOp(m, {d: c})
    out.name = f"L_{i}{j}"
    return out


def _denominators(m: int, k: int, *values: int) -> None:
    for v in values:
        if v == 0:
            raise DenominatorError(f"denominator vanishes for m={m}, k={k}")


def twistor(m: int, k: int) -> DiffOp:
    """pi_k <u, d_x> = <u,d_x> - |u|^2/(2k+m-4) <d_u,d_x>."""
    _denominators(m, k, 2 * k + m - 4)
    return u_dx(m) - mult(norm_sq(m, "u")).compose(du_dx(m)).scale(Q(1, 2 * k + m - 4))


def pi_ux(m: int, k: int) -> DiffOp:
    """pi_k <u, x> = <u,x> - |u|^2/(2k+m-4) <x,d_u>."""
    _denominators(m, k, 2 * k + m - 4)
    return mult(inner_ux(m)) - mult(norm_sq(m, "u")).compose(x_du(m)).scale(Q(1, 2 * k + m - 4))


def higher_spin_laplace(m: int, k: int) -> DiffOp:
    """D_k = Lap_x - 4/(2k+m-2) pi_k<u,d_x> <d_u,d_x>."""
    if k == 0:
        return laplace(m)
    _denominators(m, k, 2 * k + m - 2, 2 * k + m - 4)
    op = laplace(m) - twistor(m, k).compose(du_dx(m)).scale(Q(4, 2 * k + m - 2))
    op.name = f"D_{k}"
    return op


def special_conformal(m: int, j: int) -> DiffOp:
    """C_j = 2<u,x> d_{u_j} - 2u_j <x,d_u> + |x|^2 d_{x_j} - x_j (2E_x + m - 2)."""
    ux, r2 = inner_ux(m), norm_sq(m)
    op = (mult(ux.scale(2)).compose(DiffOp.partial(m, "u", j))
          - mult(uvar(m, j).scale(2)).compose(x_du(m))
          + mult(r2).compose(DiffOp.partial(m, "x", j))
          - mult(xvar(m, j)).compose(euler(m).scale(2) + DiffOp.identity(m).scale(m - 2)))
    op.name = f"C_{j}"
    return op


def inverted_laplace(m: int, k: int) -> DiffOp:
    """J_R Lap_x J_R on H_k-valued functions, in the closed form with pi_k-terms."""
    _denominators(m, k, 2 * k + m - 4)
    r2 = norm_sq(m)
    xd, dd = x_du(m), du_dx(m)
    op = (mult(r2 * r2).compose(laplace(m))
          + pi_ux(m, k).compose(xd).scale(4 * (2 * k + m - 4))
          + mult(r2.scale(4)).compose(pi_ux(m, k).compose(dd) - twistor(m, k).compose(xd)))
    op.name = f"JLJ_{k}"
    return op


def inverted_laplace_exact(m: int, k: int) -> DiffOp:
    """J_R Lap_x J_R with the pi_k<u,x><x,d_u> term entering with a minus sign.

    This is the operator that harmonic inversion actually produces; it equals
    sum_j C_j C_j and differs from ``inverted_laplace`` by 8(2k+m-4) pi_k<u,x><x,d_u>.
    """
    _denominators(m, k, 2 * k + m - 4)
    r2 = norm_sq(m)
    xd, dd = x_du(m), du_dx(m)
    op = (mult(r2 * r2).compose(laplace(m))
          - pi_ux(m, k).compose(xd).scale(4 * (2 * k + m - 4))
          + mult(r2.scale(4)).compose(pi_ux(m, k).compose(dd) - twistor(m, k).compose(xd)))
    op.name = f"JLJx_{k}"
    return op


def inverted_twistor_numerator(m: int, k: int) -> DiffOp:
    """|x|^2 J_R pi_k<u,d_x> J_R, polynomial in x.

    Conjugation sends u_j to (xux)_j/|x|^2, d_{u_j} to the reflected derivative and
    d_{x_j} to C_j; the factor |x|^2 clears the single denominator.
    """
    _denominators(m, k, 2 * k + m - 4)
    r2, ux = norm_sq(m), inner_ux(m)
    xd = x_du(m)
    u_part = DiffOp.zero(m)
    du_part = DiffOp.zero(m)
    for j in range(1, m + 1):
        C = special_conformal(m, j)
        xj = xvar(m, j)
        u_part = u_part + mult(r2 * uvar(m, j) - (ux * xj).scale(2)).compose(C)
        du_part = du_part + (mult(r2).compose(DiffOp.partial(m, "u", j))
                             - mult(xj.scale(2)).compose(xd)).compose(C)
    op = u_part - mult(norm_sq(m, "u")).compose(du_part).scale(Q(1, 2 * k + m - 4))
    op.name = f"JTJ_{k}"
    return op


def conformal_square_sum(m: int) -> DiffOp:
    """sum_j C_j C_j, the inverted Laplacian assembled from the special conformal symmetries."""
    out = DiffOp.zero(m)
    for j in range(1, m + 1):
        c = special_conformal(m, j)
        out = out + c.compose(c)
    out.name = "sumCC"
    return out


def build_A2(m: int) -> DiffOp:
    if m <= 4:
        raise DenominatorError("A_2 needs m > 4")
    return laplace(m) + u_dx(m).compose(du_dx(m)).scale(Q(4, m - 4))


def build_A2k(m: int, k: int) -> DiffOp:
    """A_{2k} = Lap^k + 4/(2k+m-6) pi_k<u,d_x> A_{2k-2} <d_u,d_x>, with A_2 as base case."""
    if m <= 4:
        raise DenominatorError("A_2k needs m > 4")
    if k < 1:
        raise ValueError("k >= 1 required")
    if k == 1:
        op = build_A2(m)
    else:
        lap_k = laplace(m)
        for _ in range(k - 1):
            lap_k = lap_k.compose(laplace(m))
        op = lap_k + twistor(m, k).compose(build_A2k(m, k - 1)).compose(du_dx(m)).scale(
            Q(4, 2 * k + m - 6))
    op.name = f"A_{2 * k}"
    return op


def maxwell(m: int) -> DiffOp:
    """Lap_x - (4/m) <u,d_x><d_u,d_x>."""
    return laplace(m) - u_dx(m).compose(du_dx(m)).scale(Q(4, m))


OPERATOR_NAMES = (
    "lap_x", "lap_u", "u_dx", "x_du", "du_dx", "euler_x", "euler_u", "x2", "u2", "ux",
    "dx", "du", "xj", "uj", "L", "D", "twistor", "pi_ux", "C", "JLJ", "JLJx", "A2k", "maxwell",
)


def build_named(name: str, m: int, k: int = 0, i: int = 1, j: int = 2) -> DiffOp:
    """Named operator.  ``k`` is the value degree; ``i``, ``j`` are coordinate indices."""
    if m < 3:
        raise ValueError("m >= 3 required")
    table: Dict[str, Callable[[], DiffOp]] = {
        "lap_x": lambda: laplace(m, "x"),
        "lap_u": lambda: laplace(m, "u"),
        "u_dx": lambda: u_dx(m),
        "x_du": lambda: x_du(m),
        "du_dx": lambda: du_dx(m),
        "euler_x": lambda: euler(m, "x"),
        "euler_u": lambda: euler(m, "u"),
        "x2": lambda: mult(norm_sq(m, "x")),
        "u2": lambda: mult(norm_sq(m, "u")),
        "ux": lambda: mult(inner_ux(m)),
        "dx": lambda: DiffOp.partial(m, "x", j),
        "du": lambda: DiffOp.partial(m, "u", j),
        "xj": lambda: mult(xvar(m, j)),
        "uj": lambda: mult(uvar(m, j)),
        "L": lambda: rotation(m, i, j),
        "D": lambda: higher_spin_laplace(m, k),
        "twistor": lambda: twistor(m, k),
        "pi_ux": lambda: pi_ux(m, k),
        "C": lambda: special_conformal(m, j),
        "JLJ": lambda: inverted_laplace(m, k),
        "JLJx": lambda: inverted_laplace_exact(m, k),
        "A2k": lambda: build_A2k(m, k),
        "maxwell": lambda: maxwell(m),
    }
    if name not in table:
        raise KeyError(f"unknown operator {name!r}; known: {', '.join(OPERATOR_NAMES)}")
    op = table[name]()
    op.name = op.name or name
    return op


# ----------------------------------------------------------------------------- checks on bases

OpLike = Callable[[MultiPoly], MultiPoly]


def first_nonzero(op: OpLike, basis: Sequence[MultiPoly]) -> Optional[Tuple[int, MultiPoly]]:
    """Index and image of the first basis element not annihilated by ``op``."""
    for idx, b in enumerate(basis):
        img = op(b)
        if img:
            return idx, img
    return None


def annihilates(op: OpLike, basis: Sequence[MultiPoly]) -> bool:
    return first_nonzero(op, basis) is None


def difference(*pairs: Tuple[object, OpLike]) -> OpLike:
    """Linear combination sum c_i * op_i as a callable."""
    def run(p: MultiPoly) -> MultiPoly:
        out = MultiPoly.zero(p.m)
        for c, op in pairs:
            out = out + op(p).scale(c)
        return out
    return run


def chain(*ops: OpLike) -> OpLike:
    """Composition ops[0] after ops[1] after ... (rightmost acts first)."""
    def run(p: MultiPoly) -> MultiPoly:
        for op in reversed(ops):
            p = op(p)
        return p
    return run
