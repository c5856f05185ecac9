"""Complex Clifford algebra with e_a e_b + e_b e_a = -2 delta_ab, Witt basis, spinors.

Blades are bitmasks over generators e_1..e_n (bit a-1 for e_a).  Spinor-valued
polynomials are ``CliffPoly`` values: a map blade -> MultiPoly in (x, u) with
polynomial dimension m and algebra dimension n >= m (n = m + 1 for odd m).
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from gmpy2 import mpq

from .coeffpoly import I_UNIT, MultiPoly, Q
from .coeffpoly.poly import ContextError, _add_into

Blade = int


@lru_cache(maxsize=None)
def blade_product(a: Blade, b: Blade) -> Tuple[int, Blade]:
    """(sign, blade) with e_A e_B = sign * e_{A xor B}."""
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        j = low.bit_length() - 1
        swaps += bin(a >> (j + 1)).count("1")
        bb ^= low
    swaps += bin(a & b).count("1")  # each e_a e_a = -1
    return (-1 if swaps & 1 else 1), a ^ b


def blade_name(b: Blade) -> str:
    idx = [str(i + 1) for i in range(b.bit_length()) if b >> i & 1]
    return "e" + "".join(idx) if idx else "1"


class CliffordElement:
    __slots__ = ("n", "blades")

    def __init__(self, n: int, blades: Optional[Dict[Blade, object]] = None):
        self.n = n
        self.blades = {b: c for b, c in (blades or {}).items() if c != 0}
        for b in self.blades:
            if b >> n:
                raise ContextError(f"blade {blade_name(b)} outside C_{n}")

    @classmethod
    def scalar(cls, n: int, c=1) -> "CliffordElement":
        return cls(n, {0: mpq(c) if not hasattr(c, "im") else c})

    @classmethod
    def generator(cls, n: int, a: int) -> "CliffordElement":
        if not 1 <= a <= n:
            raise ContextError(f"generator e_{a} outside C_{n}")
        return cls(n, {1 << (a - 1): mpq(1)})

    def _check(self, other: "CliffordElement") -> None:
        if self.n != other.n:
            raise ContextError(f"context mismatch: C_{self.n} vs C_{other.n}")

    def __add__(self, other: "CliffordElement") -> "CliffordElement":
        self._check(other)
        out = dict(self.blades)
        for b, c in other.blades.items():
            _add_into(out, b, c)
        return CliffordElement(self.n, out)

    def __neg__(self):
        return CliffordElement(self.n, {b: -c for b, c in self.blades.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CliffordElement":
        return CliffordElement(self.n, {b: v * c for b, v in self.blades.items()})

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for a, ca in self.blades.items():
            for b, cb in other.blades.items():
                s, ab = blade_product(a, b)
                _add_into(out, ab, ca * cb * s)
        return CliffordElement(self.n, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if isinstance(other, CliffordElement):
            return self.n == other.n and self.blades == other.blades
        if other == 0:
            return not self.blades
        return NotImplemented

    def __hash__(self):
        return hash((self.n, frozenset(self.blades.items())))

    def is_zero(self) -> bool:
        return not self.blades

    def __repr__(self):
        if not self.blades:
            return "0"
        return " + ".join(f"({c}){blade_name(b)}" for b, c in sorted(self.blades.items()))


def clifford_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    return a * b


def e(n: int, a: int) -> CliffordElement:
    return CliffordElement.generator(n, a)


def witt(n: int, j: int) -> CliffordElement:
    """f_j = (e_{2j-1} - i e_{2j}) / 2."""
    return (e(n, 2 * j - 1) - e(n, 2 * j).scale(I_UNIT)).scale(Q(1, 2))


def witt_dagger(n: int, j: int) -> CliffordElement:
    """f_j^dagger = -(e_{2j-1} + i e_{2j}) / 2."""
    return (e(n, 2 * j - 1) + e(n, 2 * j).scale(I_UNIT)).scale(Q(-1, 2))


@lru_cache(maxsize=None)
def idempotent(n: int) -> CliffordElement:
    """I = prod_j f_j f_j^dagger (n even)."""
    if n % 2:
        raise ValueError("the primitive idempotent is built for even dimension only")
    out = CliffordElement.scalar(n)
    for j in range(1, n // 2 + 1):
        out = out * witt(n, j) * witt_dagger(n, j)
    return out


def spinor_algebra_dim(m: int) -> int:
    """Dimension of the Clifford algebra hosting Dirac spinors for R^m."""
    return m if m % 2 == 0 else m + 1


@lru_cache(maxsize=None)
def spinor_basis(n: int) -> Tuple[CliffordElement, ...]:
    """Basis f^dagger_A I of the spinor space C_n I, A running over subsets of {1..n/2}."""
    half = n // 2
    I = idempotent(n)
    out = []
    for mask in range(1 << half):
        s = CliffordElement.scalar(n)
        for j in range(half):
            if mask >> j & 1:
                s = s * witt_dagger(n, j + 1)
        out.append(s * I)
    return tuple(out)


# ----------------------------------------------------------------------------- spinor-valued polynomials

class CliffPoly:
    """Clifford-valued polynomial: blade -> MultiPoly.  ``m`` is the polynomial dimension."""

    __slots__ = ("m", "n", "comps")

    def __init__(self, m: int, n: int, comps: Optional[Dict[Blade, MultiPoly]] = None):
        self.m, self.n = m, n
        self.comps = {b: p for b, p in (comps or {}).items() if p}

    @classmethod
    def from_product(cls, p: MultiPoly, c: CliffordElement) -> "CliffPoly":
        return cls(p.m, c.n, {b: p.scale(v) for b, v in c.blades.items()})

    @classmethod
    def zero(cls, m: int, n: int) -> "CliffPoly":
        return cls(m, n)

    def _check(self, other: "CliffPoly") -> None:
        if (self.m, self.n) != (other.m, other.n):
            raise ContextError("CliffPoly context mismatch")

    def __add__(self, other: "CliffPoly") -> "CliffPoly":
        self._check(other)
        out = dict(self.comps)
        for b, p in other.comps.items():
            out[b] = out[b] + p if b in out else p
        return CliffPoly(self.m, self.n, out)

    def __neg__(self):
        return CliffPoly(self.m, self.n, {b: -p for b, p in self.comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "CliffPoly":
        return CliffPoly(self.m, self.n, {b: p.scale(c) for b, p in self.comps.items()})

    def mul_poly(self, q: MultiPoly) -> "CliffPoly":
        return CliffPoly(self.m, self.n, {b: q * p for b, p in self.comps.items()})

    def left_mul(self, c: CliffordElement) -> "CliffPoly":
        out: Dict[Blade, MultiPoly] = {}
        for a, ca in c.blades.items():
            for b, p in self.comps.items():
                s, ab = blade_product(a, b)
                term = p.scale(ca * s)
                out[ab] = out[ab] + term if ab in out else term
        return CliffPoly(self.m, self.n, out)

    def right_mul(self, c: CliffordElement) -> "CliffPoly":
        out: Dict[Blade, MultiPoly] = {}
        for b, p in self.comps.items():
            for a, ca in c.blades.items():
                s, ba = blade_product(b, a)
                term = p.scale(ca * s)
                out[ba] = out[ba] + term if ba in out else term
        return CliffPoly(self.m, self.n, out)

    def map_scalar(self, op) -> "CliffPoly":
        """Apply a scalar operator (callable on MultiPoly) componentwise."""
        return CliffPoly(self.m, self.n, {b: op(p) for b, p in self.comps.items()})

    def vector_mul(self, block: str) -> "CliffPoly":
        """Left multiplication by x = sum x_j e_j (block 'x') or by u."""
        out = CliffPoly.zero(self.m, self.n)
        for j in range(1, self.m + 1):
            out = out + self.left_mul(e(self.n, j)).mul_poly(MultiPoly.var(self.m, block, j))
        return out

    def is_zero(self) -> bool:
        return not self.comps

    def __bool__(self):
        return bool(self.comps)

    def __eq__(self, other):
        if isinstance(other, CliffPoly):
            return (self.m, self.n) == (other.m, other.n) and self.comps == other.comps
        if other == 0:
            return not self.comps
        return NotImplemented

    def to_vector(self) -> dict:
        return {(b, ex): c for b, p in self.comps.items() for ex, c in p.terms.items()}

    @classmethod
    def from_vector(cls, m: int, n: int, vec: dict) -> "CliffPoly":
        comps: Dict[Blade, dict] = {}
        for (b, ex), c in vec.items():
            if c != 0:
                comps.setdefault(b, {})[ex] = c
        return cls(m, n, {b: MultiPoly(m, t) for b, t in comps.items()})

    def bidegrees(self) -> set:
        out = set()
        for p in self.comps.values():
            out |= p.bidegrees()
        return out

    def bidegree(self) -> Tuple[int, int]:
        bd = self.bidegrees()
        if len(bd) != 1:
            raise ValueError(f"not bihomogeneous: {sorted(bd)}")
        return next(iter(bd))

    def is_spinor_valued(self) -> bool:
        return self.right_mul(idempotent(self.n)) == self

    def to_text(self) -> str:
        if not self.comps:
            return "0"
        return " ; ".join(f"{blade_name(b)}: {self.comps[b].to_text()}" for b in sorted(self.comps))

    def __repr__(self):
        return f"CliffPoly(m={self.m}, n={self.n}, {self.to_text()})"


SpinorPoly = CliffPoly


def dirac_apply(block: str, f: CliffPoly) -> CliffPoly:
    """sum_j e_j d_{block_j} f with left multiplication."""
    m = f.m
    off = 0 if block == "x" else m
    out = CliffPoly.zero(m, f.n)
    for j in range(m):
        d = CliffPoly(m, f.n, {b: p.diff(off + j) for b, p in f.comps.items()})
        if d:
            out = out + d.left_mul(e(f.n, j + 1))
    return out


def monogenic_refine(H: CliffPoly, k: int) -> Tuple[CliffPoly, CliffPoly]:
    """Split a u-harmonic degree-k H as M_k + u M_{k-1} with both parts monogenic in u."""
    from .diffop import laplace

    lap = laplace(H.m, "u")
    if any(lap(p) for p in H.comps.values()):
        raise ValueError("input is not harmonic in u")
    for p in H.comps.values():
        if any(du != k for _, du in p.bidegrees()):
            raise ValueError(f"input is not u-homogeneous of degree {k}")
    c = Q(1, 2 * k + H.m - 2)
    dH = dirac_apply("u", H)
    lower = dH.scale(-c)
    top = H + dH.vector_mul("u").scale(c)
    return top, lower


def spinor_tensor(p: MultiPoly, s: CliffordElement) -> CliffPoly:
    return CliffPoly.from_product(p, s)
