"""Sparse polynomials in two vector variables x = (x_1..x_m), u = (u_1..u_m).

Exponent vectors have length 2m: positions 0..m-1 belong to x, m..2m-1 to u.
Coefficients are exact scalars (mpq / Coefficient) or AlphaPoly values.
"""
from __future__ import annotations

import random
from itertools import combinations_with_replacement
from typing import Callable, Dict, Iterable, Iterator, Optional, Sequence, Tuple

from gmpy2 import mpq

from .scalars import (
    AlphaPoly, Coefficient, I_UNIT, Q, coeff, conj, evaluate_alpha,
    format_coefficient, parse_coefficient,
)

Exponent = Tuple[int, ...]


class ContextError(ValueError):
    """Raised when values built for different dimensions m are combined."""


def term_key(e: Exponent):
    # graded lexicographic, largest first when sorted with reverse=True
    return (sum(e), e)


def _add_into(acc: dict, key, value) -> None:
    cur = acc.get(key)
    if cur is None:
        if value != 0:
            acc[key] = value
    else:
        s = cur + value
        if s == 0:
            del acc[key]
        else:
            acc[key] = s


class MultiPoly:
    """Immutable sparse polynomial; ``terms`` maps exponent tuples to nonzero coefficients."""

    __slots__ = ("m", "terms", "labels", "_hash")

    def __init__(self, m: int, terms: Optional[Dict[Exponent, object]] = None,
                 labels: Tuple[str, str] = ("x", "u")):
        self.m = m
        self.labels = labels
        clean = {}
        if terms:
            n = 2 * m
            for e, c in terms.items():
                if len(e) != n:
                    raise ContextError(f"exponent {e} does not fit m={m}")
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, m: int, terms: dict, labels=("x", "u")) -> "MultiPoly":
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p.m = m
        p.terms = terms
        p.labels = labels
        p._hash = None
        return p

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, m: int) -> "MultiPoly":
        return cls._raw(m, {})

    @classmethod
    def const(cls, m: int, c=1) -> "MultiPoly":
        return cls(m, {(0,) * (2 * m): c})

    @classmethod
    def monomial(cls, m: int, e: Exponent, c=1) -> "MultiPoly":
        return cls(m, {tuple(e): c})

    @classmethod
    def var(cls, m: int, block: str, j: int) -> "MultiPoly":
        """Coordinate function; ``block`` is 'x' or 'u' and j is 1-based."""
        e = [0] * (2 * m)
        e[_index(m, block, j)] = 1
        return cls._raw(m, {tuple(e): mpq(1)})

    # basic protocol ---------------------------------------------------------
    def _check(self, other: "MultiPoly") -> None:
        if self.m != other.m:
            raise ContextError(f"context mismatch: m={self.m} vs m={other.m}")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.m == other.m and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self.terms.items())))
        return self._hash

    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            if other == 0:
                return self
            other = MultiPoly.const(self.m, other)
        self._check(other)
        if len(other.terms) > len(self.terms):
            a, b = other, self
        else:
            a, b = self, other
        out = dict(a.terms)
        for e, c in b.terms.items():
            _add_into(out, e, c)
        return MultiPoly._raw(self.m, out, self.labels)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.m, {e: -c for e, c in self.terms.items()}, self.labels)

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            if other == 0:
                return self
            other = MultiPoly.const(self.m, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            _add_into(out, e, -c)
        return MultiPoly._raw(self.m, out, self.labels)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MultiPoly":
        if c == 0:
            return MultiPoly._raw(self.m, {}, self.labels)
        if c == 1:
            return self
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if w != 0:
                out[e] = w
        return MultiPoly._raw(self.m, out, self.labels)

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                _add_into(out, tuple([a + b for a, b in zip(e1, e2)]), c1 * c2)
        return MultiPoly._raw(self.m, out, self.labels)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(mpq(1) / c)

    def __pow__(self, n: int) -> "MultiPoly":
        result = MultiPoly.const(self.m, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # structure --------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: term_key(t[0]), reverse=True)

    def leading_exponent(self) -> Exponent:
        return max(self.terms, key=term_key)

    def bidegrees(self) -> set:
        m = self.m
        return {(sum(e[:m]), sum(e[m:])) for e in self.terms}

    def bidegree(self) -> Tuple[int, int]:
        """(deg_x, deg_u) of a bihomogeneous polynomial."""
        bd = self.bidegrees()
        if len(bd) != 1:
            raise ValueError(f"polynomial is not bihomogeneous: {sorted(bd)}")
        return next(iter(bd))

    def is_bihomogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def depends_on_x(self) -> bool:
        m = self.m
        return any(any(e[:m]) for e in self.terms)

    def depends_on_u(self) -> bool:
        m = self.m
        return any(any(e[m:]) for e in self.terms)

    def map_coefficients(self, f: Callable) -> "MultiPoly":
        return MultiPoly(self.m, {e: f(c) for e, c in self.terms.items()}, self.labels)

    def conjugate(self) -> "MultiPoly":
        return self.map_coefficients(conj)

    def evaluate_alpha(self, value) -> "MultiPoly":
        return self.map_coefficients(lambda c: evaluate_alpha(c, value))

    def relabel(self, labels: Tuple[str, str]) -> "MultiPoly":
        return MultiPoly._raw(self.m, self.terms, labels)

    # calculus ---------------------------------------------------------------
    def diff(self, index: int, times: int = 1) -> "MultiPoly":
        """Partial derivative with respect to the variable at flat position ``index``."""
        out = {}
        for e, c in self.terms.items():
            a = e[index]
            if a < times:
                continue
            f = 1
            for t in range(times):
                f *= a - t
            ne = list(e)
            ne[index] = a - times
            out[tuple(ne)] = c * f
        return MultiPoly._raw(self.m, out, self.labels)

    def dx(self, j: int) -> "MultiPoly":
        return self.diff(j - 1)

    def du(self, j: int) -> "MultiPoly":
        return self.diff(self.m + j - 1)

    def evaluate(self, point: Sequence):
        """Evaluate at a full point of length 2m (x then u)."""
        if len(point) != 2 * self.m:
            raise ContextError("point has wrong length")
        total = mpq(0)
        for e, c in self.terms.items():
            v = c
            for p, a in zip(point, e):
                if a:
                    v = v * p ** a
            total = total + v
        return total

    def substitute(self, images: Sequence[Optional["MultiPoly"]]) -> "MultiPoly":
        """Replace variable i by images[i] (None keeps the variable)."""
        m = self.m
        powers: dict = {}

        def power(i: int, a: int) -> MultiPoly:
            key = (i, a)
            if key not in powers:
                powers[key] = images[i] ** a
            return powers[key]

        out = MultiPoly.zero(m)
        for e, c in self.terms.items():
            kept = [0] * (2 * m)
            factor = MultiPoly.const(m, c)
            for i, a in enumerate(e):
                if not a:
                    continue
                if images[i] is None:
                    kept[i] = a
                else:
                    factor = factor * power(i, a)
            if any(kept):
                factor = factor * MultiPoly.monomial(m, tuple(kept))
            out = out + factor
        return out.relabel(self.labels)

    def split_u(self) -> Dict[Exponent, "MultiPoly"]:
        """Group by u-exponent: {u-exponent: x-polynomial}."""
        m = self.m
        groups: Dict[Exponent, dict] = {}
        zeros = (0,) * m
        for e, c in self.terms.items():
            groups.setdefault(e[m:], {})[e[:m] + zeros] = c
        return {k: MultiPoly._raw(m, v) for k, v in groups.items()}

    # text -------------------------------------------------------------------
    def to_text(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(_term_text(self.m, e, c, self.labels) for e, c in self.sorted_terms())

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly(m={self.m}, {self.to_text()})"


def _index(m: int, block: str, j: int) -> int:
    if not 1 <= j <= m:
        raise ContextError(f"coordinate index {j} out of range for m={m}")
    if block in ("x", "v"):
        return j - 1
    if block == "u":
        return m + j - 1
    raise ValueError(f"unknown variable block {block!r}")


def _term_text(m: int, e: Exponent, c, labels) -> str:
    parts = [f"[{format_coefficient(c)}]"]
    for i, a in enumerate(e):
        if a:
            name = f"{labels[0]}{i + 1}" if i < m else f"{labels[1]}{i - m + 1}"
            parts.append(f"{name}^{a}")
    return " ".join(parts)


def parse_poly(m: int, text: str, labels=("x", "u")) -> MultiPoly:
    """Inverse of ``MultiPoly.to_text``."""
    text = text.strip()
    if text == "0":
        return MultiPoly.zero(m)
    terms = {}
    for chunk in text.split(" + "):
        head, _, rest = chunk.strip().partition("]")
        c = parse_coefficient(head.lstrip("["))
        e = [0] * (2 * m)
        for tok in rest.split():
            name, _, a = tok.partition("^")
            block = labels[0] if name.startswith(labels[0]) else labels[1]
            j = int(name[len(block):])
            e[j - 1 if block == labels[0] else m + j - 1] += int(a)
        _add_into(terms, tuple(e), c)
    return MultiPoly._raw(m, terms, labels)


# named polynomials --------------------------------------------------------------

def x(m: int, j: int) -> MultiPoly:
    return MultiPoly.var(m, "x", j)


def u(m: int, j: int) -> MultiPoly:
    return MultiPoly.var(m, "u", j)


def norm_sq(m: int, block: str = "x") -> MultiPoly:
    terms = {}
    for j in range(1, m + 1):
        e = [0] * (2 * m)
        e[_index(m, block, j)] = 2
        terms[tuple(e)] = mpq(1)
    return MultiPoly._raw(m, terms)


def inner_ux(m: int) -> MultiPoly:
    terms = {}
    for j in range(m):
        e = [0] * (2 * m)
        e[j] = 1
        e[m + j] = 1
        terms[tuple(e)] = mpq(1)
    return MultiPoly._raw(m, terms)


def witt_form(m: int, block: str = "u") -> MultiPoly:
    """<v, 2f_1> = v_1 - i v_2 for v = x or u."""
    return MultiPoly.var(m, block, 1) - MultiPoly.var(m, block, 2).scale(I_UNIT)


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    return p * q


def substitute_xux(p: MultiPoly) -> MultiPoly:
    """p(xux) where xux = |x|^2 u - 2<u,x> x, for p depending on u only."""
    if p.depends_on_x():
        raise ValueError("substitute_xux expects a polynomial in u only")
    m = p.m
    r2, ux = norm_sq(m, "x"), inner_ux(m)
    images = [None] * m + [r2 * u(m, j) - (ux * x(m, j)).scale(2) for j in range(1, m + 1)]
    return p.substitute(images)


# monomial enumeration ------------------------------------------------------------

def exponents(n: int, degree: int) -> Iterator[Tuple[int, ...]]:
    """All exponent vectors of length n and total degree ``degree`` (grlex descending)."""
    out = []
    for combo in combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return iter(out)


def bihomogeneous_monomials(m: int, dx: int, du: int) -> list:
    """Exponents (length 2m) of bidegree (dx, du), in a fixed deterministic order."""
    return [ex + eu for ex in exponents(m, dx) for eu in exponents(m, du)]


def monomial_basis(m: int, dx: int, du: int) -> list:
    return [MultiPoly._raw(m, {e: mpq(1)}) for e in bihomogeneous_monomials(m, dx, du)]


def random_poly(m: int, dx: int, du: int, rng: random.Random, density: float = 0.5,
                complex_coeffs: bool = False, bound: int = 5) -> MultiPoly:
    terms = {}
    for e in bihomogeneous_monomials(m, dx, du):
        if rng.random() < density:
            re = Q(rng.randint(-bound, bound), rng.randint(1, 3))
            im = Q(rng.randint(-bound, bound), rng.randint(1, 3)) if complex_coeffs else 0
            c = coeff(re, im)
            if c != 0:
                terms[e] = c
    return MultiPoly._raw(m, terms)


def random_point(n: int, rng: random.Random, bound: int = 7) -> list:
    return [Q(rng.randint(-bound, bound), rng.randint(1, 4)) for _ in range(n)]
