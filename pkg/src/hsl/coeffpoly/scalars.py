"""Exact scalars: rationals (gmpy2.mpq), Gaussian rationals and polynomials in alpha.

Real values are kept as plain ``mpq`` throughout; a ``Coefficient`` object only
appears when the imaginary part is nonzero.  ``coeff`` is the normalizing
constructor and should be used whenever a result might turn out real.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

from gmpy2 import mpq, mpz

_RATIONAL_TYPES = (type(mpq(0)), type(mpz(0)), int, Fraction)


def Q(num, den=1) -> "mpq":
    """Rational number from ints, strings or Fractions."""
    if isinstance(num, Fraction):
        num = mpq(num.numerator, num.denominator)
    if isinstance(den, Fraction):
        den = mpq(den.numerator, den.denominator)
    if den == 1:
        return mpq(num)
    return mpq(num) / mpq(den)


def _as_mpq(v) -> "mpq":
    if isinstance(v, Fraction):
        return mpq(v.numerator, v.denominator)
    return mpq(v)


class Coefficient:
    """Gaussian rational re + im*i with im != 0 (see ``coeff``)."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = _as_mpq(re)
        self.im = _as_mpq(im)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Coefficient):
            return coeff(self.re + other.re, self.im + other.im)
        if isinstance(other, _RATIONAL_TYPES):
            return Coefficient(self.re + _as_mpq(other), self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Coefficient):
            return coeff(self.re - other.re, self.im - other.im)
        if isinstance(other, _RATIONAL_TYPES):
            return Coefficient(self.re - _as_mpq(other), self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return Coefficient(_as_mpq(other) - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Coefficient):
            return coeff(self.re * other.re - self.im * other.im,
                         self.re * other.im + self.im * other.re)
        if isinstance(other, _RATIONAL_TYPES):
            if other == 0:
                return mpq(0)
            o = _as_mpq(other)
            return Coefficient(self.re * o, self.im * o)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "Coefficient":
        n = self.re * self.re + self.im * self.im
        return Coefficient(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if isinstance(other, Coefficient):
            return self * other.inverse()
        if isinstance(other, _RATIONAL_TYPES):
            o = _as_mpq(other)
            return Coefficient(self.re / o, self.im / o)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES):
            return _as_mpq(other) * self.inverse()
        return NotImplemented

    def __neg__(self):
        return Coefficient(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = mpq(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Coefficient):
            return self.re == other.re and self.im == other.im
        if isinstance(other, _RATIONAL_TYPES):
            return False  # im is never zero
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True

    def conjugate(self) -> "Coefficient":
        return Coefficient(self.re, -self.im)

    def __repr__(self):
        return f"Coefficient({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union["mpq", Coefficient]

I_UNIT = Coefficient(0, 1)


def coeff(re, im=0) -> Scalar:
    """Normalizing constructor: returns an mpq when the imaginary part is zero."""
    if im == 0:
        return _as_mpq(re)
    return Coefficient(re, im)


def real_part(c) -> "mpq":
    return c.re if isinstance(c, Coefficient) else _as_mpq(c)


def imag_part(c) -> "mpq":
    return c.im if isinstance(c, Coefficient) else mpq(0)


def conj(c):
    if isinstance(c, Coefficient):
        return c.conjugate()
    if isinstance(c, AlphaPoly):
        return AlphaPoly([conj(a) for a in c.coeffs])
    return c


def format_scalar(c) -> str:
    """Canonical text ``a/b+c/d*i`` (denominators always written)."""
    re, im = real_part(c), imag_part(c)
    return (f"{re.numerator}/{re.denominator}"
            f"{'+' if im >= 0 else '-'}{abs(im.numerator)}/{im.denominator}*i")


def parse_scalar(text: str) -> Scalar:
    text = text.strip()
    if not text.endswith("*i"):
        return mpq(text)
    body = text[:-2]
    # split at the sign that starts the imaginary part (never at position 0)
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-":
            return coeff(mpq(body[:pos]), mpq(body[pos:].lstrip("+")))
    raise ValueError(f"cannot parse scalar {text!r}")


class AlphaPoly:
    """Univariate polynomial in the formal parameter alpha with exact scalar coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, Coefficient) else _as_mpq(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def alpha(cls) -> "AlphaPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _lift(self, other):
        if isinstance(other, AlphaPoly):
            return other
        if isinstance(other, _RATIONAL_TYPES) or isinstance(other, Coefficient):
            return AlphaPoly([other])
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        n = max(len(a), len(b))
        return AlphaPoly([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                          for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return AlphaPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, _RATIONAL_TYPES) or isinstance(other, Coefficient):
            return AlphaPoly([c * other for c in self.coeffs])
        if not isinstance(other, AlphaPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return AlphaPoly()
        out = [mpq(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
        return AlphaPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, _RATIONAL_TYPES) or isinstance(other, Coefficient):
            return AlphaPoly([c / other for c in self.coeffs])
        return NotImplemented

    def __pow__(self, n: int):
        result = AlphaPoly([1])
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        if len(self.coeffs) == 1:
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def evaluate(self, value) -> Scalar:
        """Horner evaluation at an exact value."""
        acc = mpq(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def constant(self) -> Scalar:
        if len(self.coeffs) > 1:
            raise ValueError("AlphaPoly is not constant")
        return self.coeffs[0] if self.coeffs else mpq(0)

    def __repr__(self):
        return f"AlphaPoly({list(self.coeffs)})"

    def __str__(self):
        return format_alpha(self)


def format_alpha(p: AlphaPoly) -> str:
    """Canonical text ``<c0|c1|...>`` listing coefficients by increasing power of alpha."""
    return "<" + "|".join(format_scalar(c) for c in p.coeffs) + ">"


def parse_alpha(text: str) -> AlphaPoly:
    body = text.strip()[1:-1]
    if not body:
        return AlphaPoly()
    return AlphaPoly([parse_scalar(t) for t in body.split("|")])


def format_coefficient(c) -> str:
    if isinstance(c, AlphaPoly):
        return format_alpha(c)
    return format_scalar(c)


def parse_coefficient(text: str):
    text = text.strip()
    if text.startswith("<"):
        return parse_alpha(text)
    return parse_scalar(text)


def evaluate_alpha(c, value):
    """Evaluate alpha in a coefficient; plain scalars pass through."""
    if isinstance(c, AlphaPoly):
        return c.evaluate(value)
    return c


def rational_vector(values: Sequence) -> list:
    return [_as_mpq(v) for v in values]
