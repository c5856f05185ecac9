from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from hsl.clifford import dirac_apply
from hsl.coeffpoly import MultiPoly, Q
from hsl.diffop import du_dx, laplace, x_du
from hsl.harmonic import (BasisSpec, basis, dim_harmonic, fischer_inner, fischer_project,
                          gegenbauer_coefficients, harmonic_basis, highest_weight_vector,
                          howe_decomposition_check, simplicial_basis)


def weyl_dimension(m, weight):
    """Weyl dimension formula for so(m) with an orthogonal-basis highest weight."""
    n = m // 2
    lam = [Fraction(w) for w in weight] + [Fraction(0)] * (n - len(weight))
    if m % 2:
        rho = [Fraction(2 * (n - i) - 1, 2) for i in range(n)]
    else:
        rho = [Fraction(n - i - 1) for i in range(n)]
    ell = [a + r for a, r in zip(lam, rho)]
    out = Fraction(1)
    for i, j in combinations(range(n), 2):
        out *= (ell[i] ** 2 - ell[j] ** 2) / (rho[i] ** 2 - rho[j] ** 2)
    if m % 2:
        for a, r in zip(ell, rho):
            out *= a / r
    return int(out)


def spinor_copies(m):
    """Both chiralities (even m) or the doubled odd-m spinor space carry the same weight dimension."""
    return 2


@pytest.mark.parametrize("m,k", [(m, k) for m in (3, 4, 5, 6, 7) for k in range(5)])
def test_harmonic_dimension(m, k):
    assert dim_harmonic(m, k) == len(harmonic_basis(m, k)) == weyl_dimension(m, [k])


@pytest.mark.parametrize("m,a,b", [(5, 1, 1), (5, 2, 0), (5, 2, 1), (5, 2, 2), (6, 1, 1), (6, 2, 1), (6, 3, 1)])
def test_simplicial_harmonic_dimension(m, a, b):
    hs = simplicial_basis(m, a, b)
    assert len(hs) == weyl_dimension(m, [a, b])
    for op in (laplace(m), laplace(m, "u"), du_dx(m), x_du(m)):
        assert all(not op(h) for h in hs)


@pytest.mark.parametrize("m,k", [(5, 1), (6, 1), (6, 2)])
def test_monogenic_dimension(m, k):
    ms = basis(BasisSpec("Mk", m, k))
    half = [Fraction(1, 2)] * (m // 2)
    half[0] += k
    assert len(ms) == spinor_copies(m) * weyl_dimension(m, half)
    assert all(not dirac_apply("u", f) for f in ms)


def test_simplicial_monogenic_dimension():
    m, k, l = 6, 2, 1
    w = [Fraction(k) + Fraction(1, 2), Fraction(l) + Fraction(1, 2), Fraction(1, 2)]
    assert len(basis(BasisSpec("Skl", m, k, l))) == spinor_copies(m) * weyl_dimension(m, w)


def test_spec_example_hkl_511():
    hs = basis(BasisSpec("Hkl", 5, 1, 1))
    assert len(hs) == 10
    assert all(h.bidegree() == (1, 1) for h in hs)


def test_dominance_condition():
    with pytest.raises(ValueError):
        BasisSpec("Hkl", 5, 1, 2)
    with pytest.raises(ValueError):
        BasisSpec("nope", 5, 1, 0)


@pytest.mark.parametrize("m,l,k", [(5, 1, 1), (5, 2, 1), (5, 2, 2), (6, 1, 1)])
def test_howe_harmonics_from_simplicial(m, l, k):
    r = howe_decomposition_check(m, l, k)
    assert r["spans"] and r["images_independent"]


@pytest.mark.parametrize("k,l", [(2, 0), (2, 1), (3, 2)])
def test_highest_weight_vector_is_simplicial(k, l):
    m = 6
    w = highest_weight_vector("harmonic", k, l, m)
    assert w.bidegree() == (k, l)
    for op in (laplace(m), laplace(m, "u"), du_dx(m), x_du(m)):
        assert not op(w)


@settings(max_examples=20)
@given(st.integers(0, 8), st.sampled_from([Q(1, 2), Q(3, 2), Q(2), Q(5, 2)]))
def test_gegenbauer_matches_sympy(k, lam):
    t = sympy.Symbol("t")
    ref = sympy.Poly(sympy.gegenbauer(k, sympy.Rational(int(lam.numerator), int(lam.denominator)), t), t)
    ours = gegenbauer_coefficients(k, lam)
    expected = [ref.coeff_monomial(t ** i) for i in range(k + 1)]
    assert [sympy.Rational(int(c.numerator), int(c.denominator)) for c in ours] == expected


def test_fischer_pairing_is_positive_on_harmonics():
    m, k = 4, 2
    for h in harmonic_basis(m, k):
        assert fischer_inner(h, h) > 0


def test_fischer_projection_removes_trace_part():
    m, k = 4, 2
    h = harmonic_basis(m, k)[0]
    p = h + MultiPoly.var(m, "x", 1) * MultiPoly.const(m, 0) + \
        (MultiPoly.var(m, "u", 1) ** 2 + MultiPoly.var(m, "u", 2) ** 2 + MultiPoly.var(m, "u", 3) ** 2
         + MultiPoly.var(m, "u", 4) ** 2).scale(Q(3))
    assert fischer_project(p, k) == h
