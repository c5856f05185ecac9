import random

from hypothesis import given, settings, strategies as st

from hsl.clifford import (CliffPoly, CliffordElement, blade_product, dirac_apply, e, idempotent,
                          monogenic_refine, spinor_algebra_dim, spinor_basis, witt, witt_dagger)
from hsl.coeffpoly import Q, coeff, random_poly
from hsl.diffop import laplace
from hsl.harmonic import harmonic_basis
from hsl.rscheck import dirac, scalar_op

from strategies import seeds


def random_element(n, rng, terms=4):
    blades = {}
    for _ in range(terms):
        blades[rng.randrange(1 << n)] = coeff(Q(rng.randint(-4, 4), rng.randint(1, 3)),
                                              Q(rng.randint(-4, 4), rng.randint(1, 3)))
    return CliffordElement(n, blades)


@given(st.integers(2, 6), seeds)
def test_associativity(n, seed):
    rng = random.Random(seed)
    a, b, c = (random_element(n, rng) for _ in range(3))
    assert (a * b) * c == a * (b * c)


@given(st.integers(1, 6), st.data())
def test_generator_relations(n, data):
    a = data.draw(st.integers(1, n))
    b = data.draw(st.integers(1, n))
    anti = e(n, a) * e(n, b) + e(n, b) * e(n, a)
    expected = CliffordElement.scalar(n, -2 if a == b else 0)
    assert anti == expected


@given(st.integers(0, 63), st.integers(0, 63), st.integers(0, 63))
def test_blade_product_sign_is_associative(a, b, c):
    s1, ab = blade_product(a, b)
    s2, abc = blade_product(ab, c)
    t1, bc = blade_product(b, c)
    t2, abc2 = blade_product(a, bc)
    assert abc == abc2 and s1 * s2 == t1 * t2


def test_witt_basis_relations():
    n = 6
    one = CliffordElement.scalar(n)
    for j in range(1, 4):
        f, fd = witt(n, j), witt_dagger(n, j)
        assert f * f == 0 and fd * fd == 0
        assert f * fd + fd * f == one
        for i in range(1, 4):
            if i != j:
                assert f * witt_dagger(n, i) + witt_dagger(n, i) * f == 0


def test_idempotent_and_spinor_dimension():
    for n in (2, 4, 6):
        I = idempotent(n)
        assert I * I == I
        assert len(spinor_basis(n)) == 2 ** (n // 2)
    assert spinor_algebra_dim(5) == 6 and spinor_algebra_dim(6) == 6


def test_spinor_space_is_a_left_ideal():
    n = 4
    basis = spinor_basis(n)
    I = idempotent(n)
    for a in range(1, n + 1):
        for s in basis:
            assert e(n, a) * s * I == e(n, a) * s


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 4]), seeds)
def test_dirac_squares_to_minus_laplace(m, seed):
    rng = random.Random(seed)
    n = spinor_algebra_dim(m)
    f = CliffPoly(m, n, {rng.randrange(1 << n): random_poly(m, 3, 1, rng, complex_coeffs=True)
                         for _ in range(3)})
    lap = laplace(m)
    lhs = dirac_apply("x", dirac_apply("x", f))
    assert lhs == f.map_scalar(lap).scale(-1)


def test_dirac_operator_square_symbolically():
    m = 4
    d = dirac(m)
    assert d.compose(d) == scalar_op(laplace(m)).scale(-1)


def test_monogenic_refinement_parts_are_monogenic():
    m, k = 4, 2
    n = spinor_algebra_dim(m)
    s = spinor_basis(n)[1]
    for h in harmonic_basis(m, k)[:4]:
        H = CliffPoly.from_product(h, s)
        top, lower = monogenic_refine(H, k)
        assert not dirac_apply("u", top)
        assert not dirac_apply("u", lower)
        assert top + lower.vector_mul("u") == H
