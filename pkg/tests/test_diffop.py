import random

import pytest
from hypothesis import given, settings, strategies as st

from hsl.coeffpoly import MultiPoly, Q, inner_ux, norm_sq, random_poly
from hsl.diffop import (OPERATOR_NAMES, DenominatorError, DiffOp, build_A2k, build_named,
                        commutator, conformal_square_sum, du_dx, euler, higher_spin_laplace,
                        inverted_laplace, inverted_laplace_exact, laplace, mult, rotation,
                        special_conformal, twistor, u_dx, x_du)
from hsl.harmonic import tensor_basis
from hsl.kernelcheck import laplace_matrix, operator_matrix

from strategies import seeds

M = 3


def rand_poly(seed, m=M, max_deg=3):
    rng = random.Random(seed)
    return random_poly(m, rng.randint(0, max_deg), rng.randint(0, max_deg), rng, complex_coeffs=True)


SMALL_OPS = ["lap_x", "lap_u", "u_dx", "x_du", "du_dx", "euler_x", "x2", "ux", "dx", "du", "L", "C"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SMALL_OPS), st.sampled_from(SMALL_OPS), seeds)
def test_composition_matches_sequential_application(a, b, seed):
    A, B = build_named(a, M), build_named(b, M)
    p = rand_poly(seed)
    assert A.compose(B)(p) == A(B(p))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SMALL_OPS), seeds, seeds)
def test_operators_are_linear(name, s1, s2):
    A = build_named(name, M)
    p, q = rand_poly(s1), rand_poly(s2)
    assert A(p + q.scale(Q(3, 2))) == A(p) + A(q).scale(Q(3, 2))


def test_weyl_relations():
    m = 4
    lap, r2, E = laplace(m), mult(norm_sq(m)), euler(m)
    # [Lap, |x|^2] = 4E + 2m
    assert commutator(lap, r2) == E.scale(4) + DiffOp.identity(m).scale(2 * m)
    # [E, |x|^2] = 2|x|^2 and [Lap, E] = 2 Lap
    assert commutator(E, r2) == r2.scale(2)
    assert commutator(lap, E) == lap.scale(2)
    # [<d_u,d_x>, <u,d_x>] = Lap_x
    assert commutator(du_dx(m), u_dx(m)) == lap


def test_euler_counts_degree():
    m = 4
    q = random_poly(m, 3, 2, random.Random(1))
    assert euler(m)(q) == q.scale(3)
    assert euler(m, "u")(q) == q.scale(2)


@pytest.mark.parametrize("name", OPERATOR_NAMES)
def test_every_named_operator_builds(name):
    op = build_named(name, 5, 2)
    assert isinstance(op, DiffOp) and op.coefficient_text()


def test_unknown_operator_name():
    with pytest.raises(KeyError):
        build_named("nope", 5)


def test_denominator_guard():
    with pytest.raises(DenominatorError):
        twistor(2, 1)          # 2k + m - 4 = 0


def test_twistor_raises_harmonic_value_degree():
    m, k = 5, 2
    T = twistor(m, k)
    lap_u = laplace(m, "u")
    for b in tensor_basis(m, 2, k - 1)[:30]:
        assert not lap_u(T(b))


def test_inverted_laplace_matches_conformal_squares():
    """The corrected closed form equals sum_j C_j^2 on H_k-valued polynomials; the printed one does not."""
    m, k = 5, 1
    S = conformal_square_sum(m)
    exact, printed = inverted_laplace_exact(m, k), inverted_laplace(m, k)
    dom = tensor_basis(m, 1, k)
    assert all(exact(b) == S(b) for b in dom)
    assert any(printed(b) != S(b) for b in dom)


def test_printed_minus_exact_is_the_sign_term():
    m, k = 5, 2
    dom = tensor_basis(m, 1, k)
    c = 8 * (2 * k + m - 4)
    # pi_k<u,x> = <u,x> - |u|^2/(2k+m-4) <x,d_u>
    pi_ux = mult(inner_ux(m)) - mult(norm_sq(m, "u")).compose(x_du(m)).scale(Q(1, 2 * k + m - 4))
    term = pi_ux.compose(x_du(m)).scale(c)
    P, E = inverted_laplace(m, k), inverted_laplace_exact(m, k)
    assert all(P(b) - E(b) == term(b) for b in dom)


def test_special_conformal_commute_among_themselves():
    m = 4
    C1, C2 = special_conformal(m, 1), special_conformal(m, 2)
    assert commutator(C1, C2).is_zero()


def test_rotation_is_antisymmetric():
    m = 4
    assert rotation(m, 1, 2) == rotation(m, 2, 1).scale(-1)


def test_a2k_recursion_base():
    m = 6
    assert build_A2k(m, 1) == laplace(m) + u_dx(m).compose(du_dx(m)).scale(Q(4, m - 4))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([(5, 0, 2), (5, 1, 2), (5, 1, 3), (6, 1, 2)]), seeds)
def test_operator_matrix_columns_are_faithful(params, seed):
    m, k, l = params
    assert laplace_matrix(m, k, l).column_faithful(samples=8, seed=seed)


def test_operator_matrix_rejects_leaving_codomain():
    m = 4
    dom = tensor_basis(m, 1, 0)
    with pytest.raises(ValueError):
        operator_matrix("x2", mult(norm_sq(m)), dom, dom)
