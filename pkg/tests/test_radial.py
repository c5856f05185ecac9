import random

import pytest
from hypothesis import given, settings, strategies as st

from hsl.coeffpoly import MultiPoly, Q, norm_sq, random_poly
from hsl.diffop import DiffOp, special_conformal
from hsl.radial import (c_constant, conjugate_by_inversion, divide_norm_sq, fundamental_solution_check,
                        harmonic_inversion, inversion_back, label5_constant, laplace_power_constants,
                        lemma_scalars_closed_form, sphere_area)

from strategies import seeds


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 4, 5]), seeds)
def test_divide_norm_sq_inverts_multiplication(m, seed):
    rng = random.Random(seed)
    p = random_poly(m, rng.randint(0, 3), rng.randint(0, 2), rng, complex_coeffs=True)
    assert divide_norm_sq(norm_sq(m) * p) == p


def test_divide_norm_sq_rejects_non_multiples():
    m = 3
    assert divide_norm_sq(MultiPoly.var(m, "x", 1) ** 2) is None


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([4, 5]), seeds)
def test_inversion_is_an_involution(m, seed):
    rng = random.Random(seed)
    p = random_poly(m, rng.randint(0, 2), rng.randint(0, 2), rng)
    assert inversion_back(harmonic_inversion(p)) == p


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 3), seeds)
def test_conjugated_derivative_is_special_conformal(j, seed):
    m = 4
    rng = random.Random(seed)
    p = random_poly(m, rng.randint(0, 2), 1, rng)
    assert conjugate_by_inversion(DiffOp.partial(m, "x", j), p) == special_conformal(m, j)(p)


@pytest.mark.parametrize("m,k", [(5, 1), (5, 2), (6, 2), (7, 3)])
def test_laplace_power_scalars(m, k):
    r = laplace_power_constants(m, k)
    assert (r.first, r.second) == lemma_scalars_closed_form(m, k)
    assert r.third_is_zero


@pytest.mark.parametrize("m,k", [(5, 0), (5, 1), (6, 2), (7, 3), (8, 1)])
def test_label5_times_c_is_one(m, k):
    prod = label5_constant(m, k) * c_constant(m, k)
    assert prod.is_rational() and prod.rational == 1


def test_sphere_area_m3():
    # A_3 = 4 pi = 2 pi^(3/2) / Gamma(3/2), Gamma(3/2) = Gamma(1/2) / 2
    a = sphere_area(3)
    assert a.pi == 1 and a.gamma == -1 and a.rational == 4


@pytest.mark.parametrize("m,k", [(5, 0), (5, 1), (6, 1)])
def test_fundamental_solution_is_annihilated(m, k):
    assert fundamental_solution_check(m, k)
