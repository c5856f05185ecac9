import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from hsl.coeffpoly import Q
from hsl.diffop import DiffOp, laplace, u_dx, du_dx
from hsl.kernelcheck import (DecompositionError, block_indices, decomposition_basis,
                             decomposition_check, degeneration_checks, ellipticity_check,
                             formula_dimension, kernel_basis, kernel_dimension, lemma42_check,
                             random_direction, restrict_u_order, surjectivity_check,
                             symbol_matrix, symmetry_checks)
from hsl.diffop import higher_spin_laplace

from strategies import seeds


def test_spec_kernel_examples():
    assert kernel_dimension(5, 0, 2) == 14
    assert kernel_dimension(5, 1, 2) == 70
    assert kernel_dimension(5, 1, 1) == 25      # whole space, D_k drops to degree -1


@pytest.mark.parametrize("m,k,l", [(5, 0, 4), (5, 1, 4), (6, 0, 3), (7, 1, 2)])
def test_formula_and_surjectivity(m, k, l):
    assert kernel_dimension(m, k, l) == formula_dimension(m, k, l)
    assert surjectivity_check(m, k, l)["ok"]


def test_kernel_vectors_are_annihilated():
    m, k, l = 5, 1, 2
    D = higher_spin_laplace(m, k)
    assert all(not D(v) for v in kernel_basis(m, k, l))


def test_block_indices_skip_rule():
    kept, skipped = block_indices(2, 1)
    assert (1, 1) in kept and (0, 0) in skipped
    kept, skipped = block_indices(1, 1)
    assert kept == [(0, 0), (0, 1), (1, 0)] and not skipped


@pytest.mark.parametrize("m,k,l", [(5, 1, 2), (6, 1, 2), (5, 0, 2), (5, 0, 3)])
def test_decomposition_exact_where_it_holds(m, k, l):
    rep = decomposition_check(m, k, l, "exact")
    assert rep.ok, rep.summary()


def test_decomposition_k0_single_block():
    rep = decomposition_check(5, 0, 2)
    assert rep.sizes == (14,) and rep.ok


@pytest.mark.parametrize("m,k,l,rank", [(5, 1, 1, 24), (5, 2, 2, 185), (5, 2, 3, 415), (6, 1, 1, 35)])
def test_decomposition_exact_loses_blocks(m, k, l, rank):
    """<u,d_x>^{i+j} kills the small sources, so the stated embedding is rank deficient here."""
    rep = decomposition_check(m, k, l, "exact")
    assert rep.annihilated and not rep.independent and rep.rank == rank
    with pytest.raises(DecompositionError):
        decomposition_basis(m, k, l, "exact")


@pytest.mark.parametrize("m,k,l", [(5, 1, 1), (5, 1, 2), (5, 2, 2), (6, 1, 1), (6, 1, 2), (5, 2, 1)])
def test_decomposition_inverted_twistor_variant(m, k, l):
    rep = decomposition_check(m, k, l, "twistor")
    assert rep.ok, rep.summary()
    assert sum(b for b in rep.sizes) == kernel_dimension(m, k, l)


def test_printed_inverted_laplace_breaks_annihilation():
    rep = decomposition_check(5, 1, 2, "printed")
    assert not rep.annihilated


def test_block_sizes_511():
    assert decomposition_check(5, 1, 1).sizes == (10, 14, 1)


@pytest.mark.parametrize("m,k,l", [(5, 1, 2), (6, 1, 1), (5, 0, 3), (5, 2, 2)])
def test_howe_splitting(m, k, l):
    r = lemma42_check(m, k, l)
    assert r.ok, r


def test_howe_splitting_spec_examples():
    r = lemma42_check(5, 1, 2)
    assert r.howe + r.lower == 70
    assert lemma42_check(6, 1, 1).lower == 1


def test_ellipticity_spot_values():
    assert ellipticity_check(5, 1).determinant == Q(1, 5)
    assert ellipticity_check(4, 1).determinant == 0
    assert ellipticity_check(6, 2, (1, 1, 0, 0, 0, 0)).determinant != 0


@settings(max_examples=15, deadline=None)
@given(st.sampled_from([(5, 1), (5, 2), (6, 1), (7, 2)]), seeds)
def test_symbol_determinant_matches_eigenvalue_product(mk, seed):
    m, k = mk
    r = ellipticity_check(m, k, random_direction(m, random.Random(seed)))
    assert r.consistent and r.elliptic


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([(5, 1), (6, 2)]), seeds, st.integers(1, 4))
def test_symbol_is_homogeneous_of_degree_two(mk, seed, t):
    m, k = mk
    x0 = random_direction(m, random.Random(seed))
    a = symbol_matrix(m, k, x0)
    b = symbol_matrix(m, k, tuple(c * t for c in x0))
    assert b == a.__class__([[c * t * t for c in row] for row in a.entries])


def test_symmetry_checks_detect_a_wrong_constant():
    """Harness sanity: a mis-normalised operator must break the special conformal relation."""
    import hsl.kernelcheck as kc
    m, k, l = 5, 1, 2
    good = symmetry_checks(m, k, l, js=(1,))
    assert all(v is None for v in good.values())
    wrong = laplace(m) - u_dx(m).compose(du_dx(m)).scale(Q(1, 1))
    orig = kc.higher_spin_laplace
    kc.higher_spin_laplace = lambda m_, k_: wrong
    try:
        bad = symmetry_checks(m, k, l, js=(1,))
    finally:
        kc.higher_spin_laplace = orig
    assert bad["C_1"] is not None
    assert bad["dx_1"] is None          # translations do not see the constant


def test_degeneration():
    for m in (5, 6):
        assert degeneration_checks(m) == {"k0": True, "k1": True}


def test_restrict_u_order_drops_high_u_derivatives():
    m = 5
    op = DiffOp.partial(m, "u", 1, 2) + DiffOp.partial(m, "x", 1)
    assert restrict_u_order(op, 1) == DiffOp.partial(m, "x", 1)
