"""Acceptance criteria 1-10, one recorded line per parameter point.

Every check is exact (zero matrices, exact ranks, exact rationals).  The summary
printed at the end of the pytest run aggregates the lines per criterion.
"""
import random
from math import comb

import pytest
from gmpy2 import mpq

from hsl.coeffpoly import Q
from hsl.harmonic import reproducing_kernel
from hsl.kernelcheck import (decomposition_check, degeneration_checks, ellipticity_check,
                             factorization_check, kernel_dimension, random_direction,
                             symmetry_checks)
from hsl.opalgebra import omega_algebra, sp4_algebra, verify_module_identity
from hsl.radial import (fundamental_constant_check, fundamental_solution_check,
                        laplace_power_constants, verify_Ek_alpha)
from hsl.rscheck import (fischer_refinement_check, rs_kernel_decomposition,
                         verify_block_identities)


# ----------------------------------------------------------------------------- 1

SYM_POINTS = [(m, k, l) for m in (5, 6) for k in (1, 2) for l in (k, k + 1)]


@pytest.mark.parametrize("m,k,l", SYM_POINTS)
def test_c1_conformal_symmetries(record, m, k, l):
    res = symmetry_checks(m, k, l, js=(1, 2))
    bad = {name: idx for name, idx in res.items() if idx is not None}
    assert len(res) == 7       # C_j, L_ij, d_xj for j = 1, 2 plus the Euler relation
    assert record(1, f"m={m} k={k} l={l}", not bad, f"nonzero: {bad}" if bad else "all exact zero")


# ----------------------------------------------------------------------------- 2

@pytest.mark.parametrize("m,k", [(m, k) for m in (5, 6, 7) for k in (1, 2, 3)])
def test_c2_elliptic_for_m_above_4(record, m, k):
    rng = random.Random(f"accept:{m}:{k}")
    reps = [ellipticity_check(m, k, random_direction(m, rng)) for _ in range(5)]
    ok = all(r.determinant != 0 for r in reps) and all(r.consistent for r in reps)
    assert record(2, f"m={m} k={k}", ok, "5 random x0, det != 0")


@pytest.mark.parametrize("k", [1, 2])
def test_c2_singular_at_m4(record, k):
    rng = random.Random(f"accept:4:{k}")
    dirs = [(1, 0, 0, 0)] + [random_direction(4, rng) for _ in range(5)]
    ok = all(ellipticity_check(4, k, x0).determinant == 0 for x0 in dirs)
    assert record(2, f"m=4 k={k}", ok, "det = 0")


def test_c2_spot_value(record):
    d = ellipticity_check(5, 1, (1, 0, 0, 0, 0)).determinant
    assert record(2, "m=5 k=1 x0=e1", d == Q(1, 5), f"det = {d}")


# ----------------------------------------------------------------------------- 3

def nullity_oracle(m, k, l):
    dim_hk = comb(m + k - 1, m - 1) - (comb(m + k - 3, m - 1) if k >= 2 else 0)
    return (comb(m + l - 1, m - 1) - (comb(m + l - 3, m - 1) if l >= 2 else 0)) * dim_hk


@pytest.mark.parametrize("m,k,l", [(m, k, l) for m in (5, 6) for k in (0, 1, 2) for l in (2, 3)])
def test_c3_kernel_dimension(record, m, k, l):
    n, f = kernel_dimension(m, k, l), nullity_oracle(m, k, l)
    assert record(3, f"m={m} k={k} l={l}", n == f, f"nullity {n}, formula {f}")


def test_c3_spot_value(record):
    assert record(3, "m=5 k=1 l=2 spot", kernel_dimension(5, 1, 2) == 70, "nullity 70")


# ----------------------------------------------------------------------------- 4

@pytest.mark.parametrize("m,k,l", [(5, 1, 1), (5, 1, 2), (5, 2, 2), (6, 1, 2)])
def test_c4_kernel_decomposition(record, m, k, l):
    rep = decomposition_check(m, k, l, "exact")
    assert record(4, f"m={m} k={k} l={l}", rep.ok,
                  f"annihilated={rep.annihilated} rank={rep.rank}/{rep.total} nullity={rep.nullity}")


def test_c4_block_sizes(record):
    sizes = decomposition_check(5, 1, 1, "exact").sizes
    assert record(4, "m=5 k=1 l=1 block sizes", tuple(sizes) == (10, 14, 1), f"sizes {tuple(sizes)}")


# ----------------------------------------------------------------------------- 5

@pytest.mark.parametrize("m,k,l", [(m, k, l) for k in (1, 2) for m in (5, 6) for l in (2, 3)])
def test_c5_factorization(record, m, k, l):
    r = factorization_check(m, k, l)
    assert record(5, f"m={m} k={k} l={l}", r["A_D"] and r["D_A"], f"{r}")


# ----------------------------------------------------------------------------- 6

def expansion_oracle(m, k, alpha):
    """The three alpha-coefficients of D_k E_k^alpha, written out directly."""
    a, d2, d4 = mpq(alpha), 2 * k + m - 2, 2 * k + m - 4
    return ((a + m - 2) * (a + Q(4 * k, d2)),
            (a + m - 2) * (a + m) * Q(4 * k, d2),
            Q(4 * k * (k - 1), d2 * d4) * (a + m) * (a + m - 2))


@pytest.mark.parametrize("m,k", [(m, k) for m in (5, 6, 7) for k in (1, 2)])
def test_c6_fundamental_expansion(record, m, k):
    r = verify_Ek_alpha(m, k)
    oracle_ok = all(tuple(c.evaluate(mpq(a)) for c in r.computed) == expansion_oracle(m, k, a)
                    for a in (-7, -3, Q(1, 2), 2, 5))
    vanish = (all(c.evaluate(mpq(2 - m)) == 0 for c in r.computed)
              and fundamental_solution_check(m, k))
    ok = r.identity_holds and oracle_ok and vanish
    assert record(6, f"m={m} k={k} expansion", ok,
                  f"identity={r.identity_holds} oracle={oracle_ok} vanish at 2-m={vanish}")


@pytest.mark.parametrize("m,k", [(m, k) for m in (5, 6, 7) for k in (1, 2)])
def test_c6_constants(record, m, k):
    lp = laplace_power_constants(m, k)
    c = fundamental_constant_check(m, k)
    ok = lp.matches and lp.third_is_zero and c.ok
    assert record(6, f"m={m} k={k} constants", ok,
                  f"scalars ({lp.first}, {lp.second}) label5*c_k = {c.product_with_c}")


def test_c6_spot_120(record):
    first = laplace_power_constants(5, 2).first
    assert record(6, "m=5 k=2 spot", first == 2 ** 3 * 2 * 5 * Q(3, 2) == 120, f"first scalar {first}")


@pytest.mark.parametrize("m", [5, 6, 7])
def test_c6_c0_c1(record, m):
    s0 = fundamental_constant_check(m, 0).special
    s1 = fundamental_constant_check(m, 1).special
    ok = bool(s0) and bool(s1) and all(s0.values()) and all(s1.values())
    assert record(6, f"m={m} c0 c1", ok, f"{s0} {s1}")


# ----------------------------------------------------------------------------- 7

@pytest.mark.parametrize("k", [1, 2, 3])
def test_c7_reproducing_kernel(record, k):
    r = reproducing_kernel(5, k)
    expected_ratio = 1
    for i in range(k):
        expected_ratio *= 5 - 2 + 2 * i
    ok = r.reproduces and r.ratio == expected_ratio
    assert record(7, f"m=5 k={k}", ok, f"reproduces={r.reproduces} Gegenbauer/solved ratio={r.ratio}")


# ----------------------------------------------------------------------------- 8

@pytest.mark.parametrize("name", ["lemma41", "a2k_k1", "a2k_k2", "ueasl2_1", "ueasl2_2", "ueasl2_3", "ueasl2_4"])
def test_c8_symbolic_identities(record, name):
    r = verify_module_identity(name)
    assert record(8, name, r.status == "pass",
                  "normal form 0" if r.status == "pass" else f"residual {r.difference[:80]}")


@pytest.mark.parametrize("label", ["sp4", "omega"])
def test_c8_jacobi(record, label):
    alg = sp4_algebra() if label == "sp4" else omega_algebra()
    fails = alg.jacobi_failures()
    n = len(alg.names)
    assert record(8, f"{label} Jacobi", not fails, f"{n * (n - 1) * (n - 2) // 6} triples")


# ----------------------------------------------------------------------------- 9

def test_c9_block_identities(record):
    r = verify_block_identities(6, 1, 2)
    for name in ("a", "b", "c"):
        assert name in r.results
    bad = {n: i for n, i in r.results.items() if i is not None}
    assert record(9, "m=6 k=1 l=2 block identities", not bad, f"{sorted(r.results)} failing: {bad}")


def test_c9_four_block_decomposition(record):
    rep = rs_kernel_decomposition(6, 1, 1, "exact")
    ok = rep.ok and rep.target == 8 * kernel_dimension(6, 1, 1)
    assert record(9, "m=6 k=1 l=1 four blocks", ok,
                  f"rank {rep.rank}, target {rep.target}, sizes {[b.size for b in rep.blocks]}")


@pytest.mark.parametrize("l", [1, 2])
def test_c9_fischer_refinement(record, l):
    r = fischer_refinement_check(6, l)
    assert record(9, f"m=6 k=0 l={l} monogenic refinement", r["ok"], f"{r}")


# ----------------------------------------------------------------------------- 10

@pytest.mark.parametrize("m", [5, 6, 7])
def test_c10_degeneration(record, m):
    r = degeneration_checks(m)
    assert record(10, f"m={m}", r["k0"] and r["k1"], f"{r}")
