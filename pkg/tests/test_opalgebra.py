import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from hsl.coeffpoly import random_poly
from hsl.harmonic import harmonic_basis, tensor_basis
from hsl.opalgebra import (CATALOGUE, M, apply_expr, identity_names, matrix_check, omega_algebra,
                           sp4_algebra, verify_module_identity)
from hsl.opalgebra.derive import OMEGA, SP4, SP4_NAMES, derive_table
from hsl.opalgebra.engine import load_frozen

from strategies import seeds


def random_expr(alg, rng, terms=3, max_len=4):
    out = alg.scalar(0)
    for _ in range(terms):
        w = alg.one()
        for _ in range(rng.randint(1, max_len)):
            w = w * alg.gen(rng.choice(alg.names))
        out = out + w * rng.randint(-3, 3) + w * (M * rng.randint(0, 2))
    return out


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_normal_order_is_idempotent(seed):
    alg = sp4_algebra()
    e = random_expr(alg, random.Random(seed))
    n = alg.normal_order(e)
    assert alg.normal_order(n) == n
    assert all(alg.is_normal(w) for w in n.terms)


@settings(max_examples=30, deadline=None)
@given(seeds, seeds)
def test_normal_order_is_linear(s1, s2):
    alg = sp4_algebra()
    a, b = random_expr(alg, random.Random(s1)), random_expr(alg, random.Random(s2))
    assert alg.normal_order(a + b * 3) == alg.normal_order(a) + alg.normal_order(b) * 3


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_normal_order_preserves_the_operator(seed):
    """The reordered word acts exactly like the original on polynomials at m = 5."""
    alg = sp4_algebra()
    rng = random.Random(seed)
    e = random_expr(alg, rng, terms=2, max_len=3)
    n = alg.normal_order(e)
    m = 5
    for _ in range(2):
        p = random_poly(m, rng.randint(0, 2), rng.randint(0, 2), rng)
        assert apply_expr(e, m, None, p) == apply_expr(n, m, None, p)


def test_module_rules_are_sound_on_random_words():
    """Reduction with the value rules (trailing LU -> 0, EU -> k) agrees on H_k-valued inputs."""
    alg = sp4_algebra()
    rng = random.Random(2024)
    m, k, l = 5, 2, 1
    dom = tensor_basis(m, l, k)
    sample = [dom[i] for i in rng.sample(range(len(dom)), 6)]
    for _ in range(20):
        w = alg.one()
        for _ in range(rng.randint(1, 4)):
            w = w * alg.gen(rng.choice(alg.names))
        red = alg.module_reduce(w, k)
        for p in sample:
            assert apply_expr(w, m, k, p) == apply_expr(red, m, k, p)


def test_omega_module_rules_on_random_words():
    alg = omega_algebra()
    rng = random.Random(7)
    m, k = 5, 3
    hs = harmonic_basis(m, k)
    for _ in range(20):
        w = alg.one()
        for _ in range(rng.randint(1, 4)):
            w = w * alg.gen(rng.choice(alg.names))
        red = alg.module_reduce(w, k)
        for p in hs[:5]:
            assert apply_expr(w, m, k, p) == apply_expr(red, m, k, p)


@pytest.mark.parametrize("alg", [sp4_algebra, omega_algebra])
def test_tables_are_antisymmetric_and_satisfy_jacobi(alg):
    a = alg()
    assert not a.antisymmetry_failures()
    assert not a.jacobi_failures()


def test_sp4_generator_order():
    assert sp4_algebra().names == SP4_NAMES


@pytest.mark.parametrize("real,fname", [(SP4, "sp4_relations.json"), (OMEGA, "omega_relations.json")])
def test_frozen_tables_match_a_fresh_derivation(real, fname):
    names, frozen, meta = load_frozen(fname)
    fresh, _ = derive_table(real)
    assert tuple(names) == real.names
    assert fresh == frozen
    assert meta["max_degree_in_m"] <= 1


def test_catalogue_names():
    names = identity_names()
    for n in ("lemma41", "a2k_k1", "a2k_k2", "ueasl2_1", "ueasl2_exact_4"):
        assert n in names


@pytest.mark.parametrize("name", ["lemma41", "a2k_k1", "a2k_k2"] + [f"ueasl2_exact_{j}" for j in range(1, 5)])
def test_identities_reduce_to_zero(name):
    assert verify_module_identity(name).status == "pass"


@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_printed_sl2_relation_does_not_reduce(j):
    r = verify_module_identity(f"ueasl2_{j}")
    assert r.status == "fail"
    assert r.difference != "0"


def test_report_is_json_serialisable():
    r = verify_module_identity("a2k_k1")
    d = json.loads(json.dumps(r.as_dict()))
    assert d["status"] == "pass" and d["k"] == "1"


@pytest.mark.parametrize("name,m,k,l", [("lemma41", 5, 2, 1), ("a2k_k1", 5, 1, 2), ("a2k_k2", 6, 2, 2),
                                        ("ueasl2_exact_2", 5, 3, 0), ("ueasl2_exact_3", 6, 4, 0)])
def test_identities_hold_as_matrices(name, m, k, l):
    assert matrix_check(name, m, k, l)


@pytest.mark.parametrize("name,m,k", [("ueasl2_1", 5, 2), ("ueasl2_2", 6, 3)])
def test_printed_sl2_relation_fails_as_matrices(name, m, k):
    assert not matrix_check(name, m, k, 0)


def test_unknown_identity():
    with pytest.raises(KeyError):
        verify_module_identity("nope")
