"""Shared hypothesis strategies: random exact polynomials driven by an integer seed."""
import random

from hypothesis import strategies as st

from hsl.coeffpoly import Q, coeff, random_poly

seeds = st.integers(min_value=0, max_value=10 ** 6)
small_m = st.integers(min_value=2, max_value=4)


@st.composite
def polys(draw, m=None, max_deg=2, complex_coeffs=True):
    m = draw(small_m) if m is None else m
    rng = random.Random(draw(seeds))
    dx, du = draw(st.integers(0, max_deg)), draw(st.integers(0, max_deg))
    return random_poly(m, dx, du, rng, complex_coeffs=complex_coeffs)


@st.composite
def poly_tuple(draw, n=3, m=3, max_deg=2):
    rng = random.Random(draw(seeds))
    out = []
    for _ in range(n):
        out.append(random_poly(m, rng.randint(0, max_deg), rng.randint(0, max_deg), rng,
                               complex_coeffs=True))
    return tuple(out)


rationals = st.builds(lambda a, b: Q(a, b), st.integers(-20, 20), st.integers(1, 9))
scalars = st.builds(coeff, rationals, rationals)
