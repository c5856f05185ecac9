"""Fit the commutator tables from concrete operator matrices.

For each ordered generator pair the commutator is applied to a test space of
polynomials at m = 5, 6, 7, written in the span of the generators and the identity,
interpolated to a polynomial in m, and checked again at m = 8.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Sequence, Tuple

from gmpy2 import mpq
from sympy.polys.domains import QQ

from ..coeffpoly import EchelonBasis, MultiPoly, bihomogeneous_monomials, inner_ux, norm_sq
from ..diffop import DiffOp, du_dx, euler, laplace, mult, u_dx, x_du
from .engine import M, R, Word, table_to_json

SP4_NAMES = ("X2", "UX", "U2", "UDX", "XDU", "EX", "LX", "DD", "EU", "LU")
SP4_LOWERING = {"UX": 1, "U2": 2, "UDX": 1, "XDU": -1, "DD": -1, "LU": -2}
OMEGA_NAMES = ("WP", "U2", "W", "EU", "LU")
OMEGA_LOWERING = {"WP": 1, "U2": 2, "W": -1, "LU": -2}

FIT_POINTS = (5, 6, 7)
CHECK_POINT = 8


def sp4_operator(name: str, m: int) -> DiffOp:
    return {
        "X2": lambda: mult(norm_sq(m, "x")),
        "U2": lambda: mult(norm_sq(m, "u")),
        "UX": lambda: mult(inner_ux(m)),
        "LX": lambda: laplace(m, "x"),
        "LU": lambda: laplace(m, "u"),
        "DD": lambda: du_dx(m),
        "UDX": lambda: u_dx(m),
        "XDU": lambda: x_du(m),
        "EX": lambda: euler(m, "x"),
        "EU": lambda: euler(m, "u"),
    }[name]()


def omega_operator(name: str, m: int) -> DiffOp:
    """Realization with omega = e_1."""
    return {
        "WP": lambda: mult(MultiPoly.var(m, "u", 1)),
        "W": lambda: DiffOp.partial(m, "u", 1),
        "U2": lambda: mult(norm_sq(m, "u")),
        "EU": lambda: euler(m, "u"),
        "LU": lambda: laplace(m, "u"),
    }[name]()


@dataclass(frozen=True)
class Realization:
    names: Tuple[str, ...]
    operator: Callable[[str, int], DiffOp]
    max_x: int
    max_u: int


SP4 = Realization(SP4_NAMES, sp4_operator, 2, 2)
OMEGA = Realization(OMEGA_NAMES, omega_operator, 0, 3)


def test_space(m: int, max_x: int, max_u: int) -> List[MultiPoly]:
    out = []
    for a in range(max_x + 1):
        for b in range(max_u + 1):
            out.extend(MultiPoly._raw(m, {e: mpq(1)}) for e in bihomogeneous_monomials(m, a, b))
    return out


def _image_vector(op: DiffOp, space: Sequence[MultiPoly]) -> dict:
    vec = {}
    for i, p in enumerate(space):
        for e, c in op(p).terms.items():
            vec[(i, e)] = c
    return vec


class FitError(ArithmeticError):
    pass


def commutators_at(real: Realization, m: int) -> Dict[Tuple[int, int], Dict[Word, mpq]]:
    """All ordered-pair commutators at dimension m, as {word: rational} with words of length <= 1."""
    space = test_space(m, real.max_x, real.max_u)
    ops = [real.operator(n, m) for n in real.names]
    cand_words: List[Word] = [(i,) for i in range(len(ops))] + [()]
    cand = [_image_vector(op, space) for op in ops] + [_image_vector(DiffOp.identity(m), space)]
    eb = EchelonBasis(cand)
    if not eb.independent:
        raise FitError(f"generators are dependent on the test space at m={m}")
    out = {}
    for a in range(len(ops)):
        for b in range(len(ops)):
            if a == b:
                continue
            comm = ops[a].compose(ops[b]) - ops[b].compose(ops[a])
            coords = eb.coordinates(_image_vector(comm, space))
            if coords is None:
                raise FitError(f"[{real.names[a]}, {real.names[b]}] leaves the generator span at m={m}")
            out[(a, b)] = {cand_words[i]: c for i, c in coords.items() if c != 0}
    return out


def _lagrange(points: Sequence[int], values: Sequence[mpq]):
    """Interpolating polynomial in M through (points, values)."""
    out = R.zero
    for i, (xi, yi) in enumerate(zip(points, values)):
        term = R(QQ(yi))
        for j, xj in enumerate(points):
            if j != i:
                term = term * (M - xj) * R(QQ(1, xi - xj))
        out += term
    return out


def derive_table(real: Realization, fit_points: Sequence[int] = FIT_POINTS,
                 check_point: int = CHECK_POINT) -> Tuple[Dict[Tuple[int, int], Dict[Word, object]], dict]:
    """Interpolated table plus metadata; raises FitError if the m = check_point validation fails."""
    samples = {m: commutators_at(real, m) for m in fit_points}
    check = commutators_at(real, check_point)
    table = {}
    max_degree = 0
    for pair in samples[fit_points[0]]:
        words = set()
        for m in fit_points:
            words |= set(samples[m][pair])
        words |= set(check[pair])
        comb = {}
        for w in sorted(words):
            vals = [samples[m][pair].get(w, mpq(0)) for m in fit_points]
            poly = _lagrange(fit_points, vals)
            if poly.evaluate(M, check_point) != QQ(check[pair].get(w, mpq(0))):
                a, b = pair
                raise FitError(f"[{real.names[a]}, {real.names[b]}] fails validation at m={check_point}")
            if poly:
                comb[w] = poly
                max_degree = max(max_degree, poly.degree(M))
        table[pair] = comb
    meta = {"fit_points": list(fit_points), "check_point": check_point, "max_degree_in_m": max_degree,
            "test_space": {"max_x_degree": real.max_x, "max_u_degree": real.max_u}}
    return table, meta


TABLE_FILES = {"sp4": ("sp4_relations.json", SP4), "omega": ("omega_relations.json", OMEGA)}


def freeze(directory) -> List[str]:
    """Derive both tables and write them as JSON into ``directory``; returns the file names."""
    written = []
    for key, (fname, real) in TABLE_FILES.items():
        table, meta = derive_table(real)
        meta = dict(meta, realization=key)
        Path(directory, fname).write_text(table_to_json(real.names, table, meta))
        written.append(fname)
    return written
