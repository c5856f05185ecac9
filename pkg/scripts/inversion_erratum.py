"""Compare the closed form of the inverted Laplacian with the actual conjugation.

For each (m, k, l) the script conjugates Lap_x by the harmonic inversion on a basis
of P_l (x) H_k and checks three candidates against it: the closed form with a plus
sign in front of the (2k+m-4) term, the same form with a minus sign, and
sum_j C_j^2.  It then prints the difference between the two closed forms.
"""
import argparse
from dataclasses import dataclass

from hsl.coeffpoly import Q, inner_ux, norm_sq
from hsl.diffop import (conformal_square_sum, higher_spin_laplace, inverted_laplace,
                        inverted_laplace_exact, mult, x_du)
from hsl.harmonic import tensor_basis
from hsl.radial import conjugate_by_inversion


@dataclass
class InversionConfig:
    m: int = 5
    k: int = 1
    l: int = 1


def run(cfg: InversionConfig) -> dict:
    m, k, l = cfg.m, cfg.k, cfg.l
    dom = tensor_basis(m, l, k)
    lap = higher_spin_laplace(m, 0)
    conj = [conjugate_by_inversion(lap, b) for b in dom]
    cands = {"plus sign": inverted_laplace(m, k), "minus sign": inverted_laplace_exact(m, k),
             "sum C_j^2": conformal_square_sum(m)}
    out = {name: sum(1 for c, b in zip(conj, dom) if c != op(b)) for name, op in cands.items()}
    pi = mult(inner_ux(m)) - mult(norm_sq(m, "u")).compose(x_du(m)).scale(Q(1, 2 * k + m - 4))
    term = pi.compose(x_du(m)).scale(8 * (2 * k + m - 4))
    out["difference is 8(2k+m-4) pi_k<u,x><x,d_u>"] = all(
        cands["plus sign"](b) - cands["minus sign"](b) == term(b) for b in dom)
    out["basis size"] = len(dom)
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=5)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--l", type=int, default=1)
    a = ap.parse_args(argv)
    res = run(InversionConfig(a.m, a.k, a.l))
    for key, val in res.items():
        if isinstance(val, int) and not isinstance(val, bool) and key != "basis size":
            print(f"{key:>12}: {'matches' if val == 0 else f'differs on {val} basis vectors'}")
        else:
            print(f"{key}: {val}")


if __name__ == "__main__":
    main()
