"""Reduce the commutator of <omega,d_u> with powers of its inversion in the module algebra.

For j = 1..jmax prints the normal form of [W, J^j] together with the residual
against two candidate right-hand sides: -2 J^{j-1}(2E_u+m-3) and
-j J^{j-1}(2E_u+m+j-3).
"""
import argparse

from hsl.opalgebra import M, commutator, omega_algebra
from hsl.opalgebra.identities import inverted_w


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--jmax", type=int, default=4)
    a = ap.parse_args(argv)
    alg = omega_algebra()
    W, EU = alg.gen("W"), alg.gen("EU")
    J = inverted_w(alg)
    for j in range(1, a.jmax + 1):
        lhs = alg.normal_order(commutator(W, J ** j))
        fixed = alg.normal_order(J ** (j - 1) * (EU * 2 + alg.scalar(M - 3)) * (-2))
        moving = alg.normal_order(J ** (j - 1) * (EU * 2 + alg.scalar(M + j - 3)) * (-j))
        print(f"j={j}: [W, J^{j}] has {len(lhs.terms)} normal-ordered terms")
        print(f"   residual vs -2 J^(j-1)(2E+m-3):   {(lhs - fixed).to_text()[:160]}")
        print(f"   residual vs -j J^(j-1)(2E+m+j-3): {(lhs - moving).to_text()}")


if __name__ == "__main__":
    main()
