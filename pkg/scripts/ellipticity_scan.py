"""Symbol determinants of D_k over a grid of dimensions and random directions.

Each determinant is compared with the product of the closed-form eigenvalues;
m = 4 is included to show the singular case.
"""
import argparse
import random
from dataclasses import dataclass, field
from typing import List

from hsl.kernelcheck import ellipticity_check, random_direction, symbol_eigenvalues


@dataclass
class ScanConfig:
    ms: List[int] = field(default_factory=lambda: [4, 5, 6, 7])
    ks: List[int] = field(default_factory=lambda: [1, 2, 3])
    directions: int = 5
    seed: int = 0


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, nargs="+", default=[4, 5, 6, 7])
    ap.add_argument("--k", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--directions", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args(argv)
    cfg = ScanConfig(a.m, a.k, a.directions, a.seed)
    rng = random.Random(cfg.seed)
    for m in cfg.ms:
        for k in cfg.ks:
            eig = ", ".join(f"{lam}^{mult}" for lam, mult in symbol_eigenvalues(m, k, 1))
            reps = [ellipticity_check(m, k)] + [ellipticity_check(m, k, random_direction(m, rng))
                                               for _ in range(cfg.directions)]
            zero = sum(1 for r in reps if r.determinant == 0)
            agree = all(r.consistent for r in reps)
            print(f"m={m} k={k}: det(e1) = {reps[0].determinant}; singular {zero}/{len(reps)}; "
                  f"matches eigenvalue product: {agree}; eigenvalues at |x0| = 1: {eig}")


if __name__ == "__main__":
    main()
