"""Four-block decomposition of ker_l D_k (x) S for even m.

The blocks are ker_l R_k, x ker_{l-1} R_k, u ker_l R_{k-1} and an inverted factor
applied to the twistor image of ker_{l-1} R_{k-1}.  The last factor is either the
inverted Laplacian ("exact", "printed") or the inverted twistor ("twistor").
"""
import argparse
import time
from dataclasses import dataclass

from hsl.rscheck import rs_kernel_decomposition, verify_block_identities


@dataclass
class RSConfig:
    m: int = 6
    k: int = 1
    l: int = 1
    embedding: str = "exact"
    identities: bool = False


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=6)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--l", type=int, default=1)
    ap.add_argument("--embedding", choices=("exact", "printed", "twistor"), nargs="+",
                    default=["exact", "twistor"])
    ap.add_argument("--identities", action="store_true", help="also check the block identities")
    a = ap.parse_args(argv)
    for emb in a.embedding:
        cfg = RSConfig(a.m, a.k, a.l, emb, a.identities)
        t = time.perf_counter()
        rep = rs_kernel_decomposition(cfg.m, cfg.k, cfg.l, cfg.embedding)
        print(rep.summary(), f"[{time.perf_counter() - t:.1f} s]")
    if a.identities and a.k >= 1:
        r = verify_block_identities(a.m, a.k, a.l)
        print("block identities:", {n: ("zero" if i is None else f"fails at {i}") for n, i in r.results.items()})


if __name__ == "__main__":
    main()
