"""Re-derive the commutator tables by interpolation and freeze them into the package."""
import argparse
import time
from pathlib import Path

import hsl.opalgebra as opalgebra
from hsl.opalgebra.derive import freeze


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(opalgebra.__file__).parent,
                    help="directory receiving the JSON tables (default: the installed package)")
    args = ap.parse_args()
    t = time.time()
    for name in freeze(args.out):
        print(f"wrote {args.out / name}")
    print(f"done in {time.time() - t:.1f} s")


if __name__ == "__main__":
    main()
