"""Survey the kernel decomposition of D_k under the three embeddings.

Prints one row per (m, k, l, embedding) with the block ranks, the total rank and
the nullity, and writes the rows as CSV if --csv is given.
"""
import argparse
import csv
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import List

from hsl.kernelcheck import EMBEDDINGS, decomposition_check


@dataclass
class SurveyConfig:
    ms: List[int] = field(default_factory=lambda: [5, 6])
    ks: List[int] = field(default_factory=lambda: [1, 2])
    ls: List[int] = field(default_factory=lambda: [1, 2, 3])
    embeddings: List[str] = field(default_factory=lambda: list(EMBEDDINGS))
    csv_path: str = ""


def survey(cfg: SurveyConfig):
    rows = []
    for m in cfg.ms:
        for k in cfg.ks:
            for l in cfg.ls:
                if l < k:
                    continue
                for emb in cfg.embeddings:
                    t = time.perf_counter()
                    rep = decomposition_check(m, k, l, emb)
                    rows.append({
                        "m": m, "k": k, "l": l, "embedding": emb,
                        "blocks": " ".join(f"({b.i},{b.j}):{b.image_rank}/{b.size}" for b in rep.blocks),
                        "annihilated": rep.annihilated, "rank": rep.rank, "nullity": rep.nullity,
                        "ok": rep.ok, "seconds": round(time.perf_counter() - t, 2),
                    })
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, nargs="+", default=[5, 6])
    ap.add_argument("--k", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--l", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--embedding", nargs="+", choices=EMBEDDINGS, default=list(EMBEDDINGS))
    ap.add_argument("--csv", default="")
    a = ap.parse_args(argv)
    cfg = SurveyConfig(a.m, a.k, a.l, a.embedding, a.csv)
    rows = survey(cfg)
    for r in rows:
        print(f"m={r['m']} k={r['k']} l={r['l']} {r['embedding']:>8}: rank {r['rank']:>4}/{r['nullity']:<4} "
              f"annihilated={r['annihilated']!s:5} {'ok' if r['ok'] else 'DEFICIENT'}  {r['blocks']}")
    if cfg.csv_path:
        with open(cfg.csv_path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    print(f"# config {asdict(cfg)}", file=sys.stderr)


if __name__ == "__main__":
    main()
