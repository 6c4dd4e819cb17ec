"""Link and dual-block densities on a corpus complex, with their limits.

    python3 scripts/link_and_block_density.py --name delta-2 --p 0 --dmax 5
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from sdlab import corpus
from sdlab.measures import PolynomialObservable, converge_blocks, converge_links


@dataclass
class Config:
    name: str = "delta-2"
    p: int = 0
    dmax: int = 5


def show(reps) -> None:
    for r in reps:
        print(f"{r.quantity}  target {r.target}")
        for row in r.rows():
            ratio = "-" if row["ratio"] is None else f"{float(row['ratio']):.4f}"
            print(f"   d={row['d']}  value {float(row['value']):.10f}  error {float(row['error']):.3e}  ratio {ratio}")


def run(cfg: Config) -> None:
    E = corpus.embedded(cfg.name)
    one = PolynomialObservable.constant(E.ambient)
    ds = range(1, cfg.dmax + 1)
    if cfg.p < E.complex.dim:
        show(converge_links(E, cfg.p, ds, one))
    show(converge_blocks(E, cfg.p, ds, one))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--name", default=Config.name)
    ap.add_argument("--p", type=int, default=Config.p)
    ap.add_argument("--dmax", type=int, default=Config.dmax)
    a = ap.parse_args()
    run(Config(a.name, a.p, a.dmax))


if __name__ == "__main__":
    main()
