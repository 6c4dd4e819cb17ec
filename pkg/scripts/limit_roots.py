"""Limit coefficients q_{p,n} and the real roots of T q_n^inf(T), n = 1..nmax.

    python3 scripts/limit_roots.py --nmax 8
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from sdlab.spectral import limit_roots, q_partition, q_solve


@dataclass
class Config:
    nmax: int = 8
    partition_max: int = 9


def run(cfg: Config) -> None:
    for n in range(1, cfg.nmax + 1):
        q = q_solve(n)
        agree = q == q_partition(n) if n <= cfg.partition_max else None
        iso = limit_roots(n)
        roots = iso.midpoints()
        sym = max(abs(float(roots[i] + roots[n - i] + 1)) for i in range(n + 1))
        print(f"n={n}  q = ({', '.join(str(x) for x in q)})  partition agrees: {agree}")
        print(f"      roots: {', '.join(f'{float(r):.12f}' for r in roots)}")
        print(f"      simple: {all(m == 1 for m in iso.multiplicities)}  max |r_i + r_(n-i) + 1| = {sym:.1e}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nmax", type=int, default=Config.nmax)
    run(Config(ap.parse_args().nmax))


if __name__ == "__main__":
    main()
