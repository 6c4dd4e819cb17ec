"""Error table for gamma^d_{p,Delta_2} against q_{p,2} dvol, d = 1..dmax.

    python3 scripts/gamma_convergence.py --dmax 6
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass
from math import factorial

from sdlab.complex import standard_simplex
from sdlab.measures import PolynomialObservable, gamma_sums, integrate_volume, q_coefficient
from sdlab.subdivision import EmbeddedComplex, standard_embedding


@dataclass
class Config:
    dmax: int = 6
    n: int = 2


def observables(n: int) -> dict[str, PolynomialObservable]:
    x = PolynomialObservable.coordinate(n, 0)
    out = {"1": PolynomialObservable.constant(n), "x": x, "x^2": PolynomialObservable.coordinate(n, 0, 2)}
    if n >= 2:
        out["x+y"] = x + PolynomialObservable.coordinate(n, 1)
    return out


def run(cfg: Config) -> None:
    E = EmbeddedComplex(standard_simplex(cfg.n), standard_embedding(cfg.n))
    phis = observables(cfg.n)
    print(f"{'p':>2} {'phi':>4} {'d':>2} {'error':>12} {'ratio':>8}")
    t0 = time.perf_counter()
    for p in range(cfg.n + 1):
        targets = [q_coefficient(p, cfg.n) * integrate_volume(E, phi) for phi in phis.values()]
        prev: list = [None] * len(phis)
        for d in range(1, cfg.dmax + 1):
            sums = gamma_sums(E, d, p, list(phis.values()))
            for i, (name, total) in enumerate(zip(phis, sums.total)):
                err = abs(total / factorial(cfg.n + 1) ** d - targets[i])
                ratio = f"{float(err / prev[i]):8.4f}" if prev[i] else "       -"
                print(f"{p:>2} {name:>4} {d:>2} {float(err):12.4e} {ratio}")
                prev[i] = err
    print(f"# {time.perf_counter() - t0:.1f}s")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dmax", type=int, default=Config.dmax)
    ap.add_argument("--n", type=int, default=Config.n)
    a = ap.parse_args()
    run(Config(a.dmax, a.n))


if __name__ == "__main__":
    main()
