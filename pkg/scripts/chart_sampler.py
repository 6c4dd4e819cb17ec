"""Monte Carlo through random chart words versus the exact volume integral.

    python3 scripts/chart_sampler.py --n 2 --depth 12 --samples 100000 --seed 20240611
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from sdlab.complex import standard_simplex
from sdlab.measures import PolynomialObservable, integrate_volume, phi_mc_integral
from sdlab.subdivision import EmbeddedComplex, standard_embedding


@dataclass
class Config:
    n: int = 2
    depth: int = 12
    samples: int = 100_000
    seed: int = 20240611


def run(cfg: Config) -> None:
    E = EmbeddedComplex(standard_simplex(cfg.n), standard_embedding(cfg.n))
    for label, power in (("x", 1), ("x^2", 2)):
        phi = PolynomialObservable.coordinate(cfg.n, 0, power)
        target = integrate_volume(E, phi)
        res = phi_mc_integral(cfg.n, cfg.depth, cfg.samples, phi, cfg.seed)
        z = abs(float(res.mean - target)) / res.stderr
        print(f"phi={label:<4} mean {float(res.mean):.6f}  exact {target} = {float(target):.6f}  stderr {res.stderr:.2e}  z {z:.2f}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f in ("n", "depth", "samples", "seed"):
        ap.add_argument(f"--{f}", type=int, default=getattr(Config, f))
    a = ap.parse_args()
    run(Config(a.n, a.depth, a.samples, a.seed))


if __name__ == "__main__":
    main()
