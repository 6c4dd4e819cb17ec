"""Named complexes shipped with the tool, each with an exact rational embedding."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .complex import (
    SimplicialComplex,
    boundary_simplex,
    cone,
    cross_polytope_boundary,
    klein_bottle,
    standard_simplex,
    torus_7,
    wedge,
)
from .subdivision import EmbeddedComplex, Point, standard_embedding, vertex_embedding


def _delta(n: int):
    return lambda: (standard_simplex(n), standard_embedding(n))


def _sphere(k: int):
    # boundary of Delta_k, sitting on the standard embedding of Delta_k
    return lambda: (boundary_simplex(k - 1), standard_embedding(k))


def _cross(n: int):
    def build():
        K = cross_polytope_boundary(n)
        coords: dict[int, Point] = {}
        for k in range(n + 1):
            e = tuple(Fraction(int(i == k)) for i in range(n + 1))
            coords[2 * k] = e
            coords[2 * k + 1] = tuple(-c for c in e)
        return K, coords

    return build


def _generic(builder: Callable[[], SimplicialComplex]):
    def build():
        K = builder()
        return K, vertex_embedding(K)

    return build


def _disc():
    K = cone(boundary_simplex(1))
    coords = dict(standard_embedding(2))
    coords[3] = (Fraction(1, 3), Fraction(1, 3))
    return K, coords


CORPUS: dict[str, Callable[[], tuple[SimplicialComplex, dict[int, Point]]]] = {}
for _n in range(0, 5):
    CORPUS[f"delta-{_n}"] = _delta(_n)
for _k in range(2, 8):
    CORPUS[f"boundary-delta-{_k}"] = _sphere(_k)
for _n in range(1, 6):
    CORPUS[f"cross-polytope-{_n}"] = _cross(_n)
CORPUS["torus-7"] = _generic(torus_7)
CORPUS["klein-bottle"] = _generic(klein_bottle)
CORPUS["disc"] = _disc
CORPUS["wedge-circles"] = _generic(lambda: wedge(boundary_simplex(1), boundary_simplex(1)))
CORPUS["wedge-spheres"] = _generic(lambda: wedge(boundary_simplex(2), boundary_simplex(2)))

ALIASES = {"octahedron": "cross-polytope-2", "delta1": "delta-1", "delta2": "delta-2", "delta3": "delta-3"}

# closed (homology) manifolds among the entries
MANIFOLDS = [f"boundary-delta-{k}" for k in range(2, 8)] + [f"cross-polytope-{n}" for n in range(1, 6)] + ["torus-7", "klein-bottle"]
NEGATIVES = ["delta-2", "disc", "wedge-circles"]


def names() -> list[str]:
    return sorted(CORPUS) + sorted(ALIASES)


def get(name: str) -> tuple[SimplicialComplex, dict[int, Point]]:
    key = ALIASES.get(name, name)
    if key not in CORPUS:
        raise KeyError(f"unknown corpus entry {name!r}; try `sdlab corpus list`")
    return CORPUS[key]()


def embedded(name: str) -> EmbeddedComplex:
    K, coords = get(name)
    return EmbeddedComplex(K, coords)
