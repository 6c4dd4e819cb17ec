"""Finite simplicial complexes: ingestion, faces, links, face vectors, builders."""

from __future__ import annotations

import logging
from collections import Counter
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Iterable, Sequence

from .polynomial import RationalPolynomial

log = logging.getLogger(__name__)

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    pass


def simplex(vertices: Iterable[int]) -> Simplex:
    """Canonical (strictly increasing) form of a vertex set."""
    vs = list(vertices)
    if not vs:
        raise ComplexError("empty simplex")
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ComplexError(f"vertex labels must be non-negative integers, got {v!r}")
    s = tuple(sorted(vs))
    if len(set(s)) != len(s):
        raise ComplexError(f"repeated vertex in {vs}")
    return s


def is_face(sigma: Simplex, tau: Simplex) -> bool:
    return set(sigma).issubset(tau)


class SimplicialComplex:
    """Facet-generated complex; faces of each dimension are materialized lazily.

    Instances are treated as immutable. The empty complex (no facets) has
    dimension -1 and is what a link of a facet evaluates to.
    """

    def __init__(self, facets: Iterable[Simplex] = ()):
        fs = sorted(set(facets), key=lambda s: (len(s), s))
        # drop facets that are faces of larger ones
        maximal: list[Simplex] = []
        for s in reversed(fs):
            ss = set(s)
            if not any(ss < set(m) for m in maximal):
                maximal.append(s)
        self.facets: tuple[Simplex, ...] = tuple(sorted(maximal, key=lambda s: (len(s), s)))
        self.dim: int = max((len(s) - 1 for s in self.facets), default=-1)
        self._faces: list[tuple[Simplex, ...]] | None = None

    @classmethod
    def empty(cls) -> "SimplicialComplex":
        return cls(())

    def _materialize(self) -> list[tuple[Simplex, ...]]:
        if self._faces is None:
            layers: list[set[Simplex]] = [set() for _ in range(self.dim + 1)]
            for f in self.facets:
                for k in range(1, len(f) + 1):
                    layers[k - 1].update(combinations(f, k))
            self._faces = [tuple(sorted(layer)) for layer in layers]
        return self._faces

    def faces(self, p: int) -> tuple[Simplex, ...]:
        """All p-simplices, sorted lexicographically."""
        if p < 0 or p > self.dim:
            return ()
        return self._materialize()[p]

    def all_faces(self) -> list[Simplex]:
        """Every face, ordered by (dimension, vertex tuple)."""
        return [s for p in range(self.dim + 1) for s in self.faces(p)]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for (v,) in self.faces(0))

    def __contains__(self, sigma: Sequence[int]) -> bool:
        s = tuple(sorted(sigma))
        return any(set(s).issubset(f) for f in self.facets)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.facets == other.facets

    def __hash__(self) -> int:
        return hash(self.facets)

    def __repr__(self) -> str:
        return f"SimplicialComplex(dim={self.dim}, f={self.face_vector()})"

    def is_pure(self) -> bool:
        return all(len(f) - 1 == self.dim for f in self.facets)

    def face_vector(self) -> tuple[int, ...]:
        return face_vector(self)


def build_from_facets(facets: Iterable[Iterable[int]]) -> SimplicialComplex:
    """Validate and canonicalize a facet list; non-maximal facets are absorbed."""
    canon = [simplex(f) for f in facets]
    if not canon:
        raise ComplexError("empty facet list")
    return SimplicialComplex(canon)


def face_vector(K: SimplicialComplex) -> tuple[int, ...]:
    return tuple(len(K.faces(p)) for p in range(K.dim + 1))


def face_polynomial(K: SimplicialComplex) -> RationalPolynomial:
    """q_K(T) = sum_p f_p(K) T^p."""
    return RationalPolynomial(face_vector(K))


def euler_characteristic(K: SimplicialComplex) -> int:
    return sum((-1) ** p * f for p, f in enumerate(face_vector(K)))


def link(sigma: Iterable[int], K: SimplicialComplex) -> SimplicialComplex:
    """Lk(sigma, K): faces disjoint from sigma whose join with sigma lies in K."""
    s = tuple(sorted(sigma))
    if s not in K:
        raise ComplexError(f"{s} is not a face of the complex")
    ss = set(s)
    rests = [tuple(v for v in f if v not in ss) for f in K.facets if ss.issubset(f)]
    return SimplicialComplex(r for r in rests if r)


def star_facets(sigma: Simplex, K: SimplicialComplex) -> list[Simplex]:
    return [f for f in K.facets if set(sigma).issubset(f)]


def is_closed_pseudomanifold(K: SimplicialComplex) -> bool:
    """True iff K is pure and every codimension-one face lies in exactly two facets."""
    if K.dim < 1:
        return False
    if not K.is_pure():
        log.warning("complex is not pure; not a closed pseudo-manifold")
        return False
    counts: Counter[Simplex] = Counter()
    for f in K.facets:
        for ridge in combinations(f, K.dim):
            counts[ridge] += 1
    bad = [r for r, c in counts.items() if c != 2]
    if bad:
        log.debug("ridge %s lies in %d facets", bad[0], counts[bad[0]])
    return not bad


# builders -----------------------------------------------------------------


def standard_simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex([tuple(range(n + 1))])


def boundary_simplex(n: int) -> SimplicialComplex:
    """The n-sphere triangulated as the boundary of the (n+1)-simplex."""
    verts = range(n + 2)
    return SimplicialComplex(combinations(verts, n + 1))


def cross_polytope_boundary(n: int) -> SimplicialComplex:
    """Join of n+1 copies of S^0; vertex pair k is {2k, 2k+1}."""
    pairs = [(2 * k, 2 * k + 1) for k in range(n + 1)]
    return SimplicialComplex(tuple(sorted(choice)) for choice in product(*pairs))


def _fresh(K: SimplicialComplex, k: int) -> list[int]:
    top = max(K.vertices, default=-1)
    return [top + 1 + i for i in range(k)]


def cone(K: SimplicialComplex) -> SimplicialComplex:
    (apex,) = _fresh(K, 1)
    return SimplicialComplex(f + (apex,) for f in K.facets)


def suspension(K: SimplicialComplex) -> SimplicialComplex:
    a, b = _fresh(K, 2)
    return SimplicialComplex([f + (a,) for f in K.facets] + [f + (b,) for f in K.facets])


def wedge(K: SimplicialComplex, L: SimplicialComplex) -> SimplicialComplex:
    """Glue L onto K along vertex 0 of each; L's other vertices are relabeled."""
    shift = max(K.vertices) + 1
    lv = L.vertices
    relabel = {v: (0 if v == lv[0] else v + shift) for v in lv}
    return SimplicialComplex(
        list(K.facets) + [tuple(sorted(relabel[v] for v in f)) for f in L.facets]
    )


def torus_7() -> SimplicialComplex:
    """Minimal 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7."""
    tris = []
    for i in range(7):
        tris.append(simplex([i, (i + 1) % 7, (i + 3) % 7]))
        tris.append(simplex([i, (i + 2) % 7, (i + 3) % 7]))
    return SimplicialComplex(tris)


def grid_surface(rows: int, cols: int, flip: bool) -> SimplicialComplex:
    """Quotient of a rows x cols grid of squares: a torus, or a Klein bottle if ``flip``.

    The column direction is glued straight; the row direction is glued with a
    reflection when ``flip`` is set. Needs rows, cols >= 3 to stay simplicial.
    """

    def vid(i: int, j: int) -> int:
        if i == rows:
            i = 0
            if flip:
                j = (cols - j) % cols
        return i * cols + (j % cols)

    tris = []
    for i in range(rows):
        for j in range(cols):
            a, b = vid(i, j), vid(i, j + 1)
            c, d = vid(i + 1, j), vid(i + 1, j + 1)
            tris.append(simplex([a, b, d]))
            tris.append(simplex([a, c, d]))
    return SimplicialComplex(tris)


def klein_bottle() -> SimplicialComplex:
    return grid_surface(3, 3, flip=True)


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Affine rank of a point set over Q (Gaussian elimination on differences)."""
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[Fraction(x) - Fraction(y) for x, y in zip(p, base)] for p in points[1:]]
    rank = 0
    ncols = len(base)
    for c in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][c]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                factor = rows[r][c] / pv
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def f_simplex(n: int, p: int) -> int:
    """f_p(Delta_n) = binom(n+1, p+1); f_{-1} = 1."""
    return comb(n + 1, p + 1)
