"""Barycentric subdivision: materialized, iterated, streamed; barycenters; dual blocks."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import factorial, lcm
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .complex import ComplexError, Simplex, SimplicialComplex, affine_rank, face_vector
from .spectral import lam, transfer

Chain = tuple[Simplex, ...]
Point = tuple[Fraction, ...]

DEFAULT_MAX_CELLS = 10**7


class CapExceeded(RuntimeError):
    def __init__(self, estimate: int, cap: int):
        super().__init__(
            f"estimated {estimate} simplices exceeds the cap of {cap}; "
            "lower the depth or raise --max-cells / SDLAB_MAX_CELLS"
        )
        self.estimate = estimate
        self.cap = cap


def max_cells(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("SDLAB_MAX_CELLS")
    return int(env) if env else DEFAULT_MAX_CELLS


def _guard(estimate: int, cap: int | None) -> None:
    limit = max_cells(cap)
    if estimate > limit:
        raise CapExceeded(estimate, limit)


def is_chain(links: Sequence[Simplex]) -> bool:
    return all(set(a) < set(b) for a, b in zip(links, links[1:]))


@dataclass(frozen=True)
class SdComplex:
    parent: SimplicialComplex
    vertex_table: Mapping[Simplex, int]
    complex: SimplicialComplex

    def chain_of(self, face: Simplex) -> Chain:
        """Parent chain encoded by a simplex of the subdivision."""
        inverse = self._inverse()
        return tuple(inverse[v] for v in face)

    def _inverse(self) -> dict[int, Simplex]:
        return {v: s for s, v in self.vertex_table.items()}


def barycentric_subdivision(K: SimplicialComplex) -> SdComplex:
    """Flag complex of K; new vertex ids follow the (dim, tuple) order of faces."""
    table = {s: i for i, s in enumerate(K.all_faces())}
    facets = []
    for F in K.facets:
        for perm in permutations(F):
            facets.append(tuple(table[tuple(sorted(perm[: k + 1]))] for k in range(len(F))))
    return SdComplex(K, table, SimplicialComplex(facets))


def iterate_subdivision(K: SimplicialComplex, d: int, cap: int | None = None) -> SimplicialComplex:
    if d < 0:
        raise ValueError("depth must be >= 0")
    n = K.dim
    _guard(len(K.facets) * factorial(n + 1) ** d if n >= 0 else 0, cap)
    for _ in range(d):
        K = barycentric_subdivision(K).complex
    return K


# geometry -------------------------------------------------------------------


@dataclass(frozen=True)
class EmbeddedComplex:
    complex: SimplicialComplex
    coords: Mapping[int, Point]

    def __post_init__(self) -> None:
        missing = [v for v in self.complex.vertices if v not in self.coords]
        if missing:
            raise ComplexError(f"missing coordinates for vertices {missing}")
        dims = {len(self.coords[v]) for v in self.complex.vertices}
        if len(dims) > 1:
            raise ComplexError("coordinates have inconsistent ambient dimension")
        for f in self.complex.facets:
            if affine_rank([self.coords[v] for v in f]) != len(f) - 1:
                raise ComplexError(f"degenerate facet {f}")

    @property
    def ambient(self) -> int:
        v = self.complex.vertices[0]
        return len(self.coords[v])

    def point(self, v: int) -> Point:
        return self.coords[v]


def standard_embedding(n: int) -> dict[int, Point]:
    """Delta_n with vertex 0 at the origin and vertex i at the basis vector e_i."""
    out = {0: tuple(Fraction(0) for _ in range(n))}
    for i in range(1, n + 1):
        out[i] = tuple(Fraction(int(k == i - 1)) for k in range(n))
    return out


def vertex_embedding(K: SimplicialComplex) -> dict[int, Point]:
    """Generic embedding: vertex number k (in sorted order) goes to e_k in R^#V."""
    verts = K.vertices
    m = len(verts)
    return {v: tuple(Fraction(int(k == i)) for k in range(m)) for i, v in enumerate(verts)}


def _mean(points: Sequence[Point]) -> Point:
    k = len(points)
    return tuple(sum(c) / k for c in zip(*points))


def barycenter(obj: Simplex | Chain, E: EmbeddedComplex) -> Point:
    """Barycenter of a simplex, or of a chain of simplices by nested averaging."""
    if not obj:
        raise ComplexError("empty simplex")
    if isinstance(obj[0], tuple):
        return _mean([barycenter(s, E) for s in obj])
    if tuple(obj) not in E.complex:
        raise ComplexError(f"{obj} is not a face of the embedded complex")
    return _mean([E.point(v) for v in obj])


def subdivide_embedded(E: EmbeddedComplex) -> EmbeddedComplex:
    sd = barycentric_subdivision(E.complex)
    coords = {v: barycenter(s, E) for s, v in sd.vertex_table.items()}
    return EmbeddedComplex(sd.complex, coords)


# dual blocks ----------------------------------------------------------------


def dual_block_face_vector(sigma: Simplex, K: SimplicialComplex) -> tuple[int, ...]:
    """counts[l] = number of chains sigma < tau_1 < ... < tau_l in K."""
    sigma = tuple(sorted(sigma))
    if sigma not in K:
        raise ComplexError(f"{sigma} is not a face of the complex")
    s = set(sigma)
    cofaces = [t for t in K.all_faces() if s < set(t)]
    # chains ending at t with l steps, processed by increasing dimension
    ending: dict[Simplex, list[int]] = {}
    depth = K.dim - len(sigma) + 1
    counts = [0] * (depth + 1)
    counts[0] = 1
    for t in cofaces:
        row = [0] * (depth + 1)
        row[1] = 1
        ts = set(t)
        for u, urow in ending.items():
            if len(u) < len(t) and set(u) < ts:
                for l in range(1, depth):
                    row[l + 1] += urow[l]
        ending[t] = row
        for l in range(1, depth + 1):
            counts[l] += row[l]
    return tuple(counts)


def dual_block_via_links(sigma: Simplex, K: SimplicialComplex) -> tuple[int, ...]:
    """Same counts through sum_h lambda(h+1, l) f_h(Lk(sigma, K))."""
    from .complex import link

    fl = face_vector(link(sigma, K))
    depth = K.dim - len(sigma) + 1
    out = [1]
    for l in range(1, depth + 1):
        out.append(sum(lam(h + 1, l) * fl[h] for h in range(l - 1, len(fl))))
    return tuple(out)


# streaming ------------------------------------------------------------------


@dataclass(frozen=True)
class StreamedSimplex:
    """A simplex of Sd^d(K) interior to the face ``carrier`` of K.

    Vertex ``i`` has barycentric coordinates ``points[i] / scale`` with
    respect to the vertices of ``carrier``.
    """

    carrier: Simplex
    points: tuple[tuple[int, ...], ...]
    scale: int

    @property
    def dim(self) -> int:
        return len(self.points) - 1

    def barycentric_barycenter(self, subset: Iterable[int] | None = None) -> Point:
        idx = range(len(self.points)) if subset is None else list(subset)
        k = len(idx)
        den = k * self.scale
        return tuple(Fraction(sum(self.points[i][c] for i in idx), den) for c in range(len(self.carrier)))

    def vertex_keys(self) -> tuple[tuple[Simplex, tuple[Fraction, ...]], ...]:
        """Global identifiers of the vertices (support face, exact coordinates)."""
        out = []
        for pt in self.points:
            support = tuple(self.carrier[i] for i, x in enumerate(pt) if x)
            out.append((support, tuple(Fraction(x, self.scale) for x in pt if x)))
        return tuple(out)


@lru_cache(maxsize=None)
def interior_chains(k: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Chains of nonempty subsets of {0..k} ending at the full set.

    These are the simplices of Sd(Delta_k) interior to Delta_k.
    """
    full = tuple(range(k + 1))
    out = []

    def grow(chain: list[tuple[int, ...]]) -> None:
        head = chain[0]
        if len(head) > 1:
            for r in range(1, len(head)):
                for sub in combinations(head, r):
                    chain.insert(0, sub)
                    out.append(tuple(chain))
                    grow(chain)
                    chain.pop(0)

    out.append((full,))
    grow([full])
    return tuple(sorted(out, key=lambda c: (len(c), c)))


def _interior(verts: list[tuple[int, ...]], scale: int, e: int, p: int | None) -> Iterator[tuple[list[tuple[int, ...]], int]]:
    k = len(verts) - 1
    if e == 0:
        if p is None or k == p:
            yield verts, scale
        return
    L = lcm(*range(1, k + 2))
    for chain in interior_chains(k):
        if p is not None and len(chain) - 1 < p:
            continue
        new = []
        for sub in chain:
            w = L // len(sub)
            new.append(tuple(sum(verts[c][i] for c in sub) * w for i in range(len(verts[0]))))
        yield from _interior(new, scale * L, e - 1, p)


def iter_faces(K: SimplicialComplex, d: int, p: int | None = None, cap: int | None = None) -> Iterator[StreamedSimplex]:
    """Yield the p-simplices of Sd^d(K) (all dimensions when p is None).

    Every simplex of Sd^d(K) is interior to exactly one face of K, so the
    enumeration walks carriers and recursively subdivides only interiors;
    no global face table is kept.
    """
    if d < 0:
        raise ValueError("depth must be >= 0")
    n = K.dim
    fd = transfer(face_vector(K), n, d) if n >= 0 else ()
    _guard(sum(fd) if p is None else (fd[p] if 0 <= p <= n else 0), cap)
    for carrier in K.all_faces():
        m = len(carrier)
        if p is not None and m - 1 < p:
            continue
        ident = [tuple(int(i == j) for j in range(m)) for i in range(m)]
        for verts, scale in _interior(ident, 1, d, p):
            yield StreamedSimplex(carrier, tuple(verts), scale)


def stream_faces(
    K: SimplicialComplex,
    d: int,
    p: int,
    visitor: Callable[[StreamedSimplex], None],
    cap: int | None = None,
) -> int:
    """Call ``visitor`` once per p-simplex of Sd^d(K); returns the visit count."""
    count = 0
    for s in iter_faces(K, d, p, cap):
        visitor(s)
        count += 1
    return count


def to_ambient(E: EmbeddedComplex, carrier: Simplex, bary: Sequence[Fraction]) -> Point:
    pts = [E.point(v) for v in carrier]
    return tuple(sum(b * pt[c] for b, pt in zip(bary, pts)) for c in range(E.ambient))
