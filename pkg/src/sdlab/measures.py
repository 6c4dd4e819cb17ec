"""Canonical measures on a subdivided complex and their convergence harnesses.

All integrals are exact rationals: observables are polynomials with rational
coefficients, atoms sit at exact barycenters, and the volume measure is
integrated monomial by monomial in barycentric coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import factorial, prod
from typing import Callable, Iterable, Iterator, Mapping, Sequence

import numpy as np

from .complex import SimplicialComplex, face_vector, f_simplex
from .spectral import lam, q_solve, transfer
from .subdivision import EmbeddedComplex, Point, iter_faces, to_ambient

Exponent = tuple[int, ...]


class PolynomialObservable:
    """Multivariate polynomial in the ambient coordinates, rational coefficients."""

    def __init__(self, ambient: int, terms: Mapping[Exponent, Fraction] | Iterable[tuple[Exponent, Fraction]]):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, Fraction] = {}
        for exp, coef in items:
            exp = tuple(int(a) for a in exp)
            if len(exp) != ambient or any(a < 0 for a in exp):
                raise ValueError(f"exponent {exp} does not fit ambient dimension {ambient}")
            acc[exp] = acc.get(exp, Fraction(0)) + Fraction(coef)
        self.ambient = ambient
        self.terms = {e: c for e, c in sorted(acc.items()) if c != 0}

    @classmethod
    def constant(cls, ambient: int, c: Fraction | int = 1) -> "PolynomialObservable":
        return cls(ambient, {(0,) * ambient: Fraction(c)})

    @classmethod
    def coordinate(cls, ambient: int, j: int, power: int = 1) -> "PolynomialObservable":
        exp = tuple(power if k == j else 0 for k in range(ambient))
        return cls(ambient, {exp: Fraction(1)})

    def __add__(self, other: "PolynomialObservable") -> "PolynomialObservable":
        return PolynomialObservable(self.ambient, list(self.terms.items()) + list(other.terms.items()))

    def __call__(self, x: Sequence[Fraction]) -> Fraction:
        if len(x) != self.ambient:
            raise ValueError(f"point of dimension {len(x)}, observable expects {self.ambient}")
        total = Fraction(0)
        for exp, coef in self.terms.items():
            total += coef * prod(xi**a for xi, a in zip(x, exp) if a)
        return total

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "terms": [{"exp": list(e), "coef": str(c)} for e, c in self.terms.items()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "PolynomialObservable":
        try:
            m = int(data["ambient"])
            terms = [(tuple(t["exp"]), Fraction(str(t["coef"]))) for t in data["terms"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed observable: {exc}") from exc
        return cls(m, terms)

    def __repr__(self) -> str:
        return f"PolynomialObservable({self.to_json()})"


# volume measure -------------------------------------------------------------


def _poly_mul(a: dict[Exponent, Fraction], b: dict[Exponent, Fraction]) -> dict[Exponent, Fraction]:
    out: dict[Exponent, Fraction] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return out


def pullback_to_barycentric(phi: PolynomialObservable, vertices: Sequence[Point]) -> dict[Exponent, Fraction]:
    """Expand phi(sum_i t_i v_i) as a polynomial in the barycentric coordinates t."""
    k = len(vertices)
    unit = {(0,) * k: Fraction(1)}
    linear = []
    for j in range(phi.ambient):
        form = {}
        for i, v in enumerate(vertices):
            if v[j] != 0:
                form[tuple(int(r == i) for r in range(k))] = Fraction(v[j])
        linear.append(form)
    out: dict[Exponent, Fraction] = {}
    for exp, coef in phi.terms.items():
        acc = dict(unit)
        for j, a in enumerate(exp):
            for _ in range(a):
                acc = _poly_mul(acc, linear[j])
        for e, c in acc.items():
            out[e] = out.get(e, Fraction(0)) + coef * c
    return {e: c for e, c in out.items() if c != 0}


def simplex_monomial_integral(exp: Exponent) -> Fraction:
    """Integral of prod t_i^a_i over a simplex of unit mass: n! prod a_i! / (n + |a|)!."""
    n = len(exp) - 1
    return Fraction(factorial(n) * prod(factorial(a) for a in exp), factorial(n + sum(exp)))


def integrate_volume(E: EmbeddedComplex, phi: PolynomialObservable) -> Fraction:
    """Integral of phi against dvol_K (each top simplex has mass 1)."""
    if phi.ambient != E.ambient:
        raise ValueError("observable and embedding have different ambient dimensions")
    K = E.complex
    total = Fraction(0)
    for F in K.facets:
        if len(F) - 1 != K.dim:
            continue
        pulled = pullback_to_barycentric(phi, [E.point(v) for v in F])
        total += sum(c * simplex_monomial_integral(e) for e, c in pulled.items())
    return total


# atomic measures ------------------------------------------------------------


@dataclass
class AtomicMeasure:
    """Weighted Dirac atoms; ``atoms`` is re-iterable (a factory, not a list)."""

    factory: Callable[[], Iterator[tuple[Point, Fraction]]]
    total_mass: Fraction

    def __iter__(self) -> Iterator[tuple[Point, Fraction]]:
        return self.factory()


def _scale(K: SimplicialComplex, d: int) -> int:
    return factorial(K.dim + 1) ** d


def gamma_measure(E: EmbeddedComplex, d: int, p: int, cap: int | None = None) -> AtomicMeasure:
    """gamma^d_{p,K}: an atom of weight 1/(n+1)!^d at each p-simplex barycenter of Sd^d(K)."""
    K = E.complex
    n = K.dim
    if not 0 <= p <= n:
        raise ValueError(f"p must lie in 0..{n}")
    w = Fraction(1, _scale(K, d))
    count = transfer(face_vector(K), n, d)[p]

    def atoms() -> Iterator[tuple[Point, Fraction]]:
        for s in iter_faces(K, d, p, cap):
            yield to_ambient(E, s.carrier, s.barycentric_barycenter()), w

    return AtomicMeasure(atoms, count * w)


def integrate_atomic(mu: Iterable[tuple[Point, Fraction]], phi: PolynomialObservable) -> Fraction:
    return sum((w * phi(x) for x, w in mu), Fraction(0))


@dataclass
class GammaSums:
    """Unnormalized sums of phi over atoms, split by carrier dimension."""

    total: list[Fraction]
    skeleton: list[Fraction]
    count: int
    skeleton_count: int


def gamma_sums(E: EmbeddedComplex, d: int, p: int, phis: Sequence[PolynomialObservable], cap: int | None = None) -> GammaSums:
    K = E.complex
    total = [Fraction(0)] * len(phis)
    skel = [Fraction(0)] * len(phis)
    count = skel_count = 0
    for s in iter_faces(K, d, p, cap):
        x = to_ambient(E, s.carrier, s.barycentric_barycenter())
        on_skeleton = len(s.carrier) - 1 < K.dim
        count += 1
        skel_count += on_skeleton
        for i, phi in enumerate(phis):
            v = phi(x)
            total[i] += v
            if on_skeleton:
                skel[i] += v
    return GammaSums(total, skel, count, skel_count)


# convergence reports --------------------------------------------------------


@dataclass
class ConvergenceReport:
    quantity: str
    target: Fraction
    provenance: str
    depths: list[int] = field(default_factory=list)
    values: list[Fraction] = field(default_factory=list)

    def add(self, d: int, value: Fraction) -> None:
        self.depths.append(d)
        self.values.append(value)

    @property
    def errors(self) -> list[Fraction]:
        return [abs(v - self.target) for v in self.values]

    @property
    def ratios(self) -> list[Fraction | None]:
        errs = self.errors
        out: list[Fraction | None] = [None]
        for a, b in zip(errs, errs[1:]):
            out.append(b / a if a else None)
        return out

    def error_at(self, d: int) -> Fraction:
        return self.errors[self.depths.index(d)]

    def strictly_decreasing(self, from_depth: int | None = None) -> bool:
        """True when errors strictly decrease, or are identically zero (exact at every depth)."""
        errs = [e for d, e in zip(self.depths, self.errors) if from_depth is None or d >= from_depth]
        if all(e == 0 for e in errs):
            return True
        return all(b < a for a, b in zip(errs, errs[1:]))

    def rows(self) -> list[dict]:
        return [
            {"d": d, "value": v, "target": self.target, "error": e, "ratio": r}
            for d, v, e, r in zip(self.depths, self.values, self.errors, self.ratios)
        ]


def q_coefficient(p: int, n: int) -> Fraction:
    return q_solve(n)[p]


def converge_gamma(
    E: EmbeddedComplex,
    p: int,
    d_range: Iterable[int],
    phi: PolynomialObservable,
    cap: int | None = None,
) -> ConvergenceReport:
    """Track int phi dgamma^d_{p,K} against q_{p,n} int phi dvol_K."""
    n = E.complex.dim
    target = q_coefficient(p, n) * integrate_volume(E, phi)
    rep = ConvergenceReport(f"gamma[p={p}]", target, "gamma^d_{p,K} -> q_{p,n} dvol_K")
    for d in d_range:
        s = gamma_sums(E, d, p, [phi], cap)
        rep.add(d, s.total[0] / _scale(E.complex, d))
    return rep


def skeleton_fraction(E: EmbeddedComplex, d: int, p: int, cap: int | None = None) -> Fraction:
    """Share of gamma^d_{p,K} mass carried by atoms on the (n-1)-skeleton of K."""
    s = gamma_sums(E, d, p, [], cap)
    return Fraction(s.skeleton_count, s.count)


def incidence_sums(
    E: EmbeddedComplex, d: int, p: int, top: int, phis: Sequence[PolynomialObservable], cap: int | None = None
) -> list[Fraction]:
    """sum over pairs (sigma < tau), dim sigma = p, dim tau = top, of phi(barycenter sigma).

    For each p-simplex sigma the number of such tau is f_{top-p-1}(Lk sigma),
    so this equals sum_sigma phi(sigma^) f_{top-p-1}(Lk(sigma, Sd^d K)).
    """
    K = E.complex
    acc = [Fraction(0)] * len(phis)
    for tau in iter_faces(K, d, top, cap):
        for sub in combinations(range(top + 1), p + 1):
            x = to_ambient(E, tau.carrier, tau.barycentric_barycenter(sub))
            for i, phi in enumerate(phis):
                acc[i] += phi(x)
    return acc


def link_density(E: EmbeddedComplex, p: int, d: int, phi: PolynomialObservable, cap: int | None = None) -> list[Fraction]:
    """Coefficients l = 0..n-p-1 of int phi(sigma^) q_{Lk(sigma)}(T) dgamma^d_{p,K}."""
    n = E.complex.dim
    if not 0 <= p < n:
        raise ValueError(f"p must lie in 0..{n - 1}")
    scale = _scale(E.complex, d)
    return [incidence_sums(E, d, p, p + l + 1, [phi], cap)[0] / scale for l in range(n - p)]


def link_targets(E: EmbeddedComplex, p: int, phi: PolynomialObservable) -> list[Fraction]:
    n = E.complex.dim
    q = q_solve(n)
    vol = integrate_volume(E, phi)
    return [q[p + l + 1] * f_simplex(p + l + 1, p) * vol for l in range(n - p)]


@lru_cache(maxsize=None)
def chains_between(size: int, steps: int) -> int:
    """Chains A_0 < A_1 < ... < A_steps of subsets from the empty set to a set of ``size``.

    Counted by direct enumeration of the intermediate subsets.
    """
    full = frozenset(range(size))

    def walk(current: frozenset, left: int) -> int:
        if left == 1:
            return 1 if current != full else 0
        rest = sorted(full - current)
        total = 0
        for r in range(1, len(rest)):
            for add in combinations(rest, r):
                total += walk(current | frozenset(add), left - 1)
        return total

    if steps == 0:
        return int(size == 0)
    return walk(frozenset(), steps)


def block_sums(
    E: EmbeddedComplex,
    p: int,
    d: int,
    phis: Sequence[PolynomialObservable],
    method: str = "chains",
    cap: int | None = None,
) -> list[list[Fraction]]:
    """Unnormalized block sums, one list of l = 0..n-p coefficients per observable."""
    K = E.complex
    n = K.dim
    if not 0 <= p <= n:
        raise ValueError(f"p must lie in 0..{n}")
    if method not in ("chains", "links"):
        raise ValueError("method must be 'chains' or 'links'")
    base = gamma_sums(E, d, p, phis, cap).total
    inc = [incidence_sums(E, d, p, p + h + 1, phis, cap) for h in range(n - p)]
    out = []
    for i in range(len(phis)):
        coeffs = [base[i]]
        for l in range(1, n - p + 1):
            acc = Fraction(0)
            for h in range(l - 1, n - p):
                w = chains_between(h + 1, l) if method == "chains" else lam(h + 1, l)
                acc += w * inc[h][i]
            coeffs.append(acc)
        out.append(coeffs)
    return out


def block_density(
    E: EmbeddedComplex,
    p: int,
    d: int,
    phi: PolynomialObservable,
    method: str = "chains",
    cap: int | None = None,
) -> list[Fraction]:
    """Coefficients l = 0..n-p of int phi(sigma^) q_{D(sigma)}(T) dgamma^d_{p,K}.

    f_l(D(sigma)) counts chains sigma < tau_1 < ... < tau_l. Grouping them by
    their last element tau, each pair (sigma, tau) with dim tau = p+h+1
    carries ``chains_between(h+1, l)`` chains (``method="chains"``), which the
    link route replaces by lambda(h+1, l) (``method="links"``).
    """
    scale = _scale(E.complex, d)
    return [c / scale for c in block_sums(E, p, d, [phi], method, cap)[0]]


def block_targets(E: EmbeddedComplex, p: int, phi: PolynomialObservable) -> list[Fraction]:
    n = E.complex.dim
    return [c * integrate_volume(E, phi) for c in block_target_coefficients(n, p)]


def block_target_coefficients(n: int, p: int) -> list[Fraction]:
    """sum_{h=l}^{n-p} q_{p+h,n} f_p(Delta_{p+h}) lambda(h, l), per unit volume."""
    q = q_solve(n)
    return [
        sum((q[p + h] * f_simplex(p + h, p) * lam(h, l) for h in range(l, n - p + 1)), Fraction(0))
        for l in range(n - p + 1)
    ]


def fp_density(E: EmbeddedComplex, p: int, d: int, phi: PolynomialObservable, cap: int | None = None) -> Fraction:
    """int phi(sigma^) f_{n-p-1}(Lk(sigma, Sd^d K)) dgamma^d_{p,K}, with f_{-1} = 1."""
    n = E.complex.dim
    scale = _scale(E.complex, d)
    if p == n:
        return gamma_sums(E, d, p, [phi], cap).total[0] / scale
    return incidence_sums(E, d, p, n, [phi], cap)[0] / scale


def converge_links(E, p, d_range, phi, cap=None) -> list[ConvergenceReport]:
    targets = link_targets(E, p, phi)
    reps = [ConvergenceReport(f"link[p={p},l={l}]", t, "Lk density -> q_{p+l+1,n} f_p(Delta_{p+l+1}) dvol_K") for l, t in enumerate(targets)]
    for d in d_range:
        for rep, v in zip(reps, link_density(E, p, d, phi, cap)):
            rep.add(d, v)
    return reps


def converge_blocks(E, p, d_range, phi, method="chains", cap=None) -> list[ConvergenceReport]:
    targets = block_targets(E, p, phi)
    reps = [ConvergenceReport(f"block[p={p},l={l}]", t, "D(sigma) density -> block target dvol_K") for l, t in enumerate(targets)]
    for d in d_range:
        for rep, v in zip(reps, block_density(E, p, d, phi, method, cap)):
            rep.add(d, v)
    return reps


def converge_fp(E, p, d_range, phi, cap=None) -> ConvergenceReport:
    n = E.complex.dim
    target = f_simplex(n, p) * integrate_volume(E, phi)
    rep = ConvergenceReport(f"fp[p={p}]", target, "f_{n-p-1}(Lk) dgamma^d_{p,K} -> f_p(Delta_n) dvol_K")
    for d in d_range:
        rep.add(d, fp_density(E, p, d, phi, cap))
    return rep


def fp_delta_identity(n: int, p: int, d_range: Iterable[int], cap: int | None = None) -> ConvergenceReport:
    """Total mass of f_{n-p-1}(Lk(sigma, Sd^d Delta_n)) dgamma^d_{p,Delta_n} against binom(n+1, p+1)."""
    from .complex import standard_simplex
    from .subdivision import standard_embedding

    if not 0 <= p <= n:
        raise ValueError(f"p must lie in 0..{n}")
    E = EmbeddedComplex(standard_simplex(n), standard_embedding(n))
    return converge_fp(E, p, d_range, PolynomialObservable.constant(n), cap)


# the chart sampler ----------------------------------------------------------


@lru_cache(maxsize=None)
def flags(n: int) -> tuple[tuple[int, ...], ...]:
    """Top simplices of Sd(Delta_n) as permutations; flag k-face = {perm[0..k]}."""
    return tuple(permutations(range(n + 1)))


def apply_chart(perm: Sequence[int], t: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Order-preserving chart Delta_n -> flag simplex, on barycentric coordinates.

    Vertex k of Delta_n goes to the barycenter of {perm[0], ..., perm[k]}.
    """
    n = len(t) - 1
    out = [Fraction(0)] * (n + 1)
    acc = Fraction(0)
    for k in range(n, -1, -1):
        acc += Fraction(t[k]) / (k + 1)
        out[perm[k]] = acc
    return tuple(out)


def _to_barycentric(x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    x = [Fraction(v) for v in x]
    return (1 - sum(x), *x)


def _from_barycentric(t: Sequence[Fraction]) -> Point:
    return tuple(t[1:])


def phi_map(word: Sequence[int], n: int, x0: Sequence[Fraction] | None = None) -> Point:
    """f_{w_1} o ... o f_{w_d}(x0) in the standard embedding of Delta_n."""
    t = _to_barycentric(x0) if x0 is not None else tuple(Fraction(1, n + 1) for _ in range(n + 1))
    fl = flags(n)
    for w in reversed(word):
        t = apply_chart(fl[w], t)
    return _from_barycentric(t)


def phi_sample(n: int, d: int, seed: int, x0: Sequence[Fraction] | None = None) -> Point:
    if d < 1:
        raise ValueError("depth must be >= 1")
    rng = np.random.Generator(np.random.Philox(seed))
    word = rng.integers(0, factorial(n + 1), size=d)
    return phi_map([int(w) for w in word], n, x0)


def phi_exhaustive_mean(n: int, d: int, phi: PolynomialObservable) -> Fraction:
    """Mean of phi over all (n+1)!^d chart words applied to the barycenter."""
    total = Fraction(0)
    count = 0
    for word in product(range(factorial(n + 1)), repeat=d):
        total += phi(phi_map(word, n))
        count += 1
    return total / count


@dataclass
class MonteCarloResult:
    mean: Fraction
    stderr: float
    samples: int
    seed: int
    depth: int


def _chart_batch(n: int, d: int, words: np.ndarray) -> tuple[np.ndarray, int]:
    """Integer barycentric coordinates of Phi_d(barycenter) for each row of ``words``."""
    L = factorial(n + 1)
    batch = words.shape[0]
    # exact integers: int64 while it cannot overflow, Python ints otherwise
    fits = (L ** (d + 1)) * (n + 1) < 2**62
    dtype = np.int64 if fits else object
    t = np.ones((batch, n + 1), dtype=dtype)
    scale = n + 1
    perms = np.array(flags(n), dtype=np.int64)
    weights = np.array([L // (k + 1) for k in range(n + 1)], dtype=dtype)
    for step in range(d - 1, -1, -1):
        u = t * weights
        suffix = np.cumsum(u[:, ::-1], axis=1)[:, ::-1]
        new = np.empty_like(t)
        np.put_along_axis(new, perms[words[:, step]], suffix, axis=1)
        t = new
        scale *= L
    return t, scale


def phi_mc_integral(
    n: int,
    d: int,
    samples: int,
    phi: PolynomialObservable,
    seed: int,
    block_size: int = 10_000,
) -> MonteCarloResult:
    """Monte Carlo estimate of int phi dvol_{Delta_n} through Phi_d.

    Samples are drawn in blocks; block ``i`` uses the i-th child of the seed
    sequence, so the result does not depend on how blocks are scheduled.
    """
    if d < 1 or samples < 1:
        raise ValueError("depth and sample count must be >= 1")
    if phi.ambient != n:
        raise ValueError("observable ambient dimension must equal n")
    nblocks = -(-samples // block_size)
    children = np.random.SeedSequence(seed).spawn(nblocks)
    total = Fraction(0)
    values: list[float] = []
    for b, child in enumerate(children):
        size = min(block_size, samples - b * block_size)
        rng = np.random.Generator(np.random.Philox(child))
        words = rng.integers(0, factorial(n + 1), size=(size, d))
        t, scale = _chart_batch(n, d, words)
        for row in t.tolist():
            v = phi(tuple(Fraction(int(c), scale) for c in row[1:]))
            total += v
            values.append(float(v))
    mean = total / samples
    arr = np.asarray(values)
    stderr = float(arr.std(ddof=1) / np.sqrt(samples)) if samples > 1 else 0.0
    return MonteCarloResult(mean, stderr, samples, seed, d)
