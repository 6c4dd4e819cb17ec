"""The subdivision transfer matrix and the limit face coefficients.

``lambda(i, j)`` counts the interior (j-1)-faces of Sd(Delta_{i-1}). With
``Lambda_n = (lambda(i, j))_{1 <= i, j <= n+1}`` the face vector of a
subdivision is ``f(Sd K) = f(K) @ Lambda_n``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator, Sequence

from .polynomial import RationalPolynomial, RootIsolation, isolate_roots


class LambdaMatrix:
    """Lower-triangular integer matrix indexed from 0 with lambda(0, 0) = 1.

    Row/column 0 hold the conventions lambda(0, 0) = 1 and lambda(l, 0) = 0.
    """

    def __init__(self, N: int, rows: list[list[int]]):
        self.N = N
        self._rows = rows

    def __call__(self, i: int, j: int) -> int:
        if j > i or i > self.N or j < 0:
            return 0
        return self._rows[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LambdaMatrix):
            return NotImplemented
        return self.N == other.N and self._rows == other._rows

    def block(self, n: int) -> list[list[int]]:
        """Lambda_n as a list of rows, entries lambda(i, j) for 1 <= i, j <= n+1."""
        if n + 1 > self.N:
            raise ValueError(f"matrix built up to {self.N}, need {n + 1}")
        return [[self(i, j) for j in range(1, n + 2)] for i in range(1, n + 2)]

    def rows(self) -> list[list[int]]:
        return [[self(i, j) for j in range(1, self.N + 1)] for i in range(1, self.N + 1)]


def lambda_recursive(N: int) -> LambdaMatrix:
    """lambda(i, j) = sum_{p=j-1}^{i-1} binom(i, p) lambda(p, j-1)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    rows = [[0] * (N + 1) for _ in range(N + 1)]
    rows[0][0] = 1
    for i in range(1, N + 1):
        for j in range(1, i + 1):
            rows[i][j] = sum(comb(i, p) * rows[p][j - 1] for p in range(j - 1, i))
    return LambdaMatrix(N, rows)


def lambda_closed_form(N: int) -> LambdaMatrix:
    """lambda(i, j) = sum_{p=0}^{j} binom(j, p) (-1)^(j-p) p^i, evaluated for all j."""
    if N < 1:
        raise ValueError("N must be >= 1")
    rows = [[0] * (N + 1) for _ in range(N + 1)]
    rows[0][0] = 1
    for i in range(1, N + 1):
        for j in range(1, N + 1):
            v = sum(comb(j, p) * (-1) ** (j - p) * p**i for p in range(j + 1))
            if j > i and v != 0:
                raise ArithmeticError(f"closed form nonzero above the diagonal at ({i}, {j})")
            if j <= i:
                rows[i][j] = v
    return LambdaMatrix(N, rows)


@lru_cache(maxsize=None)
def _lam(N: int) -> LambdaMatrix:
    return lambda_recursive(N)


def lam(i: int, j: int) -> int:
    """Single entry with the lambda(0,0)=1, lambda(l,0)=0 conventions."""
    if i < 0 or j < 0:
        return 0
    return _lam(max(i, 1))(i, j)


def _matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def binomial_power_matrix(r: int, N: int, check: bool = True) -> list[list[int]]:
    """(I + C)^r with c(i, j) = binom(i, j) for i > j >= 1, indexed 1..N.

    Computed by repeated multiplication and, when ``check`` is set, compared
    entrywise with binom(i, j) r^(i-j).
    """
    if r < 1:
        raise ValueError("r must be >= 1")
    base = [[comb(i, j) if i >= j else 0 for j in range(1, N + 1)] for i in range(1, N + 1)]
    out = base
    for _ in range(r - 1):
        out = _matmul(out, base)
    if check:
        closed = [
            [comb(i, j) * r ** (i - j) if i >= j else 0 for j in range(1, N + 1)]
            for i in range(1, N + 1)
        ]
        if closed != out:
            raise ArithmeticError("(I+C)^r disagrees with its closed form")
    return out


def lagrange_basis(j: int) -> RationalPolynomial:
    """L_j(T) = T(T-1)...(T-j+1) / j!, with L_0 = 1."""
    return RationalPolynomial.from_roots(range(j)) * Fraction(1, factorial(j))


def lagrange_identity_check(jmax: int) -> int | None:
    """Check T^j = sum_i lambda(j, i) L_i(T) for 1 <= j <= jmax.

    Returns None when all hold, otherwise the first failing j.
    """
    for j in range(1, jmax + 1):
        acc = RationalPolynomial()
        for i in range(1, j + 1):
            acc = acc + lagrange_basis(i) * lam(j, i)
        if acc != RationalPolynomial.monomial(j):
            return j
    return None


def q_solve(n: int) -> list[Fraction]:
    """Eigenvector of Lambda_n^t for (n+1)!, normalized by q[n] = 1.

    Back-substitution from p = n down:
    q[p] ((n+1)! - (p+1)!) = sum_{h > p} lambda(h+1, p+1) q[h].
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    top = factorial(n + 1)
    q = [Fraction(0)] * (n + 1)
    q[n] = Fraction(1)
    for p in range(n - 1, -1, -1):
        s = sum(lam(h + 1, p + 1) * q[h] for h in range(p + 1, n + 1))
        q[p] = s / (top - factorial(p + 1))
    return q


def increasing_sequences(p: int, n: int) -> Iterator[tuple[int, ...]]:
    """The set P_{p,n}: p+1 = p_1 < ... < p_j < n+1, depth first."""

    def extend(seq: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        yield seq
        for nxt in range(seq[-1] + 1, n + 1):
            yield from extend(seq + (nxt,))

    yield from extend((p + 1,))


def q_partition(n: int) -> list[Fraction]:
    """Limit coefficients from the sum over increasing sequences."""
    if n < 0:
        raise ValueError("n must be >= 0")
    top = lam(n + 1, n + 1)
    q = []
    for p in range(n):
        total = Fraction(0)
        for seq in increasing_sequences(p, n):
            num = lam(n + 1, seq[-1])
            for a, b in zip(seq[1:], seq[:-1]):
                num *= lam(a, b)
            den = 1
            for s in seq:
                den *= top - lam(s, s)
            total += Fraction(num, den)
        q.append(total)
    q.append(Fraction(1))
    return q


def limit_polynomial(n: int) -> RationalPolynomial:
    """q_n^inf(T) = sum_p q_{p,n} T^p."""
    return RationalPolynomial(q_solve(n))


def transfer(f: Sequence[int], n: int, d: int) -> tuple[int, ...]:
    """f @ Lambda_n^d with exact integers."""
    if len(f) != n + 1:
        raise ValueError(f"face vector of length {len(f)} does not match dimension {n}")
    if d < 0:
        raise ValueError("depth must be >= 0")
    block = _lam(n + 1).block(n)
    vec = list(f)
    for _ in range(d):
        vec = [sum(vec[i] * block[i][j] for i in range(n + 1)) for j in range(n + 1)]
    return tuple(vec)


def eigen_residual(n: int, q: Sequence[Fraction] | None = None) -> list[Fraction]:
    """Lambda_n^t q - (n+1)! q, exactly."""
    q = q_solve(n) if q is None else q
    block = _lam(n + 1).block(n)
    top = factorial(n + 1)
    return [sum(block[h][p] * q[h] for h in range(n + 1)) - top * q[p] for p in range(n + 1)]


def column_identity_holds(N: int) -> bool:
    """sum_{p=l}^{h} binom(h+1, p) lambda(p, l) == lambda(h+1, l+1) for l <= h < N."""
    L = lambda_recursive(N)
    for h in range(N):
        for l in range(h + 1):
            lhs = sum(comb(h + 1, p) * L(p, l) for p in range(l, h + 1))
            if lhs != L(h + 1, l + 1):
                return False
    return True


def limit_roots(n: int, width: Fraction | None = None) -> RootIsolation:
    """Real roots of T * q_n^inf(T)."""
    P = limit_polynomial(n) * RationalPolynomial.monomial(1)
    return isolate_roots(P) if width is None else isolate_roots(P, width)
