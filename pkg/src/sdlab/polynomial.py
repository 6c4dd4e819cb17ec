"""Exact univariate polynomials over Q and Sturm-sequence real-root isolation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


class RefinementBudgetExceeded(RuntimeError):
    pass


class RationalPolynomial:
    """Polynomial with exact rational coefficients, lowest degree first.

    Trailing zero coefficients are stripped, so the zero polynomial has an
    empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "RationalPolynomial":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "RationalPolynomial":
        out = cls([1])
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RationalPolynomial([other])
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPolynomial({[str(c) for c in self.coeffs]})"

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            return other
        return RationalPolynomial([other])

    def __add__(self, other) -> "RationalPolynomial":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "RationalPolynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalPolynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalPolynomial":
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "RationalPolynomial":
        out = RationalPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "RationalPolynomial") -> tuple["RationalPolynomial", "RationalPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return RationalPolynomial(), self
        quo = [Fraction(0)] * (len(rem) - dq)
        lead = other.lead
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] / lead
            quo[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return RationalPolynomial(quo), RationalPolynomial(rem[:dq])

    def __floordiv__(self, other) -> "RationalPolynomial":
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other) -> "RationalPolynomial":
        return self.divmod(self._coerce(other))[1]

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial(k * c for k, c in enumerate(self.coeffs) if k > 0)

    def compose(self, inner: "RationalPolynomial") -> "RationalPolynomial":
        acc = RationalPolynomial()
        for c in reversed(self.coeffs):
            acc = acc * inner + c
        return acc

    def monic(self) -> "RationalPolynomial":
        if self.is_zero():
            return self
        return RationalPolynomial(c / self.lead for c in self.coeffs)

    def primitive(self) -> "RationalPolynomial":
        """Scale to integer coefficients with gcd 1 and positive leading term."""
        if self.is_zero():
            return self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return RationalPolynomial(Fraction(c, g) for c in ints)

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]


def poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    """Monic gcd; gcd(0, 0) is 0."""
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic()


def squarefree_part(p: RationalPolynomial) -> RationalPolynomial:
    g = poly_gcd(p, p.derivative())
    return (p // g).primitive()


def squarefree_factors(p: RationalPolynomial) -> list[RationalPolynomial]:
    """Yun's algorithm: returns [a_1, a_2, ...] with p = c * prod a_i**i."""
    if p.degree < 1:
        return []
    dp = p.derivative()
    a0 = poly_gcd(p, dp)
    b = p // a0
    c = dp // a0
    d = c - b.derivative()
    factors = []
    while b.degree > 0:
        a = poly_gcd(b, d)
        factors.append(a.primitive())
        b = b // a
        c = d // a
        d = c - b.derivative()
    return factors


def _strip_content(p: RationalPolynomial) -> RationalPolynomial:
    # positive rescaling only: sign patterns must survive
    if p.is_zero():
        return p
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    g = math.gcd(*ints)
    return RationalPolynomial(Fraction(c, g) for c in ints)


def sturm_sequence(p: RationalPolynomial) -> list[RationalPolynomial]:
    seq = [_strip_content(p), _strip_content(p.derivative())]
    while seq[-1].degree > 0:
        r = seq[-2] % seq[-1]
        if r.is_zero():
            break
        seq.append(_strip_content(-r))
    return [s for s in seq if not s.is_zero()]


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations(seq: Sequence[RationalPolynomial], x: Number) -> int:
    return _sign_changes([s(x) for s in seq])


def _variations_at_infinity(seq: Sequence[RationalPolynomial], sign: int) -> int:
    vals = []
    for s in seq:
        lead = s.lead
        vals.append(lead if (sign > 0 or s.degree % 2 == 0) else -lead)
    return _sign_changes(vals)


def count_real_roots(p: RationalPolynomial, a: Number | None = None, b: Number | None = None) -> int:
    """Number of distinct real roots of ``p`` in the half-open interval (a, b].

    ``None`` stands for -inf / +inf.
    """
    if p.degree < 1:
        if p.is_zero():
            raise ValueError("zero polynomial has infinitely many roots")
        return 0
    seq = sturm_sequence(squarefree_part(p))
    va = _variations_at_infinity(seq, -1) if a is None else _variations(seq, a)
    vb = _variations_at_infinity(seq, +1) if b is None else _variations(seq, b)
    return va - vb


def cauchy_bound(p: RationalPolynomial) -> Fraction:
    lead = abs(p.lead)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1]) if p.degree > 0 else Fraction(1)


@dataclass(frozen=True)
class RootIsolation:
    """Disjoint rational intervals [lo, hi], each holding exactly one real root.

    A zero-width interval means the root is known exactly.
    """

    intervals: tuple[tuple[Fraction, Fraction], ...]
    multiplicities: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.intervals)

    def midpoints(self) -> list[Fraction]:
        return [(lo + hi) / 2 for lo, hi in self.intervals]

    def exact_roots(self) -> list[Fraction]:
        return [lo for lo, hi in self.intervals if lo == hi]


DEFAULT_WIDTH = Fraction(1, 10**12)


def isolate_roots(
    p: RationalPolynomial,
    width: Fraction = DEFAULT_WIDTH,
    max_bisections: int = 10_000,
) -> RootIsolation:
    """Isolate and refine every distinct real root of ``p`` by Sturm bisection."""
    if p.degree < 1:
        if p.is_zero():
            raise ValueError("zero polynomial has infinitely many roots")
        return RootIsolation((), ())
    sf = squarefree_part(p)
    seq = sturm_sequence(sf)
    bound = cauchy_bound(sf)
    budget = [max_bisections]

    def count(a: Fraction, b: Fraction) -> int:
        return _variations(seq, a) - _variations(seq, b)

    def spend() -> None:
        budget[0] -= 1
        if budget[0] < 0:
            raise RefinementBudgetExceeded(f"more than {max_bisections} bisections needed")

    found: list[tuple[Fraction, Fraction]] = []
    # work items are half-open (lo, hi] with a known root count
    stack = [(-bound, bound, count(-bound, bound))]
    while stack:
        lo, hi, k = stack.pop()
        if k == 0:
            continue
        if k == 1:
            found.append(_refine(sf, seq, lo, hi, width, spend))
            continue
        spend()
        mid = (lo + hi) / 2
        stack.append((lo, mid, count(lo, mid)))
        stack.append((mid, hi, count(mid, hi)))
    found.sort()

    factors = squarefree_factors(p)
    mults = []
    for lo, hi in found:
        m = 0
        for i, f in enumerate(factors, start=1):
            if f.degree < 1:
                continue
            hit = f(lo) == 0 if lo == hi else count_real_roots(f, lo, hi) == 1
            if hit:
                m = i
                break
        mults.append(m)
    return RootIsolation(tuple(found), tuple(mults))


def simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Rational with the smallest denominator in the closed interval [lo, hi]."""
    if lo > hi:
        lo, hi = hi, lo
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = math.floor(lo)
    if fl == lo or fl + 1 <= hi:
        return Fraction(fl if fl == lo else fl + 1)
    # lo, hi share the integer part; recurse on reciprocals of fractional parts
    return fl + 1 / simplest_between(1 / (hi - fl), 1 / (lo - fl))


def _refine(sf, seq, lo: Fraction, hi: Fraction, width: Fraction, spend) -> tuple[Fraction, Fraction]:
    # exactly one root in (lo, hi]
    if sf(hi) == 0:
        return hi, hi
    while hi - lo > width:
        spend()
        guess = simplest_between(lo, hi)
        if lo < guess and sf(guess) == 0:
            return guess, guess
        mid = (lo + hi) / 2
        fm = sf(mid)
        if fm == 0:
            return mid, mid
        if _variations(seq, lo) - _variations(seq, mid) == 1:
            hi = mid
        else:
            lo = mid
    return lo, hi
