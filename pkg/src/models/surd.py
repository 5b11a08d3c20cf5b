# src/models/surd.py
"""
Exact numbers of the form p + q*sqrt(m) with rational p, q and squarefree m.

Breakpoints of exponent envelopes are roots of quadratics with rational
coefficients, so they live here. m == 1 means the number is rational.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import List, Tuple, Union

Rational = Union[int, Fraction]


def _squarefree_split(n: int) -> Tuple[int, int]:
    """Write n = s*s*m with m squarefree; returns (s, m)."""
    s, m = 1, n
    f = 2
    while f * f <= m:
        while m % (f * f) == 0:
            m //= f * f
            s *= f
        f += 1
    return s, m


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


@total_ordering
@dataclass(frozen=True)
class QuadraticSurd:
    p: Fraction
    q: Fraction = Fraction(0)
    m: int = 1

    def __post_init__(self) -> None:
        p, q, m = Fraction(self.p), Fraction(self.q), int(self.m)
        if m < 1:
            raise ValueError(f"radicand must be positive, got {m}")
        s, m = _squarefree_split(m)
        q *= s
        if m == 1:
            p, q = p + q, Fraction(0)
        if q == 0:
            m = 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "m", m)

    @classmethod
    def of(cls, value: Union["QuadraticSurd", Rational]) -> "QuadraticSurd":
        if isinstance(value, QuadraticSurd):
            return value
        return cls(Fraction(value))

    @classmethod
    def sqrt_of(cls, value: Rational) -> "QuadraticSurd":
        """sqrt(value) for rational value >= 0."""
        value = Fraction(value)
        if value < 0:
            raise ValueError("square root of a negative number")
        if value == 0:
            return cls(Fraction(0))
        s, m = _squarefree_split(value.numerator * value.denominator)
        return cls(Fraction(0), Fraction(s, value.denominator), m)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def sign(self) -> int:
        sp, sq = _sign(self.p), _sign(self.q)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with q^2 m (never equal, m is not a square)
        return sp if self.p * self.p > self.q * self.q * self.m else sq

    def conjugate(self) -> "QuadraticSurd":
        return QuadraticSurd(self.p, -self.q, self.m)

    def _common(self, other: "QuadraticSurd") -> int:
        if self.m == other.m or other.q == 0:
            return self.m
        if self.q == 0:
            return other.m
        raise ValueError(f"cannot combine sqrt({self.m}) with sqrt({other.m})")

    def __add__(self, other):
        other = QuadraticSurd.of(other)
        m = self._common(other)
        return QuadraticSurd(self.p + other.p, self.q + other.q, m)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticSurd(-self.p, -self.q, self.m)

    def __sub__(self, other):
        return self + (-QuadraticSurd.of(other))

    def __rsub__(self, other):
        return QuadraticSurd.of(other) - self

    def __mul__(self, other):
        other = QuadraticSurd.of(other)
        m = self._common(other)
        return QuadraticSurd(
            self.p * other.p + self.q * other.q * m,
            self.p * other.q + self.q * other.p,
            m,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QuadraticSurd.of(other)
        norm = other.p * other.p - other.q * other.q * other.m
        if norm == 0:
            raise ZeroDivisionError("division by zero surd")
        return self * other.conjugate() * QuadraticSurd(1 / norm)

    def __rtruediv__(self, other):
        return QuadraticSurd.of(other) / self

    def compare(self, other: Union["QuadraticSurd", Rational]) -> int:
        """Exact sign of self - other, for any radicands."""
        other = QuadraticSurd.of(other)
        if self.m == other.m or self.q == 0 or other.q == 0:
            return (self - other).sign()
        # u - v with u = (p1 - p2) + q1 sqrt(m1), v = q2 sqrt(m2)
        u = QuadraticSurd(self.p - other.p, self.q, self.m)
        su, sv = u.sign(), _sign(other.q)
        if su != sv:
            return 1 if su > sv else -1
        # same sign: compare squares, u^2 - v^2 is a surd in sqrt(m1)
        gap = (u * u - other.q * other.q * other.m).sign()
        return gap if su > 0 else -gap

    def __eq__(self, other) -> bool:
        if not isinstance(other, (QuadraticSurd, int, Fraction)):
            return NotImplemented
        other = QuadraticSurd.of(other)
        return (self.p, self.q, self.m) == (other.p, other.q, other.m)

    def __hash__(self) -> int:
        return hash((self.p, self.q, self.m))

    def __lt__(self, other) -> bool:
        return self.compare(other) < 0

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * self.m ** 0.5

    def to_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is irrational")
        return self.p

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.p)
        sign = "+" if self.q > 0 else "-"
        return f"{self.p}{sign}{abs(self.q)}*sqrt({self.m})"

    def __repr__(self) -> str:
        return f"QuadraticSurd({self})"


def quadratic_roots(a2: Rational, a1: Rational, a0: Rational) -> List[QuadraticSurd]:
    """
    Real roots of a2*x^2 + a1*x + a0, ascending. The zero polynomial has none.
    """
    a2, a1, a0 = Fraction(a2), Fraction(a1), Fraction(a0)
    if a2 == 0:
        if a1 == 0:
            return []
        return [QuadraticSurd(-a0 / a1)]
    disc = a1 * a1 - 4 * a2 * a0
    if disc < 0:
        return []
    centre = QuadraticSurd(-a1 / (2 * a2))
    if disc == 0:
        return [centre]
    spread = QuadraticSurd.sqrt_of(disc) * QuadraticSurd(1 / (2 * abs(a2)))
    return [centre - spread, centre + spread]


def rational_between(lo: QuadraticSurd, hi: QuadraticSurd) -> Fraction:
    """A simple rational strictly between lo and hi (lo < hi)."""
    lo, hi = QuadraticSurd.of(lo), QuadraticSurd.of(hi)
    mid = (float(lo) + float(hi)) / 2
    for limit in (10, 100, 1000, 10 ** 6, 10 ** 12):
        candidate = Fraction(mid).limit_denominator(limit)
        if lo.compare(candidate) < 0 and hi.compare(candidate) > 0:
            return candidate
    # exact bisection when floats cannot separate the endpoints
    a = lo.p if lo.is_rational else Fraction(float(lo)).limit_denominator(10 ** 15)
    b = hi.p if hi.is_rational else Fraction(float(hi)).limit_denominator(10 ** 15)
    while True:
        candidate = (a + b) / 2
        if lo.compare(candidate) >= 0:
            a = candidate
        elif hi.compare(candidate) <= 0:
            b = candidate
        else:
            return candidate
