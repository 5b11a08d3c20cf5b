# src/models/exponent.py
"""
Symbolic exponents a + b*tau + c/(tau-1) over the open interval 2 < tau < 3.

Every exponent the library reports has this shape, with rational a, b, c and
an integer power of log n in front. Comparisons between two of them reduce to
the sign of a quadratic in tau, so breakpoints are exact QuadraticSurds.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from src.exceptions import TauError
from src.models.surd import QuadraticSurd, quadratic_roots

TAU_LOW = Fraction(2)
TAU_HIGH = Fraction(3)

TauLike = Union[str, int, float, Fraction]


def parse_tau(value: TauLike) -> Fraction:
    """
    Exact tau from '5/2', '2.2', a Fraction or an int.

    Floats are converted through their shortest repr, so 2.2 becomes 11/5.
    """
    if isinstance(value, Fraction):
        tau = value
    else:
        try:
            tau = Fraction(repr(value) if isinstance(value, float) else str(value).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise TauError(f"cannot parse tau from {value!r}") from exc
    if not TAU_LOW < tau < TAU_HIGH:
        raise TauError(f"tau must lie strictly between 2 and 3, got {tau}")
    return tau


def _as_surd(tau: Union[Fraction, QuadraticSurd]) -> QuadraticSurd:
    return QuadraticSurd.of(tau)


@dataclass(frozen=True)
class TauExponent:
    """
    Exponent a + b*tau + c/(tau-1), times (log n)^log_power.
    """
    a: Fraction
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    log_power: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "c", Fraction(self.c))

    @classmethod
    def from_half_units(cls, a2: int, b2: int, c2: int, log_power: int = 0) -> "TauExponent":
        return cls(Fraction(int(a2), 2), Fraction(int(b2), 2), Fraction(int(c2), 2), log_power)

    @property
    def key(self) -> Tuple[Fraction, Fraction, Fraction]:
        """Polynomial part, ignoring the log power."""
        return (self.a, self.b, self.c)

    def evaluate(self, tau: Fraction) -> Fraction:
        tau = Fraction(tau)
        return self.a + self.b * tau + self.c / (tau - 1)

    def evaluate_exact(self, tau: Union[Fraction, QuadraticSurd]) -> QuadraticSurd:
        x = _as_surd(tau)
        return self.b * x + self.a + QuadraticSurd.of(self.c) / (x - 1)

    def __add__(self, other: "TauExponent") -> "TauExponent":
        return TauExponent(self.a + other.a, self.b + other.b, self.c + other.c, self.log_power + other.log_power)

    def __sub__(self, other: "TauExponent") -> "TauExponent":
        return TauExponent(self.a - other.a, self.b - other.b, self.c - other.c, self.log_power)

    def scaled(self, factor: int) -> "TauExponent":
        return TauExponent(self.a * factor, self.b * factor, self.c * factor, self.log_power * factor)

    def shifted(self, constant: Fraction) -> "TauExponent":
        return TauExponent(self.a + constant, self.b, self.c, self.log_power)

    def with_log(self, log_power: int) -> "TauExponent":
        return TauExponent(self.a, self.b, self.c, log_power)

    def difference_numerator(self, other: "TauExponent") -> Tuple[Fraction, Fraction, Fraction]:
        """
        Coefficients (x2, x1, x0) of (self - other) * (tau - 1) as a quadratic.
        """
        da, db, dc = self.a - other.a, self.b - other.b, self.c - other.c
        return db, da - db, dc - da

    def crossings(self, other: "TauExponent", lo: QuadraticSurd, hi: QuadraticSurd) -> List[QuadraticSurd]:
        """Points strictly inside (lo, hi) where self and other are equal."""
        roots = quadratic_roots(*self.difference_numerator(other))
        return [r for r in roots if lo < r < hi]

    def sign_right_of(self, other: "TauExponent", point: Union[Fraction, QuadraticSurd]) -> int:
        """Sign of self - other just to the right of point."""
        x2, x1, x0 = self.difference_numerator(other)
        x = _as_surd(point)
        for value in (x2 * x * x + x1 * x + x0, 2 * x2 * x + x1, QuadraticSurd.of(2 * x2)):
            s = QuadraticSurd.of(value).sign()
            if s:
                return s
        return 0

    def to_dict(self) -> dict:
        return {
            "a": str(self.a),
            "b": str(self.b),
            "c": str(self.c),
            "log_power": self.log_power,
            "expression": str(self),
        }

    def __str__(self) -> str:
        terms = []
        if self.a or (not self.b and not self.c):
            terms.append(str(self.a))
        if self.b:
            terms.append(f"{self.b}*tau")
        if self.c:
            terms.append(f"{self.c}/(tau-1)")
        text = " + ".join(terms).replace("+ -", "- ")
        if self.log_power:
            text += f" [log^{self.log_power}]"
        return text


@dataclass(frozen=True)
class EnvelopePiece:
    lo: QuadraticSurd
    hi: QuadraticSurd
    index: int  # position of the maximizing function in the input sequence


def _best_right_of(functions: Sequence[TauExponent], candidates: Sequence[int], point) -> int:
    best = candidates[0]
    for index in candidates[1:]:
        if functions[index].sign_right_of(functions[best], point) > 0:
            best = index
    return best


def upper_envelope(
    functions: Sequence[TauExponent],
    lo: Optional[QuadraticSurd] = None,
    hi: Optional[QuadraticSurd] = None,
) -> List[EnvelopePiece]:
    """
    Pointwise maximum of distinct functions on (lo, hi), as maximal pieces.

    Sweeps from the left: only functions that overtake the current maximum
    can end a piece, so the work is linear in the number of functions per
    piece.
    """
    lo = QuadraticSurd.of(TAU_LOW if lo is None else lo)
    hi = QuadraticSurd.of(TAU_HIGH if hi is None else hi)
    keys = [f.key for f in functions]
    if len(set(keys)) != len(keys):
        raise ValueError("upper_envelope needs functions with distinct polynomial parts")
    if not functions:
        return []
    pieces: List[EnvelopePiece] = []
    start = lo
    current = _best_right_of(functions, list(range(len(functions))), start)
    while True:
        next_point: Optional[QuadraticSurd] = None
        overtakers: List[int] = []
        for index, f in enumerate(functions):
            if index == current:
                continue
            for root in f.crossings(functions[current], start, hi):
                if f.sign_right_of(functions[current], root) <= 0:
                    continue
                if next_point is None or root < next_point:
                    next_point, overtakers = root, [index]
                elif root == next_point:
                    overtakers.append(index)
                break
        if next_point is None:
            pieces.append(EnvelopePiece(start, hi, current))
            return pieces
        pieces.append(EnvelopePiece(start, next_point, current))
        current = _best_right_of(functions, overtakers, next_point)
        start = next_point
