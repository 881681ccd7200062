"""Birational R over exact positive rationals and its ultradiscretization.

The birational map is the subtraction-free counterpart of the combinatorial R:
substituting x_i = b^{X_i} for a large base b and keeping leading exponents
recovers the max-plus formula exactly.  The consistency is enforced in tests
with the combinatorial R as oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from boxball.crystal import RankMismatch


@dataclass(frozen=True)
class RationalPoint:
    """Point of the birational-R phase space: strictly positive rational coordinates."""

    rank: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.rank + 1:
            raise ValueError("coords must have length rank+1")
        if any(c <= 0 for c in self.coords):
            raise ValueError("coordinates must be positive")

    def coord(self, i: int) -> Fraction:
        return self.coords[(i - 1) % (self.rank + 1)]


def _P(x: RationalPoint, y: RationalPoint, i: int) -> Fraction:
    m = x.rank + 1
    total = Fraction(0)
    for k in range(1, m + 1):
        term = Fraction(1)
        for j in range(k, m + 1):
            term *= x.coord(i + j)
        for j in range(1, k + 1):
            term *= y.coord(i + j)
        total += term
    return total


def birational_R(x: RationalPoint, y: RationalPoint) -> tuple[RationalPoint, RationalPoint]:
    """R(x,y) = (y~, x~) with x~_i = x_i P_{i-1}/P_i, y~_i = y_i P_i/P_{i-1}."""
    if x.rank != y.rank:
        raise RankMismatch("birational R needs equal ranks")
    m = x.rank + 1
    P = [_P(x, y, i) for i in range(m)]
    xt = tuple(x.coord(i) * P[(i - 1) % m] / P[i % m] for i in range(1, m + 1))
    yt = tuple(y.coord(i) * P[i % m] / P[(i - 1) % m] for i in range(1, m + 1))
    return RationalPoint(x.rank, yt), RationalPoint(x.rank, xt)


def check_toda_relations(
    x: RationalPoint, y: RationalPoint, yt: RationalPoint, xt: RationalPoint
) -> bool:
    """Exact check of x_i y_i = y~_i x~_i, 1/x_i + 1/y_{i+1} = 1/y~_i + 1/x~_{i+1},
    and the product constraint prod(x_i/x~_i) = prod(y_i/y~_i) = 1."""
    m = x.rank + 1
    if not (x.rank == y.rank == yt.rank == xt.rank):
        return False
    for i in range(1, m + 1):
        if x.coord(i) * y.coord(i) != yt.coord(i) * xt.coord(i):
            return False
        if 1 / x.coord(i) + 1 / y.coord(i + 1) != 1 / yt.coord(i) + 1 / xt.coord(i + 1):
            return False
    px = Fraction(1)
    py = Fraction(1)
    for i in range(1, m + 1):
        px *= x.coord(i) / xt.coord(i)
        py *= y.coord(i) / yt.coord(i)
    return px == 1 and py == 1


class AmbiguousLeadingOrder(ArithmeticError):
    pass


def _leading_exponent(r: Fraction, log2_base: int) -> int:
    """Nearest-integer exponent e with r ~ base^e, base = 2^log2_base.

    The leading coefficient of any R-image entry is bounded well inside
    (base^{-1/2}, base^{1/2}) once the base is large, so rounding is safe;
    an AmbiguousLeadingOrder is raised when the coefficient is too close to
    the rounding boundary and the caller retries with a larger base.
    """
    # floor(log2 r) from bit lengths, exact
    num, den = r.numerator, r.denominator
    lb = num.bit_length() - den.bit_length()
    if (num >> lb if lb >= 0 else num << -lb) < den:
        lb -= 1
    # e = round(lb / log2_base); ambiguity when within 2 bits of a half point
    q, rem = divmod(2 * lb + log2_base, 2 * log2_base)
    if min(rem, 2 * log2_base - rem) <= 4:
        raise AmbiguousLeadingOrder(f"leading order of {r} unclear at base 2^{log2_base}")
    return q


def ultradiscretize_R(
    X: tuple[int, ...], Y: tuple[int, ...], rank: int | None = None
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Leading exponents of the birational R on x_i = b^{X_i}, y_i = b^{Y_i}.

    Retries with larger bases until the leading order is unambiguous.  When X
    and Y are letter-count vectors this equals the combinatorial R (max-plus
    tropicalization).
    """
    if rank is None:
        rank = len(X) - 1
    if len(X) != len(Y):
        raise RankMismatch("exponent vectors must have equal length")
    for log2_base in (10, 20, 40, 80):
        base = Fraction(2) ** log2_base
        x = RationalPoint(rank, tuple(base ** e for e in X))
        y = RationalPoint(rank, tuple(base ** e for e in Y))
        yt, xt = birational_R(x, y)
        try:
            Yt = tuple(_leading_exponent(c, log2_base) for c in yt.coords)
            Xt = tuple(_leading_exponent(c, log2_base) for c in xt.coords)
            return Yt, Xt
        except AmbiguousLeadingOrder:
            continue
    raise AmbiguousLeadingOrder("leading order still ambiguous at base 2^80")
