"""Exact rounding helpers for bound reporting.

Upper bounds are always rounded UP at the 5th decimal so the printed value
stays a valid bound; closed-form rationals are rendered half-even.
"""

from decimal import ROUND_HALF_EVEN, Decimal, getcontext
from fractions import Fraction

getcontext().prec = 50

_SCALE = 10 ** 5
_QUANT = Decimal("0.00001")


def ceil5(x) -> Decimal:
    """Round up at the 5th decimal; exact for Fraction/int inputs."""
    if isinstance(x, float):
        x = Fraction(x)
    x = Fraction(x)
    m = -((-x.numerator * _SCALE) // x.denominator)  # ceil(x * 10^5)
    return Decimal(m).scaleb(-5)


def half_even5(x) -> Decimal:
    """Render to 5 decimals with banker's rounding (for closed-form values)."""
    if isinstance(x, float):
        x = Fraction(x)
    x = Fraction(x)
    return (Decimal(x.numerator) / Decimal(x.denominator)).quantize(
        _QUANT, rounding=ROUND_HALF_EVEN)


def ceil_nth_root(c: int, n: int) -> int:
    """Smallest integer m with m**n >= c (exact integer arithmetic)."""
    if c <= 0:
        raise ValueError("c must be positive")
    if n == 1:
        return c
    # Newton descent from a guaranteed overestimate (2^ceil(bits/n)).
    x = 1 << -((-c.bit_length()) // n)
    while True:
        y = ((n - 1) * x + c // x ** (n - 1)) // n
        if y >= x:
            break
        x = y
    # x is now floor(c^(1/n)); bump up if c is not a perfect power.
    if x ** n < c:
        x += 1
    return x


def nth_root_ceil5(c: int, n: int) -> Decimal:
    """c**(1/n) rounded up at the 5th decimal, exactly."""
    m = ceil_nth_root(c * _SCALE ** n, n)
    return Decimal(m).scaleb(-5)
