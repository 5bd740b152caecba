"""First-significant-digit extraction and the Benford reference distribution.

The first significant digit of a number is the leftmost nonzero digit of its
decimal magnitude: 613 -> 6, 0.0002867 -> 2, -62.97 -> 6. Benford's Law says
that over many real-world datasets digit d leads with probability
log10(1 + 1/d), so 1 leads about 30.1% of the time and 9 only 4.6%.
"""

from __future__ import annotations

import math
from decimal import Decimal

from .errors import DomainError

__all__ = ["first_significant_digit", "benford_expected", "benford_distribution"]


def first_significant_digit(x: float) -> int:
    """Return the leftmost nonzero decimal digit of ``abs(x)``, in 1..9.

    The sign is discarded and the result is invariant under scaling by any
    power of ten. Subnormal floats are valid inputs. Raises ``DomainError``
    for zero, infinities and NaN, which have no first significant digit.
    """
    if x == 0.0:
        raise DomainError("zero has no first significant digit")
    if not math.isfinite(x):
        raise DomainError(f"{x!r} has no first significant digit")
    m = abs(x)
    # Lift subnormal and borderline-tiny magnitudes into the normal range so
    # the power of ten below cannot underflow; decimal rescaling does not
    # change the leading digit.
    if m < 1e-300:
        m *= 1e300
    k = math.floor(math.log10(m))
    mantissa = m / 10.0**k
    # log10 rounding can land the mantissa just outside [1, 10); nudge the
    # decade once in the right direction.
    if mantissa < 1.0:
        mantissa = m / 10.0 ** (k - 1)
    elif mantissa >= 10.0:
        mantissa = m / 10.0 ** (k + 1)
    if 1.0 <= mantissa < 10.0:
        return int(mantissa)
    # Values within an ulp of a power of ten can defeat both attempts; fall
    # back to the exact decimal expansion of the float.
    return Decimal(m).as_tuple().digits[0]


def benford_expected(d: int) -> float:
    """Benford probability log10(1 + 1/d) that digit ``d`` leads a number."""
    if not 1 <= d <= 9:
        raise DomainError(f"first significant digits are 1..9, got {d!r}")
    return math.log10(1.0 + 1.0 / d)


def benford_distribution() -> tuple[float, ...]:
    """The full Benford vector, entry ``i`` holding the probability of digit ``i + 1``."""
    return tuple(benford_expected(d) for d in range(1, 10))
