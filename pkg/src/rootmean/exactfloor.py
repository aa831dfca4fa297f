"""Exact integer parts of the mean of the first n square roots.

The mean Sigma(n) = (1/n) sum_{k=1}^{n} sqrt(k) has the same integer part as
the closed form

    A(n) = (2/3) sqrt(n+1) (1 + 1/(4n)) = (4n+1) sqrt(n+1) / (6n),

so floor(Sigma(n)) is computable without summing anything.  This module does
that computation two independent ways, both in pure integer arithmetic:
directly, by squaring the comparison m <= A(n), and through the threshold
sequence alpha(m) = (9/4)(m+1)^2 - 2 at which the floor steps from m to m+1.
Floating point is banned here: near a threshold the gap between A(n) and the
next integer shrinks like O(n^(-1/2)) and drops below binary64 resolution
for n beyond ~1e15.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

__all__ = [
    "Index",
    "AlphaThreshold",
    "isqrt",
    "floor_A_exact",
    "floor_via_alpha",
    "alpha_floor",
]

# A positive integer count (n, nu, or m); arbitrary precision.
Index = int


def _as_index(n: object, *, minimum: int = 1, name: str = "n") -> int:
    """Validate an exact integer argument.  Floats are refused outright: the
    whole point of this module is that nothing ever rounds."""
    try:
        value = operator.index(n)  # type: ignore[arg-type]
    except TypeError:
        raise TypeError(
            f"{name} must be an exact integer, got {type(n).__name__}"
        ) from None
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def isqrt(k: int) -> int:
    """Integer square root: the exact floor(sqrt(k)) for k >= 0.

    The result r always satisfies r*r <= k < (r+1)*(r+1).
    """
    k = _as_index(k, minimum=0, name="k")
    return math.isqrt(k)


def floor_A_exact(n: Index) -> int:
    """floor(A(n)), equivalently the integer part of the mean of the first
    n square roots, by squaring.

    For positive integers m:  m <= A(n)  iff  (6nm)^2 <= (4n+1)^2 (n+1),
    so the floor is isqrt of the rational radicand (4n+1)^2 (n+1) / (36 n^2).
    Flooring the radicand first cannot change the answer: whether m^2 is
    below a rational and whether it is below its floor agree for integer m^2.
    """
    n = _as_index(n)
    num = (4 * n + 1) ** 2 * (n + 1)
    den = 36 * n * n
    return math.isqrt(num // den)


def floor_via_alpha(n: Index) -> int:
    """floor(A(n)) by threshold search: the smallest m >= 1 whose threshold
    alpha(m) = (9/4)(m+1)^2 - 2 admits n, decided in integers as
    4n <= 9(m+1)^2 - 8.

    This never squares A, so it is an independent route that must agree
    with floor_A_exact everywhere (the test suite enforces that).
    """
    n = _as_index(n)
    target = 4 * n + 8
    # smallest s = m+1 with 9 s^2 >= target; the initial guess floors the
    # real root, so the correction only ever steps upward
    s = math.isqrt(target // 9)
    while 9 * s * s < target:
        s += 1
    return s - 1


def alpha_floor(m: int) -> int:
    """floor(alpha(m)) for alpha(m) = (9/4)(m+1)^2 - 2, i.e.
    (9(m+1)^2 - 8) // 4.

    alpha(m) is itself an integer for odd m (alpha(2s-1) = 9 s^2 - 2) and a
    quarter above this floor for even m (alpha(2s) = 9 s^2 + 9 s + 1/4).
    """
    m = _as_index(m, minimum=0, name="m")
    return (9 * (m + 1) ** 2 - 8) // 4


@dataclass(frozen=True)
class AlphaThreshold:
    """The step threshold for the exact floor: floor(A(n)) == m precisely
    when alpha(m-1) < n <= alpha(m).

    Stored times 4 so even m (where alpha is a quarter-integer) stays exact;
    the comparison n <= alpha(m) is decided as 4n <= alpha_times_4.
    """

    m: int
    alpha_times_4: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"m must be >= 0, got {self.m}")
        if self.alpha_times_4 != 9 * (self.m + 1) ** 2 - 8:
            raise ValueError("alpha_times_4 must equal 9(m+1)^2 - 8")

    @classmethod
    def of(cls, m: int) -> "AlphaThreshold":
        m = _as_index(m, minimum=0, name="m")
        return cls(m, 9 * (m + 1) ** 2 - 8)

    def admits(self, n: Index) -> bool:
        """Whether n <= alpha(m), exactly."""
        n = _as_index(n)
        return 4 * n <= self.alpha_times_4
