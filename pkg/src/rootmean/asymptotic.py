"""Certified floating-point enclosures for partial sums of k^(1/r).

The square-root identity (for 1 <= nu < n) is

    sum_{k=nu}^{n} sqrt(k) = n A(n) - (2/3) sqrt(nu) (nu - 3/4) - delta/24,
    A(x) = (2/3) sqrt(x+1) (1 + 1/(4x)),

where the remainder delta = delta_{nu,n} collects the trapezium errors of
integrating sqrt over [nu, n] and is pinned by elementary terms:

    sigma(nu+2, n+2)  <  delta_{nu,n}  <  sigma(nu, n),
    sigma(nu, n) = 3/2 - n^(-1/2)            if nu == 1,
                   (nu-1)^(-1/2) - n^(-1/2)  otherwise.

The r-th-root generalization replaces the main term by

    (r/(r+1)) (n+1)^(1/r) (n + (1-1/r)/2) - (r/(r+1)) nu^(1/r) (nu - (1+1/r)/2)

with remainder delta_r/(12 r), delta_r bracketed by sigma_r of the same
shape (2 - 1/r - n^(-1+1/r) for nu == 1, else (nu-1)^(-1+1/r) - n^(-1+1/r));
r = 1 is exact (delta_1 = 0: the arithmetic series).

Endpoints are binary64, widened outward by a rounding margin so the true
real value is guaranteed inside despite evaluation error.  Integer inputs so
large that binary64 cannot represent them exactly are refused rather than
silently rounded.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass

__all__ = [
    "Enclosure",
    "DeltaBounds",
    "RootOrder",
    "eval_A",
    "sigma",
    "delta_bounds",
    "partial_sum_sqrt_enclosure",
    "partial_sum_root_enclosure",
    "lemma2_upper",
    "lemma2_lower",
]


_MAX_EXACT = 2 ** 53  # largest n the floating path accepts


def _index(k: object, *, minimum: int = 1, name: str = "n") -> int:
    try:
        value = operator.index(k)  # type: ignore[arg-type]
    except TypeError:
        raise TypeError(
            f"{name} must be an exact integer, got {type(k).__name__}"
        ) from None
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


def _check_float_range(n: int, name: str = "n", slack: int = 0) -> int:
    """The floating path refuses n beyond 2**53 rather than silently losing
    integer precision; slack admits internally shifted arguments (n+2)."""
    if n > _MAX_EXACT + slack:
        raise ValueError(
            f"{name}={n} exceeds 2**53; binary64 cannot carry it exactly: "
            "use the exact integer routines (floor_A_exact) instead"
        )
    return n


def _as_exact_float(k: int, name: str) -> float:
    f = float(k)
    if f != k:
        raise ValueError(
            f"{name}={k} is not exactly representable in binary64; "
            "use the exact integer routines (floor_A_exact) instead"
        )
    return f


def _real_arg(x: object, minimum: float, name: str) -> float:
    """Accept a float, or an integer that converts to binary64 exactly."""
    if isinstance(x, bool):
        raise TypeError(f"{name} must be a number, got bool")
    if not isinstance(x, float):
        try:
            xi = operator.index(x)  # type: ignore[arg-type]
        except TypeError:
            raise TypeError(
                f"{name} must be a float or exact integer, got {type(x).__name__}"
            ) from None
        x = _as_exact_float(_check_float_range(xi, name), name)
    if not math.isfinite(x):
        raise ValueError(f"{name} must be finite, got {x!r}")
    if x < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {x!r}")
    return x


@dataclass(frozen=True)
class Enclosure:
    """A closed interval [lo, hi] guaranteed to contain a true real value."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("enclosure endpoints must be finite")
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure: lo={self.lo!r} > hi={self.hi!r}")

    def width(self) -> float:
        return self.hi - self.lo

    def midpoint(self) -> float:
        return self.lo + 0.5 * (self.hi - self.lo)

    def half_width(self) -> float:
        """Radius around midpoint() that covers the whole interval:
        midpoint() - half_width() <= lo and hi <= midpoint() + half_width(),
        guaranteed despite rounding (the subtractions are nudged outward)."""
        mid = self.midpoint()
        hw = max(self.hi - mid, mid - self.lo)
        while mid + hw < self.hi or mid - hw > self.lo:
            hw = math.nextafter(hw, math.inf)
        return hw

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi


@dataclass(frozen=True)
class DeltaBounds:
    """Elementary bracket (lower, upper) pinning the remainder delta strictly
    from both sides in exact arithmetic.  The binary64 endpoints may collide
    for astronomically close nu ~ n (harmless: callers only widen by them)."""

    lower: float
    upper: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lower) and math.isfinite(self.upper)):
            raise ValueError("bounds must be finite")
        if self.lower < 0.0 or self.lower > self.upper:
            raise ValueError(f"invalid bracket ({self.lower!r}, {self.upper!r})")


@dataclass(frozen=True)
class RootOrder:
    """Root index r >= 1: terms are k^(1/r).  r=2 is the square root, r=1 the
    exact arithmetic series; non-integer r >= 1 is accepted."""

    r: float

    def __post_init__(self) -> None:
        if isinstance(self.r, (str, bytes)):
            raise TypeError(f"r must be a real number, got {self.r!r}")
        try:
            r = float(self.r)
        except (TypeError, ValueError):
            raise TypeError(f"r must be a real number, got {self.r!r}") from None
        if not math.isfinite(r) or r < 1.0:
            raise ValueError(f"r must be a finite real >= 1, got {self.r!r}")
        object.__setattr__(self, "r", r)


def _widen(lo: float, hi: float, ops: int) -> tuple[float, float]:
    """Outward rounding margin: ops bounds the number of floating operations
    behind each endpoint; 4 ulp per operation swallows their worst case."""
    f = 4.0 * ops
    return lo - f * math.ulp(abs(lo)), hi + f * math.ulp(abs(hi))


def eval_A(x: float) -> float:
    """A(x) = (2/3) sqrt(x+1) (1 + 1/(4x)), strictly increasing for x >= 1.

    floor(A(n)) equals the integer part of the mean of the first n square
    roots; exactfloor computes that without any floating point.
    """
    x = _real_arg(x, 1.0, "x")
    return (2.0 / 3.0) * math.sqrt(x + 1.0) * (1.0 + 0.25 / x)


def sigma(nu: int, n: int) -> float:
    """The elementary remainder bound: 3/2 - n^(-1/2) for nu == 1, else
    (nu-1)^(-1/2) - n^(-1/2).  Arguments may arrive shifted (nu+2, n+2)."""
    nu = _check_float_range(_index(nu, name="nu"), "nu", slack=2)
    n = _check_float_range(_index(n, name="n"), "n", slack=2)
    tail = 1.0 / math.sqrt(_as_exact_float(n, "n"))
    if nu == 1:
        return 1.5 - tail
    return 1.0 / math.sqrt(_as_exact_float(nu - 1, "nu-1")) - tail


def delta_bounds(nu: int, n: int) -> DeltaBounds:
    """The bracket (sigma(nu+2, n+2), sigma(nu, n)) around the remainder
    delta_{nu,n}; requires nu < n."""
    nu = _index(nu, name="nu")
    n = _check_float_range(_index(n, name="n"))
    if nu >= n:
        raise ValueError(f"need nu < n, got nu={nu}, n={n}")
    return DeltaBounds(sigma(nu + 2, n + 2), sigma(nu, n))


_SQRT_SUM_OPS = 8  # float operations per endpoint of the sqrt main term


def _sqrt_sum_raw(nu: int, n: int) -> tuple[float, float]:
    """Pre-widening endpoints [M - upper/24, M - lower/24] with
    M = n A(n) - (2/3) sqrt(nu) (nu - 3/4)."""
    bounds = delta_bounds(nu, n)
    nf = _as_exact_float(n, "n")
    nuf = _as_exact_float(nu, "nu")
    main = nf * eval_A(nf) - (2.0 / 3.0) * math.sqrt(nuf) * (nuf - 0.75)
    return main - bounds.upper / 24.0, main - bounds.lower / 24.0


def partial_sum_sqrt_enclosure(nu: int, n: int) -> Enclosure:
    """Certified enclosure of sum_{k=nu}^{n} sqrt(k) for 1 <= nu < n, without
    summing anything: the closed-form main term minus the delta/24 bracket,
    endpoints widened outward for rounding."""
    lo, hi = _sqrt_sum_raw(nu, n)
    return Enclosure(*_widen(lo, hi, _SQRT_SUM_OPS))


def _pow_value(x: float, e: float) -> tuple[float, float]:
    """x**e as exp(e log x), plus a relative error budget.

    log and exp are assumed faithful (<= 1 ulp each, true of every libm this
    runs on); the budget is dominated by the log error scaled through exp,
    hence grows with |e log x|.
    """
    if x == 1.0 or e == 0.0:
        return 1.0, 2.0 ** -52
    u = e * math.log(x)
    return math.exp(u), (abs(u) + 3.0) * 2.0 ** -50


def _sigma_root(nu: int, n: int, r: float) -> float:
    """sigma_r(nu, n) = 2 - 1/r - n^(-1+1/r) for nu == 1, else
    (nu-1)^(-1+1/r) - n^(-1+1/r)."""
    e = 1.0 / r - 1.0
    tail, _ = _pow_value(float(n), e)
    if nu == 1:
        return 2.0 - 1.0 / r - tail
    head, _ = _pow_value(float(nu - 1), e)
    return head - tail


def _root_main_term(nu: int, n: int, r: float) -> float:
    """The r-th-root main term
    (r/(r+1)) (n+1)^(1/r) (n + (1-1/r)/2) - (r/(r+1)) nu^(1/r) (nu - (1+1/r)/2);
    at r=2 it agrees with n A(n) - (2/3) sqrt(nu)(nu - 3/4) up to rounding."""
    nf = _as_exact_float(n, "n")
    nuf = _as_exact_float(nu, "nu")
    c = r / (r + 1.0)
    head_root, _ = _pow_value(nf + 1.0, 1.0 / r)
    tail_root, _ = _pow_value(nuf, 1.0 / r)
    t1 = c * head_root * (nf + (1.0 - 1.0 / r) / 2.0)
    t2 = c * tail_root * (nuf - (1.0 + 1.0 / r) / 2.0)
    return t1 - t2


def _int_to_float_bracket(v: int) -> tuple[float, float]:
    f = float(v)
    if f == v:
        return f, f
    if f < v:
        return f, math.nextafter(f, math.inf)
    return math.nextafter(f, -math.inf), f


def partial_sum_root_enclosure(nu: int, n: int, r: "RootOrder | float") -> Enclosure:
    """Certified enclosure of sum_{k=nu}^{n} k^(1/r) for 1 <= nu < n, r >= 1.

    r=1 is the exact arithmetic series (zero width).  r=2 returns the exact
    same endpoints as partial_sum_sqrt_enclosure by construction.  Otherwise
    the r-th-root main term minus the sigma_r/(12 r) bracket, widened outward
    including the exp/log evaluation budget.
    """
    order = r if isinstance(r, RootOrder) else RootOrder(float(r))
    nu = _index(nu, name="nu")
    n = _index(n, name="n")
    if nu >= n:
        raise ValueError(f"need nu < n, got nu={nu}, n={n}")
    rv = order.r
    if rv == 1.0:
        # exact integer series: no floating evaluation, so no width limit
        exact = (n * (n + 1) - nu * (nu - 1)) // 2
        return Enclosure(*_int_to_float_bracket(exact))
    _check_float_range(n)
    if rv == 2.0:
        return partial_sum_sqrt_enclosure(nu, n)

    nf = _as_exact_float(n, "n")
    nuf = _as_exact_float(nu, "nu")
    c = rv / (rv + 1.0)
    head_root, rel_head = _pow_value(nf + 1.0, 1.0 / rv)
    tail_root, rel_tail = _pow_value(nuf, 1.0 / rv)
    t1 = c * head_root * (nf + (1.0 - 1.0 / rv) / 2.0)
    t2 = c * tail_root * (nuf - (1.0 + 1.0 / rv) / 2.0)
    main = t1 - t2
    raw_lo = main - _sigma_root(nu, n, rv) / (12.0 * rv)
    raw_hi = main - _sigma_root(nu + 2, n + 2, rv) / (12.0 * rv)
    # evaluation budget: root relative errors magnified by the term sizes,
    # plus a flat allowance for the remaining ~20 operations
    rel = rel_head + rel_tail + 40.0 * 2.0 ** -53
    eta = (abs(t1) + abs(t2)) * rel + 8.0 * math.ulp(max(abs(raw_lo), abs(raw_hi)))
    return Enclosure(raw_lo - eta, raw_hi + eta)


def lemma2_upper(x: float) -> float:
    """(2/3) sqrt(x+2): a strict upper envelope of A(x) for x >= 2."""
    x = _real_arg(x, 2.0, "x")
    return (2.0 / 3.0) * math.sqrt(x + 2.0)


def lemma2_lower(x: float) -> float:
    """(2/3) sqrt(x + 5/4) + 1/(4x): a strict lower envelope of A(x) for x >= 6."""
    x = _real_arg(x, 6.0, "x")
    return (2.0 / 3.0) * math.sqrt(x + 1.25) + 0.25 / x
