"""Scaled-integer enclosures for certified comparisons.

A nonnegative real v is represented by an integer bracket (lo, hi) meaning

    lo <= v * 2**BITS <= hi,

maintained exactly under integer arithmetic.  binary64 cannot certify the
remainder recovery

    delta = 24 * (n*A(n) - (2/3)*sqrt(nu)*(nu - 3/4) - sum_{k=nu}^{n} sqrt(k)):

the operands reach ~2e7 while the admissible bracket margin shrinks like
nu^(-3/2) (below 1e-12 for nu near n <= 1e5), so a single rounding of the
main term already overwhelms the comparison.  Scaled integers have no such
limit: at 2**96 scale the bracket widths stay ~24*(n - nu) units, about
3e-23 in real terms over the ranges exercised here.

Internal module; the public floating-point API lives in asymptotic and
evaluator.
"""

from __future__ import annotations

import math

BITS = 96
ONE = 1 << BITS
_SQ_SHIFT = 2 * BITS


def sqrt_enc(k: int) -> tuple[int, int]:
    """Bracket of sqrt(k) * 2**BITS for integer k >= 0."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    v = math.isqrt(k << _SQ_SHIFT)
    return v, v + 1


def rsqrt_enc(x: int) -> tuple[int, int]:
    """Bracket of x**(-1/2) * 2**BITS for integer x >= 1.

    g = isqrt(4**BITS // x) satisfies g <= 2**BITS/sqrt(x) < g + 2: the floor
    division loses < 1 in the radicand, isqrt loses < 1 more, and
    sqrt(q + 1) < sqrt(q) + 1.
    """
    if x < 1:
        raise ValueError(f"x must be >= 1, got {x}")
    g = math.isqrt((1 << _SQ_SHIFT) // x)
    return g, g + 2


def _div6(lo: int, hi: int) -> tuple[int, int]:
    # floor the lower endpoint, ceil the upper
    return lo // 6, -((-hi) // 6)


def nA_enc(n: int) -> tuple[int, int]:
    """Bracket of n * A(n) * 2**BITS, using n*A(n) = (4n+1) sqrt(n+1) / 6
    for A(x) = (2/3) sqrt(x+1) (1 + 1/(4x))."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    s_lo, s_hi = sqrt_enc(n + 1)
    t = 4 * n + 1
    return _div6(t * s_lo, t * s_hi)


def head_enc(nu: int) -> tuple[int, int]:
    """Bracket of (2/3) sqrt(nu) (nu - 3/4) * 2**BITS = (4 nu - 3) sqrt(nu) / 6."""
    if nu < 1:
        raise ValueError(f"nu must be >= 1, got {nu}")
    s_lo, s_hi = sqrt_enc(nu)
    t = 4 * nu - 3
    return _div6(t * s_lo, t * s_hi)


def sqrt_prefix(limit: int) -> list[int]:
    """prefix[j] = sum_{k=1}^{j} floor(sqrt(k) * 2**BITS), prefix[0] = 0.

    Each term undershoots its real value by < 1 scaled unit, so partial sums
    recovered from the prefix carry a bracket of exactly the term count.
    """
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    out = [0] * (limit + 1)
    acc = 0
    for k in range(1, limit + 1):
        acc += math.isqrt(k << _SQ_SHIFT)
        out[k] = acc
    return out


def sum_sqrt_enc(prefix: list[int], a: int, b: int) -> tuple[int, int]:
    """Bracket of sum_{k=a}^{b} sqrt(k) * 2**BITS from a sqrt_prefix table."""
    if not 1 <= a <= b < len(prefix):
        raise ValueError(f"need 1 <= a <= b <= {len(prefix) - 1}, got a={a}, b={b}")
    s = prefix[b] - prefix[a - 1]
    return s, s + (b - a + 1)


def delta_enc(prefix: list[int], nu: int, n: int) -> tuple[int, int]:
    """Bracket of the recovered remainder
    delta = 24 (n A(n) - (2/3) sqrt(nu)(nu - 3/4) - sum_{k=nu}^{n} sqrt(k)),
    scaled by 2**BITS; needs nu < n."""
    if nu >= n:
        raise ValueError(f"need nu < n, got nu={nu}, n={n}")
    a_lo, a_hi = nA_enc(n)
    h_lo, h_hi = head_enc(nu)
    s_lo, s_hi = sum_sqrt_enc(prefix, nu, n)
    return 24 * (a_lo - h_hi - s_hi), 24 * (a_hi - h_lo - s_lo)


def sigma_enc(nu: int, n: int) -> tuple[int, int]:
    """Bracket of sigma(nu, n) * 2**BITS where sigma(1, n) = 3/2 - n**(-1/2)
    and sigma(nu, n) = (nu-1)**(-1/2) - n**(-1/2) for nu >= 2."""
    if nu < 1 or n < 1:
        raise ValueError(f"need nu >= 1 and n >= 1, got nu={nu}, n={n}")
    t_lo, t_hi = rsqrt_enc(n)
    if nu == 1:
        h_lo = h_hi = 3 * ONE // 2  # exact: ONE is even
    else:
        h_lo, h_hi = rsqrt_enc(nu - 1)
    return h_lo - t_hi, h_hi - t_lo
