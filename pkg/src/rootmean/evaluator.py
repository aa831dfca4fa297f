"""Fast certified means: a hardened summation oracle, split-point selection,
and the closed-form approximation

    Sigma~(nu, n) = (1/n) (n A(n) + nu Sigma(nu) - nu A(nu)),

whose absolute error on the true mean Sigma(n) is bounded by

    (1/24) n^(-3/2) ((nu/n)^(-1/2) - 1)      (valid for nu <= n - 2):

only the first nu terms are ever summed; the rest is absorbed by the same
identity that backs partial_sum_sqrt_enclosure.  Direct summation is kept as
the ground-truth oracle (and as the answer for small n), with a rigorous
accumulated-rounding bound so it can certify everything else.
"""

from __future__ import annotations

import decimal
import math
import operator
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _scaled
from .asymptotic import DeltaBounds, Enclosure, delta_bounds, eval_A
from .exactfloor import alpha_floor, floor_A_exact

__all__ = [
    "EvalPlan",
    "CertifiedMean",
    "DEFAULT_DIRECT_THRESHOLD",
    "DEFAULT_NU_MIN",
    "oracle_sum_sqrt",
    "oracle_mean",
    "choose_nu",
    "fast_mean",
    "mean_decomposition_check",
    "sweep_theorem1",
]

_CHUNK = 1 << 20  # fixed partition: reductions are bit-reproducible
_DEFAULT_CAP = 100_000_000
_MAX_EXACT = 2 ** 53

DEFAULT_DIRECT_THRESHOLD = 10_000
DEFAULT_NU_MIN = 16


def _check_index(n: object, name: str) -> int:
    if isinstance(n, bool):
        raise TypeError(f"{name} must be an integer, not bool")
    try:
        n = operator.index(n)  # type: ignore[arg-type]
    except TypeError:
        raise TypeError(f"{name} must be an exact integer, got {n!r}") from None
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")
    return n


def _check_eps(epsilon: float) -> float:
    epsilon = float(epsilon)
    if not math.isfinite(epsilon) or epsilon <= 0.0:
        raise ValueError(f"epsilon must be a finite positive real, got {epsilon!r}")
    return epsilon


def _oracle_cap(cap: "int | None") -> int:
    if cap is None:
        cap = int(os.environ.get("ROOTMEAN_ORACLE_CAP", _DEFAULT_CAP))
    if cap < 1:
        raise ValueError(f"oracle cap must be >= 1, got {cap}")
    return cap


def _two_sum(total: float, x: float, comp: float) -> tuple[float, float]:
    """One compensated-summation step: total+x with the exact rounding
    residual folded into comp (the branch makes the residual exact)."""
    t = total + x
    if abs(total) >= abs(x):
        residual = (total - t) + x
    else:
        residual = (x - t) + total
    return t, comp + residual


def oracle_sum_sqrt(nu: int, n: int, *, cap: "int | None" = None) -> Enclosure:
    """Ground-truth enclosure of sum_{k=nu}^{n} sqrt(k) by direct summation.

    Per fixed chunk: correctly rounded square roots, an exact-in-sum fsum
    (one rounding total), then an error-free compensated carry across
    chunks.  The enclosure width is a rigorous bound on every rounding
    committed: 0.5 spacing per term, 0.5 ulp per chunk readout, 0.5 ulp per
    carry update, 0.5 ulp for the final collapse.
    """
    nu = _check_index(nu, "nu")
    n = _check_index(n, "n")
    if nu > n:
        raise ValueError(f"need nu <= n, got nu={nu}, n={n}")
    if n > _MAX_EXACT:
        raise ValueError(
            f"n={n} exceeds the binary64-exact integer range 2**53; "
            "use the exact integer routines (floor_A_exact) for floors"
        )
    cap = _oracle_cap(cap)
    count = n - nu + 1
    if count > cap:
        raise ValueError(f"range of {count} terms exceeds the oracle cap {cap}")

    total, comp = 0.0, 0.0
    err = 0.0
    for a in range(nu, n + 1, _CHUNK):
        b = min(a + _CHUNK - 1, n)
        roots = np.sqrt(np.arange(a, b + 1, dtype=np.float64))
        chunk = math.fsum(roots)
        err += 0.5 * float(np.sum(np.spacing(roots))) * (1.0 + 2.0 ** -40)
        err += 0.5 * math.ulp(abs(chunk))
        total, comp = _two_sum(total, chunk, comp)
        err += 0.5 * math.ulp(abs(comp))
    s = total + comp
    err += 0.5 * math.ulp(abs(s))
    err *= 1.0 + 2.0 ** -30  # swallows the rounding of the err accumulation itself
    return Enclosure(
        math.nextafter(s - err, -math.inf), math.nextafter(s + err, math.inf)
    )


def oracle_mean(n: int, *, cap: "int | None" = None) -> Enclosure:
    """Enclosure of the mean Sigma(n): oracle sum over [1, n] divided by n,
    endpoints rounded outward."""
    n = _check_index(n, "n")
    s = oracle_sum_sqrt(1, n, cap=cap)
    return Enclosure(
        math.nextafter(s.lo / n, -math.inf), math.nextafter(s.hi / n, math.inf)
    )


@dataclass(frozen=True)
class EvalPlan:
    """How a mean query will be answered: split at nu (sum only 1..nu, close
    the rest in one formula) or direct (sum everything)."""

    n: int
    epsilon: float
    nu: int
    direct_threshold: int
    method: str  # "direct" | "split"

    def __post_init__(self) -> None:
        if self.method not in ("direct", "split"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.nu < 1:
            raise ValueError(f"nu must be >= 1, got {self.nu}")
        if self.method == "split" and self.nu > self.n - 2:
            raise ValueError(
                f"split plans need nu <= n - 2, got nu={self.nu}, n={self.n}"
            )


@dataclass(frozen=True)
class CertifiedMean:
    """A mean with a guaranteed absolute error bound: |true - value| is at
    most error_bound.  value is the binary64 rounding of the certified
    midpoint; decimal_value is the shortest decimal of that midpoint which
    still parses back to value, so prints carry the midpoint's true leading
    digits (the payload's own shortest repr can disagree in the last place).
    """

    value: float
    error_bound: float
    method: str
    plan: EvalPlan
    decimal_value: str


def choose_nu(
    n: int,
    epsilon: float,
    *,
    direct_threshold: int = DEFAULT_DIRECT_THRESHOLD,
    nu_min: int = DEFAULT_NU_MIN,
) -> EvalPlan:
    """Split-point selection: nu = max(1, ceil(n (24 eps n^(3/2) + 1)^(-2)))
    drives the closed-form remainder bound to <= eps.  The point is clamped
    up to nu_min (a tiny oracle leg is cheap and better conditioned); n below
    direct_threshold, or a formula value violating nu <= n - 2, selects
    direct summation instead.
    """
    n = _check_index(n, "n")
    epsilon = _check_eps(epsilon)
    if n > _MAX_EXACT:
        raise ValueError(
            f"n={n} exceeds the binary64-exact integer range 2**53; "
            "use the exact integer routines (floor_A_exact) for floors"
        )
    if n < max(direct_threshold, 3):
        return EvalPlan(n, epsilon, n, direct_threshold, "direct")
    t = 24.0 * epsilon * float(n) ** 1.5
    nu = max(1, math.ceil(float(n) / ((t + 1.0) * (t + 1.0))))
    nu = max(nu, nu_min)
    if nu > n - 2:
        return EvalPlan(n, epsilon, n, direct_threshold, "direct")
    return EvalPlan(n, epsilon, nu, direct_threshold, "split")


def _float_upper(value: Fraction) -> float:
    """Smallest binary64 >= the exact rational value."""
    f = float(value)
    while Fraction(f) < value:
        f = math.nextafter(f, math.inf)
    return f


def _shortest_roundtrip(mid: Fraction, payload: float) -> str:
    """Shortest decimal rendering of the certified midpoint that still parses
    back to the binary64 payload."""
    with decimal.localcontext() as ctx:
        ctx.prec = 40
        d = decimal.Decimal(mid.numerator) / decimal.Decimal(mid.denominator)
    for digits in range(1, 18):
        with decimal.localcontext() as ctx:
            ctx.prec = digits
            cand = str(+d)  # unary plus rounds to the context precision
        if float(cand) == payload:
            return cand
    return repr(payload)


def _eq_error_bound_up(n: int, nu: int) -> float:
    """Upper evaluation of the closed-form remainder bound
    (1/24) n^(-3/2) ((nu/n)^(-1/2) - 1) = (1/(n sqrt(nu)) - n^(-3/2)) / 24."""
    nf = float(n)
    a = 1.0 / (nf * math.sqrt(float(nu)))  # three roundings: rel error < 2**-51
    b = 1.0 / (nf * math.sqrt(nf))
    up = (a * (1.0 + 2.0 ** -48) - b * (1.0 - 2.0 ** -48)) / 24.0
    return up * (1.0 + 2.0 ** -48)


def _readout_margin(value: float) -> Fraction:
    return Fraction(math.ulp(abs(value) if value != 0.0 else 1.0))


def _split_mean(plan: EvalPlan, cap: "int | None") -> CertifiedMean:
    n, nu = plan.n, plan.nu
    head = oracle_sum_sqrt(1, nu, cap=cap)  # this sum *is* nu * Sigma(nu)
    head_lo, head_hi = Fraction(head.lo), Fraction(head.hi)
    a_n_lo, a_n_hi = _scaled.nA_enc(n)  # n A(n), scaled 2**96
    a_nu_lo, a_nu_hi = _scaled.nA_enc(nu)  # nu A(nu), scaled 2**96
    scale = _scaled.ONE
    # exact rational interval for Sigma~ = (n A(n) + nu Sigma(nu) - nu A(nu)) / n;
    # binary64 would cancel ~n^(3/2)-sized operands down to the 1e-7 scale and
    # lose the certification, so the one rounding happens at the readout below
    lo = (Fraction(a_n_lo, scale) + head_lo - Fraction(a_nu_hi, scale)) / n
    hi = (Fraction(a_n_hi, scale) + head_hi - Fraction(a_nu_lo, scale)) / n
    mid = (lo + hi) / 2
    half = (hi - lo) / 2
    value = float(mid)
    bound = Fraction(_eq_error_bound_up(n, nu)) + half + _readout_margin(value)
    return CertifiedMean(
        value, _float_upper(bound), "split", plan, _shortest_roundtrip(mid, value)
    )


def _direct_mean(plan: EvalPlan, cap: "int | None") -> CertifiedMean:
    enc = oracle_mean(plan.n, cap=cap)
    lo, hi = Fraction(enc.lo), Fraction(enc.hi)
    mid = (lo + hi) / 2
    value = float(mid)
    bound = (hi - lo) / 2 + _readout_margin(value)
    return CertifiedMean(
        value, _float_upper(bound), "direct", plan, _shortest_roundtrip(mid, value)
    )


def fast_mean(
    n: int,
    epsilon: float,
    *,
    nu: "int | None" = None,
    direct_threshold: int = DEFAULT_DIRECT_THRESHOLD,
    nu_min: int = DEFAULT_NU_MIN,
    cap: "int | None" = None,
) -> CertifiedMean:
    """Certified mean of the first n square roots with error_bound <= epsilon.

    The split path sums only 1..nu and closes the rest with Sigma~; its
    A-terms are bracketed in exact scaled integers and combined with the
    oracle sum as exact rationals, so the only binary64 rounding is the final
    readout.  The remainder bound can sit within rounding slack of epsilon,
    in which case the split point is raised and ultimately the direct oracle
    answers.  A forced nu that cannot certify epsilon raises instead of
    returning a looser bound.
    """
    n = _check_index(n, "n")
    epsilon = _check_eps(epsilon)
    if n > _MAX_EXACT:
        raise ValueError(
            f"n={n} exceeds the binary64-exact integer range 2**53; "
            "use the exact integer routines (floor_A_exact) for floors"
        )
    if nu is not None:
        nu = _check_index(nu, "nu")
        if nu > n - 2:
            raise ValueError(f"forced nu must satisfy nu <= n - 2, got nu={nu}, n={n}")
        plan = EvalPlan(n, epsilon, nu, direct_threshold, "split")
        result = _split_mean(plan, cap)
        if result.error_bound > epsilon:
            raise ValueError(
                f"forced nu={nu} cannot certify epsilon={epsilon!r}: "
                f"achieved bound {result.error_bound!r}"
            )
        return result

    plan = choose_nu(n, epsilon, direct_threshold=direct_threshold, nu_min=nu_min)
    while plan.method == "split":
        result = _split_mean(plan, cap)
        if result.error_bound <= epsilon:
            return result
        bigger = min(4 * plan.nu, n - 2)
        if bigger <= plan.nu:
            break
        plan = EvalPlan(n, epsilon, bigger, plan.direct_threshold, "split")
    result = _direct_mean(EvalPlan(n, epsilon, n, direct_threshold, "direct"), cap)
    if result.error_bound > epsilon:
        raise ValueError(
            f"cannot certify epsilon={epsilon!r} for n={n}: "
            f"best achievable bound {result.error_bound!r}"
        )
    return result


def mean_decomposition_check(
    n: int, *, cap: "int | None" = None
) -> tuple[float, DeltaBounds]:
    """Recover the remainder delta_{1,n} from the mean identity
    Sigma(n) = A(n) - 1/(6n) - delta_{1,n}/(24 n) using the oracle mean, and
    return it with its elementary bracket (the caller asserts containment).

    At nu=1 the bracket margins are O(1), about 0.18 at worst over the
    oracle range, far above both the oracle width and the ~24n ulp(A(n))
    recovery error, so binary64 decides this safely (unlike general nu ~ n,
    which needs the scaled-integer path).
    """
    n = _check_index(n, "n")
    if n < 2:
        raise ValueError(f"need n >= 2, got n={n}")
    mid = oracle_mean(n, cap=cap).midpoint()
    nf = float(n)
    delta = 24.0 * nf * (eval_A(nf) - 1.0 / (6.0 * nf) - mid)
    return delta, delta_bounds(1, n)


def _expected_floor_table(max_n: int) -> np.ndarray:
    """expected[n] = floor_A_exact(n) for 1 <= n <= max_n, built from the
    alpha thresholds: the floor is non-decreasing (A is strictly increasing)
    and steps exactly at the thresholds, so checking the exact floor at both
    ends of every block pins the whole block."""
    expected = np.zeros(max_n + 1, dtype=np.int32)
    m, start = 1, 1
    while start <= max_n:
        end = min(alpha_floor(m), max_n)
        if floor_A_exact(start) != m or floor_A_exact(end) != m:
            raise AssertionError("alpha threshold table disagrees with exact floor")
        expected[start : end + 1] = m
        m += 1
        start = end + 1
    return expected


def _prefix_mean_chunks(max_n: int):
    """Yield (a, b, means, mean_bound) per fixed chunk, where means[i]
    approximates Sigma(a+i) and mean_bound[i] is a rigorous bound on its
    total rounding error (correctly rounded terms, sequential in-chunk
    cumsum, compensated carry across chunks, and the final division)."""
    carry_s, carry_c = 0.0, 0.0
    base_err = 0.0
    for a in range(1, max_n + 1, _CHUNK):
        b = min(a + _CHUNK - 1, max_n)
        ks = np.arange(a, b + 1, dtype=np.float64)
        roots = np.sqrt(ks)
        loc = np.cumsum(roots)
        prefix = (carry_s + loc) + carry_c
        term_err = 0.5 * np.cumsum(np.spacing(roots))
        accum_err = 0.5 * np.cumsum(np.spacing(loc))
        bound = base_err + (term_err + accum_err + 2.0 * np.spacing(prefix)) * (
            1.0 + 2.0 ** -40
        )
        means = prefix / ks
        mean_bound = bound / ks * (1.0 + 2.0 ** -40) + np.spacing(np.abs(means))
        yield a, b, means, mean_bound
        chunk_total = math.fsum(roots)
        base_err += 0.5 * float(np.sum(np.spacing(roots))) * (1.0 + 2.0 ** -40)
        base_err += 0.5 * math.ulp(abs(chunk_total))
        carry_s, carry_c = _two_sum(carry_s, chunk_total, carry_c)
        base_err += 0.5 * math.ulp(abs(carry_c) if carry_c != 0.0 else 1e-300)


def _oracle_mean_many(
    ns, *, cap: "int | None" = None
) -> "dict[int, Enclosure]":
    """Oracle mean enclosures at several points in one prefix pass (the same
    rigorous bounds as the floor sweep, read off at the requested marks)."""
    marks = sorted({_check_index(int(x), "n") for x in ns})
    if not marks:
        return {}
    top = marks[-1]
    cap = _oracle_cap(cap)
    if top > cap:
        raise ValueError(f"range of {top} terms exceeds the oracle cap {cap}")
    out: dict[int, Enclosure] = {}
    it = iter(marks)
    want = next(it)
    for a, b, means, mean_bound in _prefix_mean_chunks(top):
        while want is not None and want <= b:
            i = want - a
            lo = math.nextafter(float(means[i] - mean_bound[i]), -math.inf)
            hi = math.nextafter(float(means[i] + mean_bound[i]), math.inf)
            out[want] = Enclosure(lo, hi)
            want = next(it, None)
    return out


def sweep_theorem1(
    max_n: int, *, cap: "int | None" = None
) -> tuple[int, list[tuple[int, int, int]]]:
    """Verify that the exact closed-form floor matches the oracle floor of
    Sigma(n) for every n in [1, max_n].  Returns (checked, mismatches),
    each mismatch being (n, expected_floor, oracle_floor).

    Any n whose oracle enclosure straddles an integer (n=1 does: Sigma(1) is
    exactly 1) is decided by an exact scaled-integer prefix instead of
    binary64; with the rigorous bounds at ~1e-8 and the closest non-integer
    mean at distance 8.3e-5 (n=995005 within the first 10^6), straddles
    beyond n=1 would signal degenerate bounds and fail loudly.
    """
    max_n = _check_index(max_n, "max_n")
    cap = _oracle_cap(cap)
    if max_n > cap:
        raise ValueError(f"range of {max_n} terms exceeds the oracle cap {cap}")
    if max_n > _MAX_EXACT:
        raise ValueError(f"max_n={max_n} exceeds the binary64-exact range 2**53")

    expected = _expected_floor_table(max_n)
    mismatches: list[tuple[int, int, int]] = []
    undecided: list[int] = []
    checked = 0
    for a, b, means, mean_bound in _prefix_mean_chunks(max_n):
        flo = np.floor(means - mean_bound)
        fhi = np.floor(means + mean_bound)
        exp_slice = expected[a : b + 1]
        decided = flo == fhi
        for i in np.nonzero(decided & (flo != exp_slice))[0]:
            mismatches.append((a + int(i), int(exp_slice[i]), int(flo[i])))
        undecided.extend(a + int(i) for i in np.nonzero(~decided)[0])
        checked += b - a + 1

    if undecided:
        if len(undecided) > 64:
            raise AssertionError(
                f"{len(undecided)} straddling prefixes: error bounds degenerate"
            )
        prefix = _scaled.sqrt_prefix(max(undecided))
        for n_i in undecided:
            s_lo, s_hi = _scaled.sum_sqrt_enc(prefix, 1, n_i)
            denom = n_i * _scaled.ONE
            f_lo, f_hi = s_lo // denom, s_hi // denom
            if f_lo != f_hi:
                raise AssertionError(
                    f"scaled prefix cannot separate the mean at n={n_i}"
                )
            if int(f_lo) != int(expected[n_i]):
                mismatches.append((n_i, int(expected[n_i]), int(f_lo)))
    mismatches.sort()
    return checked, mismatches
