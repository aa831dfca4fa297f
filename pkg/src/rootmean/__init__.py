"""rootmean: certified arithmetic means of square (and r-th) roots of the
first n integers, and exact integer parts of those means at any scale.

The mean Sigma(n) = (1/n) sum_{k=1}^{n} sqrt(k) admits the closed-form
proxy A(x) = (2/3) sqrt(x+1) (1 + 1/(4x)), with floor(Sigma(n)) =
floor(A(n)) for every n >= 1.  This package exposes:

- exact integer floors of Sigma(n) for arbitrary-size n (exactfloor),
- rigorous enclosures for partial sums of r-th roots (asymptotic),
- a fast certified mean evaluator with user-chosen error tolerance,
  validated against a hardened direct-summation oracle (evaluator),
- a CLI: rootmean {floor,mean,sum,verify,bench} (cli).
"""

from .asymptotic import (
    DeltaBounds,
    Enclosure,
    RootOrder,
    delta_bounds,
    eval_A,
    lemma2_lower,
    lemma2_upper,
    partial_sum_root_enclosure,
    partial_sum_sqrt_enclosure,
    sigma,
)
from .evaluator import (
    CertifiedMean,
    EvalPlan,
    choose_nu,
    fast_mean,
    mean_decomposition_check,
    oracle_mean,
    oracle_sum_sqrt,
    sweep_theorem1,
)
from .exactfloor import (
    AlphaThreshold,
    Index,
    alpha_floor,
    floor_A_exact,
    floor_via_alpha,
    isqrt,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    "Index",
    "isqrt",
    "floor_A_exact",
    "floor_via_alpha",
    "alpha_floor",
    "AlphaThreshold",
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
    "EvalPlan",
    "CertifiedMean",
    "choose_nu",
    "fast_mean",
    "mean_decomposition_check",
    "oracle_sum_sqrt",
    "oracle_mean",
    "sweep_theorem1",
]
