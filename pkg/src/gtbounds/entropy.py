"""Scalar function family behind the group-testing converse bounds.

Everything here is a pure function of its numeric arguments, in bits
(logarithms base 2).  The family:

* ``binary_entropy``            -- H(x)
* ``balanced_row_weight``       -- the real pool size k with (1-delta)^k = 1/2
* ``residual_positive_prob``    -- chance a weight-k test fires from its
                                   other k-1 items
* ``conditional_entropy_floor`` -- least entropy a shared item can retain
                                   after s of its tests came back positive;
                                   convex decreasing in s
* ``entropy_rate_cap``          -- per-item cap on the joint outcome entropy
                                   of a weight-k design at rate T = t/n;
                                   concave increasing in T
* ``invert_entropy_rate_cap``   -- numerically certified inverse of the cap
                                   in its rate argument

Designs always use integer row weights, but the family is well defined for
real k >= 1 and the bound-curve reconstruction evaluates it at the real
balanced weight, so k is accepted as any number >= 1 (k = 1 is the exact
special case throughout).
"""

from __future__ import annotations

import math

from .errors import DomainError

__all__ = [
    "DELTA_STAR",
    "INVERSION_TOL",
    "binary_entropy",
    "balanced_row_weight",
    "residual_positive_prob",
    "conditional_entropy_floor",
    "entropy_rate_cap",
    "invert_entropy_rate_cap",
]

#: The defect probability (3 - sqrt(5))/2 above which individual testing is
#: optimal.  It is the unique root of H((1-delta)^2) = H(delta) in (0, 1/2):
#: there zeta = 1 - delta is the golden-ratio conjugate, zeta^2 + zeta = 1.
DELTA_STAR = (3.0 - math.sqrt(5.0)) / 2.0

#: Absolute tolerance (in the function value) of the bisection inverse.
INVERSION_TOL = 1e-10

# Below this the -x*log2(x) term is treated as its limit 0; (1-delta)^(k-1)
# underflows toward 0 during large-k tail scans and must not raise.
_LOG_UNDERFLOW = 1e-300


def _check_delta(delta: float) -> float:
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta must be in (0, 1), got {delta!r}")
    return float(delta)


def _check_row_weight(k: float) -> float:
    if isinstance(k, bool) or not isinstance(k, (int, float)) or math.isnan(k) or k < 1:
        raise DomainError(f"row weight k must be a number >= 1, got {k!r}")
    return float(k)


def binary_entropy(x: float) -> float:
    """H(x) = -x*log2(x) - (1-x)*log2(1-x), with H(0) = H(1) = 0."""
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"binary_entropy needs x in [0, 1], got {x!r}")

    def term(p: float) -> float:
        if p < _LOG_UNDERFLOW:
            return 0.0
        return -p * math.log2(p)

    return term(x) + term(1.0 - x)


def balanced_row_weight(delta: float) -> float:
    """The (real) number of items per test that makes a test a fair coin.

    Returns the k solving (1-delta)^k = 1/2.  Smaller or larger pools are
    biased and carry less than one bit per test.
    """
    delta = _check_delta(delta)
    return math.log(0.5) / math.log(1.0 - delta)


def residual_positive_prob(delta: float, k: float) -> float:
    """Probability 1 - (1-delta)^(k-1) that a weight-k test containing a
    fixed item is positive because of the other k-1 items.  Zero at k = 1.
    """
    delta = _check_delta(delta)
    k = _check_row_weight(k)
    return 1.0 - (1.0 - delta) ** (k - 1.0)


def conditional_entropy_floor(delta: float, k: float, s: float) -> float:
    """Least entropy an item can retain after s positive weight-k tests.

    Evaluates (delta + (1-delta)*p^s) * H(delta / (delta + (1-delta)*p^s))
    with p the residual positive probability.  At s = 0 this is exactly
    H(delta) (convention p^0 = 1 even when p = 0); for k = 1 and s > 0 the
    tests are singletons and the value collapses to 0.
    """
    delta = _check_delta(delta)
    k = _check_row_weight(k)
    if s < 0.0:
        raise DomainError(f"multiplicity s must be >= 0, got {s!r}")
    p = 1.0 - (1.0 - delta) ** (k - 1.0)
    mass = delta + (1.0 - delta) * p ** s  # 0.0 ** 0.0 == 1.0 gives f(0) = H(delta)
    ratio = min(delta / mass, 1.0)
    return mass * binary_entropy(ratio)


def entropy_rate_cap(delta: float, k: float, rate: float) -> float:
    """Per-item upper bound on the joint test-outcome entropy of a
    weight-k design running at ``rate`` tests per item.

    For k = 1 the tests are independent singletons and the cap is exactly
    rate * H(delta).  For k >= 2 shared items bleed information between
    tests and the cap bends below the independent line:

        rate*(1-delta)*H((1-delta)^(k-1))
            + (H(delta) - conditional_entropy_floor(delta, k, k*rate)) / k

    Strictly increasing and concave in ``rate``; 0 at rate 0.
    """
    delta = _check_delta(delta)
    k = _check_row_weight(k)
    if rate < 0.0:
        raise DomainError(f"rate must be >= 0, got {rate!r}")
    if k == 1.0:
        return rate * binary_entropy(delta)
    zeta = 1.0 - delta
    linear = rate * zeta * binary_entropy(zeta ** (k - 1.0))
    return linear + (binary_entropy(delta) - conditional_entropy_floor(delta, k, k * rate)) / k


def invert_entropy_rate_cap(delta: float, k: float, target: float) -> float:
    """Rate T with entropy_rate_cap(delta, k, T) = target, to INVERSION_TOL.

    The cap is continuous, strictly increasing and unbounded in T, so the
    inverse exists and is unique for target >= 0.  Brackets by doubling
    from T = 1, then bisects on the function value.
    """
    delta = _check_delta(delta)
    k = _check_row_weight(k)
    if target < 0.0:
        raise DomainError(f"inverse target must be >= 0, got {target!r}")
    if target == 0.0:
        return 0.0
    if k == 1.0:
        return target / binary_entropy(delta)

    hi = 1.0
    while entropy_rate_cap(delta, k, hi) < target:
        hi *= 2.0
        if hi > 1e18:  # pragma: no cover - slope is strictly positive
            raise DomainError(f"failed to bracket inverse at target {target!r}")
    lo = 0.0
    mid = hi
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        val = entropy_rate_cap(delta, k, mid)
        if abs(val - target) <= INVERSION_TOL:
            return mid
        if val < target:
            lo = mid
        else:
            hi = mid
    return mid
