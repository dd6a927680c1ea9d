"""Converse bounds on tests-per-item for non-adaptive probabilistic group
testing in the linear regime, plus the adaptive reference rate, the t/n = 1
crossover, the adaptivity-gap interval, grid sweeps for the bound figure,
and a numerical probe of the mixed-weight relaxation.

All bounds take (delta, epsilon): the i.i.d. defect probability and the
tolerated decoding-error probability.  Values are rates t/n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import adaptive as _adaptive
from .entropy import (
    DELTA_STAR,
    balanced_row_weight,
    binary_entropy,
    entropy_rate_cap,
    invert_entropy_rate_cap,
    _check_delta,
)
from .errors import CrossoverNotFoundError, DomainError

__all__ = [
    "BoundResult",
    "CurveRow",
    "SimplexProbeResult",
    "counting_bound",
    "individual_testing_bound",
    "quantization_bound",
    "fixed_weight_bound",
    "main_bound",
    "adaptive_rate",
    "best_lower_bound",
    "balanced_weight_bound",
    "crossover_delta",
    "adaptivity_gap",
    "sweep",
    "simplex_probe",
    "DELTA_STAR",
]

# The minimized bound sits exactly at 1 on a whole delta interval; this
# absorbs inversion noise when testing "reached the t/n = 1 level".
LEVEL_TOL = 1e-9

# Hard safety ceiling of the certified weight scan, in units of ceil(k0).
_SCAN_CEILING_FACTOR = 10
_SCAN_CEILING_OFFSET = 50


def _check_epsilon(epsilon: float) -> float:
    if not 0.0 <= epsilon < 1.0:
        raise DomainError(f"epsilon must be in [0, 1), got {epsilon!r}")
    return float(epsilon)


@dataclass(frozen=True)
class BoundResult:
    """A named lower bound (or reference rate) with its diagnostics.

    kind is one of counting / individual / quantization / per_k / main /
    adaptive_rate / best_lower.  ``value`` is tests per item (None only for
    an inapplicable individual-testing bound).  main carries the minimizing
    weight and the scan-termination certificate; ``vacuous`` flags targets
    epsilon >= H(delta) where the bound degenerates to 0.
    """

    kind: str
    value: float | None
    argmin_k: int | None = None
    k_scan_limit: int | None = None
    applicable: bool | None = None
    vacuous: bool = False


def counting_bound(delta: float, epsilon: float = 0.0) -> BoundResult:
    """Classical Fano + independence bound: t/n >= H(delta) - epsilon."""
    delta = _check_delta(delta)
    epsilon = _check_epsilon(epsilon)
    return BoundResult("counting", max(0.0, binary_entropy(delta) - epsilon))


def individual_testing_bound(delta: float, epsilon: float = 0.0) -> BoundResult:
    """t/n >= 1 - epsilon/H(delta), valid only for delta >= DELTA_STAR
    (there no pool size carries more entropy than a singleton test).
    """
    delta = _check_delta(delta)
    epsilon = _check_epsilon(epsilon)
    if delta < DELTA_STAR:
        return BoundResult("individual", None, applicable=False)
    value = max(0.0, 1.0 - epsilon / binary_entropy(delta))
    return BoundResult("individual", value, applicable=True)


def quantization_bound(delta: float, epsilon: float = 0.0) -> BoundResult:
    """Counting bound sharpened by integer pool sizes.

    t/n >= (H(delta) - epsilon) / max_k H((1-delta)^k).  Since (1-delta)^k
    is decreasing in k and H peaks at 1/2, the integer maximizer is one of
    the two weights adjacent to the balanced weight k0.
    """
    delta = _check_delta(delta)
    epsilon = _check_epsilon(epsilon)
    k0 = balanced_row_weight(delta)
    candidates = {max(1, math.floor(k0)), max(1, math.ceil(k0))}
    denom = max(binary_entropy((1.0 - delta) ** k) for k in candidates)
    value = max(0.0, binary_entropy(delta) - epsilon) / denom
    return BoundResult("quantization", value)


def _fixed_weight_value(delta: float, epsilon: float, k: int) -> float:
    target = binary_entropy(delta) - epsilon
    if target <= 0.0:
        return 0.0
    return invert_entropy_rate_cap(delta, k, target)


def fixed_weight_bound(delta: float, epsilon: float, k: int) -> BoundResult:
    """t/n >= cap^{-1}(H(delta) - epsilon) for designs of row weight k.

    Vacuous (value 0) when epsilon >= H(delta).
    """
    delta = _check_delta(delta)
    epsilon = _check_epsilon(epsilon)
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"row weight k must be an integer >= 1, got {k!r}")
    vacuous = epsilon >= binary_entropy(delta)
    return BoundResult("per_k", _fixed_weight_value(delta, epsilon, k), argmin_k=k, vacuous=vacuous)


def _scan_envelope(delta: float, epsilon: float, k: int) -> float:
    # With the floor term dropped (f >= 0), cap(T) <= T*(1-d)*H((1-d)^(k-1))
    # + H(d)/k, so the weight-k bound is at least this ratio; the envelope
    # increases in k once (1-delta)^(k-1) has fallen below 1/2.
    h = binary_entropy(delta)
    denom = (1.0 - delta) * binary_entropy((1.0 - delta) ** (k - 1))
    if denom <= 0.0:
        return math.inf
    return (h - epsilon - h / k) / denom


def main_bound(delta: float, epsilon: float = 0.0) -> BoundResult:
    """The minimized converse: min over integer row weights k of the
    fixed-weight bound.

    The scan over k terminates with a certificate: past ceil(k0) + 2 the
    dropped-floor envelope is increasing in k, so the first k whose
    envelope exceeds the best value found proves no later weight can win.
    That k is reported as ``k_scan_limit``.
    """
    delta = _check_delta(delta)
    epsilon = _check_epsilon(epsilon)
    h = binary_entropy(delta)
    if epsilon >= h:
        return BoundResult("main", 0.0, vacuous=True)

    k0 = balanced_row_weight(delta)
    certify_from = math.ceil(k0) + 2
    ceiling = _SCAN_CEILING_FACTOR * math.ceil(k0) + _SCAN_CEILING_OFFSET

    best = math.inf
    best_k = 0
    scan_limit = None
    k = 1
    while k <= ceiling:
        if k > certify_from and _scan_envelope(delta, epsilon, k) > best:
            scan_limit = k
            break
        value = _fixed_weight_value(delta, epsilon, k)
        if value < best:
            best = value
            best_k = k
        k += 1
    if scan_limit is None:  # pragma: no cover - ceiling is never binding
        scan_limit = ceiling
    return BoundResult("main", best, argmin_k=best_k, k_scan_limit=scan_limit)


def adaptive_rate(delta: float) -> BoundResult:
    """Expected tests per item of the zero-error adaptive pair screen."""
    return BoundResult("adaptive_rate", _adaptive.expected_tests_per_item(delta))


def best_lower_bound(delta: float, epsilon: float = 0.0) -> BoundResult:
    """Max of the applicable lower bounds (counting, quantization,
    individual where valid, main)."""
    candidates = [
        counting_bound(delta, epsilon).value,
        quantization_bound(delta, epsilon).value,
        main_bound(delta, epsilon).value,
    ]
    individual = individual_testing_bound(delta, epsilon)
    if individual.applicable:
        candidates.append(individual.value)
    return BoundResult("best_lower", max(candidates))


def balanced_weight_bound(delta: float, epsilon: float = 0.0) -> float:
    """The bound curve evaluated at the real balanced weight k0(delta),
    capped by the k = 1 term.

    This is the curve behind the quoted cutoff constants: its t/n = 1
    crossing sits at delta = 0.34743 (the "0.3471" cutoff), whereas the
    certified integer minimization main_bound crosses earlier, at
    delta = 0.34371.  Exposed so the crossover and gap locate the quoted
    constants while main_bound stays the sound integer-weight statement.
    """
    delta = _check_delta(delta)
    epsilon = _check_epsilon(epsilon)
    h = binary_entropy(delta)
    target = h - epsilon
    if target <= 0.0:
        return 0.0
    k0 = max(1.0, balanced_row_weight(delta))
    return min(target / h, invert_entropy_rate_cap(delta, k0, target))


def crossover_delta(epsilon: float = 0.0, tol: float = 1e-5) -> float:
    """Smallest delta at which the bound curve reaches the t/n = 1 level.

    Scans (0, 0.5] for one-sidedness of the predicate, then bisects to
    ``tol``.  Raises CrossoverNotFoundError when no delta qualifies (any
    epsilon beyond ~1e-9 caps the curve strictly below 1).
    """
    epsilon = _check_epsilon(epsilon)

    def reached(d: float) -> bool:
        return balanced_weight_bound(d, epsilon) >= 1.0 - LEVEL_TOL

    grid = [i / 100.0 for i in range(1, 51)]
    flags = [reached(d) for d in grid]
    if True not in flags:
        raise CrossoverNotFoundError(
            f"bound never reaches t/n = 1 on (0, 0.5] at epsilon={epsilon!r}"
        )
    first = flags.index(True)
    if any(flags[first:]) != all(flags[first:]):
        raise CrossoverNotFoundError("predicate is not one-sided on the bracket")
    if first == 0:
        return grid[0]

    lo, hi = grid[first - 1], grid[first]
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if reached(mid):
            hi = mid
        else:
            lo = mid
    return hi


def adaptivity_gap(epsilon: float = 0.0) -> tuple[float, float] | None:
    """The delta interval (crossover, DELTA_STAR) where zero-error adaptive
    testing beats every vanishing-error non-adaptive scheme.

    Returns None (empty interval) when the crossover does not exist or
    lands at or above DELTA_STAR.
    """
    try:
        lo = crossover_delta(epsilon)
    except CrossoverNotFoundError:
        return None
    if lo >= DELTA_STAR:
        return None
    return lo, DELTA_STAR


@dataclass(frozen=True)
class CurveRow:
    """One delta of the bound figure; None marks an inapplicable column."""

    delta: float
    epsilon: float
    counting: float | None = None
    quantization: float | None = None
    individual: float | None = None
    main: float | None = None
    main_argmin_k: int | None = None
    adaptive_rate: float | None = None
    best_lower: float | None = None
    gap_flag: bool | None = None
    error: str | None = None


def _curve_row(delta: float, epsilon: float) -> CurveRow:
    main = main_bound(delta, epsilon)
    individual = individual_testing_bound(delta, epsilon)
    adaptive = _adaptive.expected_tests_per_item(delta)
    columns = {
        "counting": counting_bound(delta, epsilon).value,
        "quantization": quantization_bound(delta, epsilon).value,
        "individual": individual.value if individual.applicable else None,
        "main": main.value,
        "adaptive_rate": adaptive,
    }
    best = max(
        columns["counting"], columns["quantization"], columns["main"],
        columns["individual"] if columns["individual"] is not None else 0.0,
    )
    # Gap region: the curve forces >= n tests while
    # the adaptive screen needs fewer.
    gap = (
        balanced_weight_bound(delta, epsilon) >= 1.0 - LEVEL_TOL
        and adaptive < 1.0 - LEVEL_TOL
    )
    return CurveRow(
        delta=delta,
        epsilon=epsilon,
        counting=columns["counting"],
        quantization=columns["quantization"],
        individual=columns["individual"],
        main=columns["main"],
        main_argmin_k=main.argmin_k,
        adaptive_rate=adaptive,
        best_lower=best,
        gap_flag=gap,
    )


def sweep(deltas: Sequence[float], epsilon: float = 0.0) -> list[CurveRow]:
    """One CurveRow per grid delta, in grid order.

    Rows are independent; a failing delta yields a row carrying the error
    instead of aborting the sweep.
    """
    epsilon = _check_epsilon(epsilon)
    rows = []
    for delta in deltas:
        try:
            rows.append(_curve_row(delta, epsilon))
        except Exception as exc:  # noqa: BLE001 - flagged row, never abort
            rows.append(CurveRow(delta=delta, epsilon=epsilon, error=str(exc)))
    return rows


@dataclass(frozen=True)
class SimplexProbeResult:
    vertex_max: float
    simplex_max: float
    gap: float
    weights: tuple[float, ...]


def simplex_probe(
    delta: float, rate: float, kmax: int, resolution: int = 200
) -> SimplexProbeResult:
    """Compare the best single weight against mixtures of weights.

    vertex_max is max_k cap(delta, k, rate) over k <= kmax; simplex_max
    maximizes sum_k cap(delta, k, alpha_k * rate) over the weight simplex
    by pairwise-coordinate ascent with a refined grid line search.  A
    positive gap (simplex - vertex) means splitting the test budget over
    several weights beats every single weight, so reducing the mixture
    maximization to its vertices loses tightness; reported, not asserted.
    """
    delta = _check_delta(delta)
    if kmax < 1:
        raise DomainError(f"kmax must be >= 1, got {kmax!r}")
    if resolution < 10:
        raise DomainError(f"resolution must be >= 10, got {resolution!r}")
    if rate < 0.0:
        raise DomainError(f"rate must be >= 0, got {rate!r}")

    caps = [entropy_rate_cap(delta, k, rate) for k in range(1, kmax + 1)]
    vertex_max = max(caps)
    vertex_k = caps.index(vertex_max)
    if kmax == 1:
        return SimplexProbeResult(vertex_max, vertex_max, 0.0, (1.0,))

    def objective(alpha: list[float]) -> float:
        return sum(
            entropy_rate_cap(delta, k + 1, alpha[k] * rate) for k in range(kmax)
        )

    alpha = [0.0] * kmax
    alpha[vertex_k] = 1.0
    best = objective(alpha)

    def line_search(i: int, j: int) -> bool:
        # Redistribute the mass held by coordinates i and j.
        mass = alpha[i] + alpha[j]
        if mass <= 0.0:
            return False
        nonlocal best
        lo, hi = 0.0, mass
        best_x, improved = alpha[i], False
        for _ in range(3):  # refine the grid around the best split
            step = (hi - lo) / resolution
            for q in range(resolution + 1):
                x = lo + q * step
                alpha[i], alpha[j] = x, mass - x
                val = objective(alpha)
                if val > best + 1e-15:
                    best, best_x, improved = val, x, True
            lo, hi = max(0.0, best_x - step), min(mass, best_x + step)
        alpha[i], alpha[j] = best_x, mass - best_x
        return improved

    for _ in range(50):
        improved = False
        for i in range(kmax):
            for j in range(i + 1, kmax):
                improved |= line_search(i, j)
        if not improved:
            break

    return SimplexProbeResult(vertex_max, best, best - vertex_max, tuple(alpha))
