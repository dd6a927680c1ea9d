"""Pair-splitting adaptive group testing and its Monte Carlo validation.

The algorithm identifies every defective with zero error.  Above the
individual-testing cutoff DELTA_STAR it tests each item on its own;
below it, items are screened in fixed pairs:

    1. test the pair (always);
    2. if the pair is positive, test the first item;
    3. if the first item is positive, test the second item individually
       (the pair outcome says nothing about it any more); if the first
       item is negative, the second must be the defective one and needs
       no further test.

Per pair that is 1 + P(pair positive) + P(first defective) expected tests,
i.e. (3 - zeta - zeta^2)/2 per item with zeta = 1 - delta, capped at 1 by
the individual branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .entropy import DELTA_STAR, _check_delta
from .report import CheckRecord, check_eq

__all__ = [
    "SimConfig",
    "SimReport",
    "identify_defectives",
    "expected_tests_per_item",
    "simulate",
]

_MASK64 = (1 << 64) - 1


def identify_defectives(bits: Sequence[int], delta: float) -> tuple[int, set[int]]:
    """Run the adaptive screen on one defect vector.

    ``bits`` is the ground truth (1 = defective); ``delta`` only selects
    the branch (individual testing at delta >= DELTA_STAR).  Returns
    (tests used, recovered defective set); recovery is exact by
    construction.  An odd leftover item is tested individually.
    """
    delta = _check_delta(delta)
    n = len(bits)
    if n < 1:
        raise ValueError("need at least one item")

    recovered: set[int] = set()
    if delta >= DELTA_STAR:
        for i, x in enumerate(bits):
            if x:
                recovered.add(i)
        return n, recovered

    tests = 0
    for j in range(0, n - 1, 2):
        a, b = bits[j], bits[j + 1]
        tests += 1  # pair test
        if a or b:
            tests += 1  # test first item
            if a:
                recovered.add(j)
                tests += 1  # second item individually
                if b:
                    recovered.add(j + 1)
            else:
                recovered.add(j + 1)  # pair positive, first clean
    if n % 2:
        tests += 1
        if bits[n - 1]:
            recovered.add(n - 1)
    return tests, recovered


def expected_tests_per_item(delta: float) -> float:
    """min(1, (1 + (1 - zeta^2) + (1 - zeta)) / 2) with zeta = 1 - delta."""
    delta = _check_delta(delta)
    zeta = 1.0 - delta
    return min(1.0, 0.5 * (1.0 + (1.0 - zeta * zeta) + (1.0 - zeta)))


@dataclass(frozen=True)
class SimConfig:
    n: int
    delta: float
    trials: int
    seed: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        _check_delta(self.delta)


@dataclass(frozen=True)
class SimReport:
    trials: int
    mean_tests_per_item: float
    stderr: float
    error_count: int
    formula_value: float

    @property
    def z_score(self) -> float:
        if self.stderr == 0.0:
            return 0.0
        return (self.mean_tests_per_item - self.formula_value) / self.stderr

    def records(self) -> tuple[CheckRecord, ...]:
        return (
            check_eq("adaptive_sim_errors", float(self.error_count), 0.0, 0.0),
            CheckRecord(
                "adaptive_sim_mean_vs_formula",
                self.mean_tests_per_item,
                self.formula_value,
                self.formula_value - self.mean_tests_per_item,
                abs(self.z_score) <= 4.0,
            ),
        )


def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    # Counter-based streams keyed by (seed, trial): trials are reproducible
    # and independently schedulable, so aggregates are order-independent.
    key = np.array([seed & _MASK64, trial & _MASK64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def simulate(config: SimConfig) -> SimReport:
    """Run ``trials`` independent screens and compare to the formula.

    Deterministic for a fixed config: trial ``i`` draws its defect vector
    from a Philox stream keyed by (seed, i).
    """
    per_item = np.empty(config.trials, dtype=np.float64)
    errors = 0
    for trial in range(config.trials):
        rng = _trial_rng(config.seed, trial)
        bits = (rng.random(config.n) < config.delta).astype(np.uint8)
        tests, recovered = identify_defectives(bits, config.delta)
        per_item[trial] = tests / config.n
        truth = {int(i) for i in np.flatnonzero(bits)}
        if recovered != truth:
            errors += 1

    mean = float(per_item.mean())
    stderr = float(per_item.std(ddof=1) / math.sqrt(config.trials)) if config.trials > 1 else 0.0
    return SimReport(
        trials=config.trials,
        mean_tests_per_item=mean,
        stderr=stderr,
        error_count=errors,
        formula_value=expected_tests_per_item(config.delta),
    )
