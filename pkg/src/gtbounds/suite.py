"""The full oracle verification suite.

Runs every exact check over seeded fuzz corpora and exhaustive small
families, and returns line-serializable records: one summary record per
component (carrying its worst case) plus every failing case individually.
Sub-streams are derived from the master seed by case index, so corpora are
reproducible and partitionable.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .entropy import binary_entropy
from .oracle import (
    TestMatrix,
    enumerate_distribution,
    iter_placements,
    prob_all_positive,
    verify_conditional_entropy_bound,
    verify_disjoint_minimum,
    verify_fractional_cover_bound,
    verify_joint_entropy_cap,
    verify_overlap_identities,
)
from .report import CheckRecord, check_eq, check_le, digest

__all__ = ["SuiteResult", "run_suite", "iter_common_item_matrices", "DEFAULT_SEED"]

DEFAULT_SEED = 20250810


@dataclass(frozen=True)
class SuiteResult:
    records: tuple[CheckRecord, ...]
    checks_run: int

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> tuple[CheckRecord, ...]:
        return tuple(r for r in self.records if not r.passed)


def _stream(seed: int, component: int) -> random.Random:
    return random.Random(seed * 1_000_003 + component)


def _random_matrix(rng: random.Random, max_n: int, max_t: int) -> TestMatrix:
    n = rng.randint(2, max_n)
    t = rng.randint(1, max_t)
    rows = tuple(
        frozenset(rng.sample(range(n), rng.randint(1, n))) for _ in range(t)
    )
    return TestMatrix(n, rows)


def _summarize(
    name: str, records: Sequence[CheckRecord], worst: CheckRecord | None
) -> list[CheckRecord]:
    """One summary line per component plus each failing case."""
    out: list[CheckRecord] = []
    if worst is not None:
        out.append(
            CheckRecord(
                f"{name}[{len(records)}cases,worst={worst.name}]",
                worst.lhs,
                worst.rhs,
                worst.slack,
                all(r.passed for r in records),
            )
        )
    out.extend(r for r in records if not r.passed)
    return out


def _worst_le(records: Sequence[CheckRecord]) -> CheckRecord | None:
    return min(records, key=lambda r: r.slack, default=None)


def _worst_eq(records: Sequence[CheckRecord]) -> CheckRecord | None:
    return max(records, key=lambda r: abs(r.slack), default=None)


def iter_common_item_matrices(
    k: int, s: int, max_items: int
) -> Iterator[TestMatrix]:
    """All matrices of s weight-k tests sharing item 0, one per item
    relabeling class of the reduced (item-0-removed) rows."""
    if k == 1:
        yield TestMatrix(1, tuple(frozenset({0}) for _ in range(s)))
        return
    for reduced in iter_placements([k - 1] * s, max_items - 1):
        used = 1 + len(frozenset().union(*reduced))
        rows = tuple(frozenset({0}) | frozenset(i + 1 for i in r) for r in reduced)
        yield TestMatrix(used, rows)


def run_suite(
    seed: int = DEFAULT_SEED,
    max_n: int = 12,
    tolerance: float = 1e-12,
    cases: int = 500,
) -> SuiteResult:
    """Run every oracle component; see the module docstring."""
    if max_n < 2:
        raise ValueError(f"max_n must be >= 2, got {max_n}")
    if tolerance < 0:
        raise ValueError(f"tolerance must be >= 0, got {tolerance}")
    out: list[CheckRecord] = []
    total = 0

    # -- enumeration sanity + inclusion-exclusion fuzz ----------------------
    rng = _stream(seed, 1)
    sanity: list[CheckRecord] = []
    ie: list[CheckRecord] = []
    for case in range(cases):
        m = _random_matrix(rng, min(max_n, 12), 6)
        delta = round(rng.uniform(0.05, 0.95), 6)
        dig = digest(case, m.rows, delta)
        dist = enumerate_distribution(m, delta)
        sanity.append(
            check_eq(f"enum_total[{dig}]", float(dist.probs.sum()), 1.0, tolerance)
        )
        worst_marginal = max(
            (
                abs(
                    dist.marginal([l]).prob([1])
                    - (1.0 - (1.0 - delta) ** len(row))
                )
                for l, row in enumerate(m.rows)
            ),
        )
        sanity.append(check_eq(f"enum_marginal[{dig}]", worst_marginal, 0.0, tolerance))
        ie.append(
            check_eq(
                f"incl_excl[{dig}]",
                prob_all_positive(m, range(m.t), delta),
                dist.prob([1] * m.t),
                tolerance,
            )
        )
    out += _summarize("enum_sanity", sanity, _worst_eq(sanity))
    out += _summarize("incl_excl_vs_enum", ie, _worst_eq(ie))
    total += len(sanity) + len(ie)

    # -- partial-outcome identities and the item-swap inequality ------------
    rng = _stream(seed, 2)
    overlap: list[CheckRecord] = []
    fixtures = [
        (TestMatrix.from_rows(1, [{0}, {0}]), 2),
        (TestMatrix.from_rows(5, [{0, 1}, {0, 2}, {3}]), 2),
        (TestMatrix.from_rows(6, [{0}, {1}, {2}]), 2),
    ]
    for case in range(40):
        n = rng.randint(3, min(max_n, 10))
        t = rng.randint(2, 5)
        shared_depth = rng.randint(2, t)
        rows = []
        for l in range(t):
            extras = rng.sample(range(1, n - 1), rng.randint(1, min(2, n - 2)))
            rows.append(frozenset({0} | set(extras)) if l < shared_depth else frozenset(extras))
        fixtures.append((TestMatrix(n, tuple(rows)), rng.randint(1, t)))
    for m, split in fixtures:
        delta = round(rng.uniform(0.1, 0.9), 6)
        overlap.extend(verify_overlap_identities(m, split, delta, tolerance).records)
    out += _summarize("overlap_identities", overlap, _worst_eq(overlap))
    total += len(overlap)

    # -- disjoint placements minimize the all-positive probability ----------
    disjoint: list[CheckRecord] = []
    n_disjoint = min(max_n, 9)
    for m_rows in (1, 2, 3):
        for weights in itertools.combinations_with_replacement((1, 2, 3), m_rows):
            if sum(weights) > n_disjoint:
                continue
            for delta in (0.1, 0.3, 0.5):
                disjoint.extend(verify_disjoint_minimum(n_disjoint, weights, delta, tolerance).records)
    out += _summarize("disjoint_minimum", disjoint, _worst_eq(disjoint))
    total += len(disjoint)

    # -- joint-entropy cap + equality cases + conditional-entropy floor -----
    cap: list[CheckRecord] = []
    cond: list[CheckRecord] = []
    equality_mismatches = 0
    family_size = 0
    for k in (1, 2, 3):
        for s in (1, 2, 3, 4):
            for m in iter_common_item_matrices(k, s, min(max_n, 12)):
                family_size += 1
                for delta in (0.2, 0.5):
                    rep = verify_joint_entropy_cap(m, delta, tolerance)
                    cap.extend(rep.records)
                    if rep.equality != rep.reduced_disjoint:
                        equality_mismatches += 1
                    cond.extend(
                        verify_conditional_entropy_bound(m, 0, delta, tolerance).records
                    )
    out += _summarize("entropy_cap", cap, _worst_le(cap))
    out.append(
        check_eq(
            f"entropy_cap_equality_iff_disjoint[{family_size}matrices]",
            float(equality_mismatches),
            0.0,
            0.0,
        )
    )
    out += _summarize("cond_entropy_floor", cond, _worst_le(cond))
    total += len(cap) + len(cond) + 1

    # -- fractional-cover bound on seeded constant-weight fuzz --------------
    rng = _stream(seed, 3)
    cover: list[CheckRecord] = []
    n_cover = min(max_n, 9)
    cover_fixtures = [TestMatrix.from_rows(3, [{0, 1}, {1, 2}])]
    if n_cover >= 3:
        cover_fixtures.append(
            TestMatrix.from_rows(3, [{0}, {1}, {2}])
        )
    for _ in range(20):
        rows = tuple(
            frozenset(rng.sample(range(n_cover), min(3, n_cover)))
            for _ in range(min(6, 2 * n_cover))
        )
        cover_fixtures.append(TestMatrix(n_cover, rows))
    for m in cover_fixtures:
        for delta in (0.2, 0.3, 0.4):
            cover.extend(verify_fractional_cover_bound(m, delta, tolerance).records)
    cover.append(
        check_eq(
            "cover_worked_example",
            verify_fractional_cover_bound(
                TestMatrix.from_rows(3, [{0, 1}, {1, 2}]), 0.5, tolerance
            ).rhs,
            (2.0 * binary_entropy(0.75) + 1.5487949406953985) / 2.0,
            1e-9,
        )
    )
    out += _summarize("fractional_cover", cover, _worst_le(cover))
    total += len(cover)

    return SuiteResult(tuple(out), total)
