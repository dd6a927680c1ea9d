"""Exact small-instance ground truth for the entropy bounds.

Joint test-outcome distributions are enumerated exactly under the
Bern(delta) item model (outcome 1 = positive = pool contains a defective),
and every inequality the bound family rests on is checked against them:

* inclusion-exclusion all-positive probabilities vs enumeration,
* the partial-outcome signed-sum identity and the item-swap inequality,
* "disjoint pools minimize the all-positive probability" by exhaustive
  placement search,
* the joint-entropy cap for equal-weight tests sharing an item
  (with its equality case),
* the conditional-entropy floor of a shared item,
* the fractional-cover (column-support) bound on the joint entropy.

Checks return small report objects carrying the exact values and
line-serializable CheckRecords.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .entropy import binary_entropy, conditional_entropy_floor, _check_delta
from .errors import SizeLimitError, StructureError
from .report import CheckRecord, check_eq, check_le, digest

__all__ = [
    "MAX_ENUM_ITEMS",
    "MAX_IE_ROWS",
    "TestMatrix",
    "JointDistribution",
    "enumerate_distribution",
    "joint_entropy",
    "prob_all_positive",
    "verify_overlap_identities",
    "verify_disjoint_minimum",
    "verify_joint_entropy_cap",
    "verify_conditional_entropy_bound",
    "verify_fractional_cover_bound",
    "iter_placements",
]

#: Enumeration walks 2^n defect vectors.
MAX_ENUM_ITEMS = 24
#: Inclusion-exclusion sums 2^|S| signed terms (no item-count limit).
MAX_IE_ROWS = 20

_ENUM_CHUNK = 1 << 20


@dataclass(frozen=True)
class TestMatrix:
    """A non-adaptive design: n items, rows = pools of item indices.

    Rows must be nonempty subsets of range(n); duplicates are allowed.
    """

    __test__ = False  # not a pytest class, despite the name

    n: int
    rows: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise StructureError(f"need at least one item, got n={self.n}")
        if not self.rows:
            raise StructureError("need at least one test row")
        for row in self.rows:
            if not row:
                raise StructureError("empty test rows are not allowed")
            if min(row) < 0 or max(row) >= self.n:
                raise StructureError(f"row {sorted(row)} out of range for n={self.n}")

    @classmethod
    def from_rows(cls, n: int, rows: Iterable[Iterable[int]]) -> "TestMatrix":
        return cls(n, tuple(frozenset(r) for r in rows))

    @property
    def t(self) -> int:
        return len(self.rows)

    def row_weights(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.rows)

    def column_supports(self) -> tuple[frozenset[int], ...]:
        """For each item i, the set of row indices whose pool contains i."""
        return tuple(
            frozenset(l for l, row in enumerate(self.rows) if i in row)
            for i in range(self.n)
        )

    def row_masks(self) -> list[int]:
        return [sum(1 << i for i in row) for row in self.rows]


@dataclass(frozen=True)
class JointDistribution:
    """Exact law of the t test outcomes; probs indexed by outcome bitmask
    (bit l = outcome of test l)."""

    t: int
    probs: np.ndarray

    def __post_init__(self) -> None:
        if self.probs.shape != (1 << self.t,):
            raise StructureError(
                f"need 2^{self.t} outcome probabilities, got shape {self.probs.shape}"
            )
        if float(self.probs.min()) < -1e-15:
            raise StructureError("negative outcome probability")
        if abs(float(self.probs.sum()) - 1.0) > 1e-12:
            raise StructureError(f"probabilities sum to {float(self.probs.sum())}")

    def prob(self, pattern: Sequence[int]) -> float:
        if len(pattern) != self.t:
            raise StructureError(f"pattern length {len(pattern)} != t={self.t}")
        idx = sum((1 << l) for l, b in enumerate(pattern) if b)
        return float(self.probs[idx])

    def marginal(self, rows: Sequence[int]) -> "JointDistribution":
        rows = sorted(set(rows))
        if any(l < 0 or l >= self.t for l in rows):
            raise StructureError(f"marginal rows {rows} out of range")
        if not rows:
            return JointDistribution(0, np.ones(1))
        idx = np.arange(self.probs.size)
        reduced = np.zeros(self.probs.size, dtype=np.int64)
        for j, l in enumerate(rows):
            reduced |= ((idx >> l) & 1) << j
        probs = np.bincount(reduced, weights=self.probs, minlength=1 << len(rows))
        return JointDistribution(len(rows), probs)

    def entropy(self) -> float:
        p = self.probs[self.probs > 0.0]
        return float(-(p * np.log2(p)).sum())


def enumerate_distribution(matrix: TestMatrix, delta: float) -> JointDistribution:
    """Exact joint law of the outcomes by walking all 2^n defect vectors.

    A weight-w defect vector carries probability delta^w (1-delta)^(n-w);
    test l is positive iff its pool holds a defective.
    """
    delta = _check_delta(delta)
    n, t = matrix.n, matrix.t
    if n > MAX_ENUM_ITEMS:
        raise SizeLimitError(f"enumeration limited to n <= {MAX_ENUM_ITEMS}, got {n}")
    masks = [np.uint64(m) for m in matrix.row_masks()]
    weight_prob = np.array(
        [delta ** w * (1.0 - delta) ** (n - w) for w in range(n + 1)]
    )
    probs = np.zeros(1 << t)
    for start in range(0, 1 << n, _ENUM_CHUNK):
        stop = min(start + _ENUM_CHUNK, 1 << n)
        vecs = np.arange(start, stop, dtype=np.uint64)
        weights = np.bitwise_count(vecs).astype(np.int64)
        outcome = np.zeros(vecs.size, dtype=np.int64)
        for l, mask in enumerate(masks):
            outcome |= ((vecs & mask) != 0).astype(np.int64) << l
        probs += np.bincount(outcome, weights=weight_prob[weights], minlength=1 << t)
    return JointDistribution(t, probs)


def joint_entropy(
    matrix: TestMatrix, delta: float, rows: Sequence[int] | None = None
) -> float:
    """Shannon entropy (bits) of the listed test outcomes (all when None)."""
    dist = enumerate_distribution(matrix, delta)
    if rows is None:
        return dist.entropy()
    if len(rows) == 0:
        return 0.0
    return dist.marginal(rows).entropy()


def _prob_all_positive_masks(masks: Sequence[int], delta: float) -> float:
    # P(all positive) = sum over subsets U of (-1)^|U| (1-delta)^|union of U|
    zeta = 1.0 - delta
    s = len(masks)
    unions = [0] * (1 << s)
    total = 1.0  # U = empty set
    for m in range(1, 1 << s):
        low = m & -m
        unions[m] = unions[m ^ low] | masks[low.bit_length() - 1]
        sign = -1.0 if (m.bit_count() & 1) else 1.0
        total += sign * zeta ** unions[m].bit_count()
    return total


def prob_all_positive(
    matrix: TestMatrix, rows: Sequence[int], delta: float
) -> float:
    """Exact P(every test in ``rows`` is positive), by inclusion-exclusion
    over pool unions.  Works at any n; limited to |rows| <= MAX_IE_ROWS.
    """
    delta = _check_delta(delta)
    rows = list(rows)
    if len(rows) > MAX_IE_ROWS:
        raise SizeLimitError(
            f"inclusion-exclusion limited to |S| <= {MAX_IE_ROWS}, got {len(rows)}"
        )
    if any(l < 0 or l >= matrix.t for l in rows):
        raise StructureError(f"row subset {rows} out of range")
    all_masks = matrix.row_masks()
    return _prob_all_positive_masks([all_masks[l] for l in rows], delta)


# ---------------------------------------------------------------------------
# verification checks
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OverlapReport:
    identity_enumerated: float
    identity_signed_sum: float
    swap_original: float | None
    swap_modified: float | None
    records: tuple[CheckRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)


def verify_overlap_identities(
    matrix: TestMatrix, split: int, delta: float, tol: float = 1e-12
) -> OverlapReport:
    """Check the signed-sum identity for the event "test 1 negative, some
    test in 2..split negative, tests split+1..s all positive", and (when a
    shared item among the first ``split`` rows and an unused fresh item
    exist) that swapping the shared item for a fresh one can only lower the
    all-positive probability.
    """
    delta = _check_delta(delta)
    s = matrix.t
    if s > 12:
        raise SizeLimitError(f"identity check limited to t <= 12, got {s}")
    if not 1 <= split <= s:
        raise StructureError(f"split must be in [1, {s}], got {split}")

    dist = enumerate_distribution(matrix, delta)
    middle = range(1, split)
    tail = range(split, s)
    lhs = 0.0
    for idx in range(dist.probs.size):
        if idx & 1:
            continue  # test 1 must be negative
        if not any(not (idx >> l) & 1 for l in middle):
            continue  # some test in 2..split must be negative
        if any(not (idx >> l) & 1 for l in tail):
            continue  # tests split+1..s must all be positive
        lhs += float(dist.probs[idx])

    masks = matrix.row_masks()
    zeta = 1.0 - delta
    rhs = 0.0
    others = list(range(1, s))
    for r in range(1, len(others) + 1):
        for combo in itertools.combinations(others, r):
            if not any(l in combo for l in middle):
                continue
            union = masks[0]
            for l in combo:
                union |= masks[l]
            sign = 1.0 if (r + 1) % 2 == 0 else -1.0
            rhs += sign * zeta ** union.bit_count()

    dig = digest(matrix.n, matrix.rows, split, delta)
    records = [check_eq(f"overlap_identity[{dig}]", lhs, rhs, tol)]

    swap_orig = swap_mod = None
    if split >= 2:
        common = frozenset.intersection(*matrix.rows[:split])
        used = frozenset.union(*matrix.rows)
        fresh = [i for i in range(matrix.n) if i not in used]
        if not common:
            # Nothing shared: the modification is a no-op, gap exactly 0.
            modified = matrix
        elif fresh:
            shared = min(common)
            new_first = (matrix.rows[0] - {shared}) | {fresh[0]}
            modified = TestMatrix(matrix.n, (new_first,) + matrix.rows[1:])
        else:
            modified = None  # no fresh item: outside the proof's reach
        if modified is not None:
            swap_orig = prob_all_positive(matrix, range(s), delta)
            swap_mod = prob_all_positive(modified, range(s), delta)
            records.append(check_le(f"overlap_swap[{dig}]", swap_mod, swap_orig, tol))

    return OverlapReport(lhs, rhs, swap_orig, swap_mod, tuple(records))


def iter_placements(
    weights: Sequence[int], n: int
) -> Iterator[tuple[frozenset[int], ...]]:
    """All placements of pools with the given weights on [0, n), one per
    item-relabeling class (items are numbered in first-seen order)."""
    rows: list[frozenset[int]] = []

    def rec(idx: int, seen: int) -> Iterator[tuple[frozenset[int], ...]]:
        if idx == len(weights):
            yield tuple(rows)
            return
        w = weights[idx]
        for j in range(0, min(w, seen) + 1):
            fresh = w - j
            if seen + fresh > n:
                continue
            for combo in itertools.combinations(range(seen), j):
                rows.append(frozenset(combo) | frozenset(range(seen, seen + fresh)))
                yield from rec(idx + 1, seen + fresh)
                rows.pop()

    yield from rec(0, 0)


@dataclass(frozen=True)
class DisjointMinReport:
    independent_product: float
    disjoint_value: float
    exhaustive_min: float
    placements: int
    records: tuple[CheckRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)


def verify_disjoint_minimum(
    n: int, weights: Sequence[int], delta: float, tol: float = 1e-12
) -> DisjointMinReport:
    """Exhaust all placements (up to relabeling) of pools with the given
    weights and confirm the all-positive probability is minimized by the
    disjoint placement, where it equals prod_l (1 - (1-delta)^{w_l}).
    """
    delta = _check_delta(delta)
    weights = tuple(int(w) for w in weights)
    if len(weights) > 3:
        raise SizeLimitError(f"placement search limited to 3 rows, got {len(weights)}")
    if any(w < 1 for w in weights):
        raise StructureError(f"weights must be >= 1, got {weights}")
    if sum(weights) > n or n > 10:
        raise SizeLimitError(f"need sum(weights) <= n <= 10, got {weights} and n={n}")

    zeta = 1.0 - delta
    product = math.prod(1.0 - zeta ** w for w in weights)

    best = math.inf
    count = 0
    for placement in iter_placements(weights, n):
        masks = [sum(1 << i for i in row) for row in placement]
        value = _prob_all_positive_masks(masks, delta)
        best = min(best, value)
        count += 1

    offsets = [0]
    for w in weights[:-1]:
        offsets.append(offsets[-1] + w)
    disjoint_masks = [
        sum(1 << (off + i) for i in range(w)) for off, w in zip(offsets, weights)
    ]
    disjoint_value = _prob_all_positive_masks(disjoint_masks, delta)

    dig = digest(n, weights, delta)
    records = (
        check_eq(f"disjoint_min[{dig}]", best, product, tol),
        check_eq(f"disjoint_value[{dig}]", disjoint_value, product, tol),
        check_le(f"disjoint_is_least[{dig}]", product, best, tol),
    )
    return DisjointMinReport(product, disjoint_value, best, count, records)


@dataclass(frozen=True)
class EntropyCapReport:
    exact: float
    bound: float
    equality: bool
    reduced_disjoint: bool
    records: tuple[CheckRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)


def _constant_weight(matrix: TestMatrix) -> int:
    weights = set(matrix.row_weights())
    if len(weights) != 1:
        raise StructureError(f"rows must share one weight, got {sorted(weights)}")
    return weights.pop()


def verify_joint_entropy_cap(
    matrix: TestMatrix, delta: float, tol: float = 1e-12
) -> EntropyCapReport:
    """For equal-weight tests sharing an item, check the exact joint
    outcome entropy against its cap

        (1-delta)*s*H((1-delta)^(k-1)) + H(delta) - floor(delta, k, s),

    flagging equality (within 1e-9), which occurs exactly when the rows
    minus the shared item are pairwise disjoint.
    """
    delta = _check_delta(delta)
    k = _constant_weight(matrix)
    common = frozenset.intersection(*matrix.rows)
    if not common:
        raise StructureError("rows must share at least one item")

    exact = joint_entropy(matrix, delta)
    s = matrix.t
    bound = (
        (1.0 - delta) * s * binary_entropy((1.0 - delta) ** (k - 1))
        + binary_entropy(delta)
        - conditional_entropy_floor(delta, k, s)
    )

    shared = min(common)
    reduced = [row - {shared} for row in matrix.rows]
    reduced_disjoint = all(
        not (a & b) for a, b in itertools.combinations(reduced, 2)
    )

    dig = digest(matrix.n, matrix.rows, delta)
    records = (check_le(f"entropy_cap[{dig}]", exact, bound, tol),)
    return EntropyCapReport(
        exact, bound, abs(exact - bound) <= 1e-9, reduced_disjoint, records
    )


@dataclass(frozen=True)
class CondEntropyReport:
    exact: float
    floor: float
    records: tuple[CheckRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)


def verify_conditional_entropy_bound(
    matrix: TestMatrix, item: int, delta: float, tol: float = 1e-12
) -> CondEntropyReport:
    """Exact H(X_item | outcomes of the tests containing it) vs the floor.

    The joint law of (X_item, Y) is obtained by adjoining the singleton
    test {item}; H(X|Y) = H(X, Y) - H(Y).
    """
    delta = _check_delta(delta)
    if not 0 <= item < matrix.n:
        raise StructureError(f"item {item} out of range for n={matrix.n}")
    support = [l for l, row in enumerate(matrix.rows) if item in row]
    if not support:
        raise StructureError(f"item {item} appears in no test")
    rows = tuple(matrix.rows[l] for l in support)
    weights = {len(r) for r in rows}
    if len(weights) != 1:
        raise StructureError(f"tests containing item {item} differ in weight")
    k = weights.pop()

    sub = TestMatrix(matrix.n, rows)
    augmented = TestMatrix(matrix.n, rows + (frozenset({item}),))
    exact = joint_entropy(augmented, delta) - joint_entropy(sub, delta)
    floor = conditional_entropy_floor(delta, k, len(rows))

    dig = digest(matrix.n, matrix.rows, item, delta)
    records = (check_le(f"cond_entropy_floor[{dig}]", floor, exact, tol),)
    return CondEntropyReport(exact, floor, records)


@dataclass(frozen=True)
class CoverReport:
    lhs: float
    rhs: float
    records: tuple[CheckRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)


def verify_fractional_cover_bound(
    matrix: TestMatrix, delta: float, tol: float = 1e-12
) -> CoverReport:
    """Joint entropy of all tests vs the column-support cover bound
    (1/k) * sum_i H(outcomes of the tests containing item i), for a
    constant-row-weight matrix.  Empty columns contribute 0.
    """
    delta = _check_delta(delta)
    if matrix.n > 20 or matrix.t > 16:
        raise SizeLimitError(
            f"cover check limited to n <= 20, t <= 16, got n={matrix.n}, t={matrix.t}"
        )
    k = _constant_weight(matrix)

    dist = enumerate_distribution(matrix, delta)
    lhs = dist.entropy()
    rhs = 0.0
    for support in matrix.column_supports():
        if support:
            rhs += dist.marginal(sorted(support)).entropy()
    rhs /= k

    dig = digest(matrix.n, matrix.rows, delta)
    records = (check_le(f"cover_bound[{dig}]", lhs, rhs, tol),)
    return CoverReport(lhs, rhs, records)
