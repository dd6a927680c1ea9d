"""Acceptance criteria, one test per criterion at its stated tolerance.

Each test prints one `ACCEPTANCE <n> <name>: PASS|FAIL (<seconds>)` line
(visible with `pytest -s tests/test_acceptance.py`).
"""

import contextlib
import itertools
import random
import time

import pytest

from gtbounds.adaptive import SimConfig, simulate
from gtbounds.bounds import (
    DELTA_STAR,
    adaptivity_gap,
    counting_bound,
    crossover_delta,
    individual_testing_bound,
    main_bound,
    quantization_bound,
    sweep,
)
from gtbounds.cli import main as cli_main
from gtbounds.entropy import (
    binary_entropy,
    conditional_entropy_floor,
    entropy_rate_cap,
    invert_entropy_rate_cap,
)
from gtbounds.oracle import (
    TestMatrix,
    enumerate_distribution,
    prob_all_positive,
    verify_disjoint_minimum,
    verify_fractional_cover_bound,
    verify_joint_entropy_cap,
)
from gtbounds.suite import iter_common_item_matrices

FIG_GRID = [0.05 + 0.005 * i for i in range(89)]  # 0.05 .. 0.49


@contextlib.contextmanager
def criterion(number, name):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} {name}: FAIL ({time.perf_counter() - start:.2f}s)")
        raise
    print(f"ACCEPTANCE {number} {name}: PASS ({time.perf_counter() - start:.2f}s)")


def test_01_individual_testing_cutoff():
    with criterion(1, "individual-testing cutoff at (3-sqrt(5))/2"):
        assert individual_testing_bound(DELTA_STAR, 0.0).applicable is True
        assert individual_testing_bound(DELTA_STAR - 1e-12, 0.0).applicable is False
        deltas = [DELTA_STAR + i * (0.999 - DELTA_STAR) / 400 for i in range(401)]
        for delta in deltas:
            pair_entropy = binary_entropy((1.0 - delta) ** 2)
            assert pair_entropy <= binary_entropy(delta) + 1e-9
        below = DELTA_STAR - 1e-3
        assert binary_entropy((1.0 - below) ** 2) > binary_entropy(below)


def test_02_crossover():
    with criterion(2, "t/n = 1 crossover at 0.3471"):
        assert crossover_delta(0.0) == pytest.approx(0.3471, abs=5e-4)


def test_03_adaptivity_gap():
    with criterion(3, "adaptivity gap (0.3471, 0.381966)"):
        gap = adaptivity_gap(0.0)
        assert gap is not None
        lo, hi = gap
        assert lo == pytest.approx(0.3471, abs=5e-4)
        assert hi == pytest.approx(0.381966, abs=1e-6)


def test_04_figure_shape():
    with criterion(4, "bound-figure shape on the delta grid"):
        rows = sweep(FIG_GRID, 0.0)
        for row in rows:
            assert row.error is None
            assert row.main >= row.quantization - 1e-9
            assert row.quantization >= row.counting - 1e-9
            if row.delta >= 0.348:
                assert row.main == pytest.approx(1.0, abs=1e-6)
        specials = [1.0 - 2.0 ** (-1.0 / k) for k in range(2, 7)]
        for delta in specials:
            q = quantization_bound(delta, 0.0).value
            c = counting_bound(delta, 0.0).value
            assert q == pytest.approx(c, abs=1e-9)
        off_grid = [0.5 * (a + b) for a, b in zip(specials[1:], specials[:-1])]
        for delta in off_grid + [0.2, 0.35]:
            assert quantization_bound(delta, 0.0).value > counting_bound(delta, 0.0).value


def test_05_oracle_identity_suite():
    with criterion(5, "inclusion-exclusion fuzz + exhaustive disjoint minimum"):
        rng = random.Random(1905)
        for _ in range(500):
            n = rng.randint(2, 12)
            t = rng.randint(1, 6)
            matrix = TestMatrix(
                n,
                tuple(
                    frozenset(rng.sample(range(n), rng.randint(1, n)))
                    for _ in range(t)
                ),
            )
            delta = rng.uniform(0.05, 0.95)
            dist = enumerate_distribution(matrix, delta)
            signed = prob_all_positive(matrix, range(t), delta)
            assert abs(signed - dist.prob([1] * t)) <= 1e-12

        for m_rows in (1, 2, 3):
            for weights in itertools.combinations_with_replacement((1, 2, 3), m_rows):
                for delta in (0.1, 0.3, 0.5):
                    report = verify_disjoint_minimum(9, weights, delta, tol=1e-12)
                    assert report.passed, (weights, delta)


def test_06_joint_entropy_cap_family():
    with criterion(6, "joint-entropy cap on the exhaustive common-item family"):
        for k in (1, 2, 3):
            for s in (1, 2, 3, 4):
                for matrix in iter_common_item_matrices(k, s, 12):
                    for delta in (0.2, 0.5):
                        report = verify_joint_entropy_cap(matrix, delta, tol=1e-12)
                        assert report.passed
        equality = verify_joint_entropy_cap(
            TestMatrix.from_rows(3, [{0, 1}, {0, 2}]), 0.5
        )
        assert equality.exact == pytest.approx(1.5487950, abs=1e-6)
        assert equality.bound == pytest.approx(1.5487950, abs=1e-6)


def test_07_fractional_cover_bound():
    with criterion(7, "fractional-cover inequality on the fuzz corpus"):
        rng = random.Random(1906)
        for _ in range(20):
            rows = tuple(frozenset(rng.sample(range(9), 3)) for _ in range(6))
            for delta in (0.2, 0.3, 0.4):
                report = verify_fractional_cover_bound(
                    TestMatrix(9, rows), delta, tol=1e-12
                )
                assert report.passed
        worked = verify_fractional_cover_bound(
            TestMatrix.from_rows(3, [{0, 1}, {1, 2}]), 0.5
        )
        assert worked.lhs == pytest.approx(1.5487950, abs=1e-6)
        assert worked.rhs == pytest.approx(1.5856756, abs=1e-6)
        assert worked.lhs <= worked.rhs + 1e-12


def test_08_floor_calculus_and_inverse():
    with criterion(8, "floor monotone/convex, cap concave increasing, inverse"):
        h = 1e-3
        for delta in (0.1, 0.2, 0.3, 0.38):
            for k in range(2, 13):
                for rate in (0.1, 0.5, 1.0, 2.0, 3.0):
                    s = k * rate
                    f = lambda x: conditional_entropy_floor(delta, k, x)  # noqa: E731
                    assert (f(s + h) - f(s - h)) / (2 * h) < 1e-8
                    assert (f(s + h) - 2 * f(s) + f(s - h)) / (h * h) > -1e-8
            for k in range(1, 13):
                g = lambda x: entropy_rate_cap(delta, k, x)  # noqa: E731
                for rate in (0.1, 0.5, 1.0, 2.0, 3.0):
                    assert g(rate + h) > g(rate)
                    assert (g(rate + h) - 2 * g(rate) + g(rate - h)) / (h * h) <= 1e-8
                for y in (0.0, 0.25, 0.5, 1.0, 1.5, 2.0):
                    rate = invert_entropy_rate_cap(delta, k, y)
                    assert abs(entropy_rate_cap(delta, k, rate) - y) <= 1e-9


def test_09_adaptive_simulation():
    with criterion(9, "adaptive screen: zero error + formula agreement"):
        report = simulate(SimConfig(n=1000, delta=0.2, trials=400, seed=7))
        assert report.error_count == 0
        assert abs(report.mean_tests_per_item - 0.78) <= 4.0 * report.stderr
        individual = simulate(SimConfig(n=1000, delta=0.5, trials=10, seed=7))
        assert individual.mean_tests_per_item == 1.0
        assert individual.error_count == 0


def test_10_cli_determinism(tmp_path, capsys):
    with criterion(10, "cmd_sweep and cmd_simulate byte-identical reruns"):
        sweep_args = ["sweep", "--min", "0.30", "--max", "0.40", "--step", "0.002",
                      "--epsilon", "0", "--format", "svg"]
        first, second = tmp_path / "one.csv", tmp_path / "two.csv"
        assert cli_main(sweep_args + ["--out", str(first)]) == 0
        assert cli_main(sweep_args + ["--out", str(second)]) == 0
        capsys.readouterr()
        assert first.read_bytes() == second.read_bytes()
        assert first.with_suffix(".svg").read_bytes() == second.with_suffix(".svg").read_bytes()

        sim_args = ["simulate", "--n", "500", "--delta", "0.2",
                    "--trials", "100", "--seed", "7"]
        assert cli_main(sim_args) == 0
        out1 = capsys.readouterr().out
        assert cli_main(sim_args) == 0
        out2 = capsys.readouterr().out
        assert out1 == out2
