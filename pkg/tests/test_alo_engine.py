import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from antlion_fs.alo_engine import (
    WalkBounds,
    center_bounds,
    random_walk,
    random_walks,
    ratio_I,
    roulette_select,
    roulette_weights,
    shrink_bounds,
    walk_position,
)

from .conftest import ScriptedRng


class TestRatio:
    def test_before_first_threshold(self):
        assert ratio_I(5, 100) == 1.0
        assert ratio_I(10, 100) == 1.0

    def test_w2_branch(self):
        assert ratio_I(50, 100) == 51.0

    def test_w6_branch(self):
        assert ratio_I(96, 100) == 960001.0

    @pytest.mark.parametrize("t, expected", [
        (11, 1 + 100 * 0.11), (51, 1 + 1e3 * 0.51), (76, 1 + 1e4 * 0.76), (91, 1 + 1e5 * 0.91),
        (100, 1 + 1e6),
    ])
    def test_thresholds(self, t, expected):
        assert ratio_I(t, 100) == pytest.approx(expected)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            ratio_I(0, 10)
        with pytest.raises(ValueError):
            ratio_I(11, 10)

    @pytest.mark.parametrize("T", [1, 7, 70, 1000])
    def test_non_decreasing(self, T):
        values = [ratio_I(t, T) for t in range(1, T + 1)]
        assert all(b >= a for a, b in zip(values, values[1:]))
        assert all(v == 1.0 for t, v in zip(range(1, T + 1), values) if 10 * t <= T)


class TestBounds:
    def test_identity_ratio(self):
        b = shrink_bounds([0, 0], [1, 1], 1.0)
        np.testing.assert_array_equal(b.lower, [0, 0])
        np.testing.assert_array_equal(b.upper, [1, 1])

    def test_divides(self):
        np.testing.assert_allclose(shrink_bounds([0, 0], [1, 1], 100).upper, [0.01, 0.01])
        np.testing.assert_allclose(shrink_bounds([0.2, 0.2], [1, 1], 2).lower, [0.1, 0.1])

    def test_rejects_small_ratio(self):
        with pytest.raises(ValueError):
            shrink_bounds([0], [1], 0.5)

    def test_center_clamps_at_domain_edge(self):
        # lower bound gets a negative sign, upper a positive one
        rng = ScriptedRng([0.9, 0.1])
        out = center_bounds([1.0], WalkBounds(np.array([0.01]), np.array([0.01])), rng)
        np.testing.assert_allclose(out.lower, [0.99])
        np.testing.assert_allclose(out.upper, [1.0])

    def test_zero_radius(self, rng):
        out = center_bounds(np.zeros(3), WalkBounds(np.zeros(3), np.zeros(3)), rng)
        np.testing.assert_array_equal(out.lower, 0)
        np.testing.assert_array_equal(out.upper, 0)

    def test_positive_signs_full_interval(self):
        out = center_bounds([0.0], shrink_bounds([0], [1], 1), ScriptedRng([0.1, 0.1]))
        assert (out.lower[0], out.upper[0]) == (0.0, 1.0)

    @settings(max_examples=100, deadline=None)
    @given(
        antlion=st.lists(st.sampled_from([0.0, 1.0]), min_size=1, max_size=8),
        ratio=st.floats(1, 1e7),
        seed=st.integers(0, 2**32 - 1),
    )
    def test_center_output_ordered_in_unit_box(self, antlion, ratio, seed):
        n = len(antlion)
        out = center_bounds(antlion, shrink_bounds(np.zeros(n), np.ones(n), ratio),
                            np.random.default_rng(seed))
        assert np.all(out.lower <= out.upper)
        assert np.all(out.lower >= 0) and np.all(out.upper <= 1)


class TestWalk:
    def test_starts_at_zero(self, rng):
        for _ in range(20):
            assert random_walk(30, rng)[0] == 0

    def test_forced_monotone(self):
        walk = random_walk(5, ScriptedRng([0.1] * 5))
        np.testing.assert_array_equal(walk, [0, 1, 2, 3, 4, 5])

    def test_zero_mean(self, rng):
        finals = random_walks(100, 10_000, rng)[:, -1]
        assert -0.3 <= finals.mean() <= 0.3

    def test_unit_steps(self, rng):
        assert np.all(np.abs(np.diff(random_walks(50, 20, rng), axis=1)) == 1)

    def test_position_endpoints(self):
        walk = np.array([0.0, -2.0, 3.0, 1.0])
        assert walk_position(walk, 1, 0.2, 0.6) == pytest.approx(0.2)
        assert walk_position(walk, 2, 0.2, 0.6) == pytest.approx(0.6)

    def test_position_midway(self):
        assert walk_position(np.array([0.0, 1.0, 2.0]), 1, 0.0, 1.0) == 0.5

    def test_flat_walk(self):
        assert walk_position(np.zeros(4), 2, 0.2, 0.4) == pytest.approx(0.3)

    @settings(max_examples=100, deadline=None)
    @given(seed=st.integers(0, 2**32 - 1), T=st.integers(1, 80),
           lo=st.floats(0, 1), width=st.floats(0, 1))
    def test_position_within_bounds(self, seed, T, lo, width):
        hi = min(1.0, lo + width)
        walks = random_walks(T, 4, np.random.default_rng(seed))
        t = 1 + seed % T
        pos = walk_position(walks, t, np.full(4, lo), np.full(4, hi))
        assert np.all(pos >= lo) and np.all(pos <= hi)


class TestRoulette:
    def test_inverse_fitness_weights(self, rng):
        picks = [roulette_select([0.5, 0.25], rng) for _ in range(10_000)]
        assert abs(np.mean(picks) - 2 / 3) <= 0.03

    def test_equal_fitness_is_uniform(self, rng):
        counts = np.bincount([roulette_select([0.3] * 4, rng) for _ in range(10_000)], minlength=4)
        chi2 = ((counts - 2500) ** 2 / 2500).sum()
        assert chi2 < 16.27  # 99.9% quantile, 3 dof

    def test_single(self, rng):
        assert all(roulette_select([0.7], rng) == 0 for _ in range(50))

    def test_empty(self, rng):
        with pytest.raises(ValueError):
            roulette_select([], rng)

    def test_zero_fitness_handled(self, rng):
        assert roulette_weights([0.0, 0.5])[0] > 0.999

    def test_frequencies_within_three_sigma(self, rng):
        f = np.array([0.1, 0.2, 0.4, 0.8])
        p = roulette_weights(f)
        n = 20_000
        counts = np.bincount([roulette_select(f, rng) for _ in range(n)], minlength=4)
        sigma = np.sqrt(n * p * (1 - p))
        assert np.all(np.abs(counts - n * p) <= 3 * sigma)
