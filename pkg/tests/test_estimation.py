import math

import numpy as np
import pytest

from conftest import make_realization, random_realization
from saris.estimation import (
    coefficient_count,
    group_aggregate_channels,
    group_subsurfaces,
    pilot_patterns,
    rate_loss,
    run_estimation,
)
from saris.streams import substream


class TestCoefficientCount:
    def test_single_user_paper_setup(self):
        assert coefficient_count(16, 20, 10, 1) == 3216

    def test_four_users(self):
        assert coefficient_count(16, 20, 10, 4) == 12864

    def test_reduces_to_two_m(self):
        assert coefficient_count(7, 1, 1, 1) == 14

    def test_validation(self):
        with pytest.raises(ValueError):
            coefficient_count(0, 1, 1, 1)


class TestGrouping:
    def test_paper_grouping(self):
        g = group_subsurfaces(10, 20, 40)
        assert g.group_size == 5
        assert g.group_of(0, 7) == 1

    def test_singleton_groups(self):
        g = group_subsurfaces(2, 3, 6)
        assert g.group_size == 1
        assert g.group_of(1, 2) == 5

    def test_one_group(self):
        g = group_subsurfaces(2, 3, 1)
        assert g.group_size == 6
        assert g.group_of(1, 2) == 0

    def test_every_element_assigned_once(self):
        g = group_subsurfaces(4, 6, 8)
        counts = np.zeros(8, dtype=int)
        for l in range(4):
            for n in range(6):
                counts[g.group_of(l, n)] += 1
        assert (counts == g.group_size).all()

    def test_contiguous_within_uav(self):
        g = group_subsurfaces(2, 8, 4)
        for l in range(2):
            groups = [g.group_of(l, n) for n in range(8)]
            assert groups == sorted(groups)

    def test_non_divisor_rejected(self):
        with pytest.raises(ValueError):
            group_subsurfaces(10, 20, 3)

    def test_expand_broadcasts_group_values(self):
        g = group_subsurfaces(2, 4, 4)
        full = g.expand(np.array([0.0, 1.0, 2.0, 3.0]))
        assert full.shape == (2, 4)
        assert (full[0] == [0.0, 0.0, 1.0, 1.0]).all()
        assert (full[1] == [2.0, 2.0, 3.0, 3.0]).all()


class TestPilotBook:
    def test_two_point_book(self):
        book = pilot_patterns(1)
        np.testing.assert_allclose(book.states, [[1, 1], [1, -1]], atol=1e-12)

    @pytest.mark.parametrize("n_groups", [1, 3, 8, 40])
    def test_unit_modulus(self, n_groups):
        book = pilot_patterns(n_groups)
        np.testing.assert_allclose(np.abs(book.states), 1.0, atol=1e-12)

    @pytest.mark.parametrize("n_groups", [1, 3, 8, 40])
    def test_gram_is_scaled_identity(self, n_groups):
        s = pilot_patterns(n_groups).states
        gram = np.conj(s.T) @ s
        np.testing.assert_allclose(gram, (n_groups + 1) * np.eye(n_groups + 1), atol=1e-9)

    def test_condition_number_one(self):
        assert pilot_patterns(12).condition_number == pytest.approx(1.0, rel=1e-9)

    def test_direct_indicator_column_is_ones(self):
        np.testing.assert_allclose(pilot_patterns(5).states[:, 0], 1.0, atol=1e-12)


class TestRunEstimation:
    @pytest.mark.parametrize("n_groups", [1, 2, 4, 8])
    def test_noiseless_exact_recovery(self, rng, n_groups):
        r = random_realization(rng, 2, 4, 3, direct=True)
        grouping = group_subsurfaces(2, 4, n_groups)
        book = pilot_patterns(n_groups)
        est = run_estimation(r, grouping, book, math.inf, substream(1, "e"))
        truth_groups, truth_direct = group_aggregate_channels(r, grouping)
        rel = np.linalg.norm(est.group_estimates - truth_groups) / np.linalg.norm(truth_groups)
        assert rel < 1e-12
        np.testing.assert_allclose(est.direct_estimate, truth_direct, atol=1e-12)
        assert est.mse < 1e-24
        assert est.overhead_symbols == n_groups + 1

    def test_two_equation_solve_matches_hand_computation(self):
        # N' = 1, M = 1 scalar system: y0 = d + b, y1 = d - b
        g = np.array([[0.6 - 0.3j]])
        h = np.array([[0.8 + 0.1j]])
        d = np.array([[0.2 + 0.5j]])
        r = make_realization([g], [h], eta=0.9, direct=d)
        grouping = group_subsurfaces(1, 1, 1)
        book = pilot_patterns(1)
        est = run_estimation(r, grouping, book, math.inf, substream(2, "h"))
        b_true = 0.9 * np.conj(h[0, 0]) * g[0, 0]
        d_true = np.conj(d[0, 0])
        y0 = d_true + b_true
        y1 = d_true - b_true
        assert est.direct_estimate[0] == pytest.approx((y0 + y1) / 2, rel=1e-12)
        assert est.group_estimates[0, 0] == pytest.approx((y0 - y1) / 2, rel=1e-12)

    def test_mse_slope_minus_one_per_decade(self, rng):
        r = random_realization(rng, 2, 4, 2)
        grouping = group_subsurfaces(2, 4, 4)
        book = pilot_patterns(4)
        snrs = np.array([0.0, 10.0, 20.0, 30.0])
        mses = []
        for snr in snrs:
            stream = substream(3, "slope", float(snr))
            mses.append(
                np.mean([run_estimation(r, grouping, book, snr, stream).mse for _ in range(200)])
            )
        assert all(b < a for a, b in zip(mses, mses[1:]))  # monotone in pilot SNR
        slope = np.polyfit(snrs / 10.0, np.log10(mses), 1)[0]
        assert slope == pytest.approx(-1.0, abs=0.1)

    def test_noise_floor_uses_data_noise_when_unset(self, rng):
        r = random_realization(rng, 1, 2, 2)
        grouping = group_subsurfaces(1, 2, 2)
        book = pilot_patterns(2)
        est = run_estimation(r, grouping, book, None, substream(4, "n"), noise_w=1e-30)
        assert est.mse > 0
        est0 = run_estimation(r, grouping, book, None, substream(4, "n"), noise_w=None)
        assert est0.mse < 1e-24

    def test_book_size_mismatch_rejected(self, rng):
        r = random_realization(rng, 1, 4, 2)
        with pytest.raises(ValueError):
            run_estimation(r, group_subsurfaces(1, 4, 2), pilot_patterns(4), None, substream(5))


class TestRateLoss:
    def test_per_element_noiseless_recovers_perfect_csi(self, rng):
        for _ in range(5):
            r = random_realization(rng, 2, 3, 4)
            grouping = group_subsurfaces(2, 3, 6)
            est = run_estimation(r, grouping, pilot_patterns(6), math.inf, substream(6, "p"))
            rate_p, rate_e, delta = rate_loss(r, est, p_tx=0.1, noise=1e-3)
            assert 0 <= delta <= 1e-6

    def test_single_group_loss_nonnegative(self, rng):
        r = random_realization(rng, 2, 3, 4)
        est = run_estimation(r, group_subsurfaces(2, 3, 1), pilot_patterns(1), math.inf, substream(7, "q"))
        rate_p, rate_e, delta = rate_loss(r, est, p_tx=0.1, noise=1e-3)
        assert delta >= 0
        assert rate_e <= rate_p

    def test_estimated_never_beats_perfect(self, rng):
        # noisy pilots, coarse and fine groupings
        for n_groups in (1, 3, 9):
            for _ in range(30):
                r = random_realization(rng, 3, 3, 2)
                est = run_estimation(
                    r, group_subsurfaces(3, 3, n_groups), pilot_patterns(n_groups),
                    5.0, rng,
                )
                rate_p, rate_e, delta = rate_loss(r, est, p_tx=0.1, noise=1e-3)
                assert rate_e <= rate_p + 1e-12
                assert delta >= -1e-12

    def test_mean_loss_nonincreasing_in_groups(self):
        # overhead/accuracy trade-off: finer groups help on average
        rng = substream(8, "trade")
        deltas = {n: [] for n in (1, 2, 4, 8)}
        for _ in range(300):
            r = random_realization(rng, 2, 4, 2)
            for n_groups in deltas:
                est = run_estimation(
                    r, group_subsurfaces(2, 4, n_groups), pilot_patterns(n_groups),
                    math.inf, rng,
                )
                deltas[n_groups].append(rate_loss(r, est, p_tx=0.1, noise=1e-3)[2])
        means = [np.mean(deltas[n]) for n in (1, 2, 4, 8)]
        assert all(b <= a + 1e-9 for a, b in zip(means, means[1:]))
