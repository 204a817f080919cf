"""Analytic curves: phase density, symbol errors, WER formulas, crossings.

Numeric reference values in this file were computed independently with
mpmath quadrature and exact binomial tails, then frozen.
"""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from ringlp.analysis import (AnalyticCurve, analytic_gap_db, crossing_snr_db,
                             hard_decision_curve, hard_decision_wer,
                             phase_density, psk_symbol_error,
                             union_bound_curve, union_bound_wer,
                             write_curve_csv)

RATE = 6 / 11
GOLAY_ENUMERATOR = (1, 0, 0, 0, 0, 132, 132, 0, 330, 110, 0, 24)

# frozen oracle: exact bounded-distance WER (t=2, n=11, q=3) on a dB grid
HD_WER_ORACLE = {
    4.5: 0.115498,
    5.0: 0.0775884,
    5.5: 0.048951,
    6.0: 0.0287889,
    6.5: 0.0156571,
    7.0: 0.0078073,
    7.5: 0.00353675,
    8.0: 0.00144118,
}


class TestPhaseDensity:
    def test_integrates_to_one(self):
        for gamma in (0.0, 0.5, 2.0, 10.0):
            total, err = quad(phase_density, -math.pi, math.pi, args=(gamma,),
                              epsabs=1e-12, limit=200)
            assert total == pytest.approx(1.0, abs=1e-10)

    def test_zero_snr_is_uniform(self):
        theta = np.linspace(-math.pi, math.pi, 9)
        assert np.allclose(phase_density(theta, 0.0), 1 / (2 * math.pi))

    def test_even_and_peaked_at_zero(self):
        d = phase_density(np.array([-0.7, 0.0, 0.7, 2.0]), 3.0)
        assert d[0] == pytest.approx(d[2], rel=1e-12)
        assert d[1] > d[2] > d[3]


class TestSymbolError:
    def test_zero_snr_uniform_guess(self):
        assert psk_symbol_error(0.0, 3) == pytest.approx(2 / 3, abs=1e-12)
        assert psk_symbol_error(0.0, 8) == pytest.approx(7 / 8, abs=1e-12)

    def test_frozen_value(self):
        # gamma = 4 equals 8.65 dB at this code rate
        assert psk_symbol_error(4.0, 3) == pytest.approx(0.013492037, abs=1e-8)

    def test_binary_case_is_q_function(self):
        # 2-PSK symbol error has the closed form Q(sqrt(2 gamma))
        for gamma in (0.5, 1.0, 3.0):
            want = 0.5 * math.erfc(math.sqrt(gamma))
            assert psk_symbol_error(gamma, 2) == pytest.approx(want, rel=1e-9)

    def test_monotone_in_snr(self):
        vals = [psk_symbol_error(g, 3) for g in (0.5, 1.0, 2.0, 4.0, 8.0, 16.0)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_high_snr_stays_conditioned(self):
        v = psk_symbol_error(54.0, 3)
        assert 0 < v < 1e-10

    def test_negative_snr_rejected(self):
        with pytest.raises(ValueError):
            psk_symbol_error(-1.0, 3)


class TestHardDecisionWer:
    @pytest.mark.parametrize("snr_db,want", sorted(HD_WER_ORACLE.items()))
    def test_frozen_grid(self, snr_db, want):
        got = hard_decision_wer(snr_db, n=11, t=2, rate=RATE, q=3)
        assert got == pytest.approx(want, rel=1e-4)

    def test_matches_direct_binomial_tail(self):
        snr_db = 6.0
        p = psk_symbol_error(RATE * 10 ** (snr_db / 10), 3)
        want = sum(math.comb(11, k) * p**k * (1 - p) ** (11 - k) for k in range(3, 12))
        assert hard_decision_wer(snr_db, 11, 2, RATE, 3) == pytest.approx(want, rel=1e-12)

    def test_t_zero_complements_success(self):
        p = psk_symbol_error(RATE * 10 ** 0.5, 3)
        want = 1 - (1 - p) ** 11
        assert hard_decision_wer(5.0, 11, 0, RATE, 3) == pytest.approx(want, rel=1e-12)


class TestUnionBound:
    def test_matches_in_test_recomputation(self):
        # independently recompute: sum_w A_w Q(sqrt(3 w gamma / 2))
        for snr_db in (5.0, 6.5, 8.0):
            gamma = RATE * 10 ** (snr_db / 10)
            want = sum(
                a * 0.5 * math.erfc(math.sqrt(3 * w * gamma / 4))
                for w, a in enumerate(GOLAY_ENUMERATOR)
                if w > 0 and a > 0
            )
            got = union_bound_wer(snr_db, GOLAY_ENUMERATOR, RATE)
            assert got == pytest.approx(want, rel=1e-12)

    def test_zero_weight_term_excluded(self):
        # if A_0 leaked into the sum the bound would exceed 1/2 everywhere
        assert union_bound_wer(12.0, GOLAY_ENUMERATOR, RATE) < 1e-6

    def test_below_hard_decision_curve(self):
        for snr_db in (6.0, 7.0, 8.0):
            assert union_bound_wer(snr_db, GOLAY_ENUMERATOR, RATE) < HD_WER_ORACLE[snr_db]


class TestCurves:
    def test_curve_construction(self):
        grid = [5.0, 6.0, 7.0]
        hd = hard_decision_curve(grid, 11, 2, RATE, 3)
        ub = union_bound_curve(grid, GOLAY_ENUMERATOR, RATE)
        assert hd.kind == "hard_decision" and ub.kind == "union_bound"
        assert hd.snr_db == (5.0, 6.0, 7.0)
        assert hd.wer[1] == pytest.approx(HD_WER_ORACLE[6.0], rel=1e-4)

    def test_interp_log10(self):
        curve = AnalyticCurve("hard_decision", (5.0, 6.0), (1e-2, 1e-4))
        assert curve.interp_log10(5.0) == pytest.approx(-2.0)
        assert curve.interp_log10(5.5) == pytest.approx(-3.0)

    def test_csv_golden_bytes(self, tmp_path):
        curve = AnalyticCurve("union_bound", (5.0, 6.25), (0.0775884, 1.25e-3))
        p = tmp_path / "c.csv"
        write_curve_csv(p, curve)
        want = "# kind=union_bound\nsnr_db,wer\n5,0.0775884\n6.25,0.00125\n"
        assert p.read_text() == want


class TestCrossings:
    def test_crossing_of_known_function(self):
        # wer = 10^(-snr/5) crosses 1e-2 at exactly 10 dB
        got = crossing_snr_db(lambda s: 10 ** (-s / 5), 1e-2, 0.0, 20.0)
        assert got == pytest.approx(10.0, abs=1e-5)

    def test_unbracketed_raises(self):
        with pytest.raises(ValueError, match="bracketed"):
            crossing_snr_db(lambda s: 10 ** (-s / 5), 1e-2, 0.0, 3.0)

    def test_gap_frozen_values(self):
        gap = analytic_gap_db(GOLAY_ENUMERATOR, 11, 2, RATE, 3)
        assert gap["hard_decision_db"] == pytest.approx(9.2059, abs=1e-3)
        assert gap["union_bound_db"] == pytest.approx(7.5547, abs=1e-3)
        assert gap["gap_db"] == pytest.approx(1.6511, abs=1e-3)

    def test_gap_is_difference_of_crossings(self):
        gap = analytic_gap_db(GOLAY_ENUMERATOR, 11, 2, RATE, 3, target=1e-3)
        assert gap["gap_db"] == pytest.approx(
            gap["hard_decision_db"] - gap["union_bound_db"], abs=1e-9
        )
