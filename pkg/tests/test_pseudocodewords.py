"""Pseudocodeword extraction, graph covers, and the round trip between them."""

import json
from fractions import Fraction

import numpy as np
import pytest

from ringlp.codes import enumerate_local_codewords
from ringlp.decoder import lp_decode
from ringlp.polytope import build_lp
from ringlp.pseudocodewords import (GraphCover, LPPseudocodeword, build_cover,
                                    cover_to_lppc, extract, pcw_cost,
                                    pcw_report_json, pcw_report_text,
                                    sample_valid_cover, verify_cover)

from conftest import make_code


def uniform_point(code):
    """The barycenter point of the single-check Z_3 code's polytope."""
    lp = build_lp(code, np.zeros(6))
    third, ninth = Fraction(1, 3), Fraction(1, 9)
    return lp, [third] * 6 + [ninth] * 9


@pytest.fixture
def half_pcw(three_cycle_z3):
    res = lp_decode(three_cycle_z3, -np.ones(6), mode="rational")
    return extract(res.lp, res.solution)


class TestExtraction:
    def test_uniform_point(self, single_check_z3):
        lp, x = uniform_point(single_check_z3)
        pcw = extract(lp, x)
        assert pcw.M == 9
        assert pcw.h == [[3, 3]] * 3
        assert pcw.h0 == [3, 3, 3]
        assert all(list(zj) == [1] * 9 for zj in pcw.z)

    def test_half_vertex(self, half_pcw):
        assert half_pcw.M == 2
        assert half_pcw.h == [[1, 1]] * 3
        assert half_pcw.h0 == [0, 0, 0]
        assert not half_pcw.is_zero()

    def test_codeword_vertex_gives_M_one(self, single_check_z3):
        res = lp_decode(single_check_z3, np.array([-1.0, 0, 0, -1.0, 1.0, 1.0]), mode="rational")
        assert res.outcome == "integral"
        pcw = extract(res.lp, res.solution)
        assert pcw.M == 1
        assert pcw.matrix[0] == [0, 1, 0]

    def test_rejects_float_solution(self, three_cycle_z3):
        res = lp_decode(three_cycle_z3, -np.ones(6), mode="float")
        with pytest.raises(TypeError, match="rational"):
            extract(res.lp, res.solution)

    def test_rejects_wrong_length(self, single_check_z3):
        lp, x = uniform_point(single_check_z3)
        with pytest.raises(ValueError, match="coordinates"):
            extract(lp, x[:-1])

    def test_matrix_rows_sum_to_M(self, half_pcw):
        for row in half_pcw.matrix:
            assert sum(row) == half_pcw.M


class TestValidation:
    def test_tampered_counts_rejected(self, single_check_z3):
        lp, x = uniform_point(single_check_z3)
        good = extract(lp, x)
        with pytest.raises(ValueError, match="sum to"):
            LPPseudocodeword(code=single_check_z3, M=good.M,
                             h=[[4, 3]] + good.h[1:], h0=good.h0, z=good.z)

    def test_marginal_mismatch_rejected(self, single_check_z3):
        lp, x = uniform_point(single_check_z3)
        good = extract(lp, x)
        z = [list(good.z[0])]
        z[0][0] += 1
        z[0][1] -= 1  # keeps the sum, breaks a value marginal
        with pytest.raises(ValueError, match="check 0 sees"):
            LPPseudocodeword(code=single_check_z3, M=good.M, h=good.h, h0=good.h0, z=z)

    def test_nonpositive_M_rejected(self, single_check_z3):
        with pytest.raises(ValueError, match="positive"):
            LPPseudocodeword(code=single_check_z3, M=0, h=[], h0=[], z=[])

    def test_disconnected_code_rejected(self):
        code = make_code(3, [[1, 1, 0, 0], [0, 0, 1, 1]])
        with pytest.raises(ValueError, match="connected"):
            LPPseudocodeword(code=code, M=1, h=[[0, 0]] * 4, h0=[1] * 4,
                             z=[[1, 0, 0], [1, 0, 0]])


class TestCost:
    def test_exact_cost_is_M_times_objective(self, three_cycle_z3):
        lam = -np.ones(6)
        res = lp_decode(three_cycle_z3, lam, mode="rational")
        pcw = extract(res.lp, res.solution)
        assert pcw_cost(pcw, lam, exact=True) == pcw.M * res.objective
        assert pcw_cost(pcw, lam, exact=True) == Fraction(-6)

    def test_float_cost_close(self, half_pcw):
        lam = -np.ones(6)
        assert pcw_cost(pcw=half_pcw, lam=lam) == pytest.approx(-6.0)


class TestCovers:
    def test_round_trip_uniform_point(self, single_check_z3):
        lp, x = uniform_point(single_check_z3)
        pcw = extract(lp, x)
        cover = build_cover(pcw)
        report = verify_cover(cover)
        assert report.ok
        assert cover_to_lppc(cover) == pcw

    def test_round_trip_half_vertex(self, half_pcw):
        cover = build_cover(half_pcw)
        assert verify_cover(cover).ok
        back = cover_to_lppc(cover)
        assert back == half_pcw
        assert back.matrix == half_pcw.matrix

    def test_codeword_cover_is_degree_one(self, single_check_z3):
        res = lp_decode(single_check_z3, np.array([-1.0, 0, 0, -1.0, 1.0, 1.0]), mode="rational")
        cover = build_cover(extract(res.lp, res.solution))
        assert cover.M == 1
        assert [v[0] for v in cover.values] == [1, 2, 0]

    def test_tampered_value_fails_lifted_check(self, half_pcw):
        cover = build_cover(half_pcw)
        cover.values[0][0] = (cover.values[0][0] + 1) % 3
        report = verify_cover(cover)
        assert not report.ok
        assert any(ln.startswith("FAIL lifted check") for ln in report.check_lines)

    def test_tampered_wiring_fails_bijectivity(self, half_pcw):
        cover = build_cover(half_pcw)
        key = next(iter(cover.wiring))
        cover.wiring[key] = [0] * cover.M
        report = verify_cover(cover)
        assert not report.ok
        assert any("not a bijection" in ln for ln in report.bijection_lines)

    def test_short_fiber_reported(self, half_pcw):
        cover = build_cover(half_pcw)
        cover.values[1] = cover.values[1][:-1]
        report = verify_cover(cover)
        assert not report.ok
        assert any("fiber over variable 1" in ln for ln in report.fiber_lines)

    def test_cover_to_lppc_raises_on_invalid(self, half_pcw):
        cover = build_cover(half_pcw)
        cover.values[0][0] = (cover.values[0][0] + 1) % 3
        with pytest.raises(ValueError, match="invalid cover"):
            cover_to_lppc(cover)


class TestSampling:
    def test_sampled_covers_project_to_valid_pcws(self, single_check_z3):
        rng = np.random.default_rng(6)
        for _ in range(10):
            cover = sample_valid_cover(single_check_z3, M=2, rng=rng)
            pcw = cover_to_lppc(cover)  # constructor validates consistency
            assert pcw.M == 2

    def test_sampling_deterministic(self, single_check_z3):
        a = sample_valid_cover(single_check_z3, M=2, rng=np.random.default_rng(3))
        b = sample_valid_cover(single_check_z3, M=2, rng=np.random.default_rng(3))
        assert a.values == b.values and a.wiring == b.wiring

    def test_impossible_cover_raises(self):
        # 2x + 2y = 0 and x + y = 0 over Z_4 admit valid covers, so use a
        # tiny try budget to exercise the failure path instead
        code = make_code(3, [[1, 1, 1]])
        with pytest.raises(RuntimeError, match="no valid cover"):
            sample_valid_cover(code, M=3, rng=np.random.default_rng(0), max_tries=1)


class TestReports:
    def test_text_report_sections(self, half_pcw):
        text = pcw_report_text(half_pcw, lam=-np.ones(6))
        assert "M = 2" in text
        assert "counts" in text
        assert "cost = -6" in text
        assert "ok lifted checks" in text

    def test_json_report_fields(self, half_pcw):
        payload = json.loads(pcw_report_json(half_pcw, lam=-np.ones(6)))
        assert payload["M"] == 2
        assert payload["matrix_representation"] == [[0, 1, 1]] * 3
        assert payload["cost"]["numerator"] == "-6"
        assert payload["cost"]["denominator"] == "1"
        assert payload["cost"]["float"] == -6.0
        assert any("ok" in ln for ln in payload["verification"])

    def test_json_without_costs(self, half_pcw):
        payload = json.loads(pcw_report_json(half_pcw))
        assert "cost" not in payload
