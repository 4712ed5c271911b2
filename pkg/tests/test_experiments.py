import math

import numpy as np
import pytest
from numpy.testing import assert_array_equal

from entpower import tolerances as tol
from entpower.errors import NonPositiveWidth
from entpower.experiments import (DEFAULT_CHUNK, chunk_plan, cnot_mixed_distance,
                                  delta_e_distribution, dw_distribution,
                                  entangling_power, multiqubit_delta_e,
                                  perturbation_sweep, power_law_fit,
                                  random_pair_distribution, run_chunked,
                                  run_parallel, stream_id)
from entpower.gates import GateSpec, swap
from entpower.histogram import Histogram, histograms_consistent
from entpower.kernels import kernel_dw
from entpower.sampling import RngStream

CNOT_SPEC = GateSpec.parse("cnot")
IDENTITY_SPEC = GateSpec.parse("canon:0,0,0")

# pinned by a 1e7-sample calibration run
EPS_P_CNOT = 0.518232


class TestChunking:
    def test_plan_sums_to_samples(self):
        for n in (1, 100, DEFAULT_CHUNK, DEFAULT_CHUNK + 1, 3 * DEFAULT_CHUNK + 7):
            assert sum(chunk_plan(n)) == n

    def test_plan_independent_of_workers(self):
        assert chunk_plan(100_000) == chunk_plan(100_000)

    def test_stream_ids_disjoint(self):
        ids = {stream_id(c, k) for c in range(5) for k in range(5)}
        assert len(ids) == 25

    def test_worker_count_does_not_change_results(self):
        a = run_chunked(kernel_dw, 50_000, seed=3, workers=1)
        b = run_chunked(kernel_dw, 50_000, seed=3, workers=4)
        assert_array_equal(a["dw_raw"], b["dw_raw"])


class TestDeltaE:
    def test_identity_gate_is_delta_distribution(self):
        rep = delta_e_distribution(IDENTITY_SPEC, 5000, seed=1)
        h = rep.histogram
        assert h.counts[h.bin_of(0.0)] == 5000
        assert rep.scalars["width"] == pytest.approx(h.bin_width)
        assert rep.scalars["max_abs_delta_e"] == 0.0

    def test_cnot_reaches_large_changes(self):
        rep = delta_e_distribution(CNOT_SPEC, 20_000, seed=2)
        assert rep.scalars["max_abs_delta_e"] > 0.5
        assert abs(rep.scalars["mean_delta_e"]) < 0.01

    def test_cnot_matches_canonical_point(self):
        n = 30_000
        r1 = delta_e_distribution(CNOT_SPEC, n, seed=11)
        r2 = delta_e_distribution(GateSpec.parse(f"canon:{math.pi / 4},0,0"), n, seed=12)
        assert histograms_consistent(r1.histogram, r2.histogram, n_sigma=3.0)

    def test_histogram_normalized(self):
        rep = delta_e_distribution(CNOT_SPEC, 10_000, seed=3)
        assert abs(rep.histogram.density_integral() - 1) < tol.DENSITY_NORM_TOL


class TestRandomPair:
    def test_symmetric_about_zero(self):
        rep = random_pair_distribution(2, 50_000, seed=4)
        h = rep.histogram
        mirrored = Histogram(lo=h.lo, hi=h.hi, n_bins=h.n_bins,
                             counts=h.counts[::-1].copy(), total=h.total)
        assert histograms_consistent(h, mirrored, n_sigma=3.0)

    def test_marginal_mean_for_qubits(self):
        rep = random_pair_distribution(2, 50_000, seed=5)
        expect = 1 / (3 * math.log(2))
        assert abs(rep.scalars["mean_e"] - expect) < 4 * rep.scalars["mean_e_stderr"] + 1e-3

    def test_na_range_enforced(self):
        with pytest.raises(ValueError):
            random_pair_distribution(7, 10)


class TestEntanglingPower:
    def test_identity_and_swap_are_exactly_zero(self):
        for spec in (IDENTITY_SPEC, GateSpec.explicit(swap(), "swap")):
            rep = entangling_power(spec, 20_000, seed=6)
            assert rep.scalars["epsilon_p"] == 0.0
            assert rep.scalars["epsilon_p_stderr"] == 0.0

    def test_cnot_value_matches_pinned_run(self):
        rep = entangling_power(CNOT_SPEC, 200_000, seed=7)
        se = rep.scalars["epsilon_p_stderr"]
        assert abs(rep.scalars["epsilon_p"] - EPS_P_CNOT) < 4 * se

    def test_histogram_support(self):
        rep = entangling_power(CNOT_SPEC, 5000, seed=8)
        assert abs(rep.histogram.density_integral() - 1) < tol.DENSITY_NORM_TOL


class TestPerturbationSweep:
    def test_non_optimal_base_gains_from_any_perturbation(self):
        reports = perturbation_sweep("pi8", [0.0, 0.131], 30_000, seed=9)
        e0, e1 = (r.scalars["epsilon_p"] for r in reports)
        s0, s1 = (r.scalars["epsilon_p_stderr"] for r in reports)
        assert e1 - e0 > 3 * math.hypot(s0, s1)

    def test_far_perturbation_of_cnot_loses_power(self):
        reports = perturbation_sweep("cnot", [0.0, 0.7], 20_000, seed=10)
        e0, e1 = (r.scalars["epsilon_p"] for r in reports)
        assert e1 < e0 - 0.3

    def test_x_recorded(self):
        reports = perturbation_sweep("cnot", [0.0, 0.1], 1000, seed=11)
        assert [r.scalars["x"] for r in reports] == [0.0, 0.1]


@pytest.fixture(scope="module")
def mixed_report():
    return cnot_mixed_distance("bures", 8000, seed=12)


class TestCnotMixedDistance:

    def test_invariants_and_scalars(self, mixed_report):
        s = mixed_report.scalars
        assert s["max_purity_drift"] <= tol.PURITY_CONSERVATION_TOL
        assert s["min_ppt_after_region1"] >= -tol.PPT_TOL
        assert 0.3 < s["fraction_region1"] < 0.7
        p = s["acceptance_fraction"]
        assert abs(p - 0.632) < 3 * s["acceptance_fraction_stderr"] + 0.002

    def test_histograms_normalized(self, mixed_report):
        assert abs(mixed_report.histogram.density_integral() - 1) < tol.DENSITY_NORM_TOL
        for h in mixed_report.curves.values():
            assert abs(h.density_integral() - 1) < tol.DENSITY_NORM_TOL

    def test_region_means_ordered(self, mixed_report):
        # outside the ball CNOT moves states further on average
        assert mixed_report.scalars["mean_d_region2"] > mixed_report.scalars["mean_d_region1"]

    def test_hs_variant_runs(self):
        rep = cnot_mixed_distance("hs", 2000, seed=13)
        assert rep.histogram.total == 2000


class TestDwDistribution:
    def test_mean_and_bounds(self):
        rep = dw_distribution(30_000, seed=14)
        s = rep.scalars
        assert abs(s["mean_dw"] - 1 / 3) < 4 * s["mean_dw_stderr"] + 1e-3
        assert s["min_dw_raw"] >= -tol.DW_CLAMP_TOL
        assert s["max_dw_raw"] <= 1 + tol.DW_CLAMP_TOL
        assert s["mode_center"] < s["mean_dw"]

    def test_stderr_scales_as_inverse_root_n(self):
        se1 = dw_distribution(10_000, seed=15).scalars["mean_dw_stderr"]
        se2 = dw_distribution(40_000, seed=16).scalars["mean_dw_stderr"]
        assert abs(se1 / (2 * se2) - 1) < 0.2


class TestMultiqubit:
    def test_three_qubit_pairs_agree(self):
        rep = multiqubit_delta_e(3, 40_000, seed=17)
        assert set(rep.curves) == {"ac", "bc"}
        assert histograms_consistent(rep.curves["ac"], rep.curves["bc"], n_sigma=3.0)

    def test_two_and_four_qubit_have_single_curve(self):
        for n in (2, 4):
            rep = multiqubit_delta_e(n, 2000, seed=18)
            assert rep.curves == {}
            assert "width" in rep.scalars

    def test_bad_qubit_count(self):
        with pytest.raises(ValueError):
            multiqubit_delta_e(5, 10)


class TestPowerLawFit:
    def test_exact_inverse_square(self):
        ns = [2, 3, 4, 5, 6]
        alpha, r2 = power_law_fit(ns, [1 / n ** 2 for n in ns])
        assert alpha == pytest.approx(2.0, abs=1e-9)
        assert r2 == pytest.approx(1.0, abs=1e-9)

    def test_constant_widths(self):
        alpha, _ = power_law_fit([2, 3, 4], [0.5, 0.5, 0.5])
        assert alpha == pytest.approx(0.0, abs=1e-12)

    def test_rejects_bad_input(self):
        with pytest.raises(NonPositiveWidth):
            power_law_fit([2, 3], [0.1, 0.2])
        with pytest.raises(NonPositiveWidth):
            power_law_fit([2, 3, 4], [0.1, 0.0, 0.2])


class TestRunParallel:
    def test_dispatches(self):
        rep = run_parallel("dw", {"samples": 2000}, workers=2, seed=19)
        assert rep.histogram.total == 2000

    def test_worker_counts_agree_bitwise(self):
        r1 = run_parallel("multiqubit", {"n": 3, "samples": 30_000}, workers=1, seed=20)
        r8 = run_parallel("multiqubit", {"n": 3, "samples": 30_000}, workers=8, seed=20)
        assert_array_equal(r1.histogram.counts, r8.histogram.counts)
        for label in r1.curves:
            assert_array_equal(r1.curves[label].counts, r8.curves[label].counts)

    def test_unknown_experiment(self):
        with pytest.raises(ValueError):
            run_parallel("nope", {}, workers=1, seed=0)
