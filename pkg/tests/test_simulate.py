"""Monte Carlo frame generation, error estimation, gain propagation."""

import math

import numpy as np
import pytest
from scipy.stats import chisquare

import qread as q
from qread.errors import InvalidParameterError

IDEAL = q.DetectionModel(1.0, 1.0, 0.0, q.NoiseKind.NONE)
EXP_DET = q.DetectionModel(0.78, 0.77, 1e4, q.NoiseKind.GAUSSIAN_ADDITIVE)


# ---------------------------------------------------------------------------
# sample_frames
# ---------------------------------------------------------------------------


def test_vacuum_frames_are_zero():
    batch = q.sample_frames(q.SourceSpec.tmsv(0.0), q.CellPair(0.5, 1.0), 0, IDEAL, 200, 1)
    assert np.all(batch.ns == 0) and np.all(batch.ni == 0)


def test_ideal_unit_transmissivity_perfect_correlation():
    batch = q.sample_frames(q.SourceSpec.tmsv(50.0), q.CellPair(0.5, 1.0), 1, IDEAL, 2000, 2)
    assert np.array_equal(batch.ns, batch.ni)


def test_seed_reproducibility():
    a = q.sample_frames(q.SourceSpec.tmsv(1e4), q.CellPair(0.9, 1.0), 0, EXP_DET, 500, 42)
    b = q.sample_frames(q.SourceSpec.tmsv(1e4), q.CellPair(0.9, 1.0), 0, EXP_DET, 500, 42)
    assert np.array_equal(a.ns, b.ns) and np.array_equal(a.ni, b.ni)
    c = q.sample_frames(q.SourceSpec.tmsv(1e4), q.CellPair(0.9, 1.0), 0, EXP_DET, 500, 43)
    assert not np.array_equal(a.ns, c.ns)


def test_covariance_oracle():
    # cov(n_s, n_i) = N eta_s eta_i = 6006 at tau = 1, nu_e = 0
    det = q.DetectionModel(0.78, 0.77, 0.0, q.NoiseKind.NONE)
    batch = q.sample_frames(q.SourceSpec.tmsv(1e4), q.CellPair(0.5, 1.0), 1, det, 10**5, 7)
    cov = float(np.cov(batch.ns, batch.ni)[0, 1])
    assert abs(cov - 6006.0) / 6006.0 < 0.05


def test_marginal_means_within_3_stderr():
    det = q.DetectionModel(0.78, 0.77, 0.0, q.NoiseKind.NONE)
    N, tau = 5000.0, 0.8
    n_frames = 20000
    batch = q.sample_frames(q.SourceSpec.tmsv(N), q.CellPair(tau, 1.0), 0, det, n_frames, 11)
    for arr, mean_th in ((batch.ns, N * 0.78 * tau), (batch.ni, N * 0.77)):
        stderr = float(np.std(arr)) / math.sqrt(n_frames)
        assert abs(float(np.mean(arr)) - mean_th) < 3.0 * stderr


def test_classical_frames_have_no_idler():
    batch = q.sample_frames(q.SourceSpec.classical(100.0), q.CellPair(0.5, 1.0), 0, IDEAL, 100, 3)
    assert np.all(batch.ni == 0)


def test_finite_m_frames_match_moments():
    src = q.SourceSpec.tmsv(50.0, 5)
    det = q.DetectionModel(0.9, 0.8, 0.0, q.NoiseKind.NONE)
    batch = q.sample_frames(src, q.CellPair(0.7, 1.0), 0, det, 10**5, 13)
    var_m = 50.0 * (1 + 50.0 / 5)
    cov_th = (0.9 * 0.7) * 0.8 * var_m
    cov = float(np.cov(batch.ns, batch.ni)[0, 1])
    assert abs(cov - cov_th) / cov_th < 0.05


def test_poisson_sampler_chisquare():
    # numpy's large-mean rejection sampler vs our pmfs at means 1, 10, 1e3
    rng = np.random.default_rng(99)
    for mean in (1.0, 10.0, 1000.0):
        draws = rng.poisson(mean, 10**5)
        pmf = q.poisson_pmf(mean)
        lo = max(pmf.support_lo, int(np.min(draws)))
        hi = min(pmf.support_hi, int(np.max(draws)))
        counts = np.bincount(draws - lo, minlength=hi - lo + 1)[: hi - lo + 1]
        expected = pmf.probs[lo - pmf.support_lo : hi - pmf.support_lo + 1] * 10**5
        keep = expected > 5.0
        # renormalize both to the kept cells for a proper chi-square
        stat, pval = chisquare(counts[keep], expected[keep] * counts[keep].sum() / expected[keep].sum())
        assert pval > 1e-4, mean


def test_frame_batch_validation():
    with pytest.raises(InvalidParameterError):
        q.FrameBatch(0, 1, np.array([1, 2]), np.array([1]))


def test_outcomes_property():
    batch = q.sample_frames(q.SourceSpec.tmsv(5.0), q.CellPair(0.5, 1.0), 0, IDEAL, 10, 5)
    outs = batch.outcomes
    assert len(outs) == batch.count == 10
    assert outs[0] == q.Outcome(int(batch.ns[0]), int(batch.ni[0]))


# ---------------------------------------------------------------------------
# estimate_error
# ---------------------------------------------------------------------------


def make_batches(N, tau0, tau1, det, n_frames, seed, source=None):
    src = source or q.SourceSpec.tmsv(N)
    cell = q.CellPair(tau0, tau1)
    return (
        q.sample_frames(src, cell, 0, det, n_frames, seed),
        q.sample_frames(src, cell, 1, det, n_frames, seed),
    )


def test_estimate_error_near_perfect_rule():
    # tau0 = 0, tau1 = 1 ideal: the decoder is essentially never wrong
    b0, b1 = make_batches(30.0, 0.0, 1.0, IDEAL, 4000, 21)
    models = [q.tmsv_joint_pmf(q.SourceSpec.tmsv(30.0), t, IDEAL) for t in (0.0, 1.0)]
    est = q.estimate_error(b0, b1, q.DecisionRule.full_likelihood(*models))
    assert est.p_hat == 0.0
    assert est.ci_low == 0.0 and est.ci_high < 0.002


def test_estimate_error_uninformative_rule_converges_to_half():
    # truth carries no signal (tau0 == tau1): any decoder averages to 1/2
    det = IDEAL
    src = q.SourceSpec.tmsv(40.0)
    cell = q.CellPair(0.7, 0.7)
    b0 = q.sample_frames(src, cell, 0, det, 10**4, 31)
    b1 = q.sample_frames(src, cell, 1, det, 10**4, 31)
    models = [q.tmsv_joint_pmf(src, t, det) for t in (0.6, 0.8)]
    est = q.estimate_error(b0, b1, q.DecisionRule.full_likelihood(*models))
    assert abs(est.p_hat - 0.5) <= 3.0 * max(est.stderr, 1e-6) + 1e-12


def test_estimate_error_tmsv_closed_form():
    # N=10, tau0=0.8: p = exp(-2)/2; 1e5 frames within 3 stderr
    n_frames = 10**5
    b0, b1 = make_batches(10.0, 0.8, 1.0, IDEAL, n_frames, 17)
    models = [q.tmsv_joint_pmf(q.SourceSpec.tmsv(10.0), t, IDEAL) for t in (0.8, 1.0)]
    est = q.estimate_error(b0, b1, q.DecisionRule.full_likelihood(*models))
    target = 0.5 * math.exp(-2.0)
    assert abs(est.p_hat - target) <= 3.0 * est.stderr


def test_estimate_error_interval_ordering():
    b0, b1 = make_batches(20.0, 0.6, 1.0, IDEAL, 3000, 23)
    models = [q.tmsv_joint_pmf(q.SourceSpec.tmsv(20.0), t, IDEAL) for t in (0.6, 1.0)]
    est = q.estimate_error(b0, b1, q.DecisionRule.full_likelihood(*models))
    assert 0.0 <= est.ci_low <= est.p_hat <= est.ci_high <= 1.0
    assert est.n_frames == 6000


def test_mc_consistency_with_exact_over_seeds():
    # at 1e5 frames the estimate should sit within 4 stderr of the exact
    # value for >= 95% of seeds
    N, tau0 = 25.0, 0.75
    src = q.SourceSpec.tmsv(N)
    cell = q.CellPair(tau0, 1.0)
    models = [q.tmsv_joint_pmf(src, cell.tau(u), IDEAL) for u in (0, 1)]
    rule = q.DecisionRule.full_likelihood(*models)
    exact = q.exact_error_probability(*models)
    hits = 0
    trials = 100
    for seed in range(trials):
        b0 = q.sample_frames(src, cell, 0, IDEAL, 10**5, seed)
        b1 = q.sample_frames(src, cell, 1, IDEAL, 10**5, seed)
        est = q.estimate_error(b0, b1, rule)
        if abs(est.p_hat - exact) <= 4.0 * max(est.stderr, 1e-9):
            hits += 1
    assert hits >= 95


def test_point_cloud_structure():
    # two displaced elongated clouds; fitted slope of n_s on n_i equals
    # eta_s tau / (1 + nu_e / (N eta_i)), ordered tau0 < tau1
    N = 1.15e5
    src = q.SourceSpec.tmsv(N)
    cell = q.CellPair(0.996, 1.0)
    slopes = []
    for u in (0, 1):
        batch = q.sample_frames(src, cell, u, EXP_DET, 10**4, 61)
        slope = float(np.polyfit(batch.ni, batch.ns, 1)[0])
        tau = cell.tau(u)
        slope_th = 0.78 * tau * (N * 0.77) / (N * 0.77 + 1e4)
        assert abs(slope - slope_th) / slope_th < 0.05
        slopes.append(slope)
    assert slopes[0] < slopes[1]
    # in the ideal-detection regime the clouds are nearly perfectly correlated
    ideal_batch = q.sample_frames(src, cell, 0, IDEAL, 10**4, 62)
    rho = float(np.corrcoef(ideal_batch.ns, ideal_batch.ni)[0, 1])
    assert rho > 0.99
    # with the calibrated efficiencies the theoretical correlation is
    # sqrt(eta_s tau eta_i) shrunk by read noise; check agreement
    noisy_batch = q.sample_frames(src, cell, 0, EXP_DET, 10**4, 63)
    rho_n = float(np.corrcoef(noisy_batch.ns, noisy_batch.ni)[0, 1])
    p, qi = 0.78 * 0.996, 0.77
    rho_th = (N * p * qi) / math.sqrt((N * p + 1e4) * (N * qi + 1e4))
    assert abs(rho_n - rho_th) < 0.02
    assert rho_n > 0.65


# ---------------------------------------------------------------------------
# gain_with_uncertainty
# ---------------------------------------------------------------------------


def _estimate(p0_err, p1_err, n):
    # hand-built estimate for propagation tests
    stderr = math.sqrt(0.25 * (p0_err * (1 - p0_err) / n + p1_err * (1 - p1_err) / n))
    p_hat = 0.5 * (p0_err + p1_err)
    return q.ErrorEstimate(
        p_hat=p_hat,
        stderr=stderr,
        n_frames=2 * n,
        ci_low=max(p_hat - 2 * stderr, 0.0),
        ci_high=min(p_hat + 2 * stderr, 1.0),
        err_rate_0=p0_err,
        err_rate_1=p1_err,
        frames_per_batch=n,
    )


def test_gain_zero_when_estimate_matches_classical_bound():
    cell = q.CellPair(0.25, 1.0)
    src = q.SourceSpec.classical(20.0)
    p_c = q.classical_phc_bound(20.0, cell, IDEAL)
    rec = q.gain_with_uncertainty(_estimate(p_c, p_c, 10**4), cell, src, IDEAL)
    assert abs(rec.gain_vs_phc) < 1e-12
    assert rec.uncertainty > 0.0


def test_gain_one_when_perfect_vs_coinflip_bound():
    cell = q.CellPair(0.7, 0.7 + 1e-9)
    src = q.SourceSpec.tmsv(1e-6)
    rec = q.gain_with_uncertainty(_estimate(0.0, 0.0, 10**4), cell, src, IDEAL)
    assert abs(rec.p_err_classical_phc - 0.5) < 1e-6
    assert abs(rec.gain_vs_phc - 1.0) < 1e-4


def test_gain_uncertainty_shrinks_as_sqrt_n():
    cell = q.CellPair(0.9925, 1.0)
    src = q.SourceSpec.tmsv(1.15e5)
    models = [q.gaussian_surrogate(src, cell, EXP_DET, u) for u in (0, 1)]
    rule = q.DecisionRule.full_likelihood(*models)
    sigmas = []
    frame_counts = [100, 1000, 10000]
    for n in frame_counts:
        b0 = q.sample_frames(src, cell, 0, EXP_DET, n, 19)
        b1 = q.sample_frames(src, cell, 1, EXP_DET, n, 19)
        rec = q.gain_with_uncertainty(q.estimate_error(b0, b1, rule), cell, src, EXP_DET)
        sigmas.append(rec.uncertainty)
    slope = np.polyfit(np.log(frame_counts), np.log(sigmas), 1)[0]
    assert abs(slope + 0.5) < 0.15


def test_gain_bootstrap_near_zero_error():
    # p_hat ~ 0 degenerates the delta method; bootstrap must give finite sigma
    cell = q.CellPair(0.5, 1.0)
    src = q.SourceSpec.tmsv(30.0)
    rec = q.gain_with_uncertainty(_estimate(0.0, 0.0, 1000), cell, src, IDEAL)
    assert rec.uncertainty == 0.0  # all resamples identical at exactly zero errors
    rec2 = q.gain_with_uncertainty(_estimate(0.002, 0.001, 1000), cell, src, IDEAL)
    assert 0.0 < rec2.uncertainty < 0.1


def test_gain_record_mode_marked_montecarlo():
    cell = q.CellPair(0.8, 1.0)
    src = q.SourceSpec.tmsv(50.0)
    rec = q.gain_with_uncertainty(_estimate(0.05, 0.06, 5000), cell, src, IDEAL)
    assert rec.mode == "montecarlo"
    assert rec.med_tau0 == q.med_boundary(50.0)
