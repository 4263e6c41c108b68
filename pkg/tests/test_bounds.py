"""Classical benchmarks, entropy, gain, MED boundary.

Frozen DERIVED values were computed with a 50-digit mpmath oracle.
"""

import math

import numpy as np
import pytest

import qread as q
from qread.errors import InvalidParameterError

IDEAL = q.DetectionModel(1.0, 1.0, 0.0, q.NoiseKind.NONE)


# ---------------------------------------------------------------------------
# binary entropy
# ---------------------------------------------------------------------------


def test_entropy_exact_points():
    assert q.binary_entropy(0.5) == 1.0
    assert q.binary_entropy(0.0) == 0.0
    assert q.binary_entropy(1.0) == 0.0


def test_entropy_derived_value():
    # mpmath: H(0.11) = 0.49991595816452799564
    assert abs(q.binary_entropy(0.11) - 0.499915958164528) < 1e-12


def test_entropy_domain():
    with pytest.raises(InvalidParameterError):
        q.binary_entropy(-0.01)
    with pytest.raises(InvalidParameterError):
        q.binary_entropy(1.01)


# ---------------------------------------------------------------------------
# optimal classical bound
# ---------------------------------------------------------------------------


def test_optimal_bound_identical_channels():
    cell = q.CellPair(0.7, 0.7)
    for N in (0.0, 1.0, 1e5):
        assert q.classical_optimal_bound(N, cell, IDEAL) == 0.5


def test_optimal_bound_no_probes():
    assert q.classical_optimal_bound(0.0, q.CellPair(0.2, 0.9), IDEAL) == 0.5


def test_optimal_bound_high_precision_oracle():
    # mpmath, 50 digits: C(1e5, 0.99, 1) = 0.020692933692132433214
    val = q.classical_optimal_bound(1e5, q.CellPair(0.99, 1.0), IDEAL)
    assert abs(val - 0.020692933692132433) < 1e-14
    # mpmath: C(50, 0.9, 1) = 0.324379716740867276
    assert abs(q.classical_optimal_bound(50.0, q.CellPair(0.9, 1.0), IDEAL) - 0.3243797167408673) < 1e-14


def test_optimal_bound_stable_forms():
    # near-identical channels: mpmath gives 0.49974999995312497965
    val = q.classical_optimal_bound(1e6, q.CellPair(0.999999, 1.0), IDEAL)
    assert abs(val - 0.4997499999531250) < 1e-12
    # deep underflow regime must return 0.0, not raise
    assert q.classical_optimal_bound(1e7, q.CellPair(0.25, 1.0), IDEAL) == 0.0


def test_optimal_bound_monotone_in_n_and_spread():
    cell = q.CellPair(0.5, 1.0)
    ns = [1.0, 5.0, 25.0, 125.0]
    vals = [q.classical_optimal_bound(n, cell, IDEAL) for n in ns]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    taus = [0.8, 0.6, 0.4, 0.2]
    vals = [q.classical_optimal_bound(20.0, q.CellPair(t, 1.0), IDEAL) for t in taus]
    assert all(a > b for a, b in zip(vals, vals[1:]))


def test_optimal_bound_efficiency_substitution():
    det = q.DetectionModel(0.76, 1.0, 0.0)
    lhs = q.classical_optimal_bound(100.0, q.CellPair(0.5, 1.0), det)
    rhs = q.classical_optimal_bound(100.0, q.CellPair(0.38, 0.76), IDEAL)
    assert abs(lhs - rhs) < 1e-15


# ---------------------------------------------------------------------------
# photon-counting threshold and bound
# ---------------------------------------------------------------------------


def test_phc_threshold_derived():
    # 100 * 0.75 / log 4 = 54.101064033336127776 (mpmath)
    val = q.classical_phc_threshold(100.0, q.CellPair(0.25, 1.0), IDEAL)
    assert abs(val - 54.10106403333613) < 1e-11


def test_phc_threshold_limit_guard():
    # tau0 -> tau1 limit is N * tau1
    for eps in (1e-6, 1e-9, 1e-12):
        val = q.classical_phc_threshold(40.0, q.CellPair(0.9 - eps, 0.9), IDEAL)
        assert abs(val - 36.0) < 40.0 * eps + 1e-9


def test_phc_threshold_tau0_zero():
    assert q.classical_phc_threshold(10.0, q.CellPair(0.0, 0.8), IDEAL) == 0.0


def test_phc_threshold_invalid_on_equal():
    with pytest.raises(InvalidParameterError):
        q.classical_phc_threshold(10.0, q.CellPair(0.5, 0.5), IDEAL)


def test_phc_bound_tau0_zero_reduction():
    # only n = 0 votes for hypothesis 0: p = exp(-N tau1) / 2
    for N, t1 in ((5.0, 0.8), (40.0, 1.0)):
        val = q.classical_phc_bound(N, q.CellPair(0.0, t1), IDEAL)
        assert abs(val - 0.5 * math.exp(-N * t1)) < 1e-15


def test_phc_bound_matches_min_sum():
    cell = q.CellPair(0.25, 1.0)
    closed = q.classical_phc_bound(20.0, cell, IDEAL)
    m0 = q.signal_joint(q.poisson_pmf(5.0))
    m1 = q.signal_joint(q.poisson_pmf(20.0))
    brute = q.exact_error_probability(m0, m1)
    assert abs(closed - brute) < 1e-10


def test_phc_bound_no_probes():
    assert q.classical_phc_bound(0.0, q.CellPair(0.25, 1.0), IDEAL) == 0.5


def test_phc_bound_identical_returns_half():
    assert q.classical_phc_bound(30.0, q.CellPair(0.5, 0.5), IDEAL) == 0.5


def test_phc_bound_large_threshold_regime():
    # floor(threshold) ~ 1e5: must stay finite and inside (0, 1/2]
    val = q.classical_phc_bound(1.15e5, q.CellPair(0.996, 1.0), q.DetectionModel(0.78, 0.77, 0.0))
    assert 0.0 < val <= 0.5


def test_phc_bound_dominates_optimal_bound():
    rng = np.random.default_rng(5)
    for _ in range(40):
        N = float(rng.uniform(0.5, 100.0))
        t0 = float(rng.uniform(0.0, 0.9))
        t1 = float(rng.uniform(t0 + 0.02, 1.0))
        cell = q.CellPair(t0, t1)
        assert (
            q.classical_phc_bound(N, cell, IDEAL)
            >= q.classical_optimal_bound(N, cell, IDEAL) - 1e-12
        )


def test_phc_bound_equals_min_sum_on_grid():
    rng = np.random.default_rng(17)
    for _ in range(8):
        N = float(rng.uniform(1.0, 500.0))
        t0 = float(rng.uniform(0.05, 0.85))
        t1 = float(rng.uniform(t0 + 0.05, 1.0))
        closed = q.classical_phc_bound(N, q.CellPair(t0, t1), IDEAL)
        brute = q.exact_error_probability(
            q.signal_joint(q.poisson_pmf(N * t0)), q.signal_joint(q.poisson_pmf(N * t1))
        )
        assert abs(closed - brute) < 1e-9


# ---------------------------------------------------------------------------
# MED boundary and gain
# ---------------------------------------------------------------------------


def test_med_boundary_values():
    assert q.med_boundary(1.0) == 0.0
    assert q.med_boundary(100.0) == 0.99
    assert q.med_boundary(1e5) == 0.99999


def test_med_boundary_invalid():
    with pytest.raises(InvalidParameterError):
        q.med_boundary(0.0)
    with pytest.raises(InvalidParameterError):
        q.med_boundary(-3.0)


def test_gain_trivial_points():
    assert q.gain(0.3, 0.3) == 0.0
    assert q.gain(0.0, 0.5) == 1.0


def test_gain_derived_value():
    # mpmath: 1 - H(0.1089) = 0.50341091553885283588
    assert abs(q.gain(0.1089, 0.5) - 0.5034109155388528) < 1e-12


def test_gain_antisymmetric():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b = rng.uniform(0.0, 0.5, size=2)
        assert abs(q.gain(a, b) + q.gain(b, a)) < 1e-15


def test_gain_domain():
    with pytest.raises(InvalidParameterError):
        q.gain(0.7, 0.2)


def test_gain_record_probability_invariant():
    cell = q.CellPair(0.5, 1.0)
    src = q.SourceSpec.tmsv(10.0)
    with pytest.raises(InvalidParameterError):
        q.GainRecord(
            cell=cell,
            source=src,
            detect=IDEAL,
            p_err_quantum=0.7,
            p_err_classical_opt=0.3,
            p_err_classical_phc=0.4,
            gain_vs_opt=0.0,
            gain_vs_phc=0.0,
        )
