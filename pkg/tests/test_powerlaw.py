import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats
from scipy.special import zeta

from wsnet.errors import TooFewObservationsError
from wsnet.graph import DegreeHistogram, RngStream
from wsnet.powerlaw import fit_power_law, ks_distance, mle_gamma, sample_power_law, slope_before_kmin


def test_sampler_support_and_mean():
    x = sample_power_law(3.5, 1, 1_000_000, RngStream(1))
    assert x.min() >= 1
    mean = zeta(2.5) / zeta(3.5)
    var = zeta(1.5) / zeta(3.5) - mean**2
    assert abs(x.mean() - mean) <= 3 * np.sqrt(var / len(x))
    assert sample_power_law(2.5, 7, 1000, 3).min() >= 7


def test_sampler_chi_square():
    gamma, k_min, n = 3.0, 2, 1_000_000
    x = sample_power_law(gamma, k_min, n, np.random.default_rng(2))
    edges = list(range(k_min, 40)) + [np.inf]
    observed = np.array([np.sum((x >= a) & (x < b)) for a, b in zip(edges[:-1], edges[1:])])
    z0 = zeta(gamma, k_min)
    pmf = [(zeta(gamma, a) - (zeta(gamma, b) if np.isfinite(b) else 0)) / z0 for a, b in zip(edges[:-1], edges[1:])]
    _, p = stats.chisquare(observed, np.array(pmf) * n)
    assert p > 0.001


def test_sampler_far_tail():
    # a small table forces the bisection path; compare the survival function
    x = sample_power_law(2.2, 1, 200_000, RngStream(3), table_size=50)
    for k in (10, 51, 200, 5000):
        expected = zeta(2.2, k) / zeta(2.2, 1)
        observed = np.mean(x >= k)
        assert abs(observed - expected) <= 4 * np.sqrt(expected * (1 - expected) / len(x))


def test_sampler_is_seeded():
    np.testing.assert_array_equal(sample_power_law(3, 1, 100, 5), sample_power_law(3, 1, 100, 5))


def test_mle_recovery():
    x = sample_power_law(3.5, 5, 50_000, RngStream(4))
    assert 3.4 <= mle_gamma(x, 5) <= 3.6
    y = sample_power_law(2.5, 1, 100_000, RngStream(5))
    assert 2.45 <= mle_gamma(y, 1) <= 2.55


def test_mle_degenerate():
    hist = DegreeHistogram.from_dict({4: 100, 5: 100})
    fit = fit_power_law(DegreeHistogram.from_dict({4: 1000, 5: 1}), min_tail=1)
    assert fit.degenerate
    assert mle_gamma(np.full(200, 6), 6) == pytest.approx(10, abs=1e-3)
    with pytest.raises(TooFewObservationsError):
        mle_gamma(hist, 6)


def _brute_ks(sample, gamma, k_min):
    sample = np.asarray(sample)
    tail = sample[sample >= k_min]
    top = tail.max()
    norm = zeta(gamma, k_min)
    dist = 0.0
    model = 0.0
    for k in range(k_min, top + 1):
        model += k ** (-gamma) / norm
        emp = np.mean(tail <= k)
        dist = max(dist, abs(emp - model))
    return dist


def test_ks_matches_brute_force():
    rng = np.random.default_rng(6)
    uniform = rng.integers(1, 101, size=5000)
    d = ks_distance(uniform, 3.0, 1)
    assert d > 0.3
    assert d == pytest.approx(_brute_ks(uniform, 3.0, 1), abs=1e-12)
    x = sample_power_law(2.7, 3, 5000, 7)
    assert ks_distance(x, 2.7, 3) == pytest.approx(_brute_ks(x, 2.7, 3), abs=1e-12)


def test_ks_self_consistency_and_perturbation():
    x = sample_power_law(3.0, 2, 100_000, RngStream(8))
    d = ks_distance(x, 3.0, 2)
    assert d < 0.01
    assert d <= ks_distance(x, 2.0, 2)
    assert d <= ks_distance(x, 4.0, 2)


def test_fit_recovers_planted():
    x = sample_power_law(3.5, 5, 50_000, RngStream(9))
    body = RngStream(10).generator.integers(1, 5, size=20_000)
    fit = fit_power_law(DegreeHistogram.from_degrees(np.concatenate([x, body])))
    assert 3 <= fit.k_min <= 7
    assert fit.gamma == pytest.approx(3.5, abs=0.1)
    rec = fit.to_record()
    assert set(rec) == {"gamma", "k_min", "ks", "n_tail", "slope_before_kmin"}


def test_fit_bootstrap_pvalue():
    x = sample_power_law(3.0, 1, 3000, RngStream(11))
    fit = fit_power_law(DegreeHistogram.from_degrees(x), bootstrap=20, rng=12)
    assert 0.0 <= fit.p_value <= 1.0
    assert fit.p_value > 0.05


def test_fit_preconditions():
    with pytest.raises(TooFewObservationsError, match="too few"):
        fit_power_law(DegreeHistogram.from_dict({1: 5, 2: 4, 3: 1}))
    with pytest.raises(TooFewObservationsError):
        fit_power_law(DegreeHistogram.from_dict({3: 500}))


def test_slope_examples():
    k = np.arange(1, 11)
    flat = DegreeHistogram.from_dict({int(kk): 1000 for kk in k})
    assert slope_before_kmin(flat, 11) == pytest.approx(0, abs=1e-12)
    # 2520 is divisible by every k <= 10, so the counts are exactly proportional to k^-2
    exact = {int(kk): 2520**2 // kk**2 for kk in k}
    h = DegreeHistogram.from_dict(exact)
    assert slope_before_kmin(h, 11) == pytest.approx(2.0, abs=1e-6)
    with pytest.raises(TooFewObservationsError):
        slope_before_kmin(h, 3)


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 1000), st.lists(st.integers(1, 500), min_size=3, max_size=12))
def test_slope_scale_invariant(factor, values):
    counts = np.zeros(len(values) + 1, dtype=np.int64)
    counts[1:] = values
    a = DegreeHistogram(counts)
    b = DegreeHistogram(counts * factor)
    k_min = len(values) + 1
    assert slope_before_kmin(b, k_min) == pytest.approx(slope_before_kmin(a, k_min), rel=1e-9, abs=1e-9)


def test_slope_accepts_degree_sequence():
    seq = [1] * 8 + [2] * 4 + [3] * 2 + [9] * 60
    assert slope_before_kmin(seq, 9) == pytest.approx(slope_before_kmin(DegreeHistogram.from_degrees(seq), 9))
