import numpy as np
import pytest

from gridgrowth import (DegreeHistogram, ExponentialMixture, GrowthConfig, KDistribution,
                        degree_histogram, discrete_law, fit_mixture, grow, ks_distance)
from gridgrowth.fitting import fit_table, meanfield_scale, noise_floor

THIRDS = ExponentialMixture((3, 4, 5), (1 / 3, 1 / 3, 1 / 3))


def _sample_hist(mix, n, seed, binning="round"):
    rng = np.random.default_rng(seed)
    return DegreeHistogram.from_degrees(mix.sample_degrees(rng, n, binning))


def test_ks_exact_sample_is_small():
    h = _sample_hist(THIRDS, 10 ** 5, 0)
    assert ks_distance(h, THIRDS) <= 0.01


@pytest.mark.parametrize("mix", [ExponentialMixture.singleton(1), ExponentialMixture.singleton(2),
                                 ExponentialMixture((1, 3), (0.5, 0.5))], ids=str)
def test_ks_shifted_mixture_is_large(mix):
    h = _sample_hist(mix, 10 ** 5, 1)
    assert ks_distance(h, mix.shifted(3)) >= 0.5


def test_ks_shift_gap_shrinks_with_mu():
    # a +3 shift is only 3/4 of a scale length for mu_K = 4: the population
    # gap is 0.431, so the sample statistic sits there rather than above 1/2
    d = np.arange(0, 300) + 0.5
    exact = np.max(np.abs(THIRDS.cdf(d) - THIRDS.shifted(3).cdf(d)))
    assert exact == pytest.approx(0.4310034219399065, rel=1e-12)
    h = _sample_hist(THIRDS, 10 ** 5, 1)
    assert ks_distance(h, THIRDS.shifted(3)) == pytest.approx(exact, abs=0.01)


def test_ks_bounds_and_empty():
    h = DegreeHistogram({1: 3, 9: 4})
    for mix in (THIRDS, ExponentialMixture.singleton(1), THIRDS.shifted(20)):
        assert 0.0 <= ks_distance(h, mix) <= 1.0
    with pytest.raises(ValueError):
        ks_distance(DegreeHistogram({}), THIRDS)


def test_ks_by_hand():
    # two observations, at degree 2 and 4; singleton k=2 (scale 2)
    h = DegreeHistogram({2: 1, 4: 1})
    mix = ExponentialMixture.singleton(2)
    gaps = [abs(0.5 - (1 - np.exp(-0.25))), abs(1.0 - (1 - np.exp(-1.25)))]
    assert ks_distance(h, mix) == pytest.approx(max(gaps), rel=1e-14)
    floor_gaps = [abs(0.5 - (1 - np.exp(-0.5))), abs(1.0 - (1 - np.exp(-1.5)))]
    assert ks_distance(h, mix, "floor") == pytest.approx(max(floor_gaps), rel=1e-14)


@pytest.mark.parametrize("mode", ["model", "free"])
def test_round_trip_singleton(mode):
    truth = ExponentialMixture.singleton(2)
    h = _sample_hist(truth, 10 ** 5, 2)
    res = fit_mixture(h, 3, (1, 6), mode=mode)
    assert res.mixture.ks == (2,)
    assert res.mixture.alphas == (1.0,)
    assert res.mixture.rate_scale == pytest.approx(2.0, rel=0.05)
    assert res.ks_stat <= 0.02


@pytest.mark.parametrize("ks,alphas", [((2, 5), (0.4, 0.6)), ((1, 4), (0.7, 0.3)),
                                       ((3, 6), (0.5, 0.5))])
def test_round_trip_two_components(ks, alphas):
    truth = ExponentialMixture(ks, alphas)
    h = _sample_hist(truth, 10 ** 5, sum(ks))
    res = fit_mixture(h, 3, (1, 8))
    assert res.mixture.ks == ks
    assert np.max(np.abs(np.subtract(res.mixture.alphas, alphas))) <= 0.05
    assert res.ks_stat <= 0.02


def test_round_trip_thirds_support_subset():
    h = _sample_hist(THIRDS, 10 ** 5, 4)
    res = fit_mixture(h, 3, (1, 6))
    assert set(res.mixture.ks) <= {3, 4, 5}
    assert res.ks_stat <= 0.02


def test_round_trip_floor_binning():
    truth = ExponentialMixture((1, 4), (0.5, 0.5))
    h = _sample_hist(truth, 10 ** 5, 6, binning="floor")
    res = fit_mixture(h, 3, (1, 6), binning="floor")
    assert res.mixture.ks == (1, 4)
    assert res.ks_stat <= 0.02
    assert res.binning == "floor"


def test_meanfield_scale_matches_geometric_ratio():
    for mu in (1.0, 2.5, 4.0):
        assert np.exp(-1.0 / meanfield_scale(mu)) == pytest.approx(mu / (1 + mu), rel=1e-12)
    assert meanfield_scale(2.0) == pytest.approx(2.4663034623764317, rel=1e-12)


def test_meanfield_mode_on_exact_law():
    kd = KDistribution((1, 3), (0.5, 0.5))
    law = discrete_law(kd, 200)
    h = DegreeHistogram({d: int(round(p * 10 ** 6)) for d, p in enumerate(law)
                         if round(p * 10 ** 6) > 0})
    res = fit_mixture(h, 3, (1, 6), mode="meanfield")
    assert res.binning == "floor"
    assert res.mixture.ks == (1, 3)
    assert np.allclose(res.mixture.alphas, (0.5, 0.5), atol=2e-3)
    assert res.mixture.rate_scale == pytest.approx(meanfield_scale(2.0), rel=2e-3)
    assert res.ks_stat <= 1e-3


@pytest.mark.slow
@pytest.mark.parametrize("support,probs", [((3, 4, 5), (1 / 3, 1 / 3, 1 / 3)),
                                           ((1, 3), (0.5, 0.5))])
def test_meanfield_mode_recovers_grown_k(support, probs):
    g = grow(GrowthConfig(node_count=10 ** 4, k_dist=KDistribution(support, probs), rng_seed=0))
    res = fit_mixture(degree_histogram(g), 3, (1, 6), mode="meanfield")
    assert res.mixture.ks == support
    assert np.allclose(res.mixture.alphas, probs, atol=0.03)
    assert res.mixture.mu == pytest.approx(np.dot(support, probs), abs=0.05)


@pytest.mark.parametrize("mode", ["model", "free"])
def test_more_components_never_worse(mode):
    h = _sample_hist(ExponentialMixture((1, 3, 6), (0.3, 0.4, 0.3)), 5000, 8)
    best = [fit_mixture(h, c, (1, 7), mode=mode, tie_margin=0.0).best_loss for c in (1, 2, 3)]
    assert best[0] >= best[1] - 1e-15 >= best[2] - 2e-15


def test_fit_invariants():
    h = _sample_hist(ExponentialMixture((2, 3), (0.5, 0.5)), 2000, 9)
    for mode in ("model", "free"):
        res = fit_mixture(h, 4, (1, 6), mode=mode)
        m = res.mixture
        assert abs(sum(m.alphas) - 1.0) <= 1e-12
        assert all(a > 0 for a in m.alphas)
        assert list(m.ks) == sorted(set(m.ks))
        assert 0 <= res.ks_stat <= 1
        assert res.loss >= res.best_loss
        assert res.loss <= res.best_loss + res.tie_margin
        assert m.is_model_faithful == (mode == "model")


def test_fit_errors():
    with pytest.raises(ValueError, match="insufficient support"):
        fit_mixture(DegreeHistogram({3: 100}), 2)
    with pytest.raises(ValueError):
        fit_mixture(DegreeHistogram({1: 10, 2: 10}), 2)
    h = DegreeHistogram({1: 40, 2: 30, 3: 20})
    with pytest.raises(ValueError):
        fit_mixture(h, 5)
    with pytest.raises(ValueError):
        fit_mixture(h, 2, (1, 9))
    with pytest.raises(ValueError):
        fit_mixture(h, 2, mode="mle")
    with pytest.raises(ValueError):
        fit_mixture(h, 2, binning="ceil")
    with pytest.raises(ValueError, match="floor"):
        fit_mixture(h, 2, mode="meanfield", binning="round")


def test_fit_thread_independent():
    h = _sample_hist(THIRDS, 3000, 10)
    a = fit_mixture(h, 3, (1, 6), workers=1)
    b = fit_mixture(h, 3, (1, 6), workers=4)
    assert a == b


def test_tie_prefers_fewer_components():
    # a sample from one exponential: supersets only fit the noise
    h = _sample_hist(ExponentialMixture.singleton(3), 20000, 11)
    res = fit_mixture(h, 3, (1, 6))
    assert len(res.mixture.ks) == 1
    assert res.tie_margin == pytest.approx(noise_floor(h))


def test_fit_table_and_text():
    h = _sample_hist(THIRDS, 500, 12)
    res = fit_mixture(h, 2, (2, 6))
    rows = fit_table(h, res.mixture)
    assert rows[0][0] == 0 and rows[-1][0] == max(h.bins)
    assert sum(r[1] for r in rows) == pytest.approx(1.0)
    text = res.to_text()
    assert text.startswith("mode model\n")
    assert f"ks_stat {res.ks_stat!r}" in text
