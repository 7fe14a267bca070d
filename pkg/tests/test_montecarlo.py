import numpy as np
import pytest
from scipy import integrate, stats

from levypk import ModelSpec, NegativeJumps, NegErlang, SimConfig, reference_model, simulate_sup
from levypk.errors import ConfigError, MeanNotNegative
from levypk.montecarlo import sample_negative_jump, simulate_paths, thread_count
from levypk.presets import oscillating_pole_form


def test_brownian_bridge_maximum():
    # sup of a Brownian motion with drift -1 and unit variance is Exp(2)
    m = reference_model("brownian")
    cfg = SimConfig(horizon_T=20.0, n_paths=100_000, seed=1)
    res = simulate_sup(m, cfg, analytic_cdf=lambda x: 1 - np.exp(-2 * x), gamma=2.0)
    assert np.max(np.abs(res.z_score)) <= 3.0
    assert res.bias_bound <= np.min(res.se) / 3


@pytest.mark.filterwarnings("ignore:truncation bias")
def test_replay_is_bit_identical():
    m = reference_model("hyperexp2_ns")
    cfg = SimConfig(horizon_T=10.0, n_paths=3000, seed=42, chunk_size=1000, max_doublings=0)
    a = simulate_sup(m, cfg, keep_samples=True)
    b = simulate_sup(m, cfg, keep_samples=True)
    np.testing.assert_array_equal(a.samples, b.samples)
    np.testing.assert_array_equal(a.empirical_cdf, b.empirical_cdf)


def test_thread_count_does_not_change_results(monkeypatch):
    m = reference_model("halfnormal_oscillating")
    cfg = SimConfig(horizon_T=5.0, n_paths=4000, seed=9, chunk_size=1000)
    monkeypatch.setenv("LEVYPK_THREADS", "1")
    one = simulate_paths(m, cfg)
    monkeypatch.setenv("LEVYPK_THREADS", "4")
    four = simulate_paths(m, cfg)
    np.testing.assert_array_equal(one[0], four[0])
    np.testing.assert_array_equal(one[1], four[1])


def test_thread_env_validation(monkeypatch):
    monkeypatch.setenv("LEVYPK_THREADS", "zero")
    with pytest.raises(ConfigError):
        thread_count()
    monkeypatch.setenv("LEVYPK_THREADS", "0")
    with pytest.raises(ConfigError):
        thread_count()


def test_short_horizon_doubles_then_warns():
    m = reference_model("pk_classical")
    cfg = SimConfig(horizon_T=0.5, n_paths=2000, seed=0, max_doublings=2)
    with pytest.warns(RuntimeWarning, match="truncation bias"):
        res = simulate_sup(m, cfg)
    assert res.horizon_used == pytest.approx(2.0)
    assert res.warnings


def test_horizon_doubles_until_bias_is_small():
    m = reference_model("m1")
    res = simulate_sup(m, SimConfig(horizon_T=8.0, n_paths=2000, seed=0))
    assert res.horizon_used > 8.0
    assert not res.warnings
    assert res.bias_bound <= np.min(res.se) / 3


def test_config_errors():
    with pytest.raises(ConfigError):
        SimConfig(horizon_T=0.0)
    with pytest.raises(ConfigError):
        SimConfig(horizon_T=1.0, brownian_step=0.5)
    with pytest.raises(ConfigError):
        SimConfig(horizon_T=1.0, n_paths=0)
    with pytest.raises(MeanNotNegative):
        simulate_sup(ModelSpec(1.0, 1.0), SimConfig(horizon_T=1.0, n_paths=10))
    assert SimConfig.default_for(reference_model("m1")).horizon_T == pytest.approx(20.0)


def test_negative_erlang_draws():
    draws = sample_negative_jump(NegativeJumps(1.0, NegErlang(3, 2.0)), 5, 50_000)
    assert np.all(draws < 0)
    assert stats.kstest(-draws, stats.gamma(3, scale=0.5).cdf).pvalue > 1e-3


def test_oscillating_jump_draws():
    form = oscillating_pole_form()
    draws = sample_negative_jump(form, 3, 50_000)
    c = 1 + 1 / (4 * np.pi**2)

    def cdf(t):
        # P(-Y <= t) for the density c (1 - cos 2 pi y) e^y on y < 0
        return integrate.quad(lambda y: c * (1 - np.cos(2 * np.pi * y)) * np.exp(-y), 0.0, t)[0]

    grid = np.linspace(0.05, 8.0, 40)
    emp = np.searchsorted(np.sort(-draws), grid) / draws.size
    exact = np.array([cdf(t) for t in grid])
    assert np.max(np.abs(emp - exact)) <= 1.63 / np.sqrt(draws.size)
    assert isinstance(sample_negative_jump(form, 1), float)
