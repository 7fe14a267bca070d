"""Monte Carlo ground truth for the supremum.

Paths are simulated exactly in the jump part: exponential inter-arrival
times, jump signs chosen with probabilities ``lam_+/lam`` and ``lam_-/lam``,
sizes drawn from the jump laws.  Between events the Brownian part moves by a
Gaussian increment and its maximum is drawn from the exact bridge identity

    max = x + (d + sqrt(d^2 - 2 sigma^2 dt log U)) / 2,    U ~ U(0, 1),

so no time discretisation enters.  Segments are capped at ``brownian_step``
(memorylessness makes the cap harmless), which keeps the per-step work
balanced across paths.

Randomness: the paths are split into chunks of ``chunk_size``; chunk ``c``
draws from ``numpy.random.default_rng(SeedSequence([seed, c]))``.  Results are
therefore identical for any thread count.
"""
from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import ConfigError, MeanNotNegative
from .model import ModelSpec, mean

__all__ = ["SimConfig", "SimResult", "simulate_sup", "simulate_paths", "sample_negative_jump", "thread_count"]

THREADS_ENV = "LEVYPK_THREADS"


def thread_count() -> int:
    """Worker threads from ``LEVYPK_THREADS`` (default 1)."""
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


@dataclass(frozen=True)
class SimConfig:
    horizon_T: float
    brownian_step: float | None = None
    n_paths: int = 100_000
    seed: int = 0
    chunk_size: int = 20_000
    max_doublings: int = 3

    def __post_init__(self):
        if not self.horizon_T > 0:
            raise ConfigError("horizon_T must be positive")
        step = self.brownian_step if self.brownian_step is not None else 1e-3 * self.horizon_T
        if not step > 0:
            raise ConfigError("brownian_step must be positive")
        if step > 1e-3 * self.horizon_T * (1 + 1e-12):
            raise ConfigError("brownian_step must be <= 1e-3 * horizon_T")
        object.__setattr__(self, "brownian_step", float(step))
        if int(self.n_paths) != self.n_paths or self.n_paths < 1:
            raise ConfigError("n_paths must be a positive integer")
        if self.chunk_size < 1:
            raise ConfigError("chunk_size must be positive")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError("seed must fit in 64 unsigned bits")

    @classmethod
    def default_for(cls, model: ModelSpec, **kw):
        """Horizon ``20/|mu|`` and step ``1e-3`` of it unless overridden."""
        mu = mean(model)
        if not mu < 0:
            raise MeanNotNegative(f"need E X_1 < 0, got {mu}")
        kw.setdefault("horizon_T", 20.0 / abs(mu))
        return cls(**kw)


@dataclass(frozen=True)
class SimResult:
    x: np.ndarray
    empirical_cdf: np.ndarray
    se: np.ndarray
    bias_bound: float
    horizon_used: float
    n_paths: int
    analytic_cdf: np.ndarray | None = None
    z_score: np.ndarray | None = None
    samples: np.ndarray | None = field(default=None, repr=False)
    warnings: tuple = ()


def sample_negative_jump(neg, seed, size=None):
    """Exact draws (negative reals) from a negative-jump component.

    ``neg`` is a :class:`~levypk.model.NegativeJumps` or a negative jump form.
    """
    form = getattr(neg, "form", neg)
    rng = np.random.default_rng(seed)
    if size is None:
        return float(form.sample(rng, 1)[0])
    return form.sample(rng, int(size))


def _chunk(model: ModelSpec, T: float, step: float, n: int, rng):
    """Running maximum over [0, T] and the endpoint for ``n`` paths."""
    a, sig = model.drift_a, model.sigma
    lp, lm = model.pos_jumps.rate, model.neg_jumps.rate
    lam = lp + lm
    X = np.zeros(n)
    M = np.zeros(n)
    t = np.zeros(n)
    idx = np.arange(n)
    while idx.size:
        m = idx.size
        tau = rng.exponential(1.0 / lam, m) if lam > 0 else np.full(m, np.inf)
        left = T - t[idx]
        dt = np.minimum(np.minimum(tau, left), step)
        jump = (tau <= left) & (tau <= step)
        d = a * dt
        if sig > 0:
            d = d + sig * np.sqrt(dt) * rng.standard_normal(m)
            u = rng.random(m)
            top = X[idx] + 0.5 * (d + np.sqrt(d * d - 2 * sig**2 * dt * np.log1p(-u)))
        else:
            top = X[idx] + np.maximum(d, 0.0)
        X[idx] += d
        M[idx] = np.maximum(M[idx], top)
        t[idx] += dt
        if jump.any():
            j = idx[jump]
            k = j.size
            up = rng.random(k) < (lp / lam)
            sizes = np.empty(k)
            nu = int(up.sum())
            if nu:
                sizes[up] = model.pos_jumps.density.sample(rng, nu)
            if k - nu:
                sizes[~up] = model.neg_jumps.form.sample(rng, k - nu)
            X[j] += sizes
            M[j] = np.maximum(M[j], X[j])
        idx = idx[t[idx] < T]
    return M, X


def simulate_paths(model: ModelSpec, cfg: SimConfig):
    """``(M_T, X_T)`` for all paths, chunked and seeded as documented above."""
    n = int(cfg.n_paths)
    bounds = list(range(0, n, cfg.chunk_size)) + [n]
    jobs = list(enumerate(zip(bounds[:-1], bounds[1:])))

    def run(job):
        c, (lo, hi) = job
        rng = np.random.default_rng(np.random.SeedSequence([int(cfg.seed), c]))
        return _chunk(model, cfg.horizon_T, cfg.brownian_step, hi - lo, rng)

    threads = thread_count()
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(threads) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(j) for j in jobs]
    return np.concatenate([p[0] for p in parts]), np.concatenate([p[1] for p in parts])


def _bias_bound(model, M, X, gamma):
    """``mean exp(-gamma (M_T - X_T))``: bounds P(the supremum is exceeded after T)."""
    if gamma is None or not np.isfinite(gamma):
        return 0.0
    return float(np.mean(np.exp(-gamma * (M - X))))


def simulate_sup(model: ModelSpec, cfg: SimConfig, x_grid=None, analytic_cdf=None, gamma=None,
                 keep_samples=False) -> SimResult:
    """Empirical CDF of ``sup_{t <= T} X_t`` with binomial standard errors.

    ``x_grid`` defaults to the 20 empirical quantiles at levels 0.025, 0.075,
    ..., 0.975.  ``gamma`` (the Cramér root) enables the truncation bound;
    when the bound exceeds a third of the smallest standard error the horizon
    is doubled, at most ``cfg.max_doublings`` times.
    """
    mu = mean(model)
    if not mu < 0:
        raise MeanNotNegative(f"need E X_1 < 0, got {mu}")
    if gamma is None:
        from .supremum import cramer_root

        gamma = cramer_root(model)
    notes = []
    for attempt in range(cfg.max_doublings + 1):
        M, X = simulate_paths(model, cfg)
        n = M.size
        x = np.quantile(M, (np.arange(20) + 0.5) / 20) if x_grid is None else np.asarray(x_grid, dtype=float)
        Ms = np.sort(M)
        F = np.searchsorted(Ms, x, side="right") / n
        se = np.sqrt(np.maximum(F * (1 - F), 1.0 / n) / n)
        bias = _bias_bound(model, M, X, gamma)
        if bias <= np.min(se) / 3:
            break
        if attempt == cfg.max_doublings:
            msg = (f"truncation bias bound {bias:.2e} still exceeds SE/3 = {np.min(se) / 3:.2e} "
                   f"at T = {cfg.horizon_T}")
            warnings.warn(msg, RuntimeWarning, stacklevel=2)
            notes.append(msg)
            break
        cfg = replace(cfg, horizon_T=2 * cfg.horizon_T, brownian_step=2 * cfg.brownian_step)
    ana = z = None
    if analytic_cdf is not None:
        ana = np.asarray(analytic_cdf(x) if callable(analytic_cdf) else analytic_cdf, dtype=float)
        z = (F - ana) / se
    return SimResult(
        x=x,
        empirical_cdf=F,
        se=se,
        bias_bound=bias,
        horizon_used=cfg.horizon_T,
        n_paths=n,
        analytic_cdf=ana,
        z_score=z,
        samples=M if keep_samples else None,
        warnings=tuple(notes),
    )
