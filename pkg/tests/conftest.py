"""Shared fixtures and the randomised model corpus."""
import numpy as np
import pytest

from levypk import (
    Erlang,
    Exponential,
    HalfNormal,
    Hyperexponential,
    ModelSpec,
    NegativeJumps,
    NegErlang,
    NegHyperexponential,
    PositiveJumps,
    mean,
    reference_model,
)
from levypk.presets import oscillating_pole_form

# models with rational positive m.g.f.s and negative mean, used by several suites
WH_MODELS = ["m1", "pk_classical", "erlang2_complex", "hyperexp2_ns", "hyperexp2_s"]
RESIDUE_MODELS = [
    "m1",
    "brownian",
    "pk_classical",
    "erlang2_double",
    "erlang2_complex",
    "erlang2_distinct",
    "hyperexp2_ns",
    "hyperexp2_s",
    "halfnormal_oscillating",
]


def _positive(rng):
    kind = rng.integers(5)
    if kind == 0:
        return PositiveJumps(0.0)
    rate = rng.uniform(0.2, 2.0)
    if kind == 1:
        return PositiveJumps(rate, Exponential(rng.uniform(0.5, 4.0)))
    if kind == 2:
        return PositiveJumps(rate, Erlang(int(rng.integers(2, 4)), rng.uniform(1.0, 5.0)))
    if kind == 3:
        w = rng.uniform(0.2, 0.8)
        return PositiveJumps(rate, Hyperexponential((w, 1 - w), tuple(rng.uniform(0.5, 5.0, 2))))
    return PositiveJumps(rate, HalfNormal(rng.uniform(0.5, 3.0)))


def _negative(rng):
    kind = rng.integers(5)
    if kind == 0:
        return NegativeJumps(0.0)
    rate = rng.uniform(0.5, 4.0)
    if kind == 1:
        return NegativeJumps(rate, NegHyperexponential((1.0,), (rng.uniform(0.5, 4.0),)))
    if kind == 2:
        w = rng.uniform(0.2, 0.8)
        b = np.sort(rng.uniform(0.5, 5.0, 2))
        if b[1] - b[0] < 0.3:
            b[1] += 0.5
        return NegativeJumps(rate, NegHyperexponential((w, 1 - w), tuple(b)))
    if kind == 3:
        return NegativeJumps(rate, NegErlang(int(rng.integers(2, 4)), rng.uniform(1.0, 4.0)))
    return NegativeJumps(rate, oscillating_pole_form())


def random_model(rng) -> ModelSpec:
    """A valid model with negative mean between -2 and -0.2."""
    while True:
        pos, neg = _positive(rng), _negative(rng)
        sigma = 0.0 if rng.random() < 0.4 else rng.uniform(0.2, 1.5)
        if sigma == 0 and not pos.active and not neg.active:
            continue
        probe = ModelSpec(0.0, sigma, pos, neg)
        target = -rng.uniform(0.2, 2.0)
        drift = target - mean(probe)
        return ModelSpec(float(drift), sigma, pos, neg)


def fuzz_corpus(n=120, seed=20241015):
    rng = np.random.default_rng(seed)
    return [random_model(rng) for _ in range(n)]


@pytest.fixture(scope="session")
def corpus():
    return fuzz_corpus()


@pytest.fixture(scope="session")
def ref_model():
    return reference_model("halfnormal_oscillating")
