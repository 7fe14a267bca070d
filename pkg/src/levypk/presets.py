"""Reference models used by the CLI, the tests and the README."""
from __future__ import annotations

import numpy as np

from .jumps import Erlang, Exponential, HalfNormal, Hyperexponential, NegErlang, NegHyperexponential, PoleForm
from .model import ModelSpec, NegativeJumps, PositiveJumps

__all__ = ["reference_model", "PRESETS", "REFERENCE_TARGETS", "oscillating_pole_form"]


def oscillating_pole_form() -> PoleForm:
    """Density ``(1 + 1/(4 pi^2)) (1 - cos(2 pi y)) e^y`` on y < 0 in pole form."""
    c = 1.0 + 1.0 / (4 * np.pi**2)
    return PoleForm(((1.0, (c,)), (1 + 2j * np.pi, (-c / 2,)), (1 - 2j * np.pi, (-c / 2,))))


def _half_normal_oscillating():
    return ModelSpec(
        drift_a=0.2,
        sigma=2.0,
        pos_jumps=PositiveJumps(2.0, HalfNormal(1.0)),
        neg_jumps=NegativeJumps(4.0, oscillating_pole_form()),
    )


def _erlang2(a):
    return ModelSpec(a, 0.5, PositiveJumps(303 / 32, Exponential(2.0)), NegativeJumps(4.0, NegErlang(2, 1.0)))


PRESETS = {
    # half-normal up-jumps, oscillating matrix-exponential down-jumps
    "halfnormal_oscillating": _half_normal_oscillating,
    # spectrally negative, X^+ ~ Exp(1)
    "m1": lambda: ModelSpec(1.0, 0.0, neg_jumps=NegativeJumps(2.0, NegHyperexponential((1.0,), (1.0,)))),
    # classical compound Poisson with unit premium, rho = 1/2
    "pk_classical": lambda: ModelSpec(-1.0, 0.0, PositiveJumps(0.5, Exponential(1.0))),
    # Brownian motion with drift -1: X^+ ~ Exp(2)
    "brownian": lambda: ModelSpec(-1.0, 1.0),
    # Erlang(2, 1) down-jumps with a double root r_2 = r_3 = 5/2 at s = 0
    "erlang2_double": lambda: _erlang2(-193 / 72),
    "erlang2_complex": lambda: _erlang2(-193 / 72 - 0.3),
    "erlang2_distinct": lambda: _erlang2(-193 / 72 + 0.3),
    # two-rate hyperexponential down-jumps, both cases
    "hyperexp2_ns": lambda: ModelSpec(
        0.5, 1.0, PositiveJumps(1.0, Exponential(2.0)), NegativeJumps(2.0, NegHyperexponential((0.4, 0.6), (1.0, 3.0)))
    ),
    "hyperexp2_s": lambda: ModelSpec(
        0.5, 0.0, PositiveJumps(1.0, Erlang(2, 3.0)), NegativeJumps(3.0, NegHyperexponential((0.4, 0.6), (1.0, 3.0)))
    ),
    # spectrally positive with a Brownian part
    "spectrally_positive": lambda: ModelSpec(-2.0, 0.7, PositiveJumps(1.5, Hyperexponential((0.3, 0.7), (1.0, 4.0)))),
}

#: Three-decimal reference values for the ``halfnormal_oscillating`` model and their tolerances.
REFERENCE_TARGETS = {
    "r2_re": (1.023, 0.005),
    "r2_im": (6.290, 0.005),
    "r4": (2.159, 0.005),
    "const": (0.501, 0.005),
    "coef_r4": (0.582, 0.005),
    "cos": (0.002, 0.005),
    "sin": (0.008, 0.005),
    "a_star": (2.169, 0.01),
    "one_minus_rho": (0.418, 0.005),
    "c_star": (1.104, 0.01),
}


def reference_model(name: str) -> ModelSpec:
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
