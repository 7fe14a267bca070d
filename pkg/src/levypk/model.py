"""Lévy model with Brownian part, compound-Poisson positive jumps and
matrix-exponential negative jumps.

The cumulant is

    k(r) = a r + sigma^2 r^2 / 2 + lam_plus (M_plus(r) - 1) + lam_minus (M_minus(r) - 1)

with ``M_plus``/``M_minus`` the m.g.f.s of the jump-size laws.  ``a`` is the
drift after the small-jump shift; with finite activity nothing else enters.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import DomainError, ModelError
from .jumps import (
    POSITIVE_KINDS,
    NegativeForm,
    NegErlang,
    NegHyperexponential,
    PoleForm,
    PositiveDensity,
)

__all__ = [
    "PositiveJumps",
    "NegativeJumps",
    "ModelSpec",
    "CaseTag",
    "CaseInfo",
    "cumulant",
    "cumulant_prime",
    "mean",
    "variance",
    "classify",
    "model_from_dict",
    "model_to_dict",
    "load_model",
]


@dataclass(frozen=True)
class PositiveJumps:
    rate: float = 0.0
    density: PositiveDensity | None = None

    def __post_init__(self):
        if not self.rate >= 0:
            raise ModelError(f"positive jump rate must be >= 0, got {self.rate}")
        if self.rate > 0 and self.density is None:
            raise ModelError("positive jumps with nonzero rate need a density")

    @property
    def active(self) -> bool:
        return self.rate > 0


@dataclass(frozen=True)
class NegativeJumps:
    rate: float = 0.0
    form: NegativeForm | None = None

    def __post_init__(self):
        if not self.rate >= 0:
            raise ModelError(f"negative jump rate must be >= 0, got {self.rate}")
        if self.rate > 0 and self.form is None:
            raise ModelError("negative jumps with nonzero rate need a matrix-exponential form")

    @property
    def active(self) -> bool:
        return self.rate > 0

    @property
    def poles(self):
        """``((b_i, coeffs_i), ...)``; empty when there are no negative jumps."""
        return self.form.pole_form().poles if self.active else ()


class CaseTag(enum.Enum):
    NS = "NS"
    S = "S"


@dataclass(frozen=True)
class CaseInfo:
    tag: CaseTag
    n_roots: int


@dataclass(frozen=True)
class ModelSpec:
    drift_a: float
    sigma: float = 0.0
    pos_jumps: PositiveJumps = field(default_factory=PositiveJumps)
    neg_jumps: NegativeJumps = field(default_factory=NegativeJumps)

    def __post_init__(self):
        if not np.isfinite(self.drift_a):
            raise ModelError("drift_a must be finite")
        if not (self.sigma >= 0 and np.isfinite(self.sigma)):
            raise ModelError(f"sigma must be >= 0, got {self.sigma}")

    @property
    def poles(self):
        return self.neg_jumps.poles

    @property
    def b1(self) -> float:
        return self.poles[0][0].real if self.poles else np.inf

    @property
    def abscissa(self) -> float:
        """k(r) is finite for real r below this value."""
        return self.pos_jumps.density.abscissa if self.pos_jumps.active else np.inf

    @cached_property
    def neg_denominator(self):
        """Ascending coefficients of ``prod (r + b_i)^(k_i + 1)``; ``[1]`` if no negative jumps."""
        if not self.neg_jumps.active:
            return np.array([1.0 + 0j])
        return self.neg_jumps.form.pole_form().denominator()

    @property
    def total_pole_order(self) -> int:
        return sum(len(c) for _, c in self.poles)

    @property
    def is_rational(self) -> bool:
        return not self.pos_jumps.active or self.pos_jumps.density.rational is not None


def _check_domain(model, r):
    r = np.asarray(r, dtype=complex)
    if model.neg_jumps.active and np.any(r.real <= -model.b1):
        raise DomainError(f"cumulant needs Re r > -b1 = {-model.b1}")
    if model.pos_jumps.active and np.any(r.real >= model.abscissa):
        raise DomainError(f"cumulant needs Re r < {model.abscissa} for the positive jump m.g.f.")


def cumulant(model: ModelSpec, r, *, continued: bool = False):
    """k(r) for complex ``r`` (array-friendly).

    With ``continued=True`` the rational negative-jump term is evaluated as its
    analytic continuation and no domain check is made; root finding needs this.
    """
    r = np.asarray(r, dtype=complex)
    if not continued:
        _check_domain(model, r)
    out = model.drift_a * r + 0.5 * model.sigma**2 * r * r
    if model.pos_jumps.active:
        out = out + model.pos_jumps.rate * (model.pos_jumps.density.mgf(r) - 1.0)
    if model.neg_jumps.active:
        out = out + model.neg_jumps.rate * (model.neg_jumps.form.mgf(r) - 1.0)
    # the -1 terms cancel exactly at 0
    return np.where(r == 0, 0.0 + 0j, out)


def cumulant_prime(model: ModelSpec, r):
    r = np.asarray(r, dtype=complex)
    out = model.drift_a + model.sigma**2 * r
    if model.pos_jumps.active:
        out = out + model.pos_jumps.rate * model.pos_jumps.density.mgf_prime(r)
    if model.neg_jumps.active:
        out = out + model.neg_jumps.rate * model.neg_jumps.form.mgf_prime(r)
    return out


def mean(model: ModelSpec) -> float:
    """E X_1 from catalog moments."""
    mu = model.drift_a
    if model.pos_jumps.active:
        mu += model.pos_jumps.rate * model.pos_jumps.density.moment(1)
    if model.neg_jumps.active:
        mu -= model.neg_jumps.rate * model.neg_jumps.form.abs_moment(1)
    return float(mu)


def variance(model: ModelSpec) -> float:
    """Var X_1 = k''(0) from catalog moments."""
    v = model.sigma**2
    if model.pos_jumps.active:
        v += model.pos_jumps.rate * model.pos_jumps.density.moment(2)
    if model.neg_jumps.active:
        v += model.neg_jumps.rate * model.neg_jumps.form.abs_moment(2)
    return float(v)


def classify(model: ModelSpec) -> CaseInfo:
    """Case NS (sigma > 0 or negative drift) or S, and the number of roots of
    ``k(r) = s`` in the open left half-plane."""
    M = model.total_pole_order
    if model.sigma > 0 or model.drift_a < 0:
        return CaseInfo(CaseTag.NS, M + 1)
    return CaseInfo(CaseTag.S, M)


# --------------------------------------------------------------------------
# JSON schema
# --------------------------------------------------------------------------

_MODEL_KEYS = {"drift_a", "sigma", "pos_jumps", "neg_jumps"}
_JUMP_KEYS = {"rate", "kind", "params"}
_POS_PARAMS = {
    "exponential": {"beta"},
    "erlang": {"n", "beta"},
    "hyperexponential": {"weights", "rates"},
    "half_normal": {"beta"},
    "tabulated": {"grid", "values"},
}
_NEG_PARAMS = {
    "exponential": {"b"},
    "erlang": {"order", "rate"},
    "hyperexponential": {"weights", "rates"},
    "pole_form": {"poles"},
}


def _check_keys(obj, allowed, where, required=None):
    if not isinstance(obj, dict):
        raise ModelError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise ModelError(f"{where}: unknown key(s) {sorted(unknown)}")
    missing = (allowed if required is None else required) - set(obj)
    if missing:
        raise ModelError(f"{where}: missing key(s) {sorted(missing)}")


def _complex(v, where):
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(v[0], v[1])
    if isinstance(v, dict) and set(v) <= {"re", "im"}:
        return complex(v.get("re", 0.0), v.get("im", 0.0))
    raise ModelError(f"{where}: cannot read {v!r} as a number")


def _pos_from_dict(d):
    if d is None:
        return PositiveJumps()
    _check_keys(d, _JUMP_KEYS, "pos_jumps", required={"rate"})
    rate = float(d["rate"])
    if rate == 0 and "kind" not in d:
        return PositiveJumps()
    kind = d.get("kind")
    if kind not in _POS_PARAMS:
        raise ModelError(f"pos_jumps.kind: unknown kind {kind!r}; expected one of {sorted(_POS_PARAMS)}")
    params = d.get("params", {})
    _check_keys(params, _POS_PARAMS[kind], f"pos_jumps.params ({kind})")
    try:
        density = POSITIVE_KINDS[kind](**params)
    except TypeError as exc:
        raise ModelError(f"pos_jumps.params: {exc}") from None
    return PositiveJumps(rate, density)


def _neg_from_dict(d):
    if d is None:
        return NegativeJumps()
    _check_keys(d, _JUMP_KEYS, "neg_jumps", required={"rate"})
    rate = float(d["rate"])
    if rate == 0 and "kind" not in d:
        return NegativeJumps()
    kind = d.get("kind")
    if kind not in _NEG_PARAMS:
        raise ModelError(f"neg_jumps.kind: unknown kind {kind!r}; expected one of {sorted(_NEG_PARAMS)}")
    params = d.get("params", {})
    _check_keys(params, _NEG_PARAMS[kind], f"neg_jumps.params ({kind})")
    if kind == "exponential":
        form = NegHyperexponential((1.0,), (float(params["b"]),))
    elif kind == "erlang":
        form = NegErlang(int(params["order"]), float(params["rate"]))
    elif kind == "hyperexponential":
        form = NegHyperexponential(tuple(params["weights"]), tuple(params["rates"]))
    else:
        poles = []
        for i, p in enumerate(params["poles"]):
            where = f"neg_jumps.params.poles[{i}]"
            _check_keys(p, {"re", "im", "coeffs"}, where, required={"re", "coeffs"})
            b = complex(float(p["re"]), float(p.get("im", 0.0)))
            poles.append((b, tuple(_complex(a, where + ".coeffs") for a in p["coeffs"])))
        form = PoleForm(tuple(poles))
    return NegativeJumps(rate, form)


def model_from_dict(d: dict) -> ModelSpec:
    """Build a model from the JSON schema; unknown keys are rejected."""
    _check_keys(d, _MODEL_KEYS, "model", required={"drift_a"})
    return ModelSpec(
        drift_a=float(d["drift_a"]),
        sigma=float(d.get("sigma", 0.0)),
        pos_jumps=_pos_from_dict(d.get("pos_jumps")),
        neg_jumps=_neg_from_dict(d.get("neg_jumps")),
    )


def model_to_dict(model: ModelSpec) -> dict:
    out = {"drift_a": model.drift_a, "sigma": model.sigma}
    pj, nj = model.pos_jumps, model.neg_jumps
    out["pos_jumps"] = (
        {"rate": pj.rate, "kind": pj.density.kind, "params": pj.density.params()}
        if pj.active
        else {"rate": 0.0}
    )
    out["neg_jumps"] = (
        {"rate": nj.rate, "kind": nj.form.kind, "params": nj.form.params()}
        if nj.active
        else {"rate": 0.0}
    )
    return out


def load_model(path) -> ModelSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path}: not valid JSON ({exc})") from None
    return model_from_dict(data)
