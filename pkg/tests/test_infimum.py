from dataclasses import replace

import numpy as np
import pytest
from scipy import integrate

from levypk import (
    a_star_killed,
    find_roots,
    infimum_density_matrix,
    infimum_density_residue,
    infimum_mgf,
    limit_density,
    mean,
    reference_model,
)
from levypk.errors import IllConditioned, MeanNotNegative, PoleHit
from levypk.infimum import ExpPolyTerm, prefactor

from conftest import RESIDUE_MODELS
from oracles import brownian_root, halfnormal_oscillating_mean, m1_root

S_VALUES = [0.1, 1.0, 10.0]
IMAG_R = 1j * np.linspace(-6.0, 6.0, 10)


def _density(name, s):
    m = reference_model(name)
    rs = find_roots(m, s)
    return m, rs, infimum_density_residue(m, rs)


def _fourier(d, w_values):
    """``int_{-inf}^0 e^{i w y} d(y) dy`` by composite 30-point Gauss-Legendre."""
    slowest = min(t.rate.real for t in d.terms)
    span = 40.0 / slowest
    edges = np.linspace(-span, 0.0, int(np.ceil(span / 0.25)) + 1)
    x, wt = np.polynomial.legendre.leggauss(30)
    half = 0.5 * np.diff(edges)
    y = (0.5 * (edges[:-1] + edges[1:]))[:, None] + half[:, None] * x[None, :]
    f = d(y.ravel()) * (half[:, None] * wt[None, :]).ravel()
    return np.array([np.sum(f * np.exp(1j * w * y.ravel())) for w in w_values])


@pytest.mark.parametrize("s", S_VALUES)
def test_brownian_density_is_exponential(s):
    _, _, d = _density("brownian", s)
    r = brownian_root(-1.0, 1.0, s)
    y = np.linspace(-5.0, -0.01, 50)
    np.testing.assert_allclose(d(y), r * np.exp(r * y), rtol=1e-12)
    assert d.atom0 == 0


@pytest.mark.parametrize("s", S_VALUES)
def test_m1_atom_and_density(s):
    # phi(r) = r1 (1 + r) / (r + r1): atom r1, density (1 - r1) r1 e^{r1 y}
    _, _, d = _density("m1", s)
    r1 = float(m1_root(s))
    y = np.linspace(-8.0, -0.01, 40)
    assert d.atom0 == pytest.approx(r1, rel=1e-12)
    np.testing.assert_allclose(d(y), (1 - r1) * r1 * np.exp(r1 * y), rtol=1e-11)


@pytest.mark.parametrize("name", RESIDUE_MODELS)
@pytest.mark.parametrize("s", S_VALUES)
def test_mass_is_one(name, s):
    _, _, d = _density(name, s)
    assert d.mass == pytest.approx(1.0, abs=1e-10)
    quad, _ = integrate.quad(d, -np.inf, 0.0, limit=400, epsabs=1e-13, points=None)
    assert d.atom0 + quad == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("name", RESIDUE_MODELS)
@pytest.mark.parametrize("s", S_VALUES)
def test_transform_round_trip(name, s):
    m, rs, d = _density(name, s)
    closed = infimum_mgf(m, rs, IMAG_R)
    np.testing.assert_allclose(d.atom0 + _fourier(d, IMAG_R.imag), closed, atol=1e-8)
    np.testing.assert_allclose(d.mgf(IMAG_R), closed, atol=1e-12)


@pytest.mark.parametrize("name", RESIDUE_MODELS)
@pytest.mark.parametrize("s", S_VALUES)
def test_residue_matches_matrix(name, s):
    m, rs, d = _density(name, s)
    mat = infimum_density_matrix(m, rs)
    y = np.linspace(-20.0, -1e-3, 400)
    np.testing.assert_allclose(d(y), mat(y), atol=1e-8)
    assert mat.atom0 == pytest.approx(d.atom0, abs=1e-12)
    np.testing.assert_allclose(mat.mgf(IMAG_R), d.mgf(IMAG_R), atol=1e-10)


def test_limit_consistency(ref_model):
    s = 1e-6
    dens_s = infimum_density_residue(ref_model, find_roots(ref_model, s))
    lim = limit_density(ref_model)
    y = np.linspace(-5.0, -0.01, 60)
    assert np.max(np.abs(dens_s(y) / s - lim(y))) <= 1e-3


def test_limit_constant_is_inverse_mean(ref_model):
    assert limit_density(ref_model).constant == pytest.approx(1 / abs(halfnormal_oscillating_mean()), rel=1e-10)


def test_reference_limit_coefficients(ref_model):
    fused = limit_density(ref_model).fused()
    real = [f for f in fused if "rate" in f][0]
    pair = [f for f in fused if "w" in f][0]
    assert real["coeffs"][0] == pytest.approx(0.581657, abs=5e-6)
    assert pair["cos"][0] == pytest.approx(0.002080, abs=5e-6)
    assert pair["sin"][0] == pytest.approx(0.007628, abs=5e-6)
    # amplitude/phase is the same pair
    assert pair["amplitude"][0] * np.cos(pair["phase"][0]) == pytest.approx(pair["cos"][0], abs=1e-14)
    assert -pair["amplitude"][0] * np.sin(pair["phase"][0]) == pytest.approx(pair["sin"][0], abs=1e-14)


def test_fused_form_reproduces_density(ref_model):
    d = limit_density(ref_model)
    y = np.linspace(-4.0, -0.05, 30)
    rebuilt = np.full(y.shape, d.constant)
    for f in d.fused():
        if "rate" in f:
            rebuilt += f["coeffs"][0] * np.exp(f["rate"] * y)
        else:
            rebuilt += np.exp(f["v"] * y) * (f["cos"][0] * np.cos(f["w"] * y) + f["sin"][0] * np.sin(f["w"] * y))
    np.testing.assert_allclose(rebuilt, d(y), atol=1e-13)


def test_double_root_term_has_polynomial_part():
    d = limit_density(reference_model("erlang2_double"))
    mult = [t for t in d.terms if t.multiplicity == 2]
    assert len(mult) == 1 and abs(mult[0].coeffs[1]) > 0


def test_exp_poly_term_laplace():
    t = ExpPolyTerm(1.5 + 0j, (0.7, -0.2, 0.4))
    r = 0.3j
    val = integrate.quad(lambda y: (np.exp(r * y) * t(np.array([y]))[0]).real, -np.inf, 0)[0]
    assert val == pytest.approx(complex(t.laplace(r)).real, abs=1e-10)


@pytest.mark.parametrize("name", ["brownian", "m1", "halfnormal_oscillating", "hyperexp2_s"])
def test_a_star_killed_rules(name):
    m, rs, d = _density(name, 1.0)
    if m.sigma > 0:
        assert a_star_killed(m, rs) == pytest.approx(0.5 * m.sigma**2 * d.at_zero, rel=1e-14)
    else:
        assert a_star_killed(m, rs) == pytest.approx(d.atom0 * max(0.0, m.drift_a), rel=1e-14)


def test_prefactor_and_errors(ref_model):
    rs = find_roots(ref_model, 1.0)
    assert infimum_mgf(ref_model, rs, 0.0) == pytest.approx(1.0, abs=1e-14)
    assert prefactor(ref_model, rs) > 0
    with pytest.raises(PoleHit):
        infimum_mgf(ref_model, rs, -rs.values[1])
    with pytest.raises(ValueError):
        infimum_mgf(ref_model, find_roots(ref_model, 0.0), 0.5j)
    from levypk import ModelSpec

    with pytest.raises(MeanNotNegative):
        limit_density(ModelSpec(1.0, 1.0))


def test_ill_conditioning_is_reported(ref_model):
    mat = infimum_density_matrix(ref_model, find_roots(ref_model, 1.0))
    strict = replace(mat, max_amplification=1.0)
    with pytest.raises(IllConditioned):
        strict(np.linspace(-30.0, -1.0, 10))


def test_mean_of_killed_infimum(ref_model):
    # d/dr phi at 0 is E X^-, negative, and tends to -inf as s -> 0
    vals = []
    for s in (1.0, 0.1, 0.01):
        rs = find_roots(ref_model, s)
        h = 1e-6
        vals.append(((infimum_mgf(ref_model, rs, h) - infimum_mgf(ref_model, rs, -h)) / (2 * h)).real)
    assert vals[0] < 0 and vals[0] > vals[1] > vals[2]
    assert mean(ref_model) < 0
