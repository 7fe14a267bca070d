import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from levypk import (
    Erlang,
    Exponential,
    HalfNormal,
    Hyperexponential,
    ModelSpec,
    PositiveJumps,
    Tabulated,
    b_transform,
    c_transforms,
    pi_tilde,
    tail_transform,
)
from levypk.errors import DomainError
from levypk.transforms import poly_exp_tail, tail_transform_quad

CATALOGUE = {
    "exponential": Exponential(1.5),
    "erlang": Erlang(3, 2.0),
    "hyperexponential": Hyperexponential((0.3, 0.7), (1.0, 4.0)),
    "half_normal": HalfNormal(1.0),
    "tabulated": Tabulated((0.0, 0.5, 1.0, 2.0), (0.2, 1.0, 0.6, 0.0)),
}


def _model(dens, rate=1.0):
    return ModelSpec(-1.0, 0.0, PositiveJumps(rate, dens))


def test_exp1_sine_transform_value():
    # int_0^inf sin(-t) e^{-t} dt = -1/2
    m = _model(Exponential(1.0))
    c1, c2 = c_transforms(m, 0.0, 0.0, 1.0)
    assert float(c1) == pytest.approx(0.5, abs=1e-15)
    assert float(c2) == pytest.approx(-0.5, abs=1e-15)


def test_exponential_closed_form():
    # Pi_tilde(x, u) = lam e^{-beta x} beta / (beta + u)
    m = _model(Exponential(2.0), rate=0.7)
    x = np.array([0.0, 0.3, 2.0])
    u = 0.5 + 1.5j
    np.testing.assert_allclose(pi_tilde(m, x, u), 0.7 * np.exp(-2 * x) * 2 / (2 + u), rtol=1e-14)
    np.testing.assert_allclose(b_transform(m, x, u), -0.7 * np.exp(-2 * x) * 2 / (2 + u) ** 2, rtol=1e-14)


@pytest.mark.parametrize("name", sorted(CATALOGUE))
def test_closed_form_matches_quadrature(name):
    m = _model(CATALOGUE[name], rate=1.3)
    for x in (0.0, 0.4, 1.7):
        for u in (0.0, 0.8, 0.5 + 3j):
            for n in (0, 1, 2):
                ref = tail_transform_quad(m, x, u, n)
                got = complex(tail_transform(m, x, u, n))
                assert got == pytest.approx(ref, abs=1e-8, rel=1e-8), (x, u, n)


@pytest.mark.parametrize("name", sorted(CATALOGUE))
def test_sine_cosine_decomposition(name):
    m = _model(CATALOGUE[name])
    x = np.linspace(0.0, 3.0, 7)
    v, w = 0.6, 2.5
    c1, c2 = c_transforms(m, x, v, w)
    full = pi_tilde(m, x, v + 1j * w)
    np.testing.assert_allclose(full.real, c1, atol=1e-12)
    np.testing.assert_allclose(full.imag, c2, atol=1e-12)
    # the conjugate argument flips the sine part
    np.testing.assert_allclose(pi_tilde(m, x, v - 1j * w).imag, -c2, atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(sorted(CATALOGUE)),
    st.floats(0.0, 4.0),
    st.floats(0.0, 3.0),
    st.floats(-3.0, 3.0),
)
def test_b_is_u_derivative(name, x, ur, ui):
    m = _model(CATALOGUE[name])
    u = complex(ur + 1e-5, ui)
    h = 1e-5
    fd = (pi_tilde(m, x, u + h) - pi_tilde(m, x, u - h)) / (2 * h)
    assert abs(complex(b_transform(m, x, u)) - complex(fd)) <= 1e-6


@pytest.mark.parametrize("name", sorted(CATALOGUE))
def test_tail_decreases_to_zero(name):
    m = _model(CATALOGUE[name])
    x = np.linspace(0.0, 40.0, 400)
    assert np.all(np.diff(pi_tilde(m, x, 0.0).real) <= 1e-15)
    for u in (0.0, 1.0, 3.0):
        assert pi_tilde(m, x, u).real[-1] < 1e-8


@pytest.mark.parametrize("name", ["exponential", "hyperexponential"])
def test_tail_monotone_for_completely_monotone_densities(name):
    m = _model(CATALOGUE[name])
    x = np.linspace(0.0, 40.0, 400)
    for u in (0.5, 1.0, 3.0):
        assert np.all(np.diff(pi_tilde(m, x, u).real) <= 1e-15)


def test_tail_can_rise_for_u_positive():
    # d/dx Pi_tilde(x, u) = u Pi_tilde(x, u) - f(x): positive at 0 for a density vanishing there
    m = _model(Erlang(3, 2.0))
    h = 1e-6
    slope = (pi_tilde(m, h, 1.0) - pi_tilde(m, 0.0, 1.0)).real / h
    assert slope == pytest.approx(float(pi_tilde(m, 0.0, 1.0).real), rel=1e-4)
    assert slope > 0


def test_tail_at_zero_is_total_rate():
    for dens in CATALOGUE.values():
        assert complex(pi_tilde(_model(dens, 2.5), 0.0, 0.0)) == pytest.approx(2.5, rel=1e-12)


def test_poly_exp_tail_scaling():
    m = _model(Erlang(2, 1.0))
    assert complex(poly_exp_tail(m, 0.5, 0.3, 2)) == pytest.approx(complex(tail_transform(m, 0.5, 0.3, 2)) / 2, rel=1e-14)


def test_domain_errors():
    m = _model(Exponential(1.0))
    with pytest.raises(DomainError):
        pi_tilde(m, -0.1, 0.0)
    with pytest.raises(DomainError):
        pi_tilde(m, 0.1, -0.5)
    with pytest.raises(DomainError):
        c_transforms(m, 0.1, 0.0, 0.0)


def test_no_positive_jumps_gives_zero():
    m = ModelSpec(-1.0, 1.0)
    assert np.all(pi_tilde(m, np.array([0.0, 1.0]), 0.5) == 0)
