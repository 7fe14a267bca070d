"""Independent reference implementations used as oracles.

None of these import the package internals: each one is derived by hand for a
model small enough to solve directly.
"""
import numpy as np
from scipy import stats


def m1_root(s):
    """Spectrally negative model a = 1, lam_- = 2, Exp(1) down-jumps.

    k(-x) = s reads -x + 2x/(1 - x) = s, i.e. x^2 + (1 + s) x - s = 0 ... after
    clearing; the root in (0, 1) is returned.
    """
    # -x(1 - x) + 2x = s(1 - x)  =>  x^2 + (1 + s) x - s = 0
    s = np.asarray(s, dtype=float)
    return (-(1 + s) + np.sqrt((1 + s) ** 2 + 4 * s)) / 2


def brownian_root(a, sigma, s):
    """Positive r with -a r + sigma^2 r^2 / 2 = s."""
    return (a + np.sqrt(a * a + 2 * sigma**2 * s)) / sigma**2


def beekman_cdf(x, lam, beta, premium=1.0, n_terms=400):
    """Classical ruin model: P(sup <= x) as a geometric sum of gamma CDFs.

    Claims Exp(beta) arrive at rate lam against premium rate ``premium``; the
    ladder heights are again Exp(beta) and rho = lam / (beta premium).
    """
    rho = lam / (beta * premium)
    x = np.asarray(x, dtype=float)
    out = np.full(x.shape, 1.0 - rho)
    for n in range(1, n_terms):
        w = (1 - rho) * rho**n
        if w < 1e-18:
            break
        out = out + w * stats.gamma.cdf(x, n, scale=1.0 / beta)
    return out


def halfnormal_oscillating_mean():
    """Closed-form E X_1 of the half-normal / oscillating reference model."""
    return (49 + 36 * np.pi**2) / (-5 - 20 * np.pi**2)


def erlang2_double_root():
    """The double root of the Erlang(2, 1) preset at s = 0."""
    return 2.5


def companion_roots(poly_desc):
    """Eigenvalues of the companion matrix of a polynomial (descending coefficients)."""
    c = np.asarray(poly_desc, dtype=complex)
    c = c / c[0]
    n = len(c) - 1
    C = np.zeros((n, n), dtype=complex)
    C[0, :] = -c[1:]
    C[1:, :-1] = np.eye(n - 1)
    return np.linalg.eigvals(C)


def hyperexp2_ns_polynomial(s):
    """(s - k(r)) (r + 1)(r + 3)(2 - r) for the hyperexp2_ns preset, descending."""
    a, sig, lp, lm = 0.5, 1.0, 1.0, 2.0
    r = np.polynomial.Polynomial([0, 1])
    b1, b3, pos = r + 1, r + 3, 2 - r
    # k(r) (r + 1)(r + 3)(2 - r) with M_- = 0.4/(1 + r) + 0.6 * 3/(3 + r), M_+ = 2/(2 - r)
    base = (a * r + sig**2 * r * r / 2 - lp - lm) * b1 * b3 * pos
    jumps = lp * 2 * b1 * b3 + lm * (0.4 * b3 + 1.8 * b1) * pos
    poly = s * b1 * b3 * pos - (base + jumps)
    return poly.coef[::-1]


def spectrally_positive_mgf(k, mu, r):
    """E e^{r X^+} = r mu / k(r) for a process with no downward jumps."""
    return r * mu / k(r)
