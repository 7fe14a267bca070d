"""Law of the overall supremum ``X^+`` when the mean is negative.

``X^+`` is distributed as a subordinator with drift ``a_*`` and Lévy density
``pi_*`` killed at rate 1:

    E exp(r X^+) = 1 / (1 - k_*(r)),    k_*(r) = a_* r + int (e^{rx} - 1) pi_*(x) dx,

where ``pi_*`` convolves the positive jumps with the limit object
``p'_-(0, .)`` of the killed infimum.  Each exponential-polynomial term
``c y^(j-1)/(j-1)! e^{r_k y}`` of that object contributes
``c T_{j-1}(x, r_k)/(j-1)!``; the constant contributes ``Pi_tilde(x, 0)``
and an atom contributes the jump density itself.

The law is also a geometric compound: with ``rho = m/(1 + m)`` (m the total
mass of ``pi_*``), ``c_* = 1/(a_* (1 - rho))`` and ``F_0 = pi_*/m``,

    X^+ = xi_0 + sum_{n=1}^{nu} (xi_n + eta_n),   xi ~ Exp(c_*), eta ~ F_0,

with ``nu`` geometric, ``P(nu = k) = (1 - rho) rho^k``.
"""
from __future__ import annotations

from functools import cached_property
from math import comb, factorial

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import integrate, optimize, signal
from scipy.interpolate import CubicSpline

from .errors import (
    DomainError,
    DriftZero,
    GridTooCoarse,
    HypothesisViolated,
    MeanNotNegative,
    ModelError,
    PoleHit,
    QuadratureError,
)
from .infimum import (
    ExpPolyTerm,
    InfimumDensity,
    a_star_killed,
    infimum_density_residue,
    limit_density,
    prefactor,
)
from .jumps import NegErlang, NegHyperexponential
from .model import CaseTag, ModelSpec, classify, cumulant, mean, variance
from .roots import RootSet, find_roots
from .transforms import tail_transform

__all__ = [
    "SupremumLaw",
    "supremum_law",
    "supremum_mgf",
    "supremum_mgf_wh",
    "killed_supremum_mgf",
    "killed_supremum_mgf_wh",
    "geometric_compound",
    "sample_supremum",
    "supremum_cdf",
    "cramer_root",
    "hyperexponential_law",
    "erlang_law",
    "erlang2_pi_star",
]

CDF_POINTS = 2**14
SERIES_TOL = 1e-10


# --------------------------------------------------------------------------
# integrated transforms
# --------------------------------------------------------------------------


def _H(model, r, u, n):
    """``d^n/du^n [(M(r) - M(-u)) / (r + u)]`` for the positive-jump law, u != 0 or n = 0."""
    dens = model.pos_jumps.density
    r = np.asarray(r, dtype=complex)
    u = complex(u)
    if u == 0:
        if n != 0:
            raise ValueError("only n = 0 is needed at u = 0")
        # (M(r) - 1) / r, with its series near 0
        small = np.abs(r) < 1e-5
        # placeholder for masked entries: -1 lies inside every positive-jump m.g.f. domain
        rs = np.where(small, -1.0, r)
        direct = (dens.mgf(rs) - 1.0) / rs
        series = dens.moment(1) + dens.moment(2) * r / 2 + dens.moment(3) * r**2 / 6
        return np.where(small, series, direct)
    Mr = dens.mgf(r)
    total = np.zeros(r.shape, dtype=complex)
    for m in range(n + 1):
        Tm = complex(dens.tail_transform(0.0, u, m))
        g = Mr - Tm if m == 0 else -Tm * np.ones(r.shape)
        total = total + comb(n, m) * g * (-1) ** (n - m) * factorial(n - m) / (r + u) ** (n - m + 1)
    return total


def _G(model, r, u, n):
    """``int_0^inf (e^{rx} - 1) T_n(x, u) dx`` for the positive-jump density (no rate)."""
    r = np.asarray(r, dtype=complex)
    if complex(u) == 0:
        return _H(model, r, 0.0, 0) - model.pos_jumps.density.moment(1)
    return _H(model, r, u, n) - _H(model, np.zeros(1), u, n)[0]


def _mass_term(model, u, n):
    """``int_0^inf T_n(x, u) dx``."""
    if complex(u) == 0:
        return model.pos_jumps.density.moment(1)
    return complex(_H(model, np.zeros(1), u, n)[0])


def _pi_from_density(model, dens: InfimumDensity, x, scale=1.0):
    """Convolution of the positive jumps with an infimum density object."""
    x = np.asarray(x, dtype=float)
    if not model.pos_jumps.active:
        return np.zeros(x.shape)
    out = np.zeros(x.shape, dtype=complex)
    if dens.atom0:
        out = out + dens.atom0 * model.pos_jumps.rate * model.pos_jumps.density.pdf(x)
    if dens.constant:
        out = out + dens.constant * tail_transform(model, x, 0.0, 0)
    for t in dens.terms:
        for j, c in enumerate(t.coeffs):
            out = out + c * tail_transform(model, x, t.rate, j) / factorial(j)
    return np.where(x > 0, out.real * scale, 0.0)


def _kstar_closed(model, dens: InfimumDensity, drift, r, scale=1.0):
    r = np.asarray(r, dtype=complex)
    out = drift * r
    if not model.pos_jumps.active:
        return out
    lam = model.pos_jumps.rate
    acc = np.zeros(r.shape, dtype=complex)
    if dens.atom0:
        acc = acc + dens.atom0 * (model.pos_jumps.density.mgf(r) - 1.0)
    if dens.constant:
        acc = acc + dens.constant * _G(model, r, 0.0, 0)
    for t in dens.terms:
        for j, c in enumerate(t.coeffs):
            acc = acc + c * _G(model, r, t.rate, j) / factorial(j)
    return out + lam * scale * np.where(r == 0, 0.0, acc)


def _mass_closed(model, dens: InfimumDensity, scale=1.0):
    if not model.pos_jumps.active:
        return 0.0
    acc = dens.atom0 + dens.constant * _mass_term(model, 0.0, 0)
    for t in dens.terms:
        for j, c in enumerate(t.coeffs):
            acc = acc + c * _mass_term(model, t.rate, j) / factorial(j)
    return float(np.real(acc)) * model.pos_jumps.rate * scale


def cramer_root(model: ModelSpec) -> float:
    """Positive root ``gamma`` of ``k(r) = 0``; ``inf`` if k < 0 on (0, inf)."""
    mu = mean(model)
    if not mu < 0:
        raise MeanNotNegative(f"need E X_1 < 0, got {mu}")
    top = model.abscissa

    def k(r):
        return float(np.real(cumulant(model, r)))

    lo, hi = 0.0, 1.0
    while True:
        if np.isfinite(top) and hi >= top:
            hi = top * (1 - 1e-13)
            if not k(hi) > 0:
                return np.inf
            break
        with np.errstate(over="ignore", invalid="ignore"):
            val = k(hi)
        if val > 0:
            break
        if not np.isfinite(val):
            return np.inf
        if hi > 1e8:
            return np.inf
        lo, hi = hi, 2 * hi
    # k is convex with k(0) = 0 and k'(0) < 0: the sign change below is the root
    if lo == 0.0:
        lo = min(1e-300 + hi * 1e-9, hi / 2)
        while k(lo) >= 0 and lo > 1e-300:
            lo /= 2
    with np.errstate(over="ignore"):
        return float(optimize.brentq(k, lo, hi, xtol=1e-15, rtol=1e-15, maxiter=500))


# --------------------------------------------------------------------------
# the law
# --------------------------------------------------------------------------


class SupremumLaw:
    """Subordinator triplet ``(a_*, 0, pi_*)`` and derived quantities.

    ``density`` is the limit object ``p'_-(0, .)``; a custom ``pi_star_fn``
    replaces the generic assembly (used by the closed-form constructors that
    work from a matrix form).
    """

    def __init__(self, model: ModelSpec, a_star: float, density: InfimumDensity, roots=None, pi_star_fn=None):
        self.model = model
        self.a_star = float(a_star)
        self.density = density
        self.roots = roots
        self._pi_fn = pi_star_fn

    def __repr__(self):
        return f"SupremumLaw(a_star={self.a_star:.6g}, mass={self.mass:.6g}, rho={self.rho:.6g})"

    # triplet ---------------------------------------------------------------

    def pi_star(self, x):
        """Lévy density ``pi_*(x)`` of the ladder subordinator, x > 0."""
        if self._pi_fn is not None:
            return np.asarray(self._pi_fn(np.asarray(x, dtype=float)), dtype=float)
        return _pi_from_density(self.model, self.density, x)

    @cached_property
    def gamma(self) -> float:
        return cramer_root(self.model)

    @cached_property
    def mass(self) -> float:
        if self._pi_fn is None:
            return _mass_closed(self.model, self.density)
        if not self.model.pos_jumps.active:
            return 0.0
        val, err = integrate.quad(self.pi_star, 0.0, np.inf, limit=400, epsabs=1e-12, epsrel=1e-11)
        if err > 1e-8:
            raise QuadratureError(f"mass of pi_* has error estimate {err:.1e}")
        return float(val)

    @property
    def rho(self) -> float:
        return self.mass / (1.0 + self.mass)

    @property
    def c_star(self) -> float:
        if not self.a_star > 0:
            raise DriftZero("c_* needs a_* > 0")
        return 1.0 / (self.a_star * (1.0 - self.rho))

    def f0(self, x):
        """Normalised jump density ``pi_*/mass``."""
        if self.mass == 0:
            raise ValueError("pi_* has zero mass; F_0 is undefined")
        return self.pi_star(x) / self.mass

    # transforms ------------------------------------------------------------

    def k_star(self, r, method: str = "closed"):
        r = np.asarray(r, dtype=complex)
        if self._pi_fn is not None:
            method = "quad"
        if method == "closed":
            return _kstar_closed(self.model, self.density, self.a_star, r)
        if method != "quad":
            raise ValueError(f"unknown method {method!r}")
        return self.a_star * r + _quad_exp_minus_one(self.pi_star, r)

    def mgf(self, r, method: str = "closed"):
        """``E exp(r X^+) = 1/(1 - k_*(r))``; real r must lie below the Cramér root."""
        r = np.asarray(r, dtype=complex)
        if np.any(r.real >= self.gamma):
            raise DomainError(f"m.g.f. of the supremum is infinite for Re r >= {self.gamma}")
        out = 1.0 / (1.0 - self.k_star(r, method))
        return np.where(r == 0, 1.0 + 0j, out)

    def pi_hat(self, r, method: str = "closed"):
        """``int e^{rx} F_0(dx)``."""
        r = np.asarray(r, dtype=complex)
        return 1.0 + (self.k_star(r, method) - self.a_star * r) / self.mass

    def triplet(self) -> dict:
        out = {
            "a_star": self.a_star,
            "mass": self.mass,
            "rho": self.rho,
            "one_minus_rho": 1.0 - self.rho,
            "c_star": self.c_star if self.a_star > 0 else None,
            "gamma": self.gamma,
            "infimum_limit": {
                "atom": self.density.atom0,
                "constant": self.density.constant,
                "terms": self.density.fused(),
            },
        }
        return out

    # grids for the CDF and the sampler ---------------------------------------

    def _tail_point(self, eps=1e-9):
        """x with ``int_x^inf pi_* < eps * mass``."""
        X = 1.0
        for _ in range(60):
            tail, _ = integrate.quad(self.pi_star, X, np.inf, limit=200, epsabs=1e-14)
            if tail < eps * self.mass:
                return X
            X *= 2
        raise QuadratureError("could not bound the tail of pi_*")

    @cached_property
    def _f0_inverse(self):
        X = self._tail_point()
        x = np.linspace(0.0, X, CDF_POINTS + 1)
        f = self.pi_star(x[1:])
        f = np.concatenate([[self.pi_star(np.array([X * 1e-12]))[0]], f])
        F = integrate.cumulative_trapezoid(f, x, initial=0.0)
        F /= F[-1]
        return F, x


def _quad_exp_minus_one(fn, r):
    r = np.atleast_1d(np.asarray(r, dtype=complex))

    def integrand(x):
        f = fn(np.array([x]))[0]
        if f == 0:
            return np.zeros(r.shape, dtype=complex)
        return np.expm1(r * x) * f

    val, err = integrate.quad_vec(integrand, 0.0, np.inf, epsabs=1e-13, epsrel=1e-11, limit=2000)
    if not np.all(np.isfinite(val)) or err > 1e-8:
        raise QuadratureError(f"quadrature of (e^(rx) - 1) pi_*(x) has error estimate {err:.1e}")
    return val


def _check_hypotheses(model):
    mu = mean(model)
    if not mu < 0:
        raise MeanNotNegative(f"the supremum is finite only for E X_1 < 0 (got {mu})")
    if not np.isfinite(variance(model)):
        raise HypothesisViolated("finite variance is required")


def supremum_law(model: ModelSpec, roots: RootSet | None = None) -> SupremumLaw:
    """Generic construction from the roots at s = 0."""
    _check_hypotheses(model)
    if roots is None:
        roots = find_roots(model, 0.0)
    dens = limit_density(model, roots)
    return SupremumLaw(model, a_star_killed(model, roots, dens), dens, roots)


def supremum_mgf(law: SupremumLaw, r, method: str = "closed"):
    return law.mgf(r, method)


def supremum_mgf_wh(model: ModelSpec, r, roots: RootSet | None = None):
    """Independent route: ``1 / (-k(r) psi(r))`` with ``psi = lim phi_s/s``."""
    if roots is None:
        roots = find_roots(model, 0.0)
    r = np.asarray(r, dtype=complex)
    K0 = prefactor(model, roots)
    rest = np.array([ro.value for ro in roots.roots for _ in range(ro.multiplicity) if ro.value != 0])
    rs = np.where(r == 0, 1.0, r)
    kr = cumulant(model, rs, continued=True) / rs
    den = np.prod(r[..., None] + rest, axis=-1) if rest.size else np.ones(r.shape)
    psi_r = K0 * P.polyval(r, model.neg_denominator) / den
    return np.where(r == 0, 1.0 + 0j, 1.0 / (-kr * psi_r))


def killed_supremum_mgf(model: ModelSpec, s: float, r, roots: RootSet | None = None):
    """``E exp(r X^+_{theta_s})`` from ``A_*(s)`` and the killed infimum density."""
    if not s > 0:
        raise ValueError("killing rate must be positive")
    if not np.isfinite(variance(model)):
        raise HypothesisViolated("finite variance is required")
    if roots is None:
        roots = find_roots(model, s)
    dens = infimum_density_residue(model, roots)
    A = a_star_killed(model, roots, dens)
    r = np.asarray(r, dtype=complex)
    ks = _kstar_closed(model, dens, A, r, scale=1.0 / s)
    den = 1.0 - ks
    if np.any(np.abs(den) <= 1e-12):
        raise PoleHit("1 - k_s(r) vanishes")
    return np.where(r == 0, 1.0 + 0j, 1.0 / den)


def killed_supremum_mgf_wh(model: ModelSpec, s: float, r, roots: RootSet | None = None):
    """``s / ((s - k(r)) phi_s(r))``: the Wiener-Hopf quotient."""
    from .infimum import infimum_mgf

    if roots is None:
        roots = find_roots(model, s)
    r = np.asarray(r, dtype=complex)
    return s / ((s - cumulant(model, r)) * infimum_mgf(model, roots, r))


def geometric_compound(law: SupremumLaw):
    """``(rho, c_star, F0)`` with F0 the normalised jump density (None if the mass is 0)."""
    if not law.a_star > 0:
        raise DriftZero("the geometric-compound form with exponential factors needs a_* > 0")
    f0 = law.f0 if law.mass > 0 else None
    return law.rho, law.c_star, f0


# --------------------------------------------------------------------------
# distribution function and sampler
# --------------------------------------------------------------------------


def _tconv(f, g, h):
    """Trapezoid-rule convolution on a uniform grid starting at 0."""
    n = len(f)
    full = signal.fftconvolve(f, g)[:n]
    return h * (full - 0.5 * (f[0] * g + f * g[0]))


def _cdf_on_grid(law: SupremumLaw, L: float, n: int):
    x = np.linspace(0.0, L, n + 1)
    h = x[1] - x[0]
    rho = law.rho
    a = law.a_star
    if rho > 0:
        # pi_* is continuous at 0+; evaluate just inside the domain
        f0 = law.f0(np.concatenate([[h * 1e-9], x[1:]]))
    if a > 0:
        c = law.c_star
        E = -np.expm1(-c * x)
        if rho == 0:
            return x, E
        e = c * np.exp(-c * x)
        g = _tconv(e, f0, h)
        base = g
    else:
        if rho == 0:
            return x, np.ones_like(x)
        base = f0
    n_terms = int(np.ceil(np.log(SERIES_TOL) / np.log(rho))) + 1
    term = rho * base
    S = term.copy()
    for _ in range(n_terms):
        term = rho * _tconv(term, base, h)
        S += term
        if np.max(np.abs(term)) * L < 1e-16:
            break
    if a > 0:
        return x, (1 - rho) * (E + _tconv(E, S, h))
    return x, (1 - rho) * (1.0 + integrate.cumulative_trapezoid(S, x, initial=0.0))


def supremum_cdf(law: SupremumLaw, x_grid, n_points: int = CDF_POINTS, tol: float = 1e-5):
    """``P(X^+ <= x)`` on ``x_grid`` by the truncated convolution series.

    Two grid sizes are combined by Richardson extrapolation; their disagreement
    is reported as :class:`GridTooCoarse` when it exceeds ``tol``.
    """
    xq = np.asarray(x_grid, dtype=float)
    out = np.zeros(xq.shape)
    pos = xq >= 0
    if not pos.any():
        return out
    xmax = float(np.max(xq[pos]))
    cut = 30.0 / law.gamma if np.isfinite(law.gamma) else np.inf
    L = max(min(xmax, cut), 1e-12)
    xc, Fc = _cdf_on_grid(law, L, n_points)
    _, Ff = _cdf_on_grid(law, L, 2 * n_points)
    gap = np.max(np.abs(Ff[::2] - Fc))
    if gap > tol:
        raise GridTooCoarse(f"grid refinement changes the CDF by {gap:.1e}")
    F = (4 * Ff[::2] - Fc) / 3
    spline = CubicSpline(xc, F)
    vals = np.where(xq[pos] <= L, spline(np.minimum(xq[pos], L)), 1.0)
    # exact value at the origin: the atom 1 - rho without drift, nothing with drift
    vals = np.where(xq[pos] == 0, 1 - law.rho if law.a_star == 0 else 0.0, vals)
    out[pos] = np.clip(vals, 0.0, 1.0)
    return out


def sample_supremum(law: SupremumLaw, rng_seed, n: int):
    """``n`` exact-in-distribution draws of ``X^+`` from the geometric-compound form."""
    rng = np.random.default_rng(rng_seed)
    n = int(n)
    rho = law.rho
    nu = rng.geometric(1.0 - rho, n) - 1 if rho > 0 else np.zeros(n, dtype=np.int64)
    if law.a_star > 0:
        out = rng.gamma(nu + 1.0, 1.0 / law.c_star)
    else:
        out = np.zeros(n)
    total = int(nu.sum())
    if total:
        F, x = law._f0_inverse
        eta = np.interp(rng.random(total), F, x)
        owner = np.repeat(np.arange(n), nu)
        out += np.bincount(owner, weights=eta, minlength=n)
    return out


# --------------------------------------------------------------------------
# closed-form constructors
# --------------------------------------------------------------------------


def _roots0(model):
    rs = find_roots(model, 0.0)
    return rs, np.array([r.value.real for r in rs.roots for _ in range(r.multiplicity)])


def hyperexponential_law(model: ModelSpec) -> SupremumLaw:
    """Product-form coefficients for hyperexponential negative jumps.

    Erlang(d, b) jumps are accepted too, with the rate ``b`` repeated d times,
    as long as the roots are real and simple.
    """
    _check_hypotheses(model)
    form = model.neg_jumps.form
    if isinstance(form, NegHyperexponential):
        b = np.array(sorted(set(form.rates)))
    elif isinstance(form, NegErlang):
        b = np.full(int(form.order), float(form.rate))
    else:
        raise ModelError("hyperexponential_law needs hyperexponential or Erlang negative jumps")
    mu = abs(mean(model))
    roots, r = _roots0(model)
    if any(ro.multiplicity > 1 or ro.value.imag != 0 for ro in roots.roots):
        raise ModelError("the product form needs simple real roots")
    rk = r[1:]
    coeff = []
    for k, x in enumerate(rk):
        others = np.delete(rk, k)
        coeff.append(np.prod(1 - x / b) / np.prod(1 - x / others))
    coeff = np.array(coeff)
    tag = classify(model).tag
    if tag == CaseTag.NS:
        a_star = model.sigma**2 / (2 * mu) * (1 - coeff.sum())
        atom = 0.0
    else:
        atom = np.prod(rk / b[1:]) / (b[0] * mu)
        a_star = model.drift_a * atom
    dens = InfimumDensity(
        s=0.0,
        atom0=float(atom),
        constant=1.0 / mu,
        terms=tuple(ExpPolyTerm(complex(x), (complex(-c / mu),)) for x, c in zip(rk, coeff)),
    )
    return SupremumLaw(model, a_star, dens, roots)


def _erlang_parts(model):
    form = model.neg_jumps.form
    if not isinstance(form, NegErlang):
        raise ModelError("erlang_law needs Erlang negative jumps")
    d, b = int(form.order), float(form.rate)
    roots = find_roots(model, 0.0)
    vals = roots.values
    rest = vals[vals != 0]
    tag = classify(model).tag
    # t_k: elementary symmetric polynomials of the relevant roots
    Q = np.real(np.poly(-vals))[::-1]  # ascending, monic, includes the root at 0
    n = len(Q) - 1
    alpha = np.array([comb(d, k) * b ** (d - k) for k in range(d + 1)], dtype=float)
    if tag == CaseTag.S:
        alpha = alpha[:n] - Q[:n]
    alpha = np.concatenate([alpha, np.zeros(max(0, n - len(alpha)))])[:n]
    T = np.zeros((n, n))
    T[np.arange(n - 1), np.arange(1, n)] = -1.0
    T[n - 1] = Q[:n]
    K = float(np.real(np.prod(rest / b))) / abs(mean(model))
    if tag == CaseTag.S:
        K /= b
    return d, b, roots, tag, alpha, T, K


def erlang_law(model: ModelSpec) -> SupremumLaw:
    """Matrix form for Erlang negative jumps: ``pi_* = K (atom f + alpha int e^{T(x-z)} Pi(dz) t)``."""
    from scipy.linalg import expm

    _check_hypotheses(model)
    d, b, roots, tag, alpha, T, K = _erlang_parts(model)
    n = len(alpha)
    tvec = np.zeros(n)
    tvec[-1] = 1.0
    lam = model.pos_jumps.rate
    pdf = model.pos_jumps.density.pdf if model.pos_jumps.active else (lambda z: 0.0 * z)

    def one(x):
        def integrand(z):
            return alpha @ expm(T * (x - z)) @ tvec * pdf(np.array([z]))[0]

        val, err = integrate.quad(integrand, x, np.inf, limit=400, epsabs=1e-14, epsrel=1e-12)
        if err > 1e-9:
            raise QuadratureError(f"matrix transform quadrature error {err:.1e}")
        out = val
        if tag == CaseTag.S:
            out += pdf(np.array([x]))[0]
        return K * lam * out

    def pi_fn(x):
        x = np.atleast_1d(x)
        return np.array([one(float(v)) if v > 0 else 0.0 for v in x])

    if tag == CaseTag.NS:
        a_star = model.sigma**2 / (2 * abs(mean(model))) * float(np.real(np.prod(roots.values[roots.values != 0] / b)))
    else:
        a_star = model.drift_a * K
    dens = limit_density(model, roots)
    return SupremumLaw(model, a_star, dens, roots, pi_star_fn=pi_fn)


def erlang2_pi_star(model: ModelSpec, x):
    """``pi_*`` for Erlang(2, b) negative jumps in case NS from the three root configurations.

    Distinct real roots use Pi_tilde at both roots; a double root adds the B
    transform; a conjugate pair ``v -+ i w`` uses the cosine and sine transforms.
    """
    from .transforms import b_transform, c_transforms, pi_tilde

    form = model.neg_jumps.form
    if not (isinstance(form, NegErlang) and form.order == 2) or classify(model).tag != CaseTag.NS:
        raise ModelError("erlang2_pi_star needs Erlang(2, b) negative jumps in case NS")
    b = float(form.rate)
    mu = abs(mean(model))
    roots = find_roots(model, 0.0)
    rest = [r for r in roots.roots if r.value != 0]
    x = np.asarray(x, dtype=float)
    base = pi_tilde(model, x, 0.0).real
    if len(rest) == 1 and rest[0].multiplicity == 2:
        r2 = rest[0].value.real
        val = (
            base
            + (r2**2 - b**2) / b**2 * pi_tilde(model, x, r2).real
            + (b - r2) ** 2 * r2 / b**2 * b_transform(model, x, r2).real
        )
    elif all(abs(r.value.imag) == 0 for r in rest):
        r2, r3 = rest[0].value.real, rest[1].value.real
        val = (
            base
            - r3 * (b - r2) ** 2 / (b**2 * (r3 - r2)) * pi_tilde(model, x, r2).real
            + r2 * (b - r3) ** 2 / (b**2 * (r3 - r2)) * pi_tilde(model, x, r3).real
        )
    else:
        v, w = rest[0].value.real, abs(rest[0].value.imag)
        m2 = v * v + w * w
        C1, C2 = c_transforms(model, x, v, w)
        val = base + (m2 - b**2) / b**2 * C1 + (b**2 * v + m2 * (v - 2 * b)) / (b**2 * w) * C2
    return np.where(x > 0, val / mu, 0.0)
