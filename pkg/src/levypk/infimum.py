"""Law of the infimum of the process killed at an exponential time.

With ``P(r) = prod (r + b_i)^(k_i + 1)`` and ``Q(r) = prod (r + r_i(s))`` the
m.g.f. of the killed infimum is the rational function

    phi_s(r) = K P(r) / Q(r),     K = prod r_i(s) / prod b_i^(k_i + 1).

In case S the degrees of ``P`` and ``Q`` agree, which produces an atom ``K`` at
0.  The density on y < 0 is an exponential polynomial obtained from partial
fractions (the residue path) or as ``K alpha exp(T y) t`` with a companion
matrix ``T`` (the matrix path).  The ``s -> 0`` limit divides by ``s`` and
uses ``r_1(s)/s -> 1/|mu|``, so the root at 0 becomes a constant term.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.linalg import expm

from .errors import IllConditioned, MeanNotNegative, PoleHit
from .model import CaseTag, ModelSpec, classify, mean
from .roots import RootSet, find_roots

__all__ = [
    "ExpPolyTerm",
    "InfimumDensity",
    "MatrixExpForm",
    "infimum_mgf",
    "infimum_density_residue",
    "infimum_density_matrix",
    "limit_density",
    "a_star_killed",
    "prefactor",
]


@dataclass(frozen=True)
class ExpPolyTerm:
    """``sum_j coeffs[j-1] * y^(j-1)/(j-1)! * exp(rate * y)`` on y < 0."""

    rate: complex
    coeffs: tuple

    @property
    def multiplicity(self) -> int:
        return len(self.coeffs)

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        poly = sum(c * y**j / factorial(j) for j, c in enumerate(self.coeffs))
        with np.errstate(under="ignore", over="ignore"):
            return poly * np.exp(self.rate * y)

    def laplace(self, r):
        """``int_{-inf}^0 exp(r y) term(y) dy``."""
        r = np.asarray(r, dtype=complex)
        return sum(c * (-1) ** j / (r + self.rate) ** (j + 1) for j, c in enumerate(self.coeffs))


@dataclass(frozen=True)
class InfimumDensity:
    """Density (with atom) of the killed infimum, or of the s = 0 limit object."""

    s: float
    atom0: float
    terms: tuple
    constant: float = 0.0

    def __call__(self, y):
        """Density at ``y < 0`` (zero for y >= 0; the atom is not included)."""
        y = np.asarray(y, dtype=float)
        out = np.full(y.shape, self.constant, dtype=complex)
        for term in self.terms:
            out = out + term(y)
        return np.where(y < 0, out.real, 0.0)

    evaluate = __call__

    @property
    def at_zero(self) -> float:
        """Density at 0-."""
        return float(np.real(self.constant + sum(t.coeffs[0] for t in self.terms)))

    @property
    def mass(self) -> float:
        """``atom0 + int density``; infinite for the limit object."""
        if self.constant != 0:
            return np.inf
        return float(np.real(self.atom0 + sum(t.laplace(0.0) for t in self.terms)))

    def mgf(self, r):
        """``atom0 + int exp(r y) density(y) dy`` (s > 0 only)."""
        if self.constant != 0:
            raise ValueError("the limit object has no finite m.g.f.")
        r = np.asarray(r, dtype=complex)
        return self.atom0 + sum((t.laplace(r) for t in self.terms), np.zeros(r.shape, dtype=complex))

    def fused(self):
        """Real form: real-rate terms as is, conjugate pairs as cosine/sine coefficients.

        Each pair ``v -+ i w`` (w > 0) contributes
        ``sum_j y^(j-1)/(j-1)! e^{v y} (cos_j cos(w y) + sin_j sin(w y))``, with
        amplitude ``2 |c_j|`` and phase ``arg c_j`` for the member ``v + i w``.
        """
        out = []
        for t in self.terms:
            if t.rate.imag == 0:
                out.append({"rate": float(t.rate.real), "coeffs": [float(np.real(c)) for c in t.coeffs]})
            elif t.rate.imag > 0:
                c = np.asarray(t.coeffs)
                out.append(
                    {
                        "v": float(t.rate.real),
                        "w": float(t.rate.imag),
                        "cos": [float(q) for q in 2 * c.real],
                        "sin": [float(q) for q in -2 * c.imag],
                        "amplitude": [float(q) for q in 2 * np.abs(c)],
                        "phase": [float(q) for q in np.angle(c)],
                    }
                )
        return out


# --------------------------------------------------------------------------
# rational pieces
# --------------------------------------------------------------------------


def _distinct(roots: RootSet, drop_zero=False):
    return [(r.value, r.multiplicity) for r in roots.roots if not (drop_zero and r.value == 0)]


def prefactor(model: ModelSpec, roots: RootSet) -> float:
    """``K``: ``prod r_i / prod b_i^(k_i+1)``, and for s = 0 the limit ``prod_{i>=2} r_i / (|mu| prod b^(k+1))``."""
    vals = roots.values
    nz = vals[vals != 0]
    K = np.prod(nz) / model.neg_denominator[0]
    if roots.s == 0:
        mu = mean(model)
        if not mu < 0:
            raise MeanNotNegative(f"need E X_1 < 0, got {mu}")
        K = K / abs(mu)
    return float(np.real(K))


def _q_poly(roots: RootSet):
    q = np.array([1.0 + 0j])
    for r, n in _distinct(roots):
        for _ in range(n):
            q = P.polymul(q, [r, 1.0])
    return q


def _numerator(model: ModelSpec, roots: RootSet):
    """Numerator of the strictly proper part (``P`` in case NS, ``P - Q`` in case S)."""
    Pm = model.neg_denominator
    Q = _q_poly(roots)
    if len(Pm) == len(Q):
        num = P.polysub(Pm, Q)
        num = num[: len(Q) - 1] if len(num) >= len(Q) else num
        return num, True
    return Pm, False


def _shift(p, a):
    """Coefficients of ``p(t + a)`` in powers of t."""
    p = np.asarray(p, dtype=complex)
    n = len(p)
    out = np.zeros(n, dtype=complex)
    for i in range(n):
        for m in range(i + 1):
            out[m] += p[i] * comb(i, m) * a ** (i - m)
    return out


def _series_div(a, b, order):
    a = np.concatenate([a, np.zeros(max(0, order - len(a)), dtype=complex)])[:order]
    b = np.concatenate([b, np.zeros(max(0, order - len(b)), dtype=complex)])[:order]
    q = np.zeros(order, dtype=complex)
    for m in range(order):
        q[m] = (a[m] - np.dot(b[1 : m + 1], q[:m][::-1])) / b[0]
    return q


def _partial_fractions(num, distinct):
    """``num / prod (r + r_k)^n_k = sum_k sum_j c[k][j-1] / (r + r_k)^j``.

    Exact coefficient arithmetic: Taylor shift to ``t = r + r_k`` and series
    division by the remaining factors.
    """
    out = []
    for k, (rk, nk) in enumerate(distinct):
        rest = np.array([1.0 + 0j])
        for i, (ri, ni) in enumerate(distinct):
            if i != k:
                for _ in range(ni):
                    rest = P.polymul(rest, [ri, 1.0])
        a = _shift(num, -rk)
        b = _shift(rest, -rk)
        q = _series_div(a, b, nk)
        # c_j multiplies t^-j, i.e. the t^(nk - j) Taylor coefficient
        out.append([q[nk - j] for j in range(1, nk + 1)])
    return out


# --------------------------------------------------------------------------
# public operations
# --------------------------------------------------------------------------


def infimum_mgf(model: ModelSpec, roots: RootSet, r):
    """``E exp(r X^-_{theta_s})`` as the rational function of the roots (s > 0)."""
    if roots.s <= 0:
        raise ValueError("infimum_mgf needs s > 0")
    r = np.asarray(r, dtype=complex)
    vals = roots.values
    if vals.size and np.any(np.abs(r[..., None] + vals) <= 1e-12 * np.maximum(1.0, np.abs(vals))):
        raise PoleHit("r coincides with a root -r_i(s)")
    K = prefactor(model, roots)
    num = P.polyval(r, model.neg_denominator)
    den = np.prod(r[..., None] + vals, axis=-1) if vals.size else np.ones(r.shape)
    return K * num / den


def infimum_density_residue(model: ModelSpec, roots: RootSet) -> InfimumDensity:
    """Density of the killed infimum (s > 0) or the s = 0 limit, by partial fractions."""
    K = prefactor(model, roots)
    num, has_atom = _numerator(model, roots)
    distinct = _distinct(roots)
    pf = _partial_fractions(num, distinct) if distinct else []
    terms, constant = [], 0.0
    for (rk, nk), cs in zip(distinct, pf):
        coeffs = tuple(complex(K * (-1) ** j * c) for j, c in enumerate(cs))
        if rk == 0:
            constant = float(np.real(coeffs[0]))
        else:
            terms.append(ExpPolyTerm(complex(rk), coeffs))
    return InfimumDensity(s=roots.s, atom0=K if has_atom else 0.0, terms=tuple(terms), constant=constant)


def limit_density(model: ModelSpec, roots: RootSet | None = None) -> InfimumDensity:
    """``p'_-(0, y)``: the s -> 0 limit of the killed density divided by s."""
    mu = mean(model)
    if not mu < 0:
        raise MeanNotNegative(f"need E X_1 < 0, got {mu}")
    if roots is None:
        roots = find_roots(model, 0.0)
    if roots.s != 0:
        raise ValueError("limit_density needs the s = 0 root set")
    return infimum_density_residue(model, roots)


@dataclass(frozen=True)
class MatrixExpForm:
    """``density(y) = prefactor * alpha exp(T y) t`` on y < 0, plus ``atom0`` at 0."""

    alpha: np.ndarray
    T: np.ndarray
    t_vec: np.ndarray
    prefactor: float
    atom0: float
    s: float
    max_amplification: float = 1e6

    def __call__(self, y):
        y = np.atleast_1d(np.asarray(y, dtype=float))
        out = np.zeros(y.shape)
        neg = y < 0
        if neg.any() and len(self.alpha):
            E = expm(self.T[None, :, :] * y[neg][:, None, None])
            vals = np.einsum("i,nij,j->n", self.alpha, E, self.t_vec)
            f = self.prefactor * vals.real
            scale = np.abs(self.prefactor) * np.linalg.norm(self.alpha) * np.linalg.norm(E, ord=2, axis=(1, 2))
            fmax = np.max(np.abs(f)) if f.size else 0.0
            if fmax > 0 and np.max(scale) / fmax > self.max_amplification:
                raise IllConditioned(
                    f"matrix exponential amplifies rounding by {np.max(scale) / fmax:.1e} (> 1e6)"
                )
            out[neg] = f
        return out

    evaluate = __call__

    def mgf(self, r):
        """``atom0 + prefactor * alpha (r I + T)^-1 t``."""
        r = np.atleast_1d(np.asarray(r, dtype=complex))
        n = len(self.alpha)
        A = r[:, None, None] * np.eye(n)[None] + self.T[None]
        sol = np.linalg.solve(A, np.broadcast_to(self.t_vec.astype(complex), (len(r), n))[..., None])[..., 0]
        return self.atom0 + self.prefactor * (sol @ self.alpha)


def infimum_density_matrix(model: ModelSpec, roots: RootSet) -> MatrixExpForm:
    """Companion-matrix representation of the same density."""
    K = prefactor(model, roots)
    num, has_atom = _numerator(model, roots)
    Q = _q_poly(roots)
    n = len(Q) - 1
    alpha = np.zeros(n, dtype=complex)
    alpha[: min(n, len(num))] = num[:n]
    T = np.zeros((n, n), dtype=complex)
    if n:
        T[np.arange(n - 1), np.arange(1, n)] = -1.0
        T[n - 1, :] = Q[:n]
    # real model data gives real coefficients up to rounding
    if np.max(np.abs(alpha.imag), initial=0) <= 1e-12 * max(1.0, np.max(np.abs(alpha), initial=0)):
        alpha = alpha.real
    if np.max(np.abs(T.imag), initial=0) <= 1e-12 * max(1.0, np.max(np.abs(T), initial=0)):
        T = T.real
    t_vec = np.zeros(n)
    if n:
        t_vec[-1] = 1.0
    return MatrixExpForm(alpha=alpha, T=T, t_vec=t_vec, prefactor=K, atom0=K if has_atom else 0.0, s=roots.s)


def a_star_killed(model: ModelSpec, roots: RootSet, density: InfimumDensity | None = None) -> float:
    """``A_*(s)`` for s > 0, and its limit ``a_*`` for s = 0."""
    if density is None:
        density = infimum_density_residue(model, roots)
    s = roots.s
    if model.sigma > 0:
        val = 0.5 * model.sigma**2 * density.at_zero
    else:
        val = density.atom0 * max(0.0, model.drift_a)
    return val / s if s > 0 else val
