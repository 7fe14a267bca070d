"""Jump-size laws.

Positive jumps use a small catalog of densities on (0, inf).  Negative jumps
use the matrix-exponential (rational-transform) class, stored canonically as
a list of poles ``b_i`` with coefficient vectors ``a_j^(i)`` so that the
density of the jump J < 0 is

    f(y) = sum_i sum_j a_j^(i) (-y)^j exp(b_i y),   y < 0.

Every law exposes its m.g.f. ``E exp(r J)`` for complex ``r`` together with
the analytic derivative, integer moments, and a sampler.  Positive laws also
expose the generalised tail transform

    T_n(x, u) = int_x^inf (x - z)^n exp(u (x - z)) f(z) dz,

which is the building block of every integral transform of the Lévy measure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import comb, factorial

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import EnvelopeError, ModelError
from .special import SQRT_PI, erfcx

__all__ = [
    "PositiveDensity",
    "Exponential",
    "Erlang",
    "Hyperexponential",
    "HalfNormal",
    "Tabulated",
    "NegativeForm",
    "PoleForm",
    "NegHyperexponential",
    "NegErlang",
]


def _exp_moments(q, m_max):
    """Return ``E_m(q) = int_0^1 t^m exp(q t) dt`` for ``m = 0..m_max``.

    Power series for ``|q| <= 4``, upward recurrence otherwise.
    """
    q = np.asarray(q, dtype=complex)
    out = np.empty((m_max + 1,) + q.shape, dtype=complex)
    small = np.abs(q) <= 4.0
    if small.any():
        qs = q[small]
        term = np.ones_like(qs)
        acc = np.zeros((m_max + 1,) + qs.shape, dtype=complex)
        for n in range(64):
            for m in range(m_max + 1):
                acc[m] += term / (n + m + 1)
            term = term * qs / (n + 1)
        out[:, small] = acc
    if (~small).any():
        qb = q[~small]
        eq = np.exp(qb)
        e = (eq - 1.0) / qb
        out[0, ~small] = e
        for m in range(1, m_max + 1):
            e = (eq - m * e) / qb
            out[m, ~small] = e
    return out


def _poly_pow(base, n):
    out = np.array([1.0 + 0j])
    for _ in range(n):
        out = P.polymul(out, base)
    return out


# --------------------------------------------------------------------------
# Positive jump densities
# --------------------------------------------------------------------------


class PositiveDensity:
    """Interface shared by the positive-jump catalog."""

    kind = "abstract"
    #: m.g.f. is finite for Re r < abscissa
    abscissa = np.inf

    def pdf(self, x):
        raise NotImplementedError

    def mgf(self, r):
        raise NotImplementedError

    def mgf_prime(self, r):
        raise NotImplementedError

    def moment(self, k: int) -> float:
        raise NotImplementedError

    def tail_transform(self, x, u, order=0):
        raise NotImplementedError

    def sample(self, rng, size):
        raise NotImplementedError

    @property
    def rational(self):
        """``(numerator, denominator)`` ascending coefficients, or None."""
        return None

    def params(self) -> dict:
        raise NotImplementedError

    def scale(self) -> float:
        """A typical jump size, used to size quadrature ranges."""
        return float(np.sqrt(self.moment(2)))


@dataclass(frozen=True)
class Exponential(PositiveDensity):
    beta: float
    kind = "exponential"

    def __post_init__(self):
        if not self.beta > 0:
            raise ModelError(f"exponential rate must be positive, got {self.beta}")

    @property
    def abscissa(self):
        return self.beta

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0, self.beta * np.exp(-self.beta * np.maximum(x, 0)), 0.0)

    def mgf(self, r):
        return self.beta / (self.beta - np.asarray(r, dtype=complex))

    def mgf_prime(self, r):
        return self.beta / (self.beta - np.asarray(r, dtype=complex)) ** 2

    def moment(self, k):
        return factorial(k) / self.beta**k

    def tail_transform(self, x, u, order=0):
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=complex)
        return (
            self.beta
            * np.exp(-self.beta * x)
            * (-1) ** order
            * factorial(order)
            / (u + self.beta) ** (order + 1)
        )

    def sample(self, rng, size):
        return rng.exponential(1.0 / self.beta, size)

    @property
    def rational(self):
        return np.array([self.beta]), np.array([self.beta, -1.0])

    def params(self):
        return {"beta": self.beta}


@dataclass(frozen=True)
class Erlang(PositiveDensity):
    n: int
    beta: float
    kind = "erlang"

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ModelError(f"Erlang order must be a positive integer, got {self.n}")
        if not self.beta > 0:
            raise ModelError(f"Erlang rate must be positive, got {self.beta}")

    @property
    def abscissa(self):
        return self.beta

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        xp = np.maximum(x, 0)
        val = self.beta**self.n * xp ** (self.n - 1) * np.exp(-self.beta * xp) / factorial(self.n - 1)
        return np.where(x >= 0, val, 0.0)

    def mgf(self, r):
        return (self.beta / (self.beta - np.asarray(r, dtype=complex))) ** self.n

    def mgf_prime(self, r):
        r = np.asarray(r, dtype=complex)
        return self.n * self.beta**self.n / (self.beta - r) ** (self.n + 1)

    def moment(self, k):
        return factorial(self.n + k - 1) / factorial(self.n - 1) / self.beta**k

    def tail_transform(self, x, u, order=0):
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=complex)
        n, b, m = self.n, self.beta, order
        total = 0.0
        for i in range(n):
            total = total + comb(n - 1, i) * x ** (n - 1 - i) * factorial(m + i) / (u + b) ** (m + i + 1)
        return (-1) ** m * b**n * np.exp(-b * x) / factorial(n - 1) * total

    def sample(self, rng, size):
        return rng.gamma(self.n, 1.0 / self.beta, size)

    @property
    def rational(self):
        return np.array([self.beta**self.n]), _poly_pow(np.array([self.beta, -1.0]), self.n).real

    def params(self):
        return {"n": self.n, "beta": self.beta}


@dataclass(frozen=True)
class Hyperexponential(PositiveDensity):
    weights: tuple
    rates: tuple
    kind = "hyperexponential"

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "rates", tuple(float(b) for b in self.rates))
        w, b = np.array(self.weights), np.array(self.rates)
        if len(w) == 0 or len(w) != len(b):
            raise ModelError("hyperexponential needs matching non-empty weights and rates")
        if np.any(w <= 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ModelError("hyperexponential weights must be positive and sum to 1")
        if np.any(b <= 0):
            raise ModelError("hyperexponential rates must be positive")

    @property
    def abscissa(self):
        return min(self.rates)

    def _parts(self):
        return [(w, Exponential(b)) for w, b in zip(self.weights, self.rates)]

    def pdf(self, x):
        return sum(w * e.pdf(x) for w, e in self._parts())

    def mgf(self, r):
        return sum(w * e.mgf(r) for w, e in self._parts())

    def mgf_prime(self, r):
        return sum(w * e.mgf_prime(r) for w, e in self._parts())

    def moment(self, k):
        return sum(w * e.moment(k) for w, e in self._parts())

    def tail_transform(self, x, u, order=0):
        return sum(w * e.tail_transform(x, u, order) for w, e in self._parts())

    def sample(self, rng, size):
        idx = rng.choice(len(self.weights), size=size, p=self.weights)
        return rng.exponential(1.0, size) / np.asarray(self.rates)[idx]

    @property
    def rational(self):
        den = np.array([1.0])
        for b in self.rates:
            den = P.polymul(den, [b, -1.0])
        num = np.array([0.0])
        for i, (w, b) in enumerate(zip(self.weights, self.rates)):
            part = np.array([w * b])
            for j, bj in enumerate(self.rates):
                if j != i:
                    part = P.polymul(part, [bj, -1.0])
            num = P.polyadd(num, part)
        return num, den

    def params(self):
        return {"weights": list(self.weights), "rates": list(self.rates)}


@dataclass(frozen=True)
class HalfNormal(PositiveDensity):
    """Density ``(2 beta / pi) exp(-x^2 beta^2 / pi)`` on x > 0 (mean 1/beta)."""

    beta: float
    kind = "half_normal"

    def __post_init__(self):
        if not self.beta > 0:
            raise ModelError(f"half-normal parameter must be positive, got {self.beta}")

    @property
    def _c(self):
        return self.beta**2 / np.pi

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0, 2 * self.beta / np.pi * np.exp(-self._c * x**2), 0.0)

    def mgf(self, r):
        # exp(z^2) (1 + erf(z)) = erfcx(-z),  z = r / (2 sqrt(c))
        z = np.asarray(r, dtype=complex) / (2 * np.sqrt(self._c))
        return erfcx(-z)

    def mgf_prime(self, r):
        sc = np.sqrt(self._c)
        z = np.asarray(r, dtype=complex) / (2 * sc)
        return (z * erfcx(-z) + 1.0 / SQRT_PI) / sc

    def moment(self, k):
        # m_{j+1} = (delta_{j0} f(0) + j m_{j-1}) / (2c)
        c, f0 = self._c, 2 * self.beta / np.pi
        m = [1.0]
        for j in range(k):
            prev = m[j - 1] if j >= 1 else 0.0
            m.append(((f0 if j == 0 else 0.0) + j * prev) / (2 * c))
        return m[k]

    def tail_transform(self, x, u, order=0):
        x = np.asarray(x, dtype=float)
        u = np.asarray(u, dtype=complex)
        c = self._c
        sc = np.sqrt(c)
        zeta = sc * x + u / (2 * sc)
        cur = np.exp(-c * x**2) * erfcx(zeta)
        if order == 0:
            return cur
        # I_{n+1} = ((u + 2cx) I_n + n I_{n-1} - [n == 0] f(x)) / (2c)
        prev = np.zeros_like(cur)
        fx = self.pdf(x)
        for n in range(order):
            nxt = ((u + 2 * c * x) * cur + n * prev - (fx if n == 0 else 0.0)) / (2 * c)
            prev, cur = cur, nxt
        return cur

    def sample(self, rng, size):
        return np.abs(rng.normal(0.0, np.sqrt(np.pi / 2) / self.beta, size))

    def params(self):
        return {"beta": self.beta}


@dataclass(frozen=True, eq=False)
class Tabulated(PositiveDensity):
    """Piecewise-linear density through ``(grid, values)``, zero outside the grid."""

    grid: tuple
    values: tuple
    kind = "tabulated"

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if g.ndim != 1 or g.shape != v.shape or len(g) < 2:
            raise ModelError("tabulated density needs matching 1-d grid and values (>= 2 points)")
        if g[0] < 0 or np.any(np.diff(g) <= 0):
            raise ModelError("tabulated grid must be increasing and start at x >= 0")
        if np.any(v < 0):
            raise ModelError("tabulated density values must be nonnegative")
        total = np.trapezoid(v, g)
        if abs(total - 1.0) > 1e-10:
            raise ModelError(f"tabulated density integrates to {total!r}, not 1 (tolerance 1e-10)")
        object.__setattr__(self, "grid", tuple(g))
        object.__setattr__(self, "values", tuple(v))

    @cached_property
    def _segments(self):
        g = np.asarray(self.grid)
        v = np.asarray(self.values)
        return g[:-1], np.diff(g), v[:-1], np.diff(v)

    def pdf(self, x):
        return np.interp(np.asarray(x, dtype=float), self.grid, self.values, left=0.0, right=0.0)

    def _integral(self, poly_in_t, r):
        """Sum over segments of L e^{r z0} int_0^1 p_seg(t) e^{r L t} dt."""
        z0, L, _, _ = self._segments
        r = np.asarray(r, dtype=complex)
        q = r[..., None] * L
        E = _exp_moments(q, poly_in_t.shape[0] - 1)
        inner = np.einsum("m...k,mk->...k", E, poly_in_t)
        return np.sum(L * np.exp(r[..., None] * z0) * inner, axis=-1)

    def mgf(self, r):
        _, _, f0, df = self._segments
        return self._integral(np.array([f0, df]), r)

    def mgf_prime(self, r):
        z0, L, f0, df = self._segments
        return self._integral(np.array([z0 * f0, z0 * df + L * f0, L * df]), r)

    def moment(self, k):
        z0, L, f0, df = self._segments
        # (z0 + L t)^k (f0 + df t) expanded in t
        poly = np.zeros((k + 2, len(L)))
        for i in range(k + 1):
            base = comb(k, i) * z0 ** (k - i) * L**i
            poly[i] += base * f0
            poly[i + 1] += base * df
        return float(self._integral(poly, 0.0).real)

    def tail_transform(self, x, u, order=0):
        x_arr, u_arr = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(u, dtype=complex))
        out = np.zeros(x_arr.shape, dtype=complex)
        g = np.asarray(self.grid)
        for idx in np.ndindex(x_arr.shape):
            out[idx] = self._tail_one(x_arr[idx], u_arr[idx], order, g)
        return out

    def _tail_one(self, x, u, n, g):
        z0, L, f0, df = self._segments
        z1 = z0 + L
        keep = z1 > x
        if not keep.any():
            return 0.0
        za = np.maximum(z0[keep], x)
        fa = self.pdf(za)
        Ls = z1[keep] - za
        dfs = np.asarray(self.values)[1:][keep] - fa
        d = x - za
        # (d - L t)^n (fa + df t) in powers of t
        poly = np.zeros((n + 2, len(Ls)), dtype=float)
        for i in range(n + 1):
            base = comb(n, i) * d ** (n - i) * (-Ls) ** i
            poly[i] += base * fa
            poly[i + 1] += base * dfs
        E = _exp_moments(-u * Ls, n + 1)
        inner = np.einsum("mk,mk->k", E, poly)
        return np.sum(Ls * np.exp(u * d) * inner)

    def sample(self, rng, size):
        z0, L, f0, df = self._segments
        seg_mass = L * (f0 + 0.5 * df)
        cdf = np.concatenate([[0.0], np.cumsum(seg_mass)])
        cdf /= cdf[-1]
        u = rng.random(size)
        i = np.clip(np.searchsorted(cdf, u, side="right") - 1, 0, len(L) - 1)
        delta = (u - cdf[i]) * np.sum(seg_mass)
        a0, d0, Li = f0[i], df[i], L[i]
        disc = np.sqrt(np.maximum((Li * a0) ** 2 + 2 * Li * d0 * delta, 0.0))
        denom = Li * a0 + disc
        t = np.where(denom > 0, 2 * delta / np.where(denom > 0, denom, 1.0), 0.0)
        return z0[i] + Li * np.clip(t, 0.0, 1.0)

    def scale(self):
        return float(np.sqrt(self.moment(2)))

    def params(self):
        return {"grid": list(self.grid), "values": list(self.values)}


# --------------------------------------------------------------------------
# Negative jump laws (matrix-exponential class)
# --------------------------------------------------------------------------


class NegativeForm:
    """Shared behaviour; subclasses provide :meth:`pole_form`."""

    kind = "abstract"

    def pole_form(self) -> "PoleForm":
        raise NotImplementedError

    # the heavy lifting lives on PoleForm
    def pdf(self, y):
        return self.pole_form().pdf(y)

    def mgf(self, r):
        return self.pole_form().mgf(r)

    def mgf_prime(self, r):
        return self.pole_form().mgf_prime(r)

    def abs_moment(self, k):
        return self.pole_form().abs_moment(k)

    def sample(self, rng, size):
        return self.pole_form().sample(rng, size)

    @property
    def b1(self) -> float:
        return self.pole_form().b1


def _canonical_poles(poles):
    out = []
    for b, coeffs in poles:
        b = complex(b)
        coeffs = tuple(complex(a) for a in coeffs)
        if len(coeffs) == 0:
            raise ModelError("every pole needs at least one coefficient")
        out.append((b, coeffs))
    # b1 first (real, smallest real part), then by real part, then imaginary part
    out.sort(key=lambda p: (p[0].real, abs(p[0].imag) > 0, p[0].imag))
    return tuple(out)


@dataclass(frozen=True)
class PoleForm(NegativeForm):
    """General matrix-exponential negative jumps.

    ``poles`` is a sequence of ``(b_i, (a_0, ..., a_k))`` with the density
    ``sum a_j (-y)^j exp(b_i y)`` on y < 0.  Coefficient vectors are trimmed
    so the top coefficient is nonzero; its length minus one is ``k_i``.
    """

    poles: tuple
    kind = "pole_form"

    def __post_init__(self):
        trimmed = []
        for b, coeffs in self.poles:
            coeffs = list(coeffs)
            while len(coeffs) > 1 and coeffs[-1] == 0:
                coeffs.pop()
            trimmed.append((b, coeffs))
        object.__setattr__(self, "poles", _canonical_poles(trimmed))
        self._validate()

    def pole_form(self):
        return self

    @property
    def orders(self):
        """``k_i`` for each pole (pole order minus one)."""
        return tuple(len(c) - 1 for _, c in self.poles)

    @property
    def total_order(self) -> int:
        return sum(k + 1 for k in self.orders)

    @property
    def b1(self) -> float:
        return self.poles[0][0].real

    def _validate(self):
        if not self.poles:
            raise ModelError("pole form needs at least one pole")
        for b, coeffs in self.poles:
            if not b.real > 0:
                raise ModelError(f"pole {b} must have positive real part")
            if all(a == 0 for a in coeffs):
                raise ModelError(f"pole {b} has all-zero coefficients")
        b1 = self.poles[0][0]
        if abs(b1.imag) > 0:
            raise ModelError("the pole with the smallest real part must be real")
        for b, coeffs in self.poles:
            if b.imag != 0:
                match = [
                    c2
                    for b2, c2 in self.poles
                    if abs(b2 - b.conjugate()) <= 1e-12 * abs(b)
                ]
                if not match or len(match[0]) != len(coeffs) or not np.allclose(
                    np.conj(coeffs), match[0], rtol=1e-12, atol=1e-14
                ):
                    raise ModelError(f"complex pole {b} lacks a conjugate partner with conjugate coefficients")
            elif any(abs(a.imag) > 1e-14 * max(1.0, abs(a)) for a in coeffs):
                raise ModelError(f"real pole {b} must have real coefficients")
        total = self.mgf(0.0)
        if abs(total - 1.0) > 1e-10:
            raise ModelError(f"negative-jump density integrates to {total.real!r}, not 1")
        y = -np.linspace(0.0, 60.0 / self.b1, 4001)
        f = self.pdf(y)
        if np.min(f) < -1e-10 * max(1.0, np.max(np.abs(f))):
            raise ModelError("matrix-exponential parameters do not give a nonnegative density")

    def pdf(self, y):
        y = np.asarray(y, dtype=float)
        ym = np.minimum(y, 0.0)
        out = np.zeros(y.shape, dtype=complex)
        for b, coeffs in self.poles:
            poly = sum(a * (-ym) ** j for j, a in enumerate(coeffs))
            out = out + poly * np.exp(b * ym)
        return np.where(y <= 0, out.real, 0.0)

    def mgf(self, r):
        r = np.asarray(r, dtype=complex)
        out = np.zeros(r.shape, dtype=complex)
        for b, coeffs in self.poles:
            for j, a in enumerate(coeffs):
                out = out + a * factorial(j) / (b + r) ** (j + 1)
        return out

    def mgf_prime(self, r):
        r = np.asarray(r, dtype=complex)
        out = np.zeros(r.shape, dtype=complex)
        for b, coeffs in self.poles:
            for j, a in enumerate(coeffs):
                out = out - a * factorial(j + 1) / (b + r) ** (j + 2)
        return out

    def abs_moment(self, k):
        val = sum(
            a * factorial(j + k) / b ** (j + k + 1)
            for b, coeffs in self.poles
            for j, a in enumerate(coeffs)
        )
        return float(np.real(val))

    def denominator(self):
        """Ascending coefficients of ``prod (r + b_i)^(k_i + 1)`` (monic)."""
        out = np.array([1.0 + 0j])
        for b, coeffs in self.poles:
            out = P.polymul(out, _poly_pow(np.array([b, 1.0]), len(coeffs)))
        return out

    def numerator(self):
        """Ascending coefficients of ``mgf(r) * denominator(r)``."""
        num = np.array([0j])
        for i, (b, coeffs) in enumerate(self.poles):
            k = len(coeffs) - 1
            rest = np.array([1.0 + 0j])
            for i2, (b2, c2) in enumerate(self.poles):
                if i2 != i:
                    rest = P.polymul(rest, _poly_pow(np.array([b2, 1.0]), len(c2)))
            for j, a in enumerate(coeffs):
                part = a * factorial(j) * P.polymul(_poly_pow(np.array([b, 1.0]), k - j), rest)
                num = P.polyadd(num, part)
        return num

    @cached_property
    def _envelope(self):
        b1 = self.b1
        lead_orders = [len(c) - 1 for b, c in self.poles if abs(b.real - b1) <= 1e-12 * b1]
        theta = b1 if max(lead_orders) == 0 else 0.5 * b1
        y = -np.linspace(0.0, 80.0 / theta, 40001)
        ratio = self.pdf(y) / (theta * np.exp(theta * y))
        C = 1.05 * float(np.max(ratio))
        if not np.isfinite(C) or C <= 0 or 1.0 / C < 1e-3:
            raise EnvelopeError(f"rejection envelope acceptance {1.0 / C:.2e} below 1e-3")
        return theta, C

    def sample(self, rng, size):
        theta, C = self._envelope
        size = int(size)
        out = np.empty(size)
        filled = 0
        while filled < size:
            need = size - filled
            batch = int(need * C * 1.1) + 16
            y = -rng.exponential(1.0 / theta, batch)
            accept = rng.random(batch) * C * theta * np.exp(theta * y) <= self.pdf(y)
            got = y[accept][:need]
            out[filled : filled + len(got)] = got
            filled += len(got)
        return out

    def params(self):
        return {
            "poles": [
                {
                    "re": b.real,
                    "im": b.imag,
                    "coeffs": [[a.real, a.imag] if a.imag else a.real for a in coeffs],
                }
                for b, coeffs in self.poles
            ]
        }


@dataclass(frozen=True)
class NegHyperexponential(NegativeForm):
    """Mixture of exponentials: |J| has density ``sum p_i b_i exp(-b_i x)``."""

    weights: tuple
    rates: tuple
    kind = "hyperexponential"

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        object.__setattr__(self, "rates", tuple(float(b) for b in self.rates))
        w, b = np.array(self.weights), np.array(self.rates)
        if len(w) == 0 or len(w) != len(b):
            raise ModelError("hyperexponential needs matching non-empty weights and rates")
        if np.any(w <= 0) or abs(w.sum() - 1.0) > 1e-12:
            raise ModelError("hyperexponential weights must be positive and sum to 1")
        if np.any(b <= 0):
            raise ModelError("hyperexponential rates must be positive")

    @cached_property
    def _pole_form(self):
        merged = {}
        for w, b in zip(self.weights, self.rates):
            merged[b] = merged.get(b, 0.0) + w * b
        return PoleForm(tuple((b, (a,)) for b, a in merged.items()))

    def pole_form(self):
        return self._pole_form

    def sample(self, rng, size):
        idx = rng.choice(len(self.weights), size=size, p=self.weights)
        return -rng.exponential(1.0, size) / np.asarray(self.rates)[idx]

    def params(self):
        return {"weights": list(self.weights), "rates": list(self.rates)}


@dataclass(frozen=True)
class NegErlang(NegativeForm):
    """|J| ~ Erlang(order, rate)."""

    order: int
    rate: float
    kind = "erlang"

    def __post_init__(self):
        if int(self.order) != self.order or self.order < 1:
            raise ModelError(f"Erlang order must be a positive integer, got {self.order}")
        if not self.rate > 0:
            raise ModelError(f"Erlang rate must be positive, got {self.rate}")

    @cached_property
    def _pole_form(self):
        d, b = int(self.order), float(self.rate)
        coeffs = [0.0] * (d - 1) + [b**d / factorial(d - 1)]
        return PoleForm(((b, tuple(coeffs)),))

    def pole_form(self):
        return self._pole_form

    def sample(self, rng, size):
        return -rng.gamma(self.order, 1.0 / self.rate, size)

    def params(self):
        return {"order": self.order, "rate": self.rate}


POSITIVE_KINDS = {
    "exponential": Exponential,
    "erlang": Erlang,
    "hyperexponential": Hyperexponential,
    "half_normal": HalfNormal,
    "tabulated": Tabulated,
}
