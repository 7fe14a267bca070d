"""Integral transforms of the positive part of the Lévy measure.

All of them are special cases of

    T_n(x, u) = int_x^inf (x - z)^n exp(u (x - z)) Pi(dz),    x > 0,

with ``Pi(dz) = lam_plus f_plus(z) dz`` on z > 0:

* ``pi_tilde(x, u) = T_0(x, u)``
* ``b_transform(x, u) = T_1(x, u)``
* ``c_transforms(x, v, w) = (Re T_0(x, v + iw), Im T_0(x, v + iw))``, i.e. the
  cosine and sine integrals ``int e^{v(x-z)} cos/sin(w(x-z)) Pi(dz)``.

Catalog densities provide closed forms; :func:`tail_transform_quad` is an
independent adaptive-quadrature path used for cross-checks.
"""
from __future__ import annotations

from math import factorial

import numpy as np
from scipy import integrate

from .errors import DomainError, QuadratureError
from .model import ModelSpec

__all__ = [
    "tail_transform",
    "tail_transform_quad",
    "pi_tilde",
    "b_transform",
    "c_transforms",
    "poly_exp_tail",
]


def _check(x, u):
    x = np.asarray(x, dtype=float)
    u = np.asarray(u, dtype=complex)
    if np.any(x < 0):
        raise DomainError("transforms need x >= 0")
    if np.any(u.real < 0):
        raise DomainError("transforms need Re u >= 0")
    return x, u


def tail_transform(model: ModelSpec, x, u, order: int = 0):
    """``T_n(x, u)`` for the positive jumps of ``model`` (array-friendly)."""
    x, u = _check(x, u)
    if not model.pos_jumps.active:
        return np.zeros(np.broadcast(x, u).shape, dtype=complex)
    return model.pos_jumps.rate * np.asarray(model.pos_jumps.density.tail_transform(x, u, order), dtype=complex)


def tail_transform_quad(model: ModelSpec, x: float, u: complex, order: int = 0) -> complex:
    """``T_n(x, u)`` by adaptive quadrature on the substitution z = x + t."""
    x, u = float(x), complex(u)
    _check(x, u)
    if not model.pos_jumps.active:
        return 0j
    dens, lam = model.pos_jumps.density, model.pos_jumps.rate

    def part(fn):
        val, err = 0.0, 0.0
        # finite pieces first so a compact support or a narrow peak is resolved
        edges = [0.0]
        grid = getattr(dens, "grid", None)
        if grid is not None:
            edges += sorted({g - x for g in grid if g > x})
        else:
            scale = dens.scale()
            edges += [scale * k for k in (1.0, 4.0, 16.0)]
        for lo, hi in zip(edges[:-1], edges[1:]):
            v, e = integrate.quad(fn, lo, hi, limit=200, epsabs=1e-14, epsrel=1e-12)
            val, err = val + v, err + e
        if grid is None:
            v, e = integrate.quad(fn, edges[-1], np.inf, limit=200, epsabs=1e-14, epsrel=1e-12)
            val, err = val + v, err + e
        if not np.isfinite(val) or err > 1e-8 * max(1.0, abs(val)):
            raise QuadratureError(f"tail transform quadrature error estimate {err:.2e}")
        return val

    def kernel(t):
        return (-t) ** order * np.exp(-u * t) * dens.pdf(x + t)

    re = part(lambda t: float(np.real(kernel(t))))
    im = part(lambda t: float(np.imag(kernel(t)))) if u.imag != 0 else 0.0
    return lam * complex(re, im)


def pi_tilde(model: ModelSpec, x, u=0.0):
    """``int_x^inf exp(u (x - z)) Pi(dz)``; at u = 0 the plain tail of the measure."""
    return tail_transform(model, x, u, 0)


def b_transform(model: ModelSpec, x, u=0.0):
    """``int_x^inf (x - z) exp(u (x - z)) Pi(dz)``, equal to the u-derivative of :func:`pi_tilde`."""
    return tail_transform(model, x, u, 1)


def c_transforms(model: ModelSpec, x, v, w):
    """Cosine and sine transforms ``(C1, C2)``.

    ``C1 = int_x^inf e^{v(x-z)} cos(w(x-z)) Pi(dz)`` and
    ``C2 = int_x^inf e^{v(x-z)} sin(w(x-z)) Pi(dz)``, so that
    ``pi_tilde(x, v + i w) = C1 + i C2``.
    """
    w = np.asarray(w, dtype=float)
    if np.any(w == 0):
        raise DomainError("C transforms need w != 0")
    val = tail_transform(model, x, np.asarray(v, dtype=float) + 1j * w, 0)
    return val.real, val.imag


def poly_exp_tail(model: ModelSpec, x, u, power: int):
    """``int_x^inf (x - z)^n / n! * exp(u (x - z)) Pi(dz)`` for n = ``power``."""
    return tail_transform(model, x, u, power) / factorial(power)
