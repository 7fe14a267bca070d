"""Roots of the cumulant equation ``k(r) = s`` in the left half-plane.

Roots are returned as the positives ``r_k(s)`` (the actual roots are
``-r_k(s)``), ordered so that ``r_1(s)`` is the real root in ``[0, b_1]`` and
the rest follow by real part, then imaginary part.

Two search paths:

* rational cumulants (no positive jumps, or exponential / Erlang /
  hyperexponential ones): denominators are cleared and the polynomial roots
  come from the companion-matrix eigenvalues (``numpy.roots``);
* otherwise the rectangle ``[-R, 0] x [-W, W]`` is bisected using
  argument-principle counts and each isolated root is polished by Newton.

Either way the total is checked against an independent winding-number count
of ``(k(r) - s) * prod (r + b_i)^(k_i + 1)`` on the rectangle boundary.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import ConvergenceError, MeanNotNegative, PrecisionError, RootCountMismatch
from .model import CaseTag, ModelSpec, classify, cumulant, cumulant_prime, mean, variance

__all__ = [
    "Root",
    "RootSet",
    "find_roots",
    "root_slope_at_zero",
    "root_slope_numeric",
    "count_roots",
    "winding_number",
]

MERGE_TOL = 1e-7
LOCAL_RADIUS = 1e-5


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int = 1


@dataclass(frozen=True)
class RootSet:
    s: float
    roots: tuple
    case: CaseTag

    @property
    def N(self) -> int:
        return sum(r.multiplicity for r in self.roots)

    @property
    def l(self) -> int:
        return len(self.roots)

    @property
    def r1(self) -> float:
        if not self.roots:
            raise ValueError("no roots: the process cannot move down")
        return self.roots[0].value.real

    @property
    def values(self) -> np.ndarray:
        """All ``r_k`` repeated by multiplicity."""
        return np.array([r.value for r in self.roots for _ in range(r.multiplicity)], dtype=complex)

    def to_records(self):
        return [
            {"re": float(r.value.real), "im": float(r.value.imag), "multiplicity": r.multiplicity}
            for r in self.roots
        ]


# --------------------------------------------------------------------------
# argument principle
# --------------------------------------------------------------------------


def _polygon(vertices):
    v = np.asarray(list(vertices) + [vertices[0]], dtype=complex)
    seg = np.abs(np.diff(v))
    cum = np.concatenate([[0.0], np.cumsum(seg)]) / seg.sum()

    def path(t):
        t = np.asarray(t, dtype=float)
        i = np.clip(np.searchsorted(cum, t, side="right") - 1, 0, len(seg) - 1)
        frac = (t - cum[i]) / (cum[i + 1] - cum[i])
        return v[i] + frac * (v[i + 1] - v[i])

    return path, cum


def winding_number(func, path, breakpoints=(0.0, 1.0), n_init=128, max_points=400_000):
    """Winding number of ``func`` around 0 along the closed ``path(t)``, t in [0, 1].

    The sampling is refined until consecutive values differ by less than pi/4
    in argument and a factor e^0.7 in modulus.
    """
    bp = np.asarray(breakpoints, dtype=float)
    t = np.unique(np.concatenate([np.linspace(a, b, n_init + 1) for a, b in zip(bp[:-1], bp[1:])]))
    vals = func(path(t))
    while True:
        if not np.all(np.isfinite(vals)) or np.any(vals == 0):
            raise PrecisionError("function vanishes or is not finite on the contour")
        ratio = vals[1:] / vals[:-1]
        dphi = np.angle(ratio)
        bad = (np.abs(dphi) > np.pi / 4) | (np.abs(np.log(np.abs(ratio))) > 0.7)
        if not bad.any():
            w = dphi.sum() / (2 * np.pi)
            n = int(round(w))
            if abs(w - n) > 1e-3:
                raise PrecisionError(f"winding number {w} not close to an integer")
            return n
        idx = np.nonzero(bad)[0]
        if len(t) + len(idx) > max_points:
            raise PrecisionError("contour sampling did not converge (zero too close to the contour?)")
        tm = 0.5 * (t[idx] + t[idx + 1])
        if np.any(tm <= t[idx]) or np.any(tm >= t[idx + 1]):
            raise PrecisionError("contour sampling hit floating-point resolution")
        vm = func(path(tm))
        t = np.insert(t, idx + 1, tm)
        vals = np.insert(vals, idx + 1, vm)


def _rect_count(h, x0, x1, y0, y1):
    verts = [complex(x0, y0), complex(x1, y0), complex(x1, y1), complex(x0, y1)]
    path, cum = _polygon(verts)
    return winding_number(h, path, cum)


def _circle_count(h, centre, radius):
    def path(t):
        return centre + radius * np.exp(2j * np.pi * np.asarray(t))

    return winding_number(h, path, n_init=64)


# --------------------------------------------------------------------------
# the equation
# --------------------------------------------------------------------------


def _make_h(model: ModelSpec, s: float):
    """Analytic function whose zeros are the roots (the zero at r = 0 removed when s = 0)."""
    Pm = model.neg_denominator
    mu, var = mean(model), variance(model)

    def g(z):
        z = np.asarray(z, dtype=complex)
        k = cumulant(model, z, continued=True)
        if s > 0:
            return k - s
        small = np.abs(z) < 1e-7
        zs = np.where(small, 1.0, z)
        return np.where(small, mu + 0.5 * var * z, k / zs)

    def h(z):
        return g(z) * P.polyval(np.asarray(z, dtype=complex), Pm)

    return h


def _contour_size(model: ModelSpec, s: float):
    bmax = max((abs(b) for b, _ in model.poles), default=0.0)
    R = bmax + 10.0 * (
        1.0 + abs(model.drift_a) + model.sigma**2 + model.pos_jumps.rate + model.neg_jumps.rate + s
    )
    return R, 10.0 * R


def count_roots(model: ModelSpec, s: float, R=None, W=None) -> int:
    """Zeros of ``k(r) - s`` in ``[-R, 0] x [-W, W]`` (excluding r = 0 when s = 0)."""
    if R is None or W is None:
        R, W = _contour_size(model, s)
    return _rect_count(_make_h(model, s), -R, 0.0, -W, W)


def _newton(model, s, z, maxiter=80):
    # a wandering iterate may overflow the m.g.f.; that start is reported as failed
    with np.errstate(over="ignore", invalid="ignore"):
        return _newton_raw(model, s, complex(z), maxiter)


def _newton_raw(model, s, z, maxiter):
    for _ in range(maxiter):
        f = complex(cumulant(model, z, continued=True)) - s
        d = complex(cumulant_prime(model, z))
        if d == 0 or not np.isfinite(d):
            break
        step = f / d
        z -= step
        if not np.isfinite(z):
            break
        if abs(step) <= 4e-16 * max(1.0, abs(z)):
            return z, True
    f = complex(cumulant(model, z, continued=True)) - s if np.isfinite(z) else np.inf
    return z, abs(f) <= 1e-11 * max(1.0, abs(s))


def _refine_double(model, z, maxiter=40):
    """Newton on k'(r) = 0 for a double root; k'' by central differences of k'."""
    z = complex(z)
    for _ in range(maxiter):
        d1 = complex(cumulant_prime(model, z))
        hstep = 1e-5 * max(1.0, abs(z))
        d2 = complex(cumulant_prime(model, z + hstep) - cumulant_prime(model, z - hstep)) / (2 * hstep)
        if d2 == 0:
            break
        step = d1 / d2
        z -= step
        if abs(step) <= 1e-15 * max(1.0, abs(z)):
            break
    return z


# --------------------------------------------------------------------------
# candidate generation
# --------------------------------------------------------------------------


def _cleared_polynomial(model: ModelSpec, s: float):
    """Ascending coefficients of (k(r) - s) * prod(r + b_i)^(k_i+1) * D_plus(r)."""
    Pm = model.neg_denominator
    lp, lm = model.pos_jumps.rate, model.neg_jumps.rate
    if model.pos_jumps.active:
        num_p, den_p = model.pos_jumps.density.rational
    else:
        num_p, den_p = np.array([1.0]), np.array([1.0])
    base = np.array([-lp - lm - s, model.drift_a, 0.5 * model.sigma**2], dtype=complex)
    poly = P.polymul(P.polymul(base, Pm), den_p)
    if lp > 0:
        poly = P.polyadd(poly, lp * P.polymul(num_p, Pm))
    if lm > 0:
        poly = P.polyadd(poly, lm * P.polymul(model.neg_jumps.form.pole_form().numerator(), den_p))
    poly = np.asarray(poly, dtype=complex)
    if np.max(np.abs(poly.imag)) <= 1e-12 * np.max(np.abs(poly)):
        poly = poly.real
    if s == 0:
        # k(0) = 0: remove the root at the origin exactly
        poly = poly[1:]
    while len(poly) > 1 and poly[-1] == 0:
        poly = poly[:-1]
    return poly


def _rational_candidates(model, s):
    poly = np.trim_zeros(np.asarray(_cleared_polynomial(model, s)), "b")
    # a negligible top coefficient (tiny sigma) only carries a root of modulus ~1/eps,
    # far outside the counting box; left in, it wrecks the companion eigenvalues
    while len(poly) > 1 and abs(poly[-1]) <= 1e-13 * np.max(np.abs(poly)):
        poly = poly[:-1]
    zs = np.roots(poly[::-1])
    zs = zs[zs.real < 0]
    out = []
    for z in zs:
        zp, ok = _newton(model, s, z)
        out.append(zp if ok and zp.real < 0 and abs(zp - z) < 1e-3 * max(1.0, abs(z)) else z)
    return out


def _contour_candidates(model, s, R, W, expected):
    h = _make_h(model, s)
    found = []
    fractions = (0.5137, 0.4621, 0.5583, 0.4212)
    stack = [((-R, 0.0, -W, W), expected)]
    evaluations = 0
    while stack:
        (x0, x1, y0, y1), n = stack.pop()
        if n == 0:
            continue
        evaluations += 1
        if evaluations > 4000:
            raise ConvergenceError("root isolation did not terminate")
        centre = complex(0.5 * (x0 + x1), 0.5 * (y0 + y1))
        diam = abs(complex(x1 - x0, y1 - y0))
        scale = max(1.0, abs(centre))
        if n == 1:
            z, ok = _newton(model, s, centre)
            margin = 1e-9 * scale
            inside = x0 - margin <= z.real <= x1 + margin and y0 - margin <= z.imag <= y1 + margin
            # at s = 0 the root r = 0 is divided out of h; Newton on k may still find it
            spurious = s == 0 and abs(z) < 1e-8
            if ok and inside and z.real < 0 and not spurious:
                found.append(z)
                continue
        if n >= 2 and diam < 1e-6 * scale:
            found.extend([centre] * n)
            continue
        for frac in fractions:
            try:
                if (x1 - x0) >= (y1 - y0):
                    xm = x0 + frac * (x1 - x0)
                    a, b = (x0, xm, y0, y1), (xm, x1, y0, y1)
                else:
                    ym = y0 + frac * (y1 - y0)
                    a, b = (x0, x1, y0, ym), (x0, x1, ym, y1)
                na = _rect_count(h, *a)
                nb = _rect_count(h, *b)
            except PrecisionError:
                continue
            if na + nb == n and na >= 0 and nb >= 0:
                stack.append((a, na))
                stack.append((b, nb))
                break
        else:
            raise PrecisionError("could not split a box without hitting a root on its boundary")
    return found


# --------------------------------------------------------------------------
# assembly
# --------------------------------------------------------------------------


def _cluster(model, s, zs):
    zs = sorted(zs, key=lambda z: (z.real, z.imag))
    groups = []
    for z in zs:
        for g in groups:
            if abs(z - np.mean(g)) <= MERGE_TOL * max(1.0, abs(z)):
                g.append(z)
                break
        else:
            groups.append([z])
    out = []
    h = _make_h(model, s)
    for g in groups:
        c = complex(np.mean(g))
        n = len(g)
        if n > 1:
            if n == 2:
                c = _refine_double(model, c)
            m = _circle_count(h, c, LOCAL_RADIUS * max(1.0, abs(c)))
            if m != n:
                raise PrecisionError(f"multiplicity of root near {-c} ambiguous: cluster {n}, local count {m}")
        out.append((c, n))
    return out


def _conjugate_close(items):
    real, upper, lower = [], [], []
    for z, n in items:
        if abs(z.imag) <= 1e-10 * max(1.0, abs(z)):
            real.append((complex(z.real, 0.0), n))
        elif z.imag > 0:
            upper.append((z, n))
        else:
            lower.append((z, n))
    if len(upper) != len(lower):
        raise PrecisionError("complex roots do not pair into conjugates")
    out = list(real)
    for z, n in upper:
        j = int(np.argmin([abs(w - z.conjugate()) for w, _ in lower]))
        w, m = lower.pop(j)
        if m != n:
            raise PrecisionError("conjugate roots have different multiplicities")
        zz = 0.5 * (z + w.conjugate())
        out += [(zz, n), (zz.conjugate(), n)]
    return out


def find_roots(model: ModelSpec, s: float, *, tol: float = 1e-10, method: str = "auto") -> RootSet:
    """Roots ``-r_k(s)`` of ``k(r) = s`` with ``Re r < 0`` (plus ``r_1 = 0`` at s = 0).

    ``method`` is ``"auto"``, ``"rational"`` or ``"contour"``.
    """
    s = float(s)
    if s < 0:
        raise ValueError("killing rate s must be >= 0")
    if s == 0 and not mean(model) < 0:
        raise MeanNotNegative(f"s = 0 needs E X_1 < 0 (got {mean(model)})")
    info = classify(model)
    expected = info.n_roots - (1 if s == 0 else 0)
    if method == "auto":
        method = "rational" if model.is_rational else "contour"
    if method == "rational" and not model.is_rational:
        raise ValueError("rational path needs a rational positive-jump m.g.f.")

    R, W = _contour_size(model, s)
    for _ in range(4):
        total = count_roots(model, s, R, W)
        if total == expected:
            break
        R, W = 2 * R, 2 * W
    else:
        raise RootCountMismatch(f"argument principle counts {total} roots, expected {expected}")

    if method == "rational":
        cands = _rational_candidates(model, s)
    else:
        cands = _contour_candidates(model, s, R, W, expected)
    if len(cands) != expected:
        raise RootCountMismatch(f"found {len(cands)} roots, expected {expected}")

    items = _conjugate_close(_cluster(model, s, cands))
    if s == 0:
        items.append((0j, 1))
    for z, _ in items:
        res = abs(complex(cumulant(model, z, continued=True)) - s)
        if res > tol * max(1.0, abs(s)):
            raise ConvergenceError(f"root {-z} has residual {res:.3e} > {tol * max(1.0, abs(s)):.1e}")

    rvals = [(complex(-z.real + 0.0, -z.imag + 0.0), n) for z, n in items]
    if not rvals:
        # no downward movement at all: the infimum is 0
        return RootSet(s=s, roots=(), case=info.tag)
    reals = [i for i, (r, _) in enumerate(rvals) if r.imag == 0]
    if not reals:
        raise PrecisionError("no real root r_1 found")
    i1 = min(reals, key=lambda i: rvals[i][0].real)
    first = rvals[i1]
    if first[0].real > model.b1 * (1 + 1e-12):
        raise PrecisionError(f"smallest real root {first[0].real} lies outside [0, b1]")
    rest = rvals[:i1] + rvals[i1 + 1 :]
    rest.sort(key=lambda p: (round(p[0].real, 12), p[0].imag))
    roots = tuple(Root(complex(r), int(n)) for r, n in [first] + rest)
    return RootSet(s=s, roots=roots, case=info.tag)


def root_slope_at_zero(model: ModelSpec) -> float:
    """``lim_{s -> 0} r_1(s) / s = 1 / |mu|``."""
    mu = mean(model)
    if not mu < 0:
        raise MeanNotNegative(f"need E X_1 < 0, got {mu}")
    return 1.0 / abs(mu)


def root_slope_numeric(model: ModelSpec, s: float = 1e-6) -> float:
    """``r_1(s) / s`` at a small killing rate (numerical check of the slope)."""
    return find_roots(model, s).r1 / s
