"""Complex error-function kernels.

Everything that needs erf at complex arguments goes through :func:`erfcx`,
which is backed by the Faddeeva function ``w(z) = exp(-z**2) erfc(-iz)``.
"""
import numpy as np
from scipy.special import wofz

SQRT_PI = np.sqrt(np.pi)


def erfcx(z):
    """Scaled complementary error function ``exp(z**2) * erfc(z)`` for complex z."""
    return wofz(1j * np.asarray(z, dtype=complex))


def erfcx_prime(z):
    """Derivative of :func:`erfcx`: ``2 z erfcx(z) - 2/sqrt(pi)``."""
    z = np.asarray(z, dtype=complex)
    return 2.0 * z * erfcx(z) - 2.0 / SQRT_PI
