"""Complete elliptic integrals by the arithmetic-geometric mean.

Modulus convention: K(s) and E(s) carry s**2 inside the integrand,
    K(s) = integral_0^1 dx / sqrt((1-x^2)(1-s^2 x^2)),
    E(s) = integral_0^1 sqrt((1-s^2 x^2)/(1-x^2)) dx,
i.e. the argument is the modulus itself, never the parameter m = s**2.
The AGM is the production route (quadratically convergent, ~5 iterations
at double precision); hypergeometric series and direct quadrature serve as
independent oracles in the test suite only.
"""

from __future__ import annotations

import math

_PIH = math.pi / 2.0

#: AGM iteration stops when |a - b| <= this relative spread.
AGM_REL_TOL = 1e-15

#: K(s) is refused this close to |s| = 1; the logarithmic divergence makes
#: any returned double misleading.
K_MODULUS_GUARD = 1e-12

_MAX_ITER = 64


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive numbers."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"agm requires positive arguments, got ({a!r}, {b!r})")
    for _ in range(_MAX_ITER):
        if abs(a - b) <= AGM_REL_TOL * a:
            return 0.5 * (a + b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    return 0.5 * (a + b)


def _k_from_agm(s: float) -> float:
    # Valid for any |s| < 1 in floating point; callers guard the domain.
    comp = math.sqrt((1.0 - s) * (1.0 + s))
    return _PIH / agm(1.0, comp)


def ellipk(s: float) -> float:
    """Complete elliptic integral of the first kind, K(s) = pi / (2 agm(1, s')).

    s' = sqrt(1 - s^2) is the complementary modulus.  Rejects |s| within
    K_MODULUS_GUARD of 1, where K blows up logarithmically.
    """
    if abs(s) >= 1.0 - K_MODULUS_GUARD:
        raise ValueError(f"K(s) diverges as |s| -> 1; |s| = {abs(s)!r} is out of range")
    return _k_from_agm(s)


def ellipe(s: float) -> float:
    """Complete elliptic integral of the second kind via the AGM companion sums.

    E(s) = K(s) (1 - sum_n 2^(n-1) c_n^2) with c_0 = s and
    c_{n+1} = (a_n - b_n)/2 along the AGM iteration.  E(+-1) = 1 exactly.
    """
    if abs(s) > 1.0:
        raise ValueError(f"E(s) requires |s| <= 1, got {s!r}")
    if abs(s) == 1.0:
        return 1.0
    a, b = 1.0, math.sqrt((1.0 - s) * (1.0 + s))
    csum = 0.5 * s * s
    p = 0.5
    for _ in range(_MAX_ITER):
        if abs(a - b) <= AGM_REL_TOL * a:
            break
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), math.sqrt(a * b)
        p *= 2.0
        csum += p * c * c
    return _PIH / (0.5 * (a + b)) * (1.0 - csum)
