"""The four named parametric integrals and the multi-route Catalan constant.

All four integrals

    A(s) = int_0^1 arcsin(s x) / (x sqrt(1-x^2)) dx
    B(s) = int_0^1 (arcsin(s x) + s x sqrt(1-s^2 x^2)) / (2 x sqrt(1-x^2)) dx
    C(s) = int_0^1 log(1 + sqrt(1-s^2 x^2)) / sqrt(1-x^2) dx
    D(s) = int_0^1 log(1 - sqrt(1-s^2 x^2)) / sqrt(1-x^2) dx

are evaluated after the substitution x = sin(theta) on (0, pi/2), which
turns the universal 1/sqrt(1-x^2) factor into d(theta) and removes the
x = 1 singularity.  D keeps a logarithmic singularity at theta = 0, which
tanh-sinh absorbs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .accel import TermStream, wynn_epsilon
from .elliptic import _k_from_agm, ellipe
from .quadrature import QuadratureSpec, tanh_sinh
from .result import EvalResult

_PIH = math.pi / 2.0

CATALAN_METHODS = (
    "beta_series",
    "k_integral",
    "e_integral",
    "arctan_integral",
    "arcsin_integral",
)

#: Below this |x| the 0/0-shaped kernels switch to their power series.
_SMALL_X = 1e-6


def _arcsin_ratio(s: float, x: float) -> float:
    """arcsin(s x) / x, continuous through x = 0 (limit s)."""
    if abs(x) < _SMALL_X:
        z2 = (s * x) ** 2
        return s * (1.0 + z2 * (1.0 / 6.0 + z2 * (3.0 / 40.0)))
    return math.asin(s * x) / x


def _one_minus_sq(z: float) -> float:
    return max(0.0, (1.0 - z) * (1.0 + z))


def _integrand_a(s: float):
    def f(theta: float) -> float:
        return _arcsin_ratio(s, math.sin(theta))

    return f


def _integrand_b(s: float):
    def f(theta: float) -> float:
        x = math.sin(theta)
        return 0.5 * (_arcsin_ratio(s, x) + s * math.sqrt(_one_minus_sq(s * x)))

    return f


def _integrand_c(s: float):
    def f(theta: float) -> float:
        z = s * math.sin(theta)
        return math.log1p(math.sqrt(_one_minus_sq(z)))

    return f


def _integrand_d(s: float):
    a = abs(s)

    def f(theta: float) -> float:
        z = a * math.sin(theta)
        # log(1 - sqrt(1-z^2)) = 2 log z - log(1 + sqrt(1-z^2)): no
        # cancellation for small z and no underflow of z**2 at deep nodes.
        return 2.0 * math.log(z) - math.log1p(math.sqrt(_one_minus_sq(z)))

    return f


def parametric_integral(name: str, s: float, tol: float = 1e-11, max_level: int = 10) -> EvalResult:
    """Evaluate one of the integrals A, B, C, D at parameter s.

    A and B are odd and vanish at s = 0; C(0) has the closed form
    (pi/2) log 2; D diverges at s = 0 and requires 0 < |s| <= 1.
    """
    if abs(s) > 1.0:
        raise ValueError(f"integral {name} requires |s| <= 1, got {s!r}")
    if name in ("A", "B"):
        if s == 0.0:
            return EvalResult(0.0, 0.0, 0, True, "closed-form")
        f = _integrand_a(s) if name == "A" else _integrand_b(s)
        spec = QuadratureSpec(0.0, _PIH, tol, max_level, singular_lo=False, singular_hi=False)
    elif name == "C":
        if s == 0.0:
            return EvalResult(_PIH * math.log(2.0), 0.0, 0, True, "closed-form")
        f = _integrand_c(s)
        spec = QuadratureSpec(0.0, _PIH, tol, max_level, singular_hi=abs(s) == 1.0)
    elif name == "D":
        if s == 0.0:
            raise ValueError("D(s) diverges at s = 0")
        f = _integrand_d(s)
        spec = QuadratureSpec(0.0, _PIH, tol, max_level, singular_lo=True, singular_hi=True)
    else:
        raise ValueError(f"unknown integral {name!r}; expected one of A, B, C, D")
    return tanh_sinh(f, spec)


def integral_A(s: float, tol: float = 1e-11) -> float:
    """A(s), the arcsine-kernel integral; A(1) = 2G."""
    return parametric_integral("A", s, tol).value


def integral_B(s: float, tol: float = 1e-11) -> float:
    """B(s), the mixed arcsine/algebraic kernel; B(1) = 1/2 + G."""
    return parametric_integral("B", s, tol).value


def integral_C(s: float, tol: float = 1e-11) -> float:
    """C(s), the log(1 + sqrt(...)) kernel; C(0) = (pi/2) log 2."""
    return parametric_integral("C", s, tol).value


def integral_D(s: float, tol: float = 1e-11) -> float:
    """D(s), the log(1 - sqrt(...)) kernel; C(s) + D(s) = pi log(s/2)."""
    return parametric_integral("D", s, tol).value


def beta_series_stream(scale: float = 1.0) -> TermStream:
    """Terms of sum_n (-scale)^n / (2n+1)^2; scale = 1 gives Catalan's constant."""

    def gen():
        n = 0
        power = 1.0
        while True:
            yield power / float((2 * n + 1) ** 2)
            power *= -scale
            n += 1

    def gen_dd():
        n = 0
        power = Fraction(1)
        fr_scale = Fraction(scale)
        while True:
            t = power / (2 * n + 1) ** 2
            hi = float(t)
            yield hi, float(t - Fraction(hi))
            power *= -fr_scale
            n += 1

    kind = "alternating" if scale > 0 else "monotone-positive"
    return TermStream(make_terms=gen, kind=kind, label=f"beta-like({scale})", make_terms_dd=gen_dd)


def _arctan_ratio(x: float) -> float:
    if abs(x) < _SMALL_X:
        return 1.0 - x * x / 3.0
    return math.atan(x) / x


def catalan_result(method: str = "beta_series", tol: float = 1e-13) -> EvalResult:
    """Catalan's constant by the named route, with full diagnostics.

    beta_series      accelerated alternating series sum (-1)^n/(2n+1)^2
    k_integral       (1/2) int_0^1 K(s) ds
    e_integral       int_0^1 E(s) ds - 1/2
    arctan_integral  int_0^1 arctan(x)/x dx
    arcsin_integral  (1/2) int_0^1 arcsin(t)/(t sqrt(1-t^2)) dt = A(1)/2
    """
    if method == "beta_series":
        return wynn_epsilon(beta_series_stream(), tol=tol, cap=400)
    if method == "k_integral":
        # K's public guard rejects |s| past 1 - 1e-12, but the integral's
        # deep nodes live there and contribute ~1e-11; go through the AGM
        # kernel directly, which is finite for every node strictly inside.
        res = tanh_sinh(_k_from_agm, QuadratureSpec(0.0, 1.0, 1e-12, 11, singular_hi=True))
        return EvalResult(0.5 * res.value, 0.5 * res.err_estimate, res.effort, res.converged, res.method)
    if method == "e_integral":
        res = tanh_sinh(ellipe, QuadratureSpec(0.0, 1.0, 1e-12, 11))
        return EvalResult(res.value - 0.5, res.err_estimate, res.effort, res.converged, res.method)
    if method == "arctan_integral":
        return tanh_sinh(_arctan_ratio, QuadratureSpec(0.0, 1.0, 1e-12, 11))
    if method == "arcsin_integral":
        res = parametric_integral("A", 1.0, tol=1e-12, max_level=11)
        return EvalResult(0.5 * res.value, 0.5 * res.err_estimate, res.effort, res.converged, res.method)
    raise ValueError(f"unknown method {method!r}; expected one of {CATALAN_METHODS}")


def catalan(method: str = "beta_series") -> float:
    """Catalan's constant G by the named route; see catalan_result."""
    return _catalan_cached(method)


@lru_cache(maxsize=None)
def _catalan_cached(method: str) -> float:
    return catalan_result(method).value
