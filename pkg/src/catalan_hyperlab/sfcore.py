"""Gamma utilities, Pochhammer symbols, and generalized hypergeometric series.

Everything here is plain double-precision arithmetic with no dependencies.
The pFq evaluator sums the term recurrence directly while the argument is
comfortably inside the unit disk and hands the term stream to the
acceleration module near or at the boundary, where the geometric tail
bound degenerates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .accel import TermStream, sum_stream, wynn_epsilon
from .result import EvalResult, NonConvergenceError

#: Largest |x| summed by the plain recurrence; beyond it the term ratio is
#: too close to 1 for the geometric tail bound to be useful.
DIRECT_SERIES_RADIUS = 0.95

#: Term cap for direct summation.  Exceeding it raises, never truncates.
DIRECT_SERIES_CAP = 100_000

#: Term cap handed to the accelerators for unit-argument evaluation.
ACCEL_CAP = 600

# Lanczos rational kernel, g = 7, 9 coefficients.  Relative accuracy of the
# reconstructed Gamma is ~1e-15 over the positive half-line.
_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def lgamma(x: float) -> float:
    """log Gamma(x) for x > 0 by a fixed-coefficient Lanczos kernel."""
    if not x > 0.0:
        raise ValueError(f"lgamma requires x > 0, got {x!r}")
    if x < 0.5:
        # Recurrence Gamma(x) = Gamma(x+1)/x keeps the kernel on its sweet spot.
        return lgamma(x + 1.0) - math.log(x)
    z = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(t) - t + math.log(acc)


def pochhammer(a: float, k: int) -> float:
    """Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.

    For half-integer a (every parameter in this library) the product is
    formed in exact integer arithmetic and rounded once, so quotients of
    Pochhammer symbols stay within a couple of ulp of their closed forms.
    """
    if k < 0 or k != int(k):
        raise ValueError(f"pochhammer index must be a nonnegative integer, got {k!r}")
    k = int(k)
    two_a = 2.0 * a
    if two_a == round(two_a) and abs(two_a) < 2**52 and k <= 400:
        n0 = int(round(two_a))
        num = 1
        for j in range(k):
            num *= n0 + 2 * j
        try:
            return num / (1 << k)
        except OverflowError:
            return math.inf if num > 0 else -math.inf
    p = 1.0
    for j in range(k):
        p *= a + j
    return p


def central_binomial(n: int) -> float:
    """binom(2n, n): exact integer arithmetic up to n = 30, log space above.

    The crossover avoids overflow once 2n outgrows what doubles and exact
    conversion can carry.
    """
    if n < 0:
        raise ValueError("central_binomial requires n >= 0")
    if n <= 30:
        return float(math.comb(2 * n, n))
    return math.exp(lgamma(2.0 * n + 1.0) - 2.0 * lgamma(n + 1.0))


@dataclass(frozen=True)
class PFQParams:
    """Parameters of a generalized hypergeometric series pFq.

    upper holds a1..ap, lower holds b1..bq, argument is the point x where
    the power series sum_k [prod (ai)_k / prod (bj)_k] x^k / k! is wanted.
    """

    upper: tuple[float, ...]
    lower: tuple[float, ...]
    argument: float

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))
        object.__setattr__(self, "argument", float(self.argument))
        for b in self.lower:
            if b <= 0.0 and b == int(b):
                raise ValueError(f"lower parameter {b} is a nonpositive integer; series undefined")
        if len(self.upper) > len(self.lower) + 1:
            raise ValueError("need p <= q+1 for a nonzero radius of convergence")


def unit_argument_margin(p: PFQParams) -> float:
    """Convergence margin at x = 1: sum of lower minus sum of upper parameters."""
    return math.fsum(p.lower) - math.fsum(p.upper)


def pfq_converges_at_one(p: PFQParams) -> bool:
    """True iff the series converges at x = 1 (positive margin)."""
    return unit_argument_margin(p) > 0.0


def pfq_term_stream(p: PFQParams) -> TermStream:
    """The series terms of a pFq as a reentrant stream.

    Terms are built by the ratio recurrence
    t_{k+1} = t_k * prod(ai + k) / prod(bj + k) * x / (k+1).
    For x > 0 the terms are eventually one-signed, for x < 0 alternating;
    the kind flag routes the stream to the matching accelerator.

    Every double is an exact rational, so the stream also carries a
    double-double rendering computed by an exact Fraction recurrence;
    acceleration is then not limited by term rounding, which matters for
    the slowest unit-argument series (convergence margin 1/2).
    """
    upper, lower, x = p.upper, p.lower, p.argument

    def gen():
        t = 1.0
        k = 0
        while True:
            yield t
            ratio = x / (k + 1.0)
            for a in upper:
                ratio *= a + k
            for b in lower:
                ratio /= b + k
            t *= ratio
            k += 1

    fr_upper = [Fraction(a) for a in upper]
    fr_lower = [Fraction(b) for b in lower]
    fr_x = Fraction(x)

    def gen_dd():
        t = Fraction(1)
        k = 0
        while True:
            hi = float(t)
            yield hi, float(t - Fraction(hi))
            ratio = fr_x / (k + 1)
            for a in fr_upper:
                ratio *= a + k
            for b in fr_lower:
                ratio /= b + k
            t *= ratio
            k += 1

    kind = "alternating" if x < 0.0 else "monotone-positive"
    label = f"{len(upper)}F{len(lower)}({','.join(map(str, upper))};{','.join(map(str, lower))};{x})"
    return TermStream(make_terms=gen, kind=kind, label=label, make_terms_dd=gen_dd)


def pfq(p: PFQParams, tol: float = 1e-12, max_terms: Optional[int] = None) -> EvalResult:
    """Evaluate pFq at its argument to the requested absolute tolerance.

    |x| <= DIRECT_SERIES_RADIUS sums the recurrence with the geometric
    tail bound |t_{k+1}| / (1 - rho), rho = max(|x|, current term ratio).
    Larger |x| (including x = +-1, subject to the convergence margin) is
    delegated to sequence acceleration.  max_terms lowers the built-in
    effort caps.
    """
    x = p.argument
    ax = abs(x)
    if ax > 1.0:
        raise ValueError(f"pfq argument must satisfy |x| <= 1, got {x}")
    if x == 1.0 and not pfq_converges_at_one(p):
        raise ValueError(
            f"series diverges at x=1 (margin {unit_argument_margin(p):g} <= 0)"
        )
    if x == -1.0 and unit_argument_margin(p) <= -1.0:
        raise ValueError("series diverges at x=-1 (margin <= -1)")

    accel_cap = min(ACCEL_CAP, max_terms) if max_terms else ACCEL_CAP
    direct_cap = min(DIRECT_SERIES_CAP, max_terms) if max_terms else DIRECT_SERIES_CAP
    if ax == 1.0:
        return sum_stream(pfq_term_stream(p), tol, cap=accel_cap)
    if ax > DIRECT_SERIES_RADIUS:
        # Linearly convergent but too slow for the geometric bound to be
        # economical; the epsilon algorithm is exact on geometric tails.
        # If even that stalls (|x| extremely close to 1), fall through to
        # brute-force summation, whose bound is still valid for |x| < 1.
        try:
            return wynn_epsilon(pfq_term_stream(p), tol, cap=accel_cap)
        except NonConvergenceError:
            pass

    t = 1.0
    total = 0.0
    for k in range(direct_cap):
        total += t
        ratio = x / (k + 1.0)
        for a in p.upper:
            ratio *= a + k
        for b in p.lower:
            ratio /= b + k
        t *= ratio
        if t == 0.0:
            # Terminating series (an upper parameter reached zero) or full
            # underflow of the tail: the partial sum is exact either way.
            return EvalResult(total, 0.0, k + 1, True, "direct-series")
        if k >= 3:
            rho = max(ax, abs(ratio))
            if rho < 1.0:
                bound = abs(t) / (1.0 - rho)
                if bound <= tol:
                    return EvalResult(total, bound, k + 1, True, "direct-series")
    raise NonConvergenceError(
        f"pfq direct series hit the {DIRECT_SERIES_CAP}-term cap at x={x}"
    )


def gauss_2f1_at_one(a: float, b: float, c: float) -> float:
    """2F1(a, b; c; 1) by Gauss's summation theorem.

    Returns Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)).  Requires a
    positive convergence margin c-a-b; this implementation additionally
    requires c, c-a, c-b positive, which covers every use in this library
    without the reflection formula.
    """
    margin = c - a - b
    if margin <= 0.0:
        raise ValueError(f"Gauss summation needs c - a - b > 0, got {margin:g}")
    if a == 0.0 or b == 0.0:
        return 1.0
    for name, arg in (("c", c), ("c-a", c - a), ("c-b", c - b)):
        if arg <= 0.0:
            raise ValueError(f"gauss_2f1_at_one needs {name} > 0, got {arg:g}")
    return math.exp(lgamma(c) + lgamma(margin) - lgamma(c - a) - lgamma(c - b))
