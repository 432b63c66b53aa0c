"""Shared result container and error types for all evaluation routes."""

from __future__ import annotations

from dataclasses import dataclass

#: Tags identifying how a value was produced.  A verification never trusts
#: two values carrying the same computation; the tag is part of the audit.
METHOD_TAGS = ("direct-series", "accelerated", "quadrature", "agm", "closed-form")


class NonConvergenceError(RuntimeError):
    """An iterative route hit its effort cap before reaching tolerance."""


class AccelBreakdownError(NonConvergenceError):
    """A denominator in an extrapolation table underflowed.

    The epsilon algorithm is prone to this on sequences with exactly
    repeating entries once rounding noise is gone; callers may retry the
    same term stream with the Levin u-transform.
    """


class IntegrandError(RuntimeError):
    """The integrand returned a non-finite value inside the interval."""

    def __init__(self, abscissa: float, value: float):
        super().__init__(f"integrand returned {value!r} at x={abscissa!r}")
        self.abscissa = abscissa
        self.value = value


@dataclass(frozen=True)
class EvalResult:
    """Outcome of one numerical evaluation.

    err_estimate is an a-posteriori estimate (tail bound, inter-level
    difference, or extrapolation step), not a rigorous bound.  converged
    means the estimate met the tolerance the caller asked for.
    """

    value: float
    err_estimate: float
    effort: int
    converged: bool
    method: str

    def __post_init__(self):
        if self.method not in METHOD_TAGS:
            raise ValueError(f"unknown method tag {self.method!r}")
        if self.err_estimate < 0:
            raise ValueError("err_estimate must be >= 0")
        if self.method != "closed-form" and self.effort <= 0:
            raise ValueError("effort must be positive for computed results")
