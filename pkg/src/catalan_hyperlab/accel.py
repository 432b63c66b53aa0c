"""Nonlinear sequence acceleration for slowly convergent series.

Two transforms are provided: Wynn's epsilon algorithm (best on alternating,
linearly convergent series) and the Levin u-transform (best on one-signed,
logarithmically convergent series).  Both consume a reentrant stream of
series terms and return an :class:`~catalan_hyperlab.result.EvalResult`.

The extrapolation tables run in double-double (compensated) arithmetic.
Iterated differences of nearly equal partial sums amplify rounding noise
exponentially with table depth; at plain double precision the u-transform
on a logarithmically convergent series stalls near 1e-9, which is not
enough for the identity suite.  With a compensated table the achievable
accuracy is set by the term stream's own rounding, roughly the last
stable digit of the partial sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .result import AccelBreakdownError, EvalResult, NonConvergenceError

#: Hard ceiling on the number of raw terms any transform may consume.
MAX_CAP = 4000

#: Table denominators with |hi| below this are treated as breakdowns.
BREAKDOWN_EPS = 1e-300

#: Deepest Levin table column; input noise amplification makes deeper
#: columns useless whatever the working precision.
_LEVIN_DEPTH = 48

# ---------------------------------------------------------------------------
# Double-double primitives (Dekker/Knuth error-free transforms).  A value is
# an (hi, lo) tuple with |lo| <= ulp(hi)/2, giving ~31 significant digits.

_SPLIT = 134217729.0  # 2**27 + 1


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _quick_two_sum(a: float, b: float) -> tuple[float, float]:
    # requires |a| >= |b| or a == 0
    s = a + b
    return s, b - (s - a)


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah = _SPLIT * a
    ah -= ah - a
    al = a - ah
    bh = _SPLIT * b
    bh -= bh - b
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    s0, s1 = _two_sum(x[0], y[0])
    t0, t1 = _two_sum(x[1], y[1])
    s1 += t0
    s0, s1 = _quick_two_sum(s0, s1)
    return _quick_two_sum(s0, s1 + t1)


def _dd_sub(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    return _dd_add(x, (-y[0], -y[1]))


def _dd_mul(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    p0, p1 = _two_prod(x[0], y[0])
    return _quick_two_sum(p0, p1 + x[0] * y[1] + x[1] * y[0])


def _dd_div(x: tuple[float, float], y: tuple[float, float]) -> tuple[float, float]:
    q0 = x[0] / y[0]
    r = _dd_sub(x, _dd_mul((q0, 0.0), y))
    q1 = r[0] / y[0]
    r = _dd_sub(r, _dd_mul((q1, 0.0), y))
    q2 = r[0] / y[0]
    s0, s1 = _quick_two_sum(q0, q1)
    return _dd_add((s0, s1), (q2, 0.0))


_DD_ONE = (1.0, 0.0)
_DD_ZERO = (0.0, 0.0)


def _dd_powi(x: tuple[float, float], n: int) -> tuple[float, float]:
    if n < 0:
        return _dd_div(_DD_ONE, _dd_powi(x, -n))
    acc = _DD_ONE
    base = x
    while n:
        if n & 1:
            acc = _dd_mul(acc, base)
        base = _dd_mul(base, base)
        n >>= 1
    return acc


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TermStream:
    """A reentrant source of series terms t0, t1, t2, ...

    make_terms must return a fresh iterator on every call so the stream can
    be consumed repeatedly (and concurrently).  kind routes the stream to
    the transform that suits its sign pattern: "alternating" terms go to
    the epsilon algorithm, "monotone-positive" (eventually one-signed)
    terms go to the Levin u-transform.

    make_terms_dd, when set, yields double-double (hi, lo) renderings of
    the exact terms; streams with rational terms provide it so acceleration
    is not limited by term rounding.
    """

    make_terms: Callable[[], Iterator[float]]
    kind: str = "monotone-positive"
    label: str = ""
    make_terms_dd: Optional[Callable[[], Iterator[tuple[float, float]]]] = None

    def __post_init__(self):
        if self.kind not in ("alternating", "monotone-positive"):
            raise ValueError(f"unknown stream kind {self.kind!r}")

    @classmethod
    def from_function(cls, term: Callable[[int], float], kind: str, label: str = "") -> "TermStream":
        def gen() -> Iterator[float]:
            k = 0
            while True:
                yield term(k)
                k += 1

        return cls(make_terms=gen, kind=kind, label=label)

    def _dd_terms(self) -> Iterator[tuple[float, float]]:
        if self.make_terms_dd is not None:
            return self.make_terms_dd()
        return ((t, 0.0) for t in self.make_terms())


def _check_cap(cap: int) -> None:
    if not 0 < cap <= MAX_CAP:
        raise ValueError(f"cap must be in (0, {MAX_CAP}], got {cap}")


class _Tracker:
    """Shared stopping logic for the extrapolation estimates.

    An estimate is certified by the larger of its last two steps, so a
    single lucky plateau (common in oscillating tables) never converges;
    the value at the smallest certified pair is kept for the at-cap exit.
    """

    def __init__(self, tol: float):
        self.tol = tol
        self.estimate = math.nan
        self.last_diff = math.inf
        self.pair = math.inf
        self.best_value = math.nan
        self.best_pair = math.inf

    def update(self, candidate: float) -> bool:
        if not math.isnan(self.estimate):
            d = abs(candidate - self.estimate)
            self.pair = max(d, self.last_diff)
            self.last_diff = d
            if self.pair < self.best_pair:
                self.best_pair = self.pair
                self.best_value = candidate
        self.estimate = candidate
        return self.pair <= self.tol

    def blowup(self) -> bool:
        # Step sizes rising two decades above their floor mark the point
        # where table noise outruns the extrapolation.
        return self.pair > 100.0 * self.best_pair

    def result(self, effort: int) -> EvalResult:
        if self.best_pair <= self.tol:
            return EvalResult(self.best_value, self.best_pair, effort, True, "accelerated")
        raise NonConvergenceError(
            f"acceleration stalled after {effort} terms: best certified step "
            f"{self.best_pair:g} > tol {self.tol:g}"
        )


def wynn_epsilon(ts: TermStream, tol: float = 1e-12, cap: int = 400) -> EvalResult:
    """Sum a series by the scalar epsilon algorithm on its partial sums.

    The table is held as a single rolling anti-diagonal; the estimate after
    each new term is the deepest even-column entry.  A zero denominator
    freezes the table depth (that column has stabilised exactly); a
    subnormal nonzero denominator raises :class:`AccelBreakdownError`
    unless the estimate already met the tolerance, in which case the
    converged value is returned.  Callers hitting the breakdown may retry
    the stream with :func:`levin_u`.
    """
    _check_cap(cap)
    track = _Tracker(tol)
    diag: list[tuple[float, float]] = []
    partial = _DD_ZERO
    terms = ts._dd_terms()
    for n in range(cap):
        partial = _dd_add(partial, next(terms))
        new = [partial]
        for k in range(len(diag)):
            denom = _dd_sub(new[k], diag[k])
            if abs(denom[0]) < BREAKDOWN_EPS:
                if denom[0] == 0.0:
                    break  # exact stabilisation: freeze table depth here
                if track.pair <= tol:
                    return EvalResult(track.estimate, track.last_diff, n + 1, True, "accelerated")
                raise AccelBreakdownError(
                    f"epsilon table denominator underflow at column {k + 1} "
                    f"after {n + 1} terms; retry with levin_u"
                )
            prev = diag[k - 1] if k >= 1 else _DD_ZERO
            new.append(_dd_add(prev, _dd_div(_DD_ONE, denom)))
        diag = new
        top_even = len(diag) - 1 if len(diag) % 2 else len(diag) - 2
        if top_even < 0:
            continue
        entry = diag[top_even]
        if track.update(entry[0] + entry[1]):
            return EvalResult(track.estimate, track.last_diff, n + 1, True, "accelerated")
    return track.result(cap)


def levin_u(ts: TermStream, tol: float = 1e-12, cap: int = 400, beta: float = 1.0) -> EvalResult:
    """Sum a series by the Levin u-transform.

    Remainder estimates are w_n = (n+1) * t_{n+1}, so the stream is read
    one term ahead of the partial sum.  Numerator and denominator tables
    are updated in place along the anti-diagonal; the deepest transform at
    starting index 0 is the running estimate.  The table stops deepening
    at _LEVIN_DEPTH columns or when step sizes blow up, whichever first;
    the returned value is the estimate at the smallest step seen.
    """
    _check_cap(cap)
    track = _Tracker(tol)
    num: list[tuple[float, float]] = []
    den: list[tuple[float, float]] = []
    factors: dict[tuple[int, int], tuple[float, float]] = {}
    partial = _DD_ZERO
    terms = ts._dd_terms()
    t = next(terms)
    depth = min(cap - 1, _LEVIN_DEPTH)
    for n in range(depth):
        partial = _dd_add(partial, t)
        t_next = next(terms)
        omega = _dd_mul(((beta + n), 0.0), t_next)
        if abs(omega[0]) < BREAKDOWN_EPS:
            # Series terminated (or terms underflowed): the partial sum is
            # already exact to working precision.
            return EvalResult(partial[0] + partial[1], abs(t_next[0]), n + 1, True, "accelerated")
        num.append(_dd_div(partial, omega))
        den.append(_dd_div(_DD_ONE, omega))
        for i in range(n - 1, -1, -1):
            k = n - i
            factor = factors.get((i, k))
            if factor is None:
                base = beta + i + k
                # (beta+i) (base-1)^(k-2) / base^(k-1)
                ratio = _dd_div(((base - 1.0), 0.0), (base, 0.0))
                scale = _dd_div(((beta + i), 0.0), (base, 0.0))
                factor = _dd_mul(scale, _dd_powi(ratio, k - 2))
                factors[(i, k)] = factor
            num[i] = _dd_sub(num[i + 1], _dd_mul(factor, num[i]))
            den[i] = _dd_sub(den[i + 1], _dd_mul(factor, den[i]))
        if abs(den[0][0]) < BREAKDOWN_EPS:
            if den[0][0] == 0.0:
                # Transient degeneracy (two remainder estimates coincided
                # exactly); deepening the table resolves it.
                t = t_next
                continue
            if track.pair <= tol:
                return EvalResult(track.estimate, track.last_diff, n + 1, True, "accelerated")
            raise AccelBreakdownError(f"Levin denominator underflow after {n + 1} terms")
        q = _dd_div(num[0], den[0])
        if track.update(q[0] + q[1]):
            return EvalResult(track.estimate, track.last_diff, n + 1, True, "accelerated")
        if n >= 12 and track.blowup():
            return track.result(n + 1)
        t = t_next
    return track.result(depth)


def sum_stream(ts: TermStream, tol: float = 1e-12, cap: int = 400) -> EvalResult:
    """Sum a stream with the transform matching its kind.

    Alternating streams go to the epsilon algorithm, one-signed streams to
    the Levin u-transform.  An epsilon breakdown falls back to Levin, as
    its error contract documents.
    """
    if ts.kind == "alternating":
        try:
            return wynn_epsilon(ts, tol, cap)
        except AccelBreakdownError:
            return levin_u(ts, tol, cap)
    return levin_u(ts, tol, cap)
