"""A registry of the verified identities and the engine that checks them.

Every entry pairs two *independent* evaluation routes for the same number:
quadrature vs series, series vs closed form in G / pi / log 2, quadrature
vs AGM, and so on.  Evaluator specs are data (a route name plus a
parameter dict with expressions in the grid point s), so the whole
registry can be printed and serialized by the CLI.

Closed-form expressions draw the Catalan constant G from the accelerated
beta-series route, computed once; pi and log 2 come from the math module.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Union

from . import elliptic, integrals, quadrature, sfcore
from .quadrature import QuadratureSpec
from .result import EvalResult

__version__ = "0.1.0"

Point = Union[float, str, None]

#: Internal tolerances requested from the evaluation routes.  These are
#: deliberately tighter than any identity tolerance so the comparison is
#: dominated by the identity itself, not route noise.
_SERIES_TOL = 1e-12
_ACCEL_TOL = 1e-11
_QUAD_TOL = 1e-11

_S_GRID = tuple(round(0.1 * i, 1) for i in range(1, 10))
_DERIV_GRID = (0.3, 0.5, 0.7)

#: Catalan's constant as printed in the source literature (12 digits).
G_PRINTED = 0.915965594177


@dataclass(frozen=True)
class EvalSpec:
    """A named evaluation route plus its (serializable) parameters."""

    route: str
    params: dict = field(default_factory=dict)

    def describe(self) -> str:
        if not self.params:
            return self.route
        inner = ", ".join(f"{k}={v!r}" for k, v in sorted(self.params.items()))
        return f"{self.route}({inner})"


@dataclass(frozen=True)
class Identity:
    """One verifiable identity: two routes, a domain, and a tolerance."""

    id: str
    description: str
    citation: str
    lhs: EvalSpec
    rhs: EvalSpec
    tol: float
    points: tuple = (None,)
    grid_kind: str = "none"  # "s" grids accept --grid overrides

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError(f"{self.id}: tol must be positive")
        if self.lhs == self.rhs:
            raise ValueError(f"{self.id}: lhs and rhs must be distinct routes")


@dataclass(frozen=True)
class VerificationResult:
    """Outcome of checking one identity at one parameter point."""

    identity_id: str
    param: Point
    lhs_value: float
    rhs_value: float
    abs_residual: float
    rel_residual: float
    tol: float
    passed: bool
    lhs_method: str
    rhs_method: str
    effort: int
    error: Optional[str] = None


@dataclass(frozen=True)
class Report:
    """Aggregate of a verification run; the CLI serializes this."""

    version: str
    timestamp: str
    records: tuple
    total: int  # identities verified
    passed: int  # identities whose every point passed
    failed: int
    worst_residual: float
    wallclock: float


@lru_cache(maxsize=None)
def reference_catalan() -> float:
    """G by the accelerated beta series, the library's reference constant."""
    return integrals.catalan_result("beta_series", tol=1e-13).value


# ---------------------------------------------------------------------------
# Expression evaluation for closed forms and route parameters.

def _gamma(x: float) -> float:
    return math.exp(sfcore.lgamma(x))


_EXPR_BASE = {
    "pi": math.pi,
    "log2": math.log(2.0),
    "log": math.log,
    "sqrt": math.sqrt,
    "exp": math.exp,
    "gamma": _gamma,
}


def _eval_expr(expr: Union[str, float, int], s: Point = None, extra: Optional[dict] = None) -> float:
    if isinstance(expr, (int, float)):
        return float(expr)
    env = dict(_EXPR_BASE)
    env["G"] = reference_catalan()
    if s is not None:
        env["s"] = s
    if extra:
        env.update(extra)
    return float(eval(expr, {"__builtins__": {}}, env))  # registry-internal strings only


# ---------------------------------------------------------------------------
# Evaluation routes.  Each takes (params, point) and returns an EvalResult.

def _affine(res: EvalResult, pref: float, offset: float) -> EvalResult:
    return EvalResult(
        offset + pref * res.value,
        abs(pref) * res.err_estimate,
        res.effort,
        res.converged,
        res.method,
    )


def _route_catalan(params: dict, s: Point) -> EvalResult:
    method = params.get("method") or str(s)
    res = integrals.catalan_result(method)
    pref = _eval_expr(params.get("prefactor", 1.0), s)
    return _affine(res, pref, 0.0)


def _route_pfq(params: dict, s: Point) -> EvalResult:
    upper = [_eval_expr(a, s) for a in params["upper"]]
    lower = [_eval_expr(b, s) for b in params["lower"]]
    x = _eval_expr(params["arg"], s)
    tol = _ACCEL_TOL if abs(x) > sfcore.DIRECT_SERIES_RADIUS else _SERIES_TOL
    res = sfcore.pfq(sfcore.PFQParams(upper, lower, x), tol)
    pref = _eval_expr(params.get("prefactor", 1.0), s)
    offset = _eval_expr(params.get("offset", 0.0), s)
    return _affine(res, pref, offset)


def _binom_sq_16(n: int) -> float:
    # binom(2n,n)^2 / 16^n, exact integer arithmetic while it fits
    if n <= 30:
        return sfcore.central_binomial(n) ** 2 / 16.0**n
    return math.exp(2.0 * (sfcore.lgamma(2.0 * n + 1.0) - 2.0 * sfcore.lgamma(n + 1.0)) - n * math.log(16.0))


_NAMED_STREAMS = {
    "adamchik_binom": lambda n: (2 * n + 1.0) ** 2 * _binom_sq_16(n) / (n + 1.0) ** 3,
    "split_first": lambda n: 4.0 * _binom_sq_16(n) / (n + 1.0),
    "split_second": lambda n: 4.0 * _binom_sq_16(n) / (n + 1.0) ** 2,
    "split_4n": lambda n: 4.0 * n * _binom_sq_16(n) / (n + 1.0) ** 2,
}

_NAMED_STREAM_WEIGHTS = {
    # exact rational weight w(n) with term = w(n) * binom(2n,n)^2 / 16^n
    "adamchik_binom": lambda n: Fraction((2 * n + 1) ** 2, (n + 1) ** 3),
    "split_first": lambda n: Fraction(4, n + 1),
    "split_second": lambda n: Fraction(4, (n + 1) ** 2),
    "split_4n": lambda n: Fraction(4 * n, (n + 1) ** 2),
}


def _named_stream(name: str) -> sfcore.TermStream:
    weight = _NAMED_STREAM_WEIGHTS[name]

    def gen_dd():
        n = 0
        while True:
            t = weight(n) * Fraction(math.comb(2 * n, n) ** 2, 16**n)
            hi = float(t)
            yield hi, float(t - Fraction(hi))
            n += 1

    return sfcore.TermStream(
        make_terms=lambda term=_NAMED_STREAMS[name]: (term(n) for n in _naturals()),
        kind="monotone-positive",
        label=name,
        make_terms_dd=gen_dd,
    )


def _naturals():
    n = 0
    while True:
        yield n
        n += 1


def _route_series(params: dict, s: Point) -> EvalResult:
    name = params["name"]
    if name == "beta_like":
        stream = integrals.beta_series_stream(float(s))
    else:
        stream = _named_stream(name)
    res = sfcore.sum_stream(stream, _ACCEL_TOL, cap=600)
    pref = _eval_expr(params.get("prefactor", 1.0), s)
    return _affine(res, pref, 0.0)


def _route_integral(params: dict, s: Point) -> EvalResult:
    at = _eval_expr(params.get("at", "s"), s)
    res = integrals.parametric_integral(params["name"], at, tol=_QUAD_TOL)
    pref = _eval_expr(params.get("prefactor", 1.0), s)
    return _affine(res, pref, 0.0)


def _route_cd_sum(params: dict, s: Point) -> EvalResult:
    rc = integrals.parametric_integral("C", float(s), tol=_QUAD_TOL)
    rd = integrals.parametric_integral("D", float(s), tol=_QUAD_TOL)
    return EvalResult(
        rc.value + rd.value,
        rc.err_estimate + rd.err_estimate,
        rc.effort + rd.effort,
        rc.converged and rd.converged,
        "quadrature",
    )


_NAMED_INTEGRANDS = {
    "log_sin": (lambda t: math.log(math.sin(t)), 0.0, math.pi / 2, True, False),
    "log_cos": (lambda t: math.log(math.cos(t)), 0.0, math.pi / 2, False, True),
    "log1p_cos": (lambda t: math.log1p(math.cos(t)), 0.0, math.pi / 2, False, True),
}


def _route_quad(params: dict, s: Point) -> EvalResult:
    f, lo, hi, slo, shi = _NAMED_INTEGRANDS[params["integrand"]]
    return quadrature.tanh_sinh(f, QuadratureSpec(lo, hi, _QUAD_TOL, 10, slo, shi))


def _route_double_quad(params: dict, s: Point) -> EvalResult:
    weight = params["weight"]
    inner_effort = 0

    def outer(u: float) -> float:
        nonlocal inner_effort
        res = integrals.parametric_integral("C", u, tol=1e-11)
        inner_effort += res.effort
        return _eval_expr(weight, u) * res.value

    res = quadrature.tanh_sinh(outer, QuadratureSpec(0.0, 1.0, 3e-10, 9, singular_lo=True))
    return EvalResult(res.value, res.err_estimate, res.effort + inner_effort, res.converged, "quadrature")


def _route_central_diff(params: dict, s: Point) -> EvalResult:
    name = params["name"]
    h = float(params.get("h", 1e-3))
    effort = 0

    def f(u: float) -> float:
        nonlocal effort
        res = integrals.parametric_integral(name, u, tol=_QUAD_TOL)
        effort += res.effort
        return res.value

    value = quadrature.central_diff(f, float(s), h)
    # Stencil truncation O(h^4) plus quadrature noise ~ tol/h.
    err = h**4 + _QUAD_TOL / h
    return EvalResult(value, err, effort, True, "quadrature")


def _route_elliptic(params: dict, s: Point) -> EvalResult:
    calls = 0

    def k_counted(m: float) -> float:
        nonlocal calls
        calls += 1
        return elliptic.ellipk(m)

    def e_counted(m: float) -> float:
        nonlocal calls
        calls += 1
        return elliptic.ellipe(m)

    value = _eval_expr(params["expr"], s, extra={"K": k_counted, "E": e_counted})
    return EvalResult(value, 4e-15 * (1.0 + abs(value)), max(calls, 1), True, "agm")


def _route_expr(params: dict, s: Point) -> EvalResult:
    value = _eval_expr(params["expr"], s)
    return EvalResult(value, 4e-16 * (1.0 + abs(value)), 0, True, "closed-form")


def _asinh_ratio(t: float) -> float:
    if abs(t) < 1e-6:
        return 1.0 - t * t / 6.0
    return math.asinh(t) / t


def _route_whipple_lhs(params: dict, s: Point) -> EvalResult:
    """3F2(1/2,1,1;3/2,3/2; w) at the mapped argument w = 4s/(1+s)^2.

    Inside the direct-series radius the power series is summed as-is.  For
    s in (-1, 3-2*sqrt(2)) the mapped argument drops below -1, outside the
    series' reach, and the equivalent integral form
    (1/v) * int_0^v asinh(t) / (t sqrt(1+t^2)) dt with v = sqrt(-w)
    is used instead (termwise integration of the same series).
    """
    x = float(s)
    w = 4.0 * x / (1.0 + x) ** 2
    if abs(w) <= sfcore.DIRECT_SERIES_RADIUS:
        return sfcore.pfq(sfcore.PFQParams([0.5, 1.0, 1.0], [1.5, 1.5], w), _SERIES_TOL)
    if w > 0:
        raise ValueError(f"mapped argument {w:g} is in the slow-convergence zone")
    v = math.sqrt(-w)

    def f(t: float) -> float:
        return _asinh_ratio(t) / math.sqrt(1.0 + t * t)

    res = quadrature.tanh_sinh(f, QuadratureSpec(0.0, v, _QUAD_TOL, 10))
    return _affine(res, 1.0 / v, 0.0)


_ROUTES = {
    "catalan": _route_catalan,
    "pfq": _route_pfq,
    "series": _route_series,
    "integral": _route_integral,
    "cd_sum": _route_cd_sum,
    "quad": _route_quad,
    "double_quad": _route_double_quad,
    "central_diff": _route_central_diff,
    "elliptic": _route_elliptic,
    "expr": _route_expr,
    "whipple_lhs": _route_whipple_lhs,
}


def evaluate_spec(spec: EvalSpec, s: Point = None) -> EvalResult:
    """Run one evaluator spec at a grid point."""
    try:
        route = _ROUTES[spec.route]
    except KeyError:
        raise ValueError(f"unknown route {spec.route!r}") from None
    return route(spec.params, s)


# ---------------------------------------------------------------------------
# The registry.

def _pfq_spec(upper, lower, arg, prefactor=None, offset=None) -> EvalSpec:
    params = {"upper": list(upper), "lower": list(lower), "arg": arg}
    if prefactor is not None:
        params["prefactor"] = prefactor
    if offset is not None:
        params["offset"] = offset
    return EvalSpec("pfq", params)


_RAMANUJAN_3F2 = ([0.5, 0.5, 0.5], [1.0, 1.5])

_REGISTRY: tuple[Identity, ...] = (
    Identity(
        id="ramanujan_3f2",
        description="4G/pi equals the unit-argument 3F2(1/2,1/2,1/2;1,3/2)",
        citation="Ramanujan; Berndt, Ramanujan's Notebooks Part I, Entry 29(d), p. 40",
        lhs=EvalSpec("catalan", {"method": "beta_series", "prefactor": "4/pi"}),
        rhs=_pfq_spec(*_RAMANUJAN_3F2, "1"),
        tol=1e-10,
    ),
    Identity(
        id="berndt_transform",
        description="3F2(1/2,1,n+3/2;3/2,n+2;1) = sqrt(pi) Gamma(n+2)/Gamma(n+3/2) 3F2(1/2,1/2,-n;1,3/2;1)",
        citation="Berndt, Ramanujan's Notebooks Part I, Entry 29, p. 40 (valid for n > -3/2)",
        lhs=_pfq_spec(["0.5", "1", "s + 1.5"], ["1.5", "s + 2"], "1"),
        rhs=_pfq_spec(["0.5", "0.5", "-s"], ["1", "1.5"], "1",
                      prefactor="sqrt(pi) * gamma(s + 2) / gamma(s + 1.5)"),
        tol=1e-9,
        points=(-0.5, 0.0, 0.5, 1.0, 2.0),
        grid_kind="n",
    ),
    Identity(
        id="entry_prodigiii",
        description="3F2(1/2,1,1;3/2,3/2;1) = 2G",
        citation="Ramanujan's first notebook; Berndt Part I, Entry 29 at n = -1/2",
        lhs=_pfq_spec([0.5, 1.0, 1.0], [1.5, 1.5], "1"),
        rhs=EvalSpec("expr", {"expr": "2*G"}),
        tol=1e-10,
    ),
    Identity(
        id="whipple_quadratic",
        description="3F2(1/2,1,1;3/2,3/2;4x/(1+x)^2) = (1+x) sum (-x)^n/(2n+1)^2",
        citation="Whipple quadratic transformation; Berndt, Ramanujan's Notebooks Part II, Entry 32.2, p. 288",
        lhs=EvalSpec("whipple_lhs", {}),
        rhs=EvalSpec("series", {"name": "beta_like", "prefactor": "1 + s"}),
        tol=1e-10,
        points=(-0.9, -0.5, -0.1, 0.1, 0.3, 0.5),
        grid_kind="x",
    ),
    Identity(
        id="e1_parametric",
        description="arcsine-kernel integral A(s) = (pi/2) s 3F2(1/2,1/2,1/2;1,3/2;s^2)",
        citation="termwise integration of K's hypergeometric series; cf. Lima, Lemma 1",
        lhs=EvalSpec("integral", {"name": "A"}),
        rhs=_pfq_spec(*_RAMANUJAN_3F2, "s*s", prefactor="(pi/2)*s"),
        tol=1e-10,
        points=_S_GRID,
        grid_kind="s",
    ),
    Identity(
        id="a1_value",
        description="A(1) = (pi/2) 3F2(1/2,1/2,1/2;1,3/2;1) = 2G",
        citation="Byrd & Friedman, entry 615.01, p. 274; Bradley, p. 161",
        lhs=EvalSpec("integral", {"name": "A", "at": "1"}),
        rhs=_pfq_spec(*_RAMANUJAN_3F2, "1", prefactor="pi/2"),
        tol=1e-10,
    ),
    Identity(
        id="eics_parametric",
        description="C(s) = (pi/2) log 2 - (pi/16) s^2 4F3(1,1,3/2,3/2;2,2,2;s^2)",
        citation="integration of C'(s) = (pi/2 - K(s))/s by series",
        lhs=EvalSpec("integral", {"name": "C"}),
        rhs=_pfq_spec([1.0, 1.0, 1.5, 1.5], [2.0, 2.0, 2.0], "s*s",
                      prefactor="-(pi/16)*s*s", offset="(pi/2)*log2"),
        tol=1e-10,
        points=_S_GRID,
        grid_kind="s",
    ),
    Identity(
        id="nick_value",
        description="C(1) = int_0^1 log(1+sqrt(1-x^2))/sqrt(1-x^2) dx = 2G - (pi/2) log 2",
        citation="Nickalls-type log integral; evaluable in closed form",
        lhs=EvalSpec("integral", {"name": "C", "at": "1"}),
        rhs=EvalSpec("expr", {"expr": "2*G - (pi/2)*log2"}),
        tol=1e-10,
    ),
    Identity(
        id="nick1_variant",
        description="int_0^{pi/2} log(1+cos t) dt = 2G - (pi/2) log 2 (x = sin t in C(1))",
        citation="change of variables x = sin t in the C(1) integral",
        lhs=EvalSpec("quad", {"integrand": "log1p_cos"}),
        rhs=EvalSpec("expr", {"expr": "2*G - (pi/2)*log2"}),
        tol=1e-10,
    ),
    Identity(
        id="adamchik_4f3",
        description="4F3(1,1,3/2,3/2;2,2,2;1) = 16 log 2 - 32 G/pi",
        citation="Adamchik, 4F3 family at n = 1, p. 819",
        lhs=_pfq_spec([1.0, 1.0, 1.5, 1.5], [2.0, 2.0, 2.0], "1"),
        rhs=EvalSpec("expr", {"expr": "16*log2 - 32*G/pi"}),
        tol=1e-9,
    ),
    Identity(
        id="campbell_4f3",
        description="4F3(1/2,1/2,1,1;2,2,2;1) = sum binom(2n,n)^2/(16^n (n+1)^3) = 16 log 2 + 48/pi - 32 G/pi - 16",
        citation="Campbell; Cantarini & D'Aurizio; Ramanujan-like series for 1/pi",
        lhs=_pfq_spec([0.5, 0.5, 1.0, 1.0], [2.0, 2.0, 2.0], "1"),
        rhs=EvalSpec("expr", {"expr": "16*log2 + 48/pi - 32*G/pi - 16"}),
        tol=1e-9,
    ),
    Identity(
        id="binom_bridge",
        description="sum (2n+1)^2 binom(2n,n)^2/(16^n (n+1)^3) equals the 4F3(1,1,3/2,3/2;2,2,2;1) value",
        citation="Gamma(3/2+n) = (2n+1) n! sqrt(pi) binom(2n,n)/2^(2n+1) rewrites the Pochhammer form",
        lhs=EvalSpec("series", {"name": "adamchik_binom"}),
        rhs=EvalSpec("expr", {"expr": "16*log2 - 32*G/pi"}),
        tol=1e-9,
    ),
    Identity(
        id="partial_fraction_split",
        description="sum 4n binom(2n,n)^2/(16^n (n+1)^2) = 16 - 48/pi",
        citation="partial-fraction split of the central-binomial cubic sum",
        lhs=EvalSpec("series", {"name": "split_4n"}),
        rhs=EvalSpec("expr", {"expr": "16 - 48/pi"}),
        tol=1e-9,
    ),
    Identity(
        id="first_split_series",
        description="sum 4 binom(2n,n)^2/((n+1) 16^n) = 4 * 2F1(1/2,1/2;2;1) = 16/pi",
        citation="Gauss's summation theorem for 2F1(1/2,1/2;2;1)",
        lhs=EvalSpec("series", {"name": "split_first"}),
        rhs=EvalSpec("expr", {"expr": "16/pi"}),
        tol=1e-9,
    ),
    Identity(
        id="second_split_series",
        description="sum 4 binom(2n,n)^2/((n+1)^2 16^n) = 64/pi - 16",
        citation="Cantarini & D'Aurizio, p. 653",
        lhs=EvalSpec("series", {"name": "split_second"}),
        rhs=EvalSpec("expr", {"expr": "64/pi - 16"}),
        tol=1e-9,
    ),
    Identity(
        id="pow1",
        description="4F3(1,1,3/2,3/2;2,2,3;1) = 8 + 32 log 2 - 64 G/pi - 32/pi",
        citation="multiply the C(s) expansion by s and integrate over [0,1]",
        lhs=_pfq_spec([1.0, 1.0, 1.5, 1.5], [2.0, 2.0, 3.0], "1"),
        rhs=EvalSpec("expr", {"expr": "8 + 32*log2 - 64*G/pi - 32/pi"}),
        tol=1e-9,
    ),
    Identity(
        id="pow2",
        description="4F3(1,1,3/2,3/2;2,3,3;1) = 96 + 64 log 2 - 128 G/pi - 320/pi",
        citation="multiply the C(s) expansion by s log s and integrate; uses (3)_n = ((n+2)/2)(2)_n",
        lhs=_pfq_spec([1.0, 1.0, 1.5, 1.5], [2.0, 3.0, 3.0], "1"),
        rhs=EvalSpec("expr", {"expr": "96 + 64*log2 - 128*G/pi - 320/pi"}),
        tol=1e-9,
    ),
    Identity(
        id="pow3",
        description="4F3(1,1,3/2,3/2;2,2,4;1) = 18 + 48 log 2 - 96 G/pi - 208/(3 pi)",
        citation="multiply the C(s) expansion by s^3 and integrate; uses (4)_n = ((n+3)/3)(3)_n",
        lhs=_pfq_spec([1.0, 1.0, 1.5, 1.5], [2.0, 2.0, 4.0], "1"),
        rhs=EvalSpec("expr", {"expr": "18 + 48*log2 - 96*G/pi - 208/(3*pi)"}),
        tol=1e-9,
    ),
    Identity(
        id="ls23_inner",
        description="int_0^1 s C(s) ds = 1/2 - pi/8 + G - (pi/4) log 2 (order of integration switched)",
        citation="double integral of the log kernel weighted by s",
        lhs=EvalSpec("double_quad", {"weight": "s"}),
        rhs=EvalSpec("expr", {"expr": "0.5 - pi/8 + G - (pi/4)*log2"}),
        tol=1e-8,
    ),
    Identity(
        id="ls23b_inner",
        description="int_0^1 s log(s) C(s) ds = 3 pi/8 + (pi/8) log 2 - G/2 - 5/4",
        citation="double integral of the log kernel weighted by s log s",
        lhs=EvalSpec("double_quad", {"weight": "s*log(s)"}),
        rhs=EvalSpec("expr", {"expr": "3*pi/8 + (pi/8)*log2 - G/2 - 5/4"}),
        tol=1e-8,
    ),
    Identity(
        id="e2_parametric",
        description="B(s) = (pi/2) s 3F2(-1/2,1/2,1/2;1,3/2;s^2)",
        citation="termwise integration of E's hypergeometric series",
        lhs=EvalSpec("integral", {"name": "B"}),
        rhs=_pfq_spec([-0.5, 0.5, 0.5], [1.0, 1.5], "s*s", prefactor="(pi/2)*s"),
        tol=1e-10,
        points=_S_GRID,
        grid_kind="s",
    ),
    Identity(
        id="corollary_3f2",
        description="1/2 + G = (pi/2) 3F2(-1/2,1/2,1/2;1,3/2;1)",
        citation="Adamchik, p. 7, eq. 20",
        lhs=EvalSpec("expr", {"expr": "0.5 + G"}),
        rhs=_pfq_spec([-0.5, 0.5, 0.5], [1.0, 1.5], "1", prefactor="pi/2"),
        tol=1e-10,
    ),
    Identity(
        id="b1_value",
        description="B(1) = int_0^1 (arcsin x + x sqrt(1-x^2))/(2x sqrt(1-x^2)) dx = 1/2 + G",
        citation="Byrd & Friedman, entry 615.01, p. 274",
        lhs=EvalSpec("integral", {"name": "B", "at": "1"}),
        rhs=EvalSpec("expr", {"expr": "0.5 + G"}),
        tol=1e-10,
    ),
    Identity(
        id="summa_relation",
        description="C(s) + D(s) = pi log(s/2)",
        citation="splitting log(1-(1-s^2x^2)) into log s + log x terms",
        lhs=EvalSpec("cd_sum", {}),
        rhs=EvalSpec("expr", {"expr": "pi*log(s/2)"}),
        tol=1e-9,
        points=(0.2, 0.5, 0.8, 1.0),
        grid_kind="s",
    ),
    Identity(
        id="a_prime_k",
        description="A'(s) = K(s) (differentiation under the integral sign)",
        citation="derivative of the arcsine-kernel integral",
        lhs=EvalSpec("central_diff", {"name": "A", "h": 1e-3}),
        rhs=EvalSpec("elliptic", {"expr": "K(s)"}),
        tol=1e-6,
        points=_DERIV_GRID,
        grid_kind="s",
    ),
    Identity(
        id="b_prime_e",
        description="B'(s) = E(s)",
        citation="derivative of the mixed arcsine/algebraic kernel",
        lhs=EvalSpec("central_diff", {"name": "B", "h": 1e-3}),
        rhs=EvalSpec("elliptic", {"expr": "E(s)"}),
        tol=1e-6,
        points=_DERIV_GRID,
        grid_kind="s",
    ),
    Identity(
        id="eics1_derivative",
        description="C'(s) = (pi/2 - K(s))/s",
        citation="differentiation under the integral sign in the C kernel",
        lhs=EvalSpec("central_diff", {"name": "C", "h": 1e-3}),
        rhs=EvalSpec("elliptic", {"expr": "(pi/2 - K(s))/s"}),
        tol=1e-6,
        points=_DERIV_GRID,
        grid_kind="s",
    ),
    Identity(
        id="eids1_derivative",
        description="D'(s) = (pi/2 + K(s))/s",
        citation="differentiation under the integral sign in the D kernel",
        lhs=EvalSpec("central_diff", {"name": "D", "h": 1e-3}),
        rhs=EvalSpec("elliptic", {"expr": "(pi/2 + K(s))/s"}),
        tol=1e-6,
        points=_DERIV_GRID,
        grid_kind="s",
    ),
    Identity(
        id="logsine",
        description="int_0^{pi/2} log(sin x) dx = -(pi/2) log 2",
        citation="Euler's log-sine integral",
        lhs=EvalSpec("quad", {"integrand": "log_sin"}),
        rhs=EvalSpec("expr", {"expr": "-(pi/2)*log2"}),
        tol=1e-11,
    ),
    Identity(
        id="logcosine",
        description="int_0^{pi/2} log(cos x) dx = -(pi/2) log 2",
        citation="Euler's log-cosine integral",
        lhs=EvalSpec("quad", {"integrand": "log_cos"}),
        rhs=EvalSpec("expr", {"expr": "-(pi/2)*log2"}),
        tol=1e-11,
    ),
    Identity(
        id="g_routes",
        description="five independent routes to Catalan's constant agree with the printed 12-digit value",
        citation="G = sum (-1)^n/(2n+1)^2 ~ 0.915965594177 (Catalan 1865; Glaisher 1877)",
        lhs=EvalSpec("catalan", {}),
        rhs=EvalSpec("expr", {"expr": repr(G_PRINTED)}),
        tol=1e-11,
        points=integrals.CATALAN_METHODS,
        grid_kind="method",
    ),
)


def registry() -> list[Identity]:
    """All verifiable identities, in stable order."""
    return list(_REGISTRY)


def _by_id() -> dict[str, Identity]:
    return {ident.id: ident for ident in _REGISTRY}


def _check_point(ident: Identity, s: Point, tol: float) -> VerificationResult:
    try:
        lhs = evaluate_spec(ident.lhs, s)
        rhs = evaluate_spec(ident.rhs, s)
    except Exception as exc:  # recorded, not raised: failures are data
        return VerificationResult(
            identity_id=ident.id, param=s,
            lhs_value=math.nan, rhs_value=math.nan,
            abs_residual=math.nan, rel_residual=math.nan,
            tol=tol, passed=False,
            lhs_method="-", rhs_method="-", effort=0,
            error=f"{type(exc).__name__}: {exc}",
        )
    abs_res = abs(lhs.value - rhs.value)
    scale = max(abs(lhs.value), abs(rhs.value))
    rel_res = abs_res / scale if scale > 0 else 0.0
    return VerificationResult(
        identity_id=ident.id, param=s,
        lhs_value=lhs.value, rhs_value=rhs.value,
        abs_residual=abs_res, rel_residual=rel_res,
        tol=tol, passed=(abs_res <= tol or rel_res <= tol),
        lhs_method=lhs.method, rhs_method=rhs.method,
        effort=lhs.effort + rhs.effort,
    )


def verify(identity_id: str, tol_override: Optional[float] = None,
           grid: Optional[tuple] = None) -> list[VerificationResult]:
    """Check one identity at every point of its domain.

    Evaluation failures become failed results, never exceptions.  A grid
    override applies only to identities parametric in s.
    """
    table = _by_id()
    if identity_id not in table:
        known = ", ".join(sorted(table))
        raise KeyError(f"unknown identity {identity_id!r}; known ids: {known}")
    ident = table[identity_id]
    tol = tol_override if tol_override is not None else ident.tol
    points = ident.points
    if grid is not None and ident.grid_kind == "s":
        points = tuple(grid)
    return [_check_point(ident, s, tol) for s in points]


def verify_all(tol_scale: float = 1.0, ids: Optional[list[str]] = None,
               grid: Optional[tuple] = None, max_workers: Optional[int] = None,
               tol_override: Optional[float] = None) -> Report:
    """Verify every registry identity (or the listed subset) and aggregate.

    tol_scale multiplies each identity's tolerance; tol_override replaces
    it outright.  Identities may be checked concurrently (they are pure);
    records are assembled in registry order regardless of scheduling, so
    reports are deterministic.
    """
    if tol_scale <= 0:
        raise ValueError("tol_scale must be positive")
    selected = [i for i in _REGISTRY if ids is None or i.id in set(ids)]
    start = time.perf_counter()

    def run(ident: Identity) -> list[VerificationResult]:
        tol = tol_override if tol_override is not None else ident.tol * tol_scale
        return verify(ident.id, tol_override=tol, grid=grid)

    if max_workers and max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            per_identity = list(pool.map(run, selected))
    else:
        per_identity = [run(ident) for ident in selected]
    wallclock = time.perf_counter() - start

    records: list[VerificationResult] = []
    passed = 0
    for ident, results in zip(selected, per_identity):
        records.extend(results)
        passed += all(r.passed for r in results)
    residuals = [r.abs_residual for r in records if not math.isnan(r.abs_residual)]
    return Report(
        version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        records=tuple(records),
        total=len(selected),
        passed=passed,
        failed=len(selected) - passed,
        worst_residual=max(residuals) if residuals else math.nan,
        wallclock=wallclock,
    )
