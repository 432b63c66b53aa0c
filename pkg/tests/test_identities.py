import math

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from catalan_hyperlab import identities, integrals
from catalan_hyperlab.identities import (
    EvalSpec,
    evaluate_spec,
    reference_catalan,
    registry,
    verify,
    verify_all,
)
from catalan_hyperlab.sfcore import pochhammer

G12 = 0.915965594177

#: ids whose two sides are both accelerated series by construction (the
#: transformation identities relate one unit-argument series to another);
#: their independence lies in the distinct term streams, not the tags.
SERIES_VS_SERIES = {"ramanujan_3f2", "berndt_transform"}


@pytest.fixture(scope="module")
def full_report():
    return verify_all()


# ---------------------------------------------------------------- registry

def test_registry_contains_the_mandatory_entries():
    ids = {i.id for i in registry()}
    assert "ramanujan_3f2" in ids
    mandatory = {
        "berndt_transform", "entry_prodigiii", "whipple_quadratic",
        "e1_parametric", "a1_value", "eics_parametric", "nick_value",
        "nick1_variant", "adamchik_4f3", "campbell_4f3", "binom_bridge",
        "partial_fraction_split", "first_split_series", "second_split_series",
        "pow1", "pow2", "pow3", "ls23_inner", "ls23b_inner", "e2_parametric",
        "corollary_3f2", "summa_relation", "eids1_derivative", "logsine",
        "logcosine", "g_routes",
    }
    assert mandatory <= ids


def test_registry_size_and_integrity():
    entries = registry()
    assert len(entries) >= 24
    ids = [i.id for i in entries]
    assert len(ids) == len(set(ids))
    for ident in entries:
        assert ident.citation.strip()
        assert ident.description.strip()
        assert ident.tol > 0
        assert ident.points
        assert ident.lhs != ident.rhs
        # every named route must exist
        assert ident.lhs.route in identities._ROUTES
        assert ident.rhs.route in identities._ROUTES


def test_registry_order_is_stable():
    assert [i.id for i in registry()] == [i.id for i in registry()]


# ------------------------------------------------------------------ verify

def test_verify_ramanujan():
    results = verify("ramanujan_3f2")
    assert len(results) == 1
    r = results[0]
    assert r.passed and r.abs_residual <= 1e-10
    # lhs comes from the beta-series Catalan route, rhs from the
    # accelerated pfq: the streams differ even though both accelerate
    assert r.lhs_method == "accelerated"
    assert r.rhs_method == "accelerated"


def test_verify_pow1_value():
    (r,) = verify("pow1")
    assert r.passed and r.abs_residual <= 1e-9
    assert r.rhs_value == pytest.approx(1.33490, abs=2e-5)


def test_verify_e1_parametric_grid():
    results = verify("e1_parametric")
    assert len(results) == 9
    assert all(r.passed for r in results)


def test_verify_whipple_grid():
    results = verify("whipple_quadratic")
    assert len(results) == 6
    assert all(r.abs_residual <= 1e-10 for r in results)
    methods = {r.param: r.lhs_method for r in results}
    # mapped argument leaves the series' reach at x = -0.9 and -0.5
    assert methods[-0.9] == "quadrature"
    assert methods[0.5] == "direct-series"


def test_verify_unknown_id():
    with pytest.raises(KeyError):
        verify("bogus_identity")


def test_verify_grid_override():
    results = verify("e1_parametric", grid=(0.25, 0.35))
    assert [r.param for r in results] == [0.25, 0.35]
    assert all(r.passed for r in results)
    # non-s grids ignore the override
    results = verify("berndt_transform", grid=(0.25,))
    assert len(results) == 5


def test_verify_records_failures_instead_of_raising(monkeypatch):
    def boom(*args, **kwargs):
        raise RuntimeError("synthetic failure")

    monkeypatch.setattr(integrals, "parametric_integral", boom)
    results = verify("a1_value")
    assert len(results) == 1
    assert not results[0].passed
    assert "synthetic failure" in results[0].error


# -------------------------------------------------------------- verify_all

def test_verify_all_passes(full_report):
    assert full_report.failed == 0
    assert full_report.passed == full_report.total == len(registry())


def test_verify_all_is_deterministic(full_report):
    again = verify_all()
    assert len(again.records) == len(full_report.records)
    for a, b in zip(full_report.records, again.records):
        assert a.lhs_value == b.lhs_value
        assert a.rhs_value == b.rhs_value
        assert a.abs_residual == b.abs_residual


def test_verify_all_concurrent_matches_sequential(full_report):
    threaded = verify_all(max_workers=4)
    for a, b in zip(full_report.records, threaded.records):
        assert a.identity_id == b.identity_id and a.lhs_value == b.lhs_value


def test_tightening_tolerances_fails_the_stencil_identities():
    # scaling the tolerances by 1e-6 pushes the stencil budget to 1e-12,
    # below the five-point truncation on most of the grid (B' = E is the
    # one stencil clean enough to survive even that)
    report = verify_all(tol_scale=1e-6)
    failed = {r.identity_id for r in report.records if not r.passed}
    assert {"a_prime_k", "eics1_derivative", "eids1_derivative"} <= failed


def test_verify_all_subset_and_total():
    report = verify_all(ids=["logsine", "logcosine"])
    assert report.total == 2
    assert {r.identity_id for r in report.records} == {"logsine", "logcosine"}


def test_route_independence(full_report):
    for r in full_report.records:
        if r.identity_id in SERIES_VS_SERIES:
            continue
        assert r.lhs_method != r.rhs_method, r.identity_id
    for ident in registry():
        if ident.id in SERIES_VS_SERIES:
            assert ident.lhs != ident.rhs  # distinct streams at least


def test_residual_hierarchy(full_report):
    stencil = {"a_prime_k", "b_prime_e", "eics1_derivative", "eids1_derivative"}
    for r in full_report.records:
        if r.identity_id in stencil:
            assert r.tol == 1e-6  # labeled with the stencil budget
        elif "closed-form" in (r.lhs_method, r.rhs_method) and "quadrature" not in (
            r.lhs_method,
            r.rhs_method,
        ):
            assert r.abs_residual <= 1e-10, r.identity_id


def test_summary_counts_match_record_tallies(full_report):
    failed_ids = {r.identity_id for r in full_report.records if not r.passed}
    assert full_report.failed == len(failed_ids)
    assert full_report.passed + full_report.failed == full_report.total


# ----------------------------------------------------- specific identities

def test_berndt_specialisation_reproduces_prodigiii():
    # at n = -1/2 the transform's left side is the prodigiii series and the
    # prefactor collapses to pi/2 exactly
    table = {i.id: i for i in registry()}
    berndt, prodigiii = table["berndt_transform"], table["entry_prodigiii"]
    upper = [identities._eval_expr(a, -0.5) for a in berndt.lhs.params["upper"]]
    lower = [identities._eval_expr(b, -0.5) for b in berndt.lhs.params["lower"]]
    assert upper == list(map(float, prodigiii.lhs.params["upper"]))
    assert lower == list(map(float, prodigiii.lhs.params["lower"]))
    pref = identities._eval_expr(berndt.rhs.params["prefactor"], -0.5)
    assert pref == pytest.approx(math.pi / 2.0, rel=1e-14)
    # and the common value is 2G
    lhs = evaluate_spec(berndt.lhs, -0.5)
    assert lhs.value == pytest.approx(2.0 * G12, abs=1e-10)


def test_g_routes_against_printed_decimal(full_report):
    records = [r for r in full_report.records if r.identity_id == "g_routes"]
    assert {r.param for r in records} == set(integrals.CATALAN_METHODS)
    for r in records:
        assert abs(r.lhs_value - G12) <= 1e-11


@given(n=st.integers(min_value=0, max_value=40))
def test_pochhammer_rescalings_used_by_pow2_pow3(n):
    # (3)_n = ((n+2)/2) (2)_n and (4)_n = ((n+3)/3) (3)_n
    assert pochhammer(3.0, n) == pytest.approx((n + 2) / 2.0 * pochhammer(2.0, n), rel=1e-15)
    assert pochhammer(4.0, n) == pytest.approx((n + 3) / 3.0 * pochhammer(3.0, n), rel=1e-15)


def test_reference_catalan_matches_printed_digits():
    assert abs(reference_catalan() - G12) <= 5e-13


def test_whipple_lhs_integral_form_matches_series_where_both_apply():
    # at x = -0.1 the mapped argument is about -0.494: both the direct
    # series and the arcsinh integral representation are valid
    from catalan_hyperlab.sfcore import PFQParams, pfq

    x = -0.1
    w = 4.0 * x / (1.0 + x) ** 2
    series = pfq(PFQParams([0.5, 1.0, 1.0], [1.5, 1.5], w), 1e-13)
    hybrid = evaluate_spec(EvalSpec("whipple_lhs", {}), x)
    assert hybrid.value == pytest.approx(series.value, abs=1e-12)


def test_evaluate_spec_unknown_route():
    with pytest.raises(ValueError):
        evaluate_spec(EvalSpec("teleport", {}), 0.5)
