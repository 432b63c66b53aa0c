import json
import subprocess
import sys

import pytest

from catalan_hyperlab import identities
from catalan_hyperlab.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------- eval

def test_eval_elliptic_k(capsys):
    code, out, _ = run_cli(capsys, "eval", "K", "0.5")
    assert code == 0
    assert "1.6857503548126" in out
    err_part = out.split("err<=")[1].split()[0]
    assert float(err_part) <= 1e-13


def test_eval_catalan_prints_the_printed_digits(capsys):
    code, out, _ = run_cli(capsys, "eval", "G", "--method", "beta_series")
    assert code == 0
    assert "0.915965594177" in out


def test_eval_k_at_one_is_a_domain_error(capsys):
    code, out, err = run_cli(capsys, "eval", "K", "1.0")
    assert code == 1
    assert "diverges" in err
    assert out == ""


def test_eval_pfq(capsys):
    code, out, _ = run_cli(
        capsys, "eval", "pfq", "1.0", "--upper", "0.5", "0.5", "0.5", "--lower", "1", "1.5"
    )
    assert code == 0
    assert "1.1662436161233" in out


def test_eval_pfq_without_parameters_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "eval", "pfq", "1.0")
    assert code == 2
    assert "usage error" in err


def test_eval_wrong_arity(capsys):
    code, _, err = run_cli(capsys, "eval", "K")
    assert code == 2


def test_eval_json_document(capsys):
    code, out, _ = run_cli(capsys, "eval", "A", "0.5", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["name"] == "A"
    assert doc["method"] == "quadrature"
    assert doc["converged"] is True
    assert isinstance(doc["value"], str)  # decimal strings by design


def test_eval_json_matches_plain_value(capsys):
    _, out_json, _ = run_cli(capsys, "eval", "B", "0.6", "--json")
    _, out_plain, _ = run_cli(capsys, "eval", "B", "0.6")
    value = json.loads(out_json)["value"]
    assert value in out_plain


# --------------------------------------------------------------- verify

def test_verify_single_identity_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "ramanujan_3f2", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"] == {
        "total": 1,
        "passed": 1,
        "failed": 0,
        "worst_residual": doc["summary"]["worst_residual"],
    }
    (record,) = doc["records"]
    assert record["id"] == "ramanujan_3f2"
    assert record["pass"] is True
    assert record["citation"]


def test_verify_unknown_id(capsys):
    code, _, err = run_cli(capsys, "verify", "bogus_id")
    assert code == 2
    assert "ramanujan_3f2" in err  # the valid ids are listed


def test_verify_without_ids(capsys):
    code, _, err = run_cli(capsys, "verify")
    assert code == 2


def test_verify_table_output(capsys):
    code, out, _ = run_cli(capsys, "verify", "logsine", "logcosine")
    assert code == 0
    assert "PASS" in out and "FAIL" not in out
    assert "identities: 2  passed: 2  failed: 0" in out


def test_verify_exit_one_on_failure(capsys):
    # tightening all tolerances a million-fold must fail the stencil checks
    code, out, _ = run_cli(capsys, "verify", "eids1_derivative", "--tol", "1e-12")
    assert code == 1
    assert "FAIL" in out


def test_verify_grid_override(capsys):
    code, out, _ = run_cli(capsys, "verify", "e1_parametric", "--grid", "0.2:0.4:0.1", "--json")
    assert code == 0
    doc = json.loads(out)
    assert [r["param"] for r in doc["records"]] == ["0.2", "0.3", "0.4"]


def test_verify_bad_grid(capsys):
    code, _, err = run_cli(capsys, "verify", "e1_parametric", "--grid", "nonsense")
    assert code == 2


def test_verify_json_stable_across_runs(capsys):
    _, out1, _ = run_cli(capsys, "verify", "ramanujan_3f2", "a1_value", "--json")
    _, out2, _ = run_cli(capsys, "verify", "ramanujan_3f2", "a1_value", "--json")
    doc1, doc2 = json.loads(out1), json.loads(out2)
    doc1.pop("timestamp"), doc2.pop("timestamp")
    assert doc1 == doc2  # golden comparison modulo the timestamp


def test_verify_flags_do_not_change_values(capsys):
    _, plain, _ = run_cli(capsys, "verify", "logsine", "--json")
    _, jobs, _ = run_cli(capsys, "verify", "logsine", "--json", "--jobs", "3")
    a, b = json.loads(plain), json.loads(jobs)
    assert [r["lhs"] for r in a["records"]] == [r["lhs"] for r in b["records"]]


# -------------------------------------------------------------- catalog

def test_catalog_lists_every_identity(capsys):
    code, out, _ = run_cli(capsys, "catalog")
    assert code == 0
    lines = [line for line in out.splitlines() if line.strip()]
    assert len(lines) == len(identities.registry())
    assert any(line.startswith("ramanujan_3f2") for line in lines)


def test_catalog_json_round_trips(capsys):
    code, out, _ = run_cli(capsys, "catalog", "--json")
    assert code == 0
    doc = json.loads(out)
    assert json.loads(json.dumps(doc)) == doc
    assert [entry["id"] for entry in doc] == [i.id for i in identities.registry()]
    for entry in doc:
        assert entry["citation"]
        assert "route" in entry["lhs"] and "route" in entry["rhs"]


# ------------------------------------------------------------ end to end

def test_module_invocation_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "catalan_hyperlab", "eval", "G"],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0
    assert "0.915965594177" in proc.stdout
