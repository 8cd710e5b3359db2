import dataclasses
import json
import sys

import pytest

from castbridge.evalrun import (
    EvalManifest, HarnessUnavailable, ProblemSpec, evaluate_sample,
    list_samples, load_manifest, run_eval, run_harness, syntactic_gate,
)
from castbridge.metrics import DomainError

from conftest import FIXTURES

STUB = f"{sys.executable} {FIXTURES / 'stub_harness.py'}"
SCENARIO = {"entities": [], "assertions": []}


def write_manifest(tmp_path, data):
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def minimal_manifest(tmp_path, **overrides):
    samples = tmp_path / "samples"
    samples.mkdir(exist_ok=True)
    (samples / "a.cast").write_text("[ Module [ x = 1 ] ]", encoding="utf-8")
    data = {
        "problems": [{"id": "p1", "samples_path": "samples", "mode": "cast"}],
        "k_values": [1],
        "harness_endpoint": "none",
    }
    data.update(overrides)
    return write_manifest(tmp_path, data)


# --- manifest loading ---


def test_load_minimal_manifest(tmp_path):
    manifest = load_manifest(minimal_manifest(tmp_path))
    assert manifest.k_values == (1,)
    assert manifest.harness_endpoint == "none"
    assert manifest.timeout_s == 10.0
    assert manifest.problems[0].problem_id == "p1"
    assert manifest.problems[0].samples_path == tmp_path / "samples"
    assert manifest.problems[0].scenario_path is None


def test_load_rejects_bad_json(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(DomainError):
        load_manifest(path)


def test_load_rejects_non_object(tmp_path):
    path = write_manifest(tmp_path, [1, 2])
    with pytest.raises(DomainError):
        load_manifest(path)


def test_load_rejects_empty_problems(tmp_path):
    path = write_manifest(tmp_path, {"problems": []})
    with pytest.raises(DomainError):
        load_manifest(path)


def test_load_rejects_duplicate_ids(tmp_path):
    path = write_manifest(tmp_path, {
        "problems": [
            {"id": "p", "samples_path": "s", "mode": "cast"},
            {"id": "p", "samples_path": "s", "mode": "cast"},
        ]
    })
    with pytest.raises(DomainError, match="duplicate"):
        load_manifest(path)


def test_load_rejects_unknown_mode(tmp_path):
    path = write_manifest(tmp_path, {
        "problems": [{"id": "p", "samples_path": "s", "mode": "bytecode"}]
    })
    with pytest.raises(DomainError, match="mode"):
        load_manifest(path)


def test_load_rejects_missing_samples_path(tmp_path):
    path = write_manifest(tmp_path, {"problems": [{"id": "p", "mode": "cast"}]})
    with pytest.raises(DomainError, match="samples_path"):
        load_manifest(path)


def test_load_rejects_bad_k_values(tmp_path):
    path = minimal_manifest(tmp_path, k_values=[1, 0])
    with pytest.raises(DomainError, match="k_values"):
        load_manifest(path)
    path = minimal_manifest(tmp_path, k_values=[1.5])
    with pytest.raises(DomainError, match="k_values"):
        load_manifest(path)


def test_load_defaults_k_values(tmp_path):
    path = minimal_manifest(tmp_path)
    data = json.loads(path.read_text(encoding="utf-8"))
    del data["k_values"]
    path = write_manifest(tmp_path, data)
    assert load_manifest(path).k_values == (1,)


def test_load_rejects_bad_harness(tmp_path):
    path = minimal_manifest(tmp_path, harness_endpoint=17)
    with pytest.raises(DomainError, match="harness"):
        load_manifest(path)


def test_load_rejects_bad_timeout(tmp_path):
    path = minimal_manifest(tmp_path, timeout_s=0)
    with pytest.raises(DomainError, match="timeout"):
        load_manifest(path)


def test_paths_resolve_relative_to_manifest(tmp_path):
    nested = tmp_path / "deep"
    nested.mkdir()
    path = write_manifest(nested, {
        "problems": [{
            "id": "p", "samples_path": "samples",
            "scenario_path": "scen.json", "mode": "code",
        }]
    })
    manifest = load_manifest(path)
    assert manifest.problems[0].samples_path == nested / "samples"
    assert manifest.problems[0].scenario_path == nested / "scen.json"


def test_absolute_paths_kept(tmp_path):
    samples = tmp_path / "elsewhere"
    samples.mkdir()
    path = write_manifest(tmp_path, {
        "problems": [{
            "id": "p", "samples_path": str(samples), "mode": "cast",
        }]
    })
    assert load_manifest(path).problems[0].samples_path == samples


# --- sample listing ---


def test_list_samples_sorted(tmp_path):
    for name in ("c.cast", "a.cast", "b.cast"):
        (tmp_path / name).write_text("x", encoding="utf-8")
    (tmp_path / "sub").mkdir()
    names = [p.name for p in list_samples(tmp_path)]
    assert names == ["a.cast", "b.cast", "c.cast"]


def test_list_samples_requires_directory(tmp_path):
    with pytest.raises(DomainError):
        list_samples(tmp_path / "missing")


def test_list_samples_rejects_empty(tmp_path):
    with pytest.raises(DomainError):
        list_samples(tmp_path)


# --- syntactic gate ---


def test_gate_cast_ok():
    code, failed = syntactic_gate("[ Module [ x = 1 ] ]", "cast")
    assert failed is None
    assert code == "x = 1\n"


def test_gate_cast_bracket_error():
    code, failed = syntactic_gate("[ Module [ x = 1 ]", "cast")
    assert code is None
    assert failed.parse_error
    assert failed.expand_error is None


def test_gate_cast_expand_error():
    code, failed = syntactic_gate("[ Module [ x = ] ]", "cast")
    assert code is None
    assert failed.expand_error
    assert failed.parse_error is None


def test_gate_code_ok():
    code, failed = syntactic_gate("x = 1\n", "code")
    assert failed is None
    assert code == "x = 1\n"


def test_gate_code_syntax_error():
    code, failed = syntactic_gate("x = = 1", "code")
    assert code is None
    assert failed.parse_error


def test_gate_code_out_of_subset():
    code, failed = syntactic_gate("def f():\n    pass\n", "code")
    assert code is None
    assert "function definition" in failed.parse_error


# --- harness protocol ---


def test_harness_ok_reply():
    reply = run_harness(STUB, SCENARIO, "x = 1\n", 5.0)
    assert reply["status"] == "ok"


def test_harness_exception_reply():
    reply = run_harness(STUB, SCENARIO, "trigger_exception()\n", 5.0)
    assert reply["status"] == "exception"
    assert "NoneType" in reply["detail"]


def test_harness_assertion_reply():
    reply = run_harness(STUB, SCENARIO, "trigger_assertion()\n", 5.0)
    assert reply["status"] == "assertion_failure"


def test_harness_timeout_status_reply():
    reply = run_harness(STUB, SCENARIO, "trigger_timeout()\n", 5.0)
    assert reply["status"] == "timeout"


def test_harness_crash_becomes_exception():
    reply = run_harness(STUB, SCENARIO, "trigger_crash()\n", 5.0)
    assert reply["status"] == "exception"
    assert "exited with 5" in reply["detail"]


def test_harness_garbage_reply_becomes_exception():
    reply = run_harness(STUB, SCENARIO, "trigger_garbage()\n", 5.0)
    assert reply["status"] == "exception"
    assert "unreadable" in reply["detail"]


def test_harness_missing_executable():
    with pytest.raises(HarnessUnavailable):
        run_harness("/no/such/binary", SCENARIO, "x = 1\n", 5.0)


def test_harness_empty_command():
    with pytest.raises(HarnessUnavailable):
        run_harness("   ", SCENARIO, "x = 1\n", 5.0)


def test_harness_request_shape(tmp_path):
    echo = tmp_path / "echo_harness.py"
    echo.write_text(
        "import json, sys\n"
        "req = json.load(sys.stdin)\n"
        "detail = json.dumps(sorted(req)) + ' ' + str(req['timeout_s'])\n"
        "print(json.dumps({'status': 'ok', 'detail': detail}))\n",
        encoding="utf-8",
    )
    reply = run_harness(f"{sys.executable} {echo}", SCENARIO, "x = 1\n", 3.5)
    assert reply["detail"] == '["code", "scenario", "timeout_s"] 3.5'


# --- evaluate_sample ---


def test_evaluate_sample_skips_harness_without_scenario():
    trace = evaluate_sample("[ Module [ x = 1 ] ]", "cast", None, STUB, 5.0)
    assert trace.exec_status is None
    assert trace.parse_error is None


def test_evaluate_sample_runs_harness():
    trace = evaluate_sample(
        "[ Module [ trigger_assertion() ] ]", "cast", SCENARIO, STUB, 5.0
    )
    assert trace.exec_status == "assertion_failure"


def test_evaluate_sample_failed_gate_never_reaches_harness():
    trace = evaluate_sample(
        "[ Module [ x = ] ]", "cast", SCENARIO, "/no/such/binary", 5.0
    )
    assert trace.expand_error
    assert trace.exec_status is None


# --- run_eval ---


def taxonomy_manifest():
    base = FIXTURES / "eval"
    manifest = load_manifest(base / "manifest.json")
    return dataclasses.replace(manifest, harness_endpoint=STUB)


def test_run_eval_requires_harness_when_scenarios_present():
    manifest = load_manifest(FIXTURES / "eval" / "manifest.json")
    assert manifest.harness_endpoint == "none"
    with pytest.raises(HarnessUnavailable):
        run_eval(manifest)


def test_run_eval_taxonomy_document():
    doc = run_eval(taxonomy_manifest())
    problem = doc["problems"][0]
    assert problem["n"] == 4
    assert problem["c"] == 1
    assert problem["outcomes"] == ["syntactic", "logical", "semantic", "pass"]
    cats = doc["summary"]["categories"]
    for cat in ("syntactic", "logical", "semantic", "pass"):
        assert cats[cat]["fraction"] == 0.25
    assert problem["pass_at"]["1"] == pytest.approx(0.25)


def test_run_eval_rejects_k_above_n():
    manifest = dataclasses.replace(taxonomy_manifest(), k_values=(1, 5))
    with pytest.raises(DomainError, match="k=5"):
        run_eval(manifest)


def test_run_eval_without_scenarios_gates_only(tmp_path):
    samples = tmp_path / "samples"
    samples.mkdir()
    (samples / "a.cast").write_text("[ Module [ x = 1 ] ]", encoding="utf-8")
    (samples / "b.cast").write_text("[ Module [ x = ] ]", encoding="utf-8")
    manifest = EvalManifest(
        (ProblemSpec("only", samples, None, "cast"),), (1, 2), "none", 5.0
    )
    doc = run_eval(manifest)
    problem = doc["problems"][0]
    assert problem["outcomes"] == ["pass", "syntactic"]
    assert problem["pass_at"]["2"] == 1.0


def test_run_eval_code_mode(tmp_path):
    samples = tmp_path / "samples"
    samples.mkdir()
    (samples / "a.py").write_text("import os\n", encoding="utf-8")
    (samples / "b.py").write_text("x = f(1)\n", encoding="utf-8")
    manifest = EvalManifest(
        (ProblemSpec("codeonly", samples, None, "code"),), (1,), "none", 5.0
    )
    doc = run_eval(manifest)
    assert doc["problems"][0]["outcomes"] == ["syntactic", "pass"]


def test_run_eval_orders_problems_by_id(tmp_path):
    docs = {}
    for name in ("zeta", "alpha"):
        samples = tmp_path / name
        samples.mkdir()
        (samples / "a.cast").write_text("[ Module [ x = 1 ] ]", encoding="utf-8")
        docs[name] = ProblemSpec(name, samples, None, "cast")
    manifest = EvalManifest((docs["zeta"], docs["alpha"]), (1,), "none", 5.0)
    doc = run_eval(manifest)
    assert [p["id"] for p in doc["problems"]] == ["alpha", "zeta"]
