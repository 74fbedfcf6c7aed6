# tests/test_suites.py
import json
from fractions import Fraction

import pytest

import main
from core.budget import get_corpus_size, guard_size
from core.errors import PreconditionError, SizeGuardError, UnsupportedInstance
from core.executor import execute_checks, run_check
from core.report import SuiteReport, failed, passed, skipped
from core.validator import validate_verdict
from duality.doctrines import pair_by_name
from duality.gelfand import approximate_inverse, iota
from duality.two_duality import dual_morphism
from formats.codec import canonical_poset_json, morphism_from_json, morphism_to_json, poset_to_json
from order.poset import FinPoset, MonotoneMap, compose, identity
from scale.rational import fmt
from scale.umodules import FunctionModule
from suites.registry import SuiteRegistry

Q = Fraction

SUITE_NAMES = {
    "saturation", "sound4", "commutation", "cts-equiv", "interpolation", "hms", "birkhoff",
    "umod-metric", "stack", "urysohn", "gelfand-roundtrip", "kernel", "approx-inverse",
}

SHIFT = json.dumps({"pieces": [
    {"x0": "0", "x1": "3/4", "y0": "1/4", "y1": "1"},
    {"x0": "3/4", "x1": "1", "y0": "1", "y1": "1"},
]})


@pytest.fixture(scope="module")
def registry():
    return SuiteRegistry()


# ── registry ──

def test_every_suite_is_registered(registry):
    assert set(registry.suites) == SUITE_NAMES
    assert set(json.loads(registry.list_suites())) == SUITE_NAMES
    assert "interval-kernels" in registry.replayable


def test_unknown_names(registry):
    with pytest.raises(ValueError, match="not found"):
        registry.get("nope")
    with pytest.raises(ValueError):
        registry.replay({"check": "nope", "args": {}})


@pytest.mark.parametrize("name,size", [("kernel", 3), ("commutation", 2)])
def test_small_runs_pass(registry, name, size):
    report = registry.run(name, {"max_size": size, "seed": 1}, workers=1)
    assert report.passed, report.first_failure
    assert report.counts["fail"] == 0
    assert report.params == {"max_size": size, "seed": 1}


def test_reports_do_not_depend_on_the_pool(registry):
    one = registry.run("kernel", {"max_size": 3, "seed": 1}, workers=1)
    many = registry.run("kernel", {"max_size": 3, "seed": 1}, workers=3)
    assert json.dumps(one.to_json(), sort_keys=True) == json.dumps(many.to_json(), sort_keys=True)
    assert "wall_time" not in one.to_json()
    assert "wall_time" in one.to_json(timing=True)


def test_replay_reproduces_a_wrong_count(registry):
    bad = registry.replay({"check": "interval-kernels", "args": {"pair": "directed", "expected": 3}})
    assert not bad.ok
    assert bad.witness["args"] == {"pair": "directed", "expected": 3}
    good = registry.replay({"check": "interval-kernels", "args": {"pair": "directed", "expected": 2}})
    assert good.ok


# ── executor and validator ──

def _unsupported():
    raise UnsupportedInstance("not representable")


def _precondition():
    raise PreconditionError("bad input")


def test_check_outcomes():
    assert run_check("c", lambda: None, {}).ok
    assert run_check("c", lambda: True, {}).ok

    v = run_check("c", _unsupported, {})
    assert v.skipped and v.status == "skipped"

    v = run_check("c", _precondition, {})
    assert not v.ok
    assert v.failure_reason.startswith("PreconditionError")
    assert v.witness["check"] == "c"

    v = run_check("c", lambda x: ("too big", {"x": x}), {"x": 3})
    assert v.failure_reason == "too big"
    assert v.witness == {"check": "c", "args": {"x": 3}, "detail": {"x": 3}}

    v = run_check("c", lambda: "plain reason", {})
    assert v.failure_reason == "plain reason"

    v = run_check("c", lambda: failed("inner", "nope", [1]), {})
    assert v.witness == {"check": "c", "args": {}, "detail": [1]}


def test_results_come_back_in_submission_order():
    items = [("echo", {"i": i}) for i in range(12)]
    seen = []
    verdicts, elapsed = execute_checks(items, {"echo": lambda i: f"item {i}"}, workers=4,
                                       on_result=lambda k, v: seen.append(k))
    assert [v.failure_reason for v in verdicts] == [f"item {i}" for i in range(12)]
    assert sorted(seen) == list(range(12))
    assert elapsed >= 0


def test_failures_need_replayable_witnesses():
    assert validate_verdict(passed("c"), set())
    assert validate_verdict(skipped("c", "too large"), set())

    v = failed("c", "broken")
    assert not validate_verdict(v, {"c"})
    assert v.failure_reason == "broken (no witness attached)"

    v = failed("c", "broken", {"check": "other", "args": {}})
    assert not validate_verdict(v, {"c"})
    assert "unknown check" in v.failure_reason

    v = failed("c", "broken", {"check": "c", "args": {"x": object()}})
    assert not validate_verdict(v, {"c"})
    assert "not serialisable" in v.failure_reason

    assert validate_verdict(failed("c", "broken", {"check": "c", "args": {}}), {"c"})


def test_skipped_checks_do_not_fail_a_report():
    report = SuiteReport("demo")
    report.extend([passed("a"), skipped("b", "too large")])
    assert report.passed
    assert report.counts == {"pass": 1, "fail": 0, "skipped": 1}
    assert set(report.to_json()) == {"suite", "params", "counts", "checks", "passed"}


def test_size_guards():
    with pytest.raises(SizeGuardError):
        guard_size("waydown", 5, bound=4)
    guard_size("waydown", 4, bound=4)
    assert get_corpus_size("kernel", 2) == 2


# ── command line ──

def test_pl_eval(capsys):
    assert main.main(["--json", "pl", "eval", "--map", SHIFT, "--x", "7/8"]) == main.EXIT_PASS
    assert json.loads(capsys.readouterr().out) == {"value": "1"}
    assert main.main(["--json", "pl", "eval", "--map", SHIFT, "--x", "1/2"]) == main.EXIT_PASS
    assert json.loads(capsys.readouterr().out) == {"value": "3/4"}


def test_bad_input_is_a_usage_error(capsys):
    assert main.main(["pl", "eval", "--map", "{not json", "--x", "0"]) == main.EXIT_USAGE
    assert main.main(["suite", "run", "nope"]) == main.EXIT_USAGE


def test_precondition_failures_exit_one(capsys):
    assert main.main(["pl", "adjoint", "--map", SHIFT]) == main.EXIT_FAIL


def test_canonical_and_export(tmp_path, capsys, n5):
    src = tmp_path / "n5.json"
    src.write_text(json.dumps(poset_to_json(n5)))
    assert main.main(["--json", "posets", "canonical", "--input", str(src)]) == main.EXIT_PASS
    assert capsys.readouterr().out.strip() == canonical_poset_json(n5).strip()

    out = tmp_path / "n5.dot"
    assert main.main(["export", "dot", "--input", str(src), "--output", str(out)]) == main.EXIT_PASS
    text = out.read_text()
    assert "rankdir=BT" in text and text.count("->") == 5


def test_suite_run_and_replay(tmp_path, capsys):
    assert main.main(["--json", "suite", "run", "kernel", "--max-size", "2"]) == main.EXIT_PASS
    report = json.loads(capsys.readouterr().out)
    assert report["suite"] == "kernel" and report["passed"]

    failing = {"checks": [{"check": "interval-kernels", "status": "fail",
                           "witness": {"check": "interval-kernels", "args": {"pair": "all", "expected": 2}}}]}
    path = tmp_path / "report.json"
    path.write_text(json.dumps(failing))
    assert main.main(["--json", "replay", str(path)]) == main.EXIT_FAIL
    assert json.loads(capsys.readouterr().out)["reproduced"] == 1

    failing["checks"][0]["witness"]["args"]["expected"] = 3
    path.write_text(json.dumps(failing))
    assert main.main(["--json", "replay", str(path)]) == main.EXIT_PASS


def _chain_module(tmp_path, chain3):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"kind": "functions", "lattice": poset_to_json(chain3)}))
    return path


def test_approx_inverse_reads_a_module_file(tmp_path, capsys, chain3):
    A = FunctionModule(chain3)
    a = A.element([0, Q(3, 8), 1])
    expected = A.to_json(approximate_inverse(A, iota(A, a), 8))
    module = _chain_module(tmp_path, chain3)

    argv = ["--json", "gelfand", "approx-inverse", "--n", "8", "--module", str(module),
            "--a", json.dumps(A.to_json(a))]
    assert main.main(argv) == main.EXIT_PASS
    assert json.loads(capsys.readouterr().out) == {"n": 8, "element": expected}

    grades = {fmt(Q(i, 8)): iota(A, a)(Q(i, 8)).to_json() for i in range(9)}
    filters = tmp_path / "f.json"
    filters.write_text(json.dumps({"grades": grades}))
    argv = ["--json", "gelfand", "approx-inverse", "--n", "8", "--module", str(module), "--f", str(filters)]
    assert main.main(argv) == main.EXIT_PASS
    assert json.loads(capsys.readouterr().out) == {"n": 8, "element": expected}


def test_module_names_stay_shorthands(tmp_path, capsys):
    argv = ["--json", "umod", "le_r", "--module", "interval", "--a", "3/4", "--b", "1/2", "--r", "1/4"]
    assert main.main(argv) == main.EXIT_PASS
    assert json.loads(capsys.readouterr().out) == {"le_r": True}
    inline = '{"kind": "interval", "pair": "all"}'
    argv[4] = inline
    assert main.main(argv) == main.EXIT_PASS
    assert json.loads(capsys.readouterr().out) == {"le_r": True}

    assert main.main(["umod", "rho", "--module", "nope", "--a", "0", "--b", "0"]) == main.EXIT_USAGE
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kind": "functions", "lattice": poset_to_json(FinPoset.antichain(2))}))
    assert main.main(["umod", "rho", "--module", str(bad), "--a", "0", "--b", "0"]) == main.EXIT_USAGE


def test_dual_prints_morphism_tables(tmp_path, capsys, diamond, chain3):
    src = tmp_path / "diamond.json"
    src.write_text(json.dumps(poset_to_json(diamond)))
    assert main.main(["--json", "dual", "--input", str(src), "--doctrine", "all"]) == main.EXIT_PASS
    witness = json.loads(capsys.readouterr().out)["witness"]
    forward, backward = morphism_from_json(witness["forward"]), morphism_from_json(witness["backward"])
    assert forward.dom == diamond
    assert compose(backward, forward) == identity(diamond)

    pair = pair_by_name("directed")
    f = MonotoneMap(chain3, chain3, [1, 1, 2])
    argv = ["--json", "dual", "--doctrine", "directed", "--morphism", json.dumps(morphism_to_json(f))]
    assert main.main(argv) == main.EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert morphism_from_json(out["morphism"]) == dual_morphism(f, pair)

    assert main.main(["dual", "--doctrine", "directed"]) == main.EXIT_USAGE
