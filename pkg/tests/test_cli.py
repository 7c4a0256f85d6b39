import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from pentadet.cli import main
from pentadet.dispatch import compute, run_verify
from pentadet.model import PentaSpec, ToeplitzSpec, ImperfectSpec, spec_to_dict
from pentadet.oracle import LogDet

from conftest import random_penta

WORKED = {"type": "general", "n": 6, "k": 2, "L": [1] * 3, "l": [1] * 5, "d": [2] * 7, "r": [1] * 5, "R": [1] * 3}


@pytest.fixture
def write_spec(tmp_path):
    def _write(obj, name="spec.json"):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_auto_worked(capsys, write_spec):
    code, out = run(capsys, "compute", "--input", write_spec(WORKED), "--method", "auto", "--scalar", "rational")
    assert code == 0
    assert out == {"value": "16", "method_used": "reduce", "fallbacks_taken": []}


@pytest.mark.parametrize("method", ["dense", "reduce", "q3", "blocks"])
def test_forced_methods_worked(capsys, write_spec, method):
    code, out = run(capsys, "compute", "--input", write_spec(WORKED), "--method", method)
    assert (code, out["value"], out["method_used"]) == (0, "16", method)


def test_pivot_zero_exit(capsys, write_spec):
    doc = dict(WORKED, d=[0] + [2] * 6)
    code, out = run(capsys, "compute", "--input", write_spec(doc), "--method", "reduce")
    assert code == 4
    assert out["pivot"] == {"j": 0, "s": 1}
    assert "PivotZero(0,1)" in out["error"]


def test_auto_falls_back(capsys, write_spec):
    doc = dict(WORKED, d=[0] + [2] * 6)
    code, out = run(capsys, "compute", "--input", write_spec(doc))
    assert code == 0
    assert out["value"] == "-16" and out["method_used"] == "blocks"
    assert out["fallbacks_taken"] == [{"method": "reduce", "reason": "PivotZero(0,1)"}]


@pytest.mark.parametrize("method", ["theorem1", "toeplitz", "closed"])
def test_hypothesis_exit(capsys, write_spec, method):
    code, out = run(capsys, "compute", "--input", write_spec(WORKED), "--method", method)
    assert code == 3 and "error" in out


def test_bad_shape_exit(capsys, write_spec):
    doc = {"type": "toeplitz", "n": 5, "k": 3, "L": 1, "l": 1, "d": 1, "r": 1, "R": 1}
    code, _ = run(capsys, "compute", "--input", write_spec(doc))
    assert code == 3


@pytest.mark.parametrize("doc", ["{not json", json.dumps({"type": "general", "n": 6, "k": 2})])
def test_schema_exit(capsys, write_spec, doc):
    code, out = run(capsys, "compute", "--input", write_spec(doc))
    assert code == 2 and "schema" in out["error"]


def test_missing_file(capsys, tmp_path):
    code, _ = run(capsys, "compute", "--input", str(tmp_path / "nope.json"))
    assert code == 2


def test_toeplitz_inputs(capsys, write_spec):
    t = {"type": "toeplitz", "n": 6, "k": 2, "L": 1, "l": 1, "d": 2, "r": 1, "R": 1}
    code, out = run(capsys, "compute", "--input", write_spec(t))
    assert (code, out["value"], out["method_used"]) == (0, "16", "toeplitz")
    code, out = run(capsys, "compute", "--input", write_spec(t), "--method", "closed")
    assert (code, out["value"]) == (0, "16")
    imp = dict(t, type="imperfect", n=8, k=3, L=0, R=0, alpha="1", beta=0)
    for method in ("auto", "closed", "dense", "blocks"):
        code, out = run(capsys, "compute", "--input", write_spec(imp), "--method", method)
        assert (code, out["value"]) == (0, "1"), method


def test_closed_tabulated_range(capsys, write_spec):
    t = {"type": "toeplitz", "n": 29, "k": 4, "L": "1/2", "l": -1, "d": 3, "r": 2, "R": 1}  # q = 7, p = 2
    _, dense = run(capsys, "compute", "--input", write_spec(t), "--method", "dense")
    code, closed = run(capsys, "compute", "--input", write_spec(t), "--method", "closed")
    assert code == 0 and closed["value"] == dense["value"]
    t = dict(t, n=39, k=2)  # q = 20
    code, _ = run(capsys, "compute", "--input", write_spec(t), "--method", "closed")
    assert code == 3


def test_float_output(capsys, write_spec):
    code, out = run(capsys, "compute", "--input", write_spec(WORKED), "--scalar", "float")
    assert code == 0
    assert out["value"]["sign"] == 1
    assert out["value"]["log_abs"] == pytest.approx(4 * 0.6931471805599453)


def test_float_singular_output(capsys, write_spec):
    doc = {"type": "toeplitz", "n": 8, "k": 3, "L": 1, "l": 1, "d": 1, "r": 1, "R": 1}
    code, out = run(capsys, "compute", "--input", write_spec(doc), "--scalar", "float")
    assert code == 0 and out["value"] == {"sign": 0, "log_abs": None}


def test_timings_flag(capsys, write_spec):
    _, out = run(capsys, "compute", "--input", write_spec(WORKED), "--timings")
    assert set(out["timings"]) == {"reduce"}


def test_compute_deterministic(capsys, write_spec):
    path = write_spec(WORKED)
    outs = []
    for _ in range(2):
        main(["compute", "--input", path])
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]


def test_float_matches_exact_random():
    rng = random.Random(77)
    checked = 0
    for _ in range(120):
        n = rng.randint(2, 49)
        k = rng.randint(1, n // 2)
        spec = random_penta(rng, n, k)
        exact = compute(spec, "auto", "rational")
        fl = compute(spec, "auto", "float")
        if exact.value == 0:
            continue
        ref = LogDet.of(exact.value)
        assert fl.value.sign == ref.sign
        assert fl.value.logabs == pytest.approx(ref.logabs, rel=1e-9)
        checked += 1
    assert checked > 30


def test_auto_never_fails_exact():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(2, 25)
        k = rng.randint(1, n // 2)
        compute(random_penta(rng, n, k, lo=-1, hi=1))


# -- verify ------------------------------------------------------------------

def test_verify_campaign(capsys):
    code, out = run(capsys, "verify", "--n-max", "20", "--cases", "200", "--seed", "42")
    assert code == 0
    assert (out["passed"], out["failed"], out["first_counterexample"]) == (200, 0, None)
    assert out["route_evaluations"]["dense"] == 200


def test_verify_empty(capsys):
    code, out = run(capsys, "verify", "--cases", "0")
    assert code == 0 and out["cases"] == 0 and out["failed"] == 0


def test_verify_detects_injected_bug(capsys):
    code, out = run(capsys, "verify", "--n-max", "20", "--cases", "100", "--seed", "42", "--inject-bug")
    assert code == 1
    bad = out["first_counterexample"]
    assert bad is not None and len(set(bad["values"].values())) > 1


def test_verify_bad_n_max(capsys):
    code, _ = run(capsys, "verify", "--n-max", "1")
    assert code == 2


def test_verify_deterministic_and_parallel(monkeypatch):
    a = run_verify(15, 60, seed=9)
    b = run_verify(15, 60, seed=9)
    monkeypatch.setenv("PENTADET_THREADS", "2")
    c = run_verify(15, 60, seed=9)
    assert a == b == c


# -- poly ---------------------------------------------------------------------

def test_poly_all(capsys):
    code, out = run(capsys, "poly", "--n", "all")
    assert code == 0
    assert out["comparisons"] == 7 and out["all_equal"]
    assert [r["n"] for r in out["results"]] == list(range(3, 10))


def test_poly_emit(capsys):
    code, out = run(capsys, "poly", "--n", "4", "--emit")
    assert code == 0
    assert out["results"][0]["polynomial"] == (
        "d^4 - 2*L*R*d^2 - 3*l*r*d^2 + 2*L*r^2*d + 2*R*l^2*d + 1*L^2*R^2 - 2*L*R*l*r + 1*l^2*r^2"
    )


@pytest.mark.parametrize("n", ["12", "2", "x"])
def test_poly_range(capsys, n):
    code, out = run(capsys, "poly", "--n", n)
    assert code == 3 and "range" in out["error"]


def test_bench(capsys):
    code, out = run(capsys, "compute", "--bench")
    assert code == 0
    orders = [row["order"] for row in out["results"]]
    assert orders == [500, 1000, 10000, 100000]
    assert "dense_k7" in out["results"][0] and "dense_k7" not in out["results"][-1]


def test_module_entry_point(tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps(WORKED))
    proc = subprocess.run([sys.executable, "-m", "pentadet", "compute", "--input", str(path)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == "16"
