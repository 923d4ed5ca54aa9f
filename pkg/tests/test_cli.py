import io
import json

import pytest

from schubsm.cli import main
from schubsm.verify import SUITES, run_suite


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_ffunc_latex():
    code, out, _ = run("ffunc", "--k", "2", "--n", "4", "--window", "2,5,4,7", "--format", "latex")
    assert code == 0
    assert out.startswith(r"\frac{") and "(1 + x_{2} - y_{4})" in out


def test_ffunc_json_is_stable():
    args = ("ffunc", "--k", "2", "--n", "4", "--window", "2,5,4,7", "--format", "json")
    a, b = run(*args), run(*args)
    assert a == b and a[0] == 0
    json.loads(a[1])


def test_pipedreams_json_count():
    code, out, _ = run("pipedreams", "--k", "2", "--n", "4", "--window", "2,5,4,7", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 6


def test_pipedreams_ascii():
    code, out, _ = run("pipedreams", "--k", "1", "--n", "2", "--window", "2,3")
    assert code == 0 and out.strip() == "BB"


def test_bruhat_queries():
    assert run("bruhat", "--n", "4", "--parabolic", "2", "--u", "2134", "--w", "4132")[1].strip() == "true"
    assert run("bruhat", "--n", "3", "--parabolic", "1", "--u", "132", "--w", "213")[1].strip() == "false"
    assert run("bruhat", "--n", "4", "--k", "2", "--u", "1324", "--w", "2314")[1].strip() == "true"
    assert run("bruhat", "--f", "3,2", "--g", "2,3")[1].strip() == "false"
    code, out, _ = run("bruhat", "--n", "3", "--parabolic", "1", "--export")
    assert code == 0 and out.count("->") == 6


def test_poset_dot():
    code, out, _ = run("poset", "--n", "4", "--parabolic", "2")
    assert code == 0 and out.count("->") == 60 and out.startswith("digraph")
    code, _, err = run("poset", "--n", "7")
    assert code == 2 and "limit" in err


def test_localize_kinds():
    code, out, _ = run("localize", "--kind", "affine", "--window", "3,2", "--g", "3,2")
    assert (code, out.strip()) == (0, "(y1 - y2)/(1 + y1 - y2)")
    code, out, _ = run("localize", "--kind", "csm_cell", "--n", "2", "--w", "21")
    assert code == 0 and out.splitlines()[0] == "12\t1"
    code, out, _ = run("localize", "--kind", "projected", "--lambda", "1,0", "--window", "3,2", "--format", "json")
    obj = json.loads(out)
    assert obj["space"] == "G/P" and obj["lambda"] == [1, 0]
    code, out, _ = run("localize", "--kind", "projected", "--lambda", "2,1,0", "--u", "123", "--w", "213")
    assert code == 0 and len(out.splitlines()) == 6
    code, out, _ = run("localize", "--kind", "richardson", "--u", "12", "--w", "21", "--format", "json")
    assert code == 0 and json.loads(out)["space"] == "G/B"


def test_usage_errors():
    code, _, err = run("ffunc", "--k", "2", "--n", "4", "--window", "2,5,4,4")
    assert code == 2 and "residue" in err
    code, _, err = run("ffunc", "--k", "1", "--n", "4", "--window", "2,5,4,7")
    assert code == 2 and "degree" in err
    code, _, err = run("ffunc", "--k", "2", "--n", "4", "--window", "2,5,4,7", "--limit", "100")
    assert code == 2 and "--unsafe-limits" in err
    code, _, _ = run("ffunc", "--k", "2", "--n", "4", "--window", "2,5,4,7", "--limit", "100", "--unsafe-limits")
    assert code == 0
    code, _, err = run("ffunc", "--k", "2", "--n", "4", "--window", "2,5,4,7", "--limit", "4")
    assert code == 2 and "refused" in err
    assert run("nosuch")[0] == 2
    assert run("verify", "nosuch")[0] == 2


def test_verify_plain_and_json():
    code, out, _ = run("verify", "thm75", "--k", "1", "--n", "3")
    lines = out.splitlines()
    assert code == 0
    assert sum(l.startswith("PASS ") for l in lines) == 21
    assert lines[-1] == "thm75: 21/21 passed"
    code, out, _ = run("verify", "ybe", "--format", "json")
    assert code == 0 and json.loads(out) == {"suite": "ybe", "instances": 35, "failures": []}


def test_verify_thm36():
    code, out, _ = run("verify", "thm36", "--n", "3", "--format", "json")
    assert code == 0 and json.loads(out)["instances"] == 4 * 36


@pytest.mark.parametrize("name", SUITES)
def test_every_suite_runs_clean(name):
    params = {"thm62": {"n": 2}, "thm75": {"k": 1, "n": 2}, "thm36": {"n": 2}}.get(name, {})
    report = run_suite(name, **params)
    assert report.instances > 0 and report.ok, report.failures[:3]


def test_failures_are_replayable(monkeypatch):
    import schubsm.verify as v

    monkeypatch.setattr(v, "_thm41", lambda u, w, i: u != (1, 2, 3))
    report = run_suite("thm41", n=3)
    assert not report.ok
    first = report.to_json()["minimal_failure"]["instance"]
    assert first.startswith("verify thm41 --n 3 --u 123")
    code, out, _ = run("verify", "thm41", "--format", "json")
    assert code == 1


def test_thread_count_does_not_change_results(monkeypatch):
    monkeypatch.setenv("CSM_THREADS", "4")
    report = run_suite("thm75", k=1, n=3)
    assert report.ok and [r[0] for r in report.results] == [r[0] for r in run_suite("thm75", k=1, n=3, threads=1).results]


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "schubsm", "bruhat", "--n", "4", "--parabolic", "2", "--u", "2134", "--w", "4132"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "true"
