import csv
import io
import json

import pytest

from fourcycles.cli import _trial, loglog_slope, main, sweep
from fourcycles.detect import amplified_detection
from fourcycles.cli import detect_params
from fourcycles.generators import build
from fourcycles.sampling import mix
from fourcycles.stream import EdgeStream


def run_json(capsys, *argv):
    assert main(list(argv) + ["--json"]) == 0
    return json.loads(capsys.readouterr().out)


def test_exact_on_generator(capsys):
    doc = run_json(capsys, "exact", "--input", "overlap:a=3,k=4")
    assert doc["schema"] == 1 and doc["command"] == "exact"
    assert doc["T"] == 18


def test_exact_summary_line(capsys):
    assert main(["exact", "--input", "onion:k=5"]) == 0
    assert capsys.readouterr().out.strip() == "n=7 m=10 T=10"


def test_file_ingest_with_comments_and_duplicates(tmp_path, capsys):
    f = tmp_path / "g.txt"
    f.write_text("# a square\n0 1\n1 2\n\n2 3\n3 0\n1 0\n")
    doc = run_json(capsys, "exact", "--input", str(f))
    assert doc["T"] == 1 and doc["m"] == 4 and doc["duplicates"] == 1


@pytest.mark.parametrize("text", ["0 0\n", "0 x\n", "5\n"])
def test_bad_input_exits_2(tmp_path, capsys, text):
    f = tmp_path / "bad.txt"
    f.write_text(text)
    assert main(["exact", "--input", str(f)]) == 2
    assert "error" in capsys.readouterr().err


def test_unknown_generator_exits_2(capsys):
    assert main(["exact", "--input", "nosuch:k=3"]) == 2
    assert main(["exact", "--input", str("missing-file.txt")]) == 2


def test_detect_finds_cycle(capsys):
    doc = run_json(capsys, "detect", "--input", "overlap:a=8,k=8", "--seed", "3")
    assert doc["result"]["found"]
    assert doc["t_lower_source"] == "generator"
    assert max(max(pq) for pq in doc["params"]["probabilities"]) < 1


def test_detect_matches_direct_call(capsys):
    doc = run_json(capsys, "detect", "--input", "onion:k=12", "--seed", "5", "--deterministic")
    g = build("onion:k=12")
    dp = detect_params(66.0, "desk", 5, n=g.n)
    direct = amplified_detection(EdgeStream.from_graph(g), dp)
    assert doc["result"]["found"] == direct.found
    assert doc["result"]["runs"] == direct.runs


def test_tree_is_never_detected(capsys):
    doc = run_json(capsys, "detect", "--input", "tree:n=30,seed=2", "--t-lower", "4")
    assert not doc["result"]["found"]


def test_count_reference_and_baseline(capsys):
    doc = run_json(capsys, "count", "--input", "overlap:a=4,k=4", "--median-runs", "3")
    assert doc["result"]["estimate"] == pytest.approx(36)
    assert len(doc["result"]["estimates"]) == 3
    base = run_json(capsys, "count", "--input", "overlap:a=4,k=4", "--algo", "baseline", "--median-runs", "3")
    assert base["result"]["estimate"] > 0


def test_count_streaming_oracle(capsys):
    doc = run_json(capsys, "count", "--input", "overlap:a=4,k=4", "--oracle", "streaming")
    assert doc["params"]["oracle"] == "streaming"
    assert "node" in doc["result"]["runs"][0]["oracle"]["oracles"]


def test_even_median_runs_is_an_error(capsys):
    assert main(["count", "--input", "onion:k=4", "--median-runs", "2"]) == 2


def test_audit(capsys):
    doc = run_json(capsys, "audit", "--input", "heavy:T=12")
    assert doc["shift_audit"]["disjoint"]
    assert "multiplicity" in doc and "lemma_counters" in doc


def test_deterministic_output_is_byte_identical(capsys):
    outs = []
    for _ in range(2):
        assert main(["count", "--input", "gnp:n=12,p=0.5,seed=3", "--seed", "9", "--json", "--deterministic"]) == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    assert "elapsed" not in outs[0]


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FOURCYCLES_SEED", "41")
    doc = run_json(capsys, "exact", "--input", "onion:k=3")
    assert doc["seed"] == 41
    doc = run_json(capsys, "exact", "--input", "onion:k=3", "--seed", "2")
    assert doc["seed"] == 2


def test_sweep_with_no_trials(capsys):
    doc = run_json(capsys, "sweep", "--spec", "onion:k={size}", "--sizes", "4,8", "--trials", "0")
    assert doc["cells"] == [] and doc["slope"] is None


def test_single_cell_sweep_equals_direct_run():
    rep = sweep("onion:k={size}", [10], 1, seed=4)
    task = {"spec": "onion:k=10", "pad_to": None, "seed": mix(4, 0, 0), "task": "detect", "profile": "desk",
            "delta": None, "c1": None, "epsilon": 0.5, "median_runs": 1}
    row = _trial(task)
    assert rep["cells"][0]["peak_mean"] == row["peak"]
    assert rep["cells"][0]["detection_rate"] == float(row["found"])


def test_parallel_sweep_matches_serial():
    a = sweep("overlap:a={size},k={size}", [4, 6], 2, seed=1, jobs=1)
    b = sweep("overlap:a={size},k={size}", [4, 6], 2, seed=1, jobs=2)
    strip = lambda rep: [{k: v for k, v in c.items() if k != "runtime_mean"} for c in rep["cells"]]
    assert strip(a) == strip(b)


def test_sweep_csv(capsys):
    assert main(["sweep", "--spec", "overlap:a={size},k={size}", "--sizes", "4,6", "--trials", "2",
                 "--csv", "--deterministic"]) == 0
    rows = list(csv.DictReader(io.StringIO(capsys.readouterr().out)))
    assert [int(r["size"]) for r in rows] == [4, 6]
    assert "runtime_mean" not in rows[0]


def test_count_sweep_reports_errors(capsys):
    doc = run_json(capsys, "sweep", "--spec", "overlap:a={size},k={size}", "--sizes", "4", "--trials", "2",
                   "--task", "count")
    assert "rel_error_quantiles" in doc["cells"][0]


def test_loglog_slope():
    fit = loglog_slope([1, 10, 100, 1000], [1000, 100, 10, 1])
    assert fit["slope"] == pytest.approx(-1)
    assert fit["ci95"][0] <= -1 <= fit["ci95"][1]
    assert loglog_slope([1], [1]) is None
