import re
import subprocess
import sys

import pytest

from sparsespan.cli import main
from sparsespan.ilg import read_ilg


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def fields(report: str) -> dict[str, str]:
    out = {}
    for line in report.splitlines():
        if line.startswith("["):
            break
        key, _, value = line.partition(": ")
        out[key] = value
    return out


def stable(report: str) -> str:
    return re.sub(r"duration_s: .*", "duration_s: -", report)


@pytest.fixture
def files(tmp_path, capsys):
    paths = {}
    for name, args in {
        "petersen": ["--family", "petersen"],
        "k4": ["--family", "complete", "--n", "4"],
        "grid12": ["--family", "grid", "--rows", 12, "--cols", 12],
        "rr": ["--family", "random_regular", "--n", 20, "--seed", 3, "--min-girth", 4],
    }.items():
        path = tmp_path / f"{name}.ilg"
        assert run(capsys, "gen", *args, "--out", path)[0] == 0
        paths[name] = path
    return paths


def test_gen_round_trip_and_seed_determinism(tmp_path, capsys, files):
    text = files["rr"].read_text()
    again = tmp_path / "again.ilg"
    run(capsys, "gen", "--family", "random_regular", "--n", 20, "--seed", 3, "--min-girth", 4, "--out", again)
    assert again.read_text() == text
    G = read_ilg(files["rr"])
    assert G.is_regular(3)


def test_edge_petersen(capsys, files):
    code, out, _ = run(capsys, "edge", "--in", files["petersen"], "--k", 1, "--edge", 1, 2)
    f = fields(out)
    assert code == 0 and f["answer"] == "YES" and int(f["probes"]) <= 9 and f["budget"] == "9"


def test_analyze_k4(capsys, files):
    code, out, _ = run(capsys, "analyze", "--in", files["k4"], "--girth", "--expansion", "--bridges", "--diameter")
    f = fields(out)
    assert code == 0 and f["girth"] == "3" and f["expansion"].startswith("2 ")
    assert f["bridges"] == "0" and f["diameter"] == "1"


def test_analyze_non_expanding_verdict(capsys, files):
    f = fields(run(capsys, "analyze", "--in", files["k4"], "--non-expanding", 1)[1])
    assert f["non_expanding"] == "FAIL" and f["witness_vertices"] == "1 2 3 4"


def test_span_grid_against_decompose(tmp_path, capsys, files):
    dec_path = tmp_path / "dec.txt"
    code, out, _ = run(capsys, "decompose", "--in", files["grid12"], "--k-stop", 9, "--out", dec_path)
    assert code == 0
    removed = int(dec_path.read_text().splitlines()[0].split()[1])
    kept_path, stats_path = tmp_path / "kept.txt", tmp_path / "stats.txt"
    code, out, _ = run(capsys, "span", "--in", files["grid12"], "--k", 9, "--all",
                       "--out", kept_path, "--stats-out", stats_path)
    f = fields(out)
    kept = kept_path.read_text().splitlines()
    assert code == 0 and int(f["kept"]) == len(kept)
    assert len(kept) <= 143 + removed
    assert len(stats_path.read_text().splitlines()) == 264
    assert f["within_budget"] == "YES"


def test_span_single_edge_and_jobs(capsys, files):
    f = fields(run(capsys, "span", "--in", files["petersen"], "--k", 2, "--edge", 2, 1)[1])
    assert f["edge"] == "1 2" and f["answer"] in ("YES", "NO")
    a = run(capsys, "span", "--in", files["rr"], "--k", 2, "--all")[1]
    b = run(capsys, "span", "--in", files["rr"], "--k", 2, "--all", "--jobs", 2)[1]
    assert stable(a).replace(" --jobs 2", "") == stable(b).replace(" --jobs 2", "")


def test_theoretical_k_is_never_silent(capsys, files):
    code, _, err = run(capsys, "span", "--in", files["petersen"], "--epsilon", 0.5, "--C", 1)
    assert code == 1 and "accept-theoretical-k" in err
    code, _, err = run(capsys, "span", "--in", files["petersen"], "--epsilon", 0.5, "--C", 1, "--accept-theoretical-k")
    assert code == 2 and "2^(2^7)" in err


def test_exhaustive_refusal_exit_code(capsys, files):
    code, _, err = run(capsys, "decompose", "--in", files["grid12"], "--k-stop", 9, "--exact-only")
    assert code == 2 and "exhaustive-only" in err
    code, _, _ = run(capsys, "analyze", "--in", files["grid12"], "--expansion")
    assert code == 2


def test_domain_errors_exit_one(tmp_path, capsys, files):
    bad = tmp_path / "bad.ilg"
    bad.write_text("3 2\n2\n1\n1\n")
    code, _, err = run(capsys, "analyze", "--in", bad)
    assert code == 1 and "line 4" in err
    code, _, _ = run(capsys, "edge", "--in", files["petersen"], "--k", 1, "--edge", 1, 3)
    assert code == 1
    code, _, _ = run(capsys, "analyze", "--in", tmp_path / "missing.ilg")
    assert code == 1


def test_transforms(tmp_path, capsys, files):
    out = tmp_path / "t.ilg"
    assert run(capsys, "transform", "--in", files["k4"], "--replacement-product", "--out", out)[0] == 0
    assert read_ilg(out).n == 12
    assert run(capsys, "transform", "--in", files["k4"], "--subdivide", 1, 2, "--out", out)[0] == 0
    assert read_ilg(out).n == 5
    code, o, _ = run(capsys, "transform", "--in", files["petersen"], "--bridge-join", 1, 2, 1, 5, "--out", out)
    assert code == 0 and fields(o)["bridge"] == "1 2" and read_ilg(out).n == 22


def test_adversary_report(tmp_path, capsys, files):
    target = tmp_path / "dp.ilg"
    run(capsys, "transform", "--in", files["petersen"], "--bridge-join", 1, 2, 1, 2, "--out", target)
    report = tmp_path / "rep.txt"
    code, out, _ = run(capsys, "adversary", "--target", target, "--bridge", 1, 2, "--alg", "local-spanner",
                       "--k", 1, "--probe-limit", 2, "--edge", 3, 7, "--report", report)
    f = fields(report.read_text())
    assert code == 0
    assert f["answer"] == "YES" and f["replay_ok"] == "true" and f["bridge_hit"] == "true"
    assert f["verdict"] == "consistent"
    text = report.read_text()
    for block in ("[transcript]", "[sigma]", "[constraints]"):
        assert block in text
    code, _, _ = run(capsys, "adversary", "--target", target, "--bridge", 3, 7, "--k", 1, "--edge", 3, 7, "--report", report)
    assert code == 1  # (3, 7) is not a bridge


def test_reports_deterministic_modulo_duration(capsys, files):
    a = run(capsys, "decompose", "--in", files["grid12"], "--k-stop", 9)[1]
    b = run(capsys, "decompose", "--in", files["grid12"], "--k-stop", 9)[1]
    assert stable(a) == stable(b)


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "sparsespan", "edge", "--in", str(files["petersen"]),
                           "--k", "1", "--edge", "1", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and "answer: YES" in proc.stdout
