import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from streamnd.cli import main


def run_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def write(path, text):
    path.write_text(text)
    return str(path)


@pytest.fixture
def c4_file(tmp_path):
    return write(tmp_path / "c4.txt", "4 4\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n")


def test_spanner_writes_output_and_sidecar(tmp_path, c4_file):
    out_path = tmp_path / "h.txt"
    code, out, _ = run_cli(
        ["spanner", "--mode", "vft", "--f", "1", "--t", "2", "--eps", "1/3",
         "--test", "exact", "-i", c4_file, "-o", str(out_path)]
    )
    assert code == 0
    report = json.loads(out)
    assert report["stored_edges"] == 4
    assert out_path.exists()
    sidecar = json.loads((tmp_path / "h.txt.json").read_text())
    assert sidecar["params"]["test"] == "exact"


def test_missing_file_exits_one(tmp_path):
    code, _, err = run_cli(
        ["spanner", "--mode", "vft", "--f", "0", "--t", "1", "--eps", "1",
         "-i", str(tmp_path / "absent.txt"), "-o", str(tmp_path / "o.txt")]
    )
    assert code == 1
    assert "absent.txt" in err


def test_usage_error_exits_one():
    code, _, _ = run_cli(["spanner", "--bogus"])
    assert code == 1


def test_sndp_with_oracle(tmp_path, c4_file):
    req = write(tmp_path / "req.txt", "0 2 2\n")
    code, out, _ = run_cli(
        ["sndp", "--mode", "ec", "--t", "2", "--graph", c4_file, "--req", req, "--oracle"]
    )
    assert code == 0
    report = json.loads(out)
    assert report["ratio"] is not None and report["ratio"] <= 8 * 2
    assert report["factor_bound"] == 16


def test_sndp_infeasible_exits_two(tmp_path):
    g = write(tmp_path / "g.txt", "3 1\n0 1 1\n")
    req = write(tmp_path / "req.txt", "0 2 1\n")
    code, _, err = run_cli(["sndp", "--mode", "vc", "--t", "1", "--graph", g, "--req", req])
    assert code == 2


def test_cap1_run(tmp_path):
    base = write(tmp_path / "t.txt", "3 2\n0 1 1\n1 2 1\n")
    links = write(tmp_path / "l.txt", "3 1\n0 2 3\n")
    code, out, _ = run_cli(["cap1", "--base", base, "--links", links, "--eps", "1/2", "--oracle"])
    assert code == 0
    report = json.loads(out)
    assert report["sol_weight"] == 3 and report["ratio"] == 1.0


def test_cap1_infeasible(tmp_path):
    base = write(tmp_path / "t.txt", "3 2\n0 1 1\n1 2 1\n")
    links = write(tmp_path / "l.txt", "3 0\n")
    code, _, _ = run_cli(["cap1", "--base", base, "--links", links, "--eps", "1/2"])
    assert code == 2


def test_cap2_run(tmp_path, c4_file):
    links = write(tmp_path / "l.txt", "4 2\n0 2 1\n1 3 1\n")
    code, out, _ = run_cli(["cap2", "--base", c4_file, "--links", links, "--eps", "1/2", "--oracle"])
    assert code == 0
    report = json.loads(out)
    assert report["sol_weight"] == 2 and report["spqr_nodes"] == 1


def test_oracle_subcommand(tmp_path, c4_file):
    links = write(tmp_path / "l.txt", "4 2\n0 2 1\n1 3 1\n")
    req = write(tmp_path / "req.txt", "\n".join(f"{u} {v} 3" for u in range(4) for v in range(u + 1, 4)) + "\n")
    code, out, _ = run_cli(["oracle", "--base", c4_file, "--links", links, "--req", req, "--mode", "vc"])
    assert code == 0
    report = json.loads(out)
    assert report["opt_weight"] == 2 and len(report["opt_links"]) == 2


def test_oracle_guard_exits_three(tmp_path, c4_file):
    lines = "\n".join("0 2 1" for _ in range(23))
    links = write(tmp_path / "l.txt", f"4 23\n{lines}\n")
    req = write(tmp_path / "req.txt", "0 2 1\n")
    code, _, _ = run_cli(["oracle", "--base", c4_file, "--links", links, "--req", req, "--mode", "vc"])
    assert code == 3


def test_verify_spanner_roundtrip(tmp_path, c4_file):
    out_path = tmp_path / "h.txt"
    run_cli(
        ["spanner", "--mode", "vft", "--f", "1", "--t", "2", "--eps", "1/3",
         "--test", "exact", "-i", c4_file, "-o", str(out_path)]
    )
    code, out, _ = run_cli(
        ["verify-spanner", "--graph", c4_file, "--spanner", str(out_path),
         "--mode", "vft", "--f", "1", "--t", "2", "--eps", "1/3"]
    )
    assert code == 0 and json.loads(out)["ok"] is True
    # a deliberately broken spanner fails verification
    broken = write(tmp_path / "b.txt", "4 1\n0 1 1\n")
    code, out, _ = run_cli(
        ["verify-spanner", "--graph", c4_file, "--spanner", broken,
         "--mode", "vft", "--f", "0", "--t", "1", "--eps", "1/3"]
    )
    assert code == 2 and json.loads(out)["ok"] is False


def test_bench_lines_are_json_and_deterministic():
    code1, out1, _ = run_cli(["bench", "--suite", "mst", "--seeds", "1..5"])
    code2, out2, _ = run_cli(["bench", "--suite", "mst", "--seeds", "1..5"])
    assert code1 == code2 == 0
    assert out1 == out2
    lines = out1.strip().splitlines()
    assert len(lines) == 6  # five seeds plus the summary
    for line in lines:
        json.loads(line)
    assert json.loads(lines[-1])["max_ratio"] == 1.0
