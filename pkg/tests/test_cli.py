import json
import subprocess
import sys
from pathlib import Path


def run_cli(*args, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "gqflags.cli", *args],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


def test_build_and_scheme_report(tmp_path):
    out = tmp_path / "w2.json"
    result = run_cli("build", "symplectic", "2", "-o", str(out))
    assert result.returncode == 0, result.stderr
    assert "15 points, 15 lines" in result.stdout
    payload = json.loads(out.read_text())
    assert payload["num_points"] == 15

    result = run_cli("scheme", str(out))
    assert result.returncode == 0, result.stderr
    assert "tensor-vs-table: MATCH at (s,t)=(2,2)" in result.stdout
    assert "nontrivial parabolics: {0,1} {0,2}" in result.stdout
    assert "relation-1 SRG(15, 6, 1, 3)" in result.stdout
    assert "duality-map: pass" in result.stdout


def test_build_grid_counts(tmp_path):
    out = tmp_path / "g3.json"
    result = run_cli("build", "grid", "3", "-o", str(out))
    assert result.returncode == 0
    assert "16 points, 8 lines" in result.stdout


def test_thin_report(tmp_path):
    out = tmp_path / "g1.json"
    run_cli("build", "grid", "1", "-o", str(out))
    result = run_cli("scheme", str(out))
    assert result.returncode == 0
    assert "thin: yes" in result.stdout and "dihedral" in result.stdout


def test_scheme_json_format_and_artifacts(tmp_path):
    out = tmp_path / "w2.json"
    run_cli("build", "symplectic", "2", "-o", str(out))
    tensor_csv = tmp_path / "tensor.csv"
    eta_csv = tmp_path / "eta.csv"
    scheme_file = tmp_path / "w2.scheme"
    result = run_cli(
        "scheme", str(out),
        "--format", "json",
        "--tensor-csv", str(tensor_csv),
        "--valency-csv", str(eta_csv),
        "--scheme-out", str(scheme_file),
    )
    assert result.returncode == 0
    report = json.loads(result.stdout)
    assert report["tensor_matches_table"] is True
    assert report["valencies"] == [1, 2, 2, 4, 4, 8, 8, 16]
    assert report["noncommutativity"] == {"p_1_45": 0, "p_1_54": 4}
    lines = tensor_csv.read_text().splitlines()
    assert lines[0] == "k,i,j,p" and len(lines) == 1 + 8**3
    assert "1,2,3,2" in lines  # p[1][2][3] = s = 2
    assert eta_csv.read_text().splitlines()[1:] == [
        "0,1", "1,2", "2,2", "3,4", "4,4", "5,8", "6,8", "7,16",
    ]
    header = scheme_file.read_text().splitlines()[0]
    assert header == "45 7"


def test_composite_prime_is_usage_error(tmp_path):
    result = run_cli("build", "symplectic", "6", "-o", str(tmp_path / "x.json"))
    assert result.returncode == 2
    assert "prime" in result.stderr


def test_fusions_numeric_golden(tmp_path):
    result = run_cli("fusions", "--numeric", "2", "2")
    assert result.returncode == 0
    assert result.stdout == (
        "partition,condition\n"
        "{1,2,3,4,7}|{5,6},POINT(2,2)\n"
        "{1,2,7}|{3,4}|{5,6},POINT(2,2)\n"
        "{1,2}|{3,4}|{5,6}|{7},S_EQ_T\n"
        "{1,3,4,5,6,7}|{2},ALL\n"
        "{1,3,4,6}|{2}|{5,7},ALL\n"
        "{1}|{2,3,4,5,6,7},ALL\n"
        "{1}|{2,3,4,5}|{6,7},ALL\n"
    )


def test_fusions_symbolic_contains_table_rows():
    result = run_cli("fusions", "--symbolic")
    assert result.returncode == 0
    rows = result.stdout.splitlines()
    assert rows[0] == "partition,condition"
    assert len(rows) == 26  # header + 25 feasible partitions
    assert "{1}|{2,3,4,5}|{6,7},ALL" in rows
    assert "{1,2}|{3,4}|{5,6}|{7},S_EQ_T" in rows
    assert "{1,3,4,6}|{2,5,7},T_EQ_1" in rows
    assert "{1,6,7}|{2,3,4,5},S_EQ_1" in rows


def test_fusions_rejects_thin_order():
    result = run_cli("fusions", "--numeric", "1", "1")
    assert result.returncode == 2
    assert "1,1" in result.stderr or "(1,1)" in result.stderr


def test_reports_are_byte_identical(tmp_path):
    out = tmp_path / "w2.json"
    run_cli("build", "symplectic", "2", "-o", str(out))
    first = run_cli("scheme", str(out))
    second = run_cli("scheme", str(out))
    assert first.stdout == second.stdout
    fus1 = run_cli("fusions", "--symbolic")
    fus2 = run_cli("fusions", "--symbolic")
    assert fus1.stdout == fus2.stdout


def test_reconstruct_seven_class(tmp_path):
    structure = tmp_path / "w2.json"
    scheme = tmp_path / "w2.scheme"
    rebuilt = tmp_path / "rebuilt.json"
    run_cli("build", "symplectic", "2", "-o", str(structure))
    run_cli("scheme", str(structure), "--scheme-out", str(scheme))
    result = run_cli(
        "reconstruct", str(scheme), "--classes", "7",
        "--scramble", "17", "-o", str(rebuilt),
    )
    assert result.returncode == 0, result.stderr
    assert "scramble seed: 17" in result.stdout
    assert "inferred order: s=2 t=2" in result.stdout
    assert "gq-axioms: pass" in result.stdout
    payload = json.loads(rebuilt.read_text())
    assert payload["num_points"] == 15


def test_reconstruct_four_class(tmp_path):
    structure = tmp_path / "w3.json"
    fused = tmp_path / "w3_fused.scheme"
    run_cli("build", "symplectic", "3", "-o", str(structure))
    result = run_cli("scheme", str(structure), "--fused-scheme-out", str(fused))
    assert result.returncode == 0, result.stderr
    result = run_cli("reconstruct", str(fused), "--classes", "4", "--scramble", "5")
    assert result.returncode == 0, result.stderr
    assert "inferred order: s=3 t=3" in result.stdout
    assert "cliques: 80" in result.stdout
    assert "level sizes: 1 6 18 54 81" in result.stdout
    assert "unique-connecting-flag: pass" in result.stdout


def test_reconstruct_class_count_mismatch(tmp_path):
    structure = tmp_path / "w2.json"
    fused = tmp_path / "fused.scheme"
    run_cli("build", "symplectic", "2", "-o", str(structure))
    run_cli("scheme", str(structure), "--fused-scheme-out", str(fused))
    result = run_cli("reconstruct", str(fused), "--classes", "7")
    assert result.returncode == 2
    assert "d=4" in result.stderr


def test_parse_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    result = run_cli("scheme", str(bad))
    assert result.returncode == 2


def test_selftest():
    result = run_cli("selftest")
    assert result.returncode == 0, result.stdout + result.stderr
    lines = [l for l in result.stdout.splitlines() if l]
    assert len(lines) == 7
    assert all(l.startswith("PASS") for l in lines)
