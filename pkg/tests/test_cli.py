import json
import subprocess
import sys

import pytest

from schatten_sparsify.cli import main
from schatten_sparsify.matrices import hadamard
from schatten_sparsify.mtxio import loads_matrix, write_matrix


def run(args, capsys):
    code = main([str(a) for a in args])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def case3_dir(tmp_path, capsys):
    d = tmp_path / "c3"
    code, _, _ = run(["generate", "--case", 3, "--k", 8, "--p", 1, "--q", 2, "--out", d], capsys)
    assert code == 0
    return d


def test_generate_writes_files(tmp_path, capsys):
    d = tmp_path / "c1"
    code, _, _ = run(["generate", "--case", 1, "--k", 8, "--p", 1, "--q", 4, "--out", d], capsys)
    assert code == 0
    assert sorted(p.name for p in d.iterdir()) == ["A.mtx", "A_prime.mtx", "B.mtx",
                                                   "instance.json"]


def test_generate_rejects_bad_k(tmp_path, capsys):
    code, _, err = run(["generate", "--case", 1, "--k", 3, "--p", 1, "--q", 4,
                        "--out", tmp_path / "x"], capsys)
    assert code == 2 and "power of 2" in err


def test_generate_records_threshold(tmp_path, capsys):
    d = tmp_path / "c2"
    run(["generate", "--case", 2, "--k", 4, "--p", 4, "--q", 2, "--out", d], capsys)
    meta = json.loads((d / "instance.json").read_text())
    assert float(meta["eps_threshold"]) == pytest.approx(0.5, rel=1e-15)


def test_verify_passes_and_writes_report(case3_dir, capsys):
    code, out, _ = run(["verify", "--instance", case3_dir, "--eps", 0.1], capsys)
    assert code == 0 and "FAIL" not in out
    report = json.loads((case3_dir / "report.json").read_text())
    assert report["pass"] is True and report["config"]["eps"] == 0.1


def test_verify_tolerance_below_double_precision(case3_dir, capsys):
    code, out, _ = run(["verify", "--instance", case3_dir, "--eps", 0.1, "--tol", 1e-17], capsys)
    assert code == 1 and "FAIL" in out


def test_verify_tampered_matrix(case3_dir, capsys):
    path = case3_dir / "B.mtx"
    b = loads_matrix(path.read_text())
    b[0, 0] *= 2.0
    write_matrix(path, b)
    code, out, _ = run(["verify", "--instance", case3_dir, "--eps", 0.1], capsys)
    assert code == 1
    assert "FAIL  P3 ||A'||_q = ||B||_q" in out


def test_verify_warns_below_threshold(tmp_path, capsys):
    d = tmp_path / "c4"
    run(["generate", "--case", 4, "--k", 4, "--p", 2, "--q", 1, "--out", d], capsys)
    code, out, _ = run(["verify", "--instance", d, "--eps", 0.3, "--report", tmp_path / "r.json"],
                       capsys)
    assert code == 1 and "WARNING" in out
    assert json.loads((tmp_path / "r.json").read_text())["warnings"]


def test_verify_missing_files(tmp_path, case3_dir, capsys):
    (case3_dir / "A.mtx").unlink()
    code, _, err = run(["verify", "--instance", case3_dir, "--eps", 0.1], capsys)
    assert code == 2 and "A.mtx" in err


def test_verify_corrupt_file(case3_dir, capsys):
    (case3_dir / "B.mtx").write_text("2 2 1\n1 1 x\n")
    code, _, _ = run(["verify", "--instance", case3_dir, "--eps", 0.1], capsys)
    assert code == 2


def test_norms_on_hadamard(tmp_path, capsys):
    path = tmp_path / "H16.mtx"
    write_matrix(path, hadamard(4))
    code, out, _ = run(["norms", "--matrix", path, "--p", "1,2,inf"], capsys)
    assert code == 0
    got = json.loads(out)
    assert set(got) == {"S_1", "S_2", "S_inf"}
    assert got["S_1"] == pytest.approx(64) and got["S_2"] == pytest.approx(16)
    assert got["S_inf"] == pytest.approx(4)


def test_norms_parse_error(tmp_path, capsys):
    path = tmp_path / "bad.mtx"
    path.write_text("1 1 2\n1 1 1\n1 1 1\n")
    code, _, err = run(["norms", "--matrix", path], capsys)
    assert code == 2 and "duplicate" in err


def test_vec_sparsify(tmp_path, capsys):
    src = tmp_path / "x.txt"
    src.write_text("1 1 1 1 0.2 0.2\n")
    code, out, _ = run(["vec-sparsify", "--input", src, "--eps", 0.1, "--p", 1, "--q", 2,
                        "--out", tmp_path / "y.txt"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["s"] == 4 and doc["c_rounded"] == 5
    assert doc["achieved_lq_error"] <= 0.1 and doc["guarantee_holds"]
    assert len((tmp_path / "y.txt").read_text().split()) == 6


def test_vec_sparsify_out_of_range(tmp_path, capsys):
    src = tmp_path / "x.txt"
    src.write_text("1 2 3")
    code, _, _ = run(["vec-sparsify", "--input", src, "--eps", 0.5, "--p", 1, "--q", 2,
                      "--out", tmp_path / "y.txt"], capsys)
    assert code == 2


def test_attack_is_byte_identical(tmp_path, capsys):
    csv, summary = tmp_path / "a.csv", tmp_path / "a.json"
    outs = []
    for _ in range(2):
        code, _, _ = run(["attack", "--case", 2, "--k", 5, "--p", 4, "--q", 2,
                          "--budget-frac", 0.25, "--strategy", "topk,uniform", "--seed", 7,
                          "--out", csv, "--summary", summary], capsys)
        assert code == 0
        outs.append((csv.read_bytes(), summary.read_bytes()))
    assert outs[0] == outs[1]
    assert outs[0][0].decode().startswith("strategy,seed,budget_frac,achieved_nnz,q,rel_error")


def test_attack_needs_instance(capsys):
    code, _, err = run(["attack", "--case", 2], capsys)
    assert code == 2


def test_module_entry_point(tmp_path):
    path = tmp_path / "I.mtx"
    write_matrix(path, hadamard(1))
    proc = subprocess.run([sys.executable, "-m", "schatten_sparsify", "norms", "--matrix",
                           str(path), "--p", "2"], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["S_2"] == pytest.approx(2.0)
