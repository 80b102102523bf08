import json
import os
import subprocess
import sys

import pytest

from zetalab import cli, io
from zetalab.arith import prime_power_table, primes_up_to
from zetalab.core import QuadratureError


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_subprocess(args, cwd):
    return subprocess.run([sys.executable, "-W", "ignore", "-m", "zetalab.cli", *args], cwd=cwd,
                          capture_output=True, env=dict(os.environ))


@pytest.fixture(scope="module")
def seq_files(tmp_path_factory):
    d = tmp_path_factory.mktemp("seqs")
    p = primes_up_to(100_000)
    io.write_sequence(d / "primes.txt", p, digits=1)
    io.write_sequence(d / "shifted.txt", p + 1, digits=1)
    pp, _ = prime_power_table(100_000)
    io.write_sequence(d / "powers.txt", pp, digits=1)
    return d


def test_eval_zeta(capsys):
    code, out, _ = run(["eval", "zeta", "--s", "2"], capsys)
    assert code == 0
    value, pm, err, method = out.split()
    assert value.startswith("1.64493406685") and pm == "±" and method == "euler-maclaurin"
    assert float(err) < 1e-12


def test_eval_complex_output(capsys):
    code, out, _ = run(["eval", "zeta", "--s", "0.5+10i"], capsys)
    assert code == 0 and out.split()[0].endswith("i")


def test_eval_primezeta_singular(capsys):
    code, _, err = run(["eval", "primezeta", "--s", "0.5"], capsys)
    assert code == 3
    assert "1/2" in err


def test_eval_primezeta_direct(capsys):
    code, out, _ = run(["--sieve-limit", "100000", "eval", "primezeta", "--direct", "--s", "2"], capsys)
    assert code == 0 and out.startswith("4.5224")


def test_eval_superzeta_pole(capsys, table):
    code, _, _ = run(["eval", "superzeta", "--s", "1"], capsys)
    assert code == 3


def test_regdet_primes_exit_2(capsys):
    code, _, err = run(["eval", "regdet", "--spectrum-generator", "primes"], capsys)
    assert code == 2 and "NotRegularizableError" in err


def test_detlog_integers(capsys):
    code, out, _ = run(["detlog", "--spectrum-generator", "integers"], capsys)
    assert code == 0 and out.startswith("2.50662827")


def test_detlog_file(capsys, tmp_path):
    f = tmp_path / "spec.txt"
    f.write_text("2\n3\n")
    code, out, _ = run(["detlog", "--spectrum-file", str(f)], capsys)
    assert code == 0 and out.startswith("6.00000000000e+00")


def test_domain_error_exit_2(capsys):
    code, _, _ = run(["eval", "primezeta", "--s", "-0.5"], capsys)
    assert code == 2
    code, _, _ = run(["eval", "zeta", "--s", "1+2k"], capsys)
    assert code == 2


def test_quadrature_failure_exit_4(capsys, monkeypatch):
    def boom(ctx, target, s):
        raise QuadratureError("forced failure")

    monkeypatch.setattr(cli, "evaluate", boom)
    code, _, err = run(["eval", "superzeta", "--s", "2"], capsys)
    assert code == 4 and "QuadratureError" in err


def test_exit_code_mapping():
    assert cli.exit_code(QuadratureError("x")) == cli.EXIT_QUADRATURE == 4


def test_approx_command(capsys):
    code, out, _ = run(["approx", "--family", "primes", "--k", "5", "--s", "2"], capsys)
    assert code == 0 and out.strip()
    code, _, _ = run(["approx", "--family", "primes", "--k", "5", "--s", "1"], capsys)
    assert code == 3


def test_scan_single_cell(tmp_path, capsys):
    out = tmp_path / "g.csv"
    code, _, _ = run(["--out", str(out), "scan", "zeta", "--re-lo", "2", "--re-hi", "2", "--im-lo", "0",
                      "--im-hi", "0"], capsys)
    lines = out.read_text().splitlines()
    assert code == 0 and len(lines) == 2
    assert lines[0] == "re_s,im_s,re_val,im_val,abs_err,error"


def test_scan_error_row(capsys):
    code, out, _ = run(["scan", "primezeta", "--re-lo", "0.5", "--re-hi", "0.7", "--n-re", "3", "--im-lo", "0",
                        "--im-hi", "0"], capsys)
    rows = [r.split(",") for r in out.splitlines()[1:]]
    assert code == 0 and len(rows) == 3
    assert rows[0][2:] == ["", "", "", "NearSingularError"]
    assert rows[1][5] == "" and rows[1][2] != ""


def test_scan_row_major_order(capsys):
    code, out, _ = run(["scan", "zeta", "--re-lo", "2", "--re-hi", "3", "--n-re", "2", "--im-lo", "0",
                        "--im-hi", "1", "--n-im", "2"], capsys)
    pts = [(float(r.split(",")[0]), float(r.split(",")[1])) for r in out.splitlines()[1:]]
    assert pts == [(2, 0), (3, 0), (2, 1), (3, 1)]


def test_scan_superzeta_grows_toward_pole(capsys, table):
    code, out, _ = run(["scan", "superzeta", "--re-lo", "0.6", "--re-hi", "1.4", "--n-re", "9", "--im-lo", "-0.4",
                        "--im-hi", "0.4", "--n-im", "9"], capsys)
    assert code == 0
    rows = [r.split(",") for r in out.splitlines()[1:]]
    mag = {}
    for r in rows:
        if r[5] == "":
            mag[(round(float(r[0]), 6), round(float(r[1]), 6))] = abs(complex(float(r[2]), float(r[3])))
    assert (1.0, 0.0) not in mag  # the pole itself is an error row
    ring = [v for (x, y), v in mag.items() if max(abs(x - 1), abs(y)) < 0.15]
    edge = [v for (x, y), v in mag.items() if max(abs(x - 1), abs(y)) > 0.35]
    assert min(ring) > max(edge)


def test_scan_bad_grid(capsys):
    code, _, _ = run(["scan", "zeta", "--re-lo", "3", "--re-hi", "2", "--im-lo", "0", "--im-hi", "0"], capsys)
    assert code == 2


def test_zeros_compute_verify(tmp_path, capsys):
    f = tmp_path / "z.txt"
    code, _, _ = run(["--out", str(f), "zeros", "compute", "2"], capsys)
    assert code == 0
    body = [ln for ln in f.read_text().splitlines() if not ln.startswith("#")]
    assert body == ["14.134725141735", "21.022039638772"]
    out = tmp_path / "v.txt"
    code, _, _ = run(["--out", str(out), "zeros", "verify", str(f)], capsys)
    assert code == 0
    assert float(out.read_text().split("max_residual=")[1]) < 1e-8


def test_zeros_import_malformed(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("14.1\nfoo\n")
    code, _, err = run(["zeros", "import", str(f)], capsys)
    assert code == 2 and "line 2" in err


def test_zeros_import_ok(tmp_path, capsys):
    f = tmp_path / "ok.txt"
    f.write_text("14.134725142\n21.022039639\n")
    code, out, _ = run(["zeros", "import", str(f)], capsys)
    assert code == 0 and "count=2" in out and "source=imported" in out


def test_zeros_file_flag(tmp_path, capsys, table):
    f = tmp_path / "z.txt"
    io.write_sequence(f, table.ordinates, digits=12)
    code, out, _ = run(["--zeros-file", str(f), "eval", "superzeta", "--s", "2"], capsys)
    assert code == 0 and out.startswith("2.3104993")


@pytest.mark.parametrize("name, verdict", [("primes", "consistent"), ("shifted", "consistent"),
                                           ("powers", "hypothesis-violated")])
def test_theorem(seq_files, tmp_path, capsys, name, verdict):
    out = tmp_path / "r.json"
    args = ["--out", str(out), "theorem", "--perturbed", str(seq_files / f"{name}.txt")]
    if name == "powers":
        args += ["--k", "1"]
    code, _, _ = run(args, capsys)
    rep = json.loads(out.read_text())
    assert code == 0 and rep["verdict"] == verdict
    assert set(rep) == {"hypothesis_check", "grid", "verdict"}
    if name == "primes":
        assert all(g["G_value"]["re"] == 0 and g["G_value"]["im"] == 0 for g in rep["grid"])


def test_theorem_base_file(seq_files, tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(["--out", str(out), "theorem", "--base", str(seq_files / "primes.txt"), "--perturbed",
                      str(seq_files / "shifted.txt")], capsys)
    assert code == 0 and json.loads(out.read_text())["verdict"] == "consistent"


def test_deterministic_output(tmp_path, seq_files, table):
    outs = []
    for i in range(2):
        csv = tmp_path / f"s{i}.csv"
        js = tmp_path / f"t{i}.json"
        r1 = run_subprocess(["--out", str(csv), "scan", "primezeta", "--re-lo", "0.3", "--re-hi", "1.2", "--n-re",
                             "7", "--im-lo", "-1", "--im-hi", "1", "--n-im", "3"], tmp_path)
        r2 = run_subprocess(["--out", str(js), "theorem", "--perturbed", str(seq_files / "shifted.txt")], tmp_path)
        r3 = run_subprocess(["eval", "superzeta", "--s", "0.5+2i"], tmp_path)
        assert r1.returncode == r2.returncode == r3.returncode == 0
        outs.append((csv.read_bytes(), js.read_bytes(), r3.stdout))
    assert outs[0] == outs[1]


def test_help_lists_commands(capsys):
    with pytest.raises(SystemExit):
        cli.main(["--help"])
    text = capsys.readouterr().out
    for cmd in ("eval", "scan", "zeros", "detlog", "approx", "theorem"):
        assert cmd in text
