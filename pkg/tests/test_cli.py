"""Command-line behaviour: formats, determinism, exit codes."""

import csv
import json
import subprocess
import sys

from barrec import cli


def run_main(args, capsys):
    rc = cli.main(args)
    out = capsys.readouterr().out
    return rc, out


def test_solve_builtin_text(capsys):
    rc, out = run_main(["solve", "--builtin", "prod:4", "--recursor",
                        "both"], capsys)
    assert rc == 0
    assert "domain=17" in out and "domain=1" in out
    assert "valid=True" in out


def test_solve_dsl_symmetric(capsys):
    rc, out = run_main(["solve", "--h", "prod i < 5 : 1 + g(i)",
                        "--recursor", "symmetric"], capsys)
    assert rc == 0
    assert "i=32" in out and "domain=1" in out


def test_solve_parse_error_exit_2(capsys):
    rc = cli.main(["solve", "--h", "prod i <", "--recursor", "both"])
    assert rc == 2


def test_solve_fuel_exit_3(capsys):
    rc = cli.main(["solve", "--builtin", "prod:6", "--fuel", "5"])
    assert rc == 3


def test_solve_csv_schema(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    rc = cli.main(["solve", "--builtin", "leastinc:3", "--recursor", "both",
                   "--format", "csv", "--output", str(out)])
    assert rc == 0
    rows = list(csv.reader(out.read_text().splitlines()))
    assert rows[0] == list(cli.CSV_COLUMNS)
    assert len(rows) == 3
    assert rows[1][0] == "leastinc" and rows[1][2] == "spector"
    assert rows[2][4] == "4"  # symmetric domain size


def _strip_wall_csv(text):
    rows = [line.rsplit(",", 1)[0] for line in text.strip().splitlines()]
    return "\n".join(rows)


def _strip_wall_json(text):
    data = json.loads(text)
    for row in data:
        row.pop("wall_ms", None)
    return data


def test_bench_csv_deterministic(tmp_path):
    paths = []
    for k in (0, 1):
        p = tmp_path / ("bench%d.csv" % k)
        rc = cli.main(["bench", "--family", "leastinc", "--n", "3..4",
                       "--format", "csv", "--output", str(p)])
        assert rc == 0
        paths.append(p)
    a, b = (path.read_text() for path in paths)
    assert _strip_wall_csv(a) == _strip_wall_csv(b)
    header = a.splitlines()[0].split(",")
    assert header == list(cli.CSV_COLUMNS)
    modes = {line.split(",")[3] for line in a.splitlines()[1:]}
    assert modes == {"plain", "memoized"}


def test_bench_json_deterministic(tmp_path):
    datas = []
    for k in (0, 1):
        p = tmp_path / ("bench%d.json" % k)
        rc = cli.main(["bench", "--family", "prod", "--n", "4..4",
                       "--format", "json", "--output", str(p)])
        assert rc == 0
        datas.append(_strip_wall_json(p.read_text()))
    assert datas[0] == datas[1]
    spector = [r for r in datas[0] if r["recursor"] == "spector"][0]
    assert spector["domain_size"] == 17
    assert spector["alpha_prefix"][16] == 2


def test_bench_text_has_reference_column(capsys):
    rc, out = run_main(["bench", "--family", "prod"], capsys)
    assert rc == 0
    assert "1140" in out and "19154" in out
    assert "ref" in out


def test_bench_csv_and_json_numeric_content_agree(tmp_path):
    pc = tmp_path / "b.csv"
    pj = tmp_path / "b.json"
    cli.main(["bench", "--family", "contrived", "--n", "2..3",
              "--format", "csv", "--output", str(pc)])
    cli.main(["bench", "--family", "contrived", "--n", "2..3",
              "--format", "json", "--output", str(pj)])
    rows = list(csv.DictReader(pc.read_text().splitlines()))
    data = _strip_wall_json(pj.read_text())
    for crow, jrow in zip(rows, data):
        for key in ("family", "n", "recursor", "mode", "domain_size",
                    "calls", "i"):
            assert str(jrow[key]) == crow[key]


def test_check_subcommand(capsys):
    rc, out = run_main(["check", "--suite", "dsl", "--cases", "20",
                        "--seed", "1"], capsys)
    assert rc == 0
    assert "dsl" in out and "failed=0" in out


def test_thread_subcommand_json(capsys):
    rc, out = run_main(["thread", "--h", "g(0)", "--u", '{"0": 3}',
                        "--steps", "4", "--format", "json"], capsys)
    assert rc == 0
    data = json.loads(out)
    assert data["final"] == {"0": 3}
    assert data["steps"][0]["n"] == 0


def test_thread_total_flag(capsys):
    rc, out = run_main(["thread", "--h", "g(0)", "--u", '{"0": 2, "2": 9}',
                        "--steps", "4", "--total", "--format", "json"],
                       capsys)
    assert rc == 0
    data = json.loads(out)
    # Always-extends: index 0 holds 2, the control then names index 2.
    assert data["final"] == {"0": 2, "2": 9}


def test_interdef_test_subcommand(tmp_path):
    p = tmp_path / "inter.json"
    rc = cli.main(["interdef-test", "--cases", "10", "--seed", "4",
                   "--output", str(p)])
    assert rc == 0
    data = json.loads(p.read_text())
    assert data["passed"] == 20 and data["failed"] == 0
    assert len(data["results"]) == 20


def test_failed_verification_exit_4(monkeypatch, capsys):
    monkeypatch.setattr(cli, "verify_counterexample",
                        lambda h, c: False)
    rc = cli.main(["solve", "--builtin", "prod:4", "--recursor",
                   "symmetric"])
    assert rc == 4


def test_env_var_fuel(tmp_path):
    script = ("import sys; from barrec import cli; "
              "sys.exit(cli.main(['solve', '--builtin', 'prod:6']))")
    proc = subprocess.run([sys.executable, "-c", script],
                          env={"BARREC_FUEL": "5", "PATH": "/usr/bin:/bin"},
                          capture_output=True, text=True, cwd="/root/pkg")
    assert proc.returncode == 3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "barrec.cli", "solve",
                           "--builtin", "contrived:3", "--recursor", "both"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert "valid=True" in proc.stdout
