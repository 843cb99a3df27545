import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from qplab.cli import main
from qplab.partitions import Multiset


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def csv_rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_series_csv(tmp_path):
    code, text = run("series", "-A", "1,2,2,3,3,3,4,4", "-N", "4", "--format", "csv")
    assert code == 0
    assert csv_rows(text)[-1] == ["4", "11"]
    code, text = run("series", "-A", "1", "-N", "3", "--format", "csv")
    assert [r[1] for r in csv_rows(text)[1:]] == ["1", "1", "1", "1"]
    code, text = run("series", "-A", "1,2,3", "-N", "6", "--format", "json")
    assert json.loads(text)["values"] == [1, 1, 2, 3, 4, 5, 7]


def test_recover_json():
    code, text = run("recover", "-A", "1,2", "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["period"] == 2
    assert all(Fraction(p[1]) == Fraction(1, 2) for p in data["pieces"])
    code, text = run("recover", "-A", "2", "--format", "json")
    assert [[Fraction(c) for c in p] for p in json.loads(text)["pieces"]] == [[1], []]


def test_recover_large_period_pretty():
    code, text = run("recover", "-A", "1,1,1,1,300")
    assert code == 0 and "period 300, degree 4" in text


def test_profile_csv_and_json_agree():
    args = ("profile", "-A", "1,2,3,4", "--kind", "turan3")
    _, c = run(*args, "--format", "csv")
    _, j = run(*args, "--format", "json")
    rows = csv_rows(c)
    assert rows[0] == ["class", "degree", "leading_num", "leading_den"]
    data = json.loads(j)
    for row, entry in zip(rows[1:], data["classes"]):
        assert int(row[0]) == entry["class"]
        assert Fraction(int(row[2]), int(row[3])) == Fraction(entry["leading"])
    assert "." not in c and all("." not in e["leading"] for e in data["classes"])


def test_profile_pretty_has_hypothesis_note():
    code, text = run("profile", "-A", "1,2,3,4,5", "--kind", "turan2")
    assert code == 0 and "gcd criterion" in text and "approx" in text


def test_scan_exit_codes():
    code, text = run("scan", "-A", "1,2,3,4,5", "--kind", "turan2", "-N", "10000")
    assert code == 0 and "last violation at n = 37" in text
    code, text = run("scan", "-A", "1", "--kind", "laguerre", "-d", "0", "-N", "100")
    assert code == 0 and "no violation" in text
    code, text = run("scan", "-A", "1,2,3,4,5,6", "--kind", "turan3", "-N", "2000",
                     "--format", "json")
    data = json.loads(text)
    assert code == 1 and data["persistent"] and 2 in data["late_violation_classes"]


def test_values_csv_for_plotting():
    code, text = run("values", "-A", "1,2,3,4,5", "--kind", "turan2", "-N", "40",
                     "--format", "csv")
    rows = csv_rows(text)
    assert code == 0 and rows[0] == ["n", "value"]
    assert [int(r[0]) for r in rows[1:]] == list(range(1, 41))
    assert int(rows[37][1]) < 0 and int(rows[38][1]) >= 0


def test_limit_machine_format_is_exact():
    code, text = run("limit", "-A", "1,2,3,4,5", "-s", "2", "-n", "1000", "--format", "csv")
    rows = csv_rows(text)
    assert code == 0 and rows[0] == ["x", "value", "target", "deviation"]
    assert all("/" in cell for row in rows[1:] for cell in row)
    assert Fraction(rows[2][2]) == 5


def test_almkvist():
    code, text = run("almkvist", "-A", "1,1", "-j", "1", "--format", "json")
    data = json.loads(text)
    assert code == 0 and data["hypothesis"] and data["coefficients"] == ["1/1", "1/1"]
    code, text = run("almkvist", "-A", "2,4", "-j", "2")
    assert code == 0 and "FAILS" in text


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["series"],
    ["series", "-A", "0,1", "-N", "3"],
    ["series", "-A", "1,2", "-N", "-1"],
    ["scan", "-A", "1,2", "--kind", "laguerre", "-N", "10"],
    ["scan", "-A", "1,2", "--kind", "nope", "-N", "10"],
    ["profile", "-A", "1,2", "--kind", "jensen"],
    ["limit", "-A", "1,2", "-s", "5", "-n", "10"],
    ["limit", "-A", "1,2", "-s", "1", "-n", "10", "--x", "a,b"],
    ["verify-paper", "--only", "no-such-check"],
    ["series", "-A", "1", "-N", "2", "--jobs", "0"],
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_cache_cold_and_warm_are_byte_identical(tmp_path):
    args = ("series", "-A", "1,2,3,4,5", "-N", "500", "--format", "csv",
            "--cache-dir", str(tmp_path))
    _, cold = run(*args)
    cache_file = tmp_path / "A_1_2_3_4_5.csv"
    assert cache_file.exists()
    _, warm = run(*args)
    assert cold == warm
    # a longer request extends the file, a shorter one is served from it
    run("series", "-A", "5,4,3,2,1", "-N", "800", "--cache-dir", str(tmp_path))
    assert len(cache_file.read_text().splitlines()) == 801
    assert run(*args)[1] == cold


def test_corrupted_cache_is_rebuilt(tmp_path):
    args = ("series", "-A", "1,2,3", "-N", "60", "--format", "csv", "--cache-dir", str(tmp_path))
    _, good = run(*args)
    path = tmp_path / "A_1_2_3.csv"
    lines = path.read_text().splitlines()
    lines[30] = "30,999"
    path.write_text("\n".join(lines) + "\n")
    assert run(*args)[1] == good
    path.write_text("garbage\n")
    assert run(*args)[1] == good
    assert path.read_text().splitlines()[30] != "30,999"


def test_env_var_selects_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("QPLAB_CACHE_DIR", str(tmp_path / "env"))
    run("series", "-A", "2,3", "-N", "10")
    assert (tmp_path / "env" / "A_2_3.csv").exists()


def test_no_cache_writes_nothing(tmp_path):
    run("series", "-A", "2,3", "-N", "10", "--no-cache", "--cache-dir", str(tmp_path / "x"))
    assert not (tmp_path / "x").exists()


def test_verify_only_runs_one_check():
    code, text = run("verify-paper", "--only", "partition-counts")
    lines = text.strip().splitlines()
    assert code == 0 and len(lines) == 1 and lines[0].startswith("PASS  partition-counts")


def test_verify_list():
    code, text = run("verify-paper", "--list")
    assert code == 0 and "turan4-1111-300" in text.split()


def test_verify_with_corrupted_cache(tmp_path):
    d = tmp_path / "c"
    d.mkdir()
    (d / "A_1_2_3_4_5.csv").write_text("0,1\n1,7\n")
    code, text = run("verify-paper", "--only", "turan2-A5-threshold", "--cache-dir", str(d))
    assert code == 0 and text.startswith("PASS")


def test_parallel_output_is_identical():
    base = ("profile", "-A", "1,2,3,4,6", "--kind", "laguerre", "-d", "1", "--format", "json")
    assert run(*base)[1] == run(*base, "--jobs", "3")[1]
    scan = ("scan", "-A", "1,2,3,4,5", "--kind", "turan2", "-N", "3000", "--format", "json")
    assert run(*scan)[1] == run(*scan, "--jobs", "3")[1]


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "qplab", "series", "-A", "1,2", "-N", "3",
                           "--format", "csv", "--cache-dir", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "3,2"
