import json
import subprocess
import sys

import pytest

from bcmotzkin.cli import main, rational
from bcmotzkin.laplace import stable_keys
from bcmotzkin.polyalg import LaurentPoly
from bcmotzkin.reference import F11, W03


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cache_args(tmp_path):
    return ["--cache-dir", str(tmp_path / "cache")]


def test_motzkin_csv(capsys, cache_args):
    code, out, _ = run(["compute-motzkin", "--genus", "0", "--vertices", "1", "--max-total", "8",
                        "--b", "1", "--c", "1"] + cache_args, capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "g,v,n,value"
    assert [line.split(",")[3] for line in lines[1:]] == ["1", "1", "2", "4", "9", "21", "51", "127", "323"]


def test_catalan_rows_are_lexicographic(capsys, cache_args):
    code, out, _ = run(["compute-catalan", "--genus", "0", "--vertices", "2", "--max-total", "4",
                        "--format", "json"] + cache_args, capsys)
    assert code == 0
    rows = json.loads(out)["rows"]
    ns = [tuple(r["n"]) for r in rows]
    assert ns == sorted(ns) and len(ns) == 15
    assert dict(zip(ns, (r["value"] for r in rows)))[(1, 1)] == "1"


def test_motzkin_polynomial_and_rational_strings(capsys, cache_args):
    code, out, _ = run(["compute-motzkin", "--genus", "0", "--vertices", "1", "--degrees", "2",
                        "--format", "json"] + cache_args, capsys)
    assert code == 0
    val = json.loads(out)["rows"][0]["value"]
    assert val == [{"eb": 0, "ec": 2, "coef": "1"}, {"eb": 2, "ec": 0, "coef": "1"}]
    code, out, _ = run(["compute-motzkin", "--genus", "0", "--vertices", "1", "--degrees", "2",
                        "--b", "1/2", "--c", "1"] + cache_args, capsys)
    assert out.strip().splitlines()[1] == "0,1,2,5/4"


def test_compute_F(capsys, cache_args):
    code, out, _ = run(["compute-F", "--genus", "1", "--vertices", "1"] + cache_args, capsys)
    assert code == 0
    data = json.loads(out)
    assert LaurentPoly.from_json(data["F"]) == F11()


def test_compute_W_both(capsys, cache_args):
    code, out, _ = run(["compute-W", "--genus", "0", "--vertices", "3", "--method", "both"] + cache_args, capsys)
    assert code == 0
    data = json.loads(out)
    assert data["match"] is True
    assert data["dF"] == data["residue"]
    assert LaurentPoly.from_json(data["residue"]) == W03()


@pytest.mark.parametrize("argv", [
    ["compute-F", "--genus", "0", "--vertices", "2"],
    ["compute-motzkin", "--genus", "0", "--vertices", "1", "--max-total", "3", "--b", "0.5", "--c", "1"],
    ["compute-motzkin", "--genus", "0", "--vertices", "1", "--max-total", "3", "--b", "1"],
    ["compute-motzkin", "--genus", "0", "--vertices", "1", "--max-total", "3", "--b", "1/0", "--c", "1"],
    ["compute-catalan", "--genus", "0", "--vertices", "2", "--degrees", "2"],
    ["compute-catalan", "--genus", "-1", "--vertices", "1", "--max-total", "2"],
    ["verify", "--suite", "nonsense"],
    ["compute-W", "--genus", "1", "--vertices", "1", "--method", "guess"],
])
def test_usage_errors_exit_2(argv, capsys, cache_args):
    with pytest.raises(SystemExit) as exc:
        main(argv + cache_args)
    assert exc.value.code == 2


def test_rational_parser():
    from fractions import Fraction
    assert rational("3/4") == Fraction(3, 4)
    assert rational("-2") == -2


def test_internal_failure_exit_1(capsys, cache_args, monkeypatch):
    from bcmotzkin import cli
    from bcmotzkin.errors import NonLaurentError

    class Boom:
        def __init__(self, cache):
            pass

        def get(self, g, v):
            raise NonLaurentError("right-hand side of dF/dt1 is not Laurent")

    monkeypatch.setattr(cli, "FreeEnergyStore", Boom)
    code, _, err = run(["compute-F", "--genus", "1", "--vertices", "1"] + cache_args, capsys)
    assert code == 1
    assert "NonLaurentError" in err and "not Laurent" in err


def test_verify_identities(capsys, cache_args):
    code, out, _ = run(["verify", "--suite", "identities"] + cache_args, capsys)
    assert code == 0
    report = json.loads(out)
    assert set(report) == {"suite", "checks", "version", "timestamp"}
    assert report["suite"] == "identities"
    assert all(c["status"] == "pass" for c in report["checks"])
    assert len(report["checks"]) == 61


def test_verify_eo(capsys, cache_args):
    code, out, _ = run(["verify", "--suite", "eo"] + cache_args, capsys)
    assert code == 0
    names = [c["name"] for c in json.loads(out)["checks"]]
    for g, v in stable_keys(3):
        assert f"eo: ({g},{v}) residue route equals d1..dv F" in names


def test_verify_failure_exit_1(capsys, cache_args, monkeypatch):
    from bcmotzkin import reference
    monkeypatch.setattr(reference, "W11", reference.W03)
    code, out, err = run(["verify", "--suite", "eo", "--max-level", "1"] + cache_args, capsys)
    assert code == 1
    assert "W11 closed form" in err


def test_deterministic_artifacts(tmp_path):
    outs = []
    for i in range(2):
        for cmd in (["compute-F", "--genus", "1", "--vertices", "2"],
                    ["compute-motzkin", "--genus", "1", "--vertices", "2", "--max-total", "6", "--format", "json"]):
            path = tmp_path / f"{cmd[0]}_{i}.out"
            assert main(cmd + ["--no-cache", "--output", str(path)]) == 0
            outs.append(path.read_bytes())
    assert outs[0] == outs[2] and outs[1] == outs[3]


def test_report_identical_except_timestamp(tmp_path):
    reports = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        main(["verify", "--suite", "motzkin", "--cache-dir", str(tmp_path / "c"), "--output", str(path)])
        data = json.loads(path.read_text())
        data.pop("timestamp")
        reports.append(data)
    assert reports[0] == reports[1]


def test_warm_and_cold_cache_agree(tmp_path):
    cache = str(tmp_path / "cache")
    files = []
    for tag in ("cold", "warm"):
        for cmd in (["compute-W", "--genus", "1", "--vertices", "2"],
                    ["compute-catalan", "--genus", "1", "--vertices", "2", "--max-total", "6"]):
            path = tmp_path / f"{tag}_{cmd[0]}"
            assert main(cmd + ["--cache-dir", cache, "--output", str(path)]) == 0
            files.append(path.read_bytes())
    assert files[0] == files[2] and files[1] == files[3]
    assert (tmp_path / "cache" / "manifest.json").exists()


def test_cache_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("BCMOTZKIN_CACHE", str(tmp_path / "envcache"))
    assert main(["compute-F", "--genus", "1", "--vertices", "1", "--output", str(tmp_path / "f.json")]) == 0
    assert (tmp_path / "envcache" / "manifest.json").exists()


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "bcmotzkin", "compute-catalan", "--genus", "0",
                           "--vertices", "1", "--max-total", "4", "--no-cache"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "0,1,4,2"
    proc = subprocess.run([sys.executable, "-m", "bcmotzkin", "compute-F"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_parallel_all_suites(tmp_path):
    path = tmp_path / "all.json"
    code = main(["verify", "--suite", "all", "--jobs", "3", "--max-level", "2", "--max-total", "6",
                 "--cache-dir", str(tmp_path / "c"), "--output", str(path)])
    assert code == 0
    suites = {c["name"].split(":")[0] for c in json.loads(path.read_text())["checks"]}
    assert suites == {"catalan-oracle", "motzkin", "identities", "laplace", "eo", "bridge"}
