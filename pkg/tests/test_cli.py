import json
import subprocess
import sys

import pytest

from rootstrata.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "A2")
    assert code == 0
    assert "6 (3 positive)" in out
    code, out, _ = run(capsys, "info", "G2", "--json")
    assert code == 0 and json.loads(out)["marks"] == [3, 2]


def test_info_bad_spec(capsys):
    code, _, err = run(capsys, "info", "Z9")
    assert code == 2 and "error" in err


def test_oshima(capsys):
    code, out, _ = run(capsys, "oshima", "B2", "--S", "1", "--beta", "1,1")
    assert code == 0 and out.strip() == "orbits=2 lengths=2 pass"


@pytest.mark.parametrize("argv", [
    ["oshima", "B2", "--S", "3", "--beta", "1,1"],
    ["oshima", "B2", "--S", "1", "--beta", "2,1"],
    ["oshima", "B2", "--S", "1", "--beta", "1"],
    ["oshima", "B2", "--S", "x", "--beta", "1,1"],
    ["oshima", "A2", "--S", "1", "--beta", "0,1"],
    ["ralpha", "G2", "--alpha", "3"],
    ["ralpha", "G2", "--alpha", "1", "--k", "4"],
    ["verify", "--max-rank", "9"],
    ["verify", "--max-rank", "0"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_argparse_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["oshima", "B2"])
    assert exc.value.code == 2


def test_strata(capsys):
    code, out, _ = run(capsys, "strata", "G2", "--S", "1", "--beta", "3,1", "--json")
    data = json.loads(out)
    assert code == 0 and data["z_stratum_type"] == ["A2"] and data["pass"]
    code, out, _ = run(capsys, "strata", "A3", "--S", "1", "--beta", "0,1,0")
    assert code == 0 and "misses" in out


def test_faces(capsys):
    code, out, _ = run(capsys, "faces", "A2", "--json")
    data = json.loads(out)
    assert code == 0
    assert [f["I"] for f in data["faces"]] == [[1], [2]]
    assert all(f["certified"] for f in data["faces"])
    assert data["faces"][0]["functional"] == ["2/3", "1/3"]


def test_ralpha(capsys):
    code, out, _ = run(capsys, "ralpha", "F4")
    assert code == 0
    for value in ("3/2", "11/6", "7/6", "3/4"):
        assert value in out
    assert out.count("< 2") == 4
    code, out, _ = run(capsys, "ralpha", "F4", "--json")
    data = json.loads(out)
    assert [d["r_min"] for d in data["dilations"]] == ["3/2", "11/6", "7/6", "3/4"]
    assert data["all_below_2"]
    code, out, _ = run(capsys, "ralpha", "G2", "--alpha", "1", "--k", "-3", "--json")
    assert code == 0 and json.loads(out)["dilations"][0]["k"] == -3


def test_counts(capsys):
    code, out, _ = run(capsys, "counts", "E6", "--iterando")
    assert code == 0
    assert "35" in out and "36" in out and "warning" in out
    code, out, _ = run(capsys, "counts", "B3", "--alpha", "3", "--json")
    data = json.loads(out)
    assert data["leaves"] == [{"system": "B3", "alpha": 3, "formula": 3, "brute": 3, "match": True}]


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "--max-rank", "2", "--json", "--jobs", "1")
    data = json.loads(out)
    assert code == 0
    assert data["totals"]["fail"] == 0 and data["systems"] == ["A1", "A2", "B2", "G2"]


def test_verify_single_check_text(capsys):
    code, out, _ = run(capsys, "verify", "--max-rank", "3", "--check", "root_count", "--jobs", "1")
    assert code == 0
    assert out.splitlines()[-1] == "7/7 checks passed"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rootstrata", "ralpha", "G2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "1/2" in proc.stdout and "3/2" in proc.stdout
