import json
import subprocess
import sys
from pathlib import Path

import pytest

from trigonal.cli import run

DATA = Path(__file__).parent / "data"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_picard_table(capsys):
    code, out, _ = call(capsys, "chow", "picard", "--from", "2", "--to", "12")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 11
    assert rows[-1] == {"g": 12, "a": -18, "b": 27, "group": "Z + Z/9"}


def test_picard_csv_and_text(capsys):
    _, out, _ = call(capsys, "chow", "picard", "--from", "2", "--to", "4", "--format", "csv")
    assert out.splitlines() == ["g,a,b,group", "2,-8,17,Z", "3,-9,9,Z + Z/9", "4,-10,19,Z"]
    _, out, _ = call(capsys, "chow", "picard", "--from", "3", "--to", "3", "--format", "text")
    assert out.strip().endswith("Z + Z/9")


def test_class_w_and_y(capsys):
    _, out, _ = call(capsys, "chow", "class-w")
    assert json.loads(out) == "2*nu1*c1 + 4*c1^2 - 9*c2"
    _, out, _ = call(capsys, "chow", "class-y", "--genus", "3")
    y = json.loads(out)
    assert y["kernel_coords"] == [-9, 9] and y["restriction_check"] is True
    _, out, _ = call(capsys, "chow", "class-y", "--symbolic")
    assert json.loads(out)["gamma1"] == "g + 15"


def test_cover_singular(capsys):
    code, out, _ = call(capsys, "cover", "singular", "--f", "x1^2*x2", "--g", "0")
    r = json.loads(out)
    assert code == 0 and r["in_W"] is True and r["witness"] == "(0:1)"


def test_cover_build_and_smooth(capsys, tmp_path):
    _, out, _ = call(capsys, "cover", "build", "--cubic", "x1^3 - x2^3")
    assert json.loads(out)["fiber_type"] == "etale"
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"m": 2, "n": 2, "phi": ["t1^2", "t0^2", "0", "-t1^2"]}))
    _, out, _ = call(capsys, "cover", "smooth", "--input", str(p))
    v = json.loads(out)
    assert v["smooth"] is False and v["singular_points"] == [{"base": "(1:0)", "fiber": "(0:1)"}]


def test_bundle_commands(capsys):
    code, out, _ = call(capsys, "bundle", "split", "--input", str(DATA / "euler2.json"))
    assert code == 0 and json.loads(out) == {"splitting": [1, 1]}
    _, out, _ = call(capsys, "bundle", "degeneracy", "--input", str(DATA / "euler2.json"), "--field", "p=101")
    assert json.loads(out)["nondegenerate"] is True


def test_probe_is_byte_identical(capsys):
    argv = ["bundle", "probe", "--r", "2", "--d", "4", "--p", "11", "--trials", "2000", "--seed", "7"]
    a = call(capsys, *argv)
    b = call(capsys, *argv)
    assert a == b and a[0] == 0


def test_parse_error_has_offset(capsys):
    code, out, err = call(capsys, "cover", "singular", "--f", "x1^2*x2 +")
    e = json.loads(err)
    assert code == 1 and out == "" and e["error"] == "parse" and e["offset"] == 9


@pytest.mark.parametrize(
    "argv, code",
    [
        (["cover"], 2),
        (["nonsense"], 2),
        (["chow", "picard", "--from", "1"], 2),
        (["cover", "singular", "--f", "x1^3", "--field", "p=3"], 2),
        (["bundle", "split", "--input", "/nonexistent.json"], 1),
        (["bundle", "probe", "--r", "2", "--d", "4", "--p", "3", "--trials", "5"], 1),
        (["verify", "--only", "nope"], 2),
    ],
)
def test_error_exit_codes(capsys, argv, code):
    got, out, err = call(capsys, *argv)
    assert got == code and out == ""
    assert "error" in json.loads(err)


def test_domain_error_from_degenerate_matrix(capsys, tmp_path):
    p = tmp_path / "m.json"
    p.write_text(json.dumps({"r": 1, "d": 1, "entries": [[["1", "0"]], [["1", "0"]]]}))
    code, _, err = call(capsys, "bundle", "split", "--input", str(p))
    assert code == 1 and json.loads(err)["error"] == "DegenerateMatrix"


def test_verify_subset(capsys):
    code, out, _ = call(capsys, "verify", "--only", "picard")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 1 and lines[0].startswith("[PASS] 3.")


def test_console_script_entry_point():
    r = subprocess.run([sys.executable, "-m", "trigonal.cli", "chow", "class-w"], capture_output=True, text=True)
    assert r.returncode == 0 and json.loads(r.stdout) == "2*nu1*c1 + 4*c1^2 - 9*c2"
