import io
import json
import shutil
import subprocess

import pytest

from splinetop import fixtures, oracle
from splinetop.cli import EXIT_CONTRACT, EXIT_INPUT, EXIT_OK, run
from splinetop.io import spline_to_doc


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_info_q():
    code, out, _ = call("info", "--fixture", "Q", "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["hereditary"] is True and data["labels"] == list("ABCDE")


def test_dim_text():
    assert call("dim", "--fixture", "Q", "--r", "0", "--d", "2")[:2] == (EXIT_OK, "11 ok\n")


def test_ls_dim_affine():
    code, out, _ = call("ls-dim", "--fixture", "Q", "--r", "0", "--k", "2", "--d", "2",
                        "--flats", "affine")
    assert (code, out) == (EXIT_OK, "9 ok\n")


def test_lattice_and_latcomplex():
    code, out, _ = call("lattice", "--fixture", "Q", "--homogenized")
    assert code == EXIT_OK and "rank counts: 1 6 7 1" in out
    code, out, _ = call("latcomplex", "--fixture", "Q", "--homogenized", "--flat", "3")
    assert out.splitlines()[1] == "components: AD BC"
    assert call("latcomplex", "--fixture", "Q", "--flat", "99")[0] == EXIT_INPUT
    code, out, _ = call("latcomplex", "--fixture", "Q", "--flat", "3", "--dot")
    assert out.startswith("graph latcomplex {")


def test_gamma_text_and_dot():
    code, out, _ = call("gamma", "--fixture", "Q", "--k", "2")
    assert "rows: 5 8 7" in out and "maximal: ABCD ABE ACE ADE BCE BDE CDE" in out
    dot1 = call("gamma", "--fixture", "Q", "--k", "2", "--dot")[1]
    assert dot1 == call("gamma", "--fixture", "Q", "--k", "2", "--dot")[1]


def test_check_and_decompose(tmp_path):
    path = tmp_path / "one.json"
    path.write_text(json.dumps(spline_to_doc([{(0, 0): 1}] * 5, "filtered")))
    assert call("check", "--fixture", "Q", "--r", "3", "--spline", str(path))[1] == "is_spline: true\n"
    code, out, _ = call("decompose", "--fixture", "Q", "--r", "0", "--k", "2", "--d", "2",
                        "--flats", "affine", "--spline", str(path), "--format", "json")
    data = json.loads(out)
    assert code == EXIT_OK and data["status"] == "ok" and len(data["summands"]) == 5
    x2 = tmp_path / "x2.json"
    x2.write_text(json.dumps(spline_to_doc([{(2, 0): 1}] * 5, "filtered")))
    code, out, _ = call("decompose", "--fixture", "Q", "--r", "0", "--k", "2", "--d", "2",
                        "--flats", "affine", "--spline", str(x2))
    assert (code, out) == (EXIT_OK, "status: not-in-ls\n")


def test_decompose_rejects_non_spline(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(spline_to_doc([{(0, 0): 1}] + [{}] * 4, "filtered")))
    assert call("decompose", "--fixture", "Q", "--r", "0", "--k", "2", "--d", "2",
                "--spline", str(path))[0] == EXIT_INPUT


def test_hf_csv_and_report():
    code, out, _ = call("hf", "--fixture", "DeltaPlus", "--r", "0", "--dmax", "4", "--format", "csv")
    assert code == EXIT_OK and out.splitlines()[0] == "d,hf,oracle"
    code, out, _ = call("hf", "--fixture", "Q", "--r", "0", "--dmax", "5")
    assert out.splitlines()[2] == "2 11 ok"
    code, out, _ = call("report", "--fixture", "Q", "--r", "0", "--dmax", "6", "--format", "json")
    assert code == EXIT_OK and json.loads(out)["ls_equal_from"] == 2


def test_gendeg_tn_file(tmp_path):
    code, out, _ = call("tn", "--n", "2")
    path = tmp_path / "t2.json"
    path.write_text(out)
    code, out, _ = call("gendeg", "--input", str(path), "--r", "0", "--dmax", "4")
    assert code == EXIT_OK and out.splitlines()[0] == "0 1 ok"


@pytest.mark.parametrize("argv", [
    ["dim", "--fixture", "Q", "--r", "-1", "--d", "2"],
    ["dim", "--fixture", "nope", "--r", "0", "--d", "2"],
    ["dim", "--r", "0", "--d", "2"],
    ["dim", "--input", "/does/not/exist", "--r", "0", "--d", "2"],
    ["ls-dim", "--fixture", "Q", "--r", "0", "--k", "3", "--d", "2"],
    ["hf", "--fixture", "Q", "--r", "0", "--selector", "bogus"],
    ["info", "--fixture", "Q", "--format", "csv"],
    ["tn", "--n", "1"],
    ["frobnicate"],
])
def test_input_errors(argv):
    assert call(*argv)[0] == EXIT_INPUT


def test_bad_complex_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps({"ambient_dim": 2, "kind": "simplicial",
                                "vertices": [[0, 0], [1, 0], [0, 0]], "facets": [[0, 1, 2]]}))
    code, _, err = call("info", "--input", str(path))
    assert code == EXIT_INPUT and err.startswith("error:")


def test_oracle_mismatch_exit(monkeypatch):
    def broken(space, count=3):
        return oracle.OracleCheck(space.dim, tuple((7, space.dim + 1) for _ in range(count)))
    monkeypatch.setattr(oracle, "check", broken)
    code, _, err = call("dim", "--fixture", "Q", "--r", "0", "--d", "2")
    assert code == EXIT_CONTRACT and "contract violation" in err


def test_fixtures_listing():
    code, out, _ = call("fixtures")
    assert set(json.loads(out)) == set(fixtures.FIXTURE_DOCS)


@pytest.mark.skipif(shutil.which("splinetop") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["splinetop", "dim", "--fixture", "triangle", "--r", "0", "--d", "2"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "6 ok\n"
