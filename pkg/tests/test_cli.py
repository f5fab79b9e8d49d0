import io
import json
from contextlib import redirect_stdout

import pytest

from ascentseq.cli import main


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        try:
            code = main(argv)
        except SystemExit as exc:
            code = exc.code
    return code, buf.getvalue()


def test_count_formula():
    code, out = run(["count", "--patterns", "201,210", "--n", "7", "--method", "formula"])
    assert code == 0
    assert out.strip() == "731"


@pytest.mark.parametrize("method", ["brute", "tree", "recurrence", "gf", "formula"])
def test_count_methods_agree_pair(method):
    code, out = run(["count", "--patterns", "201,210", "--n", "7", "--method", method])
    assert code == 0
    assert out.strip() == "731"


@pytest.mark.parametrize("method", ["brute", "tree", "recurrence", "gf", "formula"])
def test_count_methods_agree_0021(method):
    code, out = run(["count", "--patterns", "0021", "--n", "8", "--method", method])
    assert code == 0
    assert out.strip() == "2950"


def test_count_1012_formula_and_gf():
    for method in ("brute", "gf", "formula"):
        code, out = run(["count", "--patterns", "1012", "--n", "7", "--method", method])
        assert (code, out.strip()) == (0, "731")


def test_count_method_availability_errors():
    code, _ = run(["count", "--patterns", "1012", "--n", "5", "--method", "tree"])
    assert code == 2
    code, _ = run(["count", "--patterns", "010", "--n", "5", "--method", "formula"])
    assert code == 2
    # brute force works for any pattern set
    code, out = run(["count", "--patterns", "010", "--n", "5", "--method", "brute"])
    assert code == 0 and out.strip().isdigit()


def test_count_json_and_csv():
    code, out = run(
        ["count", "--patterns", "0021", "--n", "6", "--format", "json", "--method", "gf"]
    )
    data = json.loads(out)
    assert data == {"patterns": "0021", "n": 6, "method": "gf", "count": 188}
    code, out = run(["count", "--patterns", "0021", "--n", "6", "--format", "csv"])
    assert out.splitlines()[0] == "patterns,n,method,count"


def test_enumerate():
    code, out = run(["enumerate", "--patterns", "0021", "--n", "1"])
    assert (code, out.strip()) == (0, "0")
    code, out = run(["enumerate", "--patterns", "201,210", "--n", "3"])
    assert out.split() == ["000", "001", "010", "011", "012"]
    code, out = run(["enumerate", "--patterns", "0021", "--n", "4", "--format", "json"])
    data = json.loads(out)
    assert len(data["sequences"]) == 15


def test_table_pair():
    code, out = run(["table", "--family", "pair", "--n", "4"])
    assert out.splitlines() == ["1 5 0 0", "0 3 1 0", "0 0 4 0", "0 0 0 1"]
    code, out = run(["table", "--family", "pair", "--n", "4", "--format", "csv"])
    assert out.splitlines()[0] == "n,p,q,g"
    assert "4,0,2,5" in out.splitlines()
    code, out = run(["table", "--family", "pair", "--n", "4", "--format", "json"])
    assert json.loads(out)["array"][0] == [1, 5, 0, 0]


def test_table_a0_a1():
    code, out = run(["table", "--family", "a0", "--n", "5"])
    assert out.splitlines() == ["14 6 1", "4 1 0", "1 0 0"]
    code, out = run(["table", "--family", "a1", "--n", "4", "--format", "json"])
    assert json.loads(out)["array"] == [[1, 3, 1], [1, 1, 0], [1, 0, 0]]
    code, out = run(["table", "--family", "a0", "--n", "4", "--format", "csv"])
    lines = out.splitlines()
    assert lines[0] == "n,class,q,r,count"
    assert lines[1:] == ["4,g0,1,2,4", "4,g0,1,3,1", "4,g0,2,2,1"]


def test_csv_output_is_stable():
    first = run(["table", "--family", "a1", "--n", "6", "--format", "csv"])
    second = run(["table", "--family", "a1", "--n", "6", "--format", "csv"])
    assert first == second


def test_coeffs_plain_and_json():
    code, out = run(["coeffs", "--gf", "C2", "--order", "7"])
    assert out.splitlines() == ["2 1", "3 3", "4 8", "5 23", "6 74", "7 262"]
    code, out = run(["coeffs", "--gf", "f", "--order", "5", "--format", "json"])
    data = json.loads(out)
    assert data["variables"] == ["z"]
    assert data["terms"][0] == [0, "1/1"]
    code, out = run(["coeffs", "--gf", "C_pair", "--order", "5", "--format", "csv"])
    assert out.splitlines()[0] == "x,y,coeff"


def test_coeffs_json_roundtrip():
    from ascentseq.series import MSeries, build_closed_form

    code, out = run(["coeffs", "--gf", "D_0021", "--order", "9", "--format", "json"])
    parsed = MSeries.from_json_dict(json.loads(out))
    assert parsed == build_closed_form("D_0021", 9)


def test_verify_suite_exit_codes():
    code, out = run(["verify", "--suite", "wilf", "--n-max", "6"])
    assert code == 0
    assert "overall: PASS" in out
    code, out = run(["verify", "--suite", "pair", "--n-max", "6", "--order", "16"])
    assert code == 0
    code, out = run(
        ["verify", "--suite", "0021", "--n-max", "6", "--order", "16", "--format", "json"]
    )
    assert code == 0
    assert json.loads(out)["passed"] is True


def test_usage_errors_exit_2():
    assert run([])[0] == 2
    assert run(["count", "--patterns", "12", "--n", "3"])[0] == 2  # unreduced
    assert run(["count", "--patterns", "0021", "--n", "0"])[0] == 2
    assert run(["verify", "--suite", "pair", "--n-max", "10", "--order", "5"])[0] == 2
    assert run(["coeffs", "--gf", "nope", "--order", "5"])[0] == 2


def test_out_file_written_atomically(tmp_path):
    target = tmp_path / "out.txt"
    code, out = run(
        ["count", "--patterns", "201,210", "--n", "5", "--out", str(target)]
    )
    assert code == 0
    assert out == ""
    assert target.read_text() == "51\n"
    leftovers = [p for p in tmp_path.iterdir() if p != target]
    assert leftovers == []
