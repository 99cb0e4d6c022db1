import json
import subprocess
import sys

import numpy as np
import pytest

from qudist.cli import main
from qudist.matrixfile import MatrixFileError, format_matrix, parse_matrix, read_matrix, write_matrix


@pytest.fixture
def write_pair(tmp_path):
    def _write(e, u, name="pair"):
        pe, pu = tmp_path / f"{name}_e.json", tmp_path / f"{name}_u.json"
        write_matrix(pe, e)
        write_matrix(pu, u)
        return str(pe), str(pu)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# --- matrix files -------------------------------------------------------------

def test_matrix_file_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    a = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    write_matrix(tmp_path / "a.json", a)
    np.testing.assert_array_equal(read_matrix(tmp_path / "a.json"), a)
    doc = json.loads((tmp_path / "a.json").read_text())
    assert doc["dim"] == 4
    assert doc["matrix"][1][2] == [a[1, 2].real, a[1, 2].imag]
    assert b"\r" not in (tmp_path / "a.json").read_bytes()


def test_matrix_file_format_is_stable():
    a = np.array([[0.8, 0.4], [0.4, 0.2]])
    assert format_matrix(a) == format_matrix(a.copy())
    assert format_matrix(a).startswith('{\n  "dim": 2,\n  "matrix": [\n    [[0.8, 0.0], [0.4, 0.0]],')


@pytest.mark.parametrize("text, fragment", [
    ('{"dim": 2, "matrix": [[', "line 1 column"),
    ('{"dim": 2,\n "matrix": [[[1, 0], [0, 0]],\n [[0, 0], [1, 0]]]\n', "line 4"),
    ('[1, 2]', "expected an object"),
    ('{"dim": 0, "matrix": []}', "'dim' must be a positive integer"),
    ('{"dim": 2, "matrix": [[[1, 0], [0, 0]]]}', "list of 2 rows"),
    ('{"dim": 2, "matrix": [[[1, 0]], [[0, 0], [1, 0]]]}', "matrix[0]"),
    ('{"dim": 1, "matrix": [[[1, 0, 0]]]}', "matrix[0][0]"),
    ('{"dim": 1, "matrix": [[["1", 0]]]}', "matrix[0][0]"),
    ('{"dim": 1, "matrix": [[[true, 0]]]}', "matrix[0][0]"),
])
def test_matrix_file_errors(text, fragment):
    with pytest.raises(MatrixFileError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        parse_matrix(text)


# --- report -------------------------------------------------------------------

def test_report_case_one(capsys, write_pair, diag_pair):
    code, out, _ = run(capsys, "report", *write_pair(*diag_pair))
    assert code == 0
    assert out.splitlines()[0] == "case=1 b=1.000000 d=1.000000"
    assert "m00=1 m01=1 m10=1 m11=0 m=0" in out
    assert "not unique" in out


def test_report_case_two(capsys, write_pair, t08_pair):
    code, out, _ = run(capsys, "report", *write_pair(*t08_pair))
    assert code == 0
    assert out.splitlines()[0] == "case=2 b=0.600000 d=0.316228"
    assert "spectrum 0.800000x1" in out


def test_report_oracle(capsys, write_pair, t08_pair):
    code, out, _ = run(capsys, "report", *write_pair(*t08_pair), "--oracle", "--omega-grid", "16")
    assert code == 0
    assert out.splitlines()[-1] == "oracle min=0.316228 chi=1 omega=0.000000"


def test_report_json(capsys, write_pair, t08_pair):
    code, out, _ = run(capsys, "report", *write_pair(*t08_pair), "--json", "--oracle")
    assert code == 0
    doc = json.loads(out)
    assert doc["case"] == 2
    assert doc["b"] == 0.6
    assert doc["d"] == 0.316227766
    assert doc["dims"] == {"m00": 0, "m01": 0, "m10": 0, "m11": 0, "m": 1}
    assert doc["spectrum"] == [{"value": 0.8, "multiplicity": 1}]
    assert doc["q0"] == [[[0.5, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.5, 0.0]]]
    assert doc["oracle"] == {"min": 0.316227766, "chi": [1], "omega": [0.0]}
    assert set(doc["residuals"]) == {"projection", "orthogonality", "distance", "routes"}


def test_report_json_case_one(capsys, write_pair, diag_pair):
    code, out, _ = run(capsys, "report", *write_pair(*diag_pair), "--json", "--oracle")
    doc = json.loads(out)
    assert code == 0
    assert doc["case"] == 1 and doc["q0"] is None and doc["witness_unique"] is False
    assert "oracle" not in doc


def test_report_byte_stable(capsys, write_pair):
    from qudist.oracle import InstanceSpec, random_instance

    e, u, _ = random_instance(InstanceSpec(0, 1, 2, 0, ((0.3, 2), (0.55, 1)), seed=8))
    paths = write_pair(e, u)
    for flags in ((), ("--json",), ("--oracle",)):
        first = run(capsys, "report", *paths, *flags)
        second = run(capsys, "report", *paths, *flags)
        assert first == second


def test_report_parse_failure(capsys, tmp_path, write_pair, t08_pair):
    _, pu = write_pair(*t08_pair)
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n "matrix": [[[1, 0], [0 0]]]}')
    code, out, err = run(capsys, "report", str(bad), pu)
    assert code == 3
    assert "line 2 column" in err
    code, _, err = run(capsys, "report", str(tmp_path / "missing.json"), pu)
    assert code == 3


def test_report_validation_failure(capsys, write_pair, t08_pair):
    e, u = t08_pair
    code, _, err = run(capsys, "report", *write_pair(0.9 * e, u))
    assert code == 2 and "not idempotent" in err
    code, _, err = run(capsys, "report", *write_pair(e, np.eye(3)))
    assert code == 2


def test_report_tol_flag(capsys, write_pair, t08_pair):
    e, u = t08_pair
    e_noisy = e + 1e-7 * np.array([[1, 0], [0, -1]])
    paths = write_pair(e_noisy, u)
    assert run(capsys, "report", *paths)[0] == 2
    code, out, _ = run(capsys, "--tol", "1e-6", "report", *paths)
    assert code == 0 and out.startswith("case=2 b=0.6")


# --- curve --------------------------------------------------------------------

def read_csv(path):
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().split("\n")
    assert lines[-1] == ""
    return lines[0], [line.split(",") for line in lines[1:-1]]


def test_curve_shape(capsys, tmp_path):
    out = tmp_path / "c.csv"
    assert run(capsys, "curve", "--b-min", "0", "--b-max", "0.45", "--steps", "10", "--out", str(out))[0] == 0
    header, rows = read_csv(out)
    assert header == "b,formula,walters"
    assert len(rows) == 10
    assert all(r[1] and r[2] for r in rows)


def test_curve_values(capsys, tmp_path):
    out = tmp_path / "c.csv"
    run(capsys, "curve", "--b-min", "0", "--b-max", "0.5", "--steps", "11", "--out", str(out))
    _, rows = read_csv(out)
    by_b = {r[0]: r for r in rows}
    assert by_b["0.2"] == ["0.2", "0.100508962", "0.26"]
    assert by_b["0.5"][2] == ""
    assert by_b["0"] == ["0", "0", "0"]


def test_curve_byte_stable(capsys, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        run(capsys, "curve", "--b-min", "0.01", "--b-max", "1", "--steps", "77", "--out", str(path))
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("lo, hi, steps", [("0.5", "0.2", "5"), ("-0.1", "0.3", "5"), ("0", "1.2", "5"),
                                           ("0", "0.3", "0")])
def test_curve_bad_range(capsys, tmp_path, lo, hi, steps):
    code, _, err = run(capsys, "curve", "--b-min", lo, "--b-max", hi, "--steps", steps,
                       "--out", str(tmp_path / "x.csv"))
    assert code == 2 and "error" in err


# --- gen ----------------------------------------------------------------------

def test_gen_then_report(capsys, tmp_path):
    prefix = tmp_path / "inst"
    code, out, _ = run(capsys, "gen", "--dims", "0,0,0,0", "--spectrum", "0.8", "--seed", "42",
                       "--out", str(prefix))
    assert code == 0
    pe, pu = out.split()
    assert read_matrix(pe).shape == (2, 2)
    code, out, _ = run(capsys, "report", pe, pu)
    assert out.startswith("case=2 b=0.600000 d=0.316228")


def test_gen_one_dimensional(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "--dims", "1,0,0,0", "--out", str(tmp_path / "one"))
    pe, pu = out.split()
    np.testing.assert_allclose(read_matrix(pe), [[1]], atol=1e-15)
    np.testing.assert_allclose(read_matrix(pu), [[1]], atol=1e-15)


def test_gen_six_dimensional(capsys, tmp_path):
    _, out, _ = run(capsys, "gen", "--dims", "0,1,1,0", "--spectrum", "0.3,0.7", "--seed", "7",
                    "--out", str(tmp_path / "six"))
    pe, pu = out.split()
    assert read_matrix(pe).shape == (6, 6)
    _, out, _ = run(capsys, "report", pe, pu, "--json")
    doc = json.loads(out)
    assert doc["dims"] == {"m00": 0, "m01": 1, "m10": 1, "m11": 0, "m": 2}
    assert [s["value"] for s in doc["spectrum"]] == pytest.approx([0.3, 0.7], abs=1e-8)


@pytest.mark.parametrize("seed", range(20))
def test_gen_report_round_trip(capsys, tmp_path, seed):
    rng = np.random.default_rng(seed)
    dims = [int(x) for x in rng.integers(0, 3, size=4)]
    values = sorted(rng.choice(np.arange(0.05, 0.96, 0.05), size=int(rng.integers(0, 4)), replace=False))
    mults = [int(rng.integers(1, 3)) for _ in values]
    if sum(dims) + len(values) == 0:
        dims[0] = 1
    spectrum = ",".join(f"{t:.2f}:{m}" for t, m in zip(values, mults))
    _, out, _ = run(capsys, "gen", "--dims", ",".join(map(str, dims)), "--spectrum", spectrum,
                    "--seed", str(seed), "--out", str(tmp_path / f"s{seed}"))
    pe, pu = out.split()
    code, out, _ = run(capsys, "report", pe, pu, "--json")
    assert code == 0
    doc = json.loads(out)
    assert [doc["dims"][k] for k in ("m00", "m01", "m10", "m11")] == dims
    assert doc["dims"]["m"] == sum(mults)
    got = [(s["value"], s["multiplicity"]) for s in doc["spectrum"]]
    assert [m for _, m in got] == mults
    assert [v for v, _ in got] == pytest.approx([round(t, 2) for t in values], abs=1e-8)


@pytest.mark.parametrize("argv", [
    ["--dims", "0,0,0", "--spectrum", "0.5"],
    ["--dims", "a,0,0,0"],
    ["--dims", "0,0,0,0"],
    ["--dims", "0,0,0,0", "--spectrum", "1.5"],
    ["--dims", "0,0,0,0", "--spectrum", "0.5:x"],
])
def test_gen_bad_spec(capsys, tmp_path, argv):
    code, _, err = run(capsys, "gen", *argv, "--out", str(tmp_path / "bad"))
    assert code == 2 and "error" in err


def test_module_entry_point(tmp_path):
    out = tmp_path / "c.csv"
    proc = subprocess.run([sys.executable, "-m", "qudist", "curve", "--steps", "3", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().splitlines()[0] == "b,formula,walters"
