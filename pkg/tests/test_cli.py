"""Command-line interface: flags, CSV contract, exit codes."""

import math

import pytest

from dirichlet_li.cli import CSV_COLUMNS, _parse_n_range, main
from dirichlet_li.lfunc import write_zeros

from conftest import CACHE_DIR


@pytest.fixture()
def q3_zero_file(zeros_q3):
    # the session cache written by the zeros_q3 fixture, in lfunc format
    return str(CACHE_DIR / "zeros_3_1.txt")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# ----------------------------------------------------------------------------
# argument plumbing

def test_parse_n_range():
    assert _parse_n_range("5") == [5]
    assert _parse_n_range("2..6") == [2, 3, 4, 5, 6]
    with pytest.raises(Exception):
        _parse_n_range("6..2")


def test_characters_listing(capsys):
    code, out, _ = run(capsys, "characters", "--q", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 5  # header + 4 characters
    # principal character: order 1, even, conductor 1, imprimitive
    assert lines[1].split() == ["0", "1", "even", "1", "no", "yes"]
    # label 2 is the quadratic character: order 2, even, primitive, real
    assert lines[3].split() == ["2", "2", "even", "5", "yes", "yes"]


# ----------------------------------------------------------------------------
# zeros command

def test_zeros_command(tmp_path, capsys):
    out_path = tmp_path / "z.txt"
    code, out, _ = run(capsys, "zeros", "--q", "3", "--tmax", "100",
                       "--out", str(out_path))
    assert code == 0
    assert "found 46 zeros" in out
    assert out_path.exists()
    header = out_path.read_text().splitlines()[0]
    assert header.startswith("# q=3 label=1 height=100")


def test_zeros_empty_warning(capsys):
    code, out, err = run(capsys, "zeros", "--q", "3", "--tmax", "5")
    assert code == 0
    assert "found 0 zeros" in out
    assert "no zeros below" in err


def test_zeros_needs_height(capsys):
    code, _, err = run(capsys, "zeros", "--q", "3")
    assert code == 2
    assert "need --tmax or --zeros-count" in err


# ----------------------------------------------------------------------------
# li command

def test_li_csv_columns_and_exit(q3_zero_file, tmp_path, capsys):
    out_path = tmp_path / "li.csv"
    code, out, _ = run(capsys, "li", "--q", "3", "--n", "0..3",
                       "--method", "zeros", "--zeros", q3_zero_file,
                       "--format", "csv", "--out", str(out_path))
    lines = out.strip().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 5  # header + n = 0..3
    # n=0 row: lambda(0) = 0 by convention
    row0 = lines[1].split(",")
    assert row0[0] == "0" and row0[4] == "0"
    # q=3 at T ~ 8.6e3 the tail form is applicable: finite bounds, exit 0
    assert code == 0
    assert out_path.read_text() == out


def test_li_infinite_bound_exits_nonzero(tmp_path, capsys):
    # a short list (T = 100, q = 3) sits where the tail form is inapplicable
    short = tmp_path / "short.txt"
    code, _, _ = run(capsys, "zeros", "--q", "3", "--tmax", "100",
                     "--out", str(short))
    assert code == 0
    code, out, _ = run(capsys, "li", "--q", "3", "--n", "1..2",
                       "--method", "zeros", "--zeros", str(short),
                       "--format", "csv")
    assert code == 1
    for line in out.strip().splitlines()[1:]:
        fields = dict(zip(CSV_COLUMNS, line.split(",")))
        assert fields["bound_zeros"] == "inf"


def test_li_finite_bounds_exit_zero(q3_zero_file, capsys):
    # arithmetic method always has a finite bound for nu >= 1
    code, out, _ = run(capsys, "li", "--q", "3", "--n", "1..2",
                       "--method", "arith", "--nu", "1", "--format", "csv")
    assert code == 0
    for line in out.strip().splitlines()[1:]:
        fields = dict(zip(CSV_COLUMNS, line.split(",")))
        assert math.isfinite(float(fields["bound_arith"]))
        assert fields["lambda_zeros"] == ""
        assert fields["positive"] == "yes"


def test_li_csv_deterministic(q3_zero_file, capsys):
    args = ("li", "--q", "3", "--n", "1..5", "--method", "zeros",
            "--zeros", q3_zero_file, "--format", "csv")
    _, out1, _ = run(capsys, *args)
    _, out2, _ = run(capsys, *args)
    assert out1 == out2


def test_li_csv_round_trip(q3_zero_file, capsys):
    # re-parsing the CSV at 12 significant digits reproduces the fields
    code, out, _ = run(capsys, "li", "--q", "3", "--n", "1..4",
                       "--method", "zeros", "--zeros", q3_zero_file,
                       "--format", "csv")
    lines = out.strip().splitlines()
    for line in lines[1:]:
        fields = dict(zip(CSV_COLUMNS, line.split(",")))
        lam = float(fields["lambda_zeros"])
        assert f"{lam:.12g}" == fields["lambda_zeros"]


def test_li_rejects_wrong_zero_file(q3_zero_file, capsys):
    code, _, err = run(capsys, "li", "--q", "5", "--n", "1",
                       "--method", "zeros", "--zeros", q3_zero_file)
    assert code == 2
    assert "error:" in err


def test_li_missing_zero_file(capsys, tmp_path):
    code, _, err = run(capsys, "li", "--q", "3", "--n", "1",
                       "--method", "zeros",
                       "--zeros", str(tmp_path / "nope.txt"))
    assert code == 2
    assert "error" in err.lower()


# ----------------------------------------------------------------------------
# compare command

def test_compare_smoke(q3_zero_file, capsys):
    code, out, _ = run(capsys, "compare", "--q", "3", "--n", "1..2",
                       "--nu", "2", "--zeros", q3_zero_file)
    lines = out.strip().splitlines()
    assert any("timing:" in l for l in lines)
    verdicts = [l for l in lines if l.endswith("PASS") or l.endswith("FAIL")]
    assert len(verdicts) == 2
    assert code in (0, 1)  # per-n verdicts decide; both surfaces are exercised
    if code == 1:
        assert any("note:" in l for l in lines)


# ----------------------------------------------------------------------------
# table command

def test_table_mod3(q3_zero_file, tmp_path, capsys):
    csv_path = tmp_path / "mod3.csv"
    script_path = tmp_path / "plot.py"
    code, out, _ = run(capsys, "table", "--name", "mod3",
                       "--zeros", q3_zero_file, "--out", str(csv_path),
                       "--plot-script", str(script_path))
    assert code == 0
    assert "assumption:" in out
    assert "largest deviation" in out
    assert csv_path.exists() and script_path.exists()
    assert "matplotlib" in script_path.read_text()
    # published column reproduced to table precision for the first rows
    for line in out.splitlines():
        parts = line.split()
        if len(parts) == 4 and parts[0] == "1":
            assert abs(float(parts[3])) < 1e-3


def test_table_insufficient_zeros(tmp_path, capsys):
    from dirichlet_li.lfunc import ZeroList, ZeroRecord
    short = ZeroList(chi_id=(3, 1),
                     records=(ZeroRecord(gamma=8.04), ZeroRecord(gamma=11.25)),
                     height=12.0, provenance="computed")
    path = tmp_path / "short.txt"
    write_zeros(path, short)
    code, _, err = run(capsys, "table", "--name", "mod3",
                       "--zeros", str(path))
    assert code == 2
    assert "10^4" in err
