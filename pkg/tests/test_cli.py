import subprocess
import sys

import pytest

from oracles import joint_from_cells, seven_entropies, t_uig_by_enumeration
from triplehelix.cli import fmt4, main
from triplehelix.dataset import parse

COUNTS_HEADER = "country,scenario,py_start,py_end,u0,i0,g0,ui0,ug0,ig0,uig0\n"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def counts_file(tmp_path):
    p = tmp_path / "counts.csv"
    p.write_text(COUNTS_HEADER + "X,default,2000,2004,11,10,6,5,2,3,1\nX,default,2005,2009,3,3,0,0,0,0,0\n")
    return p


def test_fmt4():
    assert [fmt4(v) for v in (-29.9, 1099.4, 52.36, -108.89999999999999, 0.0, None)] == [
        "-29.9", "1099", "52.36", "-108.9", "0", "n.a."
    ]


def test_compute_table1(capsys):
    code, out, _ = run(capsys, "compute", "@table1", "--format", "csv")
    assert code == 0
    d = parse(out)
    assert len(d) == 16
    usa = d.get("USA").payload
    assert usa.reported_value("tUIG") == pytest.approx(-29.9, abs=1e-9)


def test_compute_counts_matches_oracle(capsys, counts_file):
    code, out, _ = run(capsys, "compute", str(counts_file), "--format", "json", "--unit", "bit")
    assert code == 0
    rec = parse(out, "json").get("X", window=(2000, 2004)).payload
    ref = seven_entropies(joint_from_cells(5, 3, 2, 4, 1, 2, 1))
    for k, v in ref.items():
        assert getattr(rec, k) == pytest.approx(v, abs=1e-12)
    assert rec.reported_value("tUIG") == pytest.approx(t_uig_by_enumeration(joint_from_cells(5, 3, 2, 4, 1, 2, 1)), abs=1e-12)


def test_compute_text_output(capsys):
    code, out, _ = run(capsys, "compute", "@table1")
    assert code == 0
    assert out.splitlines()[2].split()[-1] == "-29.9"


def test_compute_empty_universe(capsys, tmp_path):
    p = tmp_path / "zero.csv"
    p.write_text(COUNTS_HEADER + "Z,default,2000,2000,0,0,0,0,0,0,0\n")
    code, _, err = run(capsys, "compute", str(p))
    assert code == 2
    assert "no documents" in err and "Z 2000-2000" in err


def test_compute_rejects_t_only(capsys):
    assert run(capsys, "compute", "@table2")[0] == 2


def test_rank_table1(capsys, tmp_path):
    chart = tmp_path / "rank.svg"
    code, out, _ = run(capsys, "rank", "@table1", "--chart", str(chart))
    assert code == 0
    rows = out.splitlines()[2:]
    assert rows[0].split()[1] == "INDIA" and rows[-1].split()[1] == "GERMANY"
    assert chart.read_text().count('class="bar"') == 16


def test_rank_csv_round_trips(capsys):
    code, out, _ = run(capsys, "rank", "@table1", "--format", "csv")
    d = parse(out)
    assert [r.country for r in d][:1] == ["INDIA"]


def test_rank_window_handling(capsys, tmp_path):
    assert run(capsys, "rank", "@table2")[0] == 2
    assert run(capsys, "rank", "@table2", "--window", "1950-1955")[0] == 2
    assert run(capsys, "rank", "@table2", "--window", "1971-1975")[0] == 2  # RUSSIA is n.a.
    code, out, _ = run(capsys, "rank", "@table2", "--window", "2006-2010")
    assert code == 0 and out.splitlines()[2].split()[1] == "INDIA"


def test_rank_single_and_ties(capsys, tmp_path):
    p = tmp_path / "t.csv"
    p.write_text("country,scenario,py_start,py_end,t_mbit\nB,default,2000,2000,-1\nA,default,2000,2000,-1\n")
    _, out, _ = run(capsys, "rank", str(p))
    assert [line.split()[1] for line in out.splitlines()[2:]] == ["A", "B"]
    p.write_text("country,scenario,py_start,py_end,t_mbit\nB,default,2000,2000,-1\n")
    code, out, _ = run(capsys, "rank", str(p))
    assert code == 0 and len(out.splitlines()) == 3


def test_series_usa(capsys, tmp_path):
    chart = tmp_path / "usa.svg"
    code, out, _ = run(capsys, "series", "@table2", "--country", "USA", "--chart", str(chart))
    lines = out.splitlines()
    assert code == 0
    assert lines[2].split() == ["1971-1975", "-82.03"]
    assert lines[9].split() == ["2006-2010", "-33.71"]
    assert lines[-1] == "trend: toward-zero"
    assert chart.read_text().count("<circle") == 8


def test_series_russia(capsys):
    _, out, _ = run(capsys, "series", "@table2", "--country", "RUSSIA")
    vals = [line.split()[1] for line in out.splitlines()[2:10]]
    assert vals[:4] == ["n.a."] * 4 and "n.a." not in vals[4:]


def test_series_json_round_trip(capsys):
    _, out, _ = run(capsys, "series", "@table2", "--country", "china", "--scenario", "cas-as-u", "--format", "json")
    d = parse(out, "json")
    assert d.get("CHINA", "CAS-as-U", (2001, 2005)).payload.value == -15.34


def test_series_unknown(capsys):
    code, _, err = run(capsys, "series", "@table2", "--country", "ATLANTIS")
    assert code == 2 and "available" in err and "USA" in err


def test_decompose(capsys, counts_file, tmp_path):
    chart = tmp_path / "bi.svg"
    code, out, _ = run(capsys, "decompose", str(counts_file), "--country", "X", "--unit", "bit", "--chart", str(chart))
    rows = [line.split() for line in out.splitlines()[2:]]
    assert code == 0 and len(rows) == 2
    assert all(float(v) >= 0 for r in rows for v in r[1:])
    assert rows[1][1:] == ["1", "0", "0"]  # U-only vs I-only documents
    assert chart.read_text().count("<polyline") == 3


def test_decompose_single_cell(capsys, tmp_path):
    p = tmp_path / "c.csv"
    p.write_text(COUNTS_HEADER + "X,default,2000,2000,5,5,5,5,5,5,5\n")
    _, out, _ = run(capsys, "decompose", str(p), "--country", "X")
    assert out.splitlines()[2].split()[1:] == ["0", "0", "0"]


def test_decompose_t_only_fails(capsys):
    code, _, err = run(capsys, "decompose", "@table2", "--country", "USA")
    assert code == 2 and "counts" in err


def test_queries(capsys):
    code, out, _ = run(capsys, "queries", "UK", "1971", "1975")
    assert code == 0
    assert "(England OR Scotland OR Wales OR North Ireland)" in out.splitlines()[0]
    _, out, _ = run(capsys, "queries", "JAPAN", "2006", "2010")
    assert out.splitlines()[9] == "#10: #1 AND #2 AND #6"
    assert run(capsys, "queries", "USA", "2011", "2010")[0] == 2
    assert run(capsys, "queries", "", "2011", "2011")[0] == 2


def test_check(capsys, tmp_path):
    assert run(capsys, "check", "@table1")[0] == 0
    assert run(capsys, "check", "@table2")[0] == 0
    bad = tmp_path / "bad.csv"
    bad.write_text(COUNTS_HEADER + "X,default,2000,2000,2,5,5,3,0,0,0\n")
    code, out, _ = run(capsys, "check", str(bad))
    assert code == 1 and len(out.splitlines()) == 1 and "ui0 > min(u0,i0)" in out
    broken = tmp_path / "broken.csv"
    broken.write_text("country,scenario\nX,default\n")
    assert run(capsys, "check", str(broken))[0] == 2
    assert run(capsys, "check", str(tmp_path / "nope.csv"))[0] == 2


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2


def test_deterministic_outputs(capsys, tmp_path):
    outs = []
    for n in range(2):
        chart = tmp_path / f"c{n}.svg"
        _, out, _ = run(capsys, "rank", "@table1", "--chart", str(chart), "--format", "json")
        outs.append((out, chart.read_bytes()))
    assert outs[0] == outs[1]


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "triplehelix.cli", "queries", "USA", "2011", "2011"], capture_output=True, text=True)
    assert r.returncode == 0
    assert r.stdout.startswith("#1: PY=2011-2011 AND AD=(USA SAME (UNIV* OR COLL*))\n")
