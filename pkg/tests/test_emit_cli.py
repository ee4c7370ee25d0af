import json

import mpmath
import pytest

from p3rat import emit
from p3rat.cli import main
from p3rat.gaussian import GR, GaussianRational
from p3rat.rootfinder import build_map
from p3rat.umemura import build_u, get_table


def test_u_json_round_trip_bit_exact():
    m = GR("4/5*i")
    u = build_u(3, m)
    d = emit.u_to_dict(u, 3, m)
    text = json.dumps(d)
    u2, n2, m2 = emit.u_from_dict(json.loads(text))
    assert u2 == u and n2 == 3 and m2 == m


def test_map_csv_header_and_determinism():
    pm1 = build_map(2, GR(0), "y", 128)
    pm2 = build_map(2, GR(0), "y", 128)
    l1 = emit.map_csv_lines(pm1)
    l2 = emit.map_csv_lines(pm2)
    assert l1[0] == "plane,re,im,class,factor,n,m,prec"
    assert l1 == l2
    assert all(row.endswith(",128") for row in l1[1:])


def test_map_csv_sorted_by_modulus_then_phase():
    pm = build_map(3, GR(1), "x", 128)
    pts = [p for p, *_ in pm.points]
    keys = [(abs(p), mpmath.arg(p)) for p in pts]
    assert keys == sorted(keys)


def test_svg_legend_roles():
    pm = build_map(2, GR(0), "x", 128)
    svg = emit.map_svg(pm)
    assert svg.startswith("<svg")
    assert svg.count("#cc0000") == 3      # poles: deg 3 factor + deg 1 factor... see below
    assert 'fill="none"' in svg           # open markers present
    # poles: s_2(m) has 3 roots, s_1(m-1) has 1; zeros: s_2(m-1) 3, s_1(m) 1
    assert svg.count("cc0000") == 4
    assert svg.count("0033cc") == 4


def test_cli_u_and_polys(tmp_path, capsys):
    rc = main(["u", "--n", "1", "--m", "0"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["num"] == [["-1/4", "0"], ["1", "0"]]

    out = tmp_path / "polys.json"
    rc = main(["polys", "--n", "3", "--m", "1/2", "--out", str(out)])
    assert rc == 0
    d = json.loads(out.read_text())
    assert d["m"] == "1/2" and d["N"] >= 3
    # entries include s_{-1} and s_0 = 1 and s_1 = 2x + 1
    assert d["entries"][0] == [["1", "0"]]
    assert d["entries"][2] == [["1", "0"], ["2", "0"]]


def test_cli_verify_passes(capsys):
    rc = main(["verify", "--n", "0:3", "--m", "0", "--m", "4/5*i"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "[FAIL]" not in out
    assert "ode-residual n=3" in out


def test_cli_map_and_svg(tmp_path):
    out = tmp_path / "map.csv"
    rc = main(["map", "--n", "2", "--m", "0", "--plane", "y", "--prec", "128",
               "--out", str(out)])
    assert rc == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0] == emit.CSV_HEADER
    assert len(lines) == 1 + 8  # 3+1+3+1 roots at n=2

    svg = tmp_path / "map.svg"
    rc = main(["map", "--n", "2", "--m", "0", "--plane", "y", "--prec", "128",
               "--format", "svg", "--out", str(svg)])
    assert rc == 0
    assert svg.read_text().startswith("<svg")


def test_cli_halfint(capsys):
    rc = main(["halfint", "--n", "3", "--k", "0", "--sign", "+", "--x", "1",
               "--prec", "128"])
    assert rc == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["n"] == 3 and rows[0]["method"] == "hankel"
    # against the exact value
    from p3rat.umemura import eval_u
    ref = eval_u(build_u(3, GR("1/2")), mpmath.mpc(1), 128)
    assert abs(mpmath.mpf(rows[0]["re"]) - ref.real) < mpmath.mpf(10) ** -20


def test_cli_probe(tmp_path):
    out = tmp_path / "probe.csv"
    rc = main(["probe", "--m", "0", "--y", "2", "--n-list", "2,4,8",
               "--prec", "160", "--out", str(out)])
    assert rc == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0].startswith("n,err")
    assert len(lines) == 4


def test_cli_asympt_corner(capsys):
    rc = main(["asympt", "--y0", "1/2*i"])
    assert rc == 0
    d = json.loads(capsys.readouterr().out)
    assert d["degenerate"] and d["exact"]
    assert d["quadrupleRoot"] is True
    assert d["C"] == "3/8"


def test_cli_usage_error_exit_code():
    with pytest.raises(SystemExit) as e:
        main(["map", "--n", "2", "--m", "0", "--plane", "bogus"])
    assert e.value.code == 2


def test_cli_float_m_rejected():
    with pytest.raises(ValueError):
        main(["u", "--n", "1", "--m", "0.5"])
