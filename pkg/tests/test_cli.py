from __future__ import annotations

import json
import subprocess
import sys

import pytest

from motivic.cli import Config, dumps, main, run
from motivic.exactalg import L, X, Y, EPoly
from motivic.geometry import abelian_class, load_geometry


def records(argv):
    code, report = run_argv(argv)
    assert code == 0, report
    return json.loads(report)


def run_argv(argv):
    from motivic.cli import build_parser, config_from_args

    return run(config_from_args(build_parser().parse_args(argv)))


def test_load_geometry_presets():
    k3 = load_geometry("k3")
    assert k3.fiberE == 1 + X ** 2 + Y ** 2 + 20 * L + L ** 2
    assert k3.projective and k3.h00 == 1
    assert load_geometry("point").fiberE == EPoly.const(1)
    assert load_geometry("abelian:2").fiberE == abelian_class(2)


def test_load_geometry_diamond_file(tmp_path):
    path = tmp_path / "quintic_like.json"
    path.write_text(json.dumps({"name": "toy", "dim": 1, "hodge": [[1, 2], [2, 1]]}))
    G = load_geometry(str(path), 1)
    assert G.fiberE == 1 - 2 * X - 2 * Y + L and G.g == 1 and G.r == 1


@pytest.mark.parametrize("payload", [
    {"dim": 1, "hodge": [[1, 0], [0]]},
    {"dim": 1, "hodge": [[1, -1], [0, 1]]},
    {"hodge": [[1]]},
    [1, 2],
])
def test_malformed_diamonds_exit_2(tmp_path, payload):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(payload))
    code, _ = run(Config("kummer", g=2, fiber=str(path), n=1))
    assert code == 2


def test_kummer_k3_record():
    (rec,) = records(["kummer", "--g", "2", "--fiber", "point", "--n", "2", "--format", "json"])
    assert rec["n"] == 2 and rec["euler"] == 24
    assert EPoly.from_records(rec["class"]) == 1 + X ** 2 + Y ** 2 + 20 * L + L ** 2
    assert rec["chi_y"] == [{"e": "0", "c": "2"}, {"e": "1", "c": "20"}, {"e": "2", "c": "2"}]
    assert rec["checks"] == {"chi_y_closed_form": True}


def test_euler_table():
    recs = records(["euler-table", "--d", "3", "--g", "1", "--fiber", "k3", "--n-max", "4", "--format", "json"])
    assert [r["euler"] for r in recs] == [24, 240, 720, 2016]
    assert all(r["checks"]["class_route"] for r in recs)


@pytest.mark.parametrize("argv", [
    ["kummer", "--g", "2", "--n-max", "3", "--format", "json"],
    ["kummer-vir", "--g", "1", "--fiber", "k3", "--n-max", "2", "--format", "json"],
    ["hilbert", "--fiber", "affine3", "--virtual", "--n-max", "3", "--format", "json"],
    ["torsion", "--g", "1", "--kind", "curve", "--n-max", "2", "--format", "json"],
    ["stable-hodge", "--g", "1", "--fiber", "p2", "--max-pq", "1", "--format", "json"],
])
def test_json_round_trip(argv):
    code, report = run_argv(argv)
    assert code == 0
    assert dumps(json.loads(report)) == report
    for rec in json.loads(report):
        if rec.get("class"):
            assert EPoly.from_records(rec["class"]).to_records() == rec["class"]


def test_virtual_record_has_half_exponents():
    recs = records(["hilbert", "--fiber", "affine3", "--virtual", "--n", "1", "--format", "json"])
    assert recs[0]["class"] == [{"p": "3/2", "q": "3/2", "c": "1"}] and recs[0]["euler"] == -1


def test_csv_and_table_formats():
    code, text = run_argv(["kummer", "--g", "2", "--n-max", "2", "--format", "csv"])
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "n,class,chi_y,euler,checks" and len(lines) == 4
    code, text = run_argv(["kummer", "--g", "2", "--n-max", "2"])
    assert code == 0 and text.splitlines()[3].split("  ")[3] == "24"


@pytest.mark.parametrize("argv,expected", [
    (["kummer", "--g", "2", "--n", "2"], 0),
    (["kummer-vir", "--g", "3", "--n-max", "2", "--normalized"], 0),
    (["torsion", "--g", "2", "--kind", "surface", "--n-max", "3"], 0),
    (["hilbert", "--fiber", "p3", "--euler-only", "--n-max", "3"], 0),
    (["kummer", "--euler-only", "--g", "1", "--fiber", "k3", "--n-max", "3"], 0),
    (["stable-hodge", "--g", "1", "--fiber", "k3", "--max-pq", "1"], 0),
    (["selftest"], 0),
    (["kummer", "--fiber", "nonsense"], 2),
    (["kummer", "--n", "99"], 2),
    (["kummer", "--n", "2", "--order", "11"], 2),
    (["kummer", "--n", "3", "--order", "2"], 2),
    (["euler-table", "--d", "5", "--g", "1", "--fiber", "k3"], 2),
    (["euler-table", "--d", "2", "--g", "1", "--fiber", "k3"], 2),
    (["kummer", "--g", "1", "--fiber", "k3", "--n", "2"], 2),
    (["kummer-vir", "--g", "2", "--fiber", "point", "--n", "1"], 2),
    (["torsion", "--g", "0", "--fiber", "p1", "--kind", "curve", "--n", "1"], 0),
    (["torsion", "--g", "2", "--kind", "curve", "--n", "1"], 2),
    (["kummer", "--bogus"], 2),
    (["frobnicate"], 2),
    ([], 2),
])
def test_exit_code_matrix(argv, expected, capsys):
    assert main(argv) == expected


def test_hard_failure_exit_1(monkeypatch):
    from motivic import cli
    from motivic.errors import NotDivisible

    def broken(cfg, geom):
        raise NotDivisible("forced")

    monkeypatch.setitem(cli.HANDLERS, "kummer", broken)
    assert run(Config("kummer", g=2, n=2))[0] == 1


def test_cap_from_environment(monkeypatch):
    monkeypatch.setenv("MOTIVIC_MAX_N", "2")
    assert run(Config("kummer", g=2, n=3))[0] == 2
    monkeypatch.setenv("MOTIVIC_MAX_N", "9")
    assert run(Config("kummer", g=2, n=9))[0] == 0


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "motivic", "kummer", "--g", "2", "--n", "2", "--format", "json"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)[0]["euler"] == 24
