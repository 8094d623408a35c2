"""CLI: verdict shapes, exit codes, determinism, round trips, DOT output."""

from __future__ import annotations

import json

import pytest
from helpers import torus_3x3

from cubical.cli import main
from cubical.complexes import dump_complex


@pytest.fixture()
def torus_file(tmp_path):
    path = tmp_path / "torus.json"
    path.write_text(json.dumps(dump_complex(torus_3x3())))
    return str(path)


@pytest.fixture()
def square_file(tmp_path):
    data = {"vertices": ["a", "b", "c", "d"],
            "cubes": {"1": [["a", "b"], ["c", "d"], ["a", "c"], ["b", "d"]],
                      "2": [["a", "b", "c", "d"]]}}
    path = tmp_path / "square.json"
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture()
def pgl_file(tmp_path):
    path = tmp_path / "pgl2z.json"
    path.write_text(json.dumps({"rank": 3, "m": [[1, 3, 2], [3, 1, 0], [2, 0, 1]]}))
    return str(path)


@pytest.fixture()
def a2t_file(tmp_path):
    path = tmp_path / "a2t.json"
    path.write_text(json.dumps({"rank": 3, "m": [[1, 3, 3], [3, 1, 3], [3, 3, 1]]}))
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_complex_check_torus(capsys, torus_file):
    code, verdict = run_cli(capsys, "complex", "check", torus_file)
    assert code == 1
    assert verdict["ok"] is False
    assert verdict["certificate"]["locally_cat0"]["ok"] is True
    assert verdict["certificate"]["cat0"]["reason"] == "median"
    assert verdict["certificate"]["cat0"]["triple"]
    assert verdict["stats"]["vertices"] == 9


def test_complex_check_square(capsys, square_file):
    code, verdict = run_cli(capsys, "complex", "check", square_file)
    assert code == 0
    assert verdict["ok"] is True


def test_complex_links(capsys, torus_file):
    code, verdict = run_cli(capsys, "complex", "links", torus_file)
    assert code == 0
    assert verdict["stats"]["vertices_checked"] == 9


def test_complex_hyperplanes_torus(capsys, torus_file):
    code, verdict = run_cli(capsys, "complex", "hyperplanes", torus_file)
    assert code == 1  # self-parallel hyperplanes do not separate
    assert verdict["stats"]["hyperplanes"] == 6
    assert set(verdict["certificate"]["bad_separations"].values()) == {1}


def test_complex_export_round_trip(capsys, tmp_path, square_file):
    out = tmp_path / "exported.json"
    code, _ = run_cli(capsys, "complex", "export", square_file,
                      "--out", str(out))
    assert code == 0
    first = json.loads(out.read_text())
    code, _ = run_cli(capsys, "complex", "export", str(out), "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text()) == first


def test_input_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"vertices": ["a"], "cubes": {"1": [["a", "a"]]}}))
    code, verdict = run_cli(capsys, "complex", "check", str(bad))
    assert code == 2
    assert verdict["ok"] is False
    assert verdict["certificate"]["error"] == "self_gluing"


def test_missing_file_exit_2(capsys):
    code, verdict = run_cli(capsys, "complex", "check", "/nonexistent.json")
    assert code == 2


def test_pocset_validate_and_dual(capsys, tmp_path):
    data = {"halfspaces": ["a+", "a-", "b+", "b-"],
            "star": [["a+", "a-"], ["b+", "b-"]],
            "leq": [["a+", "b+"]]}
    path = tmp_path / "chain.json"
    path.write_text(json.dumps(data))
    code, verdict = run_cli(capsys, "pocset", "validate", str(path))
    assert code == 0 and verdict["stats"]["hyperplanes"] == 2
    code, verdict = run_cli(capsys, "pocset", "dual", str(path))
    assert code == 0
    assert verdict["stats"]["vertices"] == 3
    code, verdict = run_cli(capsys, "pocset", "cubes", str(path))
    assert code == 0
    assert verdict["stats"]["dimensions"] == [1]


def test_pocset_nesting_violation_exit_2(capsys, tmp_path):
    data = {"halfspaces": ["a+", "a-", "b+", "b-"],
            "star": [["a+", "a-"], ["b+", "b-"]],
            "leq": [["a+", "b+"], ["a+", "b-"]]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, verdict = run_cli(capsys, "pocset", "validate", str(path))
    assert code == 2
    assert verdict["certificate"]["error"] == "nesting_violation"


def test_pocset_dual_sidecar(capsys, tmp_path):
    data = {"halfspaces": ["a+", "a-", "b+", "b-"],
            "star": [["a+", "a-"], ["b+", "b-"]], "leq": []}
    path = tmp_path / "square.json"
    path.write_text(json.dumps(data))
    out = tmp_path / "dual.json"
    code, _ = run_cli(capsys, "pocset", "dual", str(path), "--out", str(out))
    assert code == 0
    payload = json.loads(out.read_text())
    assert len(payload["orientations"]) == 4
    assert payload["orientations"]["0"] == "00"
    assert sorted(payload["orientations"].values()) == ["00", "01", "10", "11"]


def test_coxeter_ball_and_walls(capsys, a2t_file):
    code, verdict = run_cli(capsys, "coxeter", "ball", "--matrix", a2t_file,
                            "--radius", "2")
    assert code == 0
    assert verdict["stats"]["elements"] == 10
    code, verdict = run_cli(capsys, "coxeter", "walls", "--matrix", a2t_file,
                            "--radius", "2")
    assert code == 0


def test_coxeter_reduce(capsys, a2t_file):
    code, verdict = run_cli(capsys, "coxeter", "reduce", "--matrix", a2t_file,
                            "--word", "1 1 2 1")
    assert code == 0
    assert verdict["stats"]["canonical"] == "21"
    assert verdict["stats"]["length"] == 2


def test_coxeter_cubulate_pgl(capsys, pgl_file):
    code, verdict = run_cli(capsys, "coxeter", "cubulate", "--matrix", pgl_file,
                            "--radius", "4")
    assert code == 0
    assert verdict["stats"]["maximal_cube_dimensions"] == [2, 3]


def test_coxeter_ends(capsys, tmp_path):
    path = tmp_path / "infdihedral.json"
    path.write_text(json.dumps({"rank": 2, "m": [[1, 0], [0, 1]]}))
    code, verdict = run_cli(capsys, "coxeter", "ends", "--matrix", str(path),
                            "--radius", "6")
    assert code == 0
    assert verdict["certificate"]["verdict"] == "2"


def test_tree_commands(capsys, tmp_path):
    code, verdict = run_cli(capsys, "tree", "count", "-n", "5")
    assert code == 0 and verdict["stats"]["binary_topologies"] == 105
    code, verdict = run_cli(capsys, "tree", "enumerate", "-n", "4")
    assert code == 0 and verdict["stats"]["enumerated"] == 15
    dot = tmp_path / "link.dot"
    code, verdict = run_cli(capsys, "tree", "link", "-n", "4",
                            "--dot", str(dot))
    assert code == 0
    assert verdict["certificate"]["is_petersen"] is True
    assert "graph link" in dot.read_text()
    code, verdict = run_cli(capsys, "tree", "complex", "-n", "3")
    assert code == 0 and verdict["certificate"]["cat0"]["ok"] is True


def test_tree_validate_and_dist(capsys, tmp_path):
    def tree_file(name, a):
        data = {"n": 4, "root": "r",
                "nodes": ["r", "u", "v", "l1", "l2", "l3", "l4"],
                "edges": [["r", "u", 1.0], ["u", "v", a], ["v", "l1", 0],
                          ["v", "l2", 0], ["u", "l3", 0], ["r", "l4", 0]],
                "leaf_labels": {"l1": 1, "l2": 2, "l3": 3, "l4": 4}}
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    f1, f2 = tree_file("t1.json", 1.0), tree_file("t2.json", 3.0)
    code, verdict = run_cli(capsys, "tree", "validate", f1)
    assert code == 0 and verdict["stats"]["binary"] is True
    code, verdict = run_cli(capsys, "tree", "dist", f1, f2)
    assert code == 0
    assert verdict["stats"]["value"] == pytest.approx(2.0)
    assert verdict["stats"]["exact"] is True


def test_determinism_byte_identical(capsys, torus_file, a2t_file):
    for argv in (
        ["complex", "check", torus_file, "--seed", "7"],
        ["complex", "hyperplanes", torus_file, "--seed", "7"],
        ["coxeter", "cubulate", "--matrix", a2t_file, "--radius", "3",
         "--margin", "1", "--seed", "7"],
        ["tree", "link", "-n", "4", "--seed", "7"],
    ):
        main(list(argv))
        first = capsys.readouterr().out
        main(list(argv))
        second = capsys.readouterr().out
        assert first == second
        assert json.loads(first).get("seed") == 7


def test_dot_outputs(capsys, tmp_path, square_file, a2t_file):
    dot = tmp_path / "out.dot"
    run_cli(capsys, "complex", "export", square_file, "--dot", str(dot))
    text = dot.read_text()
    assert text.startswith("graph skeleton")
    assert text.count("--") == 4
    run_cli(capsys, "coxeter", "ball", "--matrix", a2t_file, "--radius", "2",
            "--dot", str(dot))
    assert "cayley" in dot.read_text()


def test_tree_complex_median_cap_fallback(capsys, monkeypatch):
    import cubical.complexes

    monkeypatch.setattr(cubical.complexes, "DEFAULT_MEDIAN_CAP", 5)
    code, verdict = run_cli(capsys, "tree", "complex", "-n", "4")
    assert code == 0
    assert verdict["certificate"]["cat0"]["checked"] is False
    assert verdict["certificate"]["locally_cat0"]["ok"] is True


def test_complex_links_single_vertex(capsys, torus_file):
    code, verdict = run_cli(capsys, "complex", "links", torus_file,
                            "--vertex", "0,0")
    assert code == 0
    assert verdict["stats"]["vertices_checked"] == 1
