"""命令行入口与运行配置"""

import json

import pandas as pd
import pytest

import deviant
from ideals import CYCLE, PATH
from run_config import RunConfig


def run_json(capsys, *argv):
    code = deviant.main(list(argv) + ["--format", "json", "--quiet"])
    return code, json.loads(capsys.readouterr().out)


# ==================== 配置校验 ====================
@pytest.mark.parametrize(
    "kwargs",
    [
        {"characteristic": 4},
        {"output_format": "xml"},
        {"jobs": 0},
        {"engine": "sage"},
        {"command": "betti"},
        {"command": "homology"},
        {"command": "deviations", "kind": PATH, "n": 3},
        {"command": "deviations", "kind": PATH, "n": 3, "smax": 0},
        {"command": "betti", "kind": CYCLE, "n": 2},
        {"command": "deviations", "kind": PATH, "n": 3, "multigraded": True, "cap": (1, 1)},
    ],
)
def test_validate_rejects(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs).validate()


def test_validate_accepts_and_scales():
    cfg = RunConfig(command="verify", characteristic=3).validate()
    assert cfg.max_n == RunConfig.QUICK_MAX_N
    assert RunConfig(full=True).max_n == RunConfig.FULL_MAX_N
    assert RunConfig(full=True).table_smax == RunConfig.TABLE_SMAX
    RunConfig(command="deviations", edges_file="g.txt", smax=3).validate()


def test_from_args():
    args = deviant.build_parser().parse_args(["deviations", "--cycle", "5", "--smax", "4", "--cap", "1,1,1,1,1"])
    cfg = RunConfig.from_args(args).validate()
    assert (cfg.kind, cfg.n, cfg.smax) == (CYCLE, 5, 4)
    assert cfg.cap == (1, 1, 1, 1, 1)


def test_verify_defaults_to_quick():
    args = deviant.build_parser().parse_args(["verify"])
    assert args.full is False
    assert deviant.build_parser().parse_args(["verify", "--full"]).full is True


# ==================== 子命令 ====================
def test_deviations_path3(capsys):
    code, rows = run_json(capsys, "deviations", "--path", "3", "--smax", "4")
    assert code == deviant.EXIT_OK
    assert [r["epsilon"] for r in rows] == [3, 2, 1, 1]


def test_deviations_cycle3(capsys):
    _, rows = run_json(capsys, "deviations", "--cycle", "3", "--smax", "3")
    assert [r["epsilon"] for r in rows] == [3, 3, 2]


def test_deviations_multigraded(capsys):
    _, rows = run_json(capsys, "deviations", "--path", "3", "--multigraded", "--cap", "1,1,1", "--degree-bound", "3")
    found = {tuple(r["v"]): r["epsilon"] for r in rows}
    assert found[(1, 1, 1)] == 1
    assert (1, 0, 1) not in found


def test_gamma_alpha_table(capsys):
    _, rows = run_json(capsys, "deviations", "--gamma-alpha", "10")
    assert len(rows) == 10
    assert rows[9] == {"s": 10, "gamma": 450, "alpha": 2064}


def test_betti_path3(capsys):
    _, rows = run_json(capsys, "betti", "--path", "3")
    assert {"i": 2, "v": [1, 1, 1], "beta": 1} in rows


def test_betti_table_format(capsys):
    code = deviant.main(["betti", "--cycle", "5", "--quiet"])
    assert code == deviant.EXIT_OK
    assert capsys.readouterr().out.strip()


def test_generators_cycle4(capsys):
    _, rows = run_json(capsys, "generators", "--cycle", "4")
    assert [(r["i"], r["j"]) for r in rows] == [(1, 2), (2, 3), (3, 4)]


@pytest.mark.parametrize("engine", ["jacques", "koszul", "model"])
def test_homology_engines_agree(capsys, engine):
    _, rows = run_json(capsys, "homology", "--cycle", "5", "--engine", engine)
    assert {"i": 3, "v": [1, 1, 1, 1, 1], "beta": 1} in rows
    assert len(rows) == 1 + 5 + 5 + 1


def test_homology_from_edge_file(tmp_path, capsys):
    edges = tmp_path / "p3.txt"
    edges.write_text("# P_3\nn 3\n1 2\n2 3\n", encoding="utf-8")
    _, rows = run_json(capsys, "homology", "--edges", str(edges))
    assert {"i": 2, "v": [1, 1, 1], "beta": 1} in rows


def test_deviations_from_edge_file(tmp_path, capsys):
    edges = tmp_path / "p3.txt"
    edges.write_text("n 3\n1 2\n2 3\n", encoding="utf-8")
    code, rows = run_json(capsys, "deviations", "--edges", str(edges), "--smax", "4")
    assert code == deviant.EXIT_OK
    assert [r["epsilon"] for r in rows] == [3, 2, 1, 1]


def test_table_cells_are_bounded(capsys):
    frame = pd.DataFrame([{"check": "a", "kind": "theorem", "witness": "x" * 500, "note": "y" * 300}])
    deviant.emit(frame, RunConfig())
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert max(len(line) for line in lines) < 3 * RunConfig.TABLE_COLWIDTH
    assert "..." in lines[1]


def test_output_file(tmp_path, capsys):
    out = tmp_path / "betti.csv"
    code = deviant.main(["betti", "--path", "3", "--format", "csv", "--out", str(out), "--quiet"])
    assert code == deviant.EXIT_OK
    assert capsys.readouterr().out == ""
    assert out.read_text(encoding="utf-8").splitlines()[0] == "i,v,beta"


# ==================== 退出码 ====================
def test_invalid_characteristic_is_usage_error(capsys):
    assert deviant.main(["betti", "--path", "3", "--char", "4", "--quiet"]) == deviant.EXIT_USAGE
    assert "deviant:" in capsys.readouterr().err


def test_missing_edge_file_is_usage_error(tmp_path):
    missing = tmp_path / "nope.txt"
    assert deviant.main(["homology", "--edges", str(missing), "--quiet"]) == deviant.EXIT_USAGE


def test_model_engine_needs_path_or_cycle(tmp_path):
    edges = tmp_path / "g.txt"
    edges.write_text("3\n1 2\n", encoding="utf-8")
    code = deviant.main(["homology", "--edges", str(edges), "--engine", "model", "--quiet"])
    assert code == deviant.EXIT_USAGE


def test_cap_length_checked_against_edge_file(tmp_path, capsys):
    edges = tmp_path / "p4.txt"
    edges.write_text("n 4\n1 2\n2 3\n3 4\n", encoding="utf-8")
    assert deviant.main(["homology", "--edges", str(edges), "--cap", "1,1", "--quiet"]) == deviant.EXIT_USAGE
    assert "--cap" in capsys.readouterr().err


def test_resource_bound_exit_code(monkeypatch):
    monkeypatch.setattr(RunConfig, "MAX_VERTICES", 3)
    assert deviant.main(["homology", "--path", "4", "--quiet"]) == deviant.EXIT_RESOURCE


def test_strand_bound_exit_code(monkeypatch):
    monkeypatch.setattr(RunConfig, "MAX_STRAND_DIM", 2)
    assert deviant.main(["homology", "--path", "3", "--quiet"]) == deviant.EXIT_RESOURCE


def test_argparse_rejects_two_graphs():
    with pytest.raises(SystemExit) as exc:
        deviant.main(["betti", "--path", "3", "--cycle", "3"])
    assert exc.value.code == deviant.EXIT_USAGE
