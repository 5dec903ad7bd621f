"""
Command line surface: JSON payloads, exit codes of the error kinds and the
KL cache commands.
"""

import json

import pytest

from tiltcell import cli
from tiltcell.cli import JobConfig, build_parser, config_from_args, main, run_command
from tiltcell.core.constants import (
    EXIT_INCONCLUSIVE_TRUNCATION,
    EXIT_INTERNAL_ERROR,
    EXIT_INVALID_CONFIG,
    EXIT_OK,
)


# -- Helpers ------------------------------------------------------------------


def run(tmp_path, command, type_string, **kwargs):
    config = JobConfig(command=command, type=type_string, cache_dir=str(tmp_path), quiet=True, **kwargs)
    return run_command(config)


def run_json(tmp_path, command, type_string, **kwargs):
    code, text = run(tmp_path, command, type_string, **kwargs)
    return code, json.loads(text)


# -- Commands -----------------------------------------------------------------


def test_roots(tmp_path):
    code, res = run_json(tmp_path, "roots", "G2")
    assert code == EXIT_OK
    assert res["coxeter_number"] == 6
    assert res["schema"] == 1
    assert res["rho"] == [1, 1]


def test_tensor(tmp_path):
    code, res = run_json(tmp_path, "tensor", "A1", weights=("1", "1"))
    assert code == EXIT_OK
    assert res["factors"] == [[[2], 1], [[0], 1]]


def test_tensor_csv(tmp_path):
    code, text = run(tmp_path, "tensor", "A1", weights=("1", "1"), format="csv")
    assert code == EXIT_OK
    assert text.splitlines()[0] == "weight,multiplicity"


def test_char(tmp_path):
    code, res = run_json(tmp_path, "char", "G2", weights=("1,0",))
    assert res["dimension"] == 7
    assert len(res["multiplicities"]) == 7


def test_klbasis_text(tmp_path):
    code, text = run(tmp_path, "klbasis", "A1", words=("01",), format="text")
    assert code == EXIT_OK
    assert text == "N[01] = N[01] * (1) + N[0] * (v)\n"


def test_cells_are_deterministic(tmp_path):
    first = run(tmp_path, "cells", "A1", truncation=6)
    second = run(tmp_path, "cells", "A1", truncation=6)
    assert first == second
    res = json.loads(first[1])
    assert res["sizes"] == [1, 6]


def test_cells_graph_export(tmp_path):
    graph_dir = tmp_path / "graph"
    code, _ = run(tmp_path, "cells", "A1", truncation=4, graph_dir=str(graph_dir))
    assert code == EXIT_OK
    assert (graph_dir / "nodes.tsv").exists()
    assert (graph_dir / "edges.tsv").exists()


def test_tilting_char(tmp_path):
    code, res = run_json(tmp_path, "tilting-char", "A1", level=5, weights=("10",))
    assert code == EXIT_OK
    assert res["factors"] == [[[10], 1], [[8], 1]]
    assert res["longest"] == [0, 1]


def test_decompose(tmp_path):
    code, res = run_json(tmp_path, "decompose", "A1", level=5, weights=("3", "3"))
    assert res["summands"] == [[[6], 1], [[4], 1], [[0], 1]]


def test_andersen_quotient_ring(tmp_path):
    code, res = run_json(
        tmp_path, "quotient-ring", "A1", level=5, cells=("identity",), truncation=8
    )
    assert code == EXIT_OK
    assert res["basis"] == [[0], [1], [2], [3]]
    assert res["radical_dimension"] == 0
    assert res["unit_law"] and res["commutative"] and res["associative_sample"]


def test_quotient_by_several_cells(tmp_path):
    code, res = run_json(
        tmp_path, "quotient-ring", "A1", level=5, cells=("identity", "identity"), truncation=8
    )
    assert code == EXIT_OK
    assert res["cells"] == ["identity", "identity"]
    assert res["basis"] == [[0], [1], [2], [3]]


def test_ideal_check(tmp_path):
    code, res = run_json(
        tmp_path, "ideal-check", "A1", level=5, cells=("identity",), truncation=8, weights=("3", "4")
    )
    assert [r["member"] for r in res["results"]] == [False, True]


def test_alcove_svg(tmp_path):
    code, text = run(tmp_path, "alcoves", "A2", level=5, truncation=3, format="svg")
    assert code == EXIT_OK
    assert text.startswith("<?xml")


# -- Errors -------------------------------------------------------------------


@pytest.mark.parametrize(
    "command, type_string, kwargs",
    [
        ("roots", "X7", {}),
        ("tilting-char", "A1", {"level": 2, "weights": ("1",)}),
        ("tilting-char", "A1", {"weights": ("1",)}),
        ("tensor", "A1", {"weights": ("-1", "1")}),
        ("tensor", "A2", {"weights": ("1", "1,1")}),
        ("roots", "A1", {"format": "svg"}),
        ("alcoves", "A1", {"level": 5, "format": "svg"}),
    ],
)
def test_invalid_config(tmp_path, command, type_string, kwargs):
    code, res = run_json(tmp_path, command, type_string, **kwargs)
    assert code == EXIT_INVALID_CONFIG
    assert res["error"]["kind"] == "invalid-config"


def test_inconclusive_truncation(tmp_path):
    code, res = run_json(tmp_path, "quotient-ring", "A1", level=5, cells=("subregular",), truncation=6)
    assert code == EXIT_INCONCLUSIVE_TRUNCATION
    assert res["error"]["L"] == 6


def test_unexpected_errors_become_error_objects(tmp_path, monkeypatch):
    def broken(job):
        raise RuntimeError("boom")

    monkeypatch.setitem(cli.HANDLERS, "roots", broken)
    code, res = run_json(tmp_path, "roots", "A1")
    assert code == EXIT_INTERNAL_ERROR
    assert res["error"]["kind"] == "internal-error"
    assert "boom" in res["error"]["message"]


# -- Cache --------------------------------------------------------------------


def test_cache_commands(tmp_path):
    code, res = run_json(tmp_path, "cache", "A1", action="list")
    assert res["entries"] == []
    run(tmp_path, "klbasis", "A1", truncation=3)
    code, res = run_json(tmp_path, "cache", "A1", action="list")
    assert res["entries"] == ["e", "0", "01", "010"]
    code, res = run_json(tmp_path, "cache", "A1", action="verify")
    assert code == EXIT_OK and res["evicted"] == []
    code, res = run_json(tmp_path, "cache", "A1", action="clear")
    assert res["entries"] == []


# -- Argument parsing ---------------------------------------------------------


def test_parser_builds_configs(tmp_path):
    args = build_parser().parse_args(
        ["quotient-ring", "--type", "G2", "--l", "7", "--cell", "identity", "--inclusive", "--cache-dir", str(tmp_path)]
    )
    config = config_from_args(args)
    assert config.level == 7
    assert config.cells == ("identity",)
    assert config.inclusive
    args = build_parser().parse_args(
        ["ideal-check", "--type", "G2", "--l", "7", "--cell", "identity", "--cell", "01", "1,0"]
    )
    assert config_from_args(args).cells == ("identity", "01")
    args = build_parser().parse_args(["radical", "--type", "G2", "--l", "7"])
    assert config_from_args(args).cells == ("subregular",)


def test_main_writes_stdout(tmp_path, capsys):
    code = main(["tensor", "--type", "A1", "--l", "5", "1", "1", "--cache-dir", str(tmp_path), "--quiet"])
    assert code == EXIT_OK
    assert json.loads(capsys.readouterr().out)["factors"] == [[[2], 1], [[0], 1]]


def test_main_writes_out_file(tmp_path):
    out = tmp_path / "roots.json"
    code = main(["roots", "--type", "B2", "--out", str(out), "--cache-dir", str(tmp_path), "--quiet"])
    assert code == EXIT_OK
    assert json.loads(out.read_text())["weyl_group_order"] == 8
