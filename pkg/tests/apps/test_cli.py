import csv
import json
from pathlib import Path

import numpy as np
import pytest
from loguru import logger

from apps.cli.main import exit_code, main
from core.adapters.stores import dump_model
from core.config import EFFECTIVE_CONFIG_NAME
from core.domain.errors import PipelineStageError

FIXTURES = Path(__file__).resolve().parents[2] / "fixtures"


@pytest.fixture(autouse=True)
def _drop_cli_sinks():
    # the CLI binds loguru to the captured stderr of the running test
    yield
    logger.remove()


def _rows(path: Path) -> list[dict[str, str]]:
    with path.open(newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def _error(capsys) -> dict:
    err = capsys.readouterr().err.strip().splitlines()
    return json.loads(err[-1])


def _hash(capsys) -> str:
    out = capsys.readouterr().out
    return next(line.split("=", 1)[1] for line in out.splitlines() if line.startswith("config_hash="))


class TestGrid:
    def test_published_grid(self, tmp_path, capsys):
        assert main(["grid", "--out", str(tmp_path)]) == 0
        rows = _rows(tmp_path / "grid.csv")
        assert len(rows) == 968
        assert sum(r["valid"] == "true" for r in rows) == 384
        assert "valid=384" in capsys.readouterr().out
        assert (tmp_path / EFFECTIVE_CONFIG_NAME).exists()

    def test_grid_document(self, tmp_path):
        doc = tmp_path / "g.json"
        doc.write_text(json.dumps({"theta_deg": [90], "leg_m": [2], "dist_m": [1]}), encoding="utf-8")
        assert main(["grid", "--grid", str(doc), "--out", str(tmp_path)]) == 0
        assert _rows(tmp_path / "grid.csv") == [
            {"theta_rad": repr(1.5707963267948966), "leg_m": "2.0", "dist_m": "1.0", "valid": "true"}
        ]


class TestOptimize:
    def test_every_distance(self, tmp_path, capsys):
        code = main(["optimize", "--model", str(FIXTURES / "field_model.json"), "--out", str(tmp_path)])
        assert code == 0
        rows = _rows(tmp_path / "results.csv")
        assert len(rows) == 33
        assert [r["mode"] for r in rows[:3]] == ["VW", "UOW", "BOW"]
        assert "e1=" in capsys.readouterr().out

    def test_single_mode(self, tmp_path):
        args = ["optimize", "--model", str(FIXTURES / "field_model.json"), "--out", str(tmp_path)]
        assert main(args + ["--d-poi", "2,4", "--mode", "uow"]) == 0
        rows = _rows(tmp_path / "results.csv")
        assert [(r["d_poi"], r["mode"]) for r in rows] == [("2.0", "UOW"), ("4.0", "UOW")]


class TestExitCodes:
    def test_usage(self, tmp_path, capsys):
        assert main(["grid", "--bogus", "--out", str(tmp_path)]) == 2
        assert _error(capsys)["exit_code"] == 2

    def test_missing_file(self, tmp_path, capsys):
        code = main(["optimize", "--model", str(tmp_path / "absent.json"), "--out", str(tmp_path)])
        assert code == 3
        record = _error(capsys)
        assert record["error"] == "FileNotFoundError"
        assert set(record) == {"error", "message", "exit_code"}

    def test_malformed_model(self, tmp_path, capsys):
        model = tmp_path / "model.json"
        model.write_text("{broken", encoding="utf-8")
        assert main(["optimize", "--model", str(model), "--out", str(tmp_path)]) == 4
        assert _error(capsys)["error"] == "ParseError"

    def test_version_mismatch(self, tmp_path, capsys, field_model):
        doc = json.loads(dump_model(field_model))
        doc["format_version"] = 99
        model = tmp_path / "model.json"
        model.write_text(json.dumps(doc), encoding="utf-8")
        assert main(["optimize", "--model", str(model), "--out", str(tmp_path)]) == 4
        assert _error(capsys)["error"] == "ModelVersionError"

    def test_bad_config_value(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"optimizer": {"growth": 0.5}}), encoding="utf-8")
        assert main(["grid", "--config", str(cfg), "--out", str(tmp_path)]) == 4
        assert _error(capsys)["error"] == "ValidationError"

    def test_infeasible(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"optimizer": {"leg_max": 1.5}}), encoding="utf-8")
        args = ["optimize", "--config", str(cfg), "--model", str(FIXTURES / "field_model.json")]
        assert main(args + ["--d-poi", "2", "--out", str(tmp_path)]) == 5
        assert _error(capsys)["error"] == "InfeasibleError"

    def test_too_few_conditions(self, tmp_path, capsys):
        factors = tmp_path / "factors.csv"
        factors.write_text(
            "theta_rad,leg_m,dist_m,b_m,sigma_x_m,sigma_y_m,n_used,n_removed\n"
            "0.5,6.0,2.0,-0.1,0.3,0.2,20,0\n"
            "0.9,8.0,3.0,-0.2,0.3,0.3,20,0\n"
            "1.2,10.0,4.0,-0.3,0.4,0.4,20,0\n",
            encoding="utf-8",
        )
        assert main(["fit", "--factors", str(factors), "--out", str(tmp_path)]) == 6
        assert _error(capsys)["exit_code"] == 6

    def test_library_numerical_failure(self):
        err = PipelineStageError("fit", "LinAlgError: singular matrix")
        err.__cause__ = np.linalg.LinAlgError("singular matrix")
        assert exit_code(err) == 6
        assert exit_code(FloatingPointError("overflow")) == 6


class TestConfigSurface:
    def test_dump_config(self, tmp_path, capsys):
        assert main(["grid", "--out", str(tmp_path), "--seed", "7", "--dump-config"]) == 0
        dumped = json.loads((tmp_path / EFFECTIVE_CONFIG_NAME).read_text(encoding="utf-8"))
        assert dumped["seed"] == 7
        assert not (tmp_path / "grid.csv").exists()

    def test_hash_tracks_config(self, tmp_path, capsys):
        base = ["grid", "--out", str(tmp_path), "--dump-config"]
        main(base)
        first = _hash(capsys)
        main(base)
        assert _hash(capsys) == first
        main(base + ["--seed", "1"])
        assert _hash(capsys) != first
        assert len(first) == 12


class TestRenderAndLandscape:
    def test_landscape_then_render(self, tmp_path, capsys):
        model = str(FIXTURES / "field_model.json")
        out = ["--out", str(tmp_path)]
        assert main(["landscape", "--model", model, "--d-poi", "3", "--resolution", "20"] + out) == 0
        land = tmp_path / "landscape_d3.csv"
        assert len(_rows(land)) == 400
        assert main(["render", "--landscape", str(land), "--d-poi", "3"] + out) == 0
        assert (tmp_path / "landscape.svg").read_text(encoding="utf-8").startswith("<?xml")

    def test_render_vw(self, tmp_path):
        assert main(["render", "--vw", "4", "--out", str(tmp_path)]) == 0
        assert 'id="poi"' in (tmp_path / "wedge.svg").read_text(encoding="utf-8")

    def test_render_needs_a_target(self, tmp_path):
        assert main(["render", "--out", str(tmp_path)]) == 2

    def test_landscape_needs_d_poi(self, tmp_path, capsys):
        land = tmp_path / "landscape.csv"
        land.write_text("theta_rad,leg_m,cost_nats,feasible\n", encoding="utf-8")
        assert main(["render", "--landscape", str(land), "--out", str(tmp_path)]) == 2
        assert "--d-poi" in _error(capsys)["message"]


def test_simulate_fit_evaluate(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(
        json.dumps(
            {
                "grid": {"theta_deg": [30, 60, 90, 120], "leg_m": [4, 8, 12, 16], "dist_m": [1, 3, 5, 7]},
                "models": {"family": "poly", "orders": [1, 2], "gp_amplitudes": [1.0],
                           "gp_length_scales": [1.0], "gp_linear_slopes": [1.0], "gp_noises": [1e-2]},
                "optimizer": {"d_poi": [2.0, 4.0]},
                "synth": {"participants": 8, "eval_participants": 5},
            }
        ),
        encoding="utf-8",
    )
    common = ["--config", str(cfg), "--out", str(tmp_path)]
    assert main(["simulate"] + common) == 0
    assert main(["fit"] + common) == 0
    assert (tmp_path / "models" / "model.json").exists()
    assert main(["optimize"] + common) == 0
    assert main(["evaluate"] + common) == 0
    rows = _rows(tmp_path / "evaluation.csv")
    assert {r["comparison"] for r in rows} <= {"VW/UOW", "VW/BOW", "UOW/BOW"}
    assert len(_rows(tmp_path / "scores.csv")) == 6
