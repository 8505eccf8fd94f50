"""
Integration tests for the verdict pipeline.
Tests the complete workflow from complex file to report.
"""
import json
from pathlib import Path

import pytest

from config import RLAB_SEED
from rlab.building import colored_from_complex, save_colored_complex
from rlab.complexes import build_complex
from rlab.errors import ColoringInconsistent, FileFormatError, InvalidParams
from rlab.generators import complete_multipartite, cycle, petersen, torus_triangulation
from rlab.io import save_complex
from rlab.models import RunConfig
from rlab.pipeline import app, cmd_pipeline

FIXTURE = Path(__file__).resolve().parent.parent / "fixtures" / "circulant_quotient_d3.json"


class TestPipeline:
    """Integration tests for the complete pipeline."""

    def test_petersen_is_ramanujan(self, tmp_path):
        """Petersen graph: inferred 3-regular tree reference, no violations."""
        path = save_complex(petersen(), tmp_path / "petersen.json")

        report = cmd_pipeline(RunConfig(command="pipeline", input=str(path)))

        assert report.verdict is not None
        assert report.verdict.ramanujan is True
        assert report.verdict.reference == "tree:k=3"
        assert report.operators == ["a0;1"]
        # 3, 1 (x5), -2 (x4)
        assert [row.multiplicity for row in report.spectrum] == [4, 5, 1]
        assert sum(report.verdict.counts.values()) == 10
        assert report.trivial == [[(3.0, 0.0)]]

    def test_spec_compute_stops_before_verdict(self, tmp_path):
        path = save_complex(cycle(6), tmp_path / "c6.json")

        report = cmd_pipeline(RunConfig(command="spec compute", input=str(path)))

        assert report.verdict is None
        assert report.trivial == []
        assert all(row.classification is None for row in report.spectrum)
        assert len(report.spectrum) == 4

    def test_tripartite_hecke_family(self, tmp_path):
        """K_{7,7,7}: the building reference with q = 2 is inferred from the a_1 row sums."""
        path = save_colored_complex(complete_multipartite(7, 3), tmp_path / "k777.json")

        report = cmd_pipeline(RunConfig(command="spec verdict", input=str(path), operator="hecke"))

        assert report.verdict.ramanujan is True
        assert report.verdict.reference == "building:d=3,q=2"
        assert report.verdict.counts == {"trivial": 3, "covered": 18, "violating": 0}
        assert report.operators == ["a1", "a2"]

    def test_fixture_infers_building_reference(self):
        """
        The circulant quotient fixture has a_1 row sums 7 = 1 + 2 + 4, so the
        q = 2 building is inferred and the verdict is Ramanujan.
        """
        report = cmd_pipeline(RunConfig(command="spec verdict", input=str(FIXTURE), operator="hecke"))

        assert report.verdict.reference == "building:d=3,q=2"
        assert report.verdict.ramanujan is True
        assert report.verdict.counts == {"trivial": 3, "covered": 18, "violating": 0}
        assert all(len(row.point) == 2 for row in report.spectrum)

    def test_fixture_with_explicit_reference(self):
        config = RunConfig(
            command="spec verdict", input=str(FIXTURE), operator="hecke", reference="building:q=2,d=3"
        )

        report = cmd_pipeline(config)

        assert report.verdict.ramanujan is True
        assert len(report.trivial) == 3

    def test_colored_torus_without_reference_fails(self, tmp_path):
        """The colored 3x3 torus has a_1 row sums 3, which no building degree matches."""
        colors = [(i + j) % 3 for i in range(3) for j in range(3)]
        colored = colored_from_complex(torus_triangulation(3, 3), 3, colors)
        path = save_colored_complex(colored, tmp_path / "torus.json")
        config = RunConfig(command="spec verdict", input=str(path), operator="hecke")

        with pytest.raises(InvalidParams) as excinfo:
            cmd_pipeline(config)

        assert "--ref" in str(excinfo.value)

    def test_corrupted_coloring_is_reported(self, tmp_path):
        payload = json.loads(FIXTURE.read_text())
        payload["edge_colors"][0] = [0, 7, 2]
        path = tmp_path / "corrupted.json"
        path.write_text(json.dumps(payload))

        with pytest.raises(ColoringInconsistent) as excinfo:
            cmd_pipeline(RunConfig(command="pipeline", input=str(path), operator="hecke"))

        assert excinfo.value.edge == (0, 7)

    def test_non_commuting_family_reports_each_operator(self, tmp_path):
        """Adjacency and Laplacian of the paw graph do not commute: no joint spectrum, no verdict."""
        paw = build_complex([[0, 1], [1, 2], [0, 2], [2, 3]])
        path = save_complex(paw, tmp_path / "paw.json")

        report = cmd_pipeline(RunConfig(command="pipeline", input=str(path), operator="adjacency,laplacian"))

        assert report.verdict is None
        assert {row.operator for row in report.spectrum} == {"a0;1", "Δ0"}
        assert any("does not commute" in warning for warning in report.warnings)

    def test_reports_are_deterministic(self, tmp_path):
        path = save_complex(petersen(), tmp_path / "petersen.json")
        config = RunConfig(command="pipeline", input=str(path), seed=7)

        first = cmd_pipeline(config).model_dump_json()
        second = cmd_pipeline(config).model_dump_json()

        assert first == second
        assert json.loads(first)["metadata"]["seed"] == "7"

    def test_missing_input_sets_error(self, tmp_path):
        config = RunConfig(command="pipeline", input=str(tmp_path / "absent.json"))

        result = app.invoke({"config": config, "warnings": []})

        assert isinstance(result["error"], FileFormatError)
        assert result.get("spectrum") is None
        assert result.get("verdict") is None


class TestRunConfigSeed:
    """Seed handling for deterministic and non-deterministic runs."""

    def test_deterministic_runs_use_the_configured_seed(self):
        assert RunConfig(command="pipeline", deterministic=True).seed == RLAB_SEED

    def test_pinned_seed_wins(self):
        assert RunConfig(command="pipeline", deterministic=False, seed=5).seed == 5

    def test_non_deterministic_runs_draw_and_record_a_seed(self, tmp_path):
        seeds = {RunConfig(command="pipeline", deterministic=False).seed for _ in range(8)}
        assert all(0 <= seed < 2**31 for seed in seeds)
        assert len(seeds) > 1

        path = save_complex(petersen(), tmp_path / "petersen.json")
        config = RunConfig(command="pipeline", input=str(path), deterministic=False)
        report = cmd_pipeline(config)
        assert report.metadata["seed"] == str(config.seed)
