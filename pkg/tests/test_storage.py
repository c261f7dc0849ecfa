"""
Tests for app/storage/repositories

Tests spec parsing, violation reporting, canonical output and provenance.
"""

import json

import pytest

from app.core.config import get_settings
from app.models.algebraic import AlgebraicModel
from app.models.domain import BandSpec, NCDomain
from app.models.graph import LeveledGraph
from app.services import get_algebraic_service, get_domain_service
from app.storage.repositories import BandRepository, dump_model, parse_spec
from app.utils.exceptions import InputError, SpecValidationError


def write_json(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


class TestParseSpec:
    """Test kind dispatch and model conversion."""

    def test_band_spec(self, write_spec, theta_spec):
        """Test that a band file loads into an equal band spec."""
        loaded = parse_spec(write_spec("band.json", theta_spec))

        assert isinstance(loaded, BandSpec)
        assert loaded == theta_spec

    def test_domain_spec(self, write_spec, two_band_domain):
        """Test that intended intersections survive a domain file."""
        loaded = parse_spec(write_spec("domain.json", two_band_domain))

        assert isinstance(loaded, NCDomain)
        assert loaded == two_band_domain
        assert loaded.intended_intersections == frozenset({(1, 2)})

    def test_graph_spec(self, write_spec, theta_graph):
        """Test that a graph file keeps levels and edges."""
        loaded = parse_spec(write_spec("graph.json", theta_graph))

        assert isinstance(loaded, LeveledGraph)
        assert loaded == theta_graph

    def test_model_spec(self, write_spec, disk_domain):
        """Test that an emitted model file loads back."""
        model = get_algebraic_service().emit_model(disk_domain, m=3)

        loaded = parse_spec(write_spec("model.json", model))

        assert isinstance(loaded, AlgebraicModel)
        assert loaded == model


class TestViolations:
    """Test structured validation errors."""

    def test_edge_within_one_level(self, tmp_path):
        """Test that an edge whose endpoints share a level is reported by path."""
        path = write_json(
            tmp_path,
            "graph.json",
            {
                "kind": "graph",
                "vertices": [{"id": 0, "level": "0"}, {"id": 1, "level": "0"}],
                "edges": [{"id": 0, "lower": 0, "upper": 1}],
            },
        )

        with pytest.raises(SpecValidationError) as exc_info:
            parse_spec(path)

        assert exc_info.value.violations == [
            "edge 0: level of lower vertex 0 is not below level of upper vertex 1"
        ]

    def test_band_violations_are_collected(self, tmp_path):
        """Test that every band invariant violation is listed."""
        path = write_json(
            tmp_path,
            "band.json",
            {
                "kind": "band",
                "bands": [{"t1": "2", "t2": "0", "holes": 1}, {"t1": "1", "t2": "3", "holes": 0}],
                "outer_center": ["0", "0"],
                "outer_radius": "-1",
            },
        )

        with pytest.raises(SpecValidationError) as exc_info:
            parse_spec(path)

        violations = exc_info.value.violations
        assert "outer_radius: must be positive" in violations
        assert "bands[0]: t1 must be smaller than t2" in violations
        assert "bands[1]: hole count must be positive" in violations
        assert exc_info.value.exit_code == 2

    def test_schema_errors_name_the_field(self, tmp_path):
        """Test unknown fields and malformed rationals."""
        path = write_json(
            tmp_path,
            "graph.json",
            {
                "kind": "graph",
                "vertices": [{"id": 0, "level": "1/0"}],
                "edges": [],
                "colour": "red",
            },
        )

        with pytest.raises(SpecValidationError) as exc_info:
            parse_spec(path)

        violations = exc_info.value.violations
        assert any(v.startswith("vertices.0.level:") for v in violations)
        assert any(v.startswith("colour:") for v in violations)

    def test_domain_variable_count(self, tmp_path):
        """Test that constraints must live in the ambient ring."""
        path = write_json(
            tmp_path,
            "domain.json",
            {
                "kind": "domain",
                "ambient_dim": 2,
                "constraints": [
                    {"num_vars": 3, "terms": [{"exponents": [0, 0, 0], "coefficient": "1"}]}
                ],
            },
        )

        with pytest.raises(SpecValidationError) as exc_info:
            parse_spec(path)

        assert exc_info.value.violations == ["constraints[0]: 3 variables, expected 2"]

    def test_missing_kind(self, tmp_path):
        """Test that a document without kind is rejected."""
        with pytest.raises(SpecValidationError) as exc_info:
            parse_spec(write_json(tmp_path, "x.json", {"bands": []}))

        assert exc_info.value.violations == ["kind: field required"]

    def test_unknown_kind(self, tmp_path):
        """Test that an unknown kind is rejected."""
        with pytest.raises(SpecValidationError):
            parse_spec(write_json(tmp_path, "x.json", {"kind": "surface"}))

    def test_non_object(self, tmp_path):
        """Test that a JSON array is rejected."""
        path = tmp_path / "x.json"
        path.write_text("[1, 2]", encoding="utf-8")

        with pytest.raises(SpecValidationError):
            parse_spec(path)

    def test_invalid_json(self, tmp_path):
        """Test that malformed JSON reports its position."""
        path = tmp_path / "x.json"
        path.write_text("{", encoding="utf-8")

        with pytest.raises(SpecValidationError) as exc_info:
            parse_spec(path)

        assert exc_info.value.violations[0].startswith("line 1")

    def test_missing_file(self, tmp_path):
        """Test that a missing file is an input error."""
        with pytest.raises(InputError) as exc_info:
            parse_spec(tmp_path / "absent.json")

        assert not isinstance(exc_info.value, SpecValidationError)


class TestCanonicalOutput:
    """Test deterministic documents and provenance sidecars."""

    def test_rationals_are_canonical(self, theta_spec):
        """Test the text form of rationals in a band document."""
        text = dump_model(theta_spec)

        assert '"t1": "-1"' in text
        assert '"outer_radius": "10"' in text
        assert text.endswith("}\n")

    def test_equal_models_dump_equal_text(self, theta_domain, theta_spec):
        """Test that independently built domains have identical documents."""
        rebuilt = get_domain_service().build_band_domain(theta_spec)

        assert dump_model(rebuilt) == dump_model(theta_domain)

    def test_unknown_model_type(self):
        """Test that only spec models can be dumped."""
        with pytest.raises(TypeError):
            dump_model(object())

    def test_provenance_sidecar(self, tmp_path, theta_spec):
        """Test the sidecar written next to a saved document."""
        target = BandRepository().save(
            theta_spec, tmp_path / "out" / "band.json", command="reeb-toolkit domain build"
        )

        sidecar = json.loads((tmp_path / "out" / "band.json.provenance.json").read_text())
        assert target.read_text() == dump_model(theta_spec)
        assert sidecar["command"] == "reeb-toolkit domain build"
        assert sidecar["version"] == get_settings().app_version
        assert "created_at" in sidecar
