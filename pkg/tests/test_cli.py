"""
Tests for app/main.py and app/cli

Runs subcommands end to end and checks outputs and exit codes.
"""

import json

import pytest

from app.cli import build_parser
from app.main import main
from app.storage.repositories import parse_spec


def run(capsys, *argv):
    """Run one command; return its exit code and captured stdout."""
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


class TestDomainCommands:
    """Test the domain command group."""

    def test_build(self, capsys, write_spec, theta_spec, theta_domain):
        """Test that build prints the domain document."""
        band = write_spec("band.json", theta_spec)

        code, out = run(capsys, "domain", "build", "--band", band)

        assert code == 0
        document = json.loads(out)
        assert document["kind"] == "domain"
        assert document["ambient_dim"] == 2
        assert len(document["constraints"]) == theta_domain.num_constraints

    def test_check_fails_on_touching_holes(self, capsys, write_spec, two_band_spec):
        """Test that the contact point of touching holes gives exit code 1."""
        band = write_spec("band.json", two_band_spec)

        code, out = run(capsys, "domain", "check", "--domain", band, "--sample", "2,0")

        assert code == 1
        assert json.loads(out)["transversality"]["passed"] is False

    def test_check_classifies_points(self, capsys, write_spec, theta_spec):
        """Test membership of given points next to the transversality verdict."""
        band = write_spec("band.json", theta_spec)

        code, out = run(capsys, "domain", "check", "--domain", band, "--point", "5,0", "--point", "0,0")

        assert code == 0
        assert [m["membership"] for m in json.loads(out)["memberships"]] == ["interior", "outside"]

    def test_slice_with_negative_rational(self, capsys, write_spec, theta_spec):
        """Test the slice count at a level given in option=value form."""
        band = write_spec("band.json", theta_spec)

        code, out = run(capsys, "domain", "slice", "--domain", band, "--level=-1/2", "--format", "text")

        assert code == 0
        assert out == "level -1/2: 2 components\n"


class TestReebCommands:
    """Test the reeb and graph command groups."""

    def test_exact_text(self, capsys, write_spec, theta_spec):
        """Test the text summary of the theta graph."""
        band = write_spec("band.json", theta_spec)

        code, out = run(capsys, "reeb", "exact", "--domain", band, "--format", "text")

        assert code == 0
        assert out.startswith("reeb graph: 4 vertices, 4 edges, betti1 1\n")
        assert "levels: -10, -1, 1, 10" in out

    def test_exact_dot(self, capsys, write_spec, theta_spec):
        """Test DOT output of the theta graph."""
        band = write_spec("band.json", theta_spec)

        code, out = run(capsys, "reeb", "exact", "--domain", band, "--format", "dot")

        assert code == 0
        assert out.startswith('graph "reeb" {')
        assert "rankdir=LR;" in out

    def test_out_writes_provenance(self, capsys, tmp_path, write_spec, theta_spec):
        """Test that --out writes the document and its sidecar."""
        band = write_spec("band.json", theta_spec)
        target = tmp_path / "reports" / "theta.json"

        code, out = run(capsys, "reeb", "exact", "--domain", band, "--out", target)

        assert code == 0
        assert out == ""
        assert parse_spec(target).num_vertices == 4
        sidecar = json.loads((tmp_path / "reports" / "theta.json.provenance.json").read_text())
        assert sidecar["command"].startswith("reeb-toolkit reeb exact --domain ")

    def test_graph_stats(self, capsys, write_spec, theta_graph):
        """Test invariants of the theta graph."""
        graph = write_spec("graph.json", theta_graph)

        code, out = run(capsys, "graph", "stats", "--graph", graph)

        assert code == 0
        document = json.loads(out)
        assert document["betti1"] == 1
        assert [c["count"] for c in document["sheet_counts"]] == [1, 2, 1]

    def test_iso_verdicts(self, capsys, write_spec, theta_graph, k5_graph):
        """Test exit codes of the isomorphism test."""
        theta = write_spec("theta.json", theta_graph)
        k5 = write_spec("k5.json", k5_graph)

        assert run(capsys, "graph", "iso", "--first", theta, "--second", theta)[0] == 0
        assert run(capsys, "graph", "iso", "--first", theta, "--second", k5)[0] == 1


class TestDecisionCommands:
    """Test planarity and hypothesis commands."""

    def test_planarity_witness(self, capsys, write_spec, k5_graph):
        """Test that K5 is reported with a witness and exit code 1."""
        graph = write_spec("k5.json", k5_graph)

        code, out = run(capsys, "planarity", "--graph", graph)

        assert code == 1
        document = json.loads(out)
        assert document["planar"] is False
        assert document["witness"]["kind"] == "K5"

    def test_planarity_dot_highlights_witness(self, capsys, write_spec, k5_graph):
        """Test that witness paths are colored in DOT output."""
        graph = write_spec("k5.json", k5_graph)

        code, out = run(capsys, "planarity", "--graph", graph, "--format", "dot")

        assert code == 1
        assert 'color="red"' in out

    def test_cap_exceeded(self, capsys, write_spec, k5_graph):
        """Test that a size cap maps to exit code 3."""
        graph = write_spec("k5.json", k5_graph)

        code = main(["planarity", "--graph", str(graph), "--cap", "4"])

        assert code == 3
        assert '"error": "CapacityError"' in capsys.readouterr().err

    def test_export_dot_defaults_to_dot(self, capsys, write_spec, k33_graph):
        """Test that export renders DOT without --format."""
        graph = write_spec("k33.json", k33_graph)

        code, out = run(capsys, "export", "dot", "--graph", graph, "--witness", "K33", "--name", "k33")

        assert code == 0
        assert out.startswith('graph "k33" {')
        assert out.count("penwidth=2") == 9

    def test_levelplanarity_reports_zero_inversions(self, capsys, write_spec, theta_graph):
        """Test the level planar verdict and its inversion count for theta."""
        graph = write_spec("theta.json", theta_graph)

        code, out = run(capsys, "levelplanarity", "--graph", graph)

        assert code == 0
        document = json.loads(out)
        assert document["level_planar"] is True
        assert document["inversions"] == 0
        assert len(document["orders"]) == 4

    def test_conditions_fail_on_theta(self, capsys, write_spec, theta_spec):
        """Test the hypothesis check with negative rational cut levels."""
        band = write_spec("band.json", theta_spec)

        code, out = run(
            capsys,
            "conditions",
            "check",
            "--graph",
            band,
            "--tag",
            "mt1",
            "--t1=-1/2",
            "--t2",
            "1/2",
            "--format",
            "text",
        )

        assert code == 1
        assert out.startswith("mt1: failed\n")
        assert "C5: FAIL" in out

    def test_family_artifacts(self, capsys, tmp_path, write_spec, offset_theta_spec):
        """Test that a family member writes its artifacts and is not level planar."""
        band = write_spec("base.json", offset_theta_spec)
        target = tmp_path / "member.json"

        code, _ = run(
            capsys,
            "family",
            "mt1",
            "--base",
            band,
            "--t1",
            1,
            "--t2",
            3,
            "--i",
            1,
            "--factor-radius",
            20,
            "--out",
            target,
        )

        assert code == 0
        report = json.loads(target.read_text())
        assert report["fold_counts"][0]["fold"] == 2
        for name in ("domain", "band", "graph"):
            assert (tmp_path / f"member.{name}.json").is_file()
            assert (tmp_path / f"member.{name}.json.provenance.json").is_file()

        code, out = run(capsys, "levelplanarity", "--graph", tmp_path / "member.graph.json")

        assert code == 1
        assert json.loads(out)["level_planar"] is False


class TestAlgebraicCommands:
    """Test the algebraic command group."""

    def test_emit_and_certify(self, capsys, tmp_path, write_spec, disk_domain):
        """Test that the emitted disk model certifies."""
        domain = write_spec("disk.json", disk_domain)
        model = tmp_path / "model.json"

        code, _ = run(capsys, "algebraic", "emit", "--domain", domain, "--out", model)

        assert code == 0
        assert parse_spec(model).num_vars == 4

        code, out = run(capsys, "algebraic", "certify", "--model", model, "--seed", 1)

        assert code == 0
        assert json.loads(out)["passed"] is True

    def test_fiber(self, capsys, tmp_path, write_spec, disk_domain):
        """Test the fiber summary over the boundary."""
        domain = write_spec("disk.json", disk_domain)
        model = tmp_path / "model.json"
        run(capsys, "algebraic", "emit", "--domain", domain, "--out", model)

        code, out = run(capsys, "algebraic", "fiber", "--model", model, "--point", "1,0", "--format", "text")

        assert code == 0
        assert out.startswith("point of dimension 0")


class TestErrors:
    """Test error exit codes."""

    def test_missing_required_option(self, capsys):
        """Test that a usage error exits with code 2."""
        assert run(capsys, "domain", "build")[0] == 2

    def test_invalid_band_file(self, capsys, tmp_path):
        """Test that a spec violation exits with code 2 and an error document."""
        path = tmp_path / "band.json"
        path.write_text(
            json.dumps(
                {
                    "kind": "band",
                    "bands": [{"t1": "1", "t2": "0", "holes": 1}],
                    "outer_center": ["0", "0"],
                    "outer_radius": "10",
                }
            ),
            encoding="utf-8",
        )

        code = main(["domain", "build", "--band", str(path)])

        assert code == 2
        assert "bands[0]: t1 must be smaller than t2" in capsys.readouterr().err

    def test_wrong_file_kind(self, capsys, write_spec, theta_graph):
        """Test that a graph file is refused where a band spec is needed."""
        graph = write_spec("graph.json", theta_graph)

        assert run(capsys, "domain", "build", "--band", graph)[0] == 2

    def test_dot_without_graph(self, capsys, write_spec, theta_spec):
        """Test that DOT output needs a graph."""
        band = write_spec("band.json", theta_spec)

        assert run(capsys, "domain", "check", "--domain", band, "--format", "dot")[0] == 2

    @pytest.mark.parametrize("flag", ["--help", "--version"])
    def test_help_and_version(self, capsys, flag):
        """Test that informational flags exit with code 0."""
        assert run(capsys, flag)[0] == 0


class TestParser:
    """Test defaults of the argument parser."""

    def test_export_default_does_not_leak(self, write_spec, theta_spec):
        """Test that the DOT default of export leaves other commands on structured output."""
        band = str(write_spec("band.json", theta_spec))
        parser = build_parser()

        assert parser.parse_args(["domain", "build", "--band", band]).format == "structured"
        assert parser.parse_args(["export", "dot", "--graph", band]).format == "dot"
        assert parser.parse_args(["reeb", "exact", "--domain", band]).format == "structured"
