"""Tests for the reproduction report."""

import pytest

from nonsmooth_cert.exceptions import ConfigurationError
from nonsmooth_cert.reproduce import (
    BlockResult,
    ReproductionReport,
    load_table,
    render_report,
    reproduce_paper,
)


class TestLoadTable:
    """Test the YAML table loader."""

    def test_packaged_table(self):
        ids = [block["id"] for block in load_table()]

        assert ids == [
            "closed-forms",
            "s2xs2-twice",
            "s2xs2-n",
            "k3-stabilizations",
            "general-bound",
            "k3-bound-edge",
            "p5-degeneracy",
        ]

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationError):
            load_table(tmp_path / "absent.yaml")

    def test_not_a_table(self, tmp_path):
        path = tmp_path / "t.yaml"
        path.write_text("- just\n- a list\n")

        with pytest.raises(ConfigurationError):
            load_table(path)

    def test_unknown_kind(self, tmp_path):
        path = tmp_path / "t.yaml"
        path.write_text("blocks:\n  - id: x\n    kind: astrology\n")

        with pytest.raises(ConfigurationError, match="astrology"):
            load_table(path)

    def test_block_without_kind(self, tmp_path):
        path = tmp_path / "t.yaml"
        path.write_text("blocks:\n  - id: x\n")

        with pytest.raises(ConfigurationError):
            load_table(path)

    def test_bad_range(self, tmp_path):
        path = tmp_path / "t.yaml"
        path.write_text("blocks:\n  - id: x\n    kind: closed_forms\n    primes: 7\n")

        with pytest.raises(ConfigurationError, match="primes"):
            reproduce_paper(table_path=path)


class TestBlocks:
    """Test individual fast blocks."""

    def test_closed_forms(self):
        report = reproduce_paper(block_ids=["closed-forms"])

        assert report.passed
        assert report.blocks[0].checks == 44

    def test_k3_stabilizations(self):
        block = reproduce_paper(block_ids=["k3-stabilizations"]).blocks[0]

        assert block.passed
        assert block.checks == 5
        assert any(note.startswith("t=4") for note in block.notes)

    def test_s2xs2_twice(self):
        assert reproduce_paper(block_ids=["s2xs2-twice"], workers=2).passed

    def test_custom_table_detects_mismatch(self, tmp_path):
        """Claiming dim 7 for the K3 family must fail."""
        path = tmp_path / "t.yaml"
        path.write_text(
            "blocks:\n"
            "  - id: wrong\n"
            "    kind: k3_stabilizations\n"
            "    t: [0, 1]\n"
            "    expect_dim: 7\n"
        )

        report = reproduce_paper(table_path=path)

        assert not report.passed
        assert len(report.blocks[0].failures) == 2


class TestRendering:
    """Test the report rendering."""

    def test_text(self):
        report = ReproductionReport(blocks=[
            BlockResult("a", "first", checks=3, notes=["all good"]),
            BlockResult("b", "second", checks=1, failures=["p=7: off by one"]),
        ])

        assert render_report(report).splitlines() == [
            "[PASS] a: first (3 checks)",
            "       all good",
            "[FAIL] b: second (1 checks)",
            "       - p=7: off by one",
            "Summary: 1/2 blocks passed",
        ]

    def test_dict(self):
        report = ReproductionReport(blocks=[BlockResult("a", "first", checks=1)])

        assert report.to_dict() == {
            "passed": True,
            "blocks": [{
                "id": "a", "title": "first", "passed": True,
                "checks": 1, "failures": [], "notes": [],
            }],
        }


@pytest.mark.slow
class TestFullReproduction:
    """Recompute every published claim."""

    def test_all_blocks_pass(self):
        report = reproduce_paper()

        assert report.passed, render_report(report)
        assert len(report.blocks) == 7
