from __future__ import annotations

import json

import pytest

from latcov.cli import main as cli
from latcov.cli.checks import VerificationReport
from latcov.constructions import load_bundle
from latcov.core import cyclic_square
from latcov.core.io import fixture_path, parse_ls, read_cover, read_ls
from latcov.covers import is_minimal_cover, mu_bound
from latcov.transversals import PartialTransversal


def run(*argv: str) -> int:
    return cli.main(["--quiet", *argv])


class TestGen:
    def test_group_to_file(self, tmp_path):
        path = tmp_path / "z5.ls"
        assert run("--output", str(path), "gen", "--group", "Z5") == 0
        assert read_ls(path) == cyclic_square(5)

    def test_random_to_stdout(self, capsys):
        assert run("--seed", "3", "gen", "--random", "5") == 0
        captured = capsys.readouterr()
        assert parse_ls(captured.out).n == 5
        assert "seed: 3" in captured.err

    def test_random_is_reproducible(self, capsys):
        run("--seed", "9", "gen", "--random", "6")
        first = capsys.readouterr().out
        run("--seed", "9", "gen", "--random", "6")
        assert capsys.readouterr().out == first

    def test_bad_group(self):
        assert run("gen", "--group", "Q8") == 2


class TestAnalyze:
    def test_group(self, capsys):
        assert run("analyze", "--group", "Z5") == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["order"] == 5
        assert payload["min_deficit"] == 0
        assert payload["min_cover_size"] == 5
        assert payload["mu_bound"] == mu_bound(5) == 9
        assert "relations" in payload["census"]
        assert payload["prediction"]["confirmed"] is True

    def test_file_with_text_report(self, capsys):
        assert run("--format", "text", "analyze", str(fixture_path("fig1.ls")), "--no-census") == 0
        assert "## Analysis of fig1.ls (order 4)" in capsys.readouterr().out

    def test_conjecture_and_spectrum(self, tmp_path):
        out = tmp_path / "z4.json"
        assert run("--output", str(out), "analyze", "--group", "Z4", "--check-conjecture", "--spectrum") == 0
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["conjecture"]["holds"] is True
        assert "spectrum" in payload

    def test_missing_file(self, tmp_path):
        assert run("analyze", str(tmp_path / "absent.ls")) == 2

    def test_no_square(self):
        assert run("analyze") == 2

    def test_malformed_square(self, tmp_path):
        path = tmp_path / "bad.ls"
        path.write_text("3\n0 1 2\n1 2 0\n2 0 0\n", encoding="utf-8")
        assert run("analyze", str(path)) == 2

    def test_budget_exhausted(self):
        assert run("--budget", "5", "analyze", "--group", "Z7") == 3


class TestConstruct:
    def test_maxpt(self, tmp_path, capsys):
        assert run("construct", "--dir", str(tmp_path), "maxpt", "--n", "7", "--k", "2") == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["kind"] == "maxpt"
        assert payload["properties"]["partial transversal size"] == 5
        square, entries = read_cover(tmp_path / "maxpt_n7_k2.pt")
        pt = PartialTransversal(square, entries)
        assert pt.is_maximal()
        assert pt.deficit == 2

    def test_maxpt_bad_parameters(self, tmp_path):
        assert run("construct", "--dir", str(tmp_path), "maxpt", "--n", "4", "--k", "1") == 4

    def test_t2t_family(self, tmp_path):
        assert run("construct", "--dir", str(tmp_path), "t2t", "--t", "2", "--family", "7", "9") == 0
        assert load_bundle(tmp_path / "t2t_t2.bundle").order == 6
        for c in (7, 9):
            _, cover = read_cover(tmp_path / f"t2t_t2_c{c}.cover")
            assert len(cover) == c
            assert is_minimal_cover(cover)

    def test_t2t_needs_a_bundle_for_six(self, tmp_path):
        assert run("construct", "--dir", str(tmp_path), "t2t", "--t", "6") == 4

    def test_t2t_family_out_of_range(self, tmp_path):
        assert run("construct", "--dir", str(tmp_path), "t2t", "--t", "2", "--family", "20") == 4


class TestVerify:
    def test_figures(self, capsys):
        assert run("verify", "--figures") == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["passed"] is True
        assert payload["checks"]

    def test_tables_csv(self, capsys):
        assert run("--format", "csv", "verify", "--tables", "--max-order", "6", "--averaged") == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "check,ok"
        assert all(line.endswith(",true") for line in lines[1:])

    def test_nothing_selected(self):
        assert run("verify") == 2

    def test_mismatch(self, monkeypatch):
        def failing() -> VerificationReport:
            report = VerificationReport("Figure fixtures")
            report.add("deliberately wrong", 1, 2)
            return report

        monkeypatch.setattr(cli, "verify_figures", failing)
        assert run("verify", "--figures") == 5


class TestSample:
    def test_deficit(self, capsys):
        assert run("--seed", "4", "sample", "deficit", "--n", "4", "--samples", "3") == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["order"] == 4
        assert payload["seed"] == 4
        assert len(payload["sizes"]) == 3

    def test_large_rejects_eps(self):
        assert run("sample", "large", "--n", "20", "--eps", "0.7") == 4

    @pytest.mark.slow
    def test_large_witness(self, tmp_path):
        witness = tmp_path / "large.cover"
        assert run("sample", "large", "--n", "40", "--moves", "20000", "--witness", str(witness)) == 0
        _, cover = read_cover(witness)
        assert is_minimal_cover(cover)


class TestSpectrum:
    def test_csv(self, capsys):
        assert run("--format", "csv", "spectrum", "--group", "Z4") == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "c,achievable,witness-file"
        assert lines[1].startswith("4,")

    def test_witnesses(self, tmp_path, capsys):
        out = tmp_path / "witnesses"
        assert run("spectrum", "--group", "Z5", "--high", "7", "--witness-dir", str(out)) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["order"] == 5
        written = sorted(out.glob("minimal_c*.cover"))
        assert written
        for path in written:
            _, cover = read_cover(path)
            assert is_minimal_cover(cover)
