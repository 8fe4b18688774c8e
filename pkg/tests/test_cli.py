import json

import pytest

from raagvcd.cli import main

P5_TEXT = "edge a b\nedge b c\nedge c d\nedge d e\n"


@pytest.fixture
def p5_file(tmp_path):
    path = tmp_path / "p5.graph"
    path.write_text(P5_TEXT)
    return str(path)


class TestAnalyze:
    def test_text_output(self, p5_file, capsys):
        assert main(["analyze", p5_file]) == 0
        out = capsys.readouterr().out
        assert "exact dimension: 5" in out
        assert "Tree" in out

    def test_json_roundtrip_is_byte_stable(self, p5_file, capsys):
        assert main(["analyze", p5_file, "--json"]) == 0
        raw = capsys.readouterr().out
        payload = json.loads(raw)
        assert payload["exact"] == 5
        assert payload["theorems"] == ["Tree"]
        again = json.dumps(payload, sort_keys=True, indent=2) + "\n"
        assert again == raw

    def test_witness_flag(self, p5_file, capsys):
        assert main(["analyze", p5_file, "--witness", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        ws = payload["witness_set"]
        assert ws["count"] == 7
        assert ws["inner_rank"] == 2
        assert ws["outer_rank"] == 5
        assert all(c["certified"] for c in ws["commutation_certificates"])

    def test_explicit_base_edge(self, p5_file, capsys):
        assert main(["analyze", p5_file, "--witness", "--e0", "c,b", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["witness_set"]["base_edge"] == ["c", "b"]

    def test_star_exits_2(self, tmp_path, capsys):
        path = tmp_path / "star.graph"
        path.write_text("edge a b\nedge a c\nedge a d\n")
        assert main(["analyze", str(path)]) == 2
        assert "star" in capsys.readouterr().out

    def test_parse_error_exits_1(self, tmp_path, capsys):
        path = tmp_path / "bad.graph"
        path.write_text("edge a a\n")
        assert main(["analyze", str(path)]) == 1
        assert "line 1" in capsys.readouterr().err

    def test_missing_file_exits_1(self, capsys):
        assert main(["analyze", "/nonexistent/x.graph"]) == 1


class TestPsigma:
    def test_worked_example(self, capsys):
        assert main(["psigma", "3", "1", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["vcd"] == 3
        assert payload["generator_count"] == 4
        assert payload["outer_rank"] == 3

    def test_k_zero_formula_only(self, capsys):
        assert main(["psigma", "4", "0"]) == 0
        out = capsys.readouterr().out
        assert "vcd = 5" in out
        assert "formula only" in out

    def test_bad_rank(self, capsys):
        assert main(["psigma", "1", "0"]) == 1


class TestIdealComplex:
    def test_worked_example(self, capsys):
        assert main(["ideal-complex", "2", "1", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["legal_ideal_edges"] == 6
        assert payload["homology"]["trivial"] is True
        assert payload["collapse_certificate"]["ok"] is True

    def test_full_complex(self, capsys):
        assert main(["ideal-complex", "2", "0", "--full", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["counts"] == [3]
        assert payload["homology"]["reduced_betti"] == [2, 0] or payload[
            "homology"
        ]["reduced_betti"] == [2]

    def test_cap_error(self, capsys):
        assert main(["ideal-complex", "5", "1"]) == 1


class TestVerify:
    def test_small_corpus_passes(self, capsys):
        assert main(["verify", "--max-nodes", "5", "--json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["ok"] is True
        assert payload["violations"] == []
        assert payload["graphs_checked"] > 20

    def test_violations_exit_3(self, capsys, monkeypatch):
        from raagvcd import verify_suite
        from raagvcd import cli as cli_module

        def broken(max_nodes, bound):
            result = verify_suite.VerificationResult()
            result.check("synthetic check", False, "forced")
            return result

        monkeypatch.setattr(verify_suite, "run_verification", broken)
        assert main(["verify"]) == 3
        assert "VIOLATION" in capsys.readouterr().out
