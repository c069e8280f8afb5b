"""Command-line surface: every subcommand, the exit-code contract, and the
shape of text/JSON output.

All tests drive ``cli.main`` in-process so capsys sees exactly what a shell
would.
"""

from __future__ import annotations

import json
import os

import pytest

from cyclemod.cli import main
from cyclemod.graphs import (
    from_edge_list,
    gen_clique_blocks,
    gen_complete_bipartite,
    load_edge_list,
    save_edge_list,
)


def run(capsys, *argv):
    """Invoke the CLI and return (exit_code, stdout, stderr)."""
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def k33_file(tmp_path):
    path = str(tmp_path / "k33.txt")
    save_edge_list(gen_complete_bipartite(3, 3), path)
    return path


@pytest.fixture
def blocks_file(tmp_path):
    path = str(tmp_path / "blocks.txt")
    save_edge_list(gen_clique_blocks(4, 2), path)
    return path


class TestGen:
    def test_projective_to_file(self, capsys, tmp_path):
        out_path = str(tmp_path / "pg2.txt")
        code, out, _ = run(capsys, "gen", "projective", "--p", "2", "-o", out_path)
        assert code == 0
        assert out_path in out
        g, metadata = load_edge_list(out_path)
        assert (g.n, g.m) == (14, 21)
        assert metadata["girth"] == "6"

    def test_projective_stdout_carries_metadata(self, capsys):
        code, out, err = run(capsys, "gen", "projective", "--p", "2")
        assert code == 0
        assert "# girth: 6" in out
        assert "14 21" in out
        # stats go to stderr so the edge list on stdout stays clean
        assert err.strip() == "n=14 m=21 avg=3/1"

    def test_nonprime_order_is_usage_error(self, capsys):
        code, _, err = run(capsys, "gen", "projective", "--p", "6")
        assert code == 2
        assert "error:" in err

    def test_bipartite_metadata_needs_a_cycle(self, capsys, tmp_path):
        tree = str(tmp_path / "star.txt")
        run(capsys, "gen", "complete-bipartite", "--a", "1", "--b", "5", "-o", tree)
        assert "girth" not in load_edge_list(tree)[1]

        square = str(tmp_path / "k22.txt")
        run(capsys, "gen", "complete-bipartite", "--a", "2", "--b", "2", "-o", square)
        assert load_edge_list(square)[1]["girth"] == "4"

    def test_clique_blocks_metadata(self, capsys, tmp_path):
        path = str(tmp_path / "b.txt")
        run(capsys, "gen", "clique-blocks", "--q", "4", "--t", "2", "-o", path)
        assert load_edge_list(path)[1]["girth"] == "3"

        path2 = str(tmp_path / "p.txt")
        run(capsys, "gen", "clique-blocks", "--q", "2", "--t", "3", "-o", path2)
        assert "girth" not in load_edge_list(path2)[1]

    def test_theta_generator(self, capsys, tmp_path):
        path = str(tmp_path / "theta.txt")
        code, _, _ = run(
            capsys, "gen", "theta", "--length", "6", "--chord", "0,2", "-o", path
        )
        assert code == 0
        g, _ = load_edge_list(path)
        assert (g.n, g.m) == (6, 7)

    def test_malformed_chord_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "gen", "theta", "--length", "6", "--chord", "5")
        assert code == 2

    def test_union_combines_files(self, capsys, tmp_path, k33_file):
        triangle = str(tmp_path / "c3.txt")
        run(capsys, "gen", "clique-blocks", "--q", "3", "--t", "1", "-o", triangle)
        merged = str(tmp_path / "merged.txt")
        code, _, _ = run(
            capsys, "gen", "union", k33_file, triangle, "--isolated", "1", "-o", merged
        )
        assert code == 0
        g, _ = load_edge_list(merged)
        assert (g.n, g.m) == (6 + 3 + 1, 9 + 3)

    def test_json_stats_on_stderr_when_streaming(self, capsys):
        code, out, err = run(
            capsys, "gen", "complete-bipartite", "--a", "2", "--b", "2",
            "--format", "json",
        )
        assert code == 0
        # edge list itself stays on stdout: metadata comments, then the header
        assert out.splitlines()[0].startswith("# generator:")
        assert "4 4" in out.splitlines()
        stats = json.loads(err)
        assert stats == {"n": 4, "m": 4, "avg": "2/1", "output": None}


class TestOracle:
    def test_exact_length_found(self, capsys, k33_file):
        code, out, _ = run(capsys, "oracle", k33_file, "--length", "4")
        assert code == 0
        assert out.startswith("found length 4:")

    def test_exact_length_absent_exhaustively(self, capsys, k33_file):
        code, out, _ = run(capsys, "oracle", k33_file, "--length", "5")
        assert code == 1
        assert "no cycle of length 5 (exhaustive)" in out

    def test_residue_absent_in_clique_blocks(self, capsys, blocks_file):
        code, out, _ = run(capsys, "oracle", blocks_file, "--mod", "2", "--k", "3")
        assert code == 1
        assert "length 2 mod 3" in out

    def test_residue_found(self, capsys, blocks_file):
        # triangles inside a block hit 0 mod 3
        code, out, _ = run(
            capsys, "oracle", blocks_file, "--mod", "0", "--k", "3", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["found"] is True
        assert payload["exhaustive"] is True
        assert len(payload["witness"]) % 3 == 0

    def test_budget_exhaustion_has_its_own_exit(self, capsys, tmp_path):
        path = str(tmp_path / "pg7.txt")
        run(capsys, "gen", "projective", "--p", "7", "-o", path)
        code, out, _ = run(capsys, "oracle", path, "--length", "4", "--budget", "10")
        assert code == 3
        assert "within budget" in out

    def test_spectrum_is_the_default_query(self, capsys, blocks_file):
        code, out, _ = run(capsys, "oracle", blocks_file, "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["query"] == "spectrum"
        assert payload["lengths"] == [3, 4]
        assert payload["exhaustive"] is True

    def test_starved_spectrum_exits_three(self, capsys, k33_file):
        code, _, _ = run(capsys, "oracle", k33_file, "--budget", "5")
        assert code == 3

    def test_mod_without_k(self, capsys, k33_file):
        code, _, err = run(capsys, "oracle", k33_file, "--mod", "2")
        assert code == 2
        assert "--k" in err

    def test_length_and_mod_conflict(self, capsys, k33_file):
        code, _, _ = run(
            capsys, "oracle", k33_file, "--length", "4", "--mod", "2", "--k", "3"
        )
        assert code == 2

    def test_malformed_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_text("3\n0 1\n")
        code, _, err = run(capsys, "oracle", str(bad))
        assert code == 2
        assert "error:" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "oracle", str(tmp_path / "nope.txt"))
        assert code == 2


class TestExtremal:
    def test_exact_value_text(self, capsys):
        code, out, _ = run(capsys, "extremal", "--k", "4", "--ell", "4")
        assert code == 0
        assert out.splitlines()[0] == "d_4(4): 3/2 (exact-search)"
        assert "part sizes 1" in out

    def test_exact_value_json(self, capsys, tmp_path):
        witness = str(tmp_path / "w.txt")
        code, out, _ = run(
            capsys, "extremal", "--k", "4", "--ell", "4",
            "--format", "json", "-o", witness,
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["value"] == "3/2"
        assert payload["partA"] == 1
        assert payload["provenance"] == "exact-search"
        g, _ = load_edge_list(witness)
        assert (g.n, g.m) == (4, 3)

    def test_bounds_bracket(self, capsys):
        code, out, _ = run(
            capsys, "extremal", "--k", "20", "--ell", "4", "--bounds",
            "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["value"] is None
        assert payload["bounds"] == ["21/10", "10/1"]
        assert payload["provenance"] == "bounds"

    def test_chain_bound_with_construction(self, capsys, tmp_path):
        built = str(tmp_path / "chain.txt")
        code, out, _ = run(
            capsys, "extremal", "--k", "3", "--ell", "3", "--chain-bound",
            "-o", built,
        )
        assert code == 0
        assert "41/15" in out
        g, _ = load_edge_list(built)
        assert (g.n, g.m) == (13, 18)

    def test_chain_bound_respects_blocks(self, capsys):
        code, out, _ = run(
            capsys, "extremal", "--k", "3", "--ell", "3", "--chain-bound",
            "--blocks", "2", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["bound"] == "41/15"  # bound is construction-independent
        assert payload["construction"] == {"n": 9, "m": 12}

    def test_oversized_request_is_usage_error(self, capsys):
        code, _, err = run(capsys, "extremal", "--k", "11", "--ell", "4")
        assert code == 2
        assert "error:" in err


class TestPipeline:
    @pytest.fixture
    def k55_file(self, tmp_path):
        path = str(tmp_path / "k55.txt")
        save_edge_list(gen_complete_bipartite(5, 5), path)
        return path

    @pytest.fixture
    def star_file(self, tmp_path):
        path = str(tmp_path / "star.txt")
        save_edge_list(from_edge_list([(0, i) for i in range(1, 9)], 9), path)
        return path

    def test_successful_run_json(self, capsys, k55_file):
        code, out, _ = run(
            capsys, "pipeline", k55_file, "--k", "2", "--ell", "3",
            "--d-value", "1/12",
        )
        assert code == 0
        report = json.loads(out)
        assert report["input"]["n"] == 10
        assert report["result"]["h"] == 1
        assert report["result"]["lengths"] == [4, 6]
        assert [len(w) for w in report["result"]["witnesses"]] == [4, 6]
        assert report["stages"][0]["stage"] == "validate"

    def test_successful_run_text(self, capsys, k55_file):
        code, out, _ = run(
            capsys, "pipeline", k55_file, "--k", "2", "--ell", "3",
            "--d-value", "1/12", "--format", "text",
        )
        assert code == 0
        assert "h=1 lengths=[4, 6]" in out
        assert "C_4:" in out and "C_6:" in out

    def test_stage_failure_exit_code(self, capsys, star_file):
        code, out, _ = run(
            capsys, "pipeline", star_file, "--k", "2", "--ell", "3",
            "--d-value", "1/12",
        )
        assert code == 4
        report = json.loads(out)
        assert report["result"]["failure"]["stage"] == "dense-layer-pair"

    def test_guarantee_range_violation(self, capsys, k55_file):
        code, out, _ = run(
            capsys, "pipeline", k55_file, "--k", "2", "--ell", "3",
            "--mode", "guarantee",
        )
        assert code == 5
        report = json.loads(out)
        assert report["result"]["failure"]["stage"] == "validate"

    def test_file_metadata_feeds_freeness_note(self, capsys, tmp_path):
        path = str(tmp_path / "pg2.txt")
        run(capsys, "gen", "projective", "--p", "2", "-o", path)
        code, out, _ = run(capsys, "pipeline", path, "--k", "4", "--ell", "4")
        assert code == 4  # far too small to finish, but the note is recorded
        report = json.loads(out)
        assert "girth 6" in report["stages"][0]["clFree"]

    def test_threads_flag_is_accepted(self, capsys, k55_file):
        code, out, _ = run(
            capsys, "pipeline", k55_file, "--k", "2", "--ell", "3",
            "--d-value", "1/12", "--threads", "4",
        )
        assert code == 0
        assert json.loads(out)["result"]["lengths"] == [4, 6]

    def test_bad_rational(self, capsys, k55_file):
        code, _, _ = run(
            capsys, "pipeline", k55_file, "--k", "2", "--ell", "3",
            "--d-value", "nope",
        )
        assert code == 2


class TestVerify:
    def test_good_witness(self, capsys, k33_file):
        code, out, _ = run(capsys, "verify", k33_file, "--witness", "0,3,1,4")
        assert code == 0
        assert "PASS witness: verified" in out

    def test_bad_witness_names_the_edge(self, capsys, k33_file):
        code, out, _ = run(capsys, "verify", k33_file, "--witness", "0,1,2")
        assert code == 1
        assert "missing edge" in out

    def test_report_roundtrip(self, capsys, tmp_path):
        graph_path = str(tmp_path / "k55.txt")
        save_edge_list(gen_complete_bipartite(5, 5), graph_path)
        code, out, _ = run(
            capsys, "pipeline", graph_path, "--k", "2", "--ell", "3",
            "--d-value", "1/12",
        )
        assert code == 0
        report_path = tmp_path / "report.json"
        report_path.write_text(out)

        code, out, _ = run(capsys, "verify", graph_path, "--report", str(report_path))
        assert code == 0
        assert "PASS progression:" in out
        assert "PASS witness[0]:" in out
        assert "PASS witness[1]:" in out

    def test_tampered_report_fails(self, capsys, tmp_path):
        graph_path = str(tmp_path / "k55.txt")
        save_edge_list(gen_complete_bipartite(5, 5), graph_path)
        _, out, _ = run(
            capsys, "pipeline", graph_path, "--k", "2", "--ell", "3",
            "--d-value", "1/12",
        )
        report = json.loads(out)
        # duplicate a vertex: no relabelling can make that a valid cycle
        report["result"]["witnesses"][0][0] = report["result"]["witnesses"][0][2]
        report_path = tmp_path / "tampered.json"
        report_path.write_text(json.dumps(report))

        code, out, _ = run(capsys, "verify", graph_path, "--report", str(report_path))
        assert code == 1
        assert "FAIL witness[0]:" in out

    def test_failure_report_carries_no_witnesses(self, capsys, tmp_path):
        graph_path = str(tmp_path / "star.txt")
        save_edge_list(from_edge_list([(0, i) for i in range(1, 9)], 9), graph_path)
        _, out, _ = run(
            capsys, "pipeline", graph_path, "--k", "2", "--ell", "3",
            "--d-value", "1/12",
        )
        report_path = tmp_path / "failed.json"
        report_path.write_text(out)

        code, out, _ = run(capsys, "verify", graph_path, "--report", str(report_path))
        assert code == 1
        assert "carries no witnesses" in out

    def test_garbage_witness_list(self, capsys, k33_file):
        code, _, _ = run(capsys, "verify", k33_file, "--witness", "a,b,c")
        assert code == 2


class TestAccept:
    def test_unknown_suite_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "accept", "no-such-suite")
        assert code == 2

    def test_extremal_table_scaled_down(self, capsys):
        code, out, _ = run(capsys, "accept", "extremal-table", "--max-k", "4")
        assert code == 0
        assert "PASS extremal-closed-form:" in out
        assert "PASS extremal-unpruned-reference:" in out
        assert "2/2 checks passed" in out

    def test_theta_lemma_scaled_down(self, capsys):
        code, out, _ = run(capsys, "accept", "theta-lemma", "--max-n", "5")
        assert code == 0
        assert "PASS theta-lemma-exhaustive:" in out

    def test_json_payload_shape(self, capsys):
        code, out, _ = run(
            capsys, "accept", "extremal-table", "--max-k", "3", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["suite"] == "extremal-table"
        assert payload["failed"] == 0
        assert all(check["ok"] for check in payload["checks"])


class TestEnvironment:
    def test_cache_dir_honoured_through_cli(self, capsys, tmp_path, monkeypatch):
        import cyclemod.extremal as extremal

        monkeypatch.setenv("CYCLEMOD_CACHE", str(tmp_path))
        extremal._memo.clear()
        try:
            code, _, _ = run(capsys, "extremal", "--k", "5", "--ell", "4")
        finally:
            extremal._memo.clear()
        assert code == 0
        assert os.path.exists(tmp_path / "extremal-cache.txt")
