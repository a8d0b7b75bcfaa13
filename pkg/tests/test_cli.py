"""CLI behavior: exit codes, JSON output, config merging, artifact bundles."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from termspace.cli import main

from oracles import brute_context, brute_singleton, window_snippets

FIXTURE = {
    "d0": "rock anthem with a loud rock chorus",
    "d1": "quiet ballad about rain",
    "d2": "rock and gravel on the trail",
    "d3": "gravel voice singing rock",
    "d4": "rain on the rock face",
    "d5": "trail mix and a long walk",
    "d6": "loud chorus quiet verse",
    "d7": "the rock face route",
    "d8": "ballad of the trail",
    "d9": "rock rock rock",
}


def write_corpus(tmp_path, docs, name="corpus"):
    directory = tmp_path / name
    directory.mkdir(exist_ok=True)
    for doc_id, text in docs.items():
        (directory / f"{doc_id}.txt").write_text(text, encoding="utf-8")
    return directory


def run_cli(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestIndexCommand:
    def test_empty_directory(self, tmp_path, capsys):
        corpus = tmp_path / "empty"
        corpus.mkdir()
        code, out, err = run_cli(capsys, ["index", "--corpus", str(corpus)])
        assert code == 0
        assert json.loads(out) == {"documents": 0, "unique_tokens": 0, "total_tokens": 0}
        assert err == ""

    def test_two_doc_fixture(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, {"a": "one two", "b": "two three four"})
        code, out, _ = run_cli(capsys, ["index", "--corpus", str(corpus)])
        assert code == 0
        assert json.loads(out) == {"documents": 2, "unique_tokens": 4, "total_tokens": 5}

    def test_repeat_runs_are_byte_identical(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        _, first, _ = run_cli(capsys, ["index", "--corpus", str(corpus)])
        _, second, _ = run_cli(capsys, ["index", "--corpus", str(corpus)])
        assert first == second

    def test_jsonl_format(self, tmp_path, capsys):
        path = tmp_path / "docs.jsonl"
        path.write_text('{"id": "a", "text": "one two"}\n', encoding="utf-8")
        code, out, _ = run_cli(capsys, ["index", "--corpus", str(path), "--format", "jsonl"])
        assert code == 0
        assert json.loads(out)["documents"] == 1

    def test_malformed_jsonl_reports_line(self, tmp_path, capsys):
        path = tmp_path / "docs.jsonl"
        path.write_text('{"id": "a", "text": "x"}\nnot json\n', encoding="utf-8")
        code, out, err = run_cli(capsys, ["index", "--corpus", str(path), "--format", "jsonl"])
        assert code == 1
        assert out == ""
        assert ":2:" in err

    def test_missing_corpus_flag(self, capsys):
        code, _, err = run_cli(capsys, ["index"])
        assert code == 1
        assert "corpus" in err


class TestQueryCommand:
    def test_absent_term_counts_zero(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        code, out, _ = run_cli(capsys, ["query", "--corpus", str(corpus), "nothinghere"])
        assert code == 0
        assert json.loads(out) == {"term": "nothinghere", "count": 0}

    def test_pair_counts_match_brute_force(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        code, out, _ = run_cli(capsys, ["query", "--corpus", str(corpus), "rock", "trail"])
        assert code == 0
        payload = json.loads(out)
        pairs = list(FIXTURE.items())
        assert payload["counts"] == [
            len(brute_singleton(pairs, ["rock"])),
            len(brute_singleton(pairs, ["trail"])),
        ]
        assert payload["doubleton"] == len(
            brute_singleton(pairs, ["rock"]) & brute_singleton(pairs, ["trail"])
        )

    def test_duplicate_pair_exits_nonzero(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        code, out, err = run_cli(capsys, ["query", "--corpus", str(corpus), "rock", "rock"])
        assert code == 1
        assert out == ""
        assert "distinct" in err

    def test_three_terms_rejected(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        code, _, err = run_cli(capsys, ["query", "--corpus", str(corpus), "a", "b", "c"])
        assert code == 1
        assert "one or two" in err

    def test_biased_counts_are_reproducible(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        argv = [
            "query", "--corpus", str(corpus),
            "--bias-mode", "additive", "--bias-magnitude", "3", "--seed", "5",
            "rock",
        ]
        _, first, _ = run_cli(capsys, argv)
        _, second, _ = run_cli(capsys, argv)
        assert first == second
        exact = len(brute_singleton(list(FIXTURE.items()), ["rock"]))
        assert exact <= json.loads(first)["count"] <= exact + 3


class TestStageCommands:
    def test_snippets_shape(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        code, out, _ = run_cli(capsys, ["snippets", "--corpus", str(corpus), "--window", "2", "rock"])
        assert code == 0
        payload = json.loads(out)
        expected = window_snippets(list(FIXTURE.items()), ["rock"], 2, 3)
        assert [(s["doc_id"], s["words"]) for s in payload["snippets"]] == expected

    def test_context_descends_by_weight(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        code, out, _ = run_cli(capsys, ["context", "--corpus", str(corpus), "rock"])
        assert code == 0
        payload = json.loads(out)
        stats = {w["word"]: float(w["nu"]) for w in payload["words"]}
        nus = [stats[w] for w in payload["nu_order"]]
        assert nus == sorted(nus, reverse=True)

    def test_context_of_absent_term_fails_cleanly(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        code, out, err = run_cli(capsys, ["context", "--corpus", str(corpus), "unseen"])
        assert code == 1
        assert out == ""
        assert "empty" in err

    def test_cluster_includes_tree(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        code, out, _ = run_cli(capsys, ["cluster", "--corpus", str(corpus), "rock"])
        assert code == 0
        payload = json.loads(out)
        assert not payload["cluster"]["empty"]
        vertices = payload["tree"]["vertices"]
        assert len(payload["tree"]["edges"]) == len(vertices) - 1

    def test_shade_empty_cluster_is_reported_not_fatal(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        code, out, _ = run_cli(capsys, ["shade", "--corpus", str(corpus), "--alpha", "99", "rock"])
        assert code == 0
        payload = json.loads(out)
        assert payload["empty"] is True
        assert payload["cluster"] is None

    def test_shade_normalizes_by_maximum(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        code, out, _ = run_cli(capsys, ["shade", "--corpus", str(corpus), "rock"])
        assert code == 0
        payload = json.loads(out)
        raws = [e["raw"] for e in payload["cluster"]["entries"]]
        assert payload["cluster"]["z"] == max(raws)

    def test_out_flag_writes_file(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        target = tmp_path / "result.json"
        code, out, _ = run_cli(
            capsys, ["query", "--corpus", str(corpus), "--out", str(target), "rock"]
        )
        assert code == 0
        assert out == ""
        assert json.loads(target.read_text(encoding="utf-8"))["term"] == "rock"


class TestConfigFile:
    def test_config_supplies_defaults_and_flags_override(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        config = tmp_path / "run.json"
        config.write_text(
            json.dumps({"corpus": str(corpus), "window": 1, "limit": 1}),
            encoding="utf-8",
        )
        _, from_config, _ = run_cli(capsys, ["snippets", "--config", str(config), "rock"])
        assert max(len(s["words"]) for s in json.loads(from_config)["snippets"]) <= 3

        _, overridden, _ = run_cli(
            capsys, ["snippets", "--config", str(config), "--window", "4", "rock"]
        )
        assert max(len(s["words"]) for s in json.loads(overridden)["snippets"]) > 3

    def test_unknown_config_key_rejected(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        config = tmp_path / "run.json"
        config.write_text(json.dumps({"corpus": str(corpus), "widnow": 3}), encoding="utf-8")
        code, _, err = run_cli(capsys, ["index", "--config", str(config)])
        assert code == 1
        assert "widnow" in err


class TestPipelineCommand:
    def test_absent_term_reports_empty_stages(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        out_dir = tmp_path / "bundle"
        code, out, _ = run_cli(
            capsys, ["pipeline", "--corpus", str(corpus), "--out", str(out_dir), "unseen"]
        )
        assert code == 0
        report = json.loads(out)
        assert report["stages"]["snippets"] == {"count": 0, "empty": True}
        assert report["stages"]["context"] == {"words": 0, "empty": True}
        assert report["stages"]["cluster"] == {"retained": 0, "empty": True}
        assert report["stages"]["tree"] is None
        assert report["theorem_check"] is None
        assert sorted(p.name for p in out_dir.iterdir()) == ["report.json", "snippets.json"]

    def test_bundle_matches_oracles(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        out_dir = tmp_path / "bundle"
        code, _, _ = run_cli(
            capsys,
            ["pipeline", "--corpus", str(corpus), "--window", "2", "--out", str(out_dir), "rock"],
        )
        assert code == 0
        pairs = list(FIXTURE.items())

        snippets = json.loads((out_dir / "snippets.json").read_text(encoding="utf-8"))
        assert [(s["doc_id"], s["words"]) for s in snippets["snippets"]] == window_snippets(
            pairs, ["rock"], 2, 3
        )

        context = json.loads((out_dir / "context.json").read_text(encoding="utf-8"))
        expected = brute_context(pairs, ["rock"], 2, 3)
        got = {w["word"]: (float(w["nu"]), w["mu"]) for w in context["words"]}
        assert sorted(got) == sorted(expected)
        for w, (weight, count) in expected.items():
            assert abs(got[w][0] - weight) <= 1e-12
            assert got[w][1] == count

        shade = json.loads((out_dir / "shade.json").read_text(encoding="utf-8"))
        for entry in shade["cluster"]["entries"]:
            assert entry["raw"] == len(brute_singleton(pairs, [entry["word"]]))

        report = json.loads((out_dir / "report.json").read_text(encoding="utf-8"))
        assert report["theorem_check"] is True
        assert report["stages"]["tree"]["edges"] == (
            report["stages"]["tree"]["vertices"] - report["stages"]["tree"]["components"]
        )

    def test_tree_edges_are_graph_edges(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        out_dir = tmp_path / "bundle"
        run_cli(capsys, ["pipeline", "--corpus", str(corpus), "--out", str(out_dir), "rock"])
        graph_edges = {
            line.split("[")[0].strip()
            for line in (out_dir / "graph.dot").read_text(encoding="utf-8").splitlines()
            if "--" in line
        }
        tree_edges = {
            line.split("[")[0].strip()
            for line in (out_dir / "tree.dot").read_text(encoding="utf-8").splitlines()
            if "--" in line
        }
        assert tree_edges <= graph_edges

    def test_two_runs_are_byte_identical(self, tmp_path, capsys):
        corpus = write_corpus(tmp_path, FIXTURE)
        bundles = []
        for name in ("first", "second"):
            out_dir = tmp_path / name
            run_cli(
                capsys,
                ["pipeline", "--corpus", str(corpus), "--alpha", "0.05", "--out", str(out_dir), "rock"],
            )
            bundles.append({p.name: p.read_bytes() for p in sorted(out_dir.iterdir())})
        assert bundles[0] == bundles[1]


def test_module_entry_point(tmp_path):
    corpus = write_corpus(tmp_path, {"a": "hello world"})
    result = subprocess.run(
        [sys.executable, "-m", "termspace", "index", "--corpus", str(corpus)],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["documents"] == 1
