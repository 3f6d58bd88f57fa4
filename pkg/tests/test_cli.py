import json
from pathlib import Path

import pytest

from flowallometry.cli import main

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"
FIXTURE = str(DATA / "fixture_3node.csv")
CORPUS = str(DATA / "corpus_two_products.csv")


def run(tmp_path, *argv):
    out = tmp_path / "out.txt"
    code = main([*argv, "--out", str(out)])
    return code, (out.read_text(encoding="utf-8") if out.exists() else None)


class TestGoldenFiles:
    @pytest.mark.parametrize("fmt,golden", [
        ("json", "analyze_fixture.json"),
        ("csv", "analyze_fixture.csv"),
    ])
    def test_analyze_fixture(self, tmp_path, fmt, golden):
        code, text = run(tmp_path, "analyze", "--input", FIXTURE,
                         "--year", "2000", "--product", "71", "--digits", "2",
                         "--format", fmt)
        assert code == 0
        assert text == (GOLDEN / golden).read_text(encoding="utf-8")

    @pytest.mark.parametrize("fmt,golden", [
        ("csv", "batch_corpus.csv"),
        ("json", "batch_corpus.json"),
    ])
    def test_batch_corpus(self, tmp_path, fmt, golden):
        code, text = run(tmp_path, "batch", "--input", CORPUS,
                         "--year", "2000", "--digits", "1",
                         "--min-countries", "3", "--format", fmt)
        assert code == 0
        assert text == (GOLDEN / golden).read_text(encoding="utf-8")

    def test_parallel_batch_matches_golden_bytes(self, tmp_path):
        code, text = run(tmp_path, "batch", "--input", CORPUS,
                         "--year", "2000", "--digits", "1",
                         "--min-countries", "3", "--format", "csv",
                         "--workers", "4")
        assert code == 0
        assert text == (GOLDEN / "batch_corpus.csv").read_text(encoding="utf-8")

    def test_repeated_runs_byte_identical(self, tmp_path):
        args = ("analyze", "--input", FIXTURE, "--year", "2000",
                "--product", "71", "--digits", "2")
        _, first = run(tmp_path, *args)
        _, second = run(tmp_path, *args)
        assert first == second


class TestAnalyzeContent:
    def test_worked_fixture_values(self, tmp_path):
        code, text = run(tmp_path, "analyze", "--input", FIXTURE,
                         "--year", "2000", "--product", "71", "--digits", "2")
        doc = json.loads(text)
        assert [n["throughflow"] for n in doc["nodes"]] == [3.0, 2.0, 2.0]
        assert [n["source"] for n in doc["nodes"]] == [3.0, 0.0, 0.0]
        assert [n["impact"] for n in doc["nodes"]] == pytest.approx(
            [7.0, 3.0, 2.0], rel=1e-12)
        assert doc["eta"] == pytest.approx(2.5896936467371026, rel=1e-9)

    def test_formats_carry_identical_numbers(self, tmp_path):
        _, json_text = run(tmp_path, "analyze", "--input", FIXTURE,
                           "--year", "2000", "--product", "71", "--digits", "2",
                           "--format", "json")
        _, csv_text = run(tmp_path, "analyze", "--input", FIXTURE,
                          "--year", "2000", "--product", "71", "--digits", "2",
                          "--format", "csv")
        doc = json.loads(json_text)
        lines = [l for l in csv_text.splitlines() if l and not l.startswith("#")]
        header = lines[0].split(",")
        rows = [dict(zip(header, line.split(","))) for line in lines[1:]]
        assert len(rows) == doc["n"]
        for row, node in zip(rows, doc["nodes"]):
            assert float(row["eta"]) == doc["eta"]
            assert float(row["gini"]) == doc["gini"]
            assert row["country"] == node["country"]
            assert float(row["impact"]) == node["impact"]
            assert float(row["log10_impact"]) == node["log10_impact"]

    def test_metadata_block_terminates_output(self, tmp_path):
        for fmt in ("json", "csv"):
            _, text = run(tmp_path, "analyze", "--input", FIXTURE,
                          "--year", "2000", "--product", "71", "--digits", "2",
                          "--format", fmt)
            if fmt == "json":
                assert list(json.loads(text))[-1] == "meta"
            else:
                assert text.splitlines()[-1].startswith("# convention")


class TestInputHandling:
    def test_multiple_input_files_merge(self, tmp_path):
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        first.write_text("year,exporter,importer,product,value\n"
                         "2000,AAA,BBB,71,2\n")
        second.write_text("year,exporter,importer,product,value\n"
                          "2000,AAA,CCC,71,1\n2000,BBB,CCC,71,1\n")
        code, text = run(tmp_path, "analyze", "--input", str(first),
                         "--input", str(second), "--year", "2000",
                         "--product", "71", "--digits", "2")
        assert code == 0
        doc = json.loads(text)
        assert doc["n"] == 3
        assert [n["throughflow"] for n in doc["nodes"]] == [3.0, 2.0, 2.0]

    def test_skip_list_lands_in_csv_comments(self, tmp_path):
        trades = tmp_path / "trades.csv"
        rows = ["year,exporter,importer,product,value"]
        for i in range(6):
            rows.append(f"2000,C{i:02d},C{(i + 1) % 6:02d},11,{2.0 + i}")
        rows.append("2000,AAA,BBB,22,5.0")  # two countries: below the floor
        trades.write_text("\n".join(rows) + "\n")
        code, text = run(tmp_path, "batch", "--input", str(trades),
                         "--year", "2000", "--digits", "2",
                         "--min-countries", "3", "--format", "csv")
        assert code == 0
        assert any(line.startswith("# skipped 22: TooFewPoints")
                   for line in text.splitlines())


class TestExitCodes:
    def test_success_is_zero(self, tmp_path):
        code, _ = run(tmp_path, "analyze", "--input", FIXTURE,
                      "--year", "2000", "--product", "71", "--digits", "2")
        assert code == 0

    def test_empty_selection_is_one(self, tmp_path, capsys):
        code, text = run(tmp_path, "analyze", "--input", FIXTURE,
                         "--year", "2000", "--product", "99", "--digits", "2")
        assert code == 1 and text is None
        assert "no record matches" in capsys.readouterr().err

    def test_missing_file_is_one(self, tmp_path):
        code, _ = run(tmp_path, "analyze", "--input", "/nonexistent.csv",
                      "--year", "2000", "--product", "71", "--digits", "2")
        assert code == 1

    def test_singular_network_is_two(self, tmp_path):
        loop = tmp_path / "loop.csv"
        loop.write_text("year,exporter,importer,product,value\n"
                        "2000,AAA,BBB,11,5\n2000,BBB,AAA,11,5\n")
        code, _ = run(tmp_path, "analyze", "--input", str(loop),
                      "--year", "2000", "--product", "11", "--digits", "2")
        assert code == 2

    def test_bad_flag_is_one(self, tmp_path, capsys):
        assert main(["analyze", "--nope"]) == 1
        capsys.readouterr()


class TestSynthCommand:
    def test_star_five_emits_four_rows(self, tmp_path):
        code, text = run(tmp_path, "synth", "star", "--n", "5")
        assert code == 0
        rows = [l for l in text.splitlines() if l and not l.startswith("#")]
        assert len(rows) == 1 + 4  # header + one row per spoke

    def test_synth_round_trips_through_analyze(self, tmp_path):
        fixture = tmp_path / "net.csv"
        code = main(["synth", "random_flow", "--n", "10", "--density", "0.6",
                     "--weight", "1:50", "--seed", "11", "--product", "4",
                     "--out", str(fixture)])
        assert code == 0
        code, text = run(tmp_path, "analyze", "--input", str(fixture),
                         "--year", "2000", "--product", "4", "--digits", "1")
        assert code == 0 and json.loads(text)["n"] == 10

    def test_deterministic(self, tmp_path):
        args = ("synth", "random_tree", "--n", "20", "--seed", "3")
        _, first = run(tmp_path, *args)
        _, second = run(tmp_path, *args)
        assert first == second


class TestBackboneCommand:
    def test_alpha_one_keeps_all_edges_in_dot(self, tmp_path):
        code, text = run(tmp_path, "backbone", "--input", FIXTURE,
                         "--year", "2000", "--product", "71", "--digits", "2",
                         "--alpha", "1.0", "--format", "dot")
        assert code == 0
        assert text.count("->") == 3
        assert text.splitlines()[-1].startswith("// convention")

    def test_node_link_json(self, tmp_path):
        code, text = run(tmp_path, "backbone", "--input", FIXTURE,
                         "--year", "2000", "--product", "71", "--digits", "2",
                         "--alpha", "0.5", "--format", "json")
        doc = json.loads(text)
        assert doc["directed"] is True
        assert {n["id"] for n in doc["nodes"]} == {"AAA", "BBB", "CCC"}
        assert all(link["weight"] > 0 for link in doc["links"])


class TestOtherCommands:
    def test_timeseries_csv_has_gap_cells(self, tmp_path):
        trades = tmp_path / "trades.csv"
        lines = ["year,exporter,importer,product,value"]
        for year in (1999, 2000):
            for i in range(6):
                lines.append(f"{year},C{i:02d},C{(i+1) % 6:02d},11,{2.0 + i}")
        lines.append("1999,C00,C01,22,9.0")
        lines.append("1999,C01,C02,22,8.0")
        lines.append("1999,C02,C00,22,1.0")
        trades.write_text("\n".join(lines) + "\n")
        code, text = run(tmp_path, "timeseries", "--input", str(trades),
                         "--digits", "2", "--min-countries", "3",
                         "--format", "csv")
        assert code == 0
        rows = [l.split(",") for l in text.splitlines()[1:] if not l.startswith("#")]
        gaps = [r for r in rows if r[0] == "22" and r[1] == "2000"]
        assert gaps and gaps[0][2] == ""

    def test_prody_json(self, tmp_path):
        gdp = tmp_path / "gdp.csv"
        gdp.write_text("country,value\n" + "\n".join(
            f"N{i:04d},{10000 + 1000 * i}" for i in range(14)) + "\n")
        code, text = run(tmp_path, "prody", "--input", CORPUS,
                         "--year", "2000", "--digits", "1", "--gdp", str(gdp))
        assert code == 0
        doc = json.loads(text)
        values = [p["prody"] for p in doc["products"]]
        assert len(values) == 2 and all(10000 <= v <= 23000 for v in values)

    def test_correlate_requires_exactly_one_column_source(self, tmp_path, capsys):
        code = main(["correlate", "--input", CORPUS, "--year", "2000",
                     "--digits", "1"])
        assert code == 1
        assert "exactly one" in capsys.readouterr().err

    def test_correlate_with_column_file(self, tmp_path):
        trades = tmp_path / "trades.csv"
        lines = ["year,exporter,importer,product,value"]
        for p in range(5):
            for i in range(5):
                lines.append(
                    f"2000,C{i:02d},C{(i + 1 + p) % 6:02d},{p + 1},{1.5 * (i + 1) + p}")
        trades.write_text("\n".join(lines) + "\n")
        column = tmp_path / "column.csv"
        column.write_text("product,value\n" + "\n".join(
            f"{p + 1},{1000.0 * (p + 1)}" for p in range(5)) + "\n")
        code, text = run(tmp_path, "correlate", "--input", str(trades),
                         "--year", "2000", "--digits", "1",
                         "--min-countries", "3",
                         "--complexity-column", str(column))
        assert code == 0
        doc = json.loads(text)
        assert doc["n_pairs"] == 5
        assert -1.0 <= doc["r"] <= 1.0

    def test_exclusion_list_applies(self, tmp_path):
        trades = tmp_path / "trades.csv"
        lines = ["year,exporter,importer,product,value"]
        for p in range(5):
            for i in range(5):
                lines.append(
                    f"2000,C{i:02d},C{(i + 1 + p) % 6:02d},{p + 1},{1.5 * (i + 1) + p}")
        trades.write_text("\n".join(lines) + "\n")
        column = tmp_path / "column.csv"
        column.write_text("product,value\n" + "\n".join(
            f"{p + 1},{1000.0 * (p + 1)}" for p in range(5)) + "\n")
        exclude = tmp_path / "exclude.txt"
        exclude.write_text("2\n")
        code, text = run(tmp_path, "correlate", "--input", str(trades),
                         "--year", "2000", "--digits", "1",
                         "--min-countries", "3",
                         "--complexity-column", str(column),
                         "--exclude", str(exclude))
        assert code == 0
        doc = json.loads(text)
        assert doc["n_pairs"] == 4 and doc["excluded"] == ["2"]
