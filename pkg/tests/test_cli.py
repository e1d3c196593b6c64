import json

import pytest

from mazeswitch.cli import main
from mazeswitch.grid import from_text, generate_maze, to_text


def run_cli(args):
    return main(args)


class TestGenMaze:
    def test_stdout_matches_generator(self, capsys):
        assert run_cli(["gen-maze", "--size", "16", "--seed", "1"]) == 0
        out = capsys.readouterr().out
        assert out == to_text(generate_maze(16, 1))
        loaded = from_text(out)
        assert loaded.n == 16 and loaded.seed == 1

    def test_file_output(self, tmp_path, capsys):
        path = tmp_path / "maze.txt"
        assert run_cli(["gen-maze", "--size", "16", "--seed", "2", "--out", str(path)]) == 0
        capsys.readouterr()
        assert from_text(path.read_text()).layout_hash() == generate_maze(16, 2).layout_hash()


class TestRun:
    def test_writes_records_and_reports(self, tmp_path, capsys):
        out = tmp_path / "results"
        code = run_cli(
            [
                "run",
                "--sizes",
                "16",
                "--mazes",
                "2",
                "--variants",
                "spiral,spiral_rl",
                "--seed",
                "0",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        capsys.readouterr()
        lines = (out / "episodes.jsonl").read_text().splitlines()
        assert len(lines) == 4
        for line in lines:
            record = json.loads(line)
            assert record["config"]["n"] == 16
        assert (out / "report.csv").exists()
        assert (out / "report.json").exists()

    def test_rerun_is_byte_identical(self, tmp_path, capsys):
        args = lambda d: [
            "run", "--sizes", "16", "--mazes", "2",
            "--variants", "spiral_rl", "--seed", "3", "--out", str(d),
        ]
        run_cli(args(tmp_path / "a"))
        run_cli(args(tmp_path / "b"))
        capsys.readouterr()
        assert (tmp_path / "a/episodes.jsonl").read_bytes() == (
            tmp_path / "b/episodes.jsonl"
        ).read_bytes()

    def test_config_file_and_flag_override(self, tmp_path, capsys):
        cfg = tmp_path / "suite.ini"
        cfg.write_text(
            "[suite]\nsizes = 16\nmazes = 2\nvariants = spiral\nseed = 5\njobs = 1\n"
        )
        out = tmp_path / "results"
        code = run_cli(
            ["run", "--config", str(cfg), "--mazes", "1", "--out", str(out)]
        )
        assert code == 0
        capsys.readouterr()
        records = [
            json.loads(line)
            for line in (out / "episodes.jsonl").read_text().splitlines()
        ]
        assert len(records) == 1  # flag --mazes 1 overrode the file's 2
        assert records[0]["config"]["maze_seed"] == 5  # seed came from the file

    def test_missing_config_file_errors(self):
        with pytest.raises(SystemExit):
            run_cli(["run", "--config", "/nonexistent.ini"])

    def test_long_flag_extends_default_sizes(self):
        from mazeswitch.bench import DEFAULT_SIZES, LONG_SIZES
        from mazeswitch.cli import _merge_suite_options, build_parser

        parser = build_parser()
        short = _merge_suite_options(parser.parse_args(["run"]))
        assert short["sizes"] == DEFAULT_SIZES
        long = _merge_suite_options(parser.parse_args(["run", "--long"]))
        assert long["sizes"] == LONG_SIZES
        assert 128 in long["sizes"]

    def test_qtable_dumps_written_for_learning_variants(self, tmp_path, capsys):
        from mazeswitch.qlearn import load_qtable_values

        out = tmp_path / "results"
        run_cli(
            ["run", "--sizes", "16", "--mazes", "2", "--variants", "spiral,spiral_rl",
             "--seed", "0", "--out", str(out)]
        )
        capsys.readouterr()
        dumps = sorted((out / "qtables").iterdir())
        assert [p.name for p in dumps] == [
            "16x16_spiral_rl_seed0.txt",
            "16x16_spiral_rl_seed1.txt",
        ]
        values = load_qtable_values(dumps[0].read_text())
        assert values.shape == (50, 5)


class TestReplay:
    def test_replay_identical(self, tmp_path, capsys):
        out = tmp_path / "results"
        run_cli(
            ["run", "--sizes", "16", "--mazes", "2", "--variants", "spiral_rl",
             "--seed", "0", "--out", str(out)]
        )
        capsys.readouterr()
        code = run_cli(["replay", str(out / "episodes.jsonl")])
        printed = capsys.readouterr().out
        assert code == 0
        assert printed.count("identical") == 2

    def test_replay_detects_tampering(self, tmp_path, capsys):
        out = tmp_path / "results"
        run_cli(
            ["run", "--sizes", "16", "--mazes", "1", "--variants", "spiral",
             "--seed", "0", "--out", str(out)]
        )
        capsys.readouterr()
        path = out / "episodes.jsonl"
        record = json.loads(path.read_text())
        record["total_steps"] += 1
        path.write_text(json.dumps(record, sort_keys=True) + "\n")
        code = run_cli(["replay", str(path)])
        printed = capsys.readouterr().out
        assert code == 1
        assert "MISMATCH" in printed
        assert "total_steps" in printed

    def test_line_selection(self, tmp_path, capsys):
        out = tmp_path / "results"
        run_cli(
            ["run", "--sizes", "16", "--mazes", "3", "--variants", "spiral",
             "--seed", "0", "--out", str(out)]
        )
        capsys.readouterr()
        code = run_cli(["replay", str(out / "episodes.jsonl"), "--line", "2"])
        printed = capsys.readouterr().out
        assert code == 0
        assert printed.strip() == "record 2: identical"


class TestAblate:
    def test_prints_table_and_writes_outputs(self, tmp_path, capsys):
        out = tmp_path / "abl"
        code = run_cli(
            ["ablate", "--size", "16", "--mazes", "2", "--seed", "0", "--out", str(out)]
        )
        assert code == 0
        printed = capsys.readouterr().out
        assert "baseline" in printed
        rows = json.loads((out / "ablation.json").read_text())
        assert [r["variant"] for r in rows] == ["spiral", "spiral_conv", "spiral_rl"]
        assert rows[0]["delta_pct"] == 0.0
