import io
import json

import pandas as pd
import pytest
from click.testing import CliRunner

from pir_analytics import __version__
from pir_analytics.analysis import summarize
from pir_analytics.errors import ConfigError
from pir_analytics.main import build_config, cli, parse_weights, run
from pir_analytics.models import IndexKind, OutlierPolicy, OutputFormat, Scope, WeightProfile
from pir_analytics.reporting import format_summary

ONES = ",".join(["1"] * 11)


def test_version():
    result = CliRunner().invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_help_lists_commands():
    result = CliRunner().invoke(cli, ["--help"])
    for name in ("validate", "pir", "rescale", "rees", "pond", "outliers", "report", "trajectory"):
        assert name in result.output


class TestValidate:
    def test_fixture_is_clean(self):
        code, out, err = run(["validate"])
        assert code == 0
        assert "MJ: playoff 13, regular 15" in out
        assert out.rstrip().endswith("ok")

    def test_broken_file(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("player,season,phase\nAB,2000-01,regular\n", encoding="utf-8")
        code, out, err = run(["validate", "--data", str(path)])
        assert code == 1
        assert err.splitlines()[-1].startswith("error:")


class TestReport:
    def test_matches_library_summary(self, fixture_records, settings):
        code, out, err = run(["report"])
        assert code == 0
        table = summarize(fixture_records, IndexKind.PIR_RESCALED, [Scope.INDIVIDUAL, Scope.JOINT],
                          OutlierPolicy.none(), WeightProfile.unit(), settings)
        assert out == format_summary(table, OutputFormat.TABLE, settings.table_decimals)

    def test_curated_exclusions_show_both_means(self):
        code, out, err = run(["report", "--kind", "pond", "--outliers", "curated"])
        assert code == 0
        assert "exclusions: manual(10)" in out
        assert "(" in out.splitlines()[-1]

    def test_single_phase(self):
        code, out, err = run(["report", "--phase", "playoff", "--scope", "joint", "--format", "csv"])
        assert code == 0
        frame = pd.read_csv(io.StringIO(out))
        assert set(frame["phase"]) == {"playoff"}
        assert set(frame["scope"]) == {"joint"}
        assert len(frame) == 4

    def test_unit_weights_are_the_default(self):
        assert run(["report", "--kind", "rees"]) == run(["report", "--kind", "rees", "--weights", ONES])

    def test_weights_from_file(self, tmp_path):
        path = tmp_path / "weights.txt"
        path.write_text("2,1,1,1,1,1,1,1,1,1,1\n", encoding="utf-8")
        code, out, err = run(["report", "--kind", "rees", "--weights", str(path)])
        assert code == 0
        assert "weights: 2, 1" in out


class TestIndexCommands:
    def test_csv_and_json_agree(self):
        _, csv_out, _ = run(["rees", "--format", "csv"])
        _, json_out, _ = run(["rees", "--format", "json"])
        frame = pd.read_csv(io.StringIO(csv_out))
        records = json.loads(json_out)
        assert len(frame) == len(records) == 114
        assert list(frame["value"]) == pytest.approx([r["value"] for r in records], abs=1e-12)

    @pytest.mark.parametrize("command", ["pir", "rescale", "rees", "pond"])
    def test_every_record_is_reported(self, command):
        code, out, err = run([command, "--phase", "playoff", "--format", "json"])
        assert code == 0
        assert len(json.loads(out)) == 53

    def test_individual_rescale_spans_unit_interval(self):
        _, out, _ = run(["rescale", "--scope", "individual", "--phase", "regular", "--format", "json"])
        values = [r["value"] for r in json.loads(out) if r["player"] == "LB"]
        assert min(values) == 0.0 and max(values) == 1.0


class TestErrors:
    def test_wrong_weight_count(self):
        code, out, err = run(["rees", "--weights", "1,2"])
        assert code == 1
        assert out == ""
        lines = err.strip().splitlines()
        assert len(lines) == 1 and lines[0].startswith("error:")
        assert "weights" in lines[0]

    def test_manual_needs_a_list(self):
        code, _, err = run(["report", "--outliers", "manual"])
        assert code == 1
        assert "--exclusions" in err

    def test_unknown_exclusion(self, tmp_path):
        path = tmp_path / "exclude.csv"
        path.write_text("player,season,phase\nZZ,1999-00,regular\n", encoding="utf-8")
        code, _, err = run(["report", "--outliers", "manual", "--exclusions", str(path)])
        assert code == 1
        assert "ZZ 1999-00 regular" in err

    def test_empty_exclusions_file(self, tmp_path):
        path = tmp_path / "exclude.csv"
        path.write_text("", encoding="utf-8")
        code, out, err = run(["report", "--outliers", "manual", "--exclusions", str(path)])
        assert code == 1
        assert out == ""
        assert err.splitlines()[-1].startswith("error:")
        assert "exclusions" in err

    def test_unknown_log_level(self):
        code, out, _ = run(["--log-level", "bogus", "pir"])
        assert code == 2
        assert out == ""

    def test_log_level_is_case_insensitive(self):
        code, _, _ = run(["--log-level", "debug", "validate"])
        assert code == 0

    def test_missing_dataset(self, tmp_path):
        code, _, err = run(["pir", "--data", str(tmp_path / "missing.csv")])
        assert code == 1
        assert err.splitlines()[-1].startswith("error:")

    def test_plot_only_for_trajectory(self, tmp_path):
        with pytest.raises(ConfigError, match="trajectory"):
            build_config("report", plot=tmp_path / "out.svg")

    def test_parse_weights_rejects_negatives(self):
        with pytest.raises(ConfigError):
            parse_weights("-1," + ",".join(["1"] * 10))


class TestOutliers:
    def test_curated_list(self):
        code, out, err = run(["outliers", "--outliers", "curated", "--format", "csv"])
        assert code == 0
        frame = pd.read_csv(io.StringIO(out))
        assert len(frame) == 10
        assert set(frame["player"]) == {"LB", "EJ", "MJ", "KB"}

    def test_curated_list_for_playoffs(self):
        _, out, _ = run(["outliers", "--outliers", "curated", "--phase", "playoff", "--format", "json"])
        assert {(r["player"], r["season"]) for r in json.loads(out)} == {
            ("EJ", "1995-96"), ("KB", "1996-97"), ("KB", "1997-98"),
        }

    def test_no_method_excludes_nothing(self):
        code, out, _ = run(["outliers"])
        assert code == 0
        assert out == "(no rows)\n"


class TestTrajectory:
    def test_json_points(self):
        code, out, _ = run(["trajectory", "--player", "MJ", "--phase", "playoff", "--format", "json"])
        assert code == 0
        points = json.loads(out)
        assert len(points) == 13
        assert points[0]["season"] == "1984-85"

    def test_writes_plot(self, tmp_path):
        path = tmp_path / "mj.svg"
        code, _, _ = run(["trajectory", "--player", "MJ", "--plot", str(path)])
        assert code == 0
        assert path.read_text(encoding="utf-8").rstrip().endswith("</svg>")

    def test_unknown_player(self):
        code, _, err = run(["trajectory", "--player", "ZZ"])
        assert code == 1
        assert err.splitlines()[-1].startswith("error:")

    def test_player_is_required(self):
        code, _, _ = run(["trajectory"])
        assert code == 2
