"""Api 门面与命令行：子命令、退出码、期望文件断言、存档"""
import json
import os

import pytest

from main import build_parser, main, render_text, run_command
from src.api import Api
from src.api.api import EXIT_ASSERT, EXIT_CUTOFF, EXIT_OK
from src.models.database import Database
from src.services.catalog_service import preset_taft, preset_uqsl2
from src.services.config_service import write_expectations

TRIVIAL_INPUT = """
name = "trivial"
checks = ["dims", "modularity"]

[group]
orders = [1]

[braiding]
conductor = 1
exponents = [[0]]

[limits]
cutoff = 4
"""


@pytest.fixture()
def api(tmp_path):
    return Api(db=Database(str(tmp_path / "reports.db")))


class TestRun:
    def test_dims(self, api):
        result = api.run("dims", preset="taft")
        assert result["success"]
        data = result["data"]
        assert data["exit_code"] == EXIT_OK
        assert data["report"]["hilbert_series"] == [1, 1, 1]
        assert data["report"]["double_dim"] == 27
        assert data["report"]["fpdim_identity"] is True
        assert data["report"]["low_degree_check"] is True
        assert data["report"]["root_formula"] is True
        assert data["record_id"] == 1

    def test_modularity_assert(self, api, tmp_path):
        path = tmp_path / "taft3.toml"
        write_expectations(preset_taft(3), str(path))
        result = api.run("modularity", preset="taft", assert_path=str(path))
        assert result["success"]
        assert result["data"]["mismatches"] == []
        assert result["data"]["exit_code"] == EXIT_OK
        report = result["data"]["report"]
        assert report["modularity"]["verdict"] == "yes"
        assert report["warnings"] == []

    def test_assert_path_without_suffix(self, api, tmp_path):
        write_expectations(preset_taft(3), str(tmp_path / "taft3.toml"))
        result = api.run("dims", preset="taft", assert_path=str(tmp_path / "taft3"))
        assert result["data"]["exit_code"] == EXIT_OK

    def test_mismatch(self, api, tmp_path):
        path = tmp_path / "wrong.toml"
        path.write_text("[expect]\ntotal_dim = 4\n", encoding="utf-8")
        result = api.run("dims", preset="taft", assert_path=str(path))
        data = result["data"]
        assert data["exit_code"] == EXIT_ASSERT
        assert len(data["mismatches"]) == 1
        assert data["mismatches"][0].startswith("total_dim")

    def test_unknown_expect_key(self, api, tmp_path):
        path = tmp_path / "odd.toml"
        path.write_text("[expect]\ncolour = 1\n", encoding="utf-8")
        result = api.run("dims", preset="taft", assert_path=str(path))
        assert result["data"]["exit_code"] == EXIT_ASSERT

    def test_cutoff(self, api, tmp_path):
        path = tmp_path / "trivial.toml"
        path.write_text(TRIVIAL_INPUT, encoding="utf-8")
        result = api.run("check", input_path=str(path))
        data = result["data"]
        assert data["exit_code"] == EXIT_CUTOFF
        assert data["report"]["finite"] == "undetermined"
        assert data["report"]["hilbert_series"] == [1] * 5
        assert data["report"]["modularity"]["verdict"] == "undetermined"

    def test_cli_cutoff_overrides_file(self, api, tmp_path):
        path = tmp_path / "trivial.toml"
        path.write_text(TRIVIAL_INPUT, encoding="utf-8")
        result = api.run("dims", input_path=str(path), cutoff=2)
        assert result["data"]["report"]["hilbert_series"] == [1, 1, 1]

    def test_degenerate_input(self, api):
        result = api.run("modularity", preset="taft", n=4)
        report = result["data"]["report"]
        assert report["b_nondegenerate"] is False
        assert report["b_radical"] == [[2]]
        assert report["modularity"]["verdict"] == "no"

    def test_axioms(self, api):
        result = api.run("axioms", preset="uqsl2", n=3, exhaustive=True)
        axioms = result["data"]["report"]["axioms"]
        assert [a["algebra"] for a in axioms] == ["H", "Drin_K*", "Drin_K*/R"]
        assert all(all(a["checks"].values()) for a in axioms)

    def test_axioms_skipped_above_max_dim(self, api):
        result = api.run("axioms", preset="taft", max_dim=16)
        report = result["data"]["report"]
        assert [a["algebra"] for a in report["axioms"]] == ["H"]
        assert any("27" in w for w in report["warnings"])

    def test_drinfeld(self, api, tmp_path):
        path = tmp_path / "uqsl2.toml"
        write_expectations(preset_uqsl2(3), str(path))
        result = api.run("drinfeld-double", preset="uqsl2", assert_path=str(path))
        assert result["data"]["report"]["drinfeld_map_rank"] == 27
        assert result["data"]["report"]["generic_drinfeld_map_rank"] == 81
        assert result["data"]["exit_code"] == EXIT_OK

    @pytest.mark.slow
    def test_ribbon(self, api):
        result = api.run("ribbon", preset="taft")
        report = result["data"]["report"]
        assert report["generic_double_dim"] == 81
        assert len(report["ribbon_checks"]) == 1
        assert report["ribbon_checks"][0]["passed"]
        assert report["ribbon_oracle"] == {"candidates": 9, "ribbon_count": 1, "matches_kr": True}

    def test_ribbon_skipped(self, api):
        result = api.run("ribbon", preset="super-a11")
        report = result["data"]["report"]
        assert report["generic_double_dim"] is None
        assert report["spherical"] == "yes"
        assert report["warnings"]

    def test_timings(self, api):
        report = api.run("dims", preset="taft", timings=True)["data"]["report"]
        assert set(report["timings"]) >= {"lattice", "nichols"}


class TestErrors:
    def test_both_sources(self, api, tmp_path):
        result = api.run("dims", preset="taft", input_path=str(tmp_path / "x.toml"))
        assert not result["success"]
        assert result["kind"] == "validation"
        assert result["field"] == "input"

    def test_no_source(self, api):
        assert api.run("dims")["field"] == "input"

    def test_unknown_command(self, api):
        assert api.run("explode", preset="taft")["field"] == "command"

    def test_bad_preset_parameter(self, api):
        result = api.run("dims", preset="uqsl2", n=4)
        assert result["field"] == "uqsl2.n"

    @pytest.mark.parametrize("overrides, field", [
        ({"cutoff": 0}, "cutoff"),
        ({"max_dim": 0}, "max_dim"),
    ])
    def test_limit_out_of_range(self, api, overrides, field):
        result = api.run("dims", preset="taft", n=3, **overrides)
        assert not result["success"]
        assert result["kind"] == "validation"
        assert result["field"] == field

    def test_file_limit_out_of_range(self, api, tmp_path):
        path = tmp_path / "trivial.toml"
        path.write_text(TRIVIAL_INPUT.replace("cutoff = 4", "cutoff = 0"), encoding="utf-8")
        result = api.run("dims", input_path=str(path))
        assert not result["success"]
        assert result["field"] == "limits"
        assert "cutoff" in result["error"]

    def test_malformed_expectations(self, api, tmp_path):
        path = tmp_path / "broken.toml"
        path.write_text("[expect\ntotal_dim = 3\n", encoding="utf-8")
        result = api.run("dims", preset="taft", assert_path=str(path))
        assert not result["success"]
        assert result["kind"] == "validation"
        assert result["field"] == "assert"


class TestHistory:
    def test_history_and_show(self, api):
        api.run("dims", preset="taft")
        api.run("modularity", preset="super-a11")
        records = api.history(10)["data"]
        assert [r["command"] for r in records] == ["modularity", "dims"]
        assert records[0]["verdict"] == "yes"
        shown = api.show_report(records[1]["id"])
        assert shown["data"]["total_dim"] == 3

    def test_show_missing(self, api):
        assert not api.show_report(99)["success"]

    def test_no_archive(self, tmp_path):
        api = Api(db=Database(str(tmp_path / "r.db")), archive=False)
        assert api.run("dims", preset="taft")["data"]["record_id"] is None
        assert api.history()["data"] == []


class TestCli:
    def test_main_json(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        code = main(["--no-log-file", "dims", "--preset", "taft", "--no-archive", "--json", str(out)])
        assert code == EXIT_OK
        payload = json.loads(out.read_text(encoding="utf-8"))
        assert payload["total_dim"] == 3
        assert "Hilbert" in capsys.readouterr().out

    def test_main_error_exit(self, capsys):
        code = main(["--no-log-file", "dims", "--preset", "uqsl2", "--n", "4", "--no-archive"])
        assert code == 1
        assert "uqsl2.n" in capsys.readouterr().err

    def test_main_cutoff_zero_exits_one(self, capsys):
        code = main(["--no-log-file", "dims", "--preset", "taft", "--cutoff", "0", "--no-archive"])
        assert code == 1
        assert "cutoff" in capsys.readouterr().err

    def test_expect_then_assert(self, tmp_path, api):
        path = tmp_path / "super.toml"
        args = build_parser().parse_args(["expect", "--preset", "super-a11", "--write", str(path)])
        assert run_command(args, api=api) == EXIT_OK
        args = build_parser().parse_args(["modularity", "--preset", "super-a11", "--assert", str(path)])
        assert run_command(args, api=api) == EXIT_OK

    def test_history_command(self, api, capsys):
        api.run("dims", preset="taft")
        args = build_parser().parse_args(["history", "--limit", "5"])
        assert run_command(args, api=api) == EXIT_OK
        assert "taft-3" in capsys.readouterr().out

    def test_render_text(self, api):
        report = api.run("modularity", preset="taft")["data"]["report"]
        text = render_text(report)
        assert "模性: yes" in text
        assert "KR 对 1 个" in text


class TestShippedFiles:
    ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

    @pytest.mark.parametrize("name,code", [
        ("taft3", EXIT_OK), ("super_a11", EXIT_OK), ("taft4_degenerate", EXIT_OK),
        ("group_algebra", EXIT_OK), ("trivial_braiding", EXIT_CUTOFF),
    ])
    def test_inputs(self, api, name, code):
        result = api.run("dims", input_path=f"{self.ROOT}/inputs/{name}.toml")
        assert result["data"]["exit_code"] == code

    @pytest.mark.parametrize("preset,n,command,expected", [
        ("taft", 3, "modularity", "taft3"),
        ("uqsl2", 3, "drinfeld-double", "uqsl2_3"),
        ("super-a11", 1, "modularity", "super_a11_n1"),
    ])
    def test_expected(self, api, preset, n, command, expected):
        result = api.run(command, preset=preset, n=n, assert_path=f"{self.ROOT}/expected/{expected}")
        assert result["data"]["mismatches"] == []
        assert result["data"]["exit_code"] == EXIT_OK

    def test_group_algebra_axioms(self, api):
        result = api.run("check", input_path=f"{self.ROOT}/inputs/group_algebra.toml")
        report = result["data"]["report"]
        assert report["total_dim"] == 1
        assert report["double_dim"] == 3
        assert all(all(a["checks"].values()) for a in report["axioms"])


class TestDeterminism:
    def test_json_byte_identical(self, tmp_path):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p in paths:
            assert main(["--no-log-file", "modularity", "--preset", "super-a11", "--no-archive",
                         "--json", str(p)]) == EXIT_OK
        assert paths[0].read_bytes() == paths[1].read_bytes()

    @pytest.mark.slow
    def test_taft4_check(self, api):
        report = api.run("check", preset="taft", n=4)["data"]["report"]
        assert report["kr_pairs"] == []
        assert report["spherical"] == "no"
