"""Command-line behavior: exit codes, golden rows, and byte determinism."""
from __future__ import annotations

import importlib.resources

import pytest

from ccmv import HEISENBERG_CCM, load_model
from ccmv.cli import main

EXPECTED_FILE = str(importlib.resources.files("ccmv")
                    .joinpath("data/iwasawa_expected.ccmx"))


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValidate:
    def test_text_output(self, capsys, heis_path):
        code, out, err = run_cli(capsys, "validate", heis_path)
        assert code == 0
        assert err == ""
        lines = out.splitlines()
        assert lines[0] == "# ccmv validate model=heisenberg"
        assert lines[1] == "LIE-ANTISYM PASS"
        assert lines[-1] == "# 12 checks: 12 pass, 0 fail"
        assert len(lines) == 14

    def test_tsv_output(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "validate", heis_path, "--format", "tsv")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 12
        assert lines[0] == "LIE-ANTISYM\tPASS\t"
        assert all("\tPASS\t" in line for line in lines)

    def test_broken_model_exits_1(self, capsys, tmp_path):
        broken = tmp_path / "broken.ccm"
        broken.write_text(HEISENBERG_CCM.replace("G 3 1 -1", "G 3 1 1"))
        code, out, _ = run_cli(capsys, "validate", str(broken))
        assert code == 1
        assert any(" FAIL " in line for line in out.splitlines())
        assert "AX-G2 FAIL" in out


class TestConnection:
    def test_text_output(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "connection", heis_path)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "# ccmv connection model=heisenberg"
        assert len(lines) == 37  # banner + 6*6 rows
        assert "conn 0 2 = -1:4" in lines
        assert "conn 0 0 = 0" in lines

    def test_tsv_output(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "connection", heis_path,
                               "--format", "tsv")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 36
        assert lines[0] == "conn\t0\t0\t0"
        assert "conn\t4\t0\t1:2" in lines


class TestCurvature:
    def test_dump(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "curvature", heis_path)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "# ccmv curvature model=heisenberg"
        assert len(lines) == 91  # banner + 15 pairs * 6 columns
        assert "R 0 2 0 = 3:2" in lines
        assert "R 4 5 0 = 2:1" in lines
        assert "R 0 1 0 = 0" in lines

    def test_component(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "curvature", heis_path,
                               "--component", "0", "2", "0", "2")
        assert code == 0
        assert out.splitlines()[1] == "R 0 2 0 2 = 3"

    def test_component_tsv(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "curvature", heis_path, "--format",
                               "tsv", "--component", "0", "2", "0", "2")
        assert code == 0
        assert out == "R\t0\t2\t0\t2\t3\n"

    def test_component_out_of_range(self, capsys, heis_path):
        code, out, err = run_cli(capsys, "curvature", heis_path,
                                 "--component", "0", "2", "0", "9")
        assert code == 2
        assert out == ""
        assert err == "ccmv: component index 9 out of range for dimension 6\n"


class TestRicci:
    def test_text_output(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "ricci", heis_path)
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "# ccmv ricci model=heisenberg"
        # banner + 21 upper-triangle entries + 6 operator columns + scal
        assert len(lines) == 29
        assert "ric 0 0 = -4" in lines
        assert "ric 4 4 = 4" in lines
        assert "ric 0 2 = 0" in lines
        assert "Q 0 = -4:0" in lines
        assert "Q 4 = 4:4" in lines
        assert lines[-1] == "scal = -8"

    def test_tsv_output(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "ricci", heis_path, "--format", "tsv")
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 28
        assert "ric\t0\t0\t-4" in lines
        assert lines[-1] == "scal\t-8"


class TestSectional:
    def test_value(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "sectional", heis_path,
                               "--plane", "0", "2")
        assert code == 0
        assert out.splitlines()[1] == "sec 0 2 = -3"

    def test_tsv_value(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "sectional", heis_path, "--format",
                               "tsv", "--plane", "0", "4")
        assert code == 0
        assert out == "sec\t0\t4\t1\n"

    def test_degenerate_plane_exits_2(self, capsys, heis_path):
        code, out, err = run_cli(capsys, "sectional", heis_path,
                                 "--plane", "2", "2")
        assert code == 2
        assert "nondegenerate plane" in err

    def test_out_of_range_exits_2(self, capsys, heis_path):
        code, _, err = run_cli(capsys, "sectional", heis_path,
                               "--plane", "0", "6")
        assert code == 2
        assert "plane index 6 out of range" in err


class TestVerify:
    def test_full_suite_tsv_matches_errata(self, capsys, heis_path):
        # a fresh end-to-end run must reproduce the committed report exactly
        code, out, _ = run_cli(capsys, "verify", heis_path, "--format", "tsv")
        assert code == 1  # known failures on the published tables
        frozen = open("errata/iwasawa_suite.tsv").read()
        assert out == frozen

    def test_subgroup_text_output(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "verify", heis_path,
                               "--suite", "contact")
        assert code == 1
        lines = out.splitlines()
        assert lines[0] == ("# ccmv verify model=heisenberg suite=contact "
                            "samples=32 seed=0")
        assert lines[-1] == "# 22 identities: 19 pass, 3 fail"
        assert "EQ-3.11 FAIL slots=0,0 lhs=-2 rhs=0" in lines
        assert "EQ-2.22 PASS" in lines

    def test_passing_subgroup_exits_0(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "verify", heis_path,
                               "--suite", "ricci")
        assert code == 0
        assert out.splitlines()[-1] == "# 8 identities: 8 pass, 0 fail"

    def test_seed_and_samples_in_banner(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "verify", heis_path, "--suite",
                               "axioms", "--samples", "4", "--seed", "7")
        assert code == 0
        assert out.splitlines()[0] == ("# ccmv verify model=heisenberg "
                                       "suite=axioms samples=4 seed=7")

    def test_negative_samples_exits_2(self, capsys, heis_path):
        code, _, err = run_cli(capsys, "verify", heis_path, "--samples", "-1")
        assert code == 2
        assert "--samples must be non-negative" in err

    def test_unknown_suite_is_usage_error(self, capsys, heis_path):
        with pytest.raises(SystemExit) as exc:
            main(["verify", heis_path, "--suite", "everything"])
        assert exc.value.code == 2


class TestDiff:
    def test_against_bundled_expected_file(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "diff", heis_path,
                               "--expected", EXPECTED_FILE)
        assert code == 1  # the published tables contain refuted entries
        lines = out.splitlines()
        assert lines[0] == "# ccmv diff model=heisenberg"
        assert lines[-1] == "# 100 entries: 78 match, 22 mismatch"
        assert "R 0 2 0 MATCH" in lines
        assert "scal MISMATCH expected 24 computed -8" in lines
        assert "sec 0 2 MISMATCH expected 3 computed -3" in lines

    def test_tsv_matches_errata(self, capsys, heis_path):
        code, out, _ = run_cli(capsys, "diff", heis_path, "--format", "tsv",
                               "--expected", EXPECTED_FILE)
        assert code == 1
        frozen = open("errata/iwasawa_diff.tsv").read()
        assert out == frozen

    def test_all_match_exits_0(self, capsys, heis_path, tmp_path):
        good = tmp_path / "good.ccmx"
        good.write_text("scal = -8\nric 0 0 = -4\nhol 3 = 0\n")
        code, out, _ = run_cli(capsys, "diff", heis_path,
                               "--expected", str(good))
        assert code == 0
        assert out.splitlines()[-1] == "# 3 entries: 3 match, 0 mismatch"

    def test_bad_expected_file_exits_2(self, capsys, heis_path, tmp_path):
        bad = tmp_path / "bad.ccmx"
        bad.write_text("scal = -8\nwhat 0 = 1\n")
        code, _, err = run_cli(capsys, "diff", heis_path,
                               "--expected", str(bad))
        assert code == 2
        assert "line 2: unknown entry kind" in err

    def test_missing_expected_file_exits_2(self, capsys, heis_path):
        code, _, err = run_cli(capsys, "diff", heis_path,
                               "--expected", "/nonexistent.ccmx")
        assert code == 2
        assert "cannot read /nonexistent.ccmx" in err


class TestExample:
    def test_stdout_dump(self, capsys):
        code, out, _ = run_cli(capsys, "example", "heisenberg")
        assert code == 0
        assert out == HEISENBERG_CCM
        assert load_model(out).name == "heisenberg"

    def test_emit_writes_loadable_file(self, capsys, tmp_path):
        target = tmp_path / "out.ccm"
        code, out, _ = run_cli(capsys, "example", "heisenberg",
                               "--emit", str(target))
        assert code == 0
        assert out == ""
        assert target.read_text(encoding="utf-8") == HEISENBERG_CCM

    def test_unknown_name_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["example", "nilmanifold"])
        assert exc.value.code == 2


class TestErrorPaths:
    def test_missing_model_file(self, capsys):
        code, _, err = run_cli(capsys, "validate", "/nonexistent.ccm")
        assert code == 2
        assert err.startswith("ccmv: cannot read /nonexistent.ccm")

    def test_model_parse_error_carries_line(self, capsys, tmp_path):
        bad = tmp_path / "bad.ccm"
        bad.write_text("version 1\nn 1\nbracket 2 0 4 1\n")
        code, _, err = run_cli(capsys, "connection", str(bad))
        assert code == 2
        assert "line 3: bracket 2 0: i must be < j" in err

    def test_non_lie_model_rejected(self, capsys, tmp_path):
        bad = tmp_path / "nonlie.ccm"
        bad.write_text("version 1\nname nonlie\nn 1\n"
                       "bracket 0 1 2 1\nbracket 0 2 0 1\n")
        code, _, err = run_cli(capsys, "curvature", str(bad))
        assert code == 2
        assert "rejected: LIE-JACOBI fails" in err

    def test_validate_still_reports_non_lie_model(self, capsys, tmp_path):
        # validate is the diagnostic entry point: it reports rather than refuses
        bad = tmp_path / "nonlie.ccm"
        bad.write_text("version 1\nn 1\nbracket 0 1 2 1\nbracket 0 2 0 1\n")
        code, out, _ = run_cli(capsys, "validate", str(bad))
        assert code == 1
        assert "LIE-JACOBI FAIL" in out


class TestDeterminism:
    def test_repeated_runs_are_byte_identical(self, capsys, heis_path):
        # full-suite determinism follows from two independent runs matching
        # the errata file byte-for-byte; rerun one group here for direct
        # evidence on the sampled evaluations
        first = run_cli(capsys, "verify", heis_path, "--suite", "axioms",
                        "--format", "tsv")
        second = run_cli(capsys, "verify", heis_path, "--suite", "axioms",
                         "--format", "tsv")
        assert first == second
        assert first[0] == 0
