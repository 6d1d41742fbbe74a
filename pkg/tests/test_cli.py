from __future__ import annotations

import io
import json

import pytest

from specdrivers.cli import main


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = main(list(argv), stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


class TestList:
    def test_catalog(self):
        status, out, _ = run("list")
        assert status == 0
        for tid in ("STIMULUS_RESPONSE", "RESPONSE_GLOBAL", "BOUNDED_EXISTENCE_BETWEEN"):
            assert tid in out
        assert "builtin:flawed-containers" in out

    def test_fixtures_only(self):
        status, out, _ = run("list", "fixtures")
        assert status == 0 and "calendar_3eq" in out and "templates:" not in out


class TestVerify:
    def test_calendar_json(self):
        status, out, err = run("verify", "--suite", "builtin:calendar", "--time-boundary", "366", "--seed", "7",
                               "--format", "json")
        assert status == 0 and err == ""
        data = json.loads(out)
        assert data["status"] == 0 and data["seed"] == 7

    def test_flawed_containers(self):
        status, out, _ = run("verify", "--suite", "builtin:flawed-containers", "--seed", "7", "--samples", "300")
        data = json.loads(out)
        assert status == 1 and data["totals"]["violated"] == 6

    def test_same_argv_same_bytes(self):
        argv = ("verify", "--suite", "builtin:contracts", "--seed", "3", "--format", "markdown")
        assert run(*argv)[1] == run(*argv)[1]

    def test_filter(self):
        status, out, _ = run("verify", "--suite", "builtin:calendar", "--filter", "*FREQUENCY", "--format", "plain")
        assert status == 0 and "EQUINOX_FREQUENCY" in out and "YEAR_END" not in out

    def test_bound_exhausted_status(self):
        status, _, _ = run("verify", "--suite", "builtin:calendar", "--time-boundary", "100")
        assert status == 2

    def test_suite_file(self, tmp_path):
        p = tmp_path / "mine.suite"
        p.write_text("[NO_EQUINOX]\ntemplate = ABSENCE_GLOBAL\nmodel = calendar\nbind = P:equinox\nbound = 366\n")
        status, out, _ = run("verify", "--suite", str(p), "--format", "plain")
        assert status == 1 and "mine/NO_EQUINOX" in out


class TestErrors:
    @pytest.mark.parametrize(
        "argv",
        [
            ("verify",),
            ("verify", "--suite", "builtin:calendar", "--bogus"),
            ("frobnicate",),
            ("verify", "--suite", "builtin:calendar", "--jobs", "0"),
            ("verify", "--suite", "builtin:calendar", "--format", "xml"),
            ("verify", "--suite", "builtin:calendar", "--seed", "x"),
        ],
    )
    def test_usage_errors(self, argv):
        status, out, err = run(*argv)
        assert status == 3 and out == "" and "usage:" in err

    def test_unknown_builtin(self):
        status, out, err = run("verify", "--suite", "builtin:nope")
        assert status == 3 and out == "" and "unknown builtin suite" in err

    def test_bad_suite_file(self, tmp_path):
        p = tmp_path / "bad.suite"
        p.write_text("[X]\ntemplate = ABSENCE_GLOBAL\nmodel = calendar\nbind = P:nope\n")
        status, _, err = run("verify", "--suite", str(p))
        assert status == 3 and "P=nope" in err


class TestOtherCommands:
    def test_render(self):
        status, out, _ = run("render", "--suite", "builtin:calendar")
        lines = out.splitlines()
        assert status == 0 and len(lines) == 3
        assert "not more than 2 times" in lines[0]

    def test_report_schema(self):
        status, out, _ = run("report-schema")
        assert status == 0 and json.loads(out)["type"] == "object"
