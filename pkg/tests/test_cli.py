"""CLI contract: commands, flags, output formats, exit codes, determinism."""

import json
import math

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

import landau.cli as cli_module
from landau.cli import main
from landau.service import app


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, args):
    return runner.invoke(main, args, catch_exceptions=False)


class TestRadiiCommand:
    def test_p0h_json(self, runner):
        from landau.models import RadiiEnvelope
        from landau.radii import p0h_univalence_radius

        result = invoke(runner, ["radii", "--class", "p0h", "--M", "1.0"])
        assert result.exit_code == 0
        envelope = json.loads(result.stdout)
        RadiiEnvelope.model_validate(envelope)  # conforms to the declared schema
        assert envelope["schema_version"] == "1.0"
        assert envelope["command"] == "radii"
        assert envelope["inputs"]["class"] == "p0h"
        # JSON output carries full double precision: exact round trip.
        assert envelope["results"]["rho"] == p0h_univalence_radius(1.0)
        assert envelope["results"]["R"] == pytest.approx(0.3742825513762845, abs=1e-12)
        assert envelope["results"]["method"] == "closed_form"
        # The bundled table's R entry is inconsistent with the formula.
        assert any("table 1 R[M=1]" in w for w in envelope["warnings"])
        assert any("table 1 R[M=1]" in line for line in result.stderr.splitlines())

    def test_w0h_alpha0_table_value(self, runner):
        result = invoke(runner, ["radii", "--class", "w0h", "--alpha", "0", "--M", "1.5"])
        assert result.exit_code == 0
        envelope = json.loads(result.stdout)
        assert envelope["results"]["rho"] == pytest.approx(0.2075, abs=5e-4)

    def test_gkh_faithful_is_k_independent(self, runner):
        outputs = []
        for k in ("1", "3"):
            result = invoke(
                runner,
                ["radii", "--class", "gkh", "--alpha", "0.5", "--k", k, "--M", "1.0",
                 "--sum-start", "faithful"],
            )
            assert result.exit_code == 0
            envelope = json.loads(result.stdout)
            assert any("do not depend on k" in w for w in envelope["warnings"])
            outputs.append((envelope["results"]["rho"], envelope["results"]["R"]))
        assert outputs[0] == outputs[1]

    def test_csv_format(self, runner):
        result = invoke(runner, ["radii", "--class", "p0h", "--M", "1.0", "--format", "csv"])
        lines = result.stdout.splitlines()
        assert lines[0] == "# decimals=4"
        assert lines[1] == "class,M,alpha,k,sum_start,rho,R,residual,method"
        assert lines[2].startswith("p0h,1.0,,,faithful,0.3248,0.3743,")

    @pytest.mark.parametrize(
        "args",
        [
            ["radii", "--class", "w0h", "--M", "1.0"],  # missing alpha
            ["radii", "--class", "p0h", "--M", "-1.0"],  # bad M
            ["radii", "--class", "p0h", "--M", "1.0", "--alpha", "0.5"],  # stray alpha
            ["radii", "--class", "gkh", "--alpha", "0.5", "--M", "1.0"],  # missing k
            ["radii", "--class", "w0h", "--alpha", "-0.5", "--M", "1.0"],  # bad alpha
            ["radii", "--class", "w0h", "--alpha", "0.5", "--M", "1.0", "--sum-start", "class"],
            ["radii", "--class", "p0h", "--M", "1.0", "--bogus"],  # unknown flag
            ["radii", "--class", "nope", "--M", "1.0"],  # unknown class
        ],
    )
    def test_usage_errors_exit_2(self, runner, args):
        result = runner.invoke(main, args)
        assert result.exit_code == 2


class TestTableCommand:
    def test_table_1_csv(self, runner):
        result = invoke(runner, ["table", "--table", "1", "--format", "csv"])
        assert result.exit_code == 0
        lines = result.stdout.splitlines()
        assert lines[0] == "# decimals=4"
        header = lines[1].split(",")
        assert header == [
            "class", "M", "alpha", "k", "sum_start",
            "rho", "R", "reference_rho", "reference_R", "flag",
        ]
        rows = [line.split(",") for line in lines[2:]]
        assert len(rows) == 3
        # rho column matches the reference at 4 decimals within 5e-4; the R
        # column is flagged on every row.
        for row, rho_ref in zip(rows, ("0.3247", "0.1603", "0.0934")):
            assert abs(float(row[5]) - float(rho_ref)) <= 5e-4
            assert row[9] == "formula-differs"

    def test_table_2_layout(self, runner):
        result = invoke(runner, ["table", "--table", "2"])
        envelope = json.loads(result.stdout)
        rows = envelope["results"]["rows"]
        assert [(r["alpha"], r["M"]) for r in rows] == [(0.0, 1.0), (0.0, 1.5), (1.0, 1.0), (1.0, 1.5)]

    def test_custom_grid(self, runner):
        result = invoke(runner, ["table", "--grid", "w0h;alpha=0:1:0.25;M=1"])
        envelope = json.loads(result.stdout)
        rows = envelope["results"]["rows"]
        assert [r["alpha"] for r in rows] == [0.0, 0.25, 0.5, 0.75, 1.0]
        rhos = [r["rho"] for r in rows]
        assert all(u < v for u, v in zip(rhos, rhos[1:]))

    @pytest.mark.parametrize(
        "args",
        [
            ["table"],  # neither table nor grid
            ["table", "--table", "4"],
            ["table", "--table", "1", "--grid", "p0h;M=1"],
            ["table", "--grid", "p0h;alpha=0:1"],  # malformed range
            ["table", "--grid", "p0h;badkey=1;M=1"],
            ["table", "--grid", "w0h;alpha=0.5"],  # missing M
        ],
    )
    def test_bad_requests_exit_2(self, runner, args):
        result = runner.invoke(main, args)
        assert result.exit_code == 2

    def test_byte_identical_reruns(self, runner):
        first = invoke(runner, ["table", "--table", "2", "--format", "csv"])
        second = invoke(runner, ["table", "--table", "2", "--format", "csv"])
        assert first.stdout == second.stdout
        assert first.stdout.endswith("\n")


class TestSharpnessCommand:
    def test_witness_beyond_radius(self, runner):
        result = invoke(runner, ["sharpness", "--class", "p0h", "--M", "1", "--r", "0.43"])
        assert result.exit_code == 0
        payload = json.loads(result.stdout)["results"]
        assert payload["gap"] <= 1e-10
        assert payload["map_gap"] <= 1e-9
        assert payload["x2"] < payload["rho"] < payload["x1"] < 0.43

    def test_below_radius_exits_2(self, runner):
        result = runner.invoke(main, ["sharpness", "--class", "p0h", "--M", "1", "--r", "0.30"])
        assert result.exit_code == 2
        assert "univalent" in result.stderr

    def test_w0h_alpha1_example(self, runner):
        result = invoke(
            runner, ["sharpness", "--class", "w0h", "--alpha", "1", "--M", "1", "--r", "0.7"]
        )
        payload = json.loads(result.stdout)["results"]
        assert payload["x1"] == pytest.approx(0.602, abs=1e-3)
        assert payload["gap"] <= 1e-10


class TestPlotdataCommand:
    def test_profile_has_interior_peak(self, runner):
        result = invoke(
            runner,
            ["plotdata", "--class", "p0h", "--M", "1", "--what", "profile", "--points", "200",
             "--decimals", "8"],
        )
        lines = result.stdout.splitlines()
        assert lines[1] == "x,value"
        rows = [tuple(map(float, line.split(","))) for line in lines[2:]]
        assert len(rows) == 200
        peak_x = max(rows, key=lambda xy: xy[1])[0]
        step = 0.95 / 199
        assert abs(peak_x - 0.3247680933442228) <= step

    def test_margin_strictly_decreasing(self, runner):
        result = invoke(
            runner,
            ["plotdata", "--class", "w0h", "--alpha", "0", "--M", "1", "--what", "margin",
             "--decimals", "10"],
        )
        lines = result.stdout.splitlines()
        assert lines[1] == "r,margin"
        values = [float(line.split(",")[1]) for line in lines[2:]]
        assert all(u > v for u, v in zip(values, values[1:]))

    def test_disks_single_row(self, runner):
        result = invoke(runner, ["plotdata", "--class", "p0h", "--M", "1", "--what", "disks"])
        lines = result.stdout.splitlines()
        assert lines[1] == "rho,R"
        assert lines[2] == "0.3248,0.3743"
        assert len(lines) == 3

    def test_json_format_available(self, runner):
        result = invoke(
            runner,
            ["plotdata", "--class", "p0h", "--M", "1", "--what", "disks", "--format", "json"],
        )
        envelope = json.loads(result.stdout)
        assert envelope["results"]["columns"] == ["rho", "R"]

    def test_bad_points_exits_2(self, runner):
        result = runner.invoke(
            main, ["plotdata", "--class", "p0h", "--M", "1", "--points", "1"]
        )
        assert result.exit_code == 2


class TestSpecfunCommand:
    def test_dilog_at_one(self, runner):
        result = invoke(runner, ["specfun", "--fn", "dilog", "--z", "1"])
        payload = json.loads(result.stdout)["results"]
        assert abs(payload["value"] - math.pi**2 / 6.0) <= payload["tail_bound"] + 1e-14
        assert payload["value"] == pytest.approx(1.6449341, abs=2e-7)

    def test_lerch_log_identity(self, runner):
        result = invoke(runner, ["specfun", "--fn", "lerch", "--z", "0.5", "--s", "1", "--a", "1"])
        payload = json.loads(result.stdout)["results"]
        assert payload["value"] == pytest.approx(1.3862944, abs=1e-7)

    def test_domain_error_exits_2(self, runner):
        result = runner.invoke(main, ["specfun", "--fn", "lerch", "--z", "1.0"])
        assert result.exit_code == 2

    def test_budget_error_exits_3(self, runner):
        result = runner.invoke(main, ["specfun", "--fn", "dilog", "--z", "0.9999999"])
        assert result.exit_code == 3


class TestAuditCommand:
    def test_audit_passes(self, runner):
        result = invoke(runner, ["audit"])
        assert result.exit_code == 0
        payload = json.loads(result.stdout)["results"]
        assert payload["identities_passed"] is True
        assert all(r["passed"] for r in payload["identity_reports"])
        mismatched = [c for c in payload["reference_reports"] if not c["matches"]]
        assert len(mismatched) == 26

    def test_identity_failure_exits_nonzero(self, runner, monkeypatch):
        import landau.handlers as handlers_module
        from landau.oracle import OracleReport

        monkeypatch.setattr(
            handlers_module,
            "audit_identities",
            lambda cfg: [OracleReport.build("forced-failure@nowhere", 1.0, 2.0)],
        )
        result = runner.invoke(main, ["audit"])
        assert result.exit_code == 1

    def test_audit_csv_sections(self, runner):
        result = invoke(runner, ["audit", "--format", "csv"])
        lines = result.stdout.splitlines()
        assert lines[1] == "section,name,lhs,rhs,abs_diff,tol,status"
        sections = {line.split(",")[0] for line in lines[2:]}
        assert sections == {"identity", "reference"}
        assert not any(",FAIL" in line for line in lines)


class TestRemoteMode:
    def test_server_flag_round_trips_through_http(self, runner, monkeypatch):
        client = TestClient(app)

        def fake_post(server, command, payload):
            response = client.post(f"/v1/{command}", json=payload)
            assert response.status_code == 200
            return response.json()

        monkeypatch.setattr(cli_module, "_post", fake_post)
        local = invoke(runner, ["table", "--table", "2", "--format", "csv"])
        remote = invoke(
            runner, ["table", "--table", "2", "--format", "csv", "--server", "http://svc"]
        )
        assert remote.exit_code == 0
        assert remote.stdout == local.stdout

    def test_server_domain_error_maps_to_exit_2(self, runner, monkeypatch):
        client = TestClient(app)

        def fake_post(server, command, payload):
            response = client.post(f"/v1/{command}", json=payload)
            assert response.status_code == 422
            detail = response.json()["detail"]
            from landau.errors import DomainError

            raise DomainError(detail["message"])

        monkeypatch.setattr(cli_module, "_post", fake_post)
        result = runner.invoke(
            main, ["sharpness", "--class", "p0h", "--M", "1", "--r", "0.1", "--server", "http://svc"]
        )
        assert result.exit_code == 2
