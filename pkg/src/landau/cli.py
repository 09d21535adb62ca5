"""Command-line front end.

A thin client over the same request/response models the HTTP service uses:
by default each command runs the shared handler in-process; with --server
it POSTs the request to a running service instead and renders the returned
envelope identically.

Output: JSON envelopes (full double precision) or CSV (header row, LF line
endings, values rounded per --decimals) on stdout; warnings and errors on
stderr.  Exit codes: 0 success, 1 audit failure or transport error,
2 usage/domain error, 3 numeric budget/bracket error.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from typing import Any

import click
import httpx
import pydantic

from .errors import BracketError, BudgetError, DomainError
from .handlers import HANDLERS

_EXIT_USAGE = 2
_EXIT_BUDGET = 3

# Columns rendered in scientific notation in CSV mode: residuals and gaps
# are far below any sensible fixed-point rounding.
_SCI_COLUMNS = {"residual", "gap", "map_gap", "tail_bound", "abs_diff", "lhs", "rhs", "tol"}


def _warn(messages: list[str]) -> None:
    for message in messages:
        click.echo(f"warning: {message}", err=True)


def _fail(message: str, code: int) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _post(server: str, command: str, payload: dict) -> dict:
    """POST one command to a running service; kept separate for tests."""
    with httpx.Client(base_url=server, timeout=120.0) as client:
        response = client.post(f"/v1/{command}", json=payload)
    if response.status_code == 200:
        return response.json()
    try:
        detail = response.json().get("detail")
    except ValueError:
        detail = None
    if isinstance(detail, dict) and "kind" in detail:
        kind, message = detail.get("kind"), detail.get("message", "")
        if kind == "domain":
            raise DomainError(message)
        if kind == "budget":
            raise BudgetError(message)
        if kind == "bracket":
            raise BracketError(message)
    raise RuntimeError(f"service returned HTTP {response.status_code}: {response.text}")


def _execute(command: str, request: pydantic.BaseModel, server: str | None) -> dict:
    payload = request.model_dump(by_alias=True)
    if server:
        return _post(server, command, payload)
    _, handler = HANDLERS[command]
    return handler(request).model_dump(by_alias=True)


def _format_cell(column: str, value: Any, decimals: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if column in _SCI_COLUMNS:
            return f"{value:.{decimals}e}"
        return f"{value:.{decimals}f}"
    return str(value)


def _csv_table(columns: list[str], rows: list[list[Any]], decimals: int) -> str:
    out = io.StringIO()
    out.write(f"# decimals={decimals}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_format_cell(col, val, decimals) for col, val in zip(columns, row)])
    return out.getvalue()


def _param_cell(value: Any) -> str:
    return "" if value is None else str(value)


def _render_csv(command: str, envelope: dict, decimals: int) -> str:
    inputs = envelope["inputs"]
    results = envelope["results"]
    if command == "radii":
        columns = ["class", "M", "alpha", "k", "sum_start", "rho", "R", "residual", "method"]
        row = [
            inputs["class"],
            _param_cell(inputs["M"]),
            _param_cell(inputs["alpha"]),
            _param_cell(inputs["k"]),
            inputs["sum_start"],
            results["rho"],
            results["R"],
            results["residual"],
            results["method"],
        ]
        return _csv_table(columns, [row], decimals)
    if command == "table":
        columns = [
            "class", "M", "alpha", "k", "sum_start",
            "rho", "R", "reference_rho", "reference_R", "flag",
        ]
        rows = [
            [
                r["class"],
                _param_cell(r["M"]),
                _param_cell(r["alpha"]),
                _param_cell(r["k"]),
                r["sum_start"],
                r["rho"],
                r["R"],
                r["reference_rho"],
                r["reference_R"],
                r["flag"],
            ]
            for r in results["rows"]
        ]
        return _csv_table(columns, rows, decimals)
    if command == "sharpness":
        columns = ["class", "M", "alpha", "k", "rho", "r", "x1", "x2", "gap", "map_gap"]
        row = [
            inputs["class"],
            _param_cell(inputs["M"]),
            _param_cell(inputs["alpha"]),
            _param_cell(inputs["k"]),
            results["rho"],
            results["r"],
            results["x1"],
            results["x2"],
            results["gap"],
            results["map_gap"],
        ]
        return _csv_table(columns, [row], decimals)
    if command == "plotdata":
        return _csv_table(results["columns"], results["rows"], decimals)
    if command == "specfun":
        columns = ["fn", "z", "s", "a", "value", "tail_bound", "terms_used"]
        row = [
            inputs["fn"],
            _param_cell(inputs["z"]),
            _param_cell(inputs["s"]),
            _param_cell(inputs["a"]),
            results["value"],
            results["tail_bound"],
            results["terms_used"],
        ]
        return _csv_table(columns, [row], decimals)
    if command == "audit":
        columns = ["section", "name", "lhs", "rhs", "abs_diff", "tol", "status"]
        rows: list[list[Any]] = []
        for r in results["identity_reports"]:
            rows.append(
                ["identity", r["name"], r["lhs"], r["rhs"], r["abs_diff"], r["tol"],
                 "pass" if r["passed"] else "FAIL"]
            )
        for c in results["reference_reports"]:
            rows.append(
                ["reference", f"table{c['table']} {c['cell']}", c["computed"], c["reference"],
                 c["abs_diff"], 5e-4, "matches" if c["matches"] else "differs"]
            )
        return _csv_table(columns, rows, decimals)
    raise ValueError(f"no CSV renderer for command {command!r}")


def _emit(command: str, envelope: dict, fmt: str, decimals: int) -> None:
    _warn(envelope.get("warnings", []))
    if fmt == "json":
        click.echo(json.dumps(envelope, indent=2))
    else:
        click.echo(_render_csv(command, envelope, decimals), nl=False)


def _run(command: str, fmt: str, decimals: int, server: str | None, **params: Any) -> dict:
    request_model, _ = HANDLERS[command]
    try:
        request = request_model(**params)
    except pydantic.ValidationError as exc:
        first = exc.errors()[0]
        location = ".".join(str(p) for p in first["loc"]) or "request"
        _fail(f"invalid {location}: {first['msg']}", _EXIT_USAGE)
    try:
        envelope = _execute(command, request, server)
    except DomainError as exc:
        _fail(str(exc), _EXIT_USAGE)
    except (BudgetError, BracketError) as exc:
        _fail(str(exc), _EXIT_BUDGET)
    except (httpx.HTTPError, RuntimeError) as exc:
        _fail(str(exc), 1)
    _emit(command, envelope, fmt, decimals)
    return envelope


def _class_options(require_class: bool = True):
    def wrap(f):
        f = click.option("--sum-start", "sum_start", type=click.Choice(["faithful", "class"]),
                         default="faithful", show_default=True,
                         help="gkh only: start the coefficient sums at n=2 or n=k+1.")(f)
        f = click.option("--k", type=int, default=None, help="Index parameter (gkh only).")(f)
        f = click.option("--alpha", type=float, default=None, help="Class parameter (w0h, gkh).")(f)
        f = click.option("--M", "m_bound", type=float, required=True, help="Bound constant M > 0.")(f)
        f = click.option("--class", "kind", type=click.Choice(["p0h", "w0h", "gkh"]),
                         required=require_class, help="Harmonic-mapping class.")(f)
        return f
    return wrap


def _output_options(default_format: str = "json"):
    def wrap(f):
        f = click.option("--server", type=str, default=None,
                         help="Base URL of a running service; run remotely instead of in-process.")(f)
        f = click.option("--tol", type=float, default=1e-12, show_default=True,
                         help="Absolute series tolerance.")(f)
        f = click.option("--decimals", type=int, default=4, show_default=True,
                         help="Decimal places for CSV output.")(f)
        f = click.option("--format", "fmt", type=click.Choice(["json", "csv"]),
                         default=default_format, show_default=True)(f)
        return f
    return wrap


def _class_params(kind: str, m_bound: float, alpha: float | None, k: int | None,
                  sum_start: str, tol: float) -> dict:
    return {
        "kind": kind,
        "M": m_bound,
        "alpha": alpha,
        "k": k,
        "sum_start": sum_start,
        "tol": tol,
    }


@click.group()
@click.version_option(package_name="landau")
def main() -> None:
    """Sharp univalence and schlicht-disc radii for bounded harmonic mappings.

    Classes: p0h (bound constant M), w0h (parameter alpha >= 0) and gkh
    (alpha >= 0 plus index k >= 1).  Computed values come from the stated
    closed forms and root equations; bundled reference tables are compared
    against them and inconsistent cells are flagged, never reproduced.
    """


@main.command()
@_class_options()
@_output_options()
def radii(kind, m_bound, alpha, k, sum_start, fmt, decimals, tol, server) -> None:
    """Compute the univalence radius rho and schlicht-disc radius R."""
    _run("radii", fmt, decimals, server, **_class_params(kind, m_bound, alpha, k, sum_start, tol))


@main.command()
@click.option("--table", "table_id", type=click.IntRange(1, 3), default=None,
              help="Reproduce bundled reference table 1, 2 or 3.")
@click.option("--grid", type=str, default=None,
              help='Custom grid, e.g. "w0h;alpha=0:1:0.25;M=1".')
@_output_options()
def table(table_id, grid, fmt, decimals, tol, server) -> None:
    """Emit a radii table (bundled reference grid or custom grid)."""
    _run("table", fmt, decimals, server, table=table_id, grid=grid, tol=tol)


@main.command()
@_class_options()
@click.option("--r", "radius", type=float, required=True,
              help="Disc radius r with rho < r <= 1.")
@_output_options()
def sharpness(kind, m_bound, alpha, k, sum_start, radius, fmt, decimals, tol, server) -> None:
    """Construct a non-injectivity witness pair on the disc of radius r."""
    params = _class_params(kind, m_bound, alpha, k, sum_start, tol)
    _run("sharpness", fmt, decimals, server, r=radius, **params)


@main.command()
@_class_options()
@click.option("--what", type=click.Choice(["profile", "margin", "disks"]), default="profile",
              show_default=True, help="Which data series to emit.")
@click.option("--points", type=click.IntRange(2, 100_000), default=200, show_default=True,
              help="Number of sample points (profile/margin).")
@_output_options(default_format="csv")
def plotdata(kind, m_bound, alpha, k, sum_start, what, points, fmt, decimals, tol, server) -> None:
    """Emit figure-reproduction data: profile or margin samples, or rho/R."""
    params = _class_params(kind, m_bound, alpha, k, sum_start, tol)
    _run("plotdata", fmt, decimals, server, what=what, points=points, **params)


@main.command()
@click.option("--fn", type=click.Choice(["lerch", "dilog"]), required=True)
@click.option("--z", type=float, required=True, help="Series argument.")
@click.option("--s", "s_param", type=int, default=1, show_default=True, help="lerch exponent s >= 1.")
@click.option("--a", "a_param", type=float, default=1.0, show_default=True, help="lerch shift a > 0.")
@_output_options()
def specfun(fn, z, s_param, a_param, fmt, decimals, tol, server) -> None:
    """Evaluate the Lerch transcendent or the dilogarithm with a tail bound."""
    _run("specfun", fmt, decimals, server, fn=fn, z=z, s=s_param, a=a_param, tol=tol)


@main.command()
@_output_options()
def audit(fmt, decimals, tol, server) -> None:
    """Run the identity audit and reference-table comparison.

    Exits nonzero if any identity check fails; reference-table mismatches
    are expected findings, reported but not fatal.
    """
    envelope = _run("audit", fmt, decimals, server, tol=tol)
    if not envelope["results"]["identities_passed"]:
        sys.exit(1)


@main.command()
@click.option("--host", type=str, default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("landau.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
