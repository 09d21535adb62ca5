"""Command handlers shared by the HTTP service and the CLI.

Each handler takes a validated request model and returns a fully populated
envelope; the CLI calls them in-process, the FastAPI routes delegate to
them, so both front ends produce identical payloads.
"""

from __future__ import annotations

import itertools
import math

from . import tables
from .errors import DomainError
from .extremal import ProfileSample, extremal_map, extremal_profile, sharpness_witness
from .models import (
    AuditEnvelope,
    AuditPayload,
    AuditRequest,
    IdentityReportPayload,
    PlotdataEnvelope,
    PlotdataPayload,
    PlotdataRequest,
    RadiiEnvelope,
    RadiiPayload,
    RadiiRequest,
    ReferenceCellPayload,
    SharpnessEnvelope,
    SharpnessRequest,
    SpecfunEnvelope,
    SpecfunPayload,
    SpecfunRequest,
    TableEnvelope,
    TablePayload,
    TableRequest,
    TableRowPayload,
    WitnessPayload,
)
from .oracle import audit_identities
from .radii import TableRow, radii_table, solve_univalence_radius
from .series import GKH, SUM_START_FAITHFUL, ClassSpec, univalence_margin
from .specfun import dilog, lerch_phi

__all__ = [
    "handle_radii",
    "handle_table",
    "handle_sharpness",
    "handle_plotdata",
    "handle_specfun",
    "handle_audit",
    "parse_grid",
    "HANDLERS",
]

# Profiles and margins are sampled on [0, PLOT_X_MAX]: far enough right to
# show every peak on the supported parameter ranges, far enough from 1 to
# keep the series cheap.
PLOT_X_MAX = 0.95

_GKH_FAITHFUL_NOTE = "gkh faithful summation starts at n=2: rho and R do not depend on k"


def _gkh_notes(spec: ClassSpec) -> list[str]:
    if spec.kind == GKH and spec.sum_start == SUM_START_FAITHFUL:
        return [_GKH_FAITHFUL_NOTE]
    return []


def handle_radii(req: RadiiRequest) -> RadiiEnvelope:
    """Compute the (rho, R) pair for one class."""
    spec = req.to_spec()
    result = solve_univalence_radius(spec, req.tolerances())
    warnings = tables.row_warnings(spec, result.rho, result.R) + _gkh_notes(spec)
    return RadiiEnvelope(
        command="radii",
        inputs=req.model_dump(by_alias=True),
        results=RadiiPayload(
            rho=result.rho,
            R=result.R,
            residual=result.residual,
            bracket=result.bracket,
            iterations=result.iterations,
            method=result.method,
        ),
        warnings=warnings,
    )


def _parse_grid_values(key: str, text: str) -> list[float]:
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) == 3:
            start, stop, step = (float(p) for p in parts)
            if step <= 0 or stop < start:
                raise ValueError
            count = int(math.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + i * step, 12) for i in range(count)]
    except ValueError:
        pass
    raise DomainError(f"bad grid range for {key!r}: {text!r} (expected 'v' or 'start:stop:step')")


def parse_grid(text: str) -> list[ClassSpec]:
    """Parse a custom grid like "w0h;alpha=0:1:0.25;M=1" into class specs.

    The first token is the class kind; the rest are key=value or
    key=start:stop:step parts (keys: M, alpha, k, sum_start).  Ranged keys
    expand inclusively and combine as a cartesian product in the order the
    keys appear.
    """
    parts = [p.strip() for p in text.split(";") if p.strip()]
    if not parts:
        raise DomainError("empty grid expression")
    kind = parts[0].lower()
    axes: list[tuple[str, list]] = []
    sum_start = SUM_START_FAITHFUL
    for part in parts[1:]:
        if "=" not in part:
            raise DomainError(f"bad grid part {part!r} (expected key=value)")
        key, _, raw = part.partition("=")
        key = key.strip()
        raw = raw.strip()
        if key == "sum_start":
            sum_start = raw
            continue
        if key not in ("M", "alpha", "k"):
            raise DomainError(f"unknown grid key {key!r} (expected M, alpha, k or sum_start)")
        values = _parse_grid_values(key, raw)
        if key == "k":
            int_values = []
            for v in values:
                if v != int(v):
                    raise DomainError(f"k values must be integers, got {v}")
                int_values.append(int(v))
            axes.append((key, int_values))
        else:
            axes.append((key, values))
    if not axes:
        raise DomainError("grid needs at least one of M, alpha or k")
    keys = [key for key, _ in axes]
    if len(set(keys)) != len(keys):
        raise DomainError("grid keys must not repeat")

    specs: list[ClassSpec] = []
    for combo in itertools.product(*(values for _, values in axes)):
        kwargs = dict(zip(keys, combo))
        if "M" not in kwargs:
            raise DomainError("grid must fix or range M")
        if kind == GKH:
            kwargs["sum_start"] = sum_start
        specs.append(ClassSpec(kind=kind, **kwargs))
    return specs


def _row_payload(row: TableRow) -> TableRowPayload:
    spec = row.spec
    return TableRowPayload(
        kind=spec.kind,
        M=spec.M,
        alpha=spec.alpha,
        k=spec.k,
        sum_start=spec.sum_start,
        rho=row.rho,
        R=row.R,
        residual=row.residual,
        method=row.method,
        reference_rho=row.reference_rho,
        reference_R=row.reference_R,
        flag=row.flag,
    )


def handle_table(req: TableRequest) -> TableEnvelope:
    """Reproduce a bundled reference table or compute a custom grid.

    Custom-grid rows whose parameters happen to match a bundled table are
    annotated against it too.
    """
    cfg = req.tolerances()
    grid = tables.table_grid(req.table) if req.table is not None else parse_grid(req.grid)
    rows = radii_table(grid, cfg)
    annotated, warnings = tables.annotate_rows(rows)
    if any(spec.kind == GKH and spec.sum_start == SUM_START_FAITHFUL for spec in grid):
        warnings = warnings + [_GKH_FAITHFUL_NOTE]
    return TableEnvelope(
        command="table",
        inputs=req.model_dump(by_alias=True),
        results=TablePayload(rows=[_row_payload(row) for row in annotated]),
        warnings=warnings,
    )


def handle_sharpness(req: SharpnessRequest) -> SharpnessEnvelope:
    """Construct the non-injectivity witness pair for r beyond rho."""
    spec = req.to_spec()
    cfg = req.tolerances()
    result = solve_univalence_radius(spec, cfg)
    witness = sharpness_witness(spec, req.r, cfg)
    map_gap = abs(extremal_map(spec, complex(witness.x1), cfg) - extremal_map(spec, complex(witness.x2), cfg))
    return SharpnessEnvelope(
        command="sharpness",
        inputs=req.model_dump(by_alias=True),
        results=WitnessPayload(
            rho=result.rho,
            r=witness.r,
            x1=witness.x1,
            x2=witness.x2,
            gap=witness.gap,
            map_gap=map_gap,
        ),
        warnings=_gkh_notes(spec),
    )


def handle_plotdata(req: PlotdataRequest) -> PlotdataEnvelope:
    """Emit figure-reproduction data: profile/margin samples or disk radii."""
    spec = req.to_spec()
    cfg = req.tolerances()
    warnings = _gkh_notes(spec)
    if req.what == "disks":
        result = solve_univalence_radius(spec, cfg)
        payload = PlotdataPayload(what="disks", columns=["rho", "R"], rows=[[result.rho, result.R]])
        return PlotdataEnvelope(
            command="plotdata", inputs=req.model_dump(by_alias=True), results=payload, warnings=warnings
        )
    step = PLOT_X_MAX / (req.points - 1)
    xs = [i * step for i in range(req.points)]
    if req.what == "profile":
        samples = [ProfileSample(x, extremal_profile(spec, x, cfg)) for x in xs]
        rows = [[s.x, s.value] for s in samples]
        columns = ["x", "value"]
    else:
        rows = [[x, univalence_margin(spec, x, cfg)] for x in xs]
        columns = ["r", "margin"]
    return PlotdataEnvelope(
        command="plotdata",
        inputs=req.model_dump(by_alias=True),
        results=PlotdataPayload(what=req.what, columns=columns, rows=rows),
        warnings=warnings,
    )


def handle_specfun(req: SpecfunRequest) -> SpecfunEnvelope:
    """Evaluate one special function with its truncation bound."""
    cfg = req.tolerances()
    if req.fn == "lerch":
        result = lerch_phi(req.z, req.s, req.a, cfg)
    else:
        result = dilog(req.z, cfg)
    return SpecfunEnvelope(
        command="specfun",
        inputs=req.model_dump(by_alias=True),
        results=SpecfunPayload(
            value=result.value, tail_bound=result.tail_bound, terms_used=result.terms_used
        ),
    )


def handle_audit(req: AuditRequest) -> AuditEnvelope:
    """Run the identity audit and the reference-table comparison."""
    cfg = req.tolerances()
    identity_reports = [
        IdentityReportPayload(
            name=r.name, lhs=r.lhs, rhs=r.rhs, abs_diff=r.abs_diff, tol=r.tol, passed=r.passed
        )
        for r in audit_identities(cfg)
    ]
    rows_by_table = {tid: radii_table(tables.table_grid(tid), cfg) for tid in tables.TABLE_IDS}
    reference_reports = [
        ReferenceCellPayload(
            table=c.table,
            cell=c.cell,
            computed=c.computed,
            reference=c.reference,
            abs_diff=c.abs_diff,
            matches=c.matches,
        )
        for c in tables.reference_cell_reports(rows_by_table)
    ]
    identities_passed = all(r.passed for r in identity_reports)
    warnings = []
    mismatched = sum(1 for c in reference_reports if not c.matches)
    if mismatched:
        warnings.append(
            f"{mismatched} reference table cells differ from formula values "
            f"(expected: the bundled tables are internally inconsistent; formulas win)"
        )
    if not identities_passed:
        warnings.append("identity audit FAILED; see identity_reports")
    return AuditEnvelope(
        command="audit",
        inputs=req.model_dump(by_alias=True),
        results=AuditPayload(
            identities_passed=identities_passed,
            identity_reports=identity_reports,
            reference_reports=reference_reports,
        ),
        warnings=warnings,
    )


HANDLERS = {
    "radii": (RadiiRequest, handle_radii),
    "table": (TableRequest, handle_table),
    "sharpness": (SharpnessRequest, handle_sharpness),
    "plotdata": (PlotdataRequest, handle_plotdata),
    "specfun": (SpecfunRequest, handle_specfun),
    "audit": (AuditRequest, handle_audit),
}
