"""Pydantic request/response models shared by the HTTP service and the CLI.

Every command returns a single OutputEnvelope-style object: schema_version,
the command name, an echo of the parsed inputs, a command-specific results
payload, and a list of warnings (reference-table discrepancy notices and
similar).  JSON output carries full double precision; rounding happens only
in the CLI's CSV rendering.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .series import ClassSpec
from .specfun import ToleranceConfig

SCHEMA_VERSION = "1.0"

_DEFAULT_TOL = 1e-12


class _StrictModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True, extra="forbid")


class ClassRequest(_StrictModel):
    """Class-selection parameters common to radii/sharpness/plotdata."""

    kind: Literal["p0h", "w0h", "gkh"] = Field(alias="class")
    M: float
    alpha: float | None = None
    k: int | None = None
    sum_start: Literal["faithful", "class"] = "faithful"
    tol: float = _DEFAULT_TOL

    def to_spec(self) -> ClassSpec:
        """Build the core ClassSpec; raises DomainError on bad parameters
        (including sum_start="class" outside gkh - never ignored)."""
        return ClassSpec(
            kind=self.kind, M=self.M, alpha=self.alpha, k=self.k, sum_start=self.sum_start
        )

    def tolerances(self) -> ToleranceConfig:
        return ToleranceConfig(abs_tol=self.tol, rel_tol=self.tol)


class RadiiRequest(ClassRequest):
    pass


class SharpnessRequest(ClassRequest):
    r: float


class PlotdataRequest(ClassRequest):
    what: Literal["profile", "margin", "disks"] = "profile"
    points: int = Field(default=200, ge=2, le=100_000)


class TableRequest(_StrictModel):
    table: int | None = Field(default=None, ge=1, le=3)
    grid: str | None = None
    tol: float = _DEFAULT_TOL

    @model_validator(mode="after")
    def _exactly_one_source(self) -> "TableRequest":
        if (self.table is None) == (self.grid is None):
            raise ValueError("exactly one of 'table' and 'grid' must be given")
        return self

    def tolerances(self) -> ToleranceConfig:
        return ToleranceConfig(abs_tol=self.tol, rel_tol=self.tol)


class SpecfunRequest(_StrictModel):
    fn: Literal["lerch", "dilog"]
    z: float
    s: int = 1
    a: float = 1.0
    tol: float = _DEFAULT_TOL

    def tolerances(self) -> ToleranceConfig:
        return ToleranceConfig(abs_tol=self.tol, rel_tol=self.tol)


class AuditRequest(_StrictModel):
    tol: float = _DEFAULT_TOL

    def tolerances(self) -> ToleranceConfig:
        return ToleranceConfig(abs_tol=self.tol, rel_tol=self.tol)


class RadiiPayload(_StrictModel):
    rho: float
    R: float
    residual: float
    bracket: tuple[float, float]
    iterations: int
    method: str


class TableRowPayload(_StrictModel):
    kind: str = Field(serialization_alias="class")
    M: float
    alpha: float | None = None
    k: int | None = None
    sum_start: str = "faithful"
    rho: float
    R: float
    residual: float
    method: str
    reference_rho: float | None = None
    reference_R: float | None = None
    flag: str = ""


class TablePayload(_StrictModel):
    rows: list[TableRowPayload]


class WitnessPayload(_StrictModel):
    rho: float
    r: float
    x1: float
    x2: float
    gap: float
    map_gap: float


class PlotdataPayload(_StrictModel):
    what: str
    columns: list[str]
    rows: list[list[float]]


class SpecfunPayload(_StrictModel):
    value: float
    tail_bound: float
    terms_used: int


class IdentityReportPayload(_StrictModel):
    name: str
    lhs: float
    rhs: float
    abs_diff: float
    tol: float
    passed: bool


class ReferenceCellPayload(_StrictModel):
    table: int
    cell: str
    computed: float
    reference: float
    abs_diff: float
    matches: bool


class AuditPayload(_StrictModel):
    identities_passed: bool
    identity_reports: list[IdentityReportPayload]
    reference_reports: list[ReferenceCellPayload]


class Envelope(_StrictModel):
    schema_version: str = SCHEMA_VERSION
    command: str
    inputs: dict[str, Any]
    results: Any
    warnings: list[str] = Field(default_factory=list)


class RadiiEnvelope(Envelope):
    results: RadiiPayload


class TableEnvelope(Envelope):
    results: TablePayload


class SharpnessEnvelope(Envelope):
    results: WitnessPayload


class PlotdataEnvelope(Envelope):
    results: PlotdataPayload


class SpecfunEnvelope(Envelope):
    results: SpecfunPayload


class AuditEnvelope(Envelope):
    results: AuditPayload
