"""Sharp radii pairs (rho, R) per class.

rho is the univalence radius (the unique root of the univalence margin in
(0,1)); R is the radius of the schlicht disc guaranteed inside the image
of the disc of radius rho.  Closed forms are used where they exist (p0h
always; the alpha = 0 closed forms for w0h and gkh) and the bisection
route is used otherwise; whichever route answers, the other is evaluated
as a residual cross-check and a disagreement beyond 1e-8 fails loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import BracketError, BudgetError, DomainError
from .series import (
    GKH,
    P0H,
    SUM_START_FAITHFUL,
    W0H,
    ClassSpec,
    coefficient_majorant,
    univalence_margin,
)
from .specfun import DEFAULT_TOLERANCES, ToleranceConfig

__all__ = [
    "METHOD_CLOSED_FORM",
    "METHOD_ROOT_SOLVE",
    "RadiiResult",
    "TableRow",
    "p0h_univalence_radius",
    "p0h_schlicht_radius",
    "closed_form_radius",
    "solve_univalence_radius",
    "schlicht_radius",
    "radii_table",
]

METHOD_CLOSED_FORM = "closed_form"
METHOD_ROOT_SOLVE = "root_solve"

# Residual tolerance for accepting a root, bracket-width floor, and the
# upper bracket cap that keeps evaluations away from the r = 1 singularity.
_RESIDUAL_TOL = 1e-10
_BRACKET_WIDTH_TOL = 1e-14
_BRACKET_CAP = 1.0 - 1e-9
# Closed-form and root routes must agree to this, else something is wrong
# with one of them and we refuse to answer.
_ROUTE_AGREEMENT_TOL = 1e-8


@dataclass(frozen=True)
class RadiiResult:
    """Computed (rho, R) pair with solve provenance.

    residual is |J(rho)| and is evaluated for closed forms too; bracket is
    the final enclosing interval ((rho, rho) for closed forms).
    """

    spec: ClassSpec
    rho: float
    R: float
    residual: float
    bracket: tuple[float, float]
    iterations: int
    method: str


@dataclass(frozen=True)
class TableRow:
    """One radii-table row; reference columns are filled when the row's
    parameters appear in a bundled reference table."""

    spec: ClassSpec
    rho: float
    R: float
    residual: float
    method: str
    reference_rho: float | None = None
    reference_R: float | None = None
    flag: str = ""


def _require_M(M: float) -> None:
    if not (M > 0.0 and math.isfinite(M)):
        raise DomainError(f"M must be a positive finite real, got {M}")


def p0h_univalence_radius(M: float) -> float:
    """Closed-form univalence radius 1 - exp(-pi/(8 M^2)) for p0h."""
    _require_M(M)
    return -math.expm1(-math.pi / (8.0 * M * M))


def p0h_schlicht_radius(M: float) -> float:
    """Closed-form schlicht-disc radius for p0h:

    pi/(4M) + 2M - (pi/(2M) + 2M) * exp(-pi/(8 M^2)).

    Equals covering_profile at the univalence radius.  Note the bundled
    reference table 1 lists different R values; the formula wins and the
    table cells are flagged (see the tables module).
    """
    _require_M(M)
    e = math.exp(-math.pi / (8.0 * M * M))
    return math.pi / (4.0 * M) + 2.0 * M - (math.pi / (2.0 * M) + 2.0 * M) * e


def closed_form_radius(spec: ClassSpec) -> float | None:
    """Closed-form univalence radius for the alpha = 0 cases, where stated.

    Available for w0h with alpha = 0 (pi/(8M + pi)) and gkh with alpha = 0
    (1 - sqrt(8M/(pi + 8M)), the simplified surd form), provided the gkh
    summation actually starts at n = 2.  Returns None otherwise.
    """
    if spec.kind == W0H and spec.alpha == 0.0:
        return math.pi / (8.0 * spec.M + math.pi)
    if spec.kind == GKH and spec.alpha == 0.0:
        if spec.sum_start != SUM_START_FAITHFUL and spec.k > 1:
            return None
        return 1.0 - math.sqrt(8.0 * spec.M / (math.pi + 8.0 * spec.M))
    return None


def schlicht_radius(spec: ClassSpec, rho: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Schlicht-disc radius at a given univalence radius rho in (0,1).

    w0h/gkh: pi/(4M) * rho - majorant(rho).  p0h composes the majorant
    with the opposite sign, pi/(4M) * rho + majorant(rho): that is the
    composition whose value at the univalence radius reproduces the
    closed form p0h_schlicht_radius (the minus composition is the trace
    of the extremal map; see the extremal module).
    """
    if not (0.0 < rho < 1.0):
        raise DomainError(f"schlicht_radius requires 0 < rho < 1, got rho={rho}")
    base = math.pi / (4.0 * spec.M) * rho
    S = coefficient_majorant(spec, rho, cfg)
    if spec.kind == P0H:
        return base + S
    return base - S


def solve_univalence_radius(spec: ClassSpec, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> RadiiResult:
    """Univalence radius rho and schlicht radius R for one class.

    p0h returns its closed form (method "closed_form") with the residual
    still evaluated.  Other classes bisect the margin: the upper bracket
    end expands geometrically from 0.5 toward the 1 - 1e-9 cap while the
    margin stays positive, then plain bisection refines until the residual
    is <= 1e-10 or the bracket is narrower than 1e-14.  When an alpha = 0
    closed form exists the root must match it to 1e-8.
    """
    margin0 = univalence_margin(spec, 0.0, cfg)
    if margin0 <= 0.0:
        raise BracketError(
            f"margin at r=0 is {margin0} <= 0 for {spec.describe()}; no root bracket exists"
        )

    if spec.kind == P0H:
        rho = p0h_univalence_radius(spec.M)
        residual = abs(univalence_margin(spec, rho, cfg))
        if residual > _ROUTE_AGREEMENT_TOL:
            raise BracketError(
                f"closed-form radius for {spec.describe()} leaves margin residual {residual}"
            )
        return RadiiResult(
            spec=spec,
            rho=rho,
            R=schlicht_radius(spec, rho, cfg),
            residual=residual,
            bracket=(rho, rho),
            iterations=0,
            method=METHOD_CLOSED_FORM,
        )

    lo, f_lo = 0.0, margin0
    hi = 0.5
    iterations = 0
    f_hi = univalence_margin(spec, hi, cfg)
    while f_hi > 0.0:
        if hi >= _BRACKET_CAP:
            raise BracketError(
                f"margin still positive at the bracket cap {_BRACKET_CAP} for {spec.describe()}"
            )
        lo, f_lo = hi, f_hi
        hi = min(_BRACKET_CAP, 1.0 - 0.25 * (1.0 - hi))
        f_hi = univalence_margin(spec, hi, cfg)
        iterations += 1
        if iterations >= cfg.max_iters:
            raise BudgetError(f"bracket expansion exceeded max_iters for {spec.describe()}")

    while True:
        mid = 0.5 * (lo + hi)
        f_mid = univalence_margin(spec, mid, cfg)
        iterations += 1
        rho, residual = mid, abs(f_mid)
        if residual <= _RESIDUAL_TOL or (hi - lo) <= _BRACKET_WIDTH_TOL:
            break
        if f_mid > 0.0:
            lo = mid
        else:
            hi = mid
        if iterations >= cfg.max_iters:
            raise BudgetError(
                f"bisection exceeded max_iters={cfg.max_iters} for {spec.describe()} "
                f"(bracket width {hi - lo}, residual {residual})"
            )

    closed = closed_form_radius(spec)
    if closed is not None and abs(rho - closed) > _ROUTE_AGREEMENT_TOL:
        raise BracketError(
            f"root {rho} and closed form {closed} disagree beyond "
            f"{_ROUTE_AGREEMENT_TOL} for {spec.describe()}"
        )

    return RadiiResult(
        spec=spec,
        rho=rho,
        R=schlicht_radius(spec, rho, cfg),
        residual=residual,
        bracket=(lo, hi),
        iterations=iterations,
        method=METHOD_ROOT_SOLVE,
    )


def radii_table(grid: list[ClassSpec], cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> list[TableRow]:
    """One TableRow per spec in the grid; the grid must be nonempty.

    Rows are computed independently and deterministically in grid order.
    A per-row failure is re-raised with the row identified.
    """
    if not grid:
        raise DomainError("radii_table requires a nonempty grid")
    rows: list[TableRow] = []
    for index, spec in enumerate(grid):
        try:
            result = solve_univalence_radius(spec, cfg)
        except (DomainError, BudgetError, BracketError) as exc:
            raise type(exc)(f"table row {index} ({spec.describe()}): {exc}") from exc
        rows.append(
            TableRow(
                spec=spec,
                rho=result.rho,
                R=result.R,
                residual=result.residual,
                method=result.method,
            )
        )
    return rows


def annotate_row(row: TableRow, reference_rho: float, reference_R: float, flag: str) -> TableRow:
    """Return a copy of the row carrying reference values and a flag."""
    return replace(row, reference_rho=reference_rho, reference_R=reference_R, flag=flag)
