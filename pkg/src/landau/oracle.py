"""Independent brute-force verification layer.

Everything here re-derives values by direct summation of the defining
series, deliberately sharing no summation code with specfun or series:
a bug in a closed form (or in the tuned summation engines) cannot
validate itself.  audit_identities runs the full identity grid and
returns one report per (identity, point).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetError, DomainError
from .radii import closed_form_radius, p0h_schlicht_radius, p0h_univalence_radius
from .series import (
    P0H,
    W0H,
    ClassSpec,
    CoeffRule,
    coefficient_majorant,
    partial_fraction_split,
    univalence_margin,
)
from .specfun import DEFAULT_TOLERANCES, SumResult, ToleranceConfig, dilog, lerch_phi

__all__ = [
    "WEIGHT_DERIVATIVE",
    "WEIGHT_POWER",
    "OracleReport",
    "reference_sum",
    "schwarz_lower_bound",
    "audit_identities",
]

WEIGHT_DERIVATIVE = "n*r^(n-1)"
WEIGHT_POWER = "r^n"

_AUDIT_TOL = 1e-10


@dataclass(frozen=True)
class OracleReport:
    """Outcome of one identity check: passed iff abs_diff <= tol."""

    name: str
    lhs: float
    rhs: float
    abs_diff: float
    tol: float
    passed: bool

    @classmethod
    def build(cls, name: str, lhs: float, rhs: float, tol: float = _AUDIT_TOL) -> "OracleReport":
        diff = abs(lhs - rhs)
        return cls(name=name, lhs=lhs, rhs=rhs, abs_diff=diff, tol=tol, passed=diff <= tol)


def _bound(spec: ClassSpec, n: int) -> float:
    # Own copy of the coefficient formulas: the oracle must not lean on
    # the module it audits.
    if spec.kind == P0H:
        return 2.0 * spec.M / (n * (n - 1))
    if spec.kind == W0H:
        return 2.0 / (spec.alpha * n * n + (1.0 - spec.alpha) * n)
    return 2.0 / (1.0 + (n - 1) * spec.alpha)


def reference_sum(
    rule: CoeffRule,
    weight: str,
    r: float,
    target_tol: float,
    max_terms: int = DEFAULT_TOLERANCES.max_terms,
) -> SumResult:
    """Direct partial sum of coeff(n) * weight(n, r) with a geometric tail bound.

    weight is WEIGHT_DERIVATIVE (n * r^(n-1)) or WEIGHT_POWER (r^n).  The
    coefficient bounds are nonincreasing in n, so the term ratio is at most
    r for the power weight and r*(n+1)/n for the derivative weight; the tail
    after term n is bounded by term_n * q/(1-q) once q < 1.
    """
    if weight not in (WEIGHT_DERIVATIVE, WEIGHT_POWER):
        raise DomainError(f"unknown weight {weight!r}")
    if not (0.0 <= r < 1.0):
        raise DomainError(f"reference_sum requires 0 <= r < 1, got r={r}")
    if not (target_tol > 0.0):
        raise DomainError(f"target_tol must be > 0, got {target_tol}")

    start = rule.start_index
    derivative = weight == WEIGHT_DERIVATIVE
    power = r ** (start - 1) if derivative else r**start
    total = 0.0
    comp = 0.0
    for count, n in enumerate(range(start, start + max_terms), start=1):
        term = _bound(rule.spec, n) * (n * power if derivative else power)
        t = total + term
        if abs(total) >= term:
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        q = r * (n + 1) / n if derivative else r
        if q < 1.0:
            tail = term * q / (1.0 - q)
            if tail <= target_tol:
                return SumResult(total + comp, tail, count)
        power *= r
    raise BudgetError(
        f"reference_sum for {rule.spec.describe()} at r={r}: tail bound not "
        f"within {target_tol} after {max_terms} terms"
    )


def schwarz_lower_bound(M: float) -> float:
    """Universal lower bound pi/(4M) on the distortion at the origin.

    This is the linear term of every univalence margin.
    """
    if not (M > 0.0 and math.isfinite(M)):
        raise DomainError(f"M must be a positive finite real, got {M}")
    return math.pi / (4.0 * M)


def _z_grid() -> list[float]:
    return [round(0.05 * i, 2) for i in range(1, 20)]  # 0.05 .. 0.95


def _rho_grid() -> list[float]:
    return [round(0.1 * i, 1) for i in range(1, 10)]  # 0.1 .. 0.9


def audit_identities(cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> list[OracleReport]:
    """Run the full identity audit grid; report order is fixed by grid order.

    Covers: the Lerch/log identity Phi(z,1,1) = -ln(1-z)/z and its index
    shift, dilog vs z*Phi(z,2,1), partial-fraction reconstruction up to
    n = 10^4, closed-form majorants against direct summation for
    alpha in {0, 0.25, 0.5, 0.75, 1, 1.5} (alpha > 1 checks the tuned
    direct sum against this module's independent one), the alpha = 1
    closed-form margin against direct summation, and the p0h log forms.
    Failures are reported, not raised.
    """
    reports: list[OracleReport] = []
    oracle_tol = min(cfg.abs_tol, 1e-13)

    for z in _z_grid():
        lhs = lerch_phi(z, 1, 1.0, cfg).value
        rhs = -math.log1p(-z) / z
        reports.append(OracleReport.build(f"lerch-log-identity@z={z:.2f}", lhs, rhs))

        lhs = lerch_phi(z, 1, 2.0, cfg).value
        rhs = (-math.log1p(-z) - z) / (z * z)
        reports.append(OracleReport.build(f"lerch-shift-identity@z={z:.2f}", lhs, rhs))

        lhs = dilog(z, cfg).value
        rhs = z * lerch_phi(z, 2, 1.0, cfg).value
        reports.append(OracleReport.build(f"dilog-vs-lerch@z={z:.2f}", lhs, rhs))

    for alpha in [round(0.1 * i, 1) for i in range(10)]:  # 0.0 .. 0.9
        worst = 0.0
        for n in range(2, 10**4 + 1):
            first, second = partial_fraction_split(n, alpha)
            direct = 2.0 / (n * (alpha * n + 1.0 - alpha))
            worst = max(worst, abs((first - second) - direct))
        reports.append(
            OracleReport.build(f"split-reconstruction@alpha={alpha:.1f}", worst, 0.0, tol=1e-14)
        )

    for alpha in (0.0, 0.25, 0.5, 0.75, 1.0, 1.5):
        spec = ClassSpec.w0h(1.0, alpha)
        rule = CoeffRule.for_spec(spec)
        for rho in _rho_grid():
            lhs = coefficient_majorant(spec, rho, cfg)
            rhs = reference_sum(rule, WEIGHT_POWER, rho, oracle_tol).value
            reports.append(
                OracleReport.build(f"majorant-vs-direct@alpha={alpha:g},rho={rho:.1f}", lhs, rhs)
            )
            lhs = univalence_margin(spec, rho, cfg)
            direct = reference_sum(rule, WEIGHT_DERIVATIVE, rho, oracle_tol).value
            rhs = math.pi / 4.0 - direct
            reports.append(
                OracleReport.build(f"margin-vs-direct@alpha={alpha:g},rho={rho:.1f}", lhs, rhs)
            )

    # alpha = 1 margin at a second M: the closed form's only M dependence
    # is the linear term, but the special case deserves its own line.
    spec = ClassSpec.w0h(1.5, 1.0)
    rule = CoeffRule.for_spec(spec)
    for rho in _rho_grid():
        lhs = univalence_margin(spec, rho, cfg)
        direct = reference_sum(rule, WEIGHT_DERIVATIVE, rho, oracle_tol).value
        rhs = math.pi / 6.0 - direct
        reports.append(OracleReport.build(f"margin-alpha1-vs-direct@M=1.5,rho={rho:.1f}", lhs, rhs))

    spec = ClassSpec.p0h(1.0)
    rule = CoeffRule.for_spec(spec)
    for rho in _rho_grid():
        lhs = coefficient_majorant(spec, rho, cfg)
        rhs = reference_sum(rule, WEIGHT_POWER, rho, oracle_tol).value
        reports.append(OracleReport.build(f"p0h-majorant-vs-direct@rho={rho:.1f}", lhs, rhs))

        lhs = univalence_margin(spec, rho, cfg)
        direct = reference_sum(rule, WEIGHT_DERIVATIVE, rho, oracle_tol).value
        rhs = math.pi / 4.0 - direct
        reports.append(OracleReport.build(f"p0h-margin-vs-direct@rho={rho:.1f}", lhs, rhs))

    # gkh has no closed forms; check the tuned summation engine against
    # this module's independent one.
    for alpha in (0.0, 0.5, 0.8):
        spec = ClassSpec.gkh(1.0, alpha, 1)
        rule = CoeffRule.for_spec(spec)
        for rho in (0.1, 0.5, 0.9):
            lhs = coefficient_majorant(spec, rho, cfg)
            rhs = reference_sum(rule, WEIGHT_POWER, rho, oracle_tol).value
            reports.append(
                OracleReport.build(f"gkh-majorant-vs-direct@alpha={alpha:g},rho={rho:.1f}", lhs, rhs)
            )
            lhs = univalence_margin(spec, rho, cfg)
            direct = reference_sum(rule, WEIGHT_DERIVATIVE, rho, oracle_tol).value
            rhs = math.pi / 4.0 - direct
            reports.append(
                OracleReport.build(f"gkh-margin-vs-direct@alpha={alpha:g},rho={rho:.1f}", lhs, rhs)
            )

    # The closed-form radii must annihilate the margin.
    for M in (1.0, 1.5, 2.0):
        residual = univalence_margin(ClassSpec.p0h(M), p0h_univalence_radius(M), cfg)
        reports.append(OracleReport.build(f"p0h-closed-root@M={M:g}", residual, 0.0))
    for M in (1.0, 1.5):
        spec = ClassSpec.w0h(M, 0.0)
        residual = univalence_margin(spec, closed_form_radius(spec), cfg)
        reports.append(OracleReport.build(f"w0h-alpha0-root@M={M:g}", residual, 0.0))
    spec = ClassSpec.gkh(1.0, 0.0, 1)
    residual = univalence_margin(spec, closed_form_radius(spec), cfg)
    reports.append(OracleReport.build("gkh-alpha0-root@M=1", residual, 0.0))

    # Closed-form covering radii against the linear-term-minus/plus the
    # independently summed majorant (p0h composes with a plus sign).
    for M in (1.0, 1.5, 2.0):
        spec = ClassSpec.p0h(M)
        rho = p0h_univalence_radius(M)
        lhs = p0h_schlicht_radius(M)
        direct = reference_sum(CoeffRule.for_spec(spec), WEIGHT_POWER, rho, oracle_tol).value
        rhs = math.pi / (4.0 * M) * rho + direct
        reports.append(OracleReport.build(f"p0h-covering-vs-direct@M={M:g}", lhs, rhs))
    for M in (1.0, 1.5):
        spec = ClassSpec.w0h(M, 0.0)
        rho = closed_form_radius(spec)
        lhs = math.pi / (4.0 * M) + 2.0 * math.log(8.0 * M / (math.pi + 8.0 * M))
        direct = reference_sum(CoeffRule.for_spec(spec), WEIGHT_POWER, rho, oracle_tol).value
        rhs = math.pi / (4.0 * M) * rho - direct
        reports.append(OracleReport.build(f"w0h-alpha0-covering-vs-direct@M={M:g}", lhs, rhs))

    return reports
