"""Extremal maps, their real profiles, and non-injectivity witnesses.

Each class has an extremal map F(z) = pi/(4M) z - sum coeff(n) z^n whose
coefficients meet the class bounds with equality.  Its real-axis trace
(extremal_profile) rises from 0 to a peak at the univalence radius rho and
falls afterwards, so any disc of radius r > rho contains two real points
with equal map values: the sharpness witness.

covering_profile is the profile whose value at rho is the schlicht-disc
radius R.  For w0h/gkh it coincides with the extremal trace; for p0h the
covering bound composes the coefficient series with a plus sign (matching
the closed form p0h_schlicht_radius), which makes that profile strictly
increasing - the collision construction below therefore always works on
the minus-composed extremal trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetError, DomainError
from .radii import solve_univalence_radius
from .series import (
    P0H,
    ClassSpec,
    CoeffRule,
    coeff_bound,
    coefficient_majorant,
    majorant_at_one,
    univalence_margin,
)
from .specfun import DEFAULT_TOLERANCES, ToleranceConfig, log1m

__all__ = [
    "Witness",
    "ProfileSample",
    "covering_profile",
    "extremal_profile",
    "extremal_map",
    "profile_peak",
    "sharpness_witness",
]

# The witness pair must collide to this gap; bisection refines until the
# gap is under it (with margin) or the bracket hits width 1e-15.
_GAP_TOL = 1e-10
_WITNESS_WIDTH_TOL = 1e-15
_PEAK_WIDTH_TOL = 1e-12
# Bracket expansion for the profile's second zero never probes beyond
# this point; if the profile is still positive there the clip below is
# simply more conservative than the proof requires.
_SECOND_ZERO_CAP = 0.9999


@dataclass(frozen=True)
class Witness:
    """Non-injectivity certificate: x1 > rho > x2 with equal profile values.

    gap is |profile(x1) - profile(x2)| for the extremal trace; the map
    itself satisfies F(x1) = F(x2) up to the same gap.
    """

    r: float
    x1: float
    x2: float
    gap: float


@dataclass(frozen=True)
class ProfileSample:
    """One sampled point of a real profile."""

    x: float
    value: float


def covering_profile(spec: ClassSpec, x: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Profile whose value at the univalence radius is the covering radius R.

    pi/(4M) x - majorant(x) for w0h/gkh; for p0h the covering composition
    is pi/(4M) x + 2M(x + (1-x) ln(1-x)) (the plus-composed series).
    """
    if not (0.0 <= x < 1.0):
        raise DomainError(f"covering_profile requires 0 <= x < 1, got x={x}")
    base = math.pi / (4.0 * spec.M) * x
    if spec.kind == P0H:
        return base + 2.0 * spec.M * (x + (1.0 - x) * log1m(x))
    return base - coefficient_majorant(spec, x, cfg)


def extremal_profile(spec: ClassSpec, x: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Real-axis trace pi/(4M) x - majorant(x) of the extremal map.

    Unimodal on [0,1): increasing up to the univalence radius, decreasing
    after (its derivative is the univalence margin).
    """
    if not (0.0 <= x < 1.0):
        raise DomainError(f"extremal_profile requires 0 <= x < 1, got x={x}")
    return math.pi / (4.0 * spec.M) * x - coefficient_majorant(spec, x, cfg)


def extremal_map(spec: ClassSpec, z: complex, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> complex:
    """Extremal map F(z) = pi/(4M) z - sum coeff(n) z^n for |z| < 1.

    Evaluated by direct term summation (exactly-rounded via fsum on the
    real and imaginary parts) with a geometric tail bound <= cfg.abs_tol
    on |z|; no analytic continuation is attempted.
    """
    z = complex(z)
    radius = abs(z)
    if radius >= 1.0:
        raise DomainError(f"extremal_map requires |z| < 1, got |z|={radius}")
    head = math.pi / (4.0 * spec.M) * z
    if radius == 0.0:
        return head
    rule = CoeffRule.for_spec(spec)
    geom = radius / (1.0 - radius)
    # Quarter budget so map-vs-profile comparisons meet cfg.abs_tol with
    # both routes' truncations combined.
    tol = 0.25 * cfg.abs_tol
    reals: list[float] = []
    imags: list[float] = []
    power = z**rule.start_index
    abs_power = radius**rule.start_index
    for n in range(rule.start_index, rule.start_index + cfg.max_terms):
        bound = coeff_bound(rule, n)
        term = bound * power
        reals.append(term.real)
        imags.append(term.imag)
        if bound * abs_power * geom <= tol:
            return head - complex(math.fsum(reals), math.fsum(imags))
        power *= z
        abs_power *= radius
    raise BudgetError(
        f"extremal_map series for {spec.describe()} at |z|={radius}: tail bound "
        f"not within {cfg.abs_tol} after {cfg.max_terms} terms"
    )


def profile_peak(spec: ClassSpec, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Argmax of the extremal trace on [0,1), located by bisecting its
    derivative (the univalence margin) to a bracket width of 1e-12.

    Coincides with the solved univalence radius to well below 1e-8.
    """
    lo = 0.0
    f_lo = univalence_margin(spec, lo, cfg)
    if f_lo <= 0.0:
        raise BudgetError(f"profile derivative not positive at 0 for {spec.describe()}")
    hi = 0.5
    iterations = 0
    f_hi = univalence_margin(spec, hi, cfg)
    while f_hi > 0.0:
        lo = hi
        hi = min(1.0 - 1e-9, 1.0 - 0.25 * (1.0 - hi))
        f_hi = univalence_margin(spec, hi, cfg)
        iterations += 1
        if iterations >= cfg.max_iters:
            raise BudgetError(f"peak bracket expansion exceeded max_iters for {spec.describe()}")
    while hi - lo > _PEAK_WIDTH_TOL:
        mid = 0.5 * (lo + hi)
        if univalence_margin(spec, mid, cfg) > 0.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
        if iterations >= cfg.max_iters:
            raise BudgetError(
                f"peak bisection exceeded max_iters={cfg.max_iters} for {spec.describe()}"
            )
    return 0.5 * (lo + hi)


def _second_zero(spec: ClassSpec, rho: float, cfg: ToleranceConfig) -> float:
    """Zero of the extremal trace beyond its peak, or a lower bound on it.

    Expands an upper probe geometrically from rho toward _SECOND_ZERO_CAP
    until the trace goes negative, then bisects.  If the trace is still
    positive at the cap, the cap is returned; clipping against it is
    merely more conservative than clipping at the true zero.
    """
    lo = rho
    hi = rho + 0.5 * (1.0 - rho)
    iterations = 0
    while True:
        if hi >= _SECOND_ZERO_CAP:
            hi = _SECOND_ZERO_CAP
            if extremal_profile(spec, hi, cfg) > 0.0:
                return _SECOND_ZERO_CAP
            break
        if extremal_profile(spec, hi, cfg) <= 0.0:
            break
        lo = hi
        hi = 1.0 - 0.5 * (1.0 - hi)
        iterations += 1
        if iterations >= cfg.max_iters:
            raise BudgetError(f"second-zero expansion exceeded max_iters for {spec.describe()}")
    while hi - lo > 1e-9:
        mid = 0.5 * (lo + hi)
        if extremal_profile(spec, mid, cfg) > 0.0:
            lo = mid
        else:
            hi = mid
        iterations += 1
        if iterations >= cfg.max_iters:
            raise BudgetError(f"second-zero bisection exceeded max_iters for {spec.describe()}")
    return 0.5 * (lo + hi)


def sharpness_witness(spec: ClassSpec, r: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> Witness:
    """Witness pair certifying the extremal map is not injective on |z| < r.

    Requires rho < r <= 1 where rho is the univalence radius.  x1 is
    placed half way from rho toward r, additionally clipped to stay below
    the trace's second zero when the trace goes nonpositive toward 1 (the
    limit is evaluated analytically: pi/(4M) - majorant_at_one).  x2 is
    then the unique preimage of the trace value on the rising branch,
    found by bisection; the profile gap is driven below 1e-10.
    """
    result = solve_univalence_radius(spec, cfg)
    rho = result.rho
    if r <= rho:
        raise DomainError(
            f"no witness exists for r={r} <= rho={rho:.12g}: "
            f"{spec.describe()} is univalent on that disc"
        )
    if r > 1.0:
        raise DomainError(f"witness radius must satisfy r <= 1, got r={r}")

    limit = math.pi / (4.0 * spec.M) - majorant_at_one(spec)
    epsilon = 0.5 * (r - rho)
    if limit <= 0.0:
        second = _second_zero(spec, rho, cfg)
        epsilon = min(epsilon, 0.5 * (second - rho))
    x1 = rho + epsilon
    target = extremal_profile(spec, x1, cfg)
    peak_value = extremal_profile(spec, rho, cfg)
    if not (0.0 < target < peak_value):
        raise BudgetError(
            f"witness placement failed for {spec.describe()}: trace({x1}) = {target} "
            f"not inside (0, {peak_value})"
        )

    lo, hi = 0.0, rho  # trace(0) = 0 < target < trace(rho)
    x2 = 0.5 * rho
    gap = math.inf
    iterations = 0
    while True:
        mid = 0.5 * (lo + hi)
        value = extremal_profile(spec, mid, cfg)
        iterations += 1
        if abs(value - target) < gap:
            x2, gap = mid, abs(value - target)
        if gap <= 0.5 * _GAP_TOL or (hi - lo) <= _WITNESS_WIDTH_TOL:
            break
        if value < target:
            lo = mid
        else:
            hi = mid
        if iterations >= cfg.max_iters:
            raise BudgetError(
                f"witness bisection exceeded max_iters={cfg.max_iters} for "
                f"{spec.describe()} (gap {gap})"
            )
    if gap > _GAP_TOL:
        raise BudgetError(
            f"witness gap {gap} did not reach {_GAP_TOL} for {spec.describe()}"
        )
    return Witness(r=r, x1=x1, x2=x2, gap=gap)
