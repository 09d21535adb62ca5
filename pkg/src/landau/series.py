"""Per-class coefficient bounds and the two derived series.

Three classes of normalized, bounded harmonic mappings are supported,
identified by short tags:

  p0h  -- bound 2M/(n(n-1)) on |a_n|+|b_n|, n >= 2
  w0h  -- bound 2/(alpha*n^2 + (1-alpha)*n)
  gkh  -- bound 2/(1 + (n-1)*alpha)

From the bounds two series are built: the univalence margin
J(r) = pi/(4M) - sum coeff(n) * n * r^(n-1), whose unique positive root is
the univalence radius, and the coefficient majorant S(rho) =
sum coeff(n) * rho^n, which enters the schlicht-disc radius.  Closed forms
(log, dilogarithm, Lerch) are used where they are well conditioned; gkh
and the remaining w0h regimes fall back to direct summation with a
geometric tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from scipy.special import digamma

from .errors import BudgetError, DomainError
from .specfun import DEFAULT_TOLERANCES, ToleranceConfig, dilog, lerch_phi, log1m

__all__ = [
    "P0H",
    "W0H",
    "GKH",
    "KINDS",
    "SUM_START_FAITHFUL",
    "SUM_START_CLASS",
    "ClassSpec",
    "CoeffRule",
    "coeff_bound",
    "univalence_margin",
    "coefficient_majorant",
    "majorant_at_one",
    "partial_fraction_split",
]

P0H = "p0h"
W0H = "w0h"
GKH = "gkh"
KINDS = (P0H, W0H, GKH)

# gkh coefficient bounds hold for n >= k+1; "faithful" sums from n = 2 as
# the radii equations are written, "class" starts at n = k+1.
SUM_START_FAITHFUL = "faithful"
SUM_START_CLASS = "class"

# Below this distance from alpha = 1 the Lerch/partial-fraction forms are
# singular; the dilogarithm branch takes over.
_ALPHA_ONE_WINDOW = 1e-8

# The majorant's Lerch composition carries a 2/(1-alpha) prefactor whose
# rounding amplification goes like eps/(1-alpha)^2: beyond this alpha the
# composition cannot hold 1e-12 and the defining series (to which the
# composition telescopes back) is summed directly instead.
_MAJORANT_LERCH_MAX_ALPHA = 0.9


@dataclass(frozen=True)
class ClassSpec:
    """Selects one harmonic-mapping class together with its parameters.

    M > 0 applies to every kind; alpha >= 0 to w0h and gkh; k >= 1 to gkh
    only.  sum_start is meaningful for gkh only and must be "faithful"
    elsewhere.
    """

    kind: str
    M: float
    alpha: float | None = None
    k: int | None = None
    sum_start: str = SUM_START_FAITHFUL

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise DomainError(f"unknown class kind {self.kind!r}; expected one of {KINDS}")
        if not (self.M > 0.0 and math.isfinite(self.M)):
            raise DomainError(f"M must be a positive finite real, got {self.M}")
        if self.sum_start not in (SUM_START_FAITHFUL, SUM_START_CLASS):
            raise DomainError(f"sum_start must be 'faithful' or 'class', got {self.sum_start!r}")
        if self.kind == P0H:
            if self.alpha is not None or self.k is not None:
                raise DomainError("p0h takes no alpha or k")
        elif self.kind == W0H:
            if self.alpha is None:
                raise DomainError("w0h requires alpha")
            if self.k is not None:
                raise DomainError("w0h takes no k")
        else:
            if self.alpha is None:
                raise DomainError("gkh requires alpha")
            if self.k is None:
                raise DomainError("gkh requires k")
            if not (isinstance(self.k, int) and self.k >= 1):
                raise DomainError(f"k must be an integer >= 1, got {self.k!r}")
        if self.alpha is not None and not (self.alpha >= 0.0 and math.isfinite(self.alpha)):
            raise DomainError(f"alpha must be a finite real >= 0, got {self.alpha}")
        if self.kind != GKH and self.sum_start != SUM_START_FAITHFUL:
            raise DomainError(f"sum_start={self.sum_start!r} applies only to gkh")

    @classmethod
    def p0h(cls, M: float) -> "ClassSpec":
        return cls(P0H, M)

    @classmethod
    def w0h(cls, M: float, alpha: float) -> "ClassSpec":
        return cls(W0H, M, alpha=alpha)

    @classmethod
    def gkh(cls, M: float, alpha: float, k: int, sum_start: str = SUM_START_FAITHFUL) -> "ClassSpec":
        return cls(GKH, M, alpha=alpha, k=k, sum_start=sum_start)

    def describe(self) -> str:
        """Compact human-readable tag, used in error and warning messages."""
        parts = [self.kind, f"M={self.M:g}"]
        if self.alpha is not None:
            parts.append(f"alpha={self.alpha:g}")
        if self.k is not None:
            parts.append(f"k={self.k}")
        if self.kind == GKH and self.sum_start != SUM_START_FAITHFUL:
            parts.append(f"sum_start={self.sum_start}")
        return " ".join(parts)


@dataclass(frozen=True)
class CoeffRule:
    """A class together with the first index carrying a nonzero bound."""

    spec: ClassSpec
    start_index: int

    def __post_init__(self) -> None:
        if self.start_index < 2:
            raise DomainError(f"start_index must be >= 2, got {self.start_index}")

    @classmethod
    def for_spec(cls, spec: ClassSpec) -> "CoeffRule":
        if spec.kind == GKH and spec.sum_start == SUM_START_CLASS:
            return cls(spec, spec.k + 1)
        return cls(spec, 2)


def coeff_bound(rule: CoeffRule, n: int) -> float:
    """Sharp bound on |a_n| + |b_n| at index n for the rule's class.

    Zero below the rule's start index.  The gkh bound does not depend on k;
    k only moves the start index in "class" mode.
    """
    if n < 2:
        raise DomainError(f"coefficient index must be >= 2, got {n}")
    if n < rule.start_index:
        return 0.0
    spec = rule.spec
    if spec.kind == P0H:
        return 2.0 * spec.M / (n * (n - 1))
    if spec.kind == W0H:
        return 2.0 / (spec.alpha * n * n + (1.0 - spec.alpha) * n)
    return 2.0 / (1.0 + (n - 1) * spec.alpha)


def _near_one(alpha: float) -> bool:
    return abs(alpha - 1.0) < _ALPHA_ONE_WINDOW


def _scaled(cfg: ToleranceConfig, factor: float) -> ToleranceConfig:
    """Tighten abs_tol by 1/prefactor so a composed closed form still meets
    cfg.abs_tol after its prefactor amplifies the inner truncation error."""
    return replace(cfg, abs_tol=max(cfg.abs_tol * factor, 5e-324))


def _sum_margin_terms(rule: CoeffRule, r: float, cfg: ToleranceConfig) -> float:
    """Direct sum of coeff(n) * n * r^(n-1) with a geometric tail bound.

    Coefficients are nonincreasing, so the term ratio is at most
    r*(n+1)/n; once that is < 1 the tail after term n is bounded by
    term_n * q/(1-q) with q = r*(n+1)/n.
    """
    start = rule.start_index
    total = 0.0
    comp = 0.0
    power = r ** (start - 1)
    for n in range(start, start + cfg.max_terms):
        term = coeff_bound(rule, n) * n * power
        t = total + term
        if abs(total) >= term:
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        q = r * (n + 1) / n
        if q < 1.0 and term * q / (1.0 - q) <= cfg.abs_tol:
            return total + comp
        power *= r
    raise BudgetError(
        f"margin series for {rule.spec.describe()} at r={r}: tail bound not "
        f"within {cfg.abs_tol} after {cfg.max_terms} terms"
    )


def _sum_majorant_terms(rule: CoeffRule, rho: float, cfg: ToleranceConfig) -> float:
    """Direct sum of coeff(n) * rho^n; term ratio <= rho gives the tail bound."""
    start = rule.start_index
    geom = rho / (1.0 - rho)
    total = 0.0
    comp = 0.0
    power = rho**start
    for n in range(start, start + cfg.max_terms):
        term = coeff_bound(rule, n) * power
        t = total + term
        if abs(total) >= term:
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        if term * geom <= cfg.abs_tol:
            return total + comp
        power *= rho
    raise BudgetError(
        f"majorant series for {rule.spec.describe()} at rho={rho}: tail bound "
        f"not within {cfg.abs_tol} after {cfg.max_terms} terms"
    )


def univalence_margin(spec: ClassSpec, r: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Margin J(r) = pi/(4M) - sum coeff(n) * n * r^(n-1) for 0 <= r < 1.

    Strictly decreasing in r, positive at 0; its unique root in (0,1) is
    the univalence radius.  Closed forms: p0h via log; w0h via the
    geometric sum (alpha=0), the dilogarithm-branch log form (alpha=1) or
    the Lerch transcendent (other alpha > 0, including alpha > 1 where the
    parameter 1/alpha stays in (0,1)).  gkh is summed directly.
    """
    if not (0.0 <= r < 1.0):
        raise DomainError(f"univalence_margin requires 0 <= r < 1, got r={r}")
    lam = math.pi / (4.0 * spec.M)
    if r == 0.0:
        return lam
    if spec.kind == P0H:
        return lam + 2.0 * spec.M * log1m(r)
    if spec.kind == W0H:
        alpha = spec.alpha
        if alpha == 0.0:
            return lam - 2.0 * r / (1.0 - r)
        if _near_one(alpha):
            return lam + 2.0 * log1m(r) / r + 2.0
        phi = lerch_phi(r, 1, 1.0 / alpha, _scaled(cfg, alpha / 4.0)).value
        return lam - 2.0 * (phi / alpha - 1.0)
    return lam - _sum_margin_terms(CoeffRule.for_spec(spec), r, cfg)


def coefficient_majorant(spec: ClassSpec, rho: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> float:
    """Majorant S(rho) = sum coeff(n) * rho^n for 0 <= rho < 1.

    Always the positive series value; sign composition into covering
    radii is the radii module's business.  Closed forms: p0h via
    2M(rho + (1-rho)ln(1-rho)); w0h via logs (alpha=0), the dilogarithm
    (alpha=1) or the Lerch composition

        2/(1-a) * (a/(1-a) + rho(a-1) - ln(1-rho) - Phi(rho, 1, (1-a)/a))

    for 0 < alpha <= 0.9.  Above that the composition's prefactor squares
    into the bracket's rounding (and for alpha > 1 its Lerch parameter
    turns negative), so the defining series is summed directly; gkh
    likewise.
    """
    if not (0.0 <= rho < 1.0):
        raise DomainError(f"coefficient_majorant requires 0 <= rho < 1, got rho={rho}")
    if rho == 0.0:
        return 0.0
    if spec.kind == P0H:
        return 2.0 * spec.M * (rho + (1.0 - rho) * log1m(rho))
    if spec.kind == W0H:
        alpha = spec.alpha
        if alpha == 0.0:
            return 2.0 * (-log1m(rho) - rho)
        if _near_one(alpha):
            return 2.0 * (dilog(rho, _scaled(cfg, 0.25)).value - rho)
        if alpha <= _MAJORANT_LERCH_MAX_ALPHA:
            phi = lerch_phi(rho, 1, (1.0 - alpha) / alpha, _scaled(cfg, (1.0 - alpha) / 4.0)).value
            return (2.0 / (1.0 - alpha)) * (
                alpha / (1.0 - alpha) + rho * (alpha - 1.0) - log1m(rho) - phi
            )
    return _sum_majorant_terms(CoeffRule.for_spec(spec), rho, cfg)


def majorant_at_one(spec: ClassSpec) -> float:
    """Limit of the coefficient majorant as rho -> 1 (math.inf if divergent).

    p0h: the series telescopes to 2M.  w0h: converges for alpha > 0 to
    (2/(1-alpha)) * (psi(2 + (1-alpha)/alpha) - psi(2)) by partial
    fractions (2(pi^2/6 - 1) at alpha = 1), and diverges harmonically at
    alpha = 0.  gkh: the bounds decay like 1/n, so the series diverges for
    every alpha >= 0.
    """
    if spec.kind == P0H:
        return 2.0 * spec.M
    if spec.kind == GKH:
        return math.inf
    alpha = spec.alpha
    if alpha == 0.0:
        return math.inf
    if _near_one(alpha):
        return 2.0 * (math.pi**2 / 6.0 - 1.0)
    c = (1.0 - alpha) / alpha
    return (2.0 / (1.0 - alpha)) * float(digamma(2.0 + c) - digamma(2.0))


def partial_fraction_split(n: int, alpha: float) -> tuple[float, float]:
    """Split 2/(n(alpha*n + 1 - alpha)) into its two partial fractions.

    Returns (2/((1-alpha)*n), 2*alpha/((1-alpha)*(alpha*n + 1 - alpha)));
    the first minus the second reconstructs the original term.  Singular
    at alpha = 1, where callers use the dilogarithm branch instead.
    """
    if n < 2:
        raise DomainError(f"partial_fraction_split requires n >= 2, got {n}")
    if not (alpha >= 0.0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be a finite real >= 0, got {alpha}")
    if alpha == 1.0:
        raise DomainError("partial_fraction_split is singular at alpha = 1")
    first = 2.0 / ((1.0 - alpha) * n)
    second = 2.0 * alpha / ((1.0 - alpha) * (alpha * n + 1.0 - alpha))
    return first, second
