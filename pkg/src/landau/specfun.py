"""Special functions backing all radii formulas.

Evaluates the Lerch transcendent Phi(z, s, a) = sum_{k>=0} z^k / (k+a)^s,
the dilogarithm Li2(z) = sum_{n>=1} z^n / n^2, and a numerically stable
log(1-z).  Every truncated series comes back as a SumResult carrying a
rigorous tail bound, so callers can reason about the true value of the
infinite sum, not just the partial one.

All functions are pure; there is no shared mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BudgetError, DomainError

__all__ = [
    "ToleranceConfig",
    "SumResult",
    "DEFAULT_TOLERANCES",
    "lerch_phi",
    "dilog",
    "log1m",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances and budgets governing every numeric routine.

    abs_tol bounds series truncation error, max_terms caps series length,
    max_iters caps root/peak search iterations.  rel_tol is kept for
    callers that need a relative criterion; the series stop rules here are
    absolute.
    """

    abs_tol: float = 1e-12
    rel_tol: float = 1e-12
    max_terms: int = 10**7
    max_iters: int = 200

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0.0 and math.isfinite(self.abs_tol)):
            raise DomainError(f"abs_tol must be a positive finite real, got {self.abs_tol}")
        if not (self.rel_tol > 0.0 and math.isfinite(self.rel_tol)):
            raise DomainError(f"rel_tol must be a positive finite real, got {self.rel_tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")
        if self.max_iters < 1:
            raise DomainError(f"max_iters must be >= 1, got {self.max_iters}")


DEFAULT_TOLERANCES = ToleranceConfig()


@dataclass(frozen=True)
class SumResult:
    """Value of a truncated series plus a rigorous truncation bound.

    The true infinite sum lies in [value - tail_bound, value + tail_bound].
    """

    value: float
    tail_bound: float
    terms_used: int

    def __post_init__(self) -> None:
        if self.tail_bound < 0.0:
            raise DomainError(f"tail_bound must be >= 0, got {self.tail_bound}")
        if self.terms_used < 1:
            raise DomainError(f"terms_used must be >= 1, got {self.terms_used}")


def _neumaier(total: float, comp: float, term: float) -> tuple[float, float]:
    """One compensated-accumulation step; returns (new_total, new_comp)."""
    t = total + term
    if abs(total) >= abs(term):
        comp += (total - t) + term
    else:
        comp += (term - t) + total
    return t, comp


def lerch_phi(z: float, s: int, a: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SumResult:
    """Lerch transcendent Phi(z, s, a) = sum_{k>=0} z^k / (k+a)^s.

    Requires 0 <= z < 1, integer s >= 1, a > 0.  Terms are positive with
    ratio <= z, so the tail after term N is bounded by term_N * z/(1-z);
    summation stops once that bound is <= cfg.abs_tol.

    Raises DomainError outside the domain and BudgetError if cfg.max_terms
    is reached before the tail bound meets cfg.abs_tol.
    """
    if not (isinstance(s, int) and s >= 1):
        raise DomainError(f"s must be an integer >= 1, got {s!r}")
    if not (0.0 <= z < 1.0):
        raise DomainError(f"lerch_phi requires 0 <= z < 1, got z={z}")
    if not (a > 0.0 and math.isfinite(a)):
        raise DomainError(f"lerch_phi requires a > 0, got a={a}")

    geom = z / (1.0 - z)
    total = 0.0
    comp = 0.0
    power = 1.0
    for k in range(cfg.max_terms):
        term = power / (k + a) ** s
        total, comp = _neumaier(total, comp, term)
        tail = term * geom  # ratio t_{k+1}/t_k = z*((k+a)/(k+1+a))^s <= z
        if tail <= cfg.abs_tol:
            return SumResult(total + comp, tail, k + 1)
        power *= z
    raise BudgetError(
        f"lerch_phi(z={z}, s={s}, a={a}): tail bound not within {cfg.abs_tol} "
        f"after {cfg.max_terms} terms"
    )


# Block sizes for vectorised partial sums: small series stop early with an
# honest terms_used, long ones (dilog near/at z=1) run at numpy speed.
_BLOCKS = (64, 512, 4096, 32768, 65536)


def _dilog_blocks(z: float, n_stop: int, cfg: ToleranceConfig) -> SumResult | None:
    """Sum z^n/n^2 for n = 1..<=n_stop in growing blocks.

    For z < 1 returns as soon as the geometric tail bound term_N * z/(1-z)
    is <= cfg.abs_tol, else None once n_stop terms are exhausted.  For
    z == 1 returns after n_stop terms with the integral tail bound 1/N.
    Per-block sums use numpy pairwise summation; blocks are combined with
    compensated accumulation, keeping rounding far below the tail bounds.
    """
    total = 0.0
    comp = 0.0
    done = 0
    block_idx = 0
    while done < n_stop:
        size = min(_BLOCKS[min(block_idx, len(_BLOCKS) - 1)], n_stop - done)
        block_idx += 1
        n = np.arange(done + 1, done + size + 1, dtype=np.float64)
        if z == 1.0:
            terms = 1.0 / (n * n)
        else:
            terms = np.power(z, n) / (n * n)
        total, comp = _neumaier(total, comp, float(terms.sum()))
        done += size
        if z < 1.0:
            tail = float(terms[-1]) * z / (1.0 - z)
            if tail <= cfg.abs_tol:
                return SumResult(total + comp, tail, done)
    if z == 1.0:
        return SumResult(total + comp, 1.0 / done, done)
    return None


def dilog(z: float, cfg: ToleranceConfig = DEFAULT_TOLERANCES) -> SumResult:
    """Dilogarithm Li2(z) = sum_{n>=1} z^n / n^2 for 0 <= z <= 1.

    For z < 1 the geometric tail bound term_N * z/(1-z) drives the stop
    rule; exhausting cfg.max_terms first raises BudgetError.  At z = 1 the
    series is a p-series: it is summed for min(max_terms, ceil(1/abs_tol))
    terms and returned with the integral tail bound 1/N, which may exceed
    abs_tol when max_terms binds (no error: the bound is still rigorous).
    """
    if not (0.0 <= z <= 1.0):
        raise DomainError(f"dilog requires 0 <= z <= 1, got z={z}")
    if z == 0.0:
        return SumResult(0.0, 0.0, 1)
    if z == 1.0:
        n_stop = min(cfg.max_terms, math.ceil(1.0 / cfg.abs_tol))
        result = _dilog_blocks(1.0, n_stop, cfg)
        assert result is not None
        return result
    result = _dilog_blocks(z, cfg.max_terms, cfg)
    if result is None:
        raise BudgetError(
            f"dilog(z={z}): tail bound not within {cfg.abs_tol} after {cfg.max_terms} terms"
        )
    return result


def log1m(z: float) -> float:
    """ln(1-z) for 0 <= z < 1, accurate to machine precision near z = 0."""
    if not (0.0 <= z < 1.0):
        raise DomainError(f"log1m requires 0 <= z < 1, got z={z}")
    return math.log1p(-z)
