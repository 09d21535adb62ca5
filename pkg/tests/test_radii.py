"""Radii pairs: closed forms, root solving, route equivalence, tables."""

import math

import pytest
from scipy.optimize import brentq

from conftest import ACCEPTANCE_GRID
from landau.errors import BudgetError, DomainError
from landau.extremal import covering_profile
from landau.oracle import WEIGHT_DERIVATIVE, reference_sum
from landau.radii import (
    METHOD_CLOSED_FORM,
    METHOD_ROOT_SOLVE,
    closed_form_radius,
    p0h_schlicht_radius,
    p0h_univalence_radius,
    radii_table,
    schlicht_radius,
    solve_univalence_radius,
)
from landau.series import ClassSpec, CoeffRule, univalence_margin
from landau.specfun import ToleranceConfig

# Frozen closed-form values, recomputed independently (40-digit arithmetic).
RHO1 = {1.0: 0.3247680933442228, 1.5: 0.16015079842847707, 2.0: 0.09350953781417139}
R1 = {1.0: 0.3742825513762845, 1.5: 0.12456314362361341, 2.0: 0.05478128881735582}
# Published reference radii (table data shipped with the package).
TABLE1_RHO = {1.0: 0.3247, 1.5: 0.1603, 2.0: 0.0934}
TABLE2_RHO_A0 = {1.0: 0.2819, 1.5: 0.2075}


class TestP0hClosedForms:
    @pytest.mark.parametrize("M", [1.0, 1.5, 2.0])
    def test_univalence_radius(self, M):
        rho = p0h_univalence_radius(M)
        assert rho == pytest.approx(RHO1[M], abs=1e-15)
        assert rho == pytest.approx(TABLE1_RHO[M], abs=5e-4)
        # The closed form must annihilate the margin.
        assert abs(univalence_margin(ClassSpec.p0h(M), rho)) < 1e-14

    @pytest.mark.parametrize("M", [1.0, 1.5, 2.0])
    def test_schlicht_radius(self, M):
        R = p0h_schlicht_radius(M)
        assert R == pytest.approx(R1[M], abs=1e-15)
        assert R == pytest.approx(covering_profile(ClassSpec.p0h(M), p0h_univalence_radius(M)), abs=1e-12)

    def test_large_M_first_order(self):
        # 1 - e^{-x} ~ x for x = pi/(8 M^2) -> 0.
        x = math.pi / (8.0 * 100.0**2)
        assert p0h_univalence_radius(100.0) == pytest.approx(x, rel=2.5e-5)
        assert abs(p0h_univalence_radius(100.0) - x) < x * x

    @pytest.mark.parametrize("M", [0.0, -1.0, math.inf])
    def test_domain_errors(self, M):
        with pytest.raises(DomainError):
            p0h_univalence_radius(M)
        with pytest.raises(DomainError):
            p0h_schlicht_radius(M)


class TestSolve:
    def test_p0h_uses_closed_form(self):
        result = solve_univalence_radius(ClassSpec.p0h(1.0))
        assert result.method == METHOD_CLOSED_FORM
        assert result.iterations == 0
        assert result.bracket == (result.rho, result.rho)
        assert result.rho == pytest.approx(RHO1[1.0], abs=1e-15)
        assert result.residual <= 1e-10

    @pytest.mark.parametrize("M", [1.0, 1.5])
    def test_w0h_alpha0_matches_closed_form(self, M):
        result = solve_univalence_radius(ClassSpec.w0h(M, 0.0))
        exact = math.pi / (8.0 * M + math.pi)
        assert result.method == METHOD_ROOT_SOLVE
        assert abs(result.rho - exact) <= 1e-10
        assert result.rho == pytest.approx(TABLE2_RHO_A0[M], abs=5e-4)

    def test_w0h_alpha1_against_brentq(self):
        # Independent root of the alpha = 1 closed-form margin.
        oracle = brentq(
            lambda r: math.pi / 4.0 + 2.0 * math.log1p(-r) / r + 2.0, 0.1, 0.9, xtol=1e-14
        )
        assert oracle == pytest.approx(0.5051839844008525, abs=1e-12)
        result = solve_univalence_radius(ClassSpec.w0h(1.0, 1.0))
        assert abs(result.rho - oracle) <= 1e-9

    @pytest.mark.parametrize(
        "spec", [ClassSpec.w0h(1.0, 0.5), ClassSpec.gkh(1.0, 0.8, 1)], ids=lambda s: s.describe()
    )
    def test_root_against_brentq_on_direct_sums(self, spec):
        # Root of the margin built from the oracle's independent sums.
        rule = CoeffRule.for_spec(spec)
        lam = math.pi / (4.0 * spec.M)

        def margin(r: float) -> float:
            return lam - reference_sum(rule, WEIGHT_DERIVATIVE, r, 1e-13).value

        oracle = brentq(margin, 0.01, 0.9, xtol=1e-13)
        result = solve_univalence_radius(spec)
        assert abs(result.rho - oracle) <= 1e-9

    def test_gkh_alpha0_matches_closed_form(self):
        result = solve_univalence_radius(ClassSpec.gkh(1.0, 0.0, 1))
        exact = 1.0 - math.sqrt(8.0 / (math.pi + 8.0))
        assert abs(result.rho - exact) <= 1e-10

    def test_gkh_class_mode_shifts_root(self):
        faithful = solve_univalence_radius(ClassSpec.gkh(1.0, 0.5, 2)).rho
        shifted = solve_univalence_radius(ClassSpec.gkh(1.0, 0.5, 2, sum_start="class")).rho
        assert shifted > faithful  # fewer coefficient terms, larger radius

    @pytest.mark.parametrize("spec", ACCEPTANCE_GRID, ids=lambda s: s.describe())
    def test_grid_residual_and_sign_change(self, spec):
        result = solve_univalence_radius(spec)
        assert 0.0 < result.rho < 1.0
        assert result.residual <= 1e-10
        assert univalence_margin(spec, result.rho - 1e-6) > 0.0
        assert univalence_margin(spec, result.rho + 1e-6) < 0.0

    @pytest.mark.parametrize("spec", ACCEPTANCE_GRID, ids=lambda s: s.describe())
    def test_grid_R_positive_and_profile_consistent(self, spec):
        result = solve_univalence_radius(spec)
        assert result.R > 0.0
        assert abs(result.R - covering_profile(spec, result.rho)) <= 1e-10
        assert abs(result.R - schlicht_radius(spec, result.rho)) <= 1e-12

    def test_monotone_in_M(self):
        for make in (
            ClassSpec.p0h,
            lambda M: ClassSpec.w0h(M, 0.5),
            lambda M: ClassSpec.gkh(M, 0.5, 1),
        ):
            rhos = [solve_univalence_radius(make(M)).rho for M in (1.0, 1.5, 2.0)]
            assert rhos[0] > rhos[1] > rhos[2]

    def test_monotone_in_alpha(self):
        rhos = [
            solve_univalence_radius(ClassSpec.w0h(1.0, alpha)).rho
            for alpha in (0.0, 0.25, 0.5, 0.75, 1.0)
        ]
        assert all(u < v for u, v in zip(rhos, rhos[1:]))

    def test_limit_continuity_near_alpha_zero(self):
        result = solve_univalence_radius(ClassSpec.w0h(1.0, 1e-6))
        assert abs(result.rho - math.pi / (8.0 + math.pi)) <= 1e-4

    def test_thread_safe_and_deterministic(self):
        from concurrent.futures import ThreadPoolExecutor

        spec = ClassSpec.gkh(1.0, 0.8, 1)
        with ThreadPoolExecutor(max_workers=8) as pool:
            rhos = list(pool.map(lambda _: solve_univalence_radius(spec).rho, range(16)))
        assert len(set(rhos)) == 1

    def test_budget_error_propagates(self):
        cfg = ToleranceConfig(max_terms=5)
        with pytest.raises(BudgetError):
            solve_univalence_radius(ClassSpec.gkh(1.0, 0.5, 1), cfg)


class TestClosedFormRadius:
    def test_w0h_alpha0(self):
        value = closed_form_radius(ClassSpec.w0h(1.5, 0.0))
        assert value == pytest.approx(0.2074809912975026, abs=1e-15)
        assert value == pytest.approx(0.2075, abs=5e-4)

    def test_gkh_alpha0_simplified_surd(self):
        for M in (1.0, 1.7, 3.0):
            value = closed_form_radius(ClassSpec.gkh(M, 0.0, 1))
            unsimplified = 1.0 - math.sqrt(32.0 * M * (math.pi + 8.0 * M)) / (
                2.0 * (math.pi + 8.0 * M)
            )
            assert value == pytest.approx(unsimplified, abs=1e-15)
        assert closed_form_radius(ClassSpec.gkh(1.0, 0.0, 1)) == pytest.approx(
            0.15263337339936864, abs=1e-15
        )

    def test_not_available(self):
        assert closed_form_radius(ClassSpec.w0h(1.0, 0.5)) is None
        assert closed_form_radius(ClassSpec.p0h(1.0)) is None
        assert closed_form_radius(ClassSpec.gkh(1.0, 0.5, 1)) is None
        # The alpha = 0 closed form presumes sums from n = 2; k > 1 in class mode shifts them.
        assert closed_form_radius(ClassSpec.gkh(1.0, 0.0, 2, sum_start="class")) is None
        assert closed_form_radius(ClassSpec.gkh(1.0, 0.0, 1, sum_start="class")) is not None


class TestSchlichtRadius:
    def test_p0h_equals_closed_form(self):
        for M in (1.0, 1.5, 2.0):
            rho = p0h_univalence_radius(M)
            assert schlicht_radius(ClassSpec.p0h(M), rho) == pytest.approx(
                p0h_schlicht_radius(M), abs=1e-12
            )

    def test_w0h_alpha0_closed_form_value(self):
        rho = math.pi / (8.0 + math.pi)
        oracle = math.pi / 4.0 + 2.0 * math.log(8.0 / (math.pi + 8.0))
        assert oracle == pytest.approx(0.12291086397929239, abs=1e-15)
        assert schlicht_radius(ClassSpec.w0h(1.0, 0.0), rho) == pytest.approx(oracle, abs=1e-12)

    def test_w0h_alpha1_dilog_form(self):
        rho = 0.5051839844008525
        li2 = math.fsum(rho**n / (n * n) for n in range(1, 400))
        oracle = (math.pi / 4.0 + 2.0) * rho - 2.0 * li2
        assert oracle == pytest.approx(0.22825130331251328, abs=1e-14)
        assert schlicht_radius(ClassSpec.w0h(1.0, 1.0), rho) == pytest.approx(oracle, abs=1e-11)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            schlicht_radius(ClassSpec.p0h(1.0), 0.0)
        with pytest.raises(DomainError):
            schlicht_radius(ClassSpec.p0h(1.0), 1.0)


class TestRadiiTable:
    def test_p0h_grid_matches_reference_rho(self):
        rows = radii_table([ClassSpec.p0h(M) for M in (1.0, 1.5, 2.0)])
        for row, expected in zip(rows, (0.3247, 0.1603, 0.0934)):
            assert row.rho == pytest.approx(expected, abs=5e-4)
            assert row.residual <= 1e-10

    def test_empty_grid_rejected(self):
        with pytest.raises(DomainError):
            radii_table([])

    def test_row_errors_are_identified(self):
        grid = [ClassSpec.p0h(1.0), ClassSpec.gkh(1.0, 0.5, 1)]
        with pytest.raises(BudgetError, match=r"table row 1 \(gkh"):
            radii_table(grid, ToleranceConfig(max_terms=5))
