"""Shared test fixtures: the acceptance parameter grid."""

from landau.series import ClassSpec

# Acceptance grid: every class/parameter combination the suite must solve.
ACCEPTANCE_GRID = (
    [ClassSpec.p0h(M) for M in (1.0, 1.5, 2.0)]
    + [
        ClassSpec.w0h(M, alpha)
        for alpha in (0.0, 0.25, 0.5, 0.75, 1.0)
        for M in (1.0, 1.5)
    ]
    + [ClassSpec.gkh(1.0, alpha, 1) for alpha in (0.0, 0.5, 0.8)]
)
