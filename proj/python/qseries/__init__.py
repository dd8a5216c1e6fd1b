"""Bilateral q-series evaluation, factorization and verification."""

from ._qseries import (  # noqa: F401
    FactorizationResult,
    QContext,
    QSeriesError,
    Report,
    ReportRecord,
    RhoClass,
    SeriesSpec,
    SeriesValue,
    WSpec,
    factorize,
    find_rhos,
    jacobi_inverse,
    one_psi_one_rhs,
    psi,
    psi_star,
    psi_star_full,
    psi_star_x1,
    q_gauss,
    qpoch,
    qpoch_inf,
    run_suite,
    six_psi_six,
    theta,
    theta_quotient,
    w_series,
    w_star,
    w_star_full,
)

__all__ = [
    "FactorizationResult",
    "QContext",
    "QSeriesError",
    "Report",
    "ReportRecord",
    "RhoClass",
    "SeriesSpec",
    "SeriesValue",
    "WSpec",
    "factorize",
    "find_rhos",
    "jacobi_inverse",
    "one_psi_one_rhs",
    "psi",
    "psi_star",
    "psi_star_full",
    "psi_star_x1",
    "q_gauss",
    "qpoch",
    "qpoch_inf",
    "run_suite",
    "six_psi_six",
    "theta",
    "theta_quotient",
    "w_series",
    "w_star",
    "w_star_full",
]
