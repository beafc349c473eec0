"""p-adic L-functions of Dirichlet characters, evaluated by several routes
with carried precision guarantees."""

from ._padicl import (
    ConfigError,
    CycloPadic,
    DirichletCharacter,
    DomainError,
    EvalPoint,
    LpResult,
    PadicContext,
    PadicNumber,
    PrecisionError,
    angle,
    bernoulli_number,
    delta_bound,
    difference_valuation,
    epsilon,
    interpolation_oracle,
    lp_dirichlet_series,
    lp_euler,
    lp_from_series,
    lp_kl_approx,
    lp_via_measure,
    lp_washington,
    run_cli,
    teichmuller,
)

__all__ = [name for name in dir() if not name.startswith("_")]
