"""Spectral toolkit for a symmetric regularized long-wave system.

Modules: spectral (grids, transforms, the linear group), norms (Sobolev
scales, weighted sups, the kernel constant kappa), initial_data (profile
library with closed-form transforms), illposedness (resonance integrals
and the norm-inflation sweep), solver (time stepping, invariants,
expansion and residual checks), period_limit (periodization, long-period
convergence, the two a-priori bounds), report (CSV emission), cli.
"""

from .illposedness import (
    CounterexampleDatum,
    build_counterexample,
    inflation_experiment,
    j_closed,
    j_oracle,
    second_iterate_spectrum,
)
from .initial_data import Datum, make_datum
from .norms import (
    WeightFunction,
    hs_norm_line,
    hs_norm_periodic,
    kappa,
    sobolev_pair_norm_line,
    sobolev_pair_norm_periodic,
    weighted_sup_norm,
    xs_norm,
)
from .period_limit import (
    BoundConstants,
    LinePair,
    beta_factor,
    bound_constants,
    boundary_value_check,
    decay_check,
    long_period_experiment,
    periodization_error,
    periodize,
)
from .report import ExperimentReport
from .solver import (
    BlowupError,
    EvolutionConfig,
    EvolutionResult,
    duhamel_residual,
    evolve,
    invariants,
    picard_expansion_check,
    second_iterate_grid,
    step,
)
from .spectral import SpectralGrid, StatePair, alpha, linear_propagate, make_grid, phi_symbol

__all__ = [
    "alpha",
    "phi_symbol",
    "make_grid",
    "SpectralGrid",
    "StatePair",
    "linear_propagate",
    "WeightFunction",
    "hs_norm_periodic",
    "hs_norm_line",
    "xs_norm",
    "sobolev_pair_norm_periodic",
    "sobolev_pair_norm_line",
    "weighted_sup_norm",
    "kappa",
    "Datum",
    "make_datum",
    "CounterexampleDatum",
    "build_counterexample",
    "j_closed",
    "j_oracle",
    "second_iterate_spectrum",
    "inflation_experiment",
    "BlowupError",
    "EvolutionConfig",
    "EvolutionResult",
    "step",
    "evolve",
    "invariants",
    "second_iterate_grid",
    "picard_expansion_check",
    "duhamel_residual",
    "LinePair",
    "BoundConstants",
    "periodize",
    "periodization_error",
    "beta_factor",
    "bound_constants",
    "boundary_value_check",
    "decay_check",
    "long_period_experiment",
    "ExperimentReport",
]
