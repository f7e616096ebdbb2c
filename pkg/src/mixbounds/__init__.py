"""Exact spectral, conductance, flow-congestion and mixing-time analysis for
finite Markov chains, with every comparison bound checked mechanically
against exactly computed mixing times."""

from .chains import (
    Chain,
    ChainClass,
    build_chain,
    classify,
    lazy,
    multiply,
    reversibilize,
    time_reversal,
)
from .spectral import (
    SpectralSummary,
    conductance,
    dirichlet_form,
    eigendecompose,
    f_form,
    lambda_constants,
    reconstruct_power,
    variance,
)
from .mixing import (
    MixingResult,
    continuous_mixing_time,
    d_profile,
    discrete_mixing_time,
    matrix_exponential,
    tv_distance,
)
from .flows import (
    Flow,
    FlowPath,
    build_canonical_flow,
    edge_congestion,
    spread_flow,
    state_congestion,
    validate_flow,
)
from .bounds import (
    BoundEntry,
    BoundReport,
    comparison_general,
    comparison_reversible,
    conductance_bounds,
    full_report,
    nonreversible_bounds,
    spectral_bounds_reversible,
)
from .generators import (
    dhn,
    directed_cycle,
    generate,
    random_reversible,
    two_state,
    two_state_uniform_flow,
    uniform_walk,
)
from .serialize import load_chain, load_flow, save_chain, save_flow
from . import errors

__version__ = "0.1.0"

__all__ = [
    "Chain", "ChainClass", "build_chain", "classify", "lazy", "multiply",
    "reversibilize", "time_reversal",
    "SpectralSummary", "conductance", "dirichlet_form", "eigendecompose",
    "f_form", "lambda_constants", "reconstruct_power", "variance",
    "MixingResult", "continuous_mixing_time", "d_profile",
    "discrete_mixing_time", "matrix_exponential", "tv_distance",
    "Flow", "FlowPath", "build_canonical_flow", "edge_congestion",
    "spread_flow", "state_congestion", "validate_flow",
    "BoundEntry", "BoundReport", "comparison_general", "comparison_reversible",
    "conductance_bounds", "full_report", "nonreversible_bounds",
    "spectral_bounds_reversible",
    "dhn", "directed_cycle", "generate", "random_reversible", "two_state",
    "two_state_uniform_flow", "uniform_walk",
    "load_chain", "load_flow", "save_chain", "save_flow",
    "errors",
]
