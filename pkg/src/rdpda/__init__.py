"""Uniform random generation and analysis of real-time deterministic pushdown automata."""

from ._backend import BACKEND
from .core import (
    AcceptanceMode,
    Alphabets,
    Configuration,
    Rdpda,
    UnderlyingDfa,
    accepts,
    canonicalize,
    is_accessible,
    run,
    step,
    underlying,
)
from .counting import (
    AsymptoticEstimate,
    asymptotic_decorations,
    asymptotic_rdpda,
    avg_pop_transitions,
    count_accessible_dfa_classes,
    count_decorations,
    count_rdpda,
    estimate_gamma_rho,
    nonempty_lower_bound,
    stirling2,
)
from .decorate import decorate, decorate_min_pops, sample_composition
from .dfa_sampler import SamplerReport, attach_finals, sample_accessible_dfa
from .errors import FormatError, GiveUpError, ParameterError
from .pipelines import (
    METRICS,
    XP_TABLES,
    PipelineConfig,
    TableStats,
    collect_table,
    sample_nonempty,
    sample_rdpda,
    sample_reachable,
)
from .reachability import (
    BoundedReach,
    PAutomaton,
    PdsRule,
    analyze,
    bounded_reach,
    empty_stack_reachable_states,
    is_language_empty,
    normalize,
    post_star,
    reachable_states,
)
from .rng import make_rng
from .serialize import from_json, from_json_dict, to_dot, to_json, to_json_dict

__version__ = "0.1.0"

__all__ = [
    "AcceptanceMode",
    "Alphabets",
    "AsymptoticEstimate",
    "BACKEND",
    "BoundedReach",
    "Configuration",
    "FormatError",
    "GiveUpError",
    "METRICS",
    "PAutomaton",
    "ParameterError",
    "PdsRule",
    "PipelineConfig",
    "Rdpda",
    "SamplerReport",
    "TableStats",
    "UnderlyingDfa",
    "XP_TABLES",
    "accepts",
    "analyze",
    "asymptotic_decorations",
    "asymptotic_rdpda",
    "attach_finals",
    "avg_pop_transitions",
    "bounded_reach",
    "canonicalize",
    "collect_table",
    "count_accessible_dfa_classes",
    "count_decorations",
    "count_rdpda",
    "decorate",
    "decorate_min_pops",
    "empty_stack_reachable_states",
    "estimate_gamma_rho",
    "from_json",
    "from_json_dict",
    "is_accessible",
    "is_language_empty",
    "make_rng",
    "normalize",
    "post_star",
    "reachable_states",
    "run",
    "sample_accessible_dfa",
    "sample_composition",
    "sample_nonempty",
    "sample_rdpda",
    "sample_reachable",
    "step",
    "stirling2",
    "to_dot",
    "to_json",
    "to_json_dict",
    "underlying",
    "__version__",
]
