"""Bipartite pure-state entanglement and upper bounds on the entanglement
of superpositions with two or more components."""

from .core import (
    BipartitePureState,
    DensityMatrix,
    SchmidtSpectrum,
    entanglement,
    inner_product,
    partial_trace_a,
    partial_trace_b,
    schmidt,
    shannon_entropy,
    von_neumann_entropy,
)
from .superposition import (
    GramMatrix,
    SuperpositionSpec,
    combine,
    component_entanglements,
    squared_norm,
    superposition_entanglement,
)
from .bounds import (
    AssistantCheckReport,
    BoundReport,
    NormalizationCoeffs,
    assistant_state_check,
    basis_matrix,
    bound_constrained,
    bound_minimized,
    bound_unconstrained,
    exact_biorthogonal_entanglement,
    h_constrained,
    is_biorthogonal,
    mixing_entropy,
    mixing_entropy_bounds,
    normalization_coeffs,
    unconstrained_correction,
)
from .ensembles import (
    EnsembleConfig,
    RandomStream,
    biorthogonal_family,
    constrained_coefficients,
    generate_spec,
    haar_state,
    haar_unitary,
    orthogonal_not_biorthogonal_family,
    simplex_coefficients,
)
from .report import (
    CampaignSummary,
    TrialRecord,
    iter_trials,
    run_campaign,
    run_trial,
)
from .errors import (
    DegenerateStateError,
    DomainError,
    EntboundError,
    InvariantViolationError,
    PreconditionError,
    SchemaError,
    ShapeMismatchError,
)

__version__ = "0.1.0"

__all__ = [
    "AssistantCheckReport",
    "BipartitePureState",
    "BoundReport",
    "CampaignSummary",
    "DegenerateStateError",
    "DensityMatrix",
    "DomainError",
    "EnsembleConfig",
    "EntboundError",
    "GramMatrix",
    "InvariantViolationError",
    "NormalizationCoeffs",
    "PreconditionError",
    "RandomStream",
    "SchemaError",
    "SchmidtSpectrum",
    "ShapeMismatchError",
    "SuperpositionSpec",
    "TrialRecord",
    "assistant_state_check",
    "basis_matrix",
    "biorthogonal_family",
    "bound_constrained",
    "bound_minimized",
    "bound_unconstrained",
    "combine",
    "component_entanglements",
    "constrained_coefficients",
    "entanglement",
    "exact_biorthogonal_entanglement",
    "generate_spec",
    "h_constrained",
    "haar_state",
    "haar_unitary",
    "inner_product",
    "is_biorthogonal",
    "iter_trials",
    "mixing_entropy",
    "mixing_entropy_bounds",
    "normalization_coeffs",
    "orthogonal_not_biorthogonal_family",
    "partial_trace_a",
    "partial_trace_b",
    "run_campaign",
    "run_trial",
    "schmidt",
    "shannon_entropy",
    "simplex_coefficients",
    "squared_norm",
    "superposition_entanglement",
    "unconstrained_correction",
    "von_neumann_entropy",
]
