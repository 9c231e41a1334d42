"""Wigner functions of superposed optical Schrödinger cat states."""

from .analysis import (
    SweepResult,
    SweepSpec,
    figure_preset,
    run_sweep,
    state_fidelity,
    verify_presets,
    wigner_l2_distance,
)
from .errors import GridMismatch, TruncationTooSmall, UnknownPanel, ZeroNormState
from .fock import (
    FockVector,
    coherent_to_fock,
    oracle_wigner_grid,
    oracle_wigner_point,
    state_to_fock,
    truncation_dim,
)
from .state import (
    CatParams,
    CoherentTerm,
    SuperpositionState,
    build_cat,
    cat_pair,
    combine,
    displace_label,
    displace_state,
    inner_product,
    merge_terms,
    norm_squared,
    overlap,
    state_from_json,
)
from .wigner import (
    DEFAULT_GRID,
    GridSpec,
    PhasePoint,
    WignerGrid,
    cross_term,
    integrate_grid,
    wigner_grid,
    wigner_point,
)

__version__ = "0.1.0"
