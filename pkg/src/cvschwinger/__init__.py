"""Gaussian two-mode correlations under constant-field pair creation.

The package follows one pipeline end to end: build a two-mode squeezed
vacuum between particle modes (p, q), act on one or both modes with the
two-mode squeezer that a constant electric field induces between a mode
and its antiparticle partner, reduce the four-mode output to each 2x2
block of interest, and score every reduction with entanglement, Gaussian
discord and mutual information in both the von Neumann and Renyi-2
families.  `closedforms` holds the published closed-form expressions for
the same quantities so they can be audited against the pipeline, `fock`
is an independent truncated number-basis oracle, and `sweep` drives the
field-strength scans behind the figures.
"""

from .errors import (
    BranchConditionWarning,
    CvschwingerError,
    DomainError,
    NumericalError,
    ShapeError,
    SweepError,
    TruncationError,
)
from .gaussian import (
    CANONICAL_MODES,
    MINUS_P,
    MINUS_Q,
    P,
    Q,
    ModeLabel,
    MultimodeCM,
    PhysicalityReport,
    SymplecticInvariants,
    TwoModeStdForm,
    check_physical,
    invariants,
    partial_trace,
    symplectic_eigenvalues,
    tmsv,
    to_std_form,
)
from .channel import (
    BogoliubovCoeffs,
    ChannelOutput,
    FieldParams,
    apply_bilateral,
    apply_unilateral,
    bogoliubov,
    reduce_pair,
    squeeze_symplectic,
)
from .vn import (
    Direction,
    VnReport,
    conditional_eigenvalue,
    discord_vn,
    f_vn,
    log_negativity,
    mutual_information_vn,
    ppt_minimum,
    state_spectrum,
    vn_report,
)
from .renyi2 import (
    Renyi2Report,
    discord_renyi2,
    entanglement_renyi2,
    entropy_renyi2,
    minimized_m,
    mutual_information_renyi2,
    renyi2_report,
)
from .fock import (
    TruncatedState,
    apply_schwinger_fock,
    marginal_photon_distribution,
    mean_occupation,
    oracle_measures,
    pipeline_state,
    reduced_density,
    tmsv_fock,
)
from .closedforms import (
    CROSSCHECK_TOL,
    PAIR_KEYS,
    Discrepancy,
    DiscrepancyReport,
    ReferenceValue,
    crosscheck,
    reference_correlations,
    sudden_death_reference,
)
from .sweep import (
    DEFAULT_PAIRS,
    FAMILIES,
    MONOGAMY_QUANTITIES,
    QUANTITIES,
    SCENARIOS,
    GridSpec,
    MonogamyScore,
    SweepConfig,
    SweepRecord,
    find_sudden_death,
    monogamy_bilateral,
    monogamy_unilateral,
    run_sweep,
    sweep_point,
)

__version__ = "0.1.0"

__all__ = [
    "BranchConditionWarning",
    "CvschwingerError",
    "DomainError",
    "NumericalError",
    "ShapeError",
    "SweepError",
    "TruncationError",
    "CANONICAL_MODES",
    "MINUS_P",
    "MINUS_Q",
    "P",
    "Q",
    "ModeLabel",
    "MultimodeCM",
    "PhysicalityReport",
    "SymplecticInvariants",
    "TwoModeStdForm",
    "check_physical",
    "invariants",
    "partial_trace",
    "symplectic_eigenvalues",
    "tmsv",
    "to_std_form",
    "BogoliubovCoeffs",
    "ChannelOutput",
    "FieldParams",
    "apply_bilateral",
    "apply_unilateral",
    "bogoliubov",
    "reduce_pair",
    "squeeze_symplectic",
    "Direction",
    "VnReport",
    "conditional_eigenvalue",
    "discord_vn",
    "f_vn",
    "log_negativity",
    "mutual_information_vn",
    "ppt_minimum",
    "state_spectrum",
    "vn_report",
    "Renyi2Report",
    "discord_renyi2",
    "entanglement_renyi2",
    "entropy_renyi2",
    "minimized_m",
    "mutual_information_renyi2",
    "renyi2_report",
    "TruncatedState",
    "apply_schwinger_fock",
    "marginal_photon_distribution",
    "mean_occupation",
    "oracle_measures",
    "pipeline_state",
    "reduced_density",
    "tmsv_fock",
    "CROSSCHECK_TOL",
    "PAIR_KEYS",
    "Discrepancy",
    "DiscrepancyReport",
    "ReferenceValue",
    "crosscheck",
    "reference_correlations",
    "sudden_death_reference",
    "DEFAULT_PAIRS",
    "FAMILIES",
    "MONOGAMY_QUANTITIES",
    "QUANTITIES",
    "SCENARIOS",
    "GridSpec",
    "MonogamyScore",
    "SweepConfig",
    "SweepRecord",
    "find_sudden_death",
    "monogamy_bilateral",
    "monogamy_unilateral",
    "run_sweep",
    "sweep_point",
    "__version__",
]
