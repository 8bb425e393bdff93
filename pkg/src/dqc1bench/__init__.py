"""Desk-scale workbench for one-clean-qubit computation and its correlations."""

from .braid import (
    BraidWord,
    PathBasis,
    QubitEmbedding,
    braid_generator,
    braid_unitary,
    embed_in_qubits,
    kauffman_parameter,
    tl_generator,
)
from .discord import (
    Bipartition,
    DiscordReport,
    conditional_entropy_measured,
    discord,
    discord_scan_xy,
    is_classical_on,
    is_concordant,
    mutual_information,
)
from .engine import (
    Dqc1Config,
    Dqc1State,
    SeparableEnsemble,
    ShotEstimate,
    UninformativeCircuitError,
    b_side_expectation,
    build_state,
    exact_trace_expectations,
    sample_shots,
    separable_decomposition,
)
from .linalg import (
    DensityMatrix,
    EigenDecomposition,
    MeasurementOutcome,
    haar_random_unitary,
    maximally_mixed,
    measurement_update,
    partial_trace,
    phase_symmetry,
    unitary_eigensystem,
    von_neumann_entropy,
)
from .qswe import (
    Gf2Matrix,
    QsweInstance,
    QsweResult,
    SignResult,
    gf2_nullspace,
    lower_triangular,
    qswe_eval,
    sign_problem,
    stack,
)

__all__ = [name for name in dir() if not name.startswith("_")]
