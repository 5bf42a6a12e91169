"""Exact few-qubit simulation of quantum copying gate networks.

The package builds and runs the duplicator and triplicator circuits,
reduces and analyzes their outputs (fidelity splits, scaling fits,
Hilbert-Schmidt distances), and tests the copies' entanglement through
the positivity of partial transposes.
"""

from .copier import (
    AngleSolverError,
    CopyReport,
    CopyVariant,
    InputQubit,
    PreparationAngles,
    amplitudes_from_angles,
    copy_stage_network,
    fidelity_split,
    full_network,
    ideal_density,
    original_transpose_check,
    preparation_amplitudes,
    preparation_angles,
    preparation_network,
    run_copier,
    scaling_decompose,
    solve_preparation_angles,
    transpose_expectation_residual,
)
from .gates import (
    CNOT,
    GateNetwork,
    NetworkParseError,
    PureState,
    Rotation,
    apply_cnot,
    apply_rotation,
    density_of,
    format_network,
    parse_network,
    run_network,
)
from .linalg import (
    hermitian_eigenvalues,
    hs_distance,
    kron,
    partial_trace,
    partial_transpose,
    reverse_basis,
    validate_density,
)
from .separability import (
    BoundCheck,
    CorrelationRow,
    CorrelationTable,
    PptReport,
    entanglement_distance_correlation,
    negativity_bound_check,
    ppt_verdict,
)

__version__ = "0.1.0"

__all__ = [
    "AngleSolverError",
    "BoundCheck",
    "CNOT",
    "CopyReport",
    "CopyVariant",
    "CorrelationRow",
    "CorrelationTable",
    "GateNetwork",
    "InputQubit",
    "NetworkParseError",
    "PptReport",
    "PreparationAngles",
    "PureState",
    "Rotation",
    "amplitudes_from_angles",
    "apply_cnot",
    "apply_rotation",
    "copy_stage_network",
    "density_of",
    "entanglement_distance_correlation",
    "fidelity_split",
    "format_network",
    "full_network",
    "hermitian_eigenvalues",
    "hs_distance",
    "ideal_density",
    "kron",
    "negativity_bound_check",
    "original_transpose_check",
    "parse_network",
    "partial_trace",
    "partial_transpose",
    "ppt_verdict",
    "preparation_amplitudes",
    "preparation_angles",
    "preparation_network",
    "reverse_basis",
    "run_copier",
    "run_network",
    "scaling_decompose",
    "solve_preparation_angles",
    "transpose_expectation_residual",
    "validate_density",
    "__version__",
]
