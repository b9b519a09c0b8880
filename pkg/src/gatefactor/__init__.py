"""Canonical forms for 1-qubit gates, tensor-product separability tests for
2-qubit gates, factor reconstruction, and gate-list circuit optimization."""

from .matcore import (
    DEFAULT_TOL,
    NotUnitaryError,
    Tolerance,
    adjoint,
    as_matrix,
    mat_mul,
    tensor2x2,
    unitarity_residual,
)
from .single_qubit import (
    CanonicalSingleQubit,
    HermitianParams,
    UnknownGateNameError,
    canonicalize,
    classify_hermitian,
    equivalent_sign_forms,
    named_gate,
    realize,
    realize_hermitian,
)
from .separability import (
    InternalInconsistencyError,
    PhaseNormalized4,
    SeparabilityReport,
    Verdict,
    analyze,
    check_condition1,
    check_det_conditions,
    extract_global_phase,
    run_tests,
    separability_oracle,
)
from .factorize import (
    BlockDeterminants,
    FactorPair,
    ReconstructionFailedError,
    block_determinants,
    phase_family,
    reconstruct,
)
from .optics import pdbs, pidbs
from .circuit import (
    Circuit,
    CostMetrics,
    GateInstance,
    TooManyLinesError,
    circuit_unitary,
    metrics,
    optimize,
    pass_absorb,
    pass_cancel_inverses,
    pass_decompose,
    phase_aligned_distance,
)

__version__ = "0.1.0"
