"""Acceleration-induced decoherence as a noisy quantum channel.

A uniformly accelerated observer sees the inertial vacuum as a thermal
bath; on a truncated Fock space that physics becomes a completely positive
map with an explicit operator-sum representation.  This package builds the
Kraus family, checks complete positivity and trace preservation against
closed forms, and computes entanglement fidelity, entropy exchange, mutual
information and sub-additivity along the acceleration axis, with every
quantity cross-validated by an independent brute-force route.
"""

from .channel import (
    KrausSet,
    apply_channel,
    bell_input_density,
    completeness_operator,
    kraus_operator,
    trace_preservation_defect,
)
from .errors import (
    ConfigError,
    ConvergenceError,
    LayoutMismatchError,
    NotSymmetricError,
    PositivityError,
    UnruhSimError,
)
from .fock import (
    DensityMatrix,
    FactorLayout,
    GeometricSums,
    StateVector,
    TruncationConfig,
    basis_state,
    creation_matrix,
    geometric_closed_forms,
    partial_trace,
    sym_eigenvalues,
    tensor_product,
    truncation_tail_bound,
)
from .measures import (
    MeasureRecord,
    adaptive_n_max,
    entanglement_fidelity_closed,
    entanglement_fidelity_kraus,
    entropy_exchange,
    joint_entropy_series,
    measure_record,
    mutual_information,
    rob_entropy_series,
    subadditivity_margin,
    von_neumann_entropy,
)
from .rindler import (
    AccelerationParam,
    RindlerPoint,
    omega_from_r,
    one_particle_mode_weights,
    r_from_omega,
    rho_alice_rob,
    rindler_to_minkowski,
    tripartite_state,
    vacuum_mode_weights,
)
from .sweep import SweepConfig, run_sweep, to_csv, to_json
from .verify import CheckResult, KrausScalarFault, run_verify

__version__ = "0.1.0"

__all__ = [
    "AccelerationParam",
    "CheckResult",
    "ConfigError",
    "ConvergenceError",
    "DensityMatrix",
    "FactorLayout",
    "GeometricSums",
    "KrausScalarFault",
    "KrausSet",
    "LayoutMismatchError",
    "MeasureRecord",
    "NotSymmetricError",
    "PositivityError",
    "RindlerPoint",
    "StateVector",
    "SweepConfig",
    "TruncationConfig",
    "UnruhSimError",
    "adaptive_n_max",
    "apply_channel",
    "basis_state",
    "bell_input_density",
    "completeness_operator",
    "creation_matrix",
    "entanglement_fidelity_closed",
    "entanglement_fidelity_kraus",
    "entropy_exchange",
    "geometric_closed_forms",
    "joint_entropy_series",
    "kraus_operator",
    "measure_record",
    "mutual_information",
    "omega_from_r",
    "one_particle_mode_weights",
    "partial_trace",
    "r_from_omega",
    "rho_alice_rob",
    "rindler_to_minkowski",
    "rob_entropy_series",
    "run_sweep",
    "run_verify",
    "subadditivity_margin",
    "sym_eigenvalues",
    "tensor_product",
    "to_csv",
    "to_json",
    "trace_preservation_defect",
    "tripartite_state",
    "truncation_tail_bound",
    "vacuum_mode_weights",
    "von_neumann_entropy",
]
