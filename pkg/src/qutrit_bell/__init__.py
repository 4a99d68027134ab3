"""Entangled bases, entanglement measures and correlation operators for qubit and qutrit pairs."""
from .correlation import (
    CorrelationTensor,
    b2,
    b3,
    check_inequalities,
    chsh_from_observables,
    expectation,
    synthesize_tensor,
)
from .entanglement import (
    EntanglementReport,
    generic_concurrence,
    negativity,
    reduced_entropy,
    schmidt_coefficients,
    su2_fidelity,
    su3_fidelity,
    wootters_concurrence,
)
from .linalg import hermitian_eig, kron, partial_trace, partial_transpose
from .states import (
    Basis,
    BipartiteState,
    EntangledBasis,
    bell_basis,
    change_basis,
    exchange_parity,
    qutrit_basis,
    vectorize_generator,
)
from .su_basis import GeneratorSet, StructureConstants, gellmann_set, pauli_set, structure_constants

__version__ = "0.1.0"
