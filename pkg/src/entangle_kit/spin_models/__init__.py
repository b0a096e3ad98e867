"""Ground states of transverse-field spin chains: exact diagonalization and free fermions."""

from .free_fermion import CorrelatorTable, free_fermion_correlators, majorana_matrix, solve_chain
from .model import (
    MODELS,
    FactorizationScan,
    GroundStateBundle,
    ModelParams,
    build_hamiltonian,
    factorizing_field,
    factorizing_field_product_state,
    find_factorizing_field,
    ground_state,
    least_entangled_superposition,
    parity_diagonal,
    site_operator,
)
from .profiles import (
    LOG_PREFACTOR,
    DerivativeMinimum,
    ProfileRow,
    ScalingFit,
    concurrence_profile,
    concurrences,
    derivative_minimum,
    nn_derivative,
    scaling_data,
    scaling_fit,
)
