"""Dense qudit simulation of teleportation and superdense coding over GHZ- and
W-class resources."""

from .qstate import (
    Bipartition,
    DensityMatrix,
    QuditRegister,
    SchmidtDecomposition,
    StateVector,
    UnitaryOp,
    apply_unitary,
    bipartition_entanglement,
    equal_up_to_global_phase,
    ket,
    partial_trace,
    permute_wires,
    projective_measure,
    random_state,
    schmidt_decompose,
    tensor_product,
    von_neumann_entropy,
)

__version__ = "0.1.0"
