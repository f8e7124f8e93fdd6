from .base import BaseVectorField, check_finite, check_shape, first_nonfinite_node
from .config import CouplingMatrix, SLParams
from .field import (
    AdditivePinnedNetwork,
    ParametricPinnedNetwork,
    StuartLandauNetwork,
    additive_pinned_rhs,
    diffusive_coupling,
    network_rhs,
    parametric_pinned_rhs,
    sl_vector_field,
)

__all__ = [
    "AdditivePinnedNetwork",
    "BaseVectorField",
    "CouplingMatrix",
    "ParametricPinnedNetwork",
    "SLParams",
    "StuartLandauNetwork",
    "additive_pinned_rhs",
    "check_finite",
    "check_shape",
    "diffusive_coupling",
    "first_nonfinite_node",
    "network_rhs",
    "parametric_pinned_rhs",
    "sl_vector_field",
]
