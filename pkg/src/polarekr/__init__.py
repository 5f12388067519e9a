"""Exact computations on t-intersecting families in symplectic polar spaces."""

from .gfq import Field, field_new, get_field
from .polar import PolarSpace
from .qcount import ProblemParams, anzahl, f0, gaussian, h2_count
from .subspace import Subspace

__all__ = [
    "Field",
    "PolarSpace",
    "ProblemParams",
    "Subspace",
    "anzahl",
    "f0",
    "field_new",
    "gaussian",
    "get_field",
    "h2_count",
]
