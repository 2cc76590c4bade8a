"""Exact signature calculus for counting Eulerian orientations (#EO) and Holant problems."""
from .scalar import I, ONE, SQRT2, ZERO, Scalar, as_scalar
from .signature import (
    FormatError,
    PreconditionError,
    Signature,
    b_i,
    eq2,
    make_signature,
    neq2,
    norm_square,
    tensor,
    tilde,
    untilde,
    z_transform,
)

__version__ = "0.1.0"
